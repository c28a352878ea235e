use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("additive equation with phi = 0 is purely inseparable; take a q^d-th root instead")]
    DegenerateInseparable,
    #[error("no solution up to tower level {cap}")]
    EscalationCap { cap: usize },
    #[error("degree cap {cap} exhausted before the solution span saturated")]
    CapExhausted { cap: usize },
    #[error("module is not torsion (zero elementary divisor)")]
    NotTorsion,
    #[error("module is not restricted (singular tau matrix)")]
    NotRestricted,
    #[error("characteristic violation: offending factor {factor}")]
    CharacteristicViolation { factor: String },
    #[error("ring or base mismatch: {0}")]
    Mismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("not an isogeny: {0}")]
    NotIsogeny(String),
    #[error("prime equals the kernel of the characteristic map")]
    PrimeIsKernel,
    #[error("untracked place: {0}")]
    UntrackedPlace(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code class: 2 validation, 3 cap exhaustion, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EscalationCap { .. } | Error::CapExhausted { .. } => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}
