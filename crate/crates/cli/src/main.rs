//! `amotive` command-line driver.
//!
//! Exit codes: 0 success, 1 usage, 2 validation, 3 cap exhaustion,
//! 4 internal.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use amotive::algebra::encode::{encode_elem, encode_prime_poly};
use amotive::algebra::{FpMat, Gf, Ring};
use amotive::galois::quot::{parse_prime_poly, show_prime_poly};
use amotive::galois::tate::{encode_matrix, motive_hash, report, semisimplicity_of, show_matrix, tate_module_capped};
use amotive::galois::torsion::{dq, rq_solutions, torsion_isomorphism};
use amotive::galois::DEFAULT_MAX_LEVEL;
use amotive::motive::format::{parse_motive, parse_torsion};
use amotive::motive::hom_motives;
use amotive::motive::torsion::torsion_filtration;
use amotive::motive::Motive;
use amotive::periods::format::{emit_constant_series, emit_rational_series, PeriodJob};
use amotive::periods::{
    bplus_membership, eps_floor_check, fixpoint_bound_check, s_membership, sigma_quotient_solve, vx, Val,
    DEFAULT_PERIOD_LEVEL,
};
use amotive::Error;

#[derive(Parser)]
#[command(name = "amotive", version, about = "Exact computations with A-motives over function fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
}

#[derive(Args)]
struct Common {
    /// Write the output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Cap on the degree over F_p of the fields used by the solvers.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TateArgs {
    /// Motive file.
    #[arg(long)]
    input: PathBuf,
    /// Prime of F_q[t], e.g. `t`, `t+1` or `[1,1]`.
    #[arg(long)]
    prime: String,
    /// Precision n of the approximation modulo p^n.
    #[arg(long, default_value_t = 1)]
    level: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, determinant and characteristic exponent of a motive.
    Inspect {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Tate module modulo p^n and its Frobenius.
    Tate(TateArgs),
    /// Tate module, Frobenius polynomials and a semisimplicity verdict.
    Report(TateArgs),
    /// Compares motive homomorphisms with Frobenius-commuting maps.
    Tatecheck {
        /// Source motive.
        #[arg(long)]
        input: PathBuf,
        /// Target motive.
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        prime: String,
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Filtration, annihilator and Galois representation of a torsion module.
    Torsion {
        #[arg(long)]
        input: PathBuf,
        /// Seed for randomized searches.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Period-ring kernels.
    Periods {
        #[arg(value_enum)]
        op: PeriodOp,
        /// Period job file.
        #[arg(long)]
        input: PathBuf,
        /// Overrides the precision `n` of the job.
        #[arg(long)]
        level: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PeriodOp {
    Solve,
    Fixpoint,
    Vx,
    Bplus,
    Eps,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.exit_code() as u8, msg: e.to_string() }
    }
}

fn validation(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| validation(format!("{}: {e}", path.display())))
}

fn load_motive(path: &Path) -> Result<Motive<Gf>, Failure> {
    parse_motive(&read(path)?)
        .map_err(|e| Failure { code: e.exit_code() as u8, msg: format!("{}: {e}", path.display()) })
}

/// Writes via a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp = dir.join(format!(".{}.tmp", path.file_name().and_then(|s| s.to_str()).unwrap_or("out")));
    let io = |e: std::io::Error| Failure { code: 4, msg: format!("{}: {e}", path.display()) };
    fs::write(&tmp, text).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn show_fp(m: &FpMat) -> String {
    let rows: Vec<String> = (0..m.rows)
        .map(|i| format!("[{}]", (0..m.cols).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn prime_of(x: &Motive<Gf>, s: &str) -> Result<Vec<u32>, Failure> {
    Ok(parse_prime_poly(s, x.base().q())?)
}

fn inspect(x: &Motive<Gf>) -> String {
    let b = x.base();
    let det = x.m.det_delta();
    let lead = det.coeffs.last().cloned().unwrap_or_else(|| b.k.zero());
    let mut out = String::new();
    out.push_str(&format!("motive.hash = {}\n", motive_hash(x)));
    out.push_str(&format!("q = {}\n", b.q()));
    out.push_str(&format!("field.degree = {}\n", b.k.degree()));
    out.push_str(&format!("theta = {}\n", encode_elem(&b.theta)));
    match &b.kernel_iota {
        Some(k) => out.push_str(&format!("characteristic = {}\n", show_prime_poly(k))),
        None => out.push_str("characteristic = generic\n"),
    }
    out.push_str(&format!("rank = {}\n", x.rank()));
    out.push_str(&format!("det = {} * (t - theta)^{}\n", encode_elem(&lead), x.m.e));
    out.push_str(&format!("e = {}\n", x.m.e));
    if x.l.e > 0 || x.twist_scalar() != b.ring().one() {
        out.push_str(&format!("twist.e = {}\n", x.l.e));
    }
    out
}

fn tate(x: &Motive<Gf>, prime: &[u32], n: usize, cap: usize) -> Result<String, Failure> {
    let t = tate_module_capped(x, prime, n, cap)?;
    t.verify()?;
    let s = semisimplicity_of(&t);
    let mut out = String::new();
    out.push_str(&format!("motive.hash = {}\n", motive_hash(x)));
    out.push_str(&format!("prime = {}\n", show_prime_poly(t.quot.prime())));
    out.push_str(&format!("precision = {n}\n"));
    out.push_str(&format!("rank = {}\n", t.rank()));
    out.push_str(&format!("solution.level = {}\n", t.level));
    out.push_str(&format!("frobenius = {}\n", show_matrix(&t.frobenius)));
    out.push_str(&format!("frobenius.encoded = {}\n", encode_matrix(&t.frobenius)));
    out.push_str(&format!("verdict = {}\n", s.verdict.as_str()));
    Ok(out)
}

fn tatecheck(x: &Motive<Gf>, y: &Motive<Gf>, prime: &[u32], n: usize, cap: usize) -> Result<String, Failure> {
    let h = hom_motives(x, y, None)?;
    let tx = tate_module_capped(x, prime, n, cap)?;
    let ty = tate_module_capped(y, prime, n, cap)?;
    let s = amotive::galois::tate::commutant(&tx.quot, &tx.frobenius, &ty.frobenius);
    let cr = amotive::galois::tate::module_rank(&tx.quot, &s);
    let mut out = String::new();
    out.push_str(&format!("source.hash = {}\n", motive_hash(x)));
    out.push_str(&format!("target.hash = {}\n", motive_hash(y)));
    out.push_str(&format!("prime = {}\n", show_prime_poly(tx.quot.prime())));
    out.push_str(&format!("precision = {n}\n"));
    out.push_str(&format!("hom_rank = {}\n", h.rank));
    out.push_str(&format!("hom.saturated = {}\n", h.saturated));
    out.push_str(&format!("commutant_rank = {cr}\n"));
    out.push_str(&format!("agree: {}\n", h.rank == cr));
    Ok(out)
}

fn torsion(text: &str, cap: usize, seed: u64) -> Result<String, Failure> {
    let t = parse_torsion(text)?;
    let f = torsion_filtration(&t)?;
    let mut out = String::new();
    out.push_str(&format!("dim = {}\n", t.dim()));
    out.push_str(&format!("tau_lin.bijective = {}\n", t.tau_lin_bijective()));
    out.push_str(&format!("bijective.dim = {}\n", f.bijective_part.len()));
    out.push_str(&format!("nilpotent.dim = {}\n", f.nilpotent_dim));
    out.push_str(&format!("flag.length = {}\n", f.flag_length()));
    out.push_str(&format!("annihilator = {}\n", show_prime_poly(&f.annihilator)));
    out.push_str(&format!("annihilator.encoded = {}\n", encode_prime_poly(&f.annihilator)));
    if t.tau_lin_bijective() {
        let r = rq_solutions(&t, cap)?;
        out.push_str(&format!("galois.dim = {}\n", r.rep.dim()));
        out.push_str(&format!("galois.level = {}\n", r.rep.level));
        let divs: Vec<String> = r.rep.divisors.iter().map(|d| encode_prime_poly(d)).collect();
        out.push_str(&format!("galois.divisors = [{}]\n", divs.join(",")));
        out.push_str(&format!("galois.t = {}\n", show_fp(&r.rep.t_action)));
        out.push_str(&format!("galois.frobenius = {}\n", show_fp(&r.rep.frobenius)));
        let back = dq(&t.base, &r.rep)?;
        out.push_str(&format!("roundtrip.isomorphic = {}\n", torsion_isomorphism(&t, &back, seed).is_some()));
    }
    Ok(out)
}

fn periods(op: PeriodOp, job: &PeriodJob, level: Option<i64>, cap: usize) -> Result<String, Failure> {
    let d = job.int("d", 1)?;
    if !(1..=16).contains(&d) {
        return Err(validation("d must be between 1 and 16"));
    }
    let d = d as usize;
    let n = match level {
        Some(n) => n,
        None => job.int("n", 4)?,
    };
    if !(0..=64).contains(&n) {
        return Err(validation("precision must be between 0 and 64"));
    }
    let mut out = String::new();
    match op {
        PeriodOp::Solve => {
            let f = job.constant_series("f", d)?;
            let sol = sigma_quotient_solve(&f, n, Some(cap))?;
            out.push_str(&format!("precision = {n}\n"));
            out.push_str(&format!("level = {}\n", sol.level));
            out.push_str(&format!("verified = {}\n", sol.verify()?));
            out.push_str(&format!("s_member = {}\n", s_membership(&sol.s, job.level(), n)?));
            out.push_str(&emit_constant_series("s", &sol.s));
        }
        PeriodOp::Fixpoint => {
            let rank = job.int("rank", 1)?;
            if !(1..=8).contains(&rank) {
                return Err(validation("rank must be between 1 and 8"));
            }
            let m = job.int("m", 1)?;
            if !(1..=8).contains(&m) {
                return Err(validation("m must be between 1 and 8"));
            }
            let delta = job.rational_matrix("delta", rank as usize, d, n)?;
            let x = job.place()?;
            let r = fixpoint_bound_check(&delta, m as u32, &x, n, Some(cap))?;
            out.push_str(&format!("place = {x}\n"));
            out.push_str(&format!("precision = {n}\n"));
            out.push_str(&format!("level = {}\n", r.level));
            out.push_str(&format!("dimension = {}\n", r.dimension));
            out.push_str(&format!("delta.vx = {}\n", r.delta_vx));
            let tag = if r.solution_vx.exact { "" } else { " (window minimum)" };
            out.push_str(&format!("solution.vx = {}{tag}\n", r.solution_vx.value));
            out.push_str(&format!("bound_holds = {}\n", r.bound_holds));
            for (i, c) in r.solution.iter().enumerate() {
                out.push_str(&emit_rational_series(&format!("F{i}"), c));
            }
        }
        PeriodOp::Vx => {
            let f = job.rational_series("f", d)?;
            let x = job.place()?;
            let v = vx(&f, &x)?;
            out.push_str(&format!("place = {x}\n"));
            out.push_str(&format!("vx = {}\n", v.value));
            out.push_str(&format!("exact = {}\n", v.exact));
            out.push_str(&format!("vx.sigma = {}\n", vx(&f.sigma(), &x)?.value));
        }
        PeriodOp::Bplus => {
            let f = job.rational_series("f", d)?;
            let b = bplus_membership(&f)?;
            let poles: Vec<String> = b.poles.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("member = {}\n", b.member));
            out.push_str(&format!("poles = [{}]\n", poles.join(",")));
        }
        PeriodOp::Eps => {
            let s = job.rational_series("s", d)?;
            let a = job.rational_series("a", d)?;
            let x = job.place()?;
            let power = job.int_required("N")?;
            if !(1..=16).contains(&power) {
                return Err(validation("N must be between 1 and 16"));
            }
            let e = eps_floor_check(&s, &x, power as u32, &a)?;
            out.push_str(&format!("place = {x}\n"));
            out.push_str(&format!("lhs = {}\n", e.lhs));
            out.push_str(&format!("rhs = {}\n", e.rhs));
            out.push_str(&format!("holds = {}\n", e.holds));
            if e.lhs == Val::Inf {
                out.push_str("note = sigma^N(a) is zero\n");
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>), Failure> {
    let Format::Text = match &cli.command {
        Command::Inspect { common, .. }
        | Command::Tate(TateArgs { common, .. })
        | Command::Report(TateArgs { common, .. })
        | Command::Tatecheck { common, .. }
        | Command::Torsion { common, .. }
        | Command::Periods { common, .. } => common.format,
    };
    let tate_cap = |c: &Common| c.cap.unwrap_or(DEFAULT_MAX_LEVEL);
    let check_level = |n: usize| {
        if (1..=32).contains(&n) {
            Ok(n)
        } else {
            Err(validation("--level must be between 1 and 32"))
        }
    };
    match cli.command {
        Command::Inspect { input, common } => Ok((inspect(&load_motive(&input)?), common.output)),
        Command::Tate(a) => {
            let x = load_motive(&a.input)?;
            let p = prime_of(&x, &a.prime)?;
            Ok((tate(&x, &p, check_level(a.level)?, tate_cap(&a.common))?, a.common.output))
        }
        Command::Report(a) => {
            let x = load_motive(&a.input)?;
            let p = prime_of(&x, &a.prime)?;
            Ok((report(&x, &p, check_level(a.level)?)?, a.common.output))
        }
        Command::Tatecheck { input, target, prime, level, common } => {
            let x = load_motive(&input)?;
            let y = load_motive(&target)?;
            let p = prime_of(&x, &prime)?;
            Ok((tatecheck(&x, &y, &p, check_level(level)?, tate_cap(&common))?, common.output))
        }
        Command::Torsion { input, seed, common } => {
            Ok((torsion(&read(&input)?, tate_cap(&common), seed)?, common.output))
        }
        Command::Periods { op, input, level, common } => {
            let job = PeriodJob::parse(&read(&input)?)?;
            let cap = common.cap.unwrap_or(DEFAULT_PERIOD_LEVEL);
            Ok((periods(op, &job, level, cap)?, common.output))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((text, None)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Ok((text, Some(path))) => match write_atomic(&path, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(f) => {
                eprintln!("error: {}", f.msg);
                ExitCode::from(f.code)
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
