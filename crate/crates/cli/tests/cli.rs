use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amotive")).args(args).current_dir(root()).output().unwrap()
}

/// Golden cases: output file name and arguments, relative to the fixtures
/// directory.
const GOLDEN: &[(&str, &[&str])] = &[
    ("inspect_carlitz", &["inspect", "--input", "motives/carlitz.motive"]),
    ("inspect_nonsplit", &["inspect", "--input", "motives/nonsplit.motive"]),
    ("inspect_twisted", &["inspect", "--input", "motives/twisted.motive"]),
    ("tate_carlitz_t_1", &["tate", "--input", "motives/carlitz.motive", "--prime", "t", "--level", "1"]),
    ("tate_carlitz_t_3", &["tate", "--input", "motives/carlitz.motive", "--prime", "t", "--level", "3"]),
    ("tate_twisted_t1_2", &["tate", "--input", "motives/twisted.motive", "--prime", "t+1", "--level", "2"]),
    ("report_nonsplit_t_3", &["report", "--input", "motives/nonsplit.motive", "--prime", "t", "--level", "3"]),
    ("report_sum_t_3", &["report", "--input", "motives/carlitz_sum.motive", "--prime", "t", "--level", "3"]),
    (
        "tatecheck_carlitz_t_2",
        &[
            "tatecheck",
            "--input",
            "motives/carlitz.motive",
            "--target",
            "motives/carlitz.motive",
            "--prime",
            "t",
            "--level",
            "2",
        ],
    ),
    ("torsion_point", &["torsion", "--input", "torsion/point.torsion"]),
    ("torsion_quadratic", &["torsion", "--input", "torsion/quadratic.torsion", "--seed", "7"]),
    ("periods_solve_one_plus_t", &["periods", "solve", "--input", "periods/solve_one_plus_t.job"]),
    ("periods_solve_alpha", &["periods", "solve", "--input", "periods/solve_alpha.job"]),
    ("periods_fixpoint_square", &["periods", "fixpoint", "--input", "periods/fixpoint_square.job"]),
    ("periods_vx_tuple", &["periods", "vx", "--input", "periods/vx_tuple.job"]),
    ("periods_bplus_poles", &["periods", "bplus", "--input", "periods/bplus_poles.job"]),
    ("periods_eps_example", &["periods", "eps", "--input", "periods/eps_example.job"]),
];

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("AMOTIVE_BLESS").is_some();
    for (name, args) in GOLDEN {
        let out = run(args);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let path = root().join("golden").join(format!("{name}.out"));
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
        assert_eq!(String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&want), "{name}");
    }
}

fn line<'a>(out: &'a Output, key: &str) -> &'a str {
    let text = std::str::from_utf8(&out.stdout).unwrap();
    text.lines().find_map(|l| l.strip_prefix(key)).unwrap_or_else(|| panic!("no '{key}' in {text}"))
}

#[test]
fn named_examples() {
    let out = run(&["inspect", "--input", "motives/carlitz.motive"]);
    assert_eq!(line(&out, "rank = "), "1");
    assert_eq!(line(&out, "det = "), "[1] * (t - theta)^1");
    let out = run(&["inspect", "--input", "motives/nonsplit.motive"]);
    assert_eq!(line(&out, "e = "), "2");
    let out = run(&["tate", "--input", "motives/carlitz.motive", "--prime", "t", "--level", "1"]);
    assert_eq!(line(&out, "frobenius = "), "[1]");
    let out = run(&["report", "--input", "motives/nonsplit.motive", "--prime", "t", "--level", "3"]);
    assert_eq!(line(&out, "verdict = "), "non_semisimple");
    let out = run(&[
        "tatecheck",
        "--input",
        "motives/carlitz.motive",
        "--target",
        "motives/carlitz.motive",
        "--prime",
        "t",
        "--level",
        "2",
    ]);
    assert!(std::str::from_utf8(&out.stdout).unwrap().contains("agree: true"));
}

#[test]
fn exit_codes() {
    let out = run(&["inspect", "--input", "motives/bad_det.motive"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offending factor [[0],[1]]"));
    assert_eq!(run(&["torsion", "--input", "torsion/bad_point.torsion"]).status.code(), Some(2));
    assert_eq!(run(&["inspect", "--input", "motives/missing.motive"]).status.code(), Some(2));
    // The prime t^2 + 1 is the kernel of t -> theta.
    assert_eq!(run(&["tate", "--input", "motives/carlitz.motive", "--prime", "t^2+1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["tate", "--input", "motives/carlitz.motive"]).status.code(), Some(1));
    // Three levels are not enough for the solution field of Carlitz at t^3.
    let out = run(&["tate", "--input", "motives/carlitz.motive", "--prime", "t", "--level", "3", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["periods", "solve", "--input", "periods/solve_one_plus_t.job", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn deterministic_and_atomic_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        let out = run(&[
            "report",
            "--input",
            "motives/carlitz_sum.motive",
            "--prime",
            "t",
            "--level",
            "3",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2, "temporary files left behind: {names:?}");
}
