use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use cyclo_core::automata::Dfao;
use cyclo_core::linrep::{rat, LinearRepresentation};

fn cyclo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Golden files shared by the tests; seeding learns `c` once.
fn seeded() -> &'static Path {
    static DIR: OnceLock<(tempfile::TempDir, PathBuf)> = OnceLock::new();
    let (_, p) = DIR.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let seed = dir.path().join("seed");
        let o = cyclo(&["--seed-tables", path(&seed)]);
        assert!(o.status.success(), "{}", stderr(&o));
        (dir, seed)
    });
    p
}

const TABLE: [u64; 20] = [
    1, 2, 3, 2, 4, 4, 6, 8, 12, 8, 12, 16, 14, 18, 18, 18, 28, 20, 20, 28,
];

#[test]
fn first_twenty_values() {
    let start = Instant::now();
    let o = cyclo(&["compute", "--seq", "tm", "--n", "0..19"]);
    assert!(start.elapsed() < Duration::from_secs(1));
    assert!(o.status.success());
    let expected: String = TABLE
        .iter()
        .enumerate()
        .map(|(n, c)| format!("c({n}) = {c}\n"))
        .collect();
    assert_eq!(stdout(&o), expected);
}

#[test]
fn csv_and_ratio_columns() {
    let o = cyclo(&["compute", "--n", "3..4", "--csv"]);
    assert_eq!(stdout(&o), "n,c,3c-4n,2n-4-c\n3,2,-6,0\n4,4,-4,0\n");
    let o = cyclo(&["compute", "--n", "8", "--ratio"]);
    assert_eq!(stdout(&o), "c(8) = 12  c/n = 3/2 = 1.500000\n");
    let o = cyclo(&["compute", "--n", "0", "--ratio"]);
    assert_eq!(stdout(&o), "c(0) = 1  c/n = -\n");
}

#[test]
fn powers_of_two_word() {
    let o = cyclo(&["compute", "--seq", "p", "--n", "16"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "c(16) = 6\n");
}

#[test]
fn seeded_golden_files() {
    let dir = seeded();
    let csv = std::fs::read_to_string(dir.join("table1.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,c"));
    for (n, line) in lines.enumerate() {
        assert_eq!(line, format!("{n},{}", TABLE[n]));
    }
    let c =
        LinearRepresentation::from_json(&std::fs::read_to_string(dir.join("c_rep.json")).unwrap())
            .unwrap();
    assert_eq!(c.rank(), 10);
    let dot = std::fs::read_to_string(dir.join("a0_dfao.dot")).unwrap();
    assert!(dot.starts_with("digraph a0 {"));
}

#[test]
fn compute_from_a_representation() {
    let rep = seeded().join("c_rep.json");
    let ev = format!("rep:{}", path(&rep));
    let o = cyclo(&["compute", "--n", "0..19", "--evaluator", &ev]);
    assert!(o.status.success(), "{}", stderr(&o));
    let brute = cyclo(&["compute", "--n", "0..19"]);
    assert_eq!(stdout(&o), stdout(&brute));
}

#[test]
fn a0_pipeline_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let seed = seeded();
    let c = format!("rep:{}", path(&seed.join("c_rep.json")));
    let raw = dir.path().join("a0_raw.json");
    let min = dir.path().join("a0.json");
    let json = dir.path().join("a0_dfao.json");
    let dot = dir.path().join("a0.dot");

    let o = cyclo(&[
        "learn",
        "--target",
        "c(2n) - 2c(n)",
        "--evaluator",
        &c,
        "--out",
        path(&raw),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("rank 7"), "{}", stderr(&o));

    let o = cyclo(&["minimize", "--rep", path(&raw), "--out", path(&min)]);
    assert!(o.status.success());
    assert_eq!(stderr(&o).trim(), "rank 7 -> 7");
    let a0 = LinearRepresentation::from_json(&std::fs::read_to_string(&min).unwrap()).unwrap();
    let golden = LinearRepresentation::from_json(
        &std::fs::read_to_string(seed.join("a0_rep.json")).unwrap(),
    )
    .unwrap();
    assert!(a0.equivalent(&golden));

    let o = cyclo(&[
        "dfao",
        "--rep",
        path(&min),
        "--out-json",
        path(&json),
        "--out-dot",
        path(&dot),
        "--name",
        "a0",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "8 states (8 before minimization), outputs {-2, -1, 2, 4, 6}\n"
    );
    let d = Dfao::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(d.state_count(), 8);
    assert_eq!(
        std::fs::read_to_string(&json).unwrap(),
        std::fs::read_to_string(seed.join("a0_dfao.json")).unwrap()
    );

    let report = dir.path().join("report.json");
    let o = cyclo(&[
        "verify",
        "--suite",
        "recurrences",
        "--evaluator",
        &c,
        "--n-max",
        "500",
        "--automata-max",
        "4096",
        "--a0-dfao",
        path(&json),
        "--report-json",
        path(&report),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("8/8 claims passed"));
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["suite"], "recurrences");
}

#[test]
fn minimizing_the_zero_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.json");
    let twice = LinearRepresentation::linear_combine(&[
        (rat(1), &LinearRepresentation::constant(rat(3))),
        (rat(-1), &LinearRepresentation::constant(rat(3))),
    ])
    .unwrap();
    std::fs::write(&zero, twice.to_json()).unwrap();
    let o = cyclo(&["minimize", "--rep", path(&zero)]);
    assert!(o.status.success());
    assert_eq!(stderr(&o).trim(), "rank 2 -> 0");
    let min = LinearRepresentation::from_json(&stdout(&o)).unwrap();
    assert_eq!(min.rank(), 0);
    assert!(min.equivalent(&LinearRepresentation::zero()));
}

#[test]
fn exit_codes() {
    // configuration errors
    assert_eq!(cyclo(&[]).status.code(), Some(2));
    assert_eq!(
        cyclo(&["compute", "--n", "3", "--evaluator", "fast"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cyclo(&["compute", "--n", "9..3"]).status.code(), Some(2));
    assert_eq!(
        cyclo(&["verify", "--suite", "everything"]).status.code(),
        Some(2)
    );
    let o = cyclo(&["minimize", "--rep", "/nonexistent/rep.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/rep.json"));

    // resource caps
    let o = cyclo(&["learn", "--rank-cap", "3", "--depth", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap"), "{}", stderr(&o));
    let o = cyclo(&["compute", "--n", "40", "--prefix-cap", "128"]);
    assert_eq!(o.status.code(), Some(2));

    // a representation that disagrees with the factor count is refused
    let seed = seeded();
    let wrong = format!("rep:{}", path(&seed.join("a0_rep.json")));
    let o = cyclo(&["verify", "--suite", "lower", "--evaluator", &wrong]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n = 0"), "{}", stderr(&o));
}

#[test]
fn failing_claims_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bogus = dir.path().join("zero_dfao.json");
    let d = Dfao::new(0, vec![[0, 0]], vec![rat(0)]).unwrap();
    std::fs::write(&bogus, d.to_json()).unwrap();
    let c = format!("rep:{}", path(&seeded().join("c_rep.json")));
    let o = cyclo(&[
        "verify",
        "--suite",
        "recurrences",
        "--evaluator",
        &c,
        "--n-max",
        "100",
        "--automata-max",
        "1024",
        "--a0-dfao",
        path(&bogus),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL rec.2i"), "{out}");
    assert!(out.contains("at i = 0:"), "{out}");
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let c = format!("rep:{}", path(&seeded().join("c_rep.json")));
    let run = |name: &str| {
        let json = dir.path().join(format!("{name}.json"));
        let text = dir.path().join(format!("{name}.txt"));
        let o = cyclo(&[
            "--jobs",
            "2",
            "verify",
            "--suite",
            "upper",
            "--evaluator",
            &c,
            "--n-max",
            "2000",
            "--k-max",
            "20",
            "--report-json",
            path(&json),
            "--report-text",
            path(&text),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        (
            stdout(&o),
            std::fs::read(json).unwrap(),
            std::fs::read_to_string(text).unwrap(),
        )
    };
    let first = run("a");
    let second = run("b");
    assert_eq!(first, second);
    assert_eq!(first.0, first.2);
}
