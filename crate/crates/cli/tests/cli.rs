use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use ramseylab::{turan_max_edges, Coloring, ForbiddenPattern, SearchConfig};

fn ramseylab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramseylab"))
        .args(args)
        .env_remove("RAMSEYLAB_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = ramseylab(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (code(&out), v)
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

#[test]
fn star_clique_verifies() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "c.col");
    let out = ramseylab(&[
        "construct",
        "star-clique",
        "--k",
        "3",
        "--r",
        "2",
        "-o",
        &file,
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&ramseylab(&["verify-coloring", &file])), 0);
}

#[test]
fn ramsey_exit_codes() {
    let (c, v) = json(&["ramsey", "--k", "2", "--r", "2", "--n", "5"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["verdict"], "holds");
    assert_eq!(v["command"], "ramsey");

    let dir = TempDir::new().unwrap();
    let file = path(&dir, "w.col");
    let out = ramseylab(&["ramsey", "--k", "2", "--r", "2", "--n", "4", "-o", &file]);
    assert_eq!(code(&out), 1);
    let witness = Coloring::parse(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(witness.vertex_count(), 4);
    assert_eq!(code(&ramseylab(&["verify-coloring", &file])), 0);

    let (c, v) = json(&[
        "ramsey", "--k", "2", "--r", "2", "--n", "5", "--budget", "2",
    ]);
    assert_eq!(c, 2);
    assert_eq!(v["result"]["verdict"], "unknown");
}

#[test]
fn threads_do_not_change_verdicts() {
    for n in ["4", "5"] {
        let (a, va) = json(&["ramsey", "--k", "2", "--r", "2", "--n", n]);
        let (b, vb) = json(&["ramsey", "--k", "2", "--r", "2", "--n", n, "--threads", "4"]);
        assert_eq!(a, b);
        assert_eq!(va["result"]["witness"], vb["result"]["witness"]);
    }
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(code(&ramseylab(&["ramsey", "--k", "2"])), 64);
    assert_eq!(code(&ramseylab(&["no-such-command"])), 64);
    assert_eq!(
        code(&ramseylab(&["ramsey", "--k", "1", "--r", "2", "--n", "4"])),
        64
    );
    assert_eq!(code(&ramseylab(&["--help"])), 0);

    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.hg");
    std::fs::write(&bad, "3 5 1\n0 1 x\n").unwrap();
    assert_eq!(
        code(&ramseylab(&[
            "detect",
            "--input",
            &bad,
            "--pattern",
            "star"
        ])),
        65
    );
    assert_eq!(code(&ramseylab(&["verify-coloring", &bad])), 65);
    let missing = path(&dir, "missing.col");
    assert_eq!(code(&ramseylab(&["verify-coloring", &missing])), 65);
}

#[test]
fn detect_reports_witnesses() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "p.hg");
    std::fs::write(&file, "3 7 3\n0 1 2\n2 3 4\n4 5 6\n").unwrap();
    let (c, v) = json(&["detect", "--input", &file, "--pattern", "loose-path-3"]);
    assert_eq!(c, 1);
    assert_eq!(v["result"]["links"], serde_json::json!([2, 4]));
    let (c, _) = json(&["detect", "--input", &file, "--pattern", "star"]);
    assert_eq!(c, 0);
    let star = path(&dir, "s.hg");
    let out = ramseylab(&[
        "construct",
        "full-star",
        "--k",
        "3",
        "--n",
        "6",
        "-o",
        &star,
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        code(&ramseylab(&[
            "detect",
            "--input",
            &star,
            "--pattern",
            "star"
        ])),
        1
    );
    assert_eq!(
        code(&ramseylab(&[
            "detect",
            "--input",
            &star,
            "--pattern",
            "loose-path-3"
        ])),
        0
    );
}

#[test]
fn turan_matches_library() {
    let (c, v) = json(&["turan", "--k", "2", "--n", "6", "--pattern", "loose-path-3"]);
    assert_eq!(c, 0);
    let direct =
        turan_max_edges(2, 6, ForbiddenPattern::LoosePath3, &SearchConfig::default()).unwrap();
    assert_eq!(v["result"], serde_json::to_value(&direct).unwrap());
    assert_eq!(v["result"]["status"], "exact");
}

#[test]
fn cnf_file() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "r.cnf");
    let (c, v) = json(&["cnf", "--k", "2", "--r", "2", "--n", "5", "-o", &file]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["clauses"], 130);
    let text = std::fs::read_to_string(Path::new(&file)).unwrap();
    assert!(text.lines().any(|l| l == "p cnf 20 130"));
}

#[test]
fn constants_and_bounds() {
    let (c, v) = json(&["constants", "--k", "250", "--r-list", "2,1000"]);
    assert_eq!(c, 0);
    assert!(v["result"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["holds"] == "yes"));
    let (c, _) = json(&["constants", "--k", "100"]);
    assert_eq!(c, 1);
    let (c, v) = json(&["bounds", "--k", "3", "--r", "2"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["lower"], 8);
}

#[test]
fn machinery_steps() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "h.hg");
    std::fs::write(&file, "3 7 4\n0 1 2\n0 1 3\n0 2 3\n4 5 6\n").unwrap();
    for step in ["peel", "prune", "tripartition", "split"] {
        let (c, v) = json(&["machinery", step, "--input", &file]);
        assert_eq!(c, 0, "{step}");
        assert!(v["result"].is_object(), "{step}");
    }
}

#[test]
fn selfcheck_is_reproducible() {
    let run = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_ramseylab"))
            .args(["--json", "selfcheck", "--instances", "50"])
            .env("RAMSEYLAB_SEED", seed)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        (
            v["seed"].clone(),
            serde_json::to_string(&v["result"]).unwrap(),
        )
    };
    let (seed, a) = run("42");
    let (_, b) = run("42");
    assert_eq!(seed, 42);
    assert_eq!(a, b);
}
