use std::path::PathBuf;
use std::process::{Command, Output};

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn gquot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gquot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = gquot(args);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, stdout, _) = run(&all);
    (code, serde_json::from_str(&stdout).expect("stdout is json"))
}

#[test]
fn check_accepts_the_plane() {
    let p = problem("p2.json");
    let (code, out) = json(&["check", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out["data"]["complete"], true);
    assert_eq!(out["data"]["simplicial"], true);
    assert_eq!(out["command"], "check");
}

#[test]
fn full_torus_on_the_line() {
    let p = problem("p1_full_torus.json");
    let p = p.to_str().unwrap();
    let (code, out) = json(&["enumerate-maximal", p, "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out["data"]["maximal"].as_array().unwrap().len(), 3);

    let (code, stdout, _) = run(&["quotient", p]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("[FAIL] good quotient exists"));

    let (code, _, _) = run(&["quotient", p, "--selection", "left"]);
    assert_eq!(code, 0);
}

#[test]
fn diagonal_quotient_is_the_line() {
    let p = problem("c2_diagonal.json");
    let (code, out) = json(&["quotient", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out["data"]["quotient"]["fan"]["rank"], 1);
}

#[test]
fn witness_families() {
    let p = problem("c2_diagonal.json");
    let p = p.to_str().unwrap();
    let (code, stdout, _) = run(&["cox", p, "--family", "coordinates"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("not covered"));
    let (code, stdout, _) = run(&["cox", p, "--family", "with_difference"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("[PASS] family is a witness"));

    let p2 = problem("p2.json");
    let (code, _, _) = run(&["cox", p2.to_str().unwrap(), "--family", "coordinates"]);
    assert_eq!(code, 1);
}

#[test]
fn symmetry_commands() {
    let flip = problem("p1xp1_flip.json");
    let flip = flip.to_str().unwrap();
    for sel in ["fibres", "axis"] {
        let (code, stdout, _) = run(&["eq1-check", flip, "--ambient", "strip", "--selection", sel]);
        assert_eq!(code, 0, "{stdout}");
    }
    let (code, _, _) = run(&["verify-theorem", flip, "--selection", "strip"]);
    assert_eq!(code, 0);

    let ruling = problem("p1xp1_ruling.json");
    let ruling = ruling.to_str().unwrap();
    let (code, _, _) = run(&["verify-corollary", ruling]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["w-set", ruling, "--selection", "upper"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("[{} {0} {2}]"));
    // The whole surface has no good quotient, so the identity's hypotheses fail.
    let (code, _, _) = run(&["eq1-check", ruling, "--ambient", "all", "--selection", "vertical"]);
    assert_eq!(code, 1);
}

#[test]
fn sweep_on_a_single_fan() {
    let p = problem("p2.json");
    let (code, out) = json(&["oracle-sweep", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\n  \"version\": 1,\n  \"rank\": 2,\n  \"rays\": [[1, 0], [0, \"y\"]],\n  \"max_cones\": [[0, 1]]\n}\n",
    )
    .unwrap();
    let (code, stdout, stderr) = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("rays[1][1]"), "{stderr}");
    assert!(stderr.contains("line 4"), "{stderr}");

    let missing = dir.path().join("missing.json");
    let (code, _, stderr) = run(&["check", missing.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cannot read"));

    let p = problem("p2.json");
    let (code, _, stderr) = run(&["quotient", p.to_str().unwrap(), "--selection", "nope"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("no such selection"), "{stderr}");

    let (code, _, _) = run(&["enumerate-maximal", p.to_str().unwrap(), "--k", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_reproducible() {
    let p = problem("c2_diagonal.json");
    let p = p.to_str().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut texts = vec![];
    for i in 0..2 {
        let out = dir.path().join(format!("run{i}"));
        let args = ["cox", p, "--family", "with_difference", "--seed", "7", "--out", out.to_str().unwrap()];
        let (code, stdout, _) = run(&args);
        assert_eq!(code, 0);
        let txt = std::fs::read_to_string(out.join("report.txt")).unwrap();
        let js = std::fs::read_to_string(out.join("report.json")).unwrap();
        assert_eq!(stdout, txt);
        serde_json::from_str::<serde_json::Value>(&js).unwrap();
        texts.push((txt, js));
    }
    assert_eq!(texts[0], texts[1]);
}
