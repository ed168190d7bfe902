use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_grenoble"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Generates a graph to a file inside `dir` and returns its path.
fn gen_to_file(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let out = run(args);
    assert_eq!(code(&out), 0, "gen failed: {}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(name);
    std::fs::write(&path, out.stdout).unwrap();
    path
}

#[test]
fn check_accepts_a_generated_prism() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to_file(dir.path(), "prism.col", &["gen", "even-prism", "2", "2", "2"]);
    let out = run(&["check", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "accepted");
}

#[test]
fn check_prints_a_witness_and_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to_file(dir.path(), "square.col", &["gen", "violator", "square"]);
    let out = run(&["check", g.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let witness: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(witness["kind"], "square");
    assert_eq!(witness["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn malformed_input_exits_sixty_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.col");
    std::fs::write(&path, "p edge two three\ne 1 x\n").unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 64);

    let missing = dir.path().join("missing.col");
    let out = run(&["check", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 64);
}

#[test]
fn color_produces_a_verifiable_coloring() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to_file(dir.path(), "prism.col", &["gen", "even-prism", "2", "4", "2"]);
    let coloring = dir.path().join("coloring.txt");
    let tree = dir.path().join("tree.json");
    let report = dir.path().join("report.json");
    let out = run(&[
        "color",
        g.to_str().unwrap(),
        "--out",
        coloring.to_str().unwrap(),
        "--tree-out",
        tree.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&["verify", g.to_str().unwrap(), coloring.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let tree: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&tree).unwrap()).unwrap();
    assert_eq!(tree["vertices"], 11);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(report["outcome"], "colored");
    assert_eq!(report["num_colors"], report["clique_size"]);
    assert!(report["tree"]["nodes"].as_u64().unwrap() >= 1);
    assert!(report["restarts"].as_u64().unwrap() <= 11);
}

#[test]
fn tampered_colorings_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to_file(dir.path(), "prism.col", &["gen", "even-prism", "2", "2", "2"]);
    let coloring = dir.path().join("coloring.txt");
    let out = run(&["color", g.to_str().unwrap(), "--out", coloring.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let text = std::fs::read_to_string(&coloring).unwrap();
    let first = text.lines().next().unwrap().to_string();
    let mut fields: Vec<String> = first.split_whitespace().map(String::from).collect();
    let flipped = if fields[2] == "0" { "1" } else { "0" };
    fields[2] = flipped.to_string();
    let tampered = text.replacen(&first, &fields.join(" "), 1);
    std::fs::write(&coloring, tampered).unwrap();

    let out = run(&["verify", g.to_str().unwrap(), coloring.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn color_rejects_out_of_class_input_like_check() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to_file(dir.path(), "vio.col", &["gen", "violator", "odd-prism"]);
    let checked = run(&["check", g.to_str().unwrap()]);
    let colored = run(&["color", g.to_str().unwrap()]);
    assert_eq!(code(&checked), 2);
    assert_eq!(code(&colored), 2);
    assert_eq!(stdout(&checked), stdout(&colored));
    let witness: serde_json::Value = serde_json::from_str(&stdout(&checked)).unwrap();
    assert_eq!(witness["kind"], "odd_prism");
}

#[test]
fn generation_is_deterministic_and_validated() {
    let a = run(&["gen", "random-grenoble", "12", "200", "--seed", "5"]);
    let b = run(&["gen", "random-grenoble", "12", "200", "--seed", "5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rand.col");
    std::fs::write(&path, &a.stdout).unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}

#[test]
fn odd_prism_lengths_are_an_input_error() {
    let out = run(&["gen", "even-prism", "1", "1", "1"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn hyperprism_specs_generate_accepted_graphs() {
    let spec = r#"{"strips":[
        {"a_count":2,"a_clique":true,"b_count":1,"b_clique":true,"rung_len":2},
        {"a_count":1,"a_clique":true,"b_count":1,"b_clique":true,"rung_len":6},
        {"a_count":1,"a_clique":true,"b_count":1,"b_clique":true,"rung_len":6}]}"#;
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to_file(dir.path(), "hp.col", &["gen", "hyperprism", "--spec", spec]);
    let out = run(&["check", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let out = run(&["gen", "hyperprism", "--spec", "{\"strips\":[]}"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn budget_variable_caps_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to_file(dir.path(), "prism.col", &["gen", "even-prism", "4", "4", "4"]);
    let out = bin()
        .args(["check", g.to_str().unwrap()])
        .env("GRENOBLE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);

    let out = bin()
        .args(["check", g.to_str().unwrap()])
        .env("GRENOBLE_BUDGET", "plenty")
        .output()
        .unwrap();
    assert_eq!(code(&out), 64);
}

#[test]
fn coloring_runs_are_byte_identical() {
    let spec = r#"{"strips":[
        {"a_count":1,"a_clique":true,"b_count":1,"b_clique":true,"rung_len":6},
        {"a_count":1,"a_clique":true,"b_count":1,"b_clique":true,"rung_len":6},
        {"a_count":1,"a_clique":true,"b_count":1,"b_clique":true,"rung_len":6}]}"#;
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to_file(dir.path(), "hp.col", &["gen", "hyperprism", "--spec", spec]);
    let path = g.to_str().unwrap();

    let plain = run(&["color", path]);
    let again = run(&["color", path]);
    let parallel = run(&["color", path, "--parallel"]);
    assert_eq!(code(&plain), 0);
    assert_eq!(plain.stdout, again.stdout);
    assert_eq!(plain.stdout, parallel.stdout);

    let report = |name: &str, extra: &[&str]| -> serde_json::Value {
        let file = dir.path().join(name);
        let mut args = vec!["color", path, "--report", file.to_str().unwrap()];
        args.extend_from_slice(extra);
        let out = run(&args);
        assert_eq!(code(&out), 0);
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
        v["timings_us"] = serde_json::Value::Null;
        v["elapsed_ms"] = serde_json::Value::Null;
        v
    };
    let r1 = report("r1.json", &[]);
    let r2 = report("r2.json", &[]);
    let r3 = report("r3.json", &["--parallel"]);
    assert_eq!(r1, r2);
    assert_eq!(r1, r3);
}

#[test]
fn selftest_passes_over_the_corpus() {
    let out = run(&["selftest"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("selftest ok"));
}

#[test]
fn bench_prints_the_corpus_table() {
    let out = run(&["bench"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().count() > 200);
    assert!(text.lines().last().unwrap().starts_with("total:"));
}
