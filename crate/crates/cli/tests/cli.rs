use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SMALL: [&str; 6] = ["--index-bound", "300", "--window", "12", "--cap", "2000"];

fn godel(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_godel"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn small(args: &[&str], out: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.extend(SMALL);
    godel(&all, out)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn gen_corpus(kind: &str, size: usize, seed: u64, dir: &Path) -> String {
    let o = small(&["corpus-gen", "--kind", kind, "--size", &size.to_string(), "--seed", &seed.to_string()], dir);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).trim().to_string()
}

#[test]
fn enumerate_lists_first_programs() {
    let dir = TempDir::new().unwrap();
    let o = godel(&["enumerate", "--from", "0", "--to", "2"], dir.path());
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines, ["0\t(empty)\tidentity", "1\tZ 0\tconstant 0", "2\tS 0\tsuccessor"]);
}

#[test]
fn corpus_generation_is_reproducible() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let pa = gen_corpus("total-programs", 10, 7, a.path());
    let pb = gen_corpus("total-programs", 10, 7, b.path());
    let text = fs::read_to_string(&pa).unwrap();
    assert_eq!(text, fs::read_to_string(&pb).unwrap());
    assert_eq!(text.lines().count(), 10);
    let manifest = json(&a.path().join("manifest.json"));
    assert_eq!(manifest["seed"], 7);
    assert_eq!(manifest["config"]["index_bound"], 300);
}

#[test]
fn unknown_kind_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let o = godel(&["corpus-gen", "--kind", "nope"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = godel(&["learn", "--learner", "nope", "--corpus", "x"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enum_learner_converges_and_writes_traces() {
    let dir = TempDir::new().unwrap();
    let corpus = gen_corpus("total-programs", 40, 1, dir.path());
    let out = dir.path().join("run");
    let o = small(&["learn", "--learner", "enum", "--corpus", &corpus], &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = json(&out.join("summary.json"));
    assert_eq!(summary["convergence_rate"], 1.0);
    assert_eq!(summary["verification_rate"], 1.0);
    let run = &summary["runs"][0];
    for key in ["instance", "learner", "converged", "stabilized_at", "mind_changes", "final_guess", "verified"] {
        assert!(run.get(key).is_some(), "{key}");
    }
    let trace = fs::read_to_string(out.join("traces/0000.csv")).unwrap();
    assert!(trace.starts_with("step,guess,mind_change_flag\n0,"));
}

#[test]
fn amalgamation_verifies_and_dumps_pockets() {
    let dir = TempDir::new().unwrap();
    let corpus = gen_corpus("total-programs", 20, 2, dir.path());
    let o = small(&["learn", "--learner", "amalgamation", "--corpus", &corpus], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&dir.path().join("summary.json"))["verification_rate"], 1.0);
    assert!(json(&dir.path().join("pockets/0000.json"))["survivors"].is_array());
}

#[test]
fn learner_outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let corpus = gen_corpus("total-programs", 15, 3, dir.path());
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        assert!(small(&["learn", "--learner", "shrinking", "--corpus", &corpus], out).status.success());
    }
    for file in ["summary.json", "traces/0000.csv", "traces/0014.csv"] {
        assert_eq!(fs::read(a.join(file)).unwrap(), fs::read(b.join(file)).unwrap(), "{file}");
    }
}

#[test]
fn malformed_corpus_names_the_line() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.corpus");
    fs::write(&path, "problem=kol lit tail=const:0\nproblem=kol lit tail=zigzag\n").unwrap();
    let o = small(&["learn", "--learner", "enum", "--corpus", path.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn kolmogorov_table() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("k.corpus");
    fs::write(&path, "problem=kol lit tail=const:0\nproblem=kol gen index=0 budget=10\n").unwrap();
    let o = small(&["kolmogorov", "--corpus", path.to_str().unwrap()], dir.path());
    assert!(o.status.success());
    let table = fs::read_to_string(dir.path().join("kolmogorov.csv")).unwrap();
    assert_eq!(
        table,
        "instance,min_index,verified\nlit tail=const:0,1,true\ngen index=0 budget=10,0,true\n"
    );
}

#[test]
fn kolmogorov_flags_missing_indices() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("k.corpus");
    fs::write(&path, "problem=kol lit prefix=9,1,7,3,3,8 tail=const:5\n").unwrap();
    let o = small(&["kolmogorov", "--corpus", path.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let table = fs::read_to_string(dir.path().join("kolmogorov.csv")).unwrap();
    assert!(table.ends_with(",not-found,false\n"));
}

#[test]
fn reduce_check_passes_and_mutant_fails() {
    let dir = TempDir::new().unwrap();
    let corpus = gen_corpus("literal-sequences", 30, 4, dir.path());
    let o = small(&["reduce-check", "--reduction", "cn_limn", "--corpus", &corpus], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = json(&dir.path().join("report-cn_limn.json"));
    assert_eq!(report["pass"], true);
    assert_eq!(report["reduction"], "cn_limn");
    assert!(report["corpus"].is_string());
    for inst in report["instances"].as_array().unwrap() {
        assert!(inst["id"].is_u64() && inst["pass"].is_boolean() && inst["witnesses"].is_array());
    }
    let o = small(
        &["reduce-check", "--reduction", "cn_limn", "--mutant", "constant-answer", "--corpus", &corpus],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let report = json(&dir.path().join("report-cn_limn-constant-answer.json"));
    assert_eq!(report["pass"], false);
    let witnessed = report["instances"]
        .as_array()
        .unwrap()
        .iter()
        .any(|i| i["witnesses"].as_array().is_some_and(|w| !w.is_empty()));
    assert!(witnessed);
}

#[test]
fn unknown_reduction_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("c.corpus");
    fs::write(&path, "problem=lim_n lit tail=const:0\n").unwrap();
    let o = small(&["reduce-check", "--reduction", "nope", "--corpus", path.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn flags_override_the_config_file() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "cap=500\nwindow=6\nindex_bound=50\n").unwrap();
    let o = godel(
        &["--config", cfg.to_str().unwrap(), "--window", "4", "corpus-gen", "--kind", "lpo-mixed", "--size", "4"],
        dir.path(),
    );
    assert!(o.status.success());
    let manifest = json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["config"]["cap"], 500);
    assert_eq!(manifest["config"]["window"], 4);
    assert_eq!(manifest["command"], "corpus-gen");
}
