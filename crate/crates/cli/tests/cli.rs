use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diamfree"))
        .args(args)
        .env("DIAMFREE_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let dir = TempDir::new().unwrap();
    run_in(dir.path(), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn gen_lists_the_lattice() {
    let o = run(&["gen", "1", "1", "2", "--format", "text"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 12);
    assert!(lines.iter().all(|l| l.len() == 4 && l.matches('-').count() == 1 && l.matches('+').count() == 2));

    assert_eq!(stdout(&run(&["gen", "0", "0", "1", "--format", "text"])), "+\n");
    assert_eq!(stdout(&run(&["gen", "1", "6", "2", "--format", "text"])).lines().count(), 252);

    let csv = stdout(&run(&["gen", "1", "0", "1", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().all(|l| l.split(',').count() == 2));
}

#[test]
fn solve_reports_alpha_sets_and_classes() {
    let v = json(&run(&["solve", "1", "1", "2", "--enumerate"]));
    assert_eq!(v["outcome"]["alpha"], 6);
    assert_eq!(v["outcome"]["enumerated"].as_array().unwrap().len(), 8);
    assert_eq!(v["tool"], "diamfree");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["input_hash"].as_str().unwrap().len(), 64);

    let v = json(&run(&["solve", "1", "2", "2", "--enumerate", "--classify"]));
    assert_eq!(v["outcome"]["alpha"], 12);
    let classes = v["outcome"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 3);
    let total: u64 = classes.iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(total as usize, v["outcome"]["enumerated"].as_array().unwrap().len());
    for c in classes {
        assert_eq!(c["size"], c["orbit_length"]);
    }

    assert_eq!(json(&run(&["solve", "2", "1", "2"]))["outcome"]["alpha"], 15);
    let text = stdout(&run(&["solve", "1", "1", "2", "--format", "text"]));
    assert!(text.contains("alpha 6"));
}

#[test]
fn canon_forms_agree_on_permuted_columns() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("x.txt");
    std::fs::write(&path, "-++0\n-+0+\n0-++\n").unwrap();
    let a = json(&run(&["canon", path.to_str().unwrap()]));
    let form = a["outcome"]["form"].clone();
    assert_eq!(form.as_array().unwrap().len(), 3);
    assert_eq!(a["outcome"]["size"], 3);

    std::fs::write(&path, "0++-\n+0+-\n++-0\n").unwrap();
    let b = json(&run(&["canon", path.to_str().unwrap()]));
    assert_eq!(b["outcome"]["form"], form);
}

#[test]
fn output_is_byte_identical_across_runs_and_threads() {
    let args = ["solve", "1", "3", "2", "--enumerate"];
    let a = run(&args);
    let b = run(&args);
    let mut threaded = vec!["--threads", "3"];
    threaded.extend(args);
    let c = run(&threaded);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn reports_are_cached_by_content_hash() {
    let dir = TempDir::new().unwrap();
    let first = run_in(dir.path(), &["solve", "1", "2", "2"]);
    let key = json(&first)["key"].as_str().unwrap().to_owned();
    let file = dir.path().join(format!("{key}.json"));
    assert_eq!(std::fs::read(&file).unwrap(), first.stdout);

    // a doctored cache entry is served as is, unless --force
    let mut doctored = json(&first);
    doctored["outcome"]["alpha"] = 999.into();
    std::fs::write(&file, serde_json::to_string_pretty(&doctored).unwrap()).unwrap();
    assert_eq!(json(&run_in(dir.path(), &["solve", "1", "2", "2"]))["outcome"]["alpha"], 999);
    let forced = run_in(dir.path(), &["--force", "solve", "1", "2", "2"]);
    assert_eq!(forced.stdout, first.stdout);

    let other = run_in(dir.path(), &["solve", "1", "2", "2", "--enumerate"]);
    assert_ne!(json(&other)["key"], key.as_str());
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "main-theorem", "--k", "1..3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(json(&o)["outcome"]["passed"], true);

    let o = run(&["johnson-verify"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(json(&o)["outcome"]["variants"].as_array().unwrap().len(), 3);

    let o = run(&["verify", "props", "--format", "text"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    // the large-t bound of the Johnson suite does not hold
    let o = run(&["verify", "johnson"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failed: Vec<&str> = v["outcome"]["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed.len(), 1, "{failed:?}");
}

#[test]
fn exit_codes() {
    let o = run(&["--enum-limit", "3", "solve", "1", "1", "2", "--enumerate"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["--time-limit", "1", "solve", "1", "5", "2", "--enumerate"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["status"], "timeout");
    assert!(v["lower"].as_u64().unwrap() <= v["upper"].as_u64().unwrap());

    assert_eq!(run(&["canon", "/nonexistent/family.txt"]).status.code(), Some(4));
    assert_eq!(run(&["verify", "main-theorem", "--k", "0..2"]).status.code(), Some(4));
    assert_eq!(run(&["verify", "main-theorem", "--k", "6"]).status.code(), Some(4));
}
