use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const C3: &str = r#"{"points":3,"opens":[[],[0],[0,1],[0,1,2]],"mode":"paraconsistent","valuation":{"p":[1,2]}}"#;
const C3_OPEN: &str = r#"{"points":3,"opens":[[],[0],[0,1],[0,1,2]],"mode":"paracomplete","valuation":{"p":[0]}}"#;
const TWO: &str = r#"{"points":2,"opens":[[],[0],[1],[0,1]],"mode":"paraconsistent","valuation":{"p":[0]}}"#;

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(TempDir::new().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> PathBuf {
        let path = self.0.path().join(name);
        fs::write(&path, text).unwrap();
        path
    }
}

fn paratopo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paratopo"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn eval_prints_sorted_extension_and_global_flag() {
    let files = Files::new();
    let c3 = files.put("c3.json", C3);
    let out = paratopo(&["eval", p(&c3), "~p"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0 1 2\nglobal: true\n");
    let out = paratopo(&["eval", p(&c3), "[]p"]);
    assert_eq!(stdout(&out), "\nglobal: false\n");
}

#[test]
fn sat_exit_codes() {
    let files = Files::new();
    let c3 = files.put("c3.json", C3);
    assert_eq!(code(&paratopo(&["sat", p(&c3), "0", "p"])), 1);
    assert_eq!(code(&paratopo(&["sat", p(&c3), "1", "p & ~p"])), 0);
    assert_eq!(code(&paratopo(&["sat", p(&c3), "7", "p"])), 2);
}

#[test]
fn gluts_and_gaps() {
    let files = Files::new();
    let c3 = files.put("c3.json", C3);
    let open = files.put("open.json", C3_OPEN);
    assert_eq!(stdout(&paratopo(&["gluts", p(&c3), "p"])), "1 2\n");
    assert_eq!(stdout(&paratopo(&["gaps", p(&open), "p"])), "1 2\n");
    assert_eq!(stdout(&paratopo(&["eval", p(&open), "-p"])), "\nglobal: false\n");
    assert_eq!(code(&paratopo(&["gaps", p(&c3), "p"])), 2);
}

#[test]
fn input_errors_exit_two() {
    let files = Files::new();
    let c3 = files.put("c3.json", C3);
    let bad = files.put("bad.json", &C3.replace("[1,2]", "[0]"));
    let garbage = files.put("garbage.json", "{");
    for args in [
        vec!["eval", p(&c3), "-p"],
        vec!["eval", p(&c3), "p &"],
        vec!["eval", p(&bad), "p"],
        vec!["eval", p(&garbage), "p"],
        vec!["eval", "/nonexistent/model.json", "p"],
    ] {
        let out = paratopo(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn connectivity() {
    let files = Files::new();
    let c3 = files.put("c3.json", C3);
    let two = files.put("two.json", TWO);
    assert_eq!(code(&paratopo(&["connected", p(&c3)])), 0);
    let out = paratopo(&["connected", p(&two)]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "disconnected\n0\n1\n");
    assert_eq!(stdout(&paratopo(&["components", p(&two)])), "0\n1\n");
}

#[test]
fn homeomorphisms() {
    let files = Files::new();
    let c3 = files.put("c3.json", C3);
    let two = files.put("two.json", TWO);
    assert_eq!(
        stdout(&paratopo(&["homeo", p(&two), p(&two), "--all"])),
        "{\"map\":[0,1]}\n{\"map\":[1,0]}\n"
    );
    assert_eq!(code(&paratopo(&["homeo", p(&c3), p(&two)])), 1);
}

#[test]
fn bisimulation_pairs() {
    let files = Files::new();
    let c3 = files.put("c3.json", C3);
    let out = paratopo(&["bisim", p(&c3), p(&c3)]);
    assert_eq!(stdout(&out), "0 0\n1 1\n1 2\n2 1\n2 2\n");
}

#[test]
fn kripke_translations() {
    let files = Files::new();
    let c3 = files.put("c3.json", C3);
    let out = paratopo(&["to-kripke", p(&c3)]);
    assert_eq!(
        stdout(&out),
        "{\"worlds\":3,\"edges\":[[0,0],[1,0],[1,1],[2,0],[2,1],[2,2]],\"valuation\":{\"p\":[1,2]}}\n"
    );
    let k = files.put(
        "k.json",
        r#"{"worlds":2,"edges":[[0,0],[1,0],[1,1]],"valuation":{"p":[1]}}"#,
    );
    let out = paratopo(&["from-kripke", p(&k)]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "{\"points\":2,\"opens\":[[],[0],[0,1]],\"mode\":\"paraconsistent\",\"valuation\":{\"p\":[1]}}\n"
    );
    // Successors of a true world must stay true.
    let bad = files.put(
        "bad.json",
        r#"{"worlds":2,"edges":[[0,0],[1,0],[1,1]],"valuation":{"p":[0]}}"#,
    );
    assert_eq!(code(&paratopo(&["from-kripke", p(&bad)])), 2);
}

#[test]
fn homotopy_fence() {
    let files = Files::new();
    let c3 = files.put("c3.json", C3);
    let two = files.put("two.json", TWO);
    let id = files.put("id.json", r#"{"map":[0,1,2]}"#);
    let least = files.put("least.json", r#"{"map":[2,2,2]}"#);
    let out = paratopo(&["homotopic", p(&c3), p(&id), p(&least)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "{\"map\":[0,1,2]}\n{\"map\":[2,2,2]}\n");
    let a = files.put("a.json", r#"{"map":[0,0]}"#);
    let b = files.put("b.json", r#"{"map":[1,1]}"#);
    assert_eq!(code(&paratopo(&["homotopic", p(&two), p(&a), p(&b)])), 1);
    assert_eq!(code(&paratopo(&["homotopic", p(&two), p(&a), p(&id)])), 2);
}

#[test]
fn props_is_deterministic() {
    let first = paratopo(&["props", "--seed", "7", "--runs", "100"]);
    let second = paratopo(&["props", "--seed", "7", "--runs", "100"]);
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).contains("finite_hennessy_milner"));
    let json = paratopo(&["props", "--seed", "7", "--runs", "10", "--json"]);
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["checks"].as_array().unwrap().len(), 15);
}

#[test]
fn props_single_check_and_bad_config() {
    let out = paratopo(&["props", "--check", "homeomorphism_truth_preservation", "--runs", "20"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&paratopo(&["props", "--check", "no_such_check"])), 2);
    assert_eq!(code(&paratopo(&["props", "--points", "3..12"])), 2);
    assert_eq!(code(&paratopo(&["props", "--runs", "0"])), 2);
}

#[test]
fn failing_counterexample_replays() {
    let files = Files::new();
    let out = paratopo(&["props", "--check", "dual_space_boundaries", "--runs", "5", "--json"]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let record = &report["checks"][0]["counterexample"];
    let whole = files.put("record.json", &record.to_string());
    let bare = files.put("case.json", &record["case"].to_string());
    for path in [whole, bare] {
        let replay = paratopo(&["replay", p(&path)]);
        assert_eq!(code(&replay), 1);
        assert!(stdout(&replay).starts_with("dual_space_boundaries: FAIL"));
    }
}
