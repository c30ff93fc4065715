use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fanraspaud::graph::CubicGraph;
use fanraspaud::named;
use serde_json::Value;
use tempfile::TempDir;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> (i32, Vec<Value>) {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_fanraspaud"))
        .args(args)
        .current_dir(dir)
        .envs(env.iter().copied())
        .output()
        .unwrap();
    let rows = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    (out.status.code().unwrap(), rows)
}

fn write_graph(dir: &Path, name: &str, g: &CubicGraph) -> String {
    let p = dir.join(name);
    std::fs::write(&p, format!("{}\n", g.to_sparse6())).unwrap();
    p.to_str().unwrap().to_string()
}

fn corpus_file(name: &str) -> String {
    corpus_dir().join(name).to_str().unwrap().to_string()
}

#[test]
fn analyze_reports_invariants() {
    let t = TempDir::new().unwrap();
    let (code, rows) = run(t.path(), &["analyze", &corpus_file("petersen.s6")], &[]);
    assert_eq!(code, 0);
    let r = &rows[0];
    assert_eq!((r["girth"].as_u64(), r["oddness"].as_u64(), r["class"].as_u64()), (Some(5), Some(2), Some(4)));
    let gates = r["minimal_counterexample_gates"]["conditions"].as_array().unwrap();
    let order = gates.iter().find(|c| c["name"] == "order_at_least_32").unwrap();
    assert_eq!(order["pass"], false);

    let k4 = write_graph(t.path(), "k4.s6", &named::k4());
    let (code, rows) = run(t.path(), &["analyze", &k4], &[]);
    assert_eq!(code, 0);
    assert_eq!((rows[0]["girth"].as_u64(), rows[0]["oddness"].as_u64(), rows[0]["class"].as_u64()), (Some(3), Some(0), Some(3)));

    let bad = t.path().join("bad.g6");
    std::fs::write(&bad, "not a graph\n").unwrap();
    assert_eq!(run(t.path(), &["analyze", bad.to_str().unwrap()], &[]).0, 2);
    assert_eq!(run(t.path(), &["analyze", "missing.g6"], &[]).0, 2);
}

#[test]
fn solve_writes_a_certificate_that_verifies() {
    let t = TempDir::new().unwrap();
    let cert = t.path().join("p.json");
    let (code, rows) = run(t.path(), &["solve", &corpus_file("petersen.s6"), "--out", cert.to_str().unwrap()], &[]);
    assert_eq!(code, 0);
    assert_eq!(rows[0]["verified"], true);
    assert_eq!(rows[0]["matchings"].as_array().unwrap().len(), 3);
    let (code, rows) = run(t.path(), &["verify", cert.to_str().unwrap()], &[]);
    assert_eq!(code, 0);
    assert_eq!(rows[0]["verified"], true);

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    doc["matching_edge_ids"][1] = doc["matching_edge_ids"][0].clone();
    doc["matching_edge_ids"][2] = doc["matching_edge_ids"][0].clone();
    std::fs::write(&cert, doc.to_string()).unwrap();
    let (code, rows) = run(t.path(), &["verify", cert.to_str().unwrap()], &[]);
    assert_eq!(code, 1);
    assert_eq!(rows[0]["verified"], false);
}

#[test]
fn solve_exit_codes() {
    let t = TempDir::new().unwrap();
    let mut e = vec![(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)];
    e.extend(e.clone().into_iter().map(|(u, v)| (u + 5, v + 5)));
    e.push((4, 9));
    let bridged = write_graph(t.path(), "bridged.s6", &CubicGraph::new(10, &e).unwrap());
    let (code, rows) = run(t.path(), &["solve", &bridged], &[]);
    assert_eq!(code, 2);
    assert_eq!(rows[0]["status"], "invalid_input");
    assert_eq!(rows[0]["bridges"].as_array().unwrap().len(), 1);

    let (code, rows) = run(t.path(), &["solve", &corpus_file("flower7.s6"), "--timeout-ms", "0"], &[]);
    assert_eq!(code, 3);
    assert_eq!(rows[0]["status"], "timeout");

    let p = corpus_file("petersen.s6");
    for s in ["auto", "brute", "balanced"] {
        let (code, rows) = run(t.path(), &["solve", &p, "--strategy", s], &[]);
        assert_eq!(code, 0, "{s}");
        assert_eq!(rows[0]["verified"], true);
    }
    let (code, rows) = run(t.path(), &["solve", &p, "--strategy", "brute"], &[("FR_ENUM_CAP", "2")]);
    assert_eq!(code, 3);
    assert_eq!(rows[0]["status"], "resource_limit");
    assert_eq!(run(t.path(), &["solve", &p], &[("FR_ENUM_CAP", "lots")]).0, 2);

    let k4 = write_graph(t.path(), "k4.s6", &named::k4());
    let (code, rows) = run(t.path(), &["solve", &k4, "--strategy", "balanced", "--max-pms", "1"], &[]);
    assert_eq!(code, 3);
    assert_eq!(rows[0]["status"], "not_found");
}

#[test]
fn corpus_runs() {
    let t = TempDir::new().unwrap();
    let out = t.path().join("certs");
    let (code, rows) =
        run(t.path(), &["corpus", corpus_dir().to_str().unwrap(), "--jobs", "4", "--out-dir", out.to_str().unwrap()], &[]);
    assert_eq!(code, 0);
    let names: Vec<&str> = rows.iter().filter_map(|r| r["name"].as_str()).collect();
    assert_eq!(names, ["blanusa1", "blanusa2", "flower5", "flower7", "petersen"]);
    for r in &rows[..5] {
        assert_eq!(r["status"], "solved");
        let (code, v) = run(t.path(), &["verify", r["certificate"].as_str().unwrap()], &[]);
        assert_eq!((code, &v[0]["verified"]), (0, &Value::Bool(true)));
    }
    assert_eq!(rows[5]["summary"]["solved"], 5);

    let empty = TempDir::new().unwrap();
    let (code, rows) = run(t.path(), &["corpus", empty.path().to_str().unwrap()], &[]);
    assert_eq!(code, 0);
    assert_eq!(rows[0]["summary"]["graphs"], 0);

    let mixed = TempDir::new().unwrap();
    write_graph(mixed.path(), "k4.s6", &named::k4());
    write_graph(mixed.path(), "petersen.g6", &named::petersen());
    std::fs::write(mixed.path().join("broken.g6"), "}}}\n").unwrap();
    std::fs::write(mixed.path().join("notes.txt"), "ignored\n").unwrap();
    let (code, rows) = run(t.path(), &["corpus", mixed.path().to_str().unwrap()], &[]);
    assert_eq!(code, 2);
    let status: Vec<(&str, &str)> =
        rows[..3].iter().map(|r| (r["name"].as_str().unwrap(), r["status"].as_str().unwrap())).collect();
    assert_eq!(status, [("broken", "invalid_input"), ("k4", "solved"), ("petersen", "solved")]);

    let out = Command::new(env!("CARGO_BIN_EXE_fanraspaud"))
        .args(["corpus", corpus_dir().to_str().unwrap(), "--table"])
        .current_dir(t.path())
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("name "));
    assert_eq!(text.lines().filter(|l| l.contains(" solved ")).count(), 5);
}

#[test]
fn lemma_suites() {
    let t = TempDir::new().unwrap();
    let (code, rows) = run(t.path(), &["lemmas", "--lemma", "triples", "--max-len", "9"], &[]);
    assert_eq!(code, 0);
    assert_eq!(rows.len(), 1);
    assert!(rows[0]["cases"].as_u64().unwrap() > 0);

    let (code, rows) = run(t.path(), &["lemmas", "--lemma", "triples", "--max-len", "7", "--mutant"], &[]);
    assert_eq!(code, 1);
    let failures = rows[0]["failures"].as_array().unwrap();
    assert!(failures.iter().any(|f| f.as_str().unwrap().starts_with("1122333:")));
    assert!(t.path().join("fr-failures/lemma-failures.json").exists());

    let (code, rows) = run(t.path(), &["lemmas"], &[]);
    assert_eq!(code, 0);
    let suites: Vec<&str> = rows.iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["triples", "pairs", "pairs_ab", "avoidance", "uniform", "three_cut"]);
    assert!(rows.iter().all(|r| r["pass"] == true && r["cases"].as_u64().unwrap() > 0));
}

#[test]
fn reduce_demo() {
    let t = TempDir::new().unwrap();
    let (code, rows) = run(t.path(), &["reduce", &corpus_file("petersen.s6")], &[]);
    assert_eq!(code, 0);
    assert_eq!(rows[0]["pattern"], "petersen_minus_vertex");
    assert_eq!(rows[0]["certificate"]["verified"], true);
    assert_eq!(rows[0]["certificate"]["trail"]["reduced"].as_str().unwrap().len() > 0, true);

    let k4 = write_graph(t.path(), "k4.s6", &named::k4());
    let (code, rows) = run(t.path(), &["reduce", &k4], &[]);
    assert_eq!(code, 0);
    assert_eq!(rows[0]["status"], "no_reduction");
}
