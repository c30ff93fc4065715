use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use fanraspaud::balanced::{canonical_key, BalancedTriple, TripleTables};
use fanraspaud::graph::{chromatic_index_is_3, find_bridges, girth, is_connected, read_graph_file, CubicGraph, GraphError};
use fanraspaud::matching::oddness_with_cap;
use fanraspaud::reductions::{minimality_report, PatternKind};
use fanraspaud::solver::{self, certificate_json, reverify_json, Mode, SolverConfig, SolverError};
use fanraspaud::suites::{self, SuiteReport};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::table::render;
use crate::{LemmaArg, Status, StrategyArg};

pub fn config(
    strategy: StrategyArg,
    timeout_ms: Option<u64>,
    max_pms: usize,
    enum_cap: usize,
    persist_dir: PathBuf,
) -> SolverConfig {
    SolverConfig {
        mode: match strategy {
            StrategyArg::Auto => Mode::Auto,
            StrategyArg::Brute => Mode::Brute,
            StrategyArg::Balanced => Mode::Balanced,
        },
        timeout: timeout_ms.map(Duration::from_millis),
        max_pms,
        enum_cap,
        persist_dir: Some(persist_dir),
        ..Default::default()
    }
}

fn emit(v: &Value) {
    println!("{v}");
}

type Entry = (String, Result<CubicGraph, GraphError>);

/// Graphs of a file, named by the file stem (and line number when there
/// are several).
fn load(path: &Path) -> Result<Vec<Entry>, String> {
    let graphs = read_graph_file(path).map_err(|e| format!("{}: {e}", path.display()))?;
    if graphs.is_empty() {
        return Err(format!("{}: no graphs", path.display()));
    }
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let many = graphs.len() > 1;
    Ok(graphs
        .into_iter()
        .enumerate()
        .map(|(i, g)| (if many { format!("{stem}#{}", i + 1) } else { stem.clone() }, g))
        .collect())
}

fn load_or_report(path: &Path) -> Option<Vec<Entry>> {
    match load(path) {
        Ok(e) => Some(e),
        Err(msg) => {
            emit(&json!({ "name": path.display().to_string(), "status": "invalid_input", "error": msg }));
            None
        }
    }
}

fn bad_graph(name: &str, e: &GraphError) -> Status {
    emit(&json!({ "name": name, "status": "invalid_input", "error": e.to_string() }));
    Status::Input
}

fn analysis(name: &str, g: &CubicGraph, enum_cap: usize) -> Value {
    let bridges: Vec<usize> = find_bridges(g).map(|b| b.into_iter().collect()).unwrap_or_default();
    let odd = match oddness_with_cap(g, enum_cap) {
        Ok((k, _, _)) => json!(k),
        Err(_) => Value::Null,
    };
    let gi = girth(g);
    json!({
        "name": name,
        "n": g.order(),
        "girth": if gi == usize::MAX { Value::Null } else { json!(gi) },
        "connected": is_connected(g),
        "bridges": bridges,
        "simple": g.is_simple(),
        "oddness": odd,
        "class": if chromatic_index_is_3(g) { 3 } else { 4 },
        "minimal_counterexample_gates": minimality_report(g),
    })
}

pub fn analyze(path: &Path, enum_cap: usize) -> Status {
    let Some(entries) = load_or_report(path) else {
        return Status::Input;
    };
    let mut status = Status::Ok;
    for (name, g) in entries {
        match g {
            Ok(g) => emit(&analysis(&name, &g, enum_cap)),
            Err(e) => status = status.worst(bad_graph(&name, &e)),
        }
    }
    status
}

/// Row fields and exit status for a failed solve.
fn failure(e: &SolverError) -> (Value, Status) {
    let (tag, status) = match e {
        SolverError::InvalidInput { .. } => ("invalid_input", Status::Input),
        SolverError::Timeout(_) => ("timeout", Status::Resource),
        SolverError::EnumerationCapExceeded(_) => ("resource_limit", Status::Resource),
        SolverError::NotFound => ("not_found", Status::Resource),
        SolverError::Exhausted { .. } => ("exhausted", Status::Math),
        _ => ("error", Status::Math),
    };
    let mut v = json!({ "status": tag, "error": e.to_string() });
    match e {
        SolverError::InvalidInput { bridges, .. } => v["bridges"] = json!(bridges),
        SolverError::Exhausted { persisted: Some(p), .. } => v["persisted"] = json!(p),
        _ => {}
    }
    (v, status)
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn solve(path: &Path, cfg: &SolverConfig, out: Option<&Path>) -> Status {
    let Some(entries) = load_or_report(path) else {
        return Status::Input;
    };
    if out.is_some() && entries.len() > 1 {
        emit(&json!({ "status": "invalid_input", "error": "--out needs a single-graph file" }));
        return Status::Input;
    }
    let mut status = Status::Ok;
    for (name, g) in entries {
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                status = status.worst(bad_graph(&name, &e));
                continue;
            }
        };
        let t = Instant::now();
        match solver::solve(&g, cfg) {
            Ok(c) => {
                let mut doc = certificate_json(&g, &c);
                doc["name"] = json!(name);
                doc["status"] = json!("solved");
                doc["elapsed_ms"] = json!(ms(t.elapsed()));
                if let Some(p) = out {
                    if let Err(e) = std::fs::write(p, format!("{doc}\n")) {
                        eprintln!("writing {}: {e}", p.display());
                        status = status.worst(Status::Input);
                    }
                }
                emit(&doc);
            }
            Err(e) => {
                let (mut row, s) = failure(&e);
                row["name"] = json!(name);
                row["elapsed_ms"] = json!(ms(t.elapsed()));
                emit(&row);
                status = status.worst(s);
            }
        }
    }
    status
}

#[derive(Debug, Clone, Serialize)]
struct Row {
    name: String,
    status: String,
    n: Option<usize>,
    girth: Option<usize>,
    oddness: Option<usize>,
    class: Option<u8>,
    strategy: Option<String>,
    elapsed_ms: f64,
    certificate: Option<PathBuf>,
    error: Option<String>,
    #[serde(skip)]
    exit: Status,
}

fn corpus_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .and_then(|x| x.to_str())
                    .is_some_and(|x| ["g6", "s6", "graph6", "sparse6"].contains(&x))
        })
        .collect();
    files.sort();
    Ok(files)
}

fn corpus_row(name: String, g: Result<CubicGraph, String>, cfg: &SolverConfig, out_dir: &Path, enum_cap: usize) -> Row {
    let mut row = Row {
        name,
        status: "invalid_input".into(),
        n: None,
        girth: None,
        oddness: None,
        class: None,
        strategy: None,
        elapsed_ms: 0.0,
        certificate: None,
        error: None,
        exit: Status::Input,
    };
    let g = match g {
        Ok(g) => g,
        Err(e) => {
            row.error = Some(e);
            return row;
        }
    };
    row.n = Some(g.order());
    row.girth = Some(girth(&g)).filter(|&x| x != usize::MAX);
    row.class = Some(if chromatic_index_is_3(&g) { 3 } else { 4 });
    row.oddness = oddness_with_cap(&g, enum_cap).ok().map(|r| r.0);
    let t = Instant::now();
    let result = solver::solve(&g, cfg);
    row.elapsed_ms = ms(t.elapsed());
    match result {
        Ok(c) => {
            row.strategy = Some(c.strategy.name().into());
            let path = out_dir.join(format!("{}.json", row.name.replace(['/', '#'], "_")));
            let mut doc = certificate_json(&g, &c);
            doc["name"] = json!(row.name);
            let written = std::fs::write(&path, format!("{doc}\n"))
                .map_err(|e| e.to_string())
                .and_then(|_| std::fs::read_to_string(&path).map_err(|e| e.to_string()))
                .and_then(|s| serde_json::from_str::<Value>(&s).map_err(|e| e.to_string()))
                .and_then(|v| reverify_json(&v));
            match written {
                Ok(()) => {
                    row.status = "solved".into();
                    row.exit = Status::Ok;
                    row.certificate = Some(path);
                }
                Err(e) => {
                    row.status = "unverified".into();
                    row.exit = Status::Math;
                    row.error = Some(e);
                }
            }
        }
        Err(e) => {
            let (v, s) = failure(&e);
            row.status = v["status"].as_str().unwrap_or("error").into();
            row.error = Some(e.to_string());
            row.exit = s;
        }
    }
    row
}

pub fn corpus(dir: &Path, cfg: &SolverConfig, jobs: usize, table: bool, out_dir: &Path, enum_cap: usize) -> Status {
    let files = match corpus_files(dir) {
        Ok(f) => f,
        Err(e) => {
            emit(&json!({ "name": dir.display().to_string(), "status": "invalid_input", "error": e.to_string() }));
            return Status::Input;
        }
    };
    if let Err(e) = std::fs::create_dir_all(out_dir) {
        emit(&json!({ "status": "invalid_input", "error": format!("{}: {e}", out_dir.display()) }));
        return Status::Input;
    }
    let mut work: Vec<(String, Result<CubicGraph, String>)> = Vec::new();
    for f in &files {
        match load(f) {
            Ok(entries) => work.extend(entries.into_iter().map(|(n, g)| (n, g.map_err(|e| e.to_string())))),
            Err(e) => {
                let stem = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                work.push((stem, Err(e)));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    let rows: Vec<Row> =
        pool.install(|| work.into_par_iter().map(|(name, g)| corpus_row(name, g, cfg, out_dir, enum_cap)).collect());

    let count = |s: &str| rows.iter().filter(|r| r.status == s).count();
    let summary = json!({
        "summary": {
            "graphs": rows.len(),
            "solved": count("solved"),
            "invalid_input": count("invalid_input"),
            "failed": rows.len() - count("solved") - count("invalid_input"),
        }
    });
    if table {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.name.clone(),
                    r.status.clone(),
                    opt(r.n),
                    opt(r.girth),
                    opt(r.oddness),
                    opt(r.class.map(usize::from)),
                    r.strategy.clone().unwrap_or_else(|| "-".into()),
                    format!("{:.1}", r.elapsed_ms),
                ]
            })
            .collect();
        print!("{}", render(&["name", "status", "n", "girth", "oddness", "class", "strategy", "ms"], &cells));
    } else {
        for r in &rows {
            emit(&serde_json::to_value(r).expect("row serializes"));
        }
    }
    emit(&summary);
    rows.iter().fold(Status::Ok, |s, r| s.worst(r.exit))
}

/// A table whose row for 1122333 holds two unbalanced triples.
fn mutant_tables() -> TripleTables {
    let mut t = TripleTables::shipped().clone();
    t.set(&canonical_key(&[1, 1, 2, 2, 3, 3, 3]), (BalancedTriple([0, 1, 3]), BalancedTriple([2, 4, 5])));
    t
}

pub fn lemmas(lemma: LemmaArg, max_len: usize, max_n: usize, mutant: bool, persist_dir: &Path) -> Status {
    let want = |l: LemmaArg| lemma == LemmaArg::All || lemma == l;
    let mut runs: Vec<Box<dyn Fn() -> SuiteReport>> = Vec::new();
    if want(LemmaArg::Triples) {
        let lengths: Vec<usize> = (7..=max_len.min(13)).step_by(2).collect();
        runs.push(Box::new(move || {
            if mutant {
                suites::triples_suite_with(&lengths, &mutant_tables())
            } else {
                suites::triples_suite(&lengths)
            }
        }));
    }
    if want(LemmaArg::Pairs) {
        let lengths: Vec<usize> = (4..=max_len).step_by(2).collect();
        runs.push(Box::new(move || suites::pairs_suite(&lengths)));
    }
    if want(LemmaArg::PairsAb) {
        let lengths: Vec<usize> = [8, 10, 12].into_iter().filter(|&l| l <= max_len).collect();
        runs.push(Box::new(move || suites::pairs_ab_suite(&lengths)));
    }
    if want(LemmaArg::Avoidance) {
        runs.push(Box::new(move || suites::avoidance_suite(max_n)));
    }
    if want(LemmaArg::Uniform) {
        runs.push(Box::new(suites::uniform_suite));
    }
    if want(LemmaArg::ThreeCut) {
        runs.push(Box::new(suites::three_cut_suite));
    }
    let mut failed = Vec::new();
    for run in runs {
        let t = Instant::now();
        let r = run();
        let mut row = serde_json::to_value(&r).expect("report serializes");
        row["pass"] = json!(r.passed());
        row["elapsed_ms"] = json!(ms(t.elapsed()));
        emit(&row);
        if !r.passed() {
            failed.push(r);
        }
    }
    if failed.is_empty() {
        return Status::Ok;
    }
    let path = persist_dir.join("lemma-failures.json");
    let saved = std::fs::create_dir_all(persist_dir)
        .and_then(|_| std::fs::write(&path, serde_json::to_string_pretty(&failed).expect("json")));
    match saved {
        Ok(()) => eprintln!("failures written to {}", path.display()),
        Err(e) => eprintln!("could not write {}: {e}", path.display()),
    }
    Status::Math
}

pub fn reduce(path: &Path, enum_cap: usize) -> Status {
    let Some(entries) = load_or_report(path) else {
        return Status::Input;
    };
    let cfg = SolverConfig { enum_cap, ..Default::default() };
    let mut status = Status::Ok;
    for (name, g) in entries {
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                status = status.worst(bad_graph(&name, &e));
                continue;
            }
        };
        let gates = minimality_report(&g);
        let mut row = json!({ "name": name, "n": g.order(), "minimal_counterexample_gates": gates });
        let mut done = false;
        for kind in [PatternKind::G8, PatternKind::PetersenMinusVertex] {
            match solver::solve_by_reduction(&g, kind, &cfg) {
                Ok(Some(c)) => {
                    row["status"] = json!("reduced");
                    row["pattern"] = json!(kind);
                    row["certificate"] = certificate_json(&g, &c);
                    done = true;
                    break;
                }
                Ok(None) => {}
                Err(e) => {
                    let (v, s) = failure(&e);
                    row["status"] = v["status"].clone();
                    row["error"] = v["error"].clone();
                    status = status.worst(s);
                    done = true;
                    break;
                }
            }
        }
        if !done {
            row["status"] = json!("no_reduction");
        }
        emit(&row);
    }
    status
}

pub fn verify(path: &Path) -> Status {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            emit(&json!({ "status": "invalid_input", "error": format!("{}: {e}", path.display()) }));
            return Status::Input;
        }
    };
    let docs: Result<Vec<Value>, _> = match serde_json::from_str::<Value>(&text) {
        Ok(v) => Ok(vec![v]),
        Err(_) => text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect(),
    };
    let docs = match docs {
        Ok(d) if !d.is_empty() => d,
        Ok(_) => {
            emit(&json!({ "status": "invalid_input", "error": "no certificates" }));
            return Status::Input;
        }
        Err(e) => {
            emit(&json!({ "status": "invalid_input", "error": e.to_string() }));
            return Status::Input;
        }
    };
    let mut status = Status::Ok;
    for doc in docs {
        let name = doc.get("name").cloned().unwrap_or(Value::Null);
        match reverify_json(&doc) {
            Ok(()) => emit(&json!({ "name": name, "verified": true })),
            Err(e) => {
                emit(&json!({ "name": name, "verified": false, "error": e }));
                status = status.worst(Status::Math);
            }
        }
    }
    status
}
