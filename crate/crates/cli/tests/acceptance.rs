//! Acceptance criteria 1-10, one PASS/FAIL line each. Criteria 1-9 come from
//! the property suite run through the binary (`suite all`); criterion 10
//! checks the CLI contracts on the shipped fixtures.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use continua_cli::spec;
use serde_json::Value;

/// All comparisons are exact rationals or integers.
const TOLERANCE: u64 = 0;
const RUNTIME_BUDGET: Duration = Duration::from_secs(60);
const SEED: u64 = continua::suite::DEFAULT_SEED;

const TITLES: [&str; 10] = [
    "validator soundness",
    "figure and closure laws",
    "topology construction",
    "separation",
    "connectedness",
    "nets and compactness analogs",
    "real line",
    "metric balls",
    "morphisms",
    "CLI contracts",
];

/// Expected `validate` exit code for every shipped fixture.
const FIXTURE_EXITS: [(&str, i32); 12] = [
    ("asymmetric.space", 2),
    ("double-source.space", 0),
    ("double-target.space", 0),
    ("e1-blocked.space", 0),
    ("e1.space", 0),
    ("e2.space", 0),
    ("labelled.space", 0),
    ("metric.space", 0),
    ("paper_literal.space", 1),
    ("range.space", 0),
    ("real.space", 0),
    ("step.space", 0),
];

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_continua"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

struct Line {
    passed: bool,
    detail: String,
}

fn suite_lines(report: &Value) -> Vec<Line> {
    let criteria = report["result"]["criteria"].as_array().cloned().unwrap_or_default();
    let witnesses: Vec<String> = report["witnesses"]
        .as_array()
        .map(|w| w.iter().filter_map(|s| s.as_str().map(String::from)).collect())
        .unwrap_or_default();
    let find = |id: &str| criteria.iter().find(|c| c["id"] == id);
    let describe = |ids: &[&str]| -> Line {
        let mut passed = true;
        let mut parts = Vec::new();
        for id in ids {
            match find(id) {
                Some(c) => {
                    passed &= c["passed"] == true;
                    parts.push(format!("{} checks, {} failed", c["checks"], c["failed"]));
                    for note in c["notes"].as_array().into_iter().flatten() {
                        parts.push(note.as_str().unwrap_or_default().to_string());
                    }
                }
                None => {
                    passed = false;
                    parts.push(format!("item {id} missing from the suite report"));
                }
            }
        }
        if !passed {
            if let Some(w) = ids
                .iter()
                .find_map(|id| witnesses.iter().find(|w| w.starts_with(&format!("[{id}]"))))
            {
                parts.push(format!("first witness {w}"));
            }
        }
        Line {
            passed,
            detail: parts.join("; "),
        }
    };
    let mut lines: Vec<Line> = (1..=9)
        .map(|i| {
            if i == 2 {
                describe(&["2", "graded"])
            } else {
                describe(&[&i.to_string()])
            }
        })
        .collect();
    lines.truncate(9);
    lines
}

fn cli_contracts(suite_exit: i32) -> Line {
    let dir = fixtures();
    let mut failures = Vec::new();
    let mut checks = 0;

    let mut shipped: Vec<String> = std::fs::read_dir(&dir)
        .expect("fixture directory")
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".space"))
        .collect();
    shipped.sort();
    let listed: Vec<&str> = FIXTURE_EXITS.iter().map(|(n, _)| *n).collect();
    checks += 1;
    if shipped != listed {
        failures.push(format!("fixture set {shipped:?} differs from the exit table"));
    }

    for (name, expected) in FIXTURE_EXITS {
        let path = dir.join(name);
        let (code, _) = binary(&["validate", "--spec", &path.display().to_string()]);
        checks += 1;
        if code != expected {
            failures.push(format!("validate {name}: exit {code}, expected {expected}"));
        }
        let original = match spec::read(&path) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("{name} does not parse: {e}"));
                continue;
            }
        };
        let printed = spec::print(&original);
        checks += 1;
        match spec::parse(&printed, name) {
            Ok(again) if again == original => {}
            Ok(_) => failures.push(format!("{name}: printed form reads back differently")),
            Err(e) => failures.push(format!("{name}: printed form does not parse: {e}")),
        }
        if expected != 2 {
            checks += 1;
            let a = spec::build(original.clone(), &dir, true);
            let b = spec::build(spec::parse(&printed, name).expect("parsed above"), &dir, true);
            match (a, b) {
                (Ok(a), Ok(b)) if a.continuum == b.continuum && a.classes == b.classes => {}
                _ => failures.push(format!("{name}: printed form loads a different model")),
            }
        }
    }

    let e1 = dir.join("e1.space").display().to_string();
    let probes: [(&[&str], i32); 6] = [
        (&["closure", "--spec", &e1, "--class", "X0", "--level", "2"], 0),
        (&["real-lub", "--members", "1/3", "--a", "0", "--b", "1", "--iters", "8"], 0),
        (&["open", "--spec", &e1, "--class", "X0", "--level", "2"], 1),
        (&["closure", "--spec", &e1, "--class", "X0", "--level", "9"], 2),
        (&["closure", "--spec", &e1, "--class", "nowhere", "--level", "1"], 2),
        (&["no-such-command"], 2),
    ];
    for (args, expected) in probes {
        checks += 1;
        let (code, _) = binary(args);
        if code != expected {
            failures.push(format!("{}: exit {code}, expected {expected}", args.join(" ")));
        }
    }
    let (_, closure) = binary(&["--json", "closure", "--spec", &e1, "--class", "X0", "--level", "2"]);
    checks += 1;
    let v: Value = serde_json::from_str(&closure).unwrap_or(Value::Null);
    if v["result"]["closure"] != serde_json::json!(["0", "1"]) {
        failures.push(format!("closure of X0 at level 2 is {}", v["result"]["closure"]));
    }
    let (_, lub) = binary(&["--json", "real-lub", "--members", "1/3", "--a", "0", "--b", "1", "--iters", "8"]);
    checks += 1;
    let v: Value = serde_json::from_str(&lub).unwrap_or(Value::Null);
    if v["result"]["lub"] != "43/128" {
        failures.push(format!("real-lub gives {}", v["result"]["lub"]));
    }

    checks += 1;
    if suite_exit != 0 {
        failures.push(format!("suite all exits {suite_exit}"));
    }

    let passed = failures.is_empty();
    let mut detail = format!("{checks} checks, {} failed", failures.len());
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first witness {f}"));
    }
    Line { passed, detail }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let seed = SEED.to_string();
    let (suite_exit, out) = binary(&["--json", "suite", "all", "--seed", &seed]);
    let report: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
    let mut lines = suite_lines(&report);
    lines.push(cli_contracts(suite_exit));

    println!("acceptance: seed {SEED}, tolerance {TOLERANCE} (exact arithmetic)");
    let mut failed = 0;
    for (i, line) in lines.iter().enumerate() {
        if !line.passed {
            failed += 1;
        }
        println!(
            "{} criterion {}: {}: {}",
            if line.passed { "PASS" } else { "FAIL" },
            i + 1,
            TITLES[i],
            line.detail
        );
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance: {} of {} criteria pass in {:.1}s (budget {}s)",
        lines.len() - failed,
        lines.len(),
        elapsed.as_secs_f64(),
        RUNTIME_BUDGET.as_secs()
    );
    if elapsed > RUNTIME_BUDGET {
        println!("acceptance: runtime budget exceeded");
        failed += 1;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
