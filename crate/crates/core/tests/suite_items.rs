use continua::suite::{run_item, DEFAULT_SEED};

fn run(id: &str) -> continua::suite::CriterionResult {
    let r = run_item(id, DEFAULT_SEED).unwrap();
    println!("{r}");
    for n in &r.notes {
        println!("  note: {n}");
    }
    for f in &r.failures {
        println!("  failure: {f}");
    }
    r
}

#[test]
fn validator_item_passes() {
    assert!(run("1").passed);
}

#[test]
fn figure_item_passes() {
    assert!(run("2").passed);
}

#[test]
fn topology_item_passes() {
    assert!(run("3").passed);
}

#[test]
fn separation_item_passes() {
    assert!(run("4").passed);
}

#[test]
fn connectedness_item_passes() {
    assert!(run("5").passed);
}

#[test]
fn nets_item_passes() {
    assert!(run("6").passed);
}

#[test]
fn metric_item_passes() {
    assert!(run("8").passed);
}

#[test]
fn graded_item_passes() {
    assert!(run("graded").passed);
}

// The half-open interval identities are off by one grid point on every
// finite grid, so this item is expected to report failures.
#[test]
fn real_item_reports_interval_gap() {
    let r = run("7");
    assert!(!r.passed);
    assert!(r.failures.iter().all(|f| f.contains("constructions")));
}

// Preimage checks pass on edges whose endpoints are joined only through a
// path in a non-transitive target, so the three-way equivalence breaks.
#[test]
fn morphism_item_reports_equivalence_gap() {
    let r = run("9");
    assert!(!r.passed);
    assert!(r.notes.iter().any(|n| n.contains("open⇏connected")));
}

#[test]
fn runs_are_reproducible() {
    assert_eq!(run_item("3", 7), run_item("3", 7));
}
