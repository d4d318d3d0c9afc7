//! Checking an analysis against ground truth: enumerate the reachable
//! concrete states over a bounded input range and verify every one lies
//! inside the inferred invariants, then show the inductive-invariant
//! check that needs no enumeration at all.
//!
//!     cargo run --example oracle_check

use polystrata::engine::{check_postfixpoint, node, EngineConfig};
use polystrata::frontend::parse_program;
use polystrata::oracle::{check_soundness, reachable, OracleConfig};
use polystrata::polyhedra::Polyhedron;

fn main() {
    let src = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/programs/nested_counters.whl"
    ))
    .expect("bundled program");
    let program = parse_program(&src).expect("parses");

    let result = node::analyze::<Polyhedron>(&program, &EngineConfig::default()).expect("runs");
    assert!(result.diverged.is_none());

    // Brute force: collect every reachable store per node.
    let oracle = reachable(&program, &OracleConfig::default());
    assert!(!oracle.truncated, "exploration fit under the cap");
    let states: usize = oracle.states.iter().map(|s| s.len()).sum();
    println!("enumerated {states} reachable states");

    match check_soundness(&oracle, &result.values) {
        Ok(()) => println!("every reachable state satisfies its node invariant"),
        Err((node, store)) => panic!("unsound at node {node}: {store:?}"),
    }

    // Independent of any bound: the invariant map is inductive (each
    // edge's image stays inside its target), so it covers all runs.
    check_postfixpoint(&program, &result.values).expect("inductive");
    println!("the invariant map is inductive (a post-fixpoint)");
}
