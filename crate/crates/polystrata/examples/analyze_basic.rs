//! Smallest end-to-end use of the library: parse a program, run the
//! classic polyhedral analysis, and print one invariant per CFG node.
//!
//!     cargo run --example analyze_basic

use polystrata::domains::AbstractDomain;
use polystrata::engine::{node, EngineConfig};
use polystrata::frontend::parse_program;
use polystrata::polyhedra::{Polyhedron, RationalStyle};

fn main() {
    let src = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/programs/count_to_six.whl"
    ))
    .expect("bundled program");
    let program = parse_program(&src).expect("parses");

    // Defaults: widening at back-edge targets after one join-only update,
    // two narrowing passes, divergence bound 100.
    let result = node::analyze::<Polyhedron>(&program, &EngineConfig::default()).expect("runs");
    assert!(result.diverged.is_none());

    println!("source:\n{src}");
    for (id, value) in result.values.iter().enumerate() {
        println!("node {id}:");
        for line in value.render(&program.vars, RationalStyle::Exact) {
            println!("  {line}");
        }
    }
    println!("widenings: {}", result.widenings);

    // The loop's invariant lives at the body-entry node, right after the
    // guard: exactly 1 <= i <= 5 here.
    let body_entry = program.loops[0].body_entry;
    let lines = result.values[body_entry].render(&program.vars, RationalStyle::Exact);
    assert_eq!(lines, vec!["i <= 5", "i >= 1"]);
}
