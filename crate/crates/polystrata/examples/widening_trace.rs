//! Watch the widening/narrowing iterates of a loop analysis.
//!
//! The triangular-sum loop (`j` accumulates `i` while `i` counts up)
//! drives the standard widening through its characteristic sequence when
//! the loop value is kept at the body-entry point and widened on every
//! update: point, half-line, wedge, half-plane, top — and one narrowing
//! step then recovers `i <= 5`.
//!
//!     cargo run --example widening_trace

use polystrata::domains::AbstractDomain;
use polystrata::engine::{node, EngineConfig, Phase, WidenAt};
use polystrata::frontend::parse_program;
use polystrata::polyhedra::{Polyhedron, RationalStyle};

fn main() {
    let src = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/programs/triangular_sum.whl"
    ))
    .expect("bundled program");
    let program = parse_program(&src).expect("parses");

    let cfg = EngineConfig {
        delay: 0,                     // widen on every update
        narrowing: 1,                 // a single downward pass
        widen_at: WidenAt::BodyEntry, // one value per loop, guard applied
        ..EngineConfig::default()
    };
    let result = node::analyze::<Polyhedron>(&program, &cfg).expect("runs");

    let head = program.loops[0].body_entry;
    println!("iterates at the loop head (node {head}):");
    for step in result.trace.iter().filter(|s| s.node == head) {
        let kind = match step.phase {
            Phase::Seed => "seed  ",
            Phase::Join => "join  ",
            Phase::Widen => "widen ",
            Phase::Narrow => "narrow",
        };
        let lines = step.value.render(&program.vars, RationalStyle::Exact);
        println!("  {kind} {}", lines.join("  &&  "));
    }

    // The final loop-head value keeps the loop bound but—having passed
    // through top—has honestly lost the lower bound i >= 1.
    let lines = result.values[head].render(&program.vars, RationalStyle::Exact);
    assert_eq!(lines, vec!["i <= 5"]);
    println!("\nfinal loop-head value: {}", lines.join("  &&  "));
}
