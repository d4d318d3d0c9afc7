//! The product analysis: stratified tuples at the widening node, with
//! the componentwise (∇-style), hierarchical, and closure widenings.
//!
//! The race loop increments whichever of `i`, `j` is behind, so its
//! one-variable strata see plain counters while the full space keeps the
//! band `j <= i <= j+1`. The hierarchical widening converges to exactly
//! that band; the closure variant re-reduces components after every
//! widening, rebuilding finite bounds each time, and never converges —
//! the divergence bound stops it and the recorded component trace shows
//! the alternating growth.
//!
//!     cargo run --example product_tuples

use polystrata::domains::AbstractDomain;
use polystrata::engine::{product, EngineConfig, Phase, ProductWidening};
use polystrata::frontend::parse_program;
use polystrata::polyhedra::{Polyhedron, RationalStyle};

fn main() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/programs/race.whl"))
        .expect("bundled program");
    let program = parse_program(&src).expect("parses");
    let cfg = EngineConfig {
        delay: 4, // let four exact joins happen before the first widening
        ..EngineConfig::default()
    };
    let style = RationalStyle::Exact;

    // Hierarchical widening: each component is clipped by its already
    // widened sub-strata, which here keeps the band exact.
    let r = product::analyze::<Polyhedron>(&program, &cfg, ProductWidening::Hierarchical, false)
        .expect("runs");
    assert!(r.diverged.is_none());
    let head = 1; // back-edge target: the loop's widening node
    println!("hierarchical widening, loop value:");
    for l in r.values[head].render(&program.vars, style) {
        println!("  {l}");
    }

    // Closure widening: reduction across components defeats the widening
    // and the run is reported divergent, with the partial trace intact.
    let r = product::analyze::<Polyhedron>(&program, &cfg, ProductWidening::Closure, false)
        .expect("runs");
    let d = r.diverged.expect("closure diverges here");
    println!(
        "\nclosure widening diverged: node {} after {} widenings",
        d.node, d.widenings
    );

    let labels: Vec<String> = r
        .ctx
        .dims
        .iter()
        .map(|dims| {
            let names: Vec<&str> = dims.iter().map(|&v| program.vars[v].as_str()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    println!("first component iterates at the loop node:");
    for step in r
        .tuple_trace
        .iter()
        .filter(|s| s.node == head && s.phase != Phase::Narrow)
        .take(4)
    {
        let mut parts = Vec::new();
        for (k, comp) in step.comps.iter().enumerate() {
            let names: Vec<String> = r.ctx.dims[k]
                .iter()
                .map(|&v| program.vars[v].clone())
                .collect();
            parts.push(format!(
                "{} {}",
                labels[k],
                comp.render(&names, style).join(" & ")
            ));
        }
        println!("  {:?}: {}", step.phase, parts.join(" | "));
    }
}
