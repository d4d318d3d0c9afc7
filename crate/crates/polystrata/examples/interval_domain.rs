//! The engines are generic over the abstract domain. Here the same
//! program runs under interval boxes and under convex polyhedra; the
//! polyhedral invariant is at least as strong at every node, and on the
//! product analysis the per-stratum interval components carry no more
//! information than projections of the full box — relations between
//! variables are what stratification needs a relational domain for.
//!
//!     cargo run --example interval_domain

use polystrata::domains::{AbstractDomain, IntervalValue};
use polystrata::engine::{node, product, EngineConfig, ProductWidening};
use polystrata::frontend::parse_program;
use polystrata::polyhedra::{Polyhedron, RationalStyle};

fn main() {
    let src = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/programs/step_pair.whl"
    ))
    .expect("bundled program");
    let program = parse_program(&src).expect("parses");
    let cfg = EngineConfig::default();
    let style = RationalStyle::Exact;

    let boxes = node::analyze::<IntervalValue>(&program, &cfg).expect("runs");
    let polys = node::analyze::<Polyhedron>(&program, &cfg).expect("runs");

    for (id, (b, p)) in boxes.values.iter().zip(&polys.values).enumerate() {
        println!("node {id}:");
        println!("  intervals: {}", b.render(&program.vars, style).join("  "));
        println!("  polyhedra: {}", p.render(&program.vars, style).join("  "));
        // Lifting the box to a polyhedron makes the comparison exact.
        assert!(b.to_polyhedron().includes(p));
    }

    // The lockstep loop keeps i = j; boxes cannot say so.
    let head = program.loops[0].body_entry;
    assert!(polys.values[head]
        .render(&program.vars, style)
        .contains(&"i - j = 0".to_string()));

    // Product analysis runs on intervals too — and collapses: each
    // stratum component is exactly the projection of the full box.
    let r =
        product::analyze::<IntervalValue>(&program, &cfg, ProductWidening::Componentwise, false)
            .expect("runs");
    assert!(r.diverged.is_none());
    let full = r.ctx.dims.len() - 1;
    for step in &r.tuple_trace {
        for (k, comp) in step.comps.iter().enumerate() {
            let proj = step.comps[full].project_onto(&r.ctx.dims[k]);
            assert_eq!(comp, &proj, "component {k} equals the projection");
        }
    }
    println!("\nproduct-on-intervals tuple components match full-box projections at every step");
}
