//! Stratified analysis recovering precision that plain widening loses.
//!
//! On the triangular-sum loop, classic analysis widens `i` and `j`
//! together and the narrowed loop-head value keeps only `i <= 5`. The
//! stratified analyses first bound the independent variable `i` on its
//! own stratum, then re-analyze the full space clipped by that result,
//! keeping the parabola-shaped hull of the reachable states.
//!
//!     cargo run --example stratified_precision

use polystrata::domains::AbstractDomain;
use polystrata::engine::{node, stratified, EngineConfig, StratifiedVariant};
use polystrata::frontend::parse_program;
use polystrata::polyhedra::{render_generators, Polyhedron, RationalStyle};

fn main() {
    let src = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/programs/triangular_sum.whl"
    ))
    .expect("bundled program");
    let program = parse_program(&src).expect("parses");
    let head = program.loops[0].body_entry;

    let cfg = EngineConfig {
        delay: 0,
        ..EngineConfig::default()
    };
    let style = RationalStyle::Exact;

    let classic = node::analyze::<Polyhedron>(&program, &cfg).expect("runs");
    println!("classic loop head:");
    for l in classic.values[head].render(&program.vars, style) {
        println!("  {l}");
    }

    for variant in [StratifiedVariant::V1, StratifiedVariant::V2] {
        let r = stratified::analyze::<Polyhedron>(&program, &cfg, variant, false).expect("runs");
        println!("\n{variant:?} strata:");
        for (si, run) in r.runs.iter().enumerate() {
            let names: Vec<&str> = run.vars.iter().map(|&v| program.vars[v].as_str()).collect();
            println!(
                "  stratum {si} {{{}}}: {} widenings",
                names.join(","),
                run.result.widenings
            );
        }
        println!("{variant:?} loop head:");
        for l in r.values[head].render(&program.vars, style) {
            println!("  {l}");
        }
        println!("  generators:");
        for g in render_generators(&r.values[head], style) {
            println!("    {g}");
        }

        // Strictly more precise than classic, and exactly the hull of the
        // odd-iteration states (1,0),(2,1),(3,3),(5,9) swept upward.
        assert!(classic.values[head].includes(&r.values[head]));
        assert_ne!(classic.values[head], r.values[head]);
        assert_eq!(
            render_generators(&r.values[head], style),
            ["V(1, 0)", "V(2, 1)", "V(3, 3)", "V(5, 9)", "R(0, 1)"]
        );
    }
}
