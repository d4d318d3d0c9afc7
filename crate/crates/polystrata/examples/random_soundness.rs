//! Property-style soundness sweep: generate random bounded loop nests,
//! analyze each with every convergent method, and check the results
//! against brute-force reachability.
//!
//!     cargo run --release --example random_soundness [count]

use polystrata::engine::{
    node, product, stratified, EngineConfig, ProductWidening, StratifiedVariant,
};
use polystrata::frontend::Program;
use polystrata::oracle::{check_soundness, OracleConfig};
use polystrata::polyhedra::Polyhedron;
use polystrata::testgen;

/// Every method's final values, with `None` for a diverged run (only the
/// closure widening can diverge; it is exercised by its own example).
fn all_methods(p: &Program, cfg: &EngineConfig) -> Vec<(&'static str, Option<Vec<Polyhedron>>)> {
    let classic = node::analyze::<Polyhedron>(p, cfg).expect("config ok");
    let strat = |v| {
        let r = stratified::analyze::<Polyhedron>(p, cfg, v, false).expect("config ok");
        r.diverged.is_none().then_some(r.values)
    };
    let prod = |w| {
        let r = product::analyze::<Polyhedron>(p, cfg, w, false).expect("config ok");
        r.diverged.is_none().then_some(r.values)
    };
    vec![
        (
            "classic",
            classic.diverged.is_none().then_some(classic.values),
        ),
        ("strata-v1", strat(StratifiedVariant::V1)),
        ("strata-v2", strat(StratifiedVariant::V2)),
        ("product-w1", prod(ProductWidening::Componentwise)),
        ("product-w2", prod(ProductWidening::Hierarchical)),
        ("product-closure", prod(ProductWidening::Closure)),
    ]
}

fn main() {
    let count: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50);
    let oc = OracleConfig::default();
    let cfg = EngineConfig::default();
    let mut runs = 0usize;

    for seed in 0..count {
        // generate_checked skips seeds whose state space exceeds the cap,
        // so the enumeration below is complete ground truth.
        let (src, program, oracle, _) = testgen::generate_checked(seed, &oc);
        for (name, values) in all_methods(&program, &cfg) {
            let Some(values) = values else { continue };
            if let Err((node, store)) = check_soundness(&oracle, &values) {
                eprintln!("--- unsound ({name}) at node {node}, state {store:?}\n{src}");
                std::process::exit(1);
            }
            runs += 1;
        }
    }
    println!("{runs} analysis runs over {count} random programs: all sound");
}
