//! How strata are built: variable dependences, their transitive
//! closure, and the resulting inclusion-ordered family of variable sets.
//!
//! In the gated sum, `i` advances only when a nondeterministic gate
//! fires while `j` accumulates `i`, so data flow gives the chain
//! {i} ⊂ {i,j}. Counting control dependences as well couples every
//! variable written under the loop guard to the guard's variables.
//!
//!     cargo run --example strata_inspection

use polystrata::frontend::{parse_program, print_program, restrict};
use polystrata::strata::compute_strata;

fn main() {
    let src = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/programs/gated_sum.whl"
    ))
    .expect("bundled program");
    let program = parse_program(&src).expect("parses");

    for control in [false, true] {
        let strata = compute_strata(&program, control);
        println!(
            "strata ({} dependences):",
            if control { "data + control" } else { "data" }
        );
        for (si, set) in strata.sets.iter().enumerate() {
            let mut names: Vec<&str> = set.iter().map(|&v| program.vars[v].as_str()).collect();
            names.sort_unstable();
            println!("  S{si} = {{ {} }}", names.join(", "));
        }
        for (si, preds) in strata.imm_preds.iter().enumerate() {
            for &pi in preds {
                println!("  S{pi} < S{si}");
            }
        }
        println!();
    }

    // Restriction: the program as seen by the stratum {i}. Statements
    // touching other variables become nondeterministic, so any invariant
    // of the restricted program is an invariant of the original.
    let strata = compute_strata(&program, false);
    let restricted = restrict(&program, &strata.sets[0]);
    println!("program restricted to {{ i }}:");
    println!("{}", print_program(&restricted));
}
