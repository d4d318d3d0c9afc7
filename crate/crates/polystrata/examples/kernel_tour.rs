//! The exact rational polyhedra kernel on its own: both representations
//! (constraints and generators), lattice operations, projection, and the
//! standard widening with its "up to" refinement.
//!
//!     cargo run --example kernel_tour

use polystrata::domains::AbstractDomain;
use polystrata::polyhedra::{
    con_eq, con_ge, render_generators, render_polyhedron, widen_upto, Polyhedron, RationalStyle,
};

fn names() -> Vec<String> {
    vec!["x".to_string(), "y".to_string()]
}

fn show(label: &str, p: &Polyhedron) {
    println!("{label}:");
    for l in render_polyhedron(p, &names()) {
        println!("  {l}");
    }
    for g in render_generators(p, RationalStyle::Exact) {
        println!("  {g}");
    }
}

fn main() {
    // Double description: the same set from either side.
    let triangle = Polyhedron::from_constraints(
        2,
        vec![
            con_ge(&[1, 0], 0),    //  x >= 0
            con_ge(&[0, 1], 0),    //  y >= 0
            con_ge(&[-1, -1], -4), // x + y <= 4
        ],
    );
    show("triangle", &triangle);

    // Lattice: join is the convex hull, meet the intersection.
    let p = Polyhedron::point(&[1, 0]);
    let q = Polyhedron::point(&[2, 1]);
    let segment = p.join(&q);
    show("hull of (1,0) and (2,1)", &segment);
    let line = Polyhedron::from_constraints(2, vec![con_eq(&[1, -1], 1)]);
    show("triangle ∩ {x - y = 1}", &triangle.meet(&line));

    // Projection onto y drops x.
    show_1d("triangle projected on y", &triangle.project_onto(&[1]));

    // Widening extrapolates the change between two iterates: the segment
    // grew from the point along direction (1,1), so the widened set is
    // the half-line carrying that growth.
    let widened = p.widen(&segment);
    show("point ∇ segment", &widened);

    // "Up to" widening re-imposes thresholds both iterates satisfy:
    // with x <= 4 stable, extrapolation stops at the threshold.
    let bound = Polyhedron::from_constraints(2, vec![con_ge(&[-1, 0], -4)]);
    let upto = widen_upto(&p, &segment, bound.constraints());
    show("point ∇ segment up to x <= 4", &upto);

    assert!(widened.includes(&upto));
}

fn show_1d(label: &str, p: &Polyhedron) {
    println!("{label}:");
    for l in render_polyhedron(p, &["y".to_string()]) {
        println!("  {l}");
    }
}
