//! The corrected standard polyhedral widening and widening "up to".
//!
//! `widen_standard(p, q)` with `p ⊆ q` keeps the constraints of the
//! minimized system of `p` that `q` satisfies, plus every constraint of
//! the minimized system of `q` that can replace some constraint of `p`
//! without changing `p` (the mutual-redundancy refinement that repairs the
//! original definition on polyhedra of deficient dimension). Equalities of
//! both systems are split into inequality pairs first; both inputs must be
//! minimized — redundant rows admit spurious swaps and break the
//! termination measure — which the canonical representation guarantees.

use super::poly::{Constraint, Polyhedron};
use crate::polyhedra::num::negate;

/// Equalities split into their two inequality halves; inequalities as-is.
fn split(cons: &[Constraint]) -> Vec<Constraint> {
    let mut out = Vec::with_capacity(cons.len() * 2);
    for c in cons {
        if c.eq {
            out.push(Constraint::ge(c.coef.clone(), c.b.clone()));
            out.push(Constraint::ge(negate(&c.coef), -c.b.clone()));
        } else {
            out.push(c.clone());
        }
    }
    out
}

fn satisfies(p: &Polyhedron, c: &Constraint) -> bool {
    p.meet_constraint(c) == *p
}

/// Corrected standard widening. Precondition: `p ⊆ q` (contract-checked).
pub fn widen_standard(p: &Polyhedron, q: &Polyhedron) -> Polyhedron {
    assert!(
        q.includes(p),
        "widening precondition violated: first argument must be included in the second"
    );
    let n = p.dims();
    if p.is_empty() {
        return q.clone();
    }
    if q.is_empty() {
        return q.clone();
    }
    let split1 = split(p.constraints());
    let split2 = split(q.constraints());

    let mut kept: Vec<Constraint> = split1.iter().filter(|c| satisfies(q, c)).cloned().collect();

    for gamma in &split2 {
        if kept.contains(gamma) {
            continue;
        }
        let swappable = split1.iter().any(|beta| {
            let mut sys: Vec<Constraint> = split1.iter().filter(|c| *c != beta).cloned().collect();
            sys.push(gamma.clone());
            Polyhedron::from_constraints(n, sys) == *p
        });
        if swappable {
            kept.push(gamma.clone());
        }
    }
    Polyhedron::from_constraints(n, kept)
}

/// Widening "up to" a set of threshold constraints: the standard widening
/// intersected with every threshold satisfied by both arguments. With the
/// thresholds drawn from a fixed finite set this satisfies the stronger
/// termination condition required by the ascending-order product widening.
pub fn widen_upto(p: &Polyhedron, q: &Polyhedron, thresholds: &[Constraint]) -> Polyhedron {
    let mut w = widen_standard(p, q);
    if p.is_empty() {
        return w;
    }
    for m in thresholds {
        if satisfies(p, m) && satisfies(q, m) {
            w = w.meet_constraint(m);
        }
    }
    w
}
