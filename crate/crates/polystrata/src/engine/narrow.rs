//! Gauss–Seidel narrowing and the inductive-invariant check.

use super::node::node_input;
use super::{Phase, TraceStep};
use crate::domains::AbstractDomain;
use crate::frontend::{NodeId, Program};
use std::collections::BTreeSet;

/// Run up to `passes` in-place narrowing sweeps in reverse-postorder:
/// each node's value is intersected with the join of its current edge
/// inputs (the entry node additionally keeps the initial value in the
/// join). Stops early once a sweep changes nothing; returns the number
/// of sweeps performed. Post-fixpoints are preserved: every new value
/// still covers its inputs because it is the meet of the old value
/// (a post-fixpoint bound) with the current input join.
///
/// `clip` intersects every input with a per-node constraint (used by the
/// stratified analyses); `traced` records updates of the listed nodes.
pub fn narrow_passes<D: AbstractDomain>(
    p: &Program,
    values: &mut [D],
    passes: usize,
    clip: Option<&[D]>,
    mut traced: Option<(&BTreeSet<NodeId>, &mut Vec<TraceStep<D>>)>,
) -> usize {
    let initial = D::top(p.vars.len());
    let rpo = p.reverse_postorder();
    let mut done = 0;
    for _ in 0..passes {
        let mut changed = false;
        for &node in &rpo {
            let emitted = |m: NodeId| values[m].clone();
            let inp = node_input(p, node, &emitted, &initial, clip);
            let refined = values[node].meet(&inp);
            if refined != values[node] {
                values[node] = refined;
                changed = true;
                if let Some((set, trace)) = traced.as_mut() {
                    if set.contains(&node) {
                        trace.push(TraceStep {
                            node,
                            phase: Phase::Narrow,
                            value: values[node].clone(),
                        });
                    }
                }
            }
        }
        done += 1;
        if !changed {
            break;
        }
    }
    done
}

/// A witness that a value map is not inductive: the image of `src`'s
/// value along the edge to `dst` is not covered by `dst`'s value. The
/// entry case (initial states not covered) is reported with
/// `src == dst == entry`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostfixViolation {
    pub src: NodeId,
    pub dst: NodeId,
}

/// Check edge-wise that `values` is inductive (a post-fixpoint): the
/// entry value covers all initial states and every edge image is covered
/// by the destination value. Returns the first violation found, scanning
/// the entry condition first and then edges in program order.
pub fn check_postfixpoint<D: AbstractDomain>(
    p: &Program,
    values: &[D],
) -> Result<(), PostfixViolation> {
    let initial = D::top(p.vars.len());
    if !values[p.cfg.entry].includes(&initial) {
        return Err(PostfixViolation {
            src: p.cfg.entry,
            dst: p.cfg.entry,
        });
    }
    for e in &p.cfg.edges {
        let image = values[e.src].transfer(&e.cmd);
        if !values[e.dst].includes(&image) {
            return Err(PostfixViolation {
                src: e.src,
                dst: e.dst,
            });
        }
    }
    Ok(())
}
