//! Node-based fixpoint engine: a priority worklist in reverse-postorder,
//! Kleene iteration with delayed widening at a designated node set,
//! followed by Gauss–Seidel narrowing.

use super::narrow::narrow_passes;
use super::{Divergence, EngineConfig, EngineError, FixpointResult, Phase, TraceStep, WidenAt};
use crate::domains::AbstractDomain;
use crate::frontend::{NodeId, Program};
use std::collections::BTreeSet;

/// How node values interact with a per-node constraint map (the "clip").
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// No clip: plain analysis.
    Plain,
    /// Clipped inputs, raw widening values: widening nodes store the raw
    /// widening result; neighbors read it intersected with the clip, and
    /// the final map is the intersected one.
    ClipRaw,
    /// Clipped values with up-to widening: widening results are widened
    /// up to the clip constraints and intersected with the clip.
    ClipUpto,
}

/// Join of all edge images into `node` (plus the initial value at the
/// entry node), intersected with the clip when one is present.
pub(crate) fn node_input<D: AbstractDomain>(
    p: &Program,
    node: NodeId,
    emitted: &dyn Fn(NodeId) -> D,
    initial: &D,
    clip: Option<&[D]>,
) -> D {
    let nv = initial.dims();
    let mut acc = if node == p.cfg.entry {
        initial.clone()
    } else {
        D::bottom(nv)
    };
    for e in &p.cfg.edges {
        if e.dst == node {
            acc = acc.join(&emitted(e.src).transfer(&e.cmd));
        }
    }
    if let Some(k) = clip {
        acc = acc.meet(&k[node]);
    }
    acc
}

/// Run the worklist engine. `widen_set` must cover every cycle of the
/// CFG (back-edge targets always do). `clip` is required for the clipped
/// modes and must hold one value per node.
pub(crate) fn run<D: AbstractDomain>(
    p: &Program,
    widen_set: &BTreeSet<NodeId>,
    cfg: &EngineConfig,
    mode: Mode,
    clip: Option<&[D]>,
) -> Result<FixpointResult<D>, EngineError> {
    let n = p.cfg.nnodes;
    let nv = p.vars.len();
    let initial = D::top(nv);

    let rpo = p.reverse_postorder();
    let mut rpo_index = vec![usize::MAX; n];
    for (i, &node) in rpo.iter().enumerate() {
        rpo_index[node] = i;
    }

    let mut val: Vec<D> = (0..n).map(|_| D::bottom(nv)).collect();
    let mut joins_done = vec![0usize; n];
    let mut wid_count = vec![0usize; n];
    let mut widenings = 0usize;
    let mut updates = 0usize;
    let mut trace: Vec<TraceStep<D>> = Vec::new();

    let mut pending: BTreeSet<(usize, NodeId)> =
        rpo.iter().map(|&node| (rpo_index[node], node)).collect();
    let mut diverged: Option<Divergence> = None;

    while let Some(&(pri, node)) = pending.iter().next() {
        pending.remove(&(pri, node));

        let emitted = |m: NodeId| -> D {
            if mode == Mode::ClipRaw && widen_set.contains(&m) {
                val[m].meet(&clip.expect("clip map")[m])
            } else {
                val[m].clone()
            }
        };
        let inp = node_input(p, node, &emitted, &initial, clip);

        let changed = if !widen_set.contains(&node) {
            if inp != val[node] {
                val[node] = inp;
                true
            } else {
                false
            }
        } else if val[node].is_bottom() {
            if !inp.is_bottom() {
                val[node] = inp;
                trace.push(TraceStep {
                    node,
                    phase: Phase::Seed,
                    value: val[node].clone(),
                });
                true
            } else {
                false
            }
        } else {
            let cand = val[node].join(&inp);
            if cand == val[node] {
                false
            } else if joins_done[node] < cfg.delay {
                joins_done[node] += 1;
                val[node] = cand;
                trace.push(TraceStep {
                    node,
                    phase: Phase::Join,
                    value: val[node].clone(),
                });
                true
            } else {
                if wid_count[node] >= cfg.max_iterations {
                    diverged = Some(Divergence {
                        node,
                        widenings: wid_count[node],
                    });
                    break;
                }
                wid_count[node] += 1;
                widenings += 1;
                let widened = match mode {
                    Mode::ClipUpto => {
                        let k = &clip.expect("clip map")[node];
                        val[node].widen_upto(&cand, k).meet(k)
                    }
                    _ => val[node].widen(&cand),
                };
                val[node] = widened;
                trace.push(TraceStep {
                    node,
                    phase: Phase::Widen,
                    value: val[node].clone(),
                });
                true
            }
        };

        if changed {
            updates += 1;
            for e in &p.cfg.edges {
                if e.src == node {
                    pending.insert((rpo_index[e.dst], e.dst));
                }
            }
        }
    }

    // The raw-value mode's result map is the intersected one.
    if mode == Mode::ClipRaw {
        let k = clip.expect("clip map");
        for &w in widen_set {
            val[w] = val[w].meet(&k[w]);
        }
    }

    // Narrowing only refines a stabilized post-fixpoint.
    let narrowing_passes = if diverged.is_none() {
        narrow_passes(
            p,
            &mut val,
            cfg.narrowing,
            clip,
            Some((widen_set, &mut trace)),
        )
    } else {
        0
    };

    Ok(FixpointResult {
        values: val,
        widenings,
        updates,
        narrowing_passes,
        trace,
        diverged,
    })
}

/// Plain analysis of a program with the configured widening placement.
/// Body-entry placement is delegated to the cut-point engine.
pub fn analyze<D: AbstractDomain>(
    p: &Program,
    cfg: &EngineConfig,
) -> Result<FixpointResult<D>, EngineError> {
    match cfg.widen_at {
        WidenAt::BodyEntry => super::composite::analyze(p, cfg),
        at => run(p, &super::widening_nodes(p, at), cfg, Mode::Plain, None),
    }
}
