//! Product analysis: widening-node values are stratified tuples — one
//! component per stratum, each over that stratum's variables — while
//! all other nodes carry plain domain values. Neighbors read a widening
//! node through the tuple's concretization (the meet of its embedded
//! components), so transfers stay at the plain level.
//!
//! A widening node starts plain: it is seeded, then join-updated while
//! the delay lasts. The first time widening is due, the tuple is seeded
//! by projecting the current value onto every stratum, and from then on
//! each update widens the tuple against the current input:
//!
//! * **Componentwise**: each component joins the projected input and is
//!   widened independently.
//! * **Hierarchical**: components are updated in stratum order and each
//!   result is intersected with its already-updated immediate
//!   predecessor components (embedded), so smaller strata bound larger
//!   ones within the same step.
//! * **Closure**: componentwise widening followed by mutual reduction of
//!   the components to an inner fixpoint. The reduction can interfere
//!   with widening's termination guarantee; iteration is capped and
//!   divergence reported honestly.

use super::node::node_input;
use super::{Divergence, EngineConfig, EngineError, Phase, TraceStep, WidenAt};
use crate::domains::{AbstractDomain, StratifiedTuple, TupleCtx};
use crate::frontend::{NodeId, Program};
use crate::strata::compute_strata;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductWidening {
    /// Independent per-component widening.
    Componentwise,
    /// Stratum-ordered widening with meets of updated predecessors.
    Hierarchical,
    /// Componentwise widening plus mutual reduction (may diverge).
    Closure,
}

/// One recorded tuple update: the components after the update.
#[derive(Clone, Debug)]
pub struct TupleStep<D> {
    pub node: NodeId,
    pub phase: Phase,
    pub comps: Vec<D>,
}

#[derive(Clone, Debug)]
pub struct ProductResult<D> {
    /// Final per-node values at the plain level (tuples concretized).
    pub values: Vec<D>,
    /// Final tuples at widening nodes that left the plain stage.
    pub tuples: Vec<Option<StratifiedTuple<D>>>,
    pub ctx: TupleCtx,
    pub widenings: usize,
    pub updates: usize,
    pub narrowing_passes: usize,
    /// True if closure reduction ever hit its inner iteration cap.
    pub closure_cap_hit: bool,
    pub trace: Vec<TraceStep<D>>,
    pub tuple_trace: Vec<TupleStep<D>>,
    /// Set when some node exceeded the widening bound; the values,
    /// tuples and traces hold the partial state at that point.
    pub diverged: Option<Divergence>,
}

pub fn analyze<D: AbstractDomain>(
    p: &Program,
    cfg: &EngineConfig,
    widening: ProductWidening,
    control_deps: bool,
) -> Result<ProductResult<D>, EngineError> {
    if widening == ProductWidening::Closure && !D::SUPPORTS_UPTO {
        return Err(EngineError::Config(
            "the closure widening requires a domain with up-to widening".to_string(),
        ));
    }
    if cfg.widen_at == WidenAt::BodyEntry {
        return Err(EngineError::Config(
            "body-entry widening placement is only available for the classic method".to_string(),
        ));
    }

    let n = p.cfg.nnodes;
    let nv = p.vars.len();
    let initial = D::top(nv);
    let strata = compute_strata(p, control_deps);
    let ctx = TupleCtx::new(&strata, nv);
    let widen_set = super::widening_nodes(p, cfg.widen_at);

    let rpo = p.reverse_postorder();
    let mut rpo_index = vec![usize::MAX; n];
    for (i, &node) in rpo.iter().enumerate() {
        rpo_index[node] = i;
    }

    // `plain` is the readable value of every node; for a widening node
    // with a live tuple it caches the tuple's concretization.
    let mut plain: Vec<D> = (0..n).map(|_| D::bottom(nv)).collect();
    let mut tuples: Vec<Option<StratifiedTuple<D>>> = vec![None; n];
    let mut joins_done = vec![0usize; n];
    let mut wid_count = vec![0usize; n];
    let mut widenings = 0usize;
    let mut updates = 0usize;
    let mut closure_cap_hit = false;
    let mut trace: Vec<TraceStep<D>> = Vec::new();
    let mut tuple_trace: Vec<TupleStep<D>> = Vec::new();

    let mut pending: BTreeSet<(usize, NodeId)> =
        rpo.iter().map(|&node| (rpo_index[node], node)).collect();
    let mut diverged: Option<Divergence> = None;

    while let Some(&(pri, node)) = pending.iter().next() {
        pending.remove(&(pri, node));

        let emitted = |m: NodeId| plain[m].clone();
        let inp = node_input(p, node, &emitted, &initial, None);

        let changed = if !widen_set.contains(&node) {
            if inp != plain[node] {
                plain[node] = inp;
                true
            } else {
                false
            }
        } else if let Some(t) = tuples[node].as_ref() {
            let mut t2 = t.clone();
            let fired = apply_widening(&mut t2, &inp, &ctx, widening, &mut closure_cap_hit);
            if t2 == *t {
                false
            } else {
                if fired {
                    if wid_count[node] >= cfg.max_iterations {
                        diverged = Some(Divergence {
                            node,
                            widenings: wid_count[node],
                        });
                        break;
                    }
                    wid_count[node] += 1;
                    widenings += 1;
                }
                plain[node] = t2.gamma(&ctx);
                tuple_trace.push(TupleStep {
                    node,
                    phase: Phase::Widen,
                    comps: t2.comps.clone(),
                });
                trace.push(TraceStep {
                    node,
                    phase: Phase::Widen,
                    value: plain[node].clone(),
                });
                tuples[node] = Some(t2);
                true
            }
        } else if plain[node].is_bottom() {
            if !inp.is_bottom() {
                plain[node] = inp;
                trace.push(TraceStep {
                    node,
                    phase: Phase::Seed,
                    value: plain[node].clone(),
                });
                true
            } else {
                false
            }
        } else {
            let cand = plain[node].join(&inp);
            if cand == plain[node] {
                false
            } else if joins_done[node] < cfg.delay {
                joins_done[node] += 1;
                plain[node] = cand;
                trace.push(TraceStep {
                    node,
                    phase: Phase::Join,
                    value: plain[node].clone(),
                });
                true
            } else {
                // Transition: seed the tuple from the current plain value,
                // then perform the first tuple widening against the input.
                let mut t = StratifiedTuple::seed(&plain[node], &ctx);
                tuple_trace.push(TupleStep {
                    node,
                    phase: Phase::Seed,
                    comps: t.comps.clone(),
                });
                let fired = apply_widening(&mut t, &inp, &ctx, widening, &mut closure_cap_hit);
                if fired {
                    wid_count[node] += 1;
                    widenings += 1;
                }
                plain[node] = t.gamma(&ctx);
                tuple_trace.push(TupleStep {
                    node,
                    phase: Phase::Widen,
                    comps: t.comps.clone(),
                });
                trace.push(TraceStep {
                    node,
                    phase: Phase::Widen,
                    value: plain[node].clone(),
                });
                tuples[node] = Some(t);
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

    // Narrowing: plain nodes meet their input; tuple nodes narrow each
    // component with the projected input. Skipped on divergence: the
    // values are not a post-fixpoint then.
    let narrowing_rounds = if diverged.is_none() { cfg.narrowing } else { 0 };
    let mut narrowing_passes = 0;
    for _ in 0..narrowing_rounds {
        let mut changed = false;
        for &node in &rpo {
            let emitted = |m: NodeId| plain[m].clone();
            let inp = node_input(p, node, &emitted, &initial, None);
            if let Some(t) = tuples[node].as_mut() {
                let mut t2 = t.clone();
                t2.narrow(&inp, &ctx);
                if t2 != *t {
                    *t = t2;
                    plain[node] = t.gamma(&ctx);
                    changed = true;
                    tuple_trace.push(TupleStep {
                        node,
                        phase: Phase::Narrow,
                        comps: t.comps.clone(),
                    });
                    trace.push(TraceStep {
                        node,
                        phase: Phase::Narrow,
                        value: plain[node].clone(),
                    });
                }
            } else {
                let refined = plain[node].meet(&inp);
                if refined != plain[node] {
                    plain[node] = refined;
                    changed = true;
                    if widen_set.contains(&node) {
                        trace.push(TraceStep {
                            node,
                            phase: Phase::Narrow,
                            value: plain[node].clone(),
                        });
                    }
                }
            }
        }
        narrowing_passes += 1;
        if !changed {
            break;
        }
    }

    Ok(ProductResult {
        values: plain,
        tuples,
        ctx,
        widenings,
        updates,
        narrowing_passes,
        closure_cap_hit,
        trace,
        tuple_trace,
        diverged,
    })
}

fn apply_widening<D: AbstractDomain>(
    t: &mut StratifiedTuple<D>,
    input: &D,
    ctx: &TupleCtx,
    widening: ProductWidening,
    closure_cap_hit: &mut bool,
) -> bool {
    match widening {
        ProductWidening::Componentwise => t.widen_w1(input, ctx),
        ProductWidening::Hierarchical => t.widen_w2(input, ctx),
        ProductWidening::Closure => {
            let (fired, cap) = t.widen_closure(input, ctx);
            *closure_cap_hit |= cap;
            fired
        }
    }
}
