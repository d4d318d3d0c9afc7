//! Cut-point engine for widening at loop-body entry nodes.
//!
//! Body-entry nodes do not cover loop heads in node-at-a-time iteration
//! order, and iterating values at every node loses the loop guard's
//! effect on the widened head value. This engine instead keeps values at
//! a cut set only — the entry node plus all body-entry nodes — and
//! computes each cut node's input as the join, over all cut-to-cut paths
//! through non-cut interior nodes, of the path's composed transfer
//! applied to the source cut value. Values at non-cut nodes are
//! reconstructed afterwards in topological order.
//!
//! The cut set must meet every cycle; otherwise the interior would not
//! be acyclic and the analysis is rejected as a configuration error.

use super::{Divergence, EngineConfig, EngineError, FixpointResult, Phase, TraceStep};
use crate::domains::AbstractDomain;
use crate::frontend::{Cmd, NodeId, Program};
use std::collections::{BTreeMap, BTreeSet};

/// Upper bound on enumerated cut-to-cut paths from one source.
const PATH_CAP: usize = 4096;

/// One cut-to-cut path: the commands along it and the cut node reached.
struct CutPath {
    cmds: Vec<Cmd>,
    dst: NodeId,
}

/// Enumerate all paths from `from` to the next cut node, visiting only
/// non-cut interior nodes. Fails if a cycle avoids the cut set or the
/// path count exceeds the cap.
fn paths_from(
    p: &Program,
    cuts: &BTreeSet<NodeId>,
    from: NodeId,
) -> Result<Vec<CutPath>, EngineError> {
    let mut out = Vec::new();
    // Depth-first over (node, commands so far, interior nodes on path).
    let mut stack: Vec<(NodeId, Vec<Cmd>, Vec<NodeId>)> = vec![(from, Vec::new(), Vec::new())];
    while let Some((node, cmds, interior)) = stack.pop() {
        for e in &p.cfg.edges {
            if e.src != node {
                continue;
            }
            let mut cmds2 = cmds.clone();
            cmds2.push(e.cmd.clone());
            if cuts.contains(&e.dst) {
                out.push(CutPath {
                    cmds: cmds2,
                    dst: e.dst,
                });
                if out.len() > PATH_CAP {
                    return Err(EngineError::Config(format!(
                        "more than {PATH_CAP} paths between widening points"
                    )));
                }
            } else if interior.contains(&e.dst) {
                return Err(EngineError::Config(
                    "a cycle avoids every widening point; body-entry placement \
                     requires each loop to pass through a widening point"
                        .to_string(),
                ));
            } else {
                let mut interior2 = interior.clone();
                interior2.push(e.dst);
                stack.push((e.dst, cmds2, interior2));
            }
        }
    }
    Ok(out)
}

fn transfer_path<D: AbstractDomain>(value: &D, cmds: &[Cmd]) -> D {
    let mut v = value.clone();
    for c in cmds {
        v = v.transfer(c);
    }
    v
}

/// Analyze with values at cut nodes, widening at every cut node except
/// the entry. Requires `d.narrowing` Gauss–Seidel passes on cut values
/// and reconstructs the interior afterwards.
pub fn analyze<D: AbstractDomain>(
    p: &Program,
    cfg: &EngineConfig,
) -> Result<FixpointResult<D>, EngineError> {
    let n = p.cfg.nnodes;
    let nv = p.vars.len();
    let initial = D::top(nv);

    let mut cuts: BTreeSet<NodeId> = p.loops.iter().map(|l| l.body_entry).collect();
    cuts.insert(p.cfg.entry);

    // Verify the cut set meets every cycle: the interior must be acyclic.
    // (paths_from also detects this; checking up front gives a clear error
    // even when some interior cycle is unreachable from a cut node.)
    check_interior_acyclic(p, &cuts)?;

    // Paths grouped by source cut node.
    let mut paths: BTreeMap<NodeId, Vec<CutPath>> = BTreeMap::new();
    for &c in &cuts {
        paths.insert(c, paths_from(p, &cuts, c)?);
    }

    let rpo = p.reverse_postorder();
    let mut rpo_index = vec![usize::MAX; n];
    for (i, &node) in rpo.iter().enumerate() {
        rpo_index[node] = i;
    }

    let mut val: Vec<D> = (0..n).map(|_| D::bottom(nv)).collect();
    val[p.cfg.entry] = initial.clone();
    let mut joins_done: BTreeMap<NodeId, usize> = BTreeMap::new();
    let mut wid_count: BTreeMap<NodeId, usize> = BTreeMap::new();
    let mut widenings = 0usize;
    let mut updates = 1usize; // the entry value
    let mut trace: Vec<TraceStep<D>> = Vec::new();

    let cut_input = |val: &Vec<D>, w: NodeId| -> D {
        let mut acc = D::bottom(nv);
        for (&c, ps) in &paths {
            for path in ps {
                if path.dst == w {
                    acc = acc.join(&transfer_path(&val[c], &path.cmds));
                }
            }
        }
        acc
    };

    let mut pending: BTreeSet<(usize, NodeId)> = cuts
        .iter()
        .filter(|&&c| c != p.cfg.entry)
        .map(|&c| (rpo_index[c], c))
        .collect();
    let mut diverged: Option<Divergence> = None;

    while let Some(&(pri, node)) = pending.iter().next() {
        pending.remove(&(pri, node));
        let inp = cut_input(&val, node);

        let changed = if val[node].is_bottom() {
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
            } else if *joins_done.entry(node).or_insert(0) < cfg.delay {
                *joins_done.get_mut(&node).unwrap() += 1;
                val[node] = cand;
                trace.push(TraceStep {
                    node,
                    phase: Phase::Join,
                    value: val[node].clone(),
                });
                true
            } else {
                let wc = wid_count.entry(node).or_insert(0);
                if *wc >= cfg.max_iterations {
                    diverged = Some(Divergence {
                        node,
                        widenings: *wc,
                    });
                    break;
                }
                *wc += 1;
                widenings += 1;
                val[node] = val[node].widen(&cand);
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
            for path in &paths[&node] {
                if path.dst != p.cfg.entry {
                    pending.insert((rpo_index[path.dst], path.dst));
                }
            }
        }
    }

    // Gauss–Seidel narrowing on cut values (skipped on divergence: the
    // cut values are not a post-fixpoint then).
    let narrowing_rounds = if diverged.is_none() { cfg.narrowing } else { 0 };
    let mut narrowing_passes = 0;
    for _ in 0..narrowing_rounds {
        let mut changed = false;
        for &node in &rpo {
            if !cuts.contains(&node) || node == p.cfg.entry {
                continue;
            }
            let inp = cut_input(&val, node);
            let refined = val[node].meet(&inp);
            if refined != val[node] {
                val[node] = refined;
                changed = true;
                trace.push(TraceStep {
                    node,
                    phase: Phase::Narrow,
                    value: val[node].clone(),
                });
            }
        }
        narrowing_passes += 1;
        if !changed {
            break;
        }
    }

    // Reconstruct interior values in topological order of the interior DAG.
    for &node in &topo_interior(p, &cuts) {
        let mut acc = D::bottom(nv);
        for e in &p.cfg.edges {
            if e.dst == node {
                acc = acc.join(&val[e.src].transfer(&e.cmd));
            }
        }
        val[node] = acc;
        updates += 1;
    }

    Ok(FixpointResult {
        values: val,
        widenings,
        updates,
        narrowing_passes,
        trace,
        diverged,
    })
}

/// Error unless the subgraph induced by non-cut nodes is acyclic.
fn check_interior_acyclic(p: &Program, cuts: &BTreeSet<NodeId>) -> Result<(), EngineError> {
    let interior = topo_interior_checked(p, cuts);
    if interior.is_some() {
        Ok(())
    } else {
        Err(EngineError::Config(
            "a cycle avoids every widening point; body-entry placement \
             requires each loop to pass through a widening point"
                .to_string(),
        ))
    }
}

/// Kahn's algorithm on the interior subgraph; `None` if it has a cycle.
fn topo_interior_checked(p: &Program, cuts: &BTreeSet<NodeId>) -> Option<Vec<NodeId>> {
    let interior: Vec<NodeId> = (0..p.cfg.nnodes).filter(|n| !cuts.contains(n)).collect();
    let mut indeg: BTreeMap<NodeId, usize> = interior.iter().map(|&n| (n, 0)).collect();
    for e in &p.cfg.edges {
        if !cuts.contains(&e.src) && !cuts.contains(&e.dst) {
            *indeg.get_mut(&e.dst).unwrap() += 1;
        }
    }
    let mut ready: BTreeSet<NodeId> = indeg
        .iter()
        .filter(|&(_, &d)| d == 0)
        .map(|(&n, _)| n)
        .collect();
    let mut order = Vec::new();
    while let Some(&n) = ready.iter().next() {
        ready.remove(&n);
        order.push(n);
        for e in &p.cfg.edges {
            if e.src == n && !cuts.contains(&e.dst) {
                let d = indeg.get_mut(&e.dst).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(e.dst);
                }
            }
        }
    }
    if order.len() == interior.len() {
        Some(order)
    } else {
        None
    }
}

fn topo_interior(p: &Program, cuts: &BTreeSet<NodeId>) -> Vec<NodeId> {
    topo_interior_checked(p, cuts).expect("interior checked acyclic")
}
