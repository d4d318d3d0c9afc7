//! Stratified analysis: one fixpoint per stratum, each clipped by the
//! meet of its immediate predecessor strata's (narrowed) results.
//!
//! For a stratum S the program is restricted to S (statements outside S
//! become nondeterministic) and analyzed with a per-node constraint map
//! K built from the already-analyzed predecessor strata. Two variants:
//!
//! * **V1** keeps raw widening values and lets neighbors read them
//!   intersected with K; the widening argument is the raw value, the
//!   candidate join and the final map are intersected with K.
//! * **V2** keeps every value intersected with K and widens *up to* the
//!   K constraints, so stable clip constraints are re-imposed instead of
//!   being lost to widening. Requires a domain with up-to widening.
//!
//! The final result is the full-variable stratum's map, which by
//! construction is also bounded by every other stratum's contribution.

use super::node::{run, Mode};
use super::{Divergence, EngineConfig, EngineError, FixpointResult, WidenAt};
use crate::domains::AbstractDomain;
use crate::frontend::{restrict, Program};
use crate::strata::{compute_strata, Strata};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratifiedVariant {
    V1,
    V2,
}

/// One stratum's analysis: the variable set and its full fixpoint run.
#[derive(Clone, Debug)]
pub struct StratumRun<D> {
    pub vars: BTreeSet<usize>,
    pub result: FixpointResult<D>,
}

#[derive(Clone, Debug)]
pub struct StratifiedResult<D> {
    /// Final per-node values: the full-variable stratum's map.
    pub values: Vec<D>,
    pub strata: Strata,
    pub runs: Vec<StratumRun<D>>,
    pub widenings: usize,
    pub updates: usize,
    /// Set when some stratum's run exceeded the widening bound; later
    /// strata are not analyzed and `values` holds that run's partial map.
    pub diverged: Option<Divergence>,
}

pub fn analyze<D: AbstractDomain>(
    p: &Program,
    cfg: &EngineConfig,
    variant: StratifiedVariant,
    control_deps: bool,
) -> Result<StratifiedResult<D>, EngineError> {
    if variant == StratifiedVariant::V2 && !D::SUPPORTS_UPTO {
        return Err(EngineError::Config(
            "this variant widens up to the clip constraints, which the \
             selected domain does not support"
                .to_string(),
        ));
    }
    if cfg.widen_at == WidenAt::BodyEntry {
        return Err(EngineError::Config(
            "body-entry widening placement is only available for the classic method".to_string(),
        ));
    }

    let n = p.cfg.nnodes;
    let nv = p.vars.len();
    let strata = compute_strata(p, control_deps);
    let widen_set = super::widening_nodes(p, cfg.widen_at);
    let mode = match variant {
        StratifiedVariant::V1 => Mode::ClipRaw,
        StratifiedVariant::V2 => Mode::ClipUpto,
    };

    let mut runs: Vec<StratumRun<D>> = Vec::new();
    let mut diverged: Option<Divergence> = None;
    for (si, s) in strata.sets.iter().enumerate() {
        let clip: Vec<D> = (0..n)
            .map(|node| {
                let mut k = D::top(nv);
                for &pi in &strata.imm_preds[si] {
                    k = k.meet(&runs[pi].result.values[node]);
                }
                k
            })
            .collect();
        let ps = restrict(p, s);
        let result = run(&ps, &widen_set, cfg, mode, Some(&clip))?;
        let d = result.diverged;
        runs.push(StratumRun {
            vars: s.clone(),
            result,
        });
        if let Some(d) = d {
            diverged = Some(d);
            break;
        }
    }

    let last = runs.last().expect("at least one stratum");
    Ok(StratifiedResult {
        values: last.result.values.clone(),
        widenings: runs.iter().map(|r| r.result.widenings).sum(),
        updates: runs.iter().map(|r| r.result.updates).sum(),
        strata,
        runs,
        diverged,
    })
}
