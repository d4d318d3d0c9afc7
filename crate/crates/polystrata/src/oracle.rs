//! Brute-force collecting semantics over bounded inputs: an independent
//! ground truth for the analyzer. States are concrete integer stores;
//! the entry node starts with every store over a configured range, and
//! nondeterministic choices also range over it. A state cap bounds the
//! exploration; a result marked `truncated` is incomplete (and arithmetic
//! overflow also truncates), so exactness or soundness conclusions are
//! only drawn from untruncated runs.

use crate::domains::AbstractDomain;
use crate::frontend::{Cmd, LinRow, Program, Rel};
use std::collections::{BTreeSet, VecDeque};

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub lo: i64,
    pub hi: i64,
    pub cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            lo: -8,
            hi: 8,
            cap: 100_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Reached stores per node.
    pub states: Vec<BTreeSet<Vec<i64>>>,
    /// True when the exploration hit the state cap or dropped a
    /// transition due to arithmetic overflow.
    pub truncated: bool,
}

fn eval_row(row: &LinRow, store: &[i64]) -> Option<i64> {
    let mut acc: i64 = row.k.clone().try_into().ok()?;
    for (c, v) in row.coef.iter().zip(store) {
        if let Ok(ci) = i64::try_from(c.clone()) {
            if ci == 0 {
                continue;
            }
            acc = acc.checked_add(ci.checked_mul(*v)?)?;
        } else {
            return None;
        }
    }
    Some(acc)
}

/// Successor stores of one command; `None` entries never appear — an
/// overflowing transition is dropped and reported through `overflow`.
fn step(cmd: &Cmd, store: &[i64], cfg: &OracleConfig, overflow: &mut bool) -> Vec<Vec<i64>> {
    match cmd {
        Cmd::Skip | Cmd::GuardNondet => vec![store.to_vec()],
        Cmd::Guard(rel, row) => match eval_row(row, store) {
            None => {
                *overflow = true;
                vec![]
            }
            Some(v) => {
                let pass = match rel {
                    Rel::Ge => v >= 0,
                    Rel::Eq => v == 0,
                };
                if pass {
                    vec![store.to_vec()]
                } else {
                    vec![]
                }
            }
        },
        Cmd::Assign(x, row) => match eval_row(row, store) {
            None => {
                *overflow = true;
                vec![]
            }
            Some(v) => {
                let mut s = store.to_vec();
                s[*x] = v;
                vec![s]
            }
        },
        Cmd::AssignNondet(x) => (cfg.lo..=cfg.hi)
            .map(|v| {
                let mut s = store.to_vec();
                s[*x] = v;
                s
            })
            .collect(),
        Cmd::Init(parts) => {
            let mut cur = vec![store.to_vec()];
            for (x, val) in parts {
                let mut next = Vec::new();
                for s in &cur {
                    match val {
                        Some(row) => match eval_row(row, s) {
                            None => *overflow = true,
                            Some(v) => {
                                let mut t = s.clone();
                                t[*x] = v;
                                next.push(t);
                            }
                        },
                        None => {
                            for v in cfg.lo..=cfg.hi {
                                let mut t = s.clone();
                                t[*x] = v;
                                next.push(t);
                            }
                        }
                    }
                }
                cur = next;
            }
            cur
        }
    }
}

/// Breadth-first reachability over (node, store) pairs.
pub fn reachable(p: &Program, cfg: &OracleConfig) -> OracleResult {
    let nv = p.vars.len();
    let mut states: Vec<BTreeSet<Vec<i64>>> = vec![BTreeSet::new(); p.cfg.nnodes];
    let mut queue: VecDeque<(usize, Vec<i64>)> = VecDeque::new();
    let mut total = 0usize;
    let mut truncated = false;

    // Entry: every store over the configured range.
    let mut seed = vec![cfg.lo; nv];
    loop {
        if states[p.cfg.entry].insert(seed.clone()) {
            total += 1;
            queue.push_back((p.cfg.entry, seed.clone()));
            if total >= cfg.cap {
                return OracleResult {
                    states,
                    truncated: true,
                };
            }
        }
        // Odometer increment; nv == 0 seeds the single empty store.
        let mut i = 0;
        loop {
            if i == nv {
                break;
            }
            if seed[i] < cfg.hi {
                seed[i] += 1;
                break;
            }
            seed[i] = cfg.lo;
            i += 1;
        }
        if i == nv {
            break;
        }
    }

    while let Some((node, store)) = queue.pop_front() {
        for e in p.cfg.edges.iter().filter(|e| e.src == node) {
            for succ in step(&e.cmd, &store, cfg, &mut truncated) {
                if states[e.dst].insert(succ.clone()) {
                    total += 1;
                    if total >= cfg.cap {
                        return OracleResult {
                            states,
                            truncated: true,
                        };
                    }
                    queue.push_back((e.dst, succ));
                }
            }
        }
    }
    OracleResult { states, truncated }
}

/// Check that every reached store lies inside the per-node abstract
/// values; on failure returns the first offending (node, store).
pub fn check_soundness<D: AbstractDomain>(
    res: &OracleResult,
    values: &[D],
) -> Result<(), (usize, Vec<i64>)> {
    for (node, set) in res.states.iter().enumerate() {
        for store in set {
            if !values[node].contains_point(store) {
                return Err((node, store.clone()));
            }
        }
    }
    Ok(())
}
