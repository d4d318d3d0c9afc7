//! Fixpoint engines.
//!
//! * [`node`]: priority-worklist Kleene iteration with widening at a
//!   chosen node set (back-edge targets by default, or every node),
//!   delayed widening, Gauss–Seidel narrowing, and divergence detection.
//!   It also supports the clipped modes used by the stratified analyses.
//! * [`composite`]: a cut-point engine for widening at loop-body entry
//!   nodes: values live at cut nodes only and flow along enumerated
//!   cut-to-cut paths, so the loop guard is applied on each path before
//!   joining — strictly more precise here than node-at-a-time iteration.
//! * [`narrow`]: narrowing passes and the inductive-invariant check.
//! * [`stratified`]: per-stratum analyses, each constrained by the
//!   results of its immediate predecessor strata.
//! * [`product`]: analysis with stratified tuples at widening nodes
//!   (componentwise, hierarchical, or closure widening).

pub mod composite;
pub mod narrow;
pub mod node;
pub mod product;
pub mod stratified;

#[cfg(test)]
mod tests;

pub use narrow::{check_postfixpoint, narrow_passes, PostfixViolation};
pub use product::{ProductResult, ProductWidening, TupleStep};
pub use stratified::{StratifiedResult, StratifiedVariant, StratumRun};

use crate::frontend::{NodeId, Program};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidenAt {
    /// Targets of depth-first back edges (the default).
    BackEdge,
    /// Every node.
    EveryNode,
    /// Loop-body entry nodes, via the cut-point engine.
    BodyEntry,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Join-updates allowed at a widening node before widening starts.
    pub delay: usize,
    /// Narrowing passes after the upward iteration.
    pub narrowing: usize,
    /// Widenings allowed per node before divergence is reported.
    pub max_iterations: usize,
    pub widen_at: WidenAt,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            delay: 1,
            narrowing: 2,
            max_iterations: 100,
            widen_at: WidenAt::BackEdge,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("configuration error: {0}")]
    Config(String),
}

/// The widening bound was exceeded: the analysis did not converge. The
/// result still carries the partial values and the recorded trace up to
/// this point (no narrowing is applied to a non-stabilized map).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub node: NodeId,
    pub widenings: usize,
}

/// What kind of update a trace step records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Seed,
    Join,
    Widen,
    Narrow,
}

/// One recorded update of a widening node's value.
#[derive(Clone, Debug)]
pub struct TraceStep<D> {
    pub node: NodeId,
    pub phase: Phase,
    pub value: D,
}

/// Result of a single-domain fixpoint run.
#[derive(Clone, Debug)]
pub struct FixpointResult<D> {
    pub values: Vec<D>,
    pub widenings: usize,
    pub updates: usize,
    pub narrowing_passes: usize,
    pub trace: Vec<TraceStep<D>>,
    /// Set when the widening bound was exceeded; `values` and `trace`
    /// then hold the partial state at the moment iteration stopped.
    pub diverged: Option<Divergence>,
}

/// The widening-node set for a placement (BodyEntry is handled by the
/// composite engine, which derives its own cut set).
pub fn widening_nodes(p: &Program, at: WidenAt) -> BTreeSet<NodeId> {
    match at {
        WidenAt::BackEdge => p.back_edges().iter().map(|&(_, t)| t).collect(),
        WidenAt::EveryNode => (0..p.cfg.nnodes).collect(),
        WidenAt::BodyEntry => p.loops.iter().map(|l| l.body_entry).collect(),
    }
}
