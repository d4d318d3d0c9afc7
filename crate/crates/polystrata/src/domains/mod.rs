//! Abstract domains. Every domain value represents a set of variable
//! valuations over a fixed number of dimensions and supports the lattice
//! and transfer operations the engines need. The trait is implemented by
//! convex polyhedra and by interval boxes; the stratified tuple is a
//! layered structure over any such domain.

pub mod intervals;
pub mod poly_dom;
pub mod tuple;

pub use intervals::IntervalValue;
pub use tuple::{StratifiedTuple, TupleCtx};

use crate::frontend::Cmd;
use crate::polyhedra::RationalStyle;

/// Operations every abstract domain provides.
///
/// Values are ordered by inclusion; `widen` requires `self ⊆ other` and
/// returns an upper bound of both chosen to enforce convergence.
/// `widen_upto` additionally re-imposes each constraint of `thresholds`
/// that both arguments satisfy ("widening up to"); domains that cannot
/// support it set `SUPPORTS_UPTO` to `false` and panic if it is called.
pub trait AbstractDomain: Clone + PartialEq + std::fmt::Debug {
    const SUPPORTS_UPTO: bool;

    fn top(n: usize) -> Self;
    fn bottom(n: usize) -> Self;
    fn dims(&self) -> usize;
    fn is_bottom(&self) -> bool;

    fn join(&self, other: &Self) -> Self;
    fn meet(&self, other: &Self) -> Self;
    fn includes(&self, other: &Self) -> bool;
    fn widen(&self, other: &Self) -> Self;
    fn widen_upto(&self, other: &Self, thresholds: &Self) -> Self;

    /// Strongest postcondition of one edge command.
    fn transfer(&self, cmd: &Cmd) -> Self;

    /// Membership of a concrete integer store.
    fn contains_point(&self, point: &[i64]) -> bool;

    /// Project onto the listed dimensions (result has `keep.len()` dims,
    /// in the given order).
    fn project_onto(&self, keep: &[usize]) -> Self;

    /// Embed into `n` dimensions, placing dimension `i` of `self` at
    /// `positions[i]` and leaving all other dimensions unconstrained.
    fn embed_into(&self, n: usize, positions: &[usize]) -> Self;

    /// Exact polyhedral form of the value, used to compare results
    /// across domains.
    fn to_polyhedron(&self) -> crate::polyhedra::Polyhedron;

    /// Human-readable constraint lines ("true" for top, "false" for
    /// bottom), stable across runs.
    fn render(&self, names: &[String], style: RationalStyle) -> Vec<String>;
}
