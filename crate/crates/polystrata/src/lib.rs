//! Static analysis of integer programs by abstract interpretation over
//! convex polyhedra, with stratified widening operators.
//!
//! The crate is organized as a pipeline:
//!
//! * [`frontend`] parses a small while-language (`.whl` files) into a
//!   control-flow graph of guarded affine commands and provides variable
//!   restriction (slicing to a subset of variables).
//! * [`polyhedra`] is an exact rational convex-polyhedra kernel: double
//!   description (constraints plus generators), lattice operations,
//!   projection, affine images, and the corrected standard widening.
//! * [`domains`] defines the abstract-domain contract shared by the engine,
//!   an interval domain, and the stratified product domain (tuples of
//!   per-stratum values with the `∇₁`/`∇₂`/closure widenings).
//! * [`strata`] builds the variable-dependency relation, condenses its
//!   strongly connected components, and produces the inclusion-ordered
//!   family of dependency-closed variable sets ("strata").
//! * [`engine`] computes fixpoints: classic upward iteration with widening
//!   and narrowing, stratified per-stratum analyses, and product-domain
//!   analysis, plus narrowing and post-fixpoint checking.
//! * [`oracle`] is an independent brute-force collecting semantics for
//!   bounded inputs, used as ground truth by the test suite.
//! * [`testgen`] generates random terminating loop nests for property tests.

pub mod cli;
pub mod domains;
pub mod engine;
pub mod frontend;
pub mod oracle;
pub mod polyhedra;
pub mod strata;
pub mod testgen;
