//! Exact rational convex-polyhedra kernel: double description
//! (constraints and generators), lattice operations, projection, affine
//! images, the corrected standard widening, and widening "up to".

pub mod cone;
pub mod format;
pub mod num;
pub mod poly;
pub mod widen;

pub use format::{
    render_constraint, render_generators, render_polyhedron, render_rational, RationalStyle,
};
pub use poly::{con_eq, con_ge, Constraint, Generators, Polyhedron, Q};
pub use widen::{widen_standard, widen_upto};
