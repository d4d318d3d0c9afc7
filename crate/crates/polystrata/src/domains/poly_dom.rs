//! The convex-polyhedra instance of the abstract-domain contract.

use super::AbstractDomain;
use crate::frontend::{Cmd, LinRow, Rel};
use crate::polyhedra::{
    render_polyhedron, widen_standard, widen_upto, Constraint, Polyhedron, RationalStyle,
};

fn guard_constraint(rel: Rel, row: &LinRow) -> Constraint {
    // row·x + k ≥ 0  ⇔  row·x ≥ -k   (resp. =)
    let b = -row.k.clone();
    match rel {
        Rel::Ge => Constraint::ge(row.coef.clone(), b),
        Rel::Eq => Constraint::eq(row.coef.clone(), b),
    }
}

impl AbstractDomain for Polyhedron {
    const SUPPORTS_UPTO: bool = true;

    fn top(n: usize) -> Self {
        Polyhedron::top(n)
    }

    fn bottom(n: usize) -> Self {
        Polyhedron::bottom(n)
    }

    fn dims(&self) -> usize {
        Polyhedron::dims(self)
    }

    fn is_bottom(&self) -> bool {
        self.is_empty()
    }

    fn join(&self, other: &Self) -> Self {
        Polyhedron::join(self, other)
    }

    fn meet(&self, other: &Self) -> Self {
        Polyhedron::meet(self, other)
    }

    fn includes(&self, other: &Self) -> bool {
        Polyhedron::includes(self, other)
    }

    fn widen(&self, other: &Self) -> Self {
        widen_standard(self, other)
    }

    fn widen_upto(&self, other: &Self, thresholds: &Self) -> Self {
        widen_upto(self, other, thresholds.constraints())
    }

    fn transfer(&self, cmd: &Cmd) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        match cmd {
            Cmd::Skip | Cmd::GuardNondet => self.clone(),
            Cmd::Assign(x, row) => self.affine_image(*x, &row.coef, &row.k),
            Cmd::AssignNondet(x) => self.forget(*x),
            Cmd::Guard(rel, row) => self.meet_constraint(&guard_constraint(*rel, row)),
            Cmd::Init(parts) => {
                let mut cur = self.clone();
                for (x, val) in parts {
                    cur = match val {
                        Some(row) => cur.affine_image(*x, &row.coef, &row.k),
                        None => cur.forget(*x),
                    };
                }
                cur
            }
        }
    }

    fn contains_point(&self, point: &[i64]) -> bool {
        let qs: Vec<crate::polyhedra::Q> = point
            .iter()
            .map(|&v| crate::polyhedra::Q::from_integer(v.into()))
            .collect();
        Polyhedron::contains_point(self, &qs)
    }

    fn project_onto(&self, keep: &[usize]) -> Self {
        Polyhedron::project_onto(self, keep)
    }

    fn embed_into(&self, n: usize, positions: &[usize]) -> Self {
        Polyhedron::embed_into(self, n, positions)
    }

    fn to_polyhedron(&self) -> Polyhedron {
        self.clone()
    }

    fn render(&self, names: &[String], _style: RationalStyle) -> Vec<String> {
        render_polyhedron(self, names)
    }
}
