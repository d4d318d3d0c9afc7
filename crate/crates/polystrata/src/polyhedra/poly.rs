//! Closed convex rational polyhedra in canonical double description.
//!
//! A polyhedron over `n` positional dimensions stores both a minimized
//! constraint system and a minimized generator system, kept in canonical
//! form so that structural equality coincides with set equality:
//!
//! * equalities are an integer reduced row-echelon basis (primitive rows,
//!   positive pivots, pivot columns eliminated everywhere else);
//! * inequalities are facets only (polarity via the double-description
//!   cone yields exactly the extreme rays of the dual), reduced modulo the
//!   equality pivots, made primitive, deduplicated and sorted;
//! * generator lines are an integer RREF basis, rays and vertices are
//!   reduced modulo the lines, with rays primitive and vertices exact
//!   rationals, all sorted.
//!
//! Construction from either description round-trips through the cone, so
//! every public value is minimized eagerly. Variable names are not known
//! at this layer; callers map positions to names for printing.

use super::cone::Cone;
use super::num::{combine, dot, is_zero_row, normalize, sign_canonical, Z};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// `coef·x ≥ b`, or `coef·x = b` when `eq` is set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Constraint {
    pub eq: bool,
    pub coef: Vec<Z>,
    pub b: Z,
}

impl Constraint {
    pub fn ge(coef: Vec<Z>, b: Z) -> Self {
        Constraint { eq: false, coef, b }
    }

    pub fn eq(coef: Vec<Z>, b: Z) -> Self {
        Constraint { eq: true, coef, b }
    }

    fn sort_key(&self) -> (bool, Vec<Z>, Z) {
        (!self.eq, self.coef.clone(), self.b.clone())
    }

    pub fn satisfied_by_point(&self, p: &[Q]) -> bool {
        let mut acc = Q::zero();
        for (c, x) in self.coef.iter().zip(p) {
            acc += Q::from(c.clone()) * x;
        }
        let b = Q::from(self.b.clone());
        if self.eq {
            acc == b
        } else {
            acc >= b
        }
    }

    fn satisfied_by_ray(&self, d: &[Z]) -> bool {
        let v = dot(&self.coef, d);
        if self.eq {
            v.is_zero()
        } else {
            !v.is_negative()
        }
    }

    fn satisfied_by_line(&self, l: &[Z]) -> bool {
        dot(&self.coef, l).is_zero()
    }
}

/// Minimized generator description: vertices, extreme rays, lineality
/// basis. A nonempty polyhedron has at least one vertex after factoring
/// the lineality space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Generators {
    pub vertices: Vec<Vec<Q>>,
    pub rays: Vec<Vec<Z>>,
    pub lines: Vec<Vec<Z>>,
}

#[derive(Clone, Debug)]
pub struct Polyhedron {
    n: usize,
    empty: bool,
    cons: Vec<Constraint>,
    gens: Generators,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.empty == other.empty && (self.empty || self.cons == other.cons)
    }
}

impl Eq for Polyhedron {}

impl Polyhedron {
    pub fn dims(&self) -> usize {
        self.n
    }

    pub fn top(n: usize) -> Self {
        Polyhedron::from_constraints(n, Vec::new())
    }

    pub fn bottom(n: usize) -> Self {
        Polyhedron {
            n,
            empty: true,
            // Canonical infeasible row, so `constraints()` remains a
            // faithful description of the empty set.
            cons: vec![Constraint::ge(vec![Z::zero(); n], Z::one())],
            gens: Generators::default(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn is_top(&self) -> bool {
        !self.empty && self.cons.is_empty()
    }

    /// Canonical minimized constraints (empty list for ⊤; a single
    /// infeasible row `0 ≥ 1` for ⊥).
    pub fn constraints(&self) -> &[Constraint] {
        &self.cons
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    /// A point of the polyhedron: single vertex and no rays or lines.
    pub fn point(coords: &[i64]) -> Self {
        let n = coords.len();
        let cs = coords
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut c = vec![Z::zero(); n];
                c[i] = Z::one();
                Constraint::eq(c, Z::from(v))
            })
            .collect();
        Polyhedron::from_constraints(n, cs)
    }

    pub fn from_constraints(n: usize, cs: Vec<Constraint>) -> Self {
        let mut cone = Cone::full(n + 1);
        let mut lambda = vec![Z::zero(); n + 1];
        lambda[0] = Z::one();
        cone.add_ineq(lambda);
        for c in &cs {
            let mut row = Vec::with_capacity(n + 1);
            row.push(-c.b.clone());
            row.extend(c.coef.iter().cloned());
            if c.eq {
                cone.add_eq(row);
            } else {
                cone.add_ineq(row);
            }
        }
        let gens = extract_generators(n, &cone);
        match gens {
            None => Polyhedron::bottom(n),
            Some(g) => finish_from_generators(n, g),
        }
    }

    pub fn from_generators(n: usize, g: Generators) -> Self {
        if g.vertices.is_empty() {
            return Polyhedron::bottom(n);
        }
        finish_from_generators(n, g)
    }

    /// Exact inclusion test: `self ⊇ other`.
    pub fn includes(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        if other.empty {
            return true;
        }
        if self.empty {
            return false;
        }
        self.cons.iter().all(|c| {
            other.gens.vertices.iter().all(|v| c.satisfied_by_point(v))
                && other.gens.rays.iter().all(|r| c.satisfied_by_ray(r))
                && other.gens.lines.iter().all(|l| c.satisfied_by_line(l))
        })
    }

    pub fn contains_point(&self, p: &[Q]) -> bool {
        !self.empty && self.cons.iter().all(|c| c.satisfied_by_point(p))
    }

    /// Convex hull of the union (the lattice join: generator union).
    pub fn join(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        if self.empty {
            return other.clone();
        }
        if other.empty {
            return self.clone();
        }
        let mut g = self.gens.clone();
        g.vertices.extend(other.gens.vertices.iter().cloned());
        g.rays.extend(other.gens.rays.iter().cloned());
        g.lines.extend(other.gens.lines.iter().cloned());
        Polyhedron::from_generators(self.n, g)
    }

    /// Intersection (the lattice meet: constraint union).
    pub fn meet(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        if self.empty || other.empty {
            return Polyhedron::bottom(self.n);
        }
        let mut cs = self.cons.clone();
        cs.extend(other.cons.iter().cloned());
        Polyhedron::from_constraints(self.n, cs)
    }

    pub fn meet_constraint(&self, c: &Constraint) -> Self {
        if self.empty {
            return self.clone();
        }
        let mut cs = self.cons.clone();
        cs.push(c.clone());
        Polyhedron::from_constraints(self.n, cs)
    }

    /// Projection onto the columns in `keep` (in the given order); the
    /// result lives in `keep.len()` dimensions.
    pub fn project_onto(&self, keep: &[usize]) -> Self {
        let m = keep.len();
        if self.empty {
            return Polyhedron::bottom(m);
        }
        let g = Generators {
            vertices: self
                .gens
                .vertices
                .iter()
                .map(|v| keep.iter().map(|&c| v[c].clone()).collect())
                .collect(),
            rays: self
                .gens
                .rays
                .iter()
                .map(|r| keep.iter().map(|&c| r[c].clone()).collect::<Vec<_>>())
                .filter(|r| !is_zero_row(r))
                .collect(),
            lines: self
                .gens
                .lines
                .iter()
                .map(|l| keep.iter().map(|&c| l[c].clone()).collect::<Vec<_>>())
                .filter(|l| !is_zero_row(l))
                .collect(),
        };
        Polyhedron::from_generators(m, g)
    }

    /// Inverse of `project_onto`: reinterpret in `n_new ≥ n` dimensions,
    /// mapping column `k` to column `positions[k]` and leaving the other
    /// dimensions unconstrained (a cylinder, "keeping the same
    /// constraints").
    pub fn embed_into(&self, n_new: usize, positions: &[usize]) -> Self {
        debug_assert_eq!(positions.len(), self.n);
        if self.empty {
            return Polyhedron::bottom(n_new);
        }
        let cs = self
            .cons
            .iter()
            .map(|c| {
                let mut coef = vec![Z::zero(); n_new];
                for (k, &p) in positions.iter().enumerate() {
                    coef[p] = c.coef[k].clone();
                }
                Constraint {
                    eq: c.eq,
                    coef,
                    b: c.b.clone(),
                }
            })
            .collect();
        Polyhedron::from_constraints(n_new, cs)
    }

    /// Exact post-image of the assignment `x_var := coef·x + k`.
    pub fn affine_image(&self, var: usize, coef: &[Z], k: &Z) -> Self {
        if self.empty {
            return self.clone();
        }
        let vertices = self
            .gens
            .vertices
            .iter()
            .map(|v| {
                let mut w = v.clone();
                let mut acc = Q::from(k.clone());
                for (c, x) in coef.iter().zip(v) {
                    acc += Q::from(c.clone()) * x;
                }
                w[var] = acc;
                w
            })
            .collect();
        let map_dir = |d: &Vec<Z>| {
            let mut w = d.clone();
            w[var] = dot(coef, d);
            w
        };
        let g = Generators {
            vertices,
            rays: self
                .gens
                .rays
                .iter()
                .map(map_dir)
                .filter(|r| !is_zero_row(r))
                .collect(),
            lines: self
                .gens
                .lines
                .iter()
                .map(map_dir)
                .filter(|l| !is_zero_row(l))
                .collect(),
        };
        Polyhedron::from_generators(self.n, g)
    }

    /// Drop all information about one variable (projection re-embedded:
    /// adds the unit line along `var`).
    pub fn forget(&self, var: usize) -> Self {
        if self.empty {
            return self.clone();
        }
        let mut g = self.gens.clone();
        let mut e = vec![Z::zero(); self.n];
        e[var] = Z::one();
        g.lines.push(e);
        Polyhedron::from_generators(self.n, g)
    }
}

/// Reads the primal cone back into polyhedron generators; `None` when the
/// homogenized cone contains no point with a positive λ-coordinate (the
/// polyhedron is empty).
fn extract_generators(n: usize, cone: &Cone) -> Option<Generators> {
    let mut g = Generators::default();
    for l in cone.lines() {
        debug_assert!(l[0].is_zero());
        g.lines.push(l[1..].to_vec());
    }
    for r in cone.rays() {
        if r[0].is_positive() {
            let den = Q::from(r[0].clone());
            g.vertices.push(
                r[1..]
                    .iter()
                    .map(|x| Q::from(x.clone()) / den.clone())
                    .collect(),
            );
        } else {
            debug_assert!(r[0].is_zero());
            g.rays.push(r[1..].to_vec());
        }
    }
    debug_assert!(g.lines.iter().all(|l| l.len() == n));
    if g.vertices.is_empty() {
        None
    } else {
        Some(g)
    }
}

/// Polarity: minimal constraint rows of the polyhedron spanned by `g`
/// (which must contain a vertex). Dual lines are equalities, dual rays are
/// facets; the trivial row (positive constant, zero coefficients) is
/// dropped.
fn polar_constraints(n: usize, g: &Generators) -> Vec<Constraint> {
    let mut dual = Cone::full(n + 1);
    for v in &g.vertices {
        // Integerize (1, v): multiply by the lcm of denominators.
        let mut den = Z::one();
        for x in v {
            den = num_integer::lcm(den, x.denom().clone());
        }
        let mut row = Vec::with_capacity(n + 1);
        row.push(den.clone());
        for x in v {
            let scaled = x * Q::from(den.clone());
            debug_assert!(scaled.is_integer());
            row.push(scaled.to_integer());
        }
        dual.add_ineq(row);
    }
    for r in &g.rays {
        let mut row = Vec::with_capacity(n + 1);
        row.push(Z::zero());
        row.extend(r.iter().cloned());
        dual.add_ineq(row);
    }
    for l in &g.lines {
        let mut row = Vec::with_capacity(n + 1);
        row.push(Z::zero());
        row.extend(l.iter().cloned());
        dual.add_eq(row);
    }
    let mut cs = Vec::new();
    for l in dual.lines() {
        if !is_zero_row(&l[1..]) {
            cs.push(Constraint::eq(l[1..].to_vec(), -l[0].clone()));
        }
    }
    for r in dual.rays() {
        if !is_zero_row(&r[1..]) {
            cs.push(Constraint::ge(r[1..].to_vec(), -r[0].clone()));
        }
    }
    cs
}

fn finish_from_generators(n: usize, g: Generators) -> Polyhedron {
    let cs = polar_constraints(n, &g);
    let cons = match canonicalize_constraints(n, cs) {
        Some(c) => c,
        None => return Polyhedron::bottom(n),
    };
    let gens = canonicalize_generators(n, g, &cons);
    Polyhedron {
        n,
        empty: false,
        cons,
        gens,
    }
}

/// Canonical minimized constraint list; `None` when a contradictory row
/// appears (cannot happen for rows produced by polarity of a nonempty
/// generator set, but the code stays defensive).
fn canonicalize_constraints(n: usize, cs: Vec<Constraint>) -> Option<Vec<Constraint>> {
    // Row layout: coef columns 0..n, bound column n.
    let full = |c: &Constraint| -> Vec<Z> {
        let mut row = c.coef.clone();
        row.push(c.b.clone());
        row
    };
    let mut eqs: Vec<Vec<Z>> = cs.iter().filter(|c| c.eq).map(full).collect();
    let mut ineqs: Vec<Vec<Z>> = cs.iter().filter(|c| !c.eq).map(full).collect();

    // Integer RREF of the equalities over the coefficient columns.
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for c in 0..n {
        let Some(i) = (r..eqs.len()).find(|&i| !eqs[i][c].is_zero()) else {
            continue;
        };
        eqs.swap(r, i);
        if eqs[r][c].is_negative() {
            eqs[r] = super::num::negate(&eqs[r]);
        }
        let pivot = eqs[r].clone();
        for (j, row) in eqs.iter_mut().enumerate() {
            if j != r && !row[c].is_zero() {
                *row = combine(&pivot[c], row, &-row[c].clone(), &pivot);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    for row in &eqs[r..] {
        // Rows reduced to zero coefficients: 0 = b.
        if !row[n].is_zero() {
            return None;
        }
    }
    eqs.truncate(r);
    for row in &mut eqs {
        *row = normalize(std::mem::take(row));
    }

    // Reduce inequalities modulo the equality pivots, then normalize.
    let mut out: Vec<Constraint> = Vec::new();
    for (r, c) in &pivots {
        let row = &eqs[*r];
        debug_assert!(row[*c].is_positive());
        for ineq in &mut ineqs {
            if !ineq[*c].is_zero() {
                *ineq = combine(&row[*c], ineq, &-ineq[*c].clone(), row);
            }
        }
    }
    for row in eqs {
        let (coef, b) = split_row(row);
        out.push(Constraint::eq(coef, b));
    }
    let mut seen: Vec<Vec<Z>> = Vec::new();
    for row in ineqs {
        if is_zero_row(&row[..n]) {
            if row[n].is_positive() {
                return None; // 0 ≥ b with b > 0
            }
            continue; // trivially true
        }
        if seen.contains(&row) {
            continue;
        }
        seen.push(row.clone());
        let (coef, b) = split_row(row);
        out.push(Constraint::ge(coef, b));
    }
    out.sort_by_key(Constraint::sort_key);
    Some(out)
}

fn split_row(mut row: Vec<Z>) -> (Vec<Z>, Z) {
    let b = row.pop().expect("nonempty row");
    (row, b)
}

/// Canonical generator form: lines as integer RREF, rays and vertices
/// reduced modulo the lines, everything sorted.
fn canonicalize_generators(n: usize, g: Generators, _cons: &[Constraint]) -> Generators {
    let mut lines = g.lines;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(i) = (r..lines.len()).find(|&i| !lines[i][c].is_zero()) else {
            continue;
        };
        lines.swap(r, i);
        if lines[r][c].is_negative() {
            lines[r] = super::num::negate(&lines[r]);
        }
        let pivot = lines[r].clone();
        for (j, row) in lines.iter_mut().enumerate() {
            if j != r && !row[c].is_zero() {
                *row = sign_canonical(combine(&pivot[c], row, &-row[c].clone(), &pivot));
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    lines.truncate(r);
    for row in &mut lines {
        *row = normalize(std::mem::take(row));
    }

    let mut rays = g.rays;
    let mut vertices = g.vertices;
    for (r, c) in &pivots {
        let line = &lines[*r];
        debug_assert!(line[*c].is_positive());
        for ray in &mut rays {
            if !ray[*c].is_zero() {
                *ray = combine(&line[*c], ray, &-ray[*c].clone(), line);
            }
        }
        for v in &mut vertices {
            if !v[*c].is_zero() {
                let f = v[*c].clone() / Q::from(line[*c].clone());
                for (x, l) in v.iter_mut().zip(line) {
                    *x -= f.clone() * Q::from(l.clone());
                }
            }
        }
    }
    rays.retain(|r| !is_zero_row(r));
    rays.sort();
    rays.dedup();
    vertices.sort();
    vertices.dedup();
    Generators {
        vertices,
        rays,
        lines,
    }
}

/// Convenience constructor used across the test suite: `coef·x ≥ b` /
/// `coef·x = b` rows from machine integers.
pub fn con_ge(coef: &[i64], b: i64) -> Constraint {
    Constraint::ge(
        coef.iter().map(|&c| BigInt::from(c)).collect(),
        BigInt::from(b),
    )
}

pub fn con_eq(coef: &[i64], b: i64) -> Constraint {
    Constraint::eq(
        coef.iter().map(|&c| BigInt::from(c)).collect(),
        BigInt::from(b),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, cs: Vec<Constraint>) -> Polyhedron {
        Polyhedron::from_constraints(n, cs)
    }

    fn qvec(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from(Z::from(x))).collect()
    }

    #[test]
    fn point_from_equalities() {
        // {i=1, j=0} → single vertex (1,0)
        let p = poly(2, vec![con_eq(&[1, 0], 1), con_eq(&[0, 1], 0)]);
        assert!(!p.is_empty());
        assert_eq!(p.generators().vertices, vec![qvec(&[1, 0])]);
        assert!(p.generators().rays.is_empty());
        assert!(p.generators().lines.is_empty());
    }

    #[test]
    fn no_constraints_is_top() {
        let p = poly(2, vec![]);
        assert!(p.is_top());
        assert_eq!(p.generators().lines.len(), 2);
    }

    #[test]
    fn contradiction_is_bottom() {
        let p = poly(1, vec![con_ge(&[1], 1), con_ge(&[-1], 0)]);
        assert!(p.is_empty());
    }

    #[test]
    fn vertex_and_rays_to_constraints() {
        // vertex (1,0) + rays (1,1),(4,7) → {−i+j ≥ −1, 7i−4j ≥ 7}
        let g = Generators {
            vertices: vec![qvec(&[1, 0])],
            rays: vec![vec![Z::from(1), Z::from(1)], vec![Z::from(4), Z::from(7)]],
            lines: vec![],
        };
        let p = Polyhedron::from_generators(2, g);
        assert_eq!(
            p.constraints(),
            &[con_ge(&[-1, 1], -1), con_ge(&[7, -4], 7)]
        );
    }

    #[test]
    fn line_plus_vertex_is_one_equality() {
        // single line along i through (0, 3) → j = 3
        let g = Generators {
            vertices: vec![qvec(&[0, 3])],
            rays: vec![],
            lines: vec![vec![Z::from(1), Z::from(0)]],
        };
        let p = Polyhedron::from_generators(2, g);
        assert_eq!(p.constraints(), &[con_eq(&[0, 1], 3)]);
    }

    #[test]
    fn unit_square_has_four_facets() {
        let g = Generators {
            vertices: vec![qvec(&[0, 0]), qvec(&[0, 1]), qvec(&[1, 0]), qvec(&[1, 1])],
            rays: vec![],
            lines: vec![],
        };
        let p = Polyhedron::from_generators(2, g);
        assert_eq!(p.constraints().len(), 4);
        assert_eq!(p.generators().vertices.len(), 4);
    }

    #[test]
    fn join_of_points_is_segment() {
        let a = Polyhedron::point(&[1, 0]);
        let b = Polyhedron::point(&[2, 1]);
        let s = a.join(&b);
        // segment: i−j=1 ∧ 1 ≤ i ≤ 2 (canonical: j ≥ 0, −j ≥ −1 after
        // reduction modulo the equality)
        assert_eq!(s.generators().vertices, vec![qvec(&[1, 0]), qvec(&[2, 1])]);
        let same = poly(
            2,
            vec![
                con_eq(&[1, -1], 1),
                con_ge(&[1, 0], 1),
                con_ge(&[-1, 0], -2),
            ],
        );
        assert_eq!(s, same);
    }

    #[test]
    fn join_with_bottom_is_identity() {
        let a = Polyhedron::point(&[3, 4]);
        let bot = Polyhedron::bottom(2);
        assert_eq!(a.join(&bot), a);
        assert_eq!(bot.join(&a), a);
        assert_eq!(a.join(&a), a);
    }

    #[test]
    fn meet_with_top_is_identity() {
        let a = poly(2, vec![con_ge(&[1, 0], 1)]);
        let top = Polyhedron::top(2);
        assert_eq!(top.meet(&a), a);
        assert_eq!(a.meet(&top), a);
    }

    #[test]
    fn projection_of_point() {
        let p = Polyhedron::point(&[1, 0]);
        let pi = p.project_onto(&[0]);
        assert_eq!(pi, Polyhedron::point(&[1]));
    }

    #[test]
    fn embed_round_trip() {
        let p = poly(1, vec![con_ge(&[1], 1), con_ge(&[-1], -5)]);
        let e = p.embed_into(2, &[0]);
        assert_eq!(e.constraints(), &[con_ge(&[-1, 0], -5), con_ge(&[1, 0], 1)]);
        assert_eq!(e.project_onto(&[0]), p);
    }

    #[test]
    fn affine_image_shifts_interval() {
        // {1≤i≤5} under i := i+1 → {2≤i≤6}
        let p = poly(1, vec![con_ge(&[1], 1), con_ge(&[-1], -5)]);
        let q = p.affine_image(0, &[Z::from(1)], &Z::from(1));
        assert_eq!(q, poly(1, vec![con_ge(&[1], 2), con_ge(&[-1], -6)]));
    }

    #[test]
    fn affine_image_constant_collapses() {
        let p = poly(1, vec![con_ge(&[1], 1), con_ge(&[-1], -5)]);
        let q = p.affine_image(0, &[Z::from(0)], &Z::from(3));
        assert_eq!(q, Polyhedron::point(&[3]));
    }

    #[test]
    fn forget_drops_a_variable() {
        let p = Polyhedron::point(&[1, 0]);
        let q = p.forget(1);
        assert_eq!(q.constraints(), &[con_eq(&[1, 0], 1)]);
        assert_eq!(q.generators().lines.len(), 1);
    }

    #[test]
    fn includes_is_exact() {
        let big = poly(2, vec![con_ge(&[1, 0], 0)]);
        let small = poly(2, vec![con_ge(&[1, 0], 1), con_ge(&[0, 1], 0)]);
        assert!(big.includes(&small));
        assert!(!small.includes(&big));
        assert!(big.includes(&Polyhedron::bottom(2)));
        assert!(Polyhedron::top(2).includes(&big));
    }

    #[test]
    fn halfline_canonical_form() {
        // vertex (1,0), ray (1,1): the halfline i−j = 1, i ≥ 1.
        let g = Generators {
            vertices: vec![qvec(&[1, 0])],
            rays: vec![vec![Z::from(1), Z::from(1)]],
            lines: vec![],
        };
        let p = Polyhedron::from_generators(2, g);
        // canonical: equality first, inequality reduced mod the equality
        assert_eq!(p.constraints(), &[con_eq(&[1, -1], 1), con_ge(&[0, 1], 0)]);
        let same = poly(2, vec![con_eq(&[1, -1], 1), con_ge(&[1, 0], 1)]);
        assert_eq!(p, same);
    }

    #[test]
    fn redundant_constraints_are_minimized_away() {
        // i ≥ 1 is implied by the other two rows: −i+j ≥ −1 gives
        // 5j ≥ 5i−5, and 9i−5j ≥ 9 gives 5j ≤ 9i−9, hence 4i ≥ 4.
        let p = poly(
            2,
            vec![
                con_ge(&[-1, 1], -1),
                con_ge(&[9, -5], 9),
                con_ge(&[1, 0], 1),
            ],
        );
        assert_eq!(
            p.constraints(),
            &[con_ge(&[-1, 1], -1), con_ge(&[9, -5], 9)]
        );
    }

    #[test]
    fn rational_vertices_survive() {
        // i ≥ 1, 2i ≤ 3: vertex at 3/2
        let p = poly(1, vec![con_ge(&[1], 1), con_ge(&[-2], -3)]);
        let v = &p.generators().vertices;
        assert_eq!(v.len(), 2);
        assert_eq!(v[1], vec![Q::new(Z::from(3), Z::from(2))]);
    }
}
