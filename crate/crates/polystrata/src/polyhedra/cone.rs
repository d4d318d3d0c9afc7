//! Incremental double-description conversion for polyhedral cones.
//!
//! A cone is kept as a lineality basis plus a set of extreme rays of the
//! pointed quotient. Constraint rows `a` (meaning `a·y ≥ 0`, or `a·y = 0`
//! for equalities) are added one at a time:
//!
//! * if some line has a nonzero product with `a`, that line is pivoted:
//!   every other generator is combined with it so as to land on the
//!   hyperplane `a·y = 0`, and the pivot line itself survives as a ray
//!   (inequality) or disappears (equality);
//! * otherwise the rays are split by the sign of `a·r`; adjacent pairs of
//!   a positive and a negative ray contribute the boundary combination
//!   `(a·p)·n − (a·n)·p`.
//!
//! Adjacency is the combinatorial test on true saturation sets (a pair is
//! adjacent iff no third ray saturates every row the pair jointly
//! saturates), which keeps exactly the extreme rays. Saturation sets are
//! recomputed against the full list of added rows after every insertion,
//! trading a little arithmetic for simplicity.

use super::num::{combine, dot, is_zero_row, negate, normalize, sign_canonical, Z};
use num_traits::Zero;
use std::cmp::Ordering;

/// Saturation bitset over added-row indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(bits: usize) -> Self {
        BitSet {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn intersect(&self, other: &Self) -> Self {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// True when `self ⊇ other`.
    pub fn contains_all(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == *b)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<Z>,
    sat: BitSet,
}

/// A polyhedral cone `{ y | rows·y ≥ 0 (eq rows: = 0) }` in double
/// description.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    /// Added constraint rows, each with its equality flag.
    rows: Vec<(Vec<Z>, bool)>,
    lines: Vec<Vec<Z>>,
    rays: Vec<Ray>,
}

impl Cone {
    /// The full space: lineality spans everything, no rays.
    pub fn full(dim: usize) -> Self {
        let mut lines = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut e = vec![Z::zero(); dim];
            e[i] = Z::from(1);
            lines.push(e);
        }
        Cone {
            dim,
            rows: Vec::new(),
            lines,
            rays: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_ineq(&mut self, a: Vec<Z>) {
        self.add_row(a, false);
    }

    pub fn add_eq(&mut self, a: Vec<Z>) {
        self.add_row(a, true);
    }

    fn add_row(&mut self, a: Vec<Z>, is_eq: bool) {
        debug_assert_eq!(a.len(), self.dim);
        let a = normalize(a);
        if is_zero_row(&a) {
            return;
        }
        if let Some(k) = self.lines.iter().position(|l| !dot(&a, l).is_zero()) {
            let mut l0 = self.lines.remove(k);
            if dot(&a, &l0) < Z::zero() {
                l0 = negate(&l0);
            }
            let d0 = dot(&a, &l0);
            for l in &mut self.lines {
                let dl = dot(&a, l);
                if !dl.is_zero() {
                    *l = sign_canonical(combine(&d0, l, &-dl, &l0));
                }
            }
            for r in &mut self.rays {
                let dr = dot(&a, &r.v);
                if !dr.is_zero() {
                    r.v = combine(&d0, &r.v, &-dr, &l0);
                }
            }
            if !is_eq {
                self.rays.push(Ray {
                    v: normalize(l0),
                    sat: BitSet::new(0),
                });
            }
        } else {
            let signs: Vec<Ordering> = self
                .rays
                .iter()
                .map(|r| dot(&a, &r.v).cmp(&Z::zero()))
                .collect();
            let mut next: Vec<Ray> = Vec::new();
            for (r, s) in self.rays.iter().zip(&signs) {
                let keep = match s {
                    Ordering::Equal => true,
                    Ordering::Greater => !is_eq,
                    Ordering::Less => false,
                };
                if keep {
                    next.push(r.clone());
                }
            }
            for (pi, p) in self.rays.iter().enumerate() {
                if signs[pi] != Ordering::Greater {
                    continue;
                }
                for (ni, n) in self.rays.iter().enumerate() {
                    if signs[ni] != Ordering::Less {
                        continue;
                    }
                    if !self.adjacent(pi, ni) {
                        continue;
                    }
                    let dp = dot(&a, &p.v);
                    let dn = dot(&a, &n.v);
                    let w = combine(&dp, &n.v, &-dn, &p.v);
                    if !is_zero_row(&w) {
                        next.push(Ray {
                            v: w,
                            sat: BitSet::new(0),
                        });
                    }
                }
            }
            self.rays = next;
        }
        self.rows.push((a, is_eq));
        self.recompute_saturations();
        self.dedup_rays();
    }

    /// Combinatorial adjacency of two extreme rays: no third ray saturates
    /// every previously added row that both of them saturate.
    fn adjacent(&self, i: usize, j: usize) -> bool {
        let z = self.rays[i].sat.intersect(&self.rays[j].sat);
        !self
            .rays
            .iter()
            .enumerate()
            .any(|(k, r)| k != i && k != j && r.sat.contains_all(&z))
    }

    fn recompute_saturations(&mut self) {
        let nrows = self.rows.len();
        for r in &mut self.rays {
            let mut sat = BitSet::new(nrows);
            for (i, (row, _)) in self.rows.iter().enumerate() {
                if dot(row, &r.v).is_zero() {
                    sat.set(i);
                }
            }
            r.sat = sat;
        }
    }

    fn dedup_rays(&mut self) {
        let mut seen: Vec<Vec<Z>> = Vec::new();
        self.rays.retain(|r| {
            if seen.contains(&r.v) {
                false
            } else {
                seen.push(r.v.clone());
                true
            }
        });
    }

    /// Lineality basis (primitive, sign-canonical rows).
    pub fn lines(&self) -> &[Vec<Z>] {
        &self.lines
    }

    /// Extreme rays of the pointed quotient (primitive rows).
    pub fn rays(&self) -> impl Iterator<Item = &Vec<Z>> {
        self.rays.iter().map(|r| &r.v)
    }
}
