//! Interval (box) domain: one independent rational interval per
//! variable. Guard transfers do a single sound bound-refinement pass.

use super::AbstractDomain;
use crate::frontend::ast::Z;
use crate::frontend::{Cmd, LinRow, Rel};
use crate::polyhedra::{render_rational, Constraint, Polyhedron, RationalStyle, Q};
use num_traits::Zero;

fn q(z: &Z) -> Q {
    Q::from_integer(z.clone())
}

/// One interval; `None` means unbounded on that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Itv {
    pub lo: Option<Q>,
    pub hi: Option<Q>,
}

impl Itv {
    fn top() -> Self {
        Itv { lo: None, hi: None }
    }

    fn is_valid(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => l <= h,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalValue {
    Bottom(usize),
    Vals(Vec<Itv>),
}

use IntervalValue::{Bottom, Vals};

fn min_opt(a: &Option<Q>, b: &Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        _ => None,
    }
}

fn max_opt(a: &Option<Q>, b: &Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y).clone()),
        _ => None,
    }
}

/// Greater of two lower bounds (None = -∞).
fn tighter_lo(a: &Option<Q>, b: &Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y).clone()),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

/// Lesser of two upper bounds (None = +∞).
fn tighter_hi(a: &Option<Q>, b: &Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl IntervalValue {
    fn vals(&self) -> Option<&Vec<Itv>> {
        match self {
            Bottom(_) => None,
            Vals(v) => Some(v),
        }
    }

    fn normalized(v: Vec<Itv>) -> Self {
        if v.iter().all(|i| i.is_valid()) {
            Vals(v)
        } else {
            Bottom(v.len())
        }
    }

    /// Interval evaluation of `coef·x + k` over the box.
    fn eval(itvs: &[Itv], coef: &[Z], k: &Z) -> Itv {
        let mut lo = Some(q(k));
        let mut hi = Some(q(k));
        for (i, c) in coef.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cq = q(c);
            let (from_lo, from_hi) = if *c > Z::from(0) {
                (&itvs[i].lo, &itvs[i].hi)
            } else {
                (&itvs[i].hi, &itvs[i].lo)
            };
            lo = match (lo, from_lo) {
                (Some(a), Some(b)) => Some(a + &cq * b),
                _ => None,
            };
            hi = match (hi, from_hi) {
                (Some(a), Some(b)) => Some(a + &cq * b),
                _ => None,
            };
        }
        Itv { lo, hi }
    }

    /// Refine the box by `coef·x + k >= 0` (one pass over the original
    /// bounds; sound, not necessarily optimal).
    fn refine_ge(itvs: &[Itv], row: &LinRow) -> IntervalValue {
        if row.coef.iter().all(|c| c.is_zero()) {
            return if row.k >= Z::from(0) {
                Vals(itvs.to_vec())
            } else {
                Bottom(itvs.len())
            };
        }
        let mut out = itvs.to_vec();
        for (j, cj) in row.coef.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            // Maximum of k + Σ_{i≠j} coef_i·x_i over the box.
            let mut rest_hi = Some(q(&row.k));
            for (i, c) in row.coef.iter().enumerate() {
                if i == j || c.is_zero() {
                    continue;
                }
                let b = if *c > Z::from(0) {
                    &itvs[i].hi
                } else {
                    &itvs[i].lo
                };
                rest_hi = match (rest_hi, b) {
                    (Some(a), Some(v)) => Some(a + q(c) * v),
                    _ => None,
                };
            }
            let Some(m) = rest_hi else { continue };
            let bound = -m / q(cj);
            if *cj > Z::from(0) {
                out[j].lo = tighter_lo(&out[j].lo, &Some(bound));
            } else {
                out[j].hi = tighter_hi(&out[j].hi, &Some(bound));
            }
        }
        Self::normalized(out)
    }

    /// Exact conversion to a box polyhedron (used for comparisons).
    pub fn to_polyhedron(&self) -> Polyhedron {
        match self {
            Bottom(n) => Polyhedron::bottom(*n),
            Vals(v) => {
                let n = v.len();
                let mut cs = Vec::new();
                for (j, itv) in v.iter().enumerate() {
                    let unit = |s: i64| {
                        let mut c = vec![Z::from(0); n];
                        c[j] = Z::from(s);
                        c
                    };
                    match (&itv.lo, &itv.hi) {
                        (Some(l), Some(h)) if l == h => {
                            let mut c = unit(1);
                            c[j] = l.denom().clone();
                            cs.push(Constraint::eq(c, l.numer().clone()));
                            continue;
                        }
                        _ => {}
                    }
                    if let Some(l) = &itv.lo {
                        let mut c = unit(1);
                        c[j] = l.denom().clone();
                        cs.push(Constraint::ge(c, l.numer().clone()));
                    }
                    if let Some(h) = &itv.hi {
                        let mut c = unit(-1);
                        c[j] = -h.denom().clone();
                        cs.push(Constraint::ge(c, -h.numer().clone()));
                    }
                }
                Polyhedron::from_constraints(n, cs)
            }
        }
    }
}

impl AbstractDomain for IntervalValue {
    const SUPPORTS_UPTO: bool = true;

    fn top(n: usize) -> Self {
        Vals(vec![Itv::top(); n])
    }

    fn bottom(n: usize) -> Self {
        Bottom(n)
    }

    fn dims(&self) -> usize {
        match self {
            Bottom(n) => *n,
            Vals(v) => v.len(),
        }
    }

    fn is_bottom(&self) -> bool {
        matches!(self, Bottom(_))
    }

    fn join(&self, other: &Self) -> Self {
        match (self.vals(), other.vals()) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) => Vals(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| Itv {
                        lo: min_opt(&x.lo, &y.lo),
                        hi: max_opt(&x.hi, &y.hi),
                    })
                    .collect(),
            ),
        }
    }

    fn meet(&self, other: &Self) -> Self {
        match (self.vals(), other.vals()) {
            (None, _) => self.clone(),
            (_, None) => other.clone(),
            (Some(a), Some(b)) => Self::normalized(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| Itv {
                        lo: tighter_lo(&x.lo, &y.lo),
                        hi: tighter_hi(&x.hi, &y.hi),
                    })
                    .collect(),
            ),
        }
    }

    fn includes(&self, other: &Self) -> bool {
        match (self.vals(), other.vals()) {
            (_, None) => true,
            (None, _) => false,
            (Some(a), Some(b)) => a.iter().zip(b).all(|(x, y)| {
                let lo_ok = match (&x.lo, &y.lo) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(l), Some(m)) => l <= m,
                };
                let hi_ok = match (&x.hi, &y.hi) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(h), Some(g)) => h >= g,
                };
                lo_ok && hi_ok
            }),
        }
    }

    fn widen(&self, other: &Self) -> Self {
        match (self.vals(), other.vals()) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) => Vals(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| Itv {
                        lo: match (&x.lo, &y.lo) {
                            (Some(l), Some(m)) if m >= l => Some(l.clone()),
                            _ => None,
                        },
                        hi: match (&x.hi, &y.hi) {
                            (Some(h), Some(g)) if g <= h => Some(h.clone()),
                            _ => None,
                        },
                    })
                    .collect(),
            ),
        }
    }

    fn widen_upto(&self, other: &Self, thresholds: &Self) -> Self {
        let w = self.widen(other);
        let (Some(wv), Some(ov), Some(tv)) = (w.vals(), other.vals(), thresholds.vals()) else {
            return w;
        };
        // Keep each threshold bound that the larger argument (hence both)
        // satisfies.
        let out = wv
            .iter()
            .zip(ov)
            .zip(tv)
            .map(|((wi, oi), ti)| {
                let mut r = wi.clone();
                if let Some(tl) = &ti.lo {
                    if matches!(&oi.lo, Some(ol) if ol >= tl) {
                        r.lo = tighter_lo(&r.lo, &Some(tl.clone()));
                    }
                }
                if let Some(th) = &ti.hi {
                    if matches!(&oi.hi, Some(oh) if oh <= th) {
                        r.hi = tighter_hi(&r.hi, &Some(th.clone()));
                    }
                }
                r
            })
            .collect();
        Self::normalized(out)
    }

    fn transfer(&self, cmd: &Cmd) -> Self {
        let Some(v) = self.vals() else {
            return self.clone();
        };
        match cmd {
            Cmd::Skip | Cmd::GuardNondet => self.clone(),
            Cmd::Assign(x, row) => {
                let mut out = v.clone();
                out[*x] = Self::eval(v, &row.coef, &row.k);
                Vals(out)
            }
            Cmd::AssignNondet(x) => {
                let mut out = v.clone();
                out[*x] = Itv::top();
                Vals(out)
            }
            Cmd::Init(parts) => {
                let mut out = v.clone();
                for (x, val) in parts {
                    out[*x] = match val {
                        Some(row) => Self::eval(&out, &row.coef, &row.k),
                        None => Itv::top(),
                    };
                }
                Vals(out)
            }
            Cmd::Guard(Rel::Ge, row) => Self::refine_ge(v, row),
            Cmd::Guard(Rel::Eq, row) => {
                let first = Self::refine_ge(v, row);
                let Some(fv) = first.vals() else { return first };
                let neg = LinRow {
                    coef: row.coef.iter().map(|c| -c.clone()).collect(),
                    k: -row.k.clone(),
                };
                Self::refine_ge(fv, &neg)
            }
        }
    }

    fn contains_point(&self, point: &[i64]) -> bool {
        match self.vals() {
            None => false,
            Some(v) => v.iter().zip(point).all(|(itv, &x)| {
                let xq = Q::from_integer(Z::from(x));
                itv.lo.as_ref().is_none_or(|l| *l <= xq) && itv.hi.as_ref().is_none_or(|h| *h >= xq)
            }),
        }
    }

    fn project_onto(&self, keep: &[usize]) -> Self {
        match self.vals() {
            None => Bottom(keep.len()),
            Some(v) => Vals(keep.iter().map(|&i| v[i].clone()).collect()),
        }
    }

    fn embed_into(&self, n: usize, positions: &[usize]) -> Self {
        match self.vals() {
            None => Bottom(n),
            Some(v) => {
                let mut out = vec![Itv::top(); n];
                for (i, &p) in positions.iter().enumerate() {
                    out[p] = v[i].clone();
                }
                Vals(out)
            }
        }
    }

    fn to_polyhedron(&self) -> Polyhedron {
        IntervalValue::to_polyhedron(self)
    }

    fn render(&self, names: &[String], style: RationalStyle) -> Vec<String> {
        match self.vals() {
            None => vec!["false".to_string()],
            Some(v) => {
                let mut lines = Vec::new();
                for (j, itv) in v.iter().enumerate() {
                    match (&itv.lo, &itv.hi) {
                        (Some(l), Some(h)) if l == h => {
                            lines.push(format!("{} = {}", names[j], render_rational(l, style)));
                        }
                        _ => {
                            if let Some(l) = &itv.lo {
                                lines.push(format!(
                                    "{} >= {}",
                                    names[j],
                                    render_rational(l, style)
                                ));
                            }
                            if let Some(h) = &itv.hi {
                                lines.push(format!(
                                    "{} <= {}",
                                    names[j],
                                    render_rational(h, style)
                                ));
                            }
                        }
                    }
                }
                if lines.is_empty() {
                    lines.push("true".to_string());
                }
                lines
            }
        }
    }
}
