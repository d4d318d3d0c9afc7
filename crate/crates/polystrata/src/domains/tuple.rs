//! Stratified tuples: one component per stratum, each stored over the
//! stratum's own dimensions and embedded on demand. The concretization
//! of a tuple is the meet of the embedded components. Three widening
//! disciplines operate on tuples:
//!
//! * componentwise (each component widened independently);
//! * hierarchical (ascending order, each component additionally met with
//!   the already-updated components of its immediate sub-strata);
//! * componentwise followed by a mutual-reduction closure iterated to a
//!   local fixpoint (this variant need not terminate globally; the
//!   closure pass itself is capped).

use super::AbstractDomain;
use crate::strata::Strata;

/// Shared stratification context for tuple values.
#[derive(Clone, Debug)]
pub struct TupleCtx {
    pub nvars: usize,
    /// Sorted variable ids of each stratum, ordered by (size, names).
    pub dims: Vec<Vec<usize>>,
    /// Immediate strict-subset predecessors (indices into `dims`).
    pub imm_preds: Vec<Vec<usize>>,
}

impl TupleCtx {
    pub fn new(strata: &Strata, nvars: usize) -> Self {
        TupleCtx {
            nvars,
            dims: strata
                .sets
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
            imm_preds: strata.imm_preds.clone(),
        }
    }

    /// Positions of `sub`'s dimensions inside `sup` (requires sub ⊆ sup;
    /// both sorted).
    fn positions(sub: &[usize], sup: &[usize]) -> Vec<usize> {
        sub.iter()
            .map(|d| sup.iter().position(|s| s == d).expect("subset dims"))
            .collect()
    }

    /// Common dimensions of two strata, with their positions in each.
    fn common(a: &[usize], b: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let shared: Vec<usize> = a.iter().copied().filter(|d| b.contains(d)).collect();
        (Self::positions(&shared, a), Self::positions(&shared, b))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StratifiedTuple<D> {
    pub comps: Vec<D>,
}

impl<D: AbstractDomain> StratifiedTuple<D> {
    /// Project a full-space value onto every stratum.
    pub fn seed(u: &D, ctx: &TupleCtx) -> Self {
        StratifiedTuple {
            comps: ctx.dims.iter().map(|d| u.project_onto(d)).collect(),
        }
    }

    /// Concretization: meet of the components, each seen as a cylinder
    /// over the full space.
    pub fn gamma(&self, ctx: &TupleCtx) -> D {
        let mut out = D::top(ctx.nvars);
        for (i, c) in self.comps.iter().enumerate() {
            out = out.meet(&c.embed_into(ctx.nvars, &ctx.dims[i]));
        }
        out
    }

    /// Componentwise widening against a full-space input; returns true
    /// if any component actually widened.
    pub fn widen_w1(&mut self, input: &D, ctx: &TupleCtx) -> bool {
        let mut fired = false;
        for (i, c) in self.comps.iter_mut().enumerate() {
            let pin = input.project_onto(&ctx.dims[i]);
            let cand = c.join(&pin);
            if cand != *c {
                *c = c.widen(&cand);
                fired = true;
            }
        }
        fired
    }

    /// Hierarchical widening: ascending stratum order (the tuple order is
    /// a linear extension of inclusion), each component met with the
    /// already-updated immediate predecessors embedded into its space.
    pub fn widen_w2(&mut self, input: &D, ctx: &TupleCtx) -> bool {
        let mut fired = false;
        for i in 0..self.comps.len() {
            let pin = input.project_onto(&ctx.dims[i]);
            let cand = self.comps[i].join(&pin);
            let mut new = if cand != self.comps[i] {
                fired = true;
                self.comps[i].widen(&cand)
            } else {
                self.comps[i].clone()
            };
            for &p in &ctx.imm_preds[i] {
                debug_assert!(p < i);
                let pos = TupleCtx::positions(&ctx.dims[p], &ctx.dims[i]);
                new = new.meet(&self.comps[p].embed_into(ctx.dims[i].len(), &pos));
            }
            self.comps[i] = new;
        }
        fired
    }

    /// Componentwise widening followed by the mutual-reduction closure:
    /// every component is met with the projection of every other until a
    /// local fixpoint (capped at |strata|² + 1 passes; the second result
    /// reports whether the cap was hit).
    pub fn widen_closure(&mut self, input: &D, ctx: &TupleCtx) -> (bool, bool) {
        let fired = self.widen_w1(input, ctx);
        let exceeded = self.reduce(ctx);
        (fired, exceeded)
    }

    /// The reduction pass alone; returns true if the pass cap was hit.
    pub fn reduce(&mut self, ctx: &TupleCtx) -> bool {
        let n = self.comps.len();
        let cap = n * n + 1;
        let mut passes = 0;
        loop {
            let before = self.comps.clone();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let (pos_in_j, pos_in_i) = {
                        let (pa, pb) = TupleCtx::common(&ctx.dims[j], &ctx.dims[i]);
                        (pa, pb)
                    };
                    if pos_in_j.is_empty() {
                        continue;
                    }
                    let proj = self.comps[j].project_onto(&pos_in_j);
                    let emb = proj.embed_into(ctx.dims[i].len(), &pos_in_i);
                    self.comps[i] = self.comps[i].meet(&emb);
                }
            }
            passes += 1;
            if self.comps == before {
                return false;
            }
            if passes >= cap {
                return true;
            }
        }
    }

    /// Componentwise narrowing against a full-space input.
    pub fn narrow(&mut self, input: &D, ctx: &TupleCtx) {
        for (i, c) in self.comps.iter_mut().enumerate() {
            *c = c.meet(&input.project_onto(&ctx.dims[i]));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_program;
    use crate::polyhedra::{con_eq, con_ge, Polyhedron};
    use crate::strata::compute_strata;

    fn sum_loop_ctx() -> TupleCtx {
        let p =
            parse_program("int i = 1, j = 0;\nwhile (i <= 5) { j = j + i; i = i + 1; }\n").unwrap();
        let s = compute_strata(&p, false);
        TupleCtx::new(&s, 2)
    }

    #[test]
    fn seed_and_gamma_invert_on_boxes() {
        let ctx = sum_loop_ctx();
        assert_eq!(ctx.dims, vec![vec![0], vec![0, 1]]);
        let p = Polyhedron::point(&[1, 0]);
        let t = StratifiedTuple::seed(&p, &ctx);
        assert_eq!(t.comps[0], Polyhedron::point(&[1]));
        assert_eq!(t.comps[1], p);
        assert_eq!(t.gamma(&ctx), p);
    }

    #[test]
    fn componentwise_widening_matches_per_stratum_widening() {
        let ctx = sum_loop_ctx();
        let p0 = Polyhedron::point(&[1, 0]);
        let mut t = StratifiedTuple::seed(&p0, &ctx);
        // Input grown to the segment from (1,0) to (2,1).
        let seg = p0.join(&Polyhedron::point(&[2, 1]));
        let fired = t.widen_w1(&seg, &ctx);
        assert!(fired);
        // {i}-component: [1,1] ∇ [1,2] = i >= 1.
        assert_eq!(
            t.comps[0],
            Polyhedron::from_constraints(1, vec![con_ge(&[1], 1)])
        );
        // Full component: point ∇ segment = the half-line i-j=1, j>=0.
        assert_eq!(
            t.comps[1],
            Polyhedron::from_constraints(2, vec![con_eq(&[1, -1], 1), con_ge(&[0, 1], 0)])
        );
        // gamma is their meet.
        assert_eq!(t.gamma(&ctx), t.comps[1]);
        // No growth: no firing, tuple unchanged.
        let before = t.clone();
        assert!(!t.widen_w1(&seg, &ctx));
        assert_eq!(t, before);
    }

    #[test]
    fn hierarchical_widening_meets_updated_substrata() {
        let ctx = sum_loop_ctx();
        // Force the situation where the full component widens to top but
        // the {i} component stays bounded: the meet keeps i's bounds.
        let mut t = StratifiedTuple {
            comps: vec![
                Polyhedron::from_constraints(1, vec![con_ge(&[1], 1), con_ge(&[-1], -6)]),
                Polyhedron::point(&[1, 0]),
            ],
        };
        // Input that grows j unboundedly but keeps i in [1,6].
        let input = Polyhedron::from_constraints(
            2,
            vec![con_ge(&[1, 0], 1), con_ge(&[-1, 0], -6), con_ge(&[0, 1], 0)],
        );
        let fired = t.widen_w2(&input, &ctx);
        assert!(fired);
        // {i} stays [1,6] (no growth there).
        assert_eq!(
            t.comps[0],
            Polyhedron::from_constraints(1, vec![con_ge(&[1], 1), con_ge(&[-1], -6)])
        );
        // Full component widened, then met with embed([1,6]).
        assert!(t.comps[1].includes(&input));
        let i_bounds =
            Polyhedron::from_constraints(2, vec![con_ge(&[1, 0], 1), con_ge(&[-1, 0], -6)]);
        assert!(i_bounds.includes(&t.comps[1]));
    }

    #[test]
    fn closure_reduction_propagates_between_components() {
        let ctx = sum_loop_ctx();
        let mut t = StratifiedTuple {
            comps: vec![
                Polyhedron::top(1),
                Polyhedron::from_constraints(2, vec![con_eq(&[1, -1], 0), con_ge(&[0, -1], -2)]),
            ],
        };
        let exceeded = t.reduce(&ctx);
        assert!(!exceeded);
        // x = y and y <= 2 forces i <= 2 in the {i} component.
        assert_eq!(
            t.comps[0],
            Polyhedron::from_constraints(1, vec![con_ge(&[-1], -2)])
        );
        // Reduction is a local fixpoint: running again changes nothing.
        let before = t.clone();
        t.reduce(&ctx);
        assert_eq!(t, before);
    }

    #[test]
    fn narrowing_shrinks_componentwise() {
        let ctx = sum_loop_ctx();
        let mut t = StratifiedTuple {
            comps: vec![Polyhedron::top(1), Polyhedron::top(2)],
        };
        let input = Polyhedron::from_constraints(
            2,
            vec![con_ge(&[1, 0], 1), con_ge(&[-1, 0], -6), con_ge(&[0, 1], 0)],
        );
        t.narrow(&input, &ctx);
        assert_eq!(
            t.comps[0],
            Polyhedron::from_constraints(1, vec![con_ge(&[1], 1), con_ge(&[-1], -6)])
        );
        assert_eq!(t.comps[1], input);
    }
}
