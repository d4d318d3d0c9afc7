//! Lowering from the surface tree to a control-flow graph with one
//! guarded affine command per edge.
//!
//! Shapes produced:
//! - a declaration statement is a single `Init` edge (all declarators);
//! - a loop head is the current node, unless that is the entry node, in
//!   which case a fresh head is reached by a `Skip` edge so the entry
//!   keeps in-degree zero;
//! - condition alternatives become parallel edges, conjunctions become
//!   chains of guard edges; strict comparisons are tightened to
//!   inclusive integer form; negated equalities split in two;
//! - `while (true)` produces no exit edge and unreachable trailing code
//!   is pruned.

use super::ast::*;
use std::collections::BTreeMap;

/// Primitive guard: one edge's worth of condition.
enum Pg {
    Ge(LinRow),
    Eq(LinRow),
    Nondet,
}

impl Pg {
    fn into_cmd(self) -> Cmd {
        match self {
            Pg::Ge(r) => Cmd::Guard(Rel::Ge, r),
            Pg::Eq(r) => Cmd::Guard(Rel::Eq, r),
            Pg::Nondet => Cmd::GuardNondet,
        }
    }
}

struct Lowerer {
    ids: BTreeMap<String, usize>,
    nvars: usize,
    nnodes: usize,
    entry: NodeId,
    edges: Vec<Edge>,
    loops: Vec<LoopInfo>,
}

pub fn lower(vars: Vec<String>, stmts: Vec<Stmt>) -> Program {
    let ids: BTreeMap<String, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut lw = Lowerer {
        nvars: vars.len(),
        ids,
        nnodes: 1,
        entry: 0,
        edges: Vec::new(),
        loops: Vec::new(),
    };
    lw.seq(&stmts, 0, None);
    lw.prune();
    Program {
        vars,
        cfg: Cfg {
            nnodes: lw.nnodes,
            entry: lw.entry,
            edges: lw.edges,
        },
        loops: lw.loops,
        ast: stmts,
    }
}

impl Lowerer {
    fn fresh(&mut self) -> NodeId {
        let n = self.nnodes;
        self.nnodes += 1;
        n
    }

    fn edge(&mut self, src: NodeId, cmd: Cmd, dst: NodeId) {
        self.edges.push(Edge { src, cmd, dst });
    }

    fn row(&self, e: &AffExpr) -> LinRow {
        let mut coef = vec![Z::from(0); self.nvars];
        for (v, c) in &e.coefs {
            coef[self.ids[v]] = c.clone();
        }
        LinRow {
            coef,
            k: e.k.clone(),
        }
    }

    /// `lhs - rhs + shift` as a positional row.
    fn diff(&self, lhs: &AffExpr, rhs: &AffExpr, shift: i64) -> LinRow {
        let e = lhs
            .clone()
            .minus(rhs)
            .plus(&AffExpr::constant(Z::from(shift)));
        self.row(&e)
    }

    /// Alternatives (parallel edges) of conjunctions (edge chains) that
    /// realize the condition. An empty conjunction is an unconditional
    /// `Skip` edge; an empty alternative list means "never".
    fn pos(&self, c: &Cond) -> Vec<Vec<Pg>> {
        match c {
            Cond::True => vec![vec![]],
            Cond::Nondet => vec![vec![Pg::Nondet]],
            Cond::Cmp(l, op, r) => match op {
                CmpOp::Le => vec![vec![Pg::Ge(self.diff(r, l, 0))]],
                CmpOp::Lt => vec![vec![Pg::Ge(self.diff(r, l, -1))]],
                CmpOp::Ge => vec![vec![Pg::Ge(self.diff(l, r, 0))]],
                CmpOp::Gt => vec![vec![Pg::Ge(self.diff(l, r, -1))]],
                CmpOp::Eq => vec![vec![Pg::Eq(self.diff(l, r, 0))]],
                CmpOp::Ne => vec![
                    vec![Pg::Ge(self.diff(l, r, -1))],
                    vec![Pg::Ge(self.diff(r, l, -1))],
                ],
            },
            Cond::And(a, b) => {
                let xs = self.pos(a);
                let ys = self.pos(b);
                let mut out = Vec::new();
                for x in &xs {
                    for y in &ys {
                        let mut alt: Vec<Pg> = Vec::new();
                        alt.extend(x.iter().map(|g| self.clone_pg(g)));
                        alt.extend(y.iter().map(|g| self.clone_pg(g)));
                        out.push(alt);
                    }
                }
                out
            }
        }
    }

    fn clone_pg(&self, g: &Pg) -> Pg {
        match g {
            Pg::Ge(r) => Pg::Ge(r.clone()),
            Pg::Eq(r) => Pg::Eq(r.clone()),
            Pg::Nondet => Pg::Nondet,
        }
    }

    fn neg(&self, c: &Cond) -> Vec<Vec<Pg>> {
        match c {
            Cond::True => vec![],
            Cond::Nondet => vec![vec![Pg::Nondet]],
            Cond::Cmp(l, op, r) => match op {
                CmpOp::Le => vec![vec![Pg::Ge(self.diff(l, r, -1))]],
                CmpOp::Lt => vec![vec![Pg::Ge(self.diff(l, r, 0))]],
                CmpOp::Ge => vec![vec![Pg::Ge(self.diff(r, l, -1))]],
                CmpOp::Gt => vec![vec![Pg::Ge(self.diff(r, l, 0))]],
                CmpOp::Eq => vec![
                    vec![Pg::Ge(self.diff(l, r, -1))],
                    vec![Pg::Ge(self.diff(r, l, -1))],
                ],
                CmpOp::Ne => vec![vec![Pg::Eq(self.diff(l, r, 0))]],
            },
            Cond::And(a, b) => {
                let mut out = self.neg(a);
                out.extend(self.neg(b));
                out
            }
        }
    }

    /// Emit all alternatives from `cur` to a common destination, which
    /// is created fresh when not supplied. Alternatives must be nonempty.
    fn alts_to(&mut self, cur: NodeId, alts: Vec<Vec<Pg>>, dst: Option<NodeId>) -> NodeId {
        debug_assert!(!alts.is_empty());
        let d = dst.unwrap_or_else(|| self.fresh());
        for alt in alts {
            if alt.is_empty() {
                self.edge(cur, Cmd::Skip, d);
            } else {
                let len = alt.len();
                let mut c = cur;
                for (i, g) in alt.into_iter().enumerate() {
                    let nxt = if i + 1 == len { d } else { self.fresh() };
                    self.edge(c, g.into_cmd(), nxt);
                    c = nxt;
                }
            }
        }
        d
    }

    /// Lower a sequence from `cur`; flow must end at `target` when given.
    /// Returns the end node, or `None` when flow can never fall through
    /// (a `while (true)` swallowed it) — any remaining statements are
    /// unreachable and dropped.
    fn seq(&mut self, stmts: &[Stmt], cur: NodeId, target: Option<NodeId>) -> Option<NodeId> {
        if stmts.is_empty() {
            return match target {
                None => Some(cur),
                Some(t) => {
                    self.edge(cur, Cmd::Skip, t);
                    Some(t)
                }
            };
        }
        let mut c = cur;
        let last = stmts.len() - 1;
        for (i, s) in stmts.iter().enumerate() {
            let t = if i == last { target } else { None };
            {
                let n = self.stmt(s, c, t)?;
                c = n
            }
        }
        Some(c)
    }

    fn stmt(&mut self, s: &Stmt, cur: NodeId, target: Option<NodeId>) -> Option<NodeId> {
        match s {
            Stmt::Skip => {
                let d = target.unwrap_or_else(|| self.fresh());
                self.edge(cur, Cmd::Skip, d);
                Some(d)
            }
            Stmt::Decl(parts) => {
                let inits = parts
                    .iter()
                    .map(|(name, rhs)| {
                        let id = self.ids[name];
                        let val = match rhs {
                            Some(Rhs::Expr(e)) => Some(self.row(e)),
                            Some(Rhs::Nondet) | None => None,
                        };
                        (id, val)
                    })
                    .collect();
                let d = target.unwrap_or_else(|| self.fresh());
                self.edge(cur, Cmd::Init(inits), d);
                Some(d)
            }
            Stmt::Assign(name, rhs) => {
                let id = self.ids[name];
                let cmd = match rhs {
                    Rhs::Expr(e) => Cmd::Assign(id, self.row(e)),
                    Rhs::Nondet => Cmd::AssignNondet(id),
                };
                let d = target.unwrap_or_else(|| self.fresh());
                self.edge(cur, cmd, d);
                Some(d)
            }
            Stmt::If(cond, then, els) => {
                let join = target.unwrap_or_else(|| self.fresh());
                let mut reached = false;
                for (alts, body) in [(self.pos(cond), then), (self.neg(cond), els)] {
                    if alts.is_empty() {
                        continue; // statically dead branch
                    }
                    if body.is_empty() {
                        self.alts_to(cur, alts, Some(join));
                        reached = true;
                    } else {
                        let entry = self.fresh();
                        self.alts_to(cur, alts, Some(entry));
                        if self.seq(body, entry, Some(join)).is_some() {
                            reached = true;
                        }
                    }
                }
                if reached {
                    Some(join)
                } else {
                    None
                }
            }
            Stmt::While(cond, body) => {
                let head = if cur == self.entry {
                    let h = self.fresh();
                    self.edge(cur, Cmd::Skip, h);
                    h
                } else {
                    cur
                };
                let enter = self.pos(cond);
                debug_assert!(!enter.is_empty());
                let body_entry = self.alts_to(head, enter, None);
                self.loops.push(LoopInfo { head, body_entry });
                self.seq(body, body_entry, Some(head));
                let exit = self.neg(cond);
                if exit.is_empty() {
                    None
                } else {
                    Some(self.alts_to(head, exit, target))
                }
            }
        }
    }

    /// Drop nodes unreachable from the entry, renumbering the survivors
    /// in their original order.
    fn prune(&mut self) {
        let mut reach = vec![false; self.nnodes];
        reach[self.entry] = true;
        let mut work = vec![self.entry];
        while let Some(n) = work.pop() {
            for e in &self.edges {
                if e.src == n && !reach[e.dst] {
                    reach[e.dst] = true;
                    work.push(e.dst);
                }
            }
        }
        if reach.iter().all(|&r| r) {
            return;
        }
        let mut remap = vec![usize::MAX; self.nnodes];
        let mut next = 0;
        for (old, &r) in reach.iter().enumerate() {
            if r {
                remap[old] = next;
                next += 1;
            }
        }
        self.edges.retain(|e| reach[e.src] && reach[e.dst]);
        for e in &mut self.edges {
            e.src = remap[e.src];
            e.dst = remap[e.dst];
        }
        self.loops.retain(|l| reach[l.head] && reach[l.body_entry]);
        for l in &mut self.loops {
            l.head = remap[l.head];
            l.body_entry = remap[l.body_entry];
        }
        self.entry = remap[self.entry];
        self.nnodes = next;
    }
}
