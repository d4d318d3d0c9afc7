//! Surface syntax trees and the control-flow graph of guarded affine
//! commands. Expressions are kept in normalized affine form (coefficient
//! map plus constant); the grammar rules out anything nonlinear.

use num_bigint::BigInt;
use std::collections::BTreeMap;

pub type Z = BigInt;

/// Normalized affine expression over variable *names*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffExpr {
    /// Nonzero coefficients only.
    pub coefs: BTreeMap<String, Z>,
    pub k: Z,
}

impl AffExpr {
    pub fn constant(k: Z) -> Self {
        AffExpr {
            coefs: BTreeMap::new(),
            k,
        }
    }

    pub fn var(name: &str) -> Self {
        let mut coefs = BTreeMap::new();
        coefs.insert(name.to_string(), Z::from(1));
        AffExpr {
            coefs,
            k: Z::from(0),
        }
    }

    pub fn plus(mut self, other: &AffExpr) -> Self {
        for (v, c) in &other.coefs {
            let e = self.coefs.entry(v.clone()).or_default();
            *e += c;
        }
        self.k += &other.k;
        self.coefs.retain(|_, c| *c != Z::from(0));
        self
    }

    pub fn scale(mut self, f: &Z) -> Self {
        for c in self.coefs.values_mut() {
            *c *= f;
        }
        self.k *= f;
        self.coefs.retain(|_, c| *c != Z::from(0));
        self
    }

    pub fn minus(self, other: &AffExpr) -> Self {
        self.plus(&other.clone().scale(&Z::from(-1)))
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.coefs.keys()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
    Ne,
}

/// A condition: `true`, `nondet()`, or a conjunction of comparisons.
/// Restriction may turn individual conjuncts into `nondet()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    True,
    Nondet,
    Cmp(AffExpr, CmpOp, AffExpr),
    And(Box<Cond>, Box<Cond>),
}

/// Right-hand side of a declaration or assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rhs {
    Expr(AffExpr),
    Nondet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    /// `int x = e, y = nondet(), z;` — later declarators see earlier ones.
    Decl(Vec<(String, Option<Rhs>)>),
    Assign(String, Rhs),
    If(Cond, Vec<Stmt>, Vec<Stmt>),
    While(Cond, Vec<Stmt>),
    Skip,
}

pub type NodeId = usize;

/// Positional affine row `coef·x + k` over the program's variable columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRow {
    pub coef: Vec<Z>,
    pub k: Z,
}

impl LinRow {
    pub fn reads(&self) -> impl Iterator<Item = usize> + '_ {
        self.coef
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Z::from(0))
            .map(|(i, _)| i)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    /// row ≥ 0
    Ge,
    /// row = 0
    Eq,
}

/// Guarded affine edge command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cmd {
    Skip,
    /// One declaration statement; components apply in order, `None`
    /// meaning a nondeterministic initial value.
    Init(Vec<(usize, Option<LinRow>)>),
    Assign(usize, LinRow),
    AssignNondet(usize),
    Guard(Rel, LinRow),
    GuardNondet,
}

impl Cmd {
    /// Variables read by the command (for dependency analysis).
    pub fn reads(&self) -> Vec<usize> {
        match self {
            Cmd::Skip | Cmd::GuardNondet | Cmd::AssignNondet(_) => Vec::new(),
            Cmd::Init(parts) => {
                let mut v: Vec<usize> = parts
                    .iter()
                    .filter_map(|(_, r)| r.as_ref())
                    .flat_map(|r| r.reads().collect::<Vec<_>>())
                    .collect();
                v.sort_unstable();
                v.dedup();
                v
            }
            Cmd::Assign(_, e) => e.reads().collect(),
            Cmd::Guard(_, e) => e.reads().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: NodeId,
    pub cmd: Cmd,
    pub dst: NodeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cfg {
    pub nnodes: usize,
    pub entry: NodeId,
    pub edges: Vec<Edge>,
}

impl Cfg {
    pub fn successors(&self, n: NodeId) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.src == n)
    }

    pub fn predecessors(&self, n: NodeId) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.dst == n)
    }
}

/// A loop's head node (join of entry path and back edges) and the first
/// node of its body (target of the loop-guard edge).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoopInfo {
    pub head: NodeId,
    pub body_entry: NodeId,
}

#[derive(Clone, Debug)]
pub struct Program {
    /// Declaration order; positional ids index this list.
    pub vars: Vec<String>,
    pub cfg: Cfg,
    pub loops: Vec<LoopInfo>,
    /// Surface tree kept in sync by restriction, for printing.
    pub ast: Vec<Stmt>,
}

impl Program {
    pub fn var_id(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Depth-first search back edges (target is an ancestor on the DFS
    /// stack); their targets are the default widening points.
    pub fn back_edges(&self) -> Vec<(NodeId, NodeId)> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Gray,
            Black,
        }
        let mut mark = vec![Mark::White; self.cfg.nnodes];
        let mut out = Vec::new();
        // Iterative DFS that processes a node's edges in creation order.
        let mut stack: Vec<(NodeId, usize)> = vec![(self.cfg.entry, 0)];
        mark[self.cfg.entry] = Mark::Gray;
        while let Some(&mut (n, ref mut i)) = stack.last_mut() {
            let next = self
                .cfg
                .edges
                .iter()
                .filter(|e| e.src == n)
                .nth(*i)
                .map(|e| e.dst);
            *i += 1;
            match next {
                Some(d) => match mark[d] {
                    Mark::Gray => out.push((n, d)),
                    Mark::White => {
                        mark[d] = Mark::Gray;
                        stack.push((d, 0));
                    }
                    Mark::Black => {}
                },
                None => {
                    mark[n] = Mark::Black;
                    stack.pop();
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Reverse postorder over the depth-first spanning tree from entry.
    pub fn reverse_postorder(&self) -> Vec<NodeId> {
        let mut visited = vec![false; self.cfg.nnodes];
        let mut post: Vec<NodeId> = Vec::new();
        let mut stack: Vec<(NodeId, usize)> = vec![(self.cfg.entry, 0)];
        visited[self.cfg.entry] = true;
        while let Some(&mut (n, ref mut i)) = stack.last_mut() {
            let next = self
                .cfg
                .edges
                .iter()
                .filter(|e| e.src == n)
                .nth(*i)
                .map(|e| e.dst);
            *i += 1;
            match next {
                Some(d) => {
                    if !visited[d] {
                        visited[d] = true;
                        stack.push((d, 0));
                    }
                }
                None => {
                    post.push(n);
                    stack.pop();
                }
            }
        }
        post.reverse();
        post
    }
}
