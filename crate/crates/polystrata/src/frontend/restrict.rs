//! Restriction of a program to a subset of its variables: commands that
//! write outside the subset become `skip`, reads from outside become
//! nondeterministic. The CFG shape (nodes and edges) is unchanged, so
//! node-indexed results of the restricted program line up with the
//! original. The surface tree is rewritten in step for printing.

use super::ast::*;
use std::collections::BTreeSet;

/// Restrict to the variables whose *ids* are in `keep`. The variable
/// list (and so the dimension of the analysis space) is unchanged.
pub fn restrict(p: &Program, keep: &BTreeSet<usize>) -> Program {
    let cfg = Cfg {
        nnodes: p.cfg.nnodes,
        entry: p.cfg.entry,
        edges: p
            .cfg
            .edges
            .iter()
            .map(|e| Edge {
                src: e.src,
                cmd: restrict_cmd(&e.cmd, keep),
                dst: e.dst,
            })
            .collect(),
    };
    let keep_names: BTreeSet<String> = keep.iter().map(|&i| p.vars[i].clone()).collect();
    Program {
        vars: p.vars.clone(),
        cfg,
        loops: p.loops.clone(),
        ast: p
            .ast
            .iter()
            .map(|s| restrict_stmt(s, &keep_names))
            .collect(),
    }
}

/// Convenience overload taking variable names.
pub fn restrict_names(p: &Program, keep: &BTreeSet<String>) -> Program {
    let ids = keep
        .iter()
        .filter_map(|n| p.var_id(n))
        .collect::<BTreeSet<usize>>();
    restrict(p, &ids)
}

fn row_inside(r: &LinRow, keep: &BTreeSet<usize>) -> bool {
    r.reads().all(|v| keep.contains(&v))
}

fn restrict_cmd(c: &Cmd, keep: &BTreeSet<usize>) -> Cmd {
    match c {
        Cmd::Skip | Cmd::GuardNondet => c.clone(),
        Cmd::Init(parts) => {
            let kept: Vec<(usize, Option<LinRow>)> = parts
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(v, r)| {
                    let r = match r {
                        Some(row) if row_inside(row, keep) => Some(row.clone()),
                        _ => None,
                    };
                    (*v, r)
                })
                .collect();
            if kept.is_empty() {
                Cmd::Skip
            } else {
                Cmd::Init(kept)
            }
        }
        Cmd::Assign(v, e) => {
            if !keep.contains(v) {
                Cmd::Skip
            } else if row_inside(e, keep) {
                c.clone()
            } else {
                Cmd::AssignNondet(*v)
            }
        }
        Cmd::AssignNondet(v) => {
            if keep.contains(v) {
                c.clone()
            } else {
                Cmd::Skip
            }
        }
        Cmd::Guard(_, e) => {
            if row_inside(e, keep) {
                c.clone()
            } else {
                Cmd::GuardNondet
            }
        }
    }
}

fn expr_inside(e: &AffExpr, keep: &BTreeSet<String>) -> bool {
    e.vars().all(|v| keep.contains(v))
}

fn restrict_rhs(r: &Rhs, keep: &BTreeSet<String>) -> Rhs {
    match r {
        Rhs::Expr(e) if expr_inside(e, keep) => r.clone(),
        _ => Rhs::Nondet,
    }
}

fn restrict_cond(c: &Cond, keep: &BTreeSet<String>) -> Cond {
    match c {
        Cond::True | Cond::Nondet => c.clone(),
        Cond::Cmp(l, _, r) => {
            if expr_inside(l, keep) && expr_inside(r, keep) {
                c.clone()
            } else {
                Cond::Nondet
            }
        }
        Cond::And(a, b) => Cond::And(
            Box::new(restrict_cond(a, keep)),
            Box::new(restrict_cond(b, keep)),
        ),
    }
}

fn restrict_stmt(s: &Stmt, keep: &BTreeSet<String>) -> Stmt {
    match s {
        Stmt::Skip => Stmt::Skip,
        Stmt::Decl(parts) => {
            let kept: Vec<(String, Option<Rhs>)> = parts
                .iter()
                .filter(|(n, _)| keep.contains(n))
                .map(|(n, r)| (n.clone(), r.as_ref().map(|r| restrict_rhs(r, keep))))
                .collect();
            if kept.is_empty() {
                Stmt::Skip
            } else {
                Stmt::Decl(kept)
            }
        }
        Stmt::Assign(n, r) => {
            if keep.contains(n) {
                Stmt::Assign(n.clone(), restrict_rhs(r, keep))
            } else {
                Stmt::Skip
            }
        }
        Stmt::If(c, t, e) => Stmt::If(
            restrict_cond(c, keep),
            t.iter().map(|s| restrict_stmt(s, keep)).collect(),
            e.iter().map(|s| restrict_stmt(s, keep)).collect(),
        ),
        Stmt::While(c, b) => Stmt::While(
            restrict_cond(c, keep),
            b.iter().map(|s| restrict_stmt(s, keep)).collect(),
        ),
    }
}
