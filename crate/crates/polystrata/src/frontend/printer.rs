//! Pretty-printer for surface trees. Expressions print in a normal form
//! (variables in name order, constant last), so printing is canonical
//! rather than byte-faithful; re-parsing yields an identical CFG.

use super::ast::*;
use num_traits::Signed;
use std::fmt::Write;

pub fn print_program(p: &Program) -> String {
    let mut out = String::new();
    for s in &p.ast {
        print_stmt(&mut out, s, 0);
    }
    out
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("    ");
    }
}

fn print_stmt(out: &mut String, s: &Stmt, level: usize) {
    indent(out, level);
    match s {
        Stmt::Skip => out.push_str("skip;\n"),
        Stmt::Decl(parts) => {
            out.push_str("int ");
            for (i, (name, rhs)) in parts.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(name);
                if let Some(r) = rhs {
                    out.push_str(" = ");
                    out.push_str(&rhs_str(r));
                }
            }
            out.push_str(";\n");
        }
        Stmt::Assign(name, rhs) => {
            let _ = writeln!(out, "{} = {};", name, rhs_str(rhs));
        }
        Stmt::If(cond, then, els) => {
            let _ = writeln!(out, "if ({}) {{", cond_str(cond));
            for t in then {
                print_stmt(out, t, level + 1);
            }
            indent(out, level);
            if els.is_empty() {
                out.push_str("}\n");
            } else {
                out.push_str("} else {\n");
                for e in els {
                    print_stmt(out, e, level + 1);
                }
                indent(out, level);
                out.push_str("}\n");
            }
        }
        Stmt::While(cond, body) => {
            let _ = writeln!(out, "while ({}) {{", cond_str(cond));
            for b in body {
                print_stmt(out, b, level + 1);
            }
            indent(out, level);
            out.push_str("}\n");
        }
    }
}

fn rhs_str(r: &Rhs) -> String {
    match r {
        Rhs::Nondet => "nondet()".into(),
        Rhs::Expr(e) => expr_str(e),
    }
}

fn cond_str(c: &Cond) -> String {
    match c {
        Cond::True => "true".into(),
        Cond::Nondet => "nondet()".into(),
        Cond::Cmp(l, op, r) => {
            let o = match op {
                CmpOp::Le => "<=",
                CmpOp::Lt => "<",
                CmpOp::Ge => ">=",
                CmpOp::Gt => ">",
                CmpOp::Eq => "==",
                CmpOp::Ne => "!=",
            };
            format!("{} {} {}", expr_str(l), o, expr_str(r))
        }
        Cond::And(a, b) => format!("{} && {}", cond_str(a), cond_str(b)),
    }
}

pub fn expr_str(e: &AffExpr) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new(); // (negative, magnitude)
    for (v, c) in &e.coefs {
        let mag = if c.abs() == Z::from(1) {
            v.clone()
        } else {
            format!("{}*{}", c.abs(), v)
        };
        terms.push((c.is_negative(), mag));
    }
    if e.k != Z::from(0) || terms.is_empty() {
        terms.push((e.k.is_negative(), e.k.abs().to_string()));
    }
    let mut out = String::new();
    for (i, (neg, mag)) in terms.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(mag);
    }
    out
}
