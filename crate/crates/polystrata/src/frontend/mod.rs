//! Parsing, lowering, printing and restriction of the little integer
//! language: declarations, affine assignments, `nondet()`, `if`/`else`,
//! `while`, with one guarded affine command per CFG edge.

pub mod ast;
pub mod lexer;
pub mod lower;
pub mod parser;
pub mod printer;
pub mod restrict;

pub use ast::{AffExpr, Cfg, Cmd, Cond, Edge, LinRow, LoopInfo, NodeId, Program, Rel, Stmt};
pub use printer::print_program;
pub use restrict::{restrict, restrict_names};

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FrontendError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: undeclared variable '{name}'")]
    UndeclaredVar {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: duplicate variable '{name}'")]
    DuplicateVar {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: nonlinear expression (only affine expressions are supported)")]
    Nonlinear { line: usize, col: usize },
}

/// Parse source text and lower it to a program with CFG.
pub fn parse_program(src: &str) -> Result<Program, FrontendError> {
    let parsed = parser::parse(src)?;
    Ok(lower::lower(parsed.vars, parsed.stmts))
}
