//! Recursive-descent parser producing the surface tree plus the ordered
//! variable list. Expressions are normalized to affine form on the fly;
//! products of two variables are rejected. Variables must be declared
//! before use, at the top level only.

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use super::FrontendError;
use std::collections::BTreeSet;

pub struct Parsed {
    pub vars: Vec<String>,
    pub stmts: Vec<Stmt>,
}

pub fn parse(src: &str) -> Result<Parsed, FrontendError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars: Vec::new(),
        declared: BTreeSet::new(),
    };
    let stmts = p.program()?;
    Ok(Parsed {
        vars: p.vars,
        stmts,
    })
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    vars: Vec<String>,
    declared: BTreeSet<String>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T, FrontendError> {
        Err(FrontendError::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, FrontendError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            self.err(&t, format!("expected {what}"))
        }
    }

    fn program(&mut self) -> Result<Vec<Stmt>, FrontendError> {
        let mut out = Vec::new();
        while self.peek().tok != Tok::Eof {
            out.push(self.stmt(true)?);
        }
        Ok(out)
    }

    fn block(&mut self) -> Result<Vec<Stmt>, FrontendError> {
        self.expect(Tok::LBrace, "'{'")?;
        let mut out = Vec::new();
        while self.peek().tok != Tok::RBrace {
            if self.peek().tok == Tok::Eof {
                let t = self.peek().clone();
                return self.err(&t, "unexpected end of input, expected '}'");
            }
            out.push(self.stmt(false)?);
        }
        self.next();
        Ok(out)
    }

    /// A block, or a single braceless statement (used for `if` branches).
    fn branch(&mut self) -> Result<Vec<Stmt>, FrontendError> {
        if self.peek().tok == Tok::LBrace {
            self.block()
        } else {
            Ok(vec![self.stmt(false)?])
        }
    }

    fn stmt(&mut self, top_level: bool) -> Result<Stmt, FrontendError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int => {
                if !top_level {
                    return self.err(&t, "declarations are only allowed at the top level");
                }
                self.next();
                let mut parts = Vec::new();
                loop {
                    let nt = self.next();
                    let name = match nt.tok {
                        Tok::Ident(s) => s,
                        _ => return self.err(&nt, "expected variable name"),
                    };
                    if self.declared.contains(&name) {
                        return Err(FrontendError::DuplicateVar {
                            name,
                            line: nt.line,
                            col: nt.col,
                        });
                    }
                    let rhs = if self.peek().tok == Tok::Assign {
                        self.next();
                        Some(self.rhs()?)
                    } else {
                        None
                    };
                    self.declared.insert(name.clone());
                    self.vars.push(name.clone());
                    parts.push((name, rhs));
                    match self.next() {
                        Token {
                            tok: Tok::Comma, ..
                        } => continue,
                        Token { tok: Tok::Semi, .. } => break,
                        other => return self.err(&other, "expected ',' or ';'"),
                    }
                }
                Ok(Stmt::Decl(parts))
            }
            Tok::Ident(name) => {
                let name = name.clone();
                self.next();
                if !self.declared.contains(&name) {
                    return Err(FrontendError::UndeclaredVar {
                        name,
                        line: t.line,
                        col: t.col,
                    });
                }
                let nt = self.next();
                let stmt = match nt.tok {
                    Tok::Assign => Stmt::Assign(name, self.rhs()?),
                    Tok::PlusPlus => Stmt::Assign(
                        name.clone(),
                        Rhs::Expr(AffExpr::var(&name).plus(&AffExpr::constant(Z::from(1)))),
                    ),
                    Tok::MinusMinus => Stmt::Assign(
                        name.clone(),
                        Rhs::Expr(AffExpr::var(&name).plus(&AffExpr::constant(Z::from(-1)))),
                    ),
                    _ => return self.err(&nt, "expected '=', '++' or '--'"),
                };
                self.expect(Tok::Semi, "';'")?;
                Ok(stmt)
            }
            Tok::SkipKw => {
                self.next();
                self.expect(Tok::Semi, "';'")?;
                Ok(Stmt::Skip)
            }
            Tok::If => {
                self.next();
                self.expect(Tok::LParen, "'('")?;
                let cond = self.cond()?;
                self.expect(Tok::RParen, "')'")?;
                let then = self.branch()?;
                let els = if self.peek().tok == Tok::Else {
                    self.next();
                    self.branch()?
                } else {
                    Vec::new()
                };
                Ok(Stmt::If(cond, then, els))
            }
            Tok::While => {
                self.next();
                self.expect(Tok::LParen, "'('")?;
                let cond = self.cond()?;
                self.expect(Tok::RParen, "')'")?;
                let body = self.block()?;
                Ok(Stmt::While(cond, body))
            }
            _ => self.err(&t, "expected a statement"),
        }
    }

    fn rhs(&mut self) -> Result<Rhs, FrontendError> {
        if self.peek().tok == Tok::Nondet {
            self.next();
            self.expect(Tok::LParen, "'('")?;
            self.expect(Tok::RParen, "')'")?;
            Ok(Rhs::Nondet)
        } else {
            Ok(Rhs::Expr(self.expr()?))
        }
    }

    fn cond(&mut self) -> Result<Cond, FrontendError> {
        if self.peek().tok == Tok::True {
            self.next();
            return Ok(Cond::True);
        }
        let mut c = self.conjunct()?;
        while self.peek().tok == Tok::AndAnd {
            self.next();
            let r = self.conjunct()?;
            c = Cond::And(Box::new(c), Box::new(r));
        }
        Ok(c)
    }

    fn conjunct(&mut self) -> Result<Cond, FrontendError> {
        if self.peek().tok == Tok::Nondet {
            self.next();
            self.expect(Tok::LParen, "'('")?;
            self.expect(Tok::RParen, "')'")?;
            return Ok(Cond::Nondet);
        }
        self.cmp()
    }

    fn cmp(&mut self) -> Result<Cond, FrontendError> {
        let lhs = self.expr()?;
        let t = self.next();
        let op = match t.tok {
            Tok::Le => CmpOp::Le,
            Tok::Lt => CmpOp::Lt,
            Tok::Ge => CmpOp::Ge,
            Tok::Gt => CmpOp::Gt,
            Tok::EqEq => CmpOp::Eq,
            Tok::Ne => CmpOp::Ne,
            _ => return self.err(&t, "expected a comparison operator"),
        };
        let rhs = self.expr()?;
        Ok(Cond::Cmp(lhs, op, rhs))
    }

    /// sum := ['-'] product (('+'|'-') product)*
    fn expr(&mut self) -> Result<AffExpr, FrontendError> {
        let mut acc;
        if self.peek().tok == Tok::Minus {
            self.next();
            acc = self.product()?.scale(&Z::from(-1));
        } else {
            acc = self.product()?;
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    let p = self.product()?;
                    acc = acc.plus(&p);
                }
                Tok::Minus => {
                    self.next();
                    let p = self.product()?;
                    acc = acc.minus(&p);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// product := factor ('*' factor)* — at most one variable factor.
    fn product(&mut self) -> Result<AffExpr, FrontendError> {
        let t = self.peek().clone();
        let mut konst = Z::from(1);
        let mut var: Option<String> = None;
        loop {
            let ft = self.next();
            match ft.tok {
                Tok::Num(n) => konst *= Z::from(n),
                Tok::Ident(name) => {
                    if !self.declared.contains(&name) {
                        return Err(FrontendError::UndeclaredVar {
                            name,
                            line: ft.line,
                            col: ft.col,
                        });
                    }
                    if var.is_some() {
                        return Err(FrontendError::Nonlinear {
                            line: t.line,
                            col: t.col,
                        });
                    }
                    var = Some(name);
                }
                _ => return self.err(&ft, "expected a number or variable"),
            }
            if self.peek().tok == Tok::Star {
                self.next();
            } else {
                break;
            }
        }
        Ok(match var {
            Some(v) => AffExpr::var(&v).scale(&konst),
            None => AffExpr::constant(konst),
        })
    }
}
