//! Tokenizer for the little integer language. Tracks line/column for
//! error reporting; `//` comments run to end of line.

use super::FrontendError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    // keywords
    Int,
    If,
    Else,
    While,
    True,
    SkipKw,
    Nondet,
    // literals / names
    Ident(String),
    Num(i64),
    // punctuation
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Assign,
    EqEq,
    Ne,
    Le,
    Lt,
    Ge,
    Gt,
    AndAnd,
    Plus,
    Minus,
    Star,
    PlusPlus,
    MinusMinus,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn lex(src: &str) -> Result<Vec<Token>, FrontendError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();

    macro_rules! push {
        ($t:expr, $l:expr, $c:expr) => {
            out.push(Token {
                tok: $t,
                line: $l,
                col: $c,
            })
        };
    }

    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '/' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'/') {
                    while let Some(&d) = chars.peek() {
                        if d == '\n' {
                            break;
                        }
                        chars.next();
                        col += 1;
                    }
                } else {
                    return Err(FrontendError::Syntax {
                        line: tl,
                        col: tc,
                        msg: "unexpected character '/'".into(),
                    });
                }
            }
            '0'..='9' => {
                let mut n: i64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as i64))
                            .ok_or(FrontendError::Syntax {
                                line: tl,
                                col: tc,
                                msg: "integer literal too large".into(),
                            })?;
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                push!(Tok::Num(n), tl, tc);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let t = match s.as_str() {
                    "int" => Tok::Int,
                    "if" => Tok::If,
                    "else" => Tok::Else,
                    "while" => Tok::While,
                    "true" => Tok::True,
                    "skip" => Tok::SkipKw,
                    "nondet" => Tok::Nondet,
                    _ => Tok::Ident(s),
                };
                push!(t, tl, tc);
            }
            _ => {
                chars.next();
                col += 1;
                let two = |chars: &mut std::iter::Peekable<std::str::Chars>,
                           col: &mut usize,
                           want: char|
                 -> bool {
                    if chars.peek() == Some(&want) {
                        chars.next();
                        *col += 1;
                        true
                    } else {
                        false
                    }
                };
                let t = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '*' => Tok::Star,
                    '+' => {
                        if two(&mut chars, &mut col, '+') {
                            Tok::PlusPlus
                        } else {
                            Tok::Plus
                        }
                    }
                    '-' => {
                        if two(&mut chars, &mut col, '-') {
                            Tok::MinusMinus
                        } else {
                            Tok::Minus
                        }
                    }
                    '=' => {
                        if two(&mut chars, &mut col, '=') {
                            Tok::EqEq
                        } else {
                            Tok::Assign
                        }
                    }
                    '!' => {
                        if two(&mut chars, &mut col, '=') {
                            Tok::Ne
                        } else {
                            return Err(FrontendError::Syntax {
                                line: tl,
                                col: tc,
                                msg: "unexpected character '!'".into(),
                            });
                        }
                    }
                    '<' => {
                        if two(&mut chars, &mut col, '=') {
                            Tok::Le
                        } else {
                            Tok::Lt
                        }
                    }
                    '>' => {
                        if two(&mut chars, &mut col, '=') {
                            Tok::Ge
                        } else {
                            Tok::Gt
                        }
                    }
                    '&' => {
                        if two(&mut chars, &mut col, '&') {
                            Tok::AndAnd
                        } else {
                            return Err(FrontendError::Syntax {
                                line: tl,
                                col: tc,
                                msg: "unexpected character '&'".into(),
                            });
                        }
                    }
                    other => {
                        return Err(FrontendError::Syntax {
                            line: tl,
                            col: tc,
                            msg: format!("unexpected character '{other}'"),
                        });
                    }
                };
                push!(t, tl, tc);
            }
        }
    }
    push!(Tok::Eof, line, col);
    Ok(out)
}
