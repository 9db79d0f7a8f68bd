//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := '-' term | power (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//! ```

use std::fmt;

use thiserror::Error;

use super::{BinOp, Expr, Func};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    Syntax { expected: Vec<&'static str>, found: String },
    UnknownIdentifier(String),
    WrongArity { name: String, expected: usize, found: usize },
    MixedVariables,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier `{name}`"),
            ParseErrorKind::WrongArity {
                name,
                expected,
                found,
            } => write!(f, "`{name}` takes {expected} argument(s), got {found}"),
            ParseErrorKind::MixedVariables => write!(f, "both `x` and `z` used as variables"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "number {x}"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Op(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Next token and its byte offset.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == '.' {
            let bytes = rest.as_bytes();
            let mut n = 0;
            while n < bytes.len() && (bytes[n].is_ascii_digit() || bytes[n] == b'.') {
                n += 1;
            }
            if n < bytes.len() && (bytes[n] == b'e' || bytes[n] == b'E') {
                let mut k = n + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    n = k;
                }
            }
            let text = &rest[..n];
            let value: f64 = text.parse().map_err(|_| ParseError {
                offset: start,
                kind: ParseErrorKind::Syntax {
                    expected: vec!["number"],
                    found: format!("`{text}`"),
                },
            })?;
            self.pos += n;
            return Ok((Tok::Num(value), start));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let n = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            self.pos += n;
            return Ok((Tok::Ident(rest[..n].to_string()), start));
        }
        if "+-*/^(),".contains(c) {
            self.pos += 1;
            return Ok((Tok::Op(c), start));
        }
        Err(ParseError {
            offset: start,
            kind: ParseErrorKind::Syntax {
                expected: vec!["number", "identifier", "operator", "`(`"],
                found: format!("`{c}`"),
            },
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    offset: usize,
    var_name: Option<char>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (tok, offset) = lexer.next()?;
        Ok(Self {
            lexer,
            tok,
            offset,
            var_name: None,
        })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, offset) = self.lexer.next()?;
        self.tok = tok;
        self.offset = offset;
        Ok(())
    }

    fn unexpected(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError {
            offset: self.offset,
            kind: ParseErrorKind::Syntax {
                expected,
                found: self.tok.to_string(),
            },
        }
    }

    fn expect_op(&mut self, c: char, label: &'static str) -> Result<(), ParseError> {
        if self.tok == Tok::Op(c) {
            self.bump()
        } else {
            Err(self.unexpected(vec![label]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    /// A leading minus negates the whole product, so `-1/x^2` reads as
    /// `-(1/x^2)`.
    fn term(&mut self) -> Result<Expr, ParseError> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut lhs = self.power()?;
        loop {
            let op = match self.tok {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.tok == Tok::Op('^') {
            self.bump()?;
            let exponent = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.tok.clone() {
            Tok::Num(x) => {
                self.bump()?;
                Ok(Expr::Num(x))
            }
            Tok::Op('(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect_op(')', "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.offset;
                self.bump()?;
                if self.tok == Tok::Op('(') {
                    let func = Func::from_name(&name).ok_or_else(|| ParseError {
                        offset: at,
                        kind: ParseErrorKind::UnknownIdentifier(name.clone()),
                    })?;
                    self.bump()?;
                    let mut args = vec![self.expr()?];
                    while self.tok == Tok::Op(',') {
                        self.bump()?;
                        args.push(self.expr()?);
                    }
                    self.expect_op(')', "`)` or `,`")?;
                    if args.len() != func.arity() {
                        return Err(ParseError {
                            offset: at,
                            kind: ParseErrorKind::WrongArity {
                                name,
                                expected: func.arity(),
                                found: args.len(),
                            },
                        });
                    }
                    return Ok(Expr::Call(func, args));
                }
                match name.as_str() {
                    "x" | "z" => {
                        let c = name.chars().next().unwrap_or('x');
                        match self.var_name {
                            Some(prev) if prev != c => Err(ParseError {
                                offset: at,
                                kind: ParseErrorKind::MixedVariables,
                            }),
                            _ => {
                                self.var_name = Some(c);
                                Ok(Expr::Var)
                            }
                        }
                    }
                    "i" => Ok(Expr::I),
                    "pi" => Ok(Expr::Pi),
                    _ => Err(ParseError {
                        offset: at,
                        kind: if Func::from_name(&name).is_some() {
                            ParseErrorKind::Syntax {
                                expected: vec!["`(`"],
                                found: self.tok.to_string(),
                            }
                        } else {
                            ParseErrorKind::UnknownIdentifier(name)
                        },
                    }),
                }
            }
            _ => Err(self.unexpected(vec!["number", "identifier", "`(`", "`-`"])),
        }
    }
}

/// Parses an expression in one free variable (`x` or `z`).
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.unexpected(vec!["operator", "end of input"]));
    }
    Ok(e)
}
