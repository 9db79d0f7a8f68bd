//! Target functions given as text.
//!
//! A small expression language over one variable (`x` or `z`) with the
//! constants `i` and `pi`, the operators `+ - * / ^` and the functions
//! `exp log sqrt sin cos tan tanh abs re im conj min max`, plus a catalog of
//! named test functions.

mod catalog;
mod eval;
mod parse;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

pub use catalog::{catalog, lookup, CatalogEntry};
pub use parse::{parse, ParseError, ParseErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Tanh,
    Abs,
    Re,
    Im,
    Conj,
    Min,
    Max,
}

impl Func {
    const ALL: [Func; 13] = [
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Tanh,
        Func::Abs,
        Func::Re,
        Func::Im,
        Func::Conj,
        Func::Min,
        Func::Max,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Tanh => "tanh",
            Func::Abs => "abs",
            Func::Re => "re",
            Func::Im => "im",
            Func::Conj => "conj",
            Func::Min => "min",
            Func::Max => "max",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Min | Func::Max => 2,
            _ => 1,
        }
    }
}

/// Expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// The imaginary unit.
    I,
    Pi,
    Var,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("`{func}` needs real arguments, got {arg}")]
    DomainError { func: &'static str, arg: Complex64 },
}

impl Expr {
    pub fn eval(&self, v: Complex64) -> Result<Complex64, EvalError> {
        Ok(match self {
            Expr::Num(x) => Complex64::new(*x, 0.0),
            Expr::I => Complex64::new(0.0, 1.0),
            Expr::Pi => Complex64::new(std::f64::consts::PI, 0.0),
            Expr::Var => v,
            Expr::Neg(e) => eval::neg(e.eval(v)?),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(v)?, b.eval(v)?);
                match op {
                    BinOp::Add => eval::add(a, b),
                    BinOp::Sub => eval::sub(a, b),
                    BinOp::Mul => eval::mul(a, b),
                    BinOp::Div => eval::div(a, b),
                    BinOp::Pow => eval::pow(a, b),
                }
            }
            Expr::Call(func, args) => {
                let a = args[0].eval(v)?;
                match func {
                    Func::Exp => eval::exp(a),
                    Func::Log => eval::log(a),
                    Func::Sqrt => eval::sqrt(a),
                    Func::Sin => eval::sin(a),
                    Func::Cos => eval::cos(a),
                    Func::Tan => eval::tan(a),
                    Func::Tanh => eval::tanh(a),
                    Func::Abs => eval::abs(a),
                    Func::Re => Complex64::new(a.re, 0.0),
                    Func::Im => Complex64::new(a.im, 0.0),
                    Func::Conj => a.conj(),
                    Func::Min | Func::Max => {
                        let b = args[1].eval(v)?;
                        for arg in [a, b] {
                            if arg.im != 0.0 {
                                return Err(EvalError::DomainError {
                                    func: func.name(),
                                    arg,
                                });
                            }
                        }
                        let x = if *func == Func::Min {
                            a.re.min(b.re)
                        } else {
                            a.re.max(b.re)
                        };
                        Complex64::new(x, 0.0)
                    }
                }
            }
        })
    }
}

/// Fully parenthesized form; parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x:?}"),
            Expr::I => write!(f, "i"),
            Expr::Pi => write!(f, "pi"),
            Expr::Var => write!(f, "x"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => {
                let sym = match op {
                    BinOp::Add => '+',
                    BinOp::Sub => '-',
                    BinOp::Mul => '*',
                    BinOp::Div => '/',
                    BinOp::Pow => '^',
                };
                write!(f, "({a} {sym} {b})")
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A target function: parsed text, a catalog entry, or a native closure.
#[derive(Clone)]
pub enum FunctionSpec {
    Expr { text: String, expr: Expr },
    Catalog { entry: &'static CatalogEntry, expr: Expr },
    Native(Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>),
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Expr { text, .. } => write!(f, "Expr({text:?})"),
            FunctionSpec::Catalog { entry, .. } => write!(f, "Catalog({:?})", entry.name),
            FunctionSpec::Native(_) => write!(f, "Native"),
        }
    }
}

impl FunctionSpec {
    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        Ok(FunctionSpec::Expr {
            text: text.to_string(),
            expr: parse(text)?,
        })
    }

    pub fn from_catalog(name: &str) -> Option<Self> {
        let entry = lookup(name)?;
        let expr = parse(entry.expr).expect("catalog expressions parse");
        Some(FunctionSpec::Catalog { entry, expr })
    }

    pub fn native(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        FunctionSpec::Native(Arc::new(f))
    }

    pub fn try_eval(&self, z: Complex64) -> Result<Complex64, EvalError> {
        match self {
            FunctionSpec::Expr { expr, .. } | FunctionSpec::Catalog { expr, .. } => expr.eval(z),
            FunctionSpec::Native(f) => Ok(f(z)),
        }
    }

    /// Evaluation with domain errors mapped to NaN.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.try_eval(z)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    pub fn label(&self) -> String {
        match self {
            FunctionSpec::Expr { text, .. } => text.clone(),
            FunctionSpec::Catalog { entry, .. } => entry.name.to_string(),
            FunctionSpec::Native(_) => "<native>".to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(text: &str, z: Complex64) -> Complex64 {
        parse(text).unwrap().eval(z).unwrap()
    }

    #[test]
    fn ieee_limit_at_zero() {
        assert_eq!(at("exp(-1/x^2)", Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn sqrt_branch_at_one() {
        assert_eq!(at("sqrt(1-z)", Complex64::new(1.0, 0.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn two_branch_function_at_origin() {
        let a = Complex64::new(-1.0, 10.0);
        let direct = 1.0 / ((-a).sqrt() * (-a.conj()).sqrt());
        let v = at("1/(sqrt(z-(-1+10*i))*sqrt(z-(-1-10*i)))", Complex64::new(0.0, 0.0));
        assert!((v - direct).norm() < 1e-16, "{v} vs {direct}");
        assert!((v.norm() - 1.0 / a.norm()).abs() < 1e-16);
    }

    #[test]
    fn min_max_reject_complex() {
        let e = parse("max(0, x)").unwrap();
        assert_eq!(e.eval(Complex64::new(-2.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
        assert!(matches!(
            e.eval(Complex64::new(1.0, 1.0)),
            Err(EvalError::DomainError { func: "max", .. })
        ));
        let spec = FunctionSpec::from_text("min(x, 1)").unwrap();
        assert!(spec.eval(Complex64::new(0.0, 1.0)).re.is_nan());
    }

    #[test]
    fn constants_and_parts() {
        let z = Complex64::new(0.3, -0.4);
        assert_eq!(at("re(z) + i*im(z)", z), z);
        assert_eq!(at("conj(z)", z), z.conj());
        assert!((at("abs(z)", z).re - 0.5).abs() < 1e-16);
        assert!((at("cos(pi)", z).re + 1.0).abs() < 1e-16);
    }

    #[test]
    fn display_reparses() {
        for text in ["-x^2", "exp(-1/x^2)", "2^-3^2", "max(0, x - 1e-3)", "1/(1+exp(1000*(x+0.5)))"] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{text} -> {e}");
        }
    }
}
