//! A small expression language for q-series identities.
//!
//! Identities are stored as text and evaluated to truncated series, so new
//! identities can be ingested without recompilation. The vocabulary mirrors
//! the shorthand the registry entries are written in:
//!
//! - `T(a,m)`, `Tb(a,m)`, `E(m)`: the theta shorthands Theta_{a,m},
//!   Thetabar_{a,m}, Theta_m
//! - `theta(x; base)`: the two-argument theta with monomial argument and base
//! - `m(x; z; base)`: the Appell sum
//! - `D2(x; z; zp; base)`, `D3(x; z; zp; base)`: the D_n combinations
//! - the 19 mock theta function names applied to a monomial, e.g.
//!   `psi10(w*q)`, `chi10(q^8)`, `A2(-q)`
//! - `q`, `w` (the primitive third root of unity), `zeta` (the configured
//!   primitive K-th root), rational literals, and `+ - * / ^`
//!
//! `^` binds tightest, then unary minus, then `* /`, then `+ -`. Monomial
//! arguments follow the sub-grammar `[-] [w^j|zeta^j] [q^k]` with `*` between
//! parts, e.g. `-w^2*q^3`.

mod eval;
mod lexer;
mod parser;

pub use eval::evaluate;
pub use parser::parse;

use crate::cyclotomic::Rat;
use crate::mock::MockFunction;
use num_traits::Signed;
use std::fmt;

/// A monomial written in the source language: sign, power of w, power of
/// zeta, power of q. Resolved against the configured field at evaluation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MonoExpr {
    pub neg: bool,
    pub w_pow: i64,
    pub zeta_pow: i64,
    pub q_pow: i64,
}

impl MonoExpr {
    pub fn one() -> MonoExpr {
        MonoExpr {
            neg: false,
            w_pow: 0,
            zeta_pow: 0,
            q_pow: 0,
        }
    }

    pub fn q_power(k: i64) -> MonoExpr {
        MonoExpr {
            q_pow: k,
            ..MonoExpr::one()
        }
    }
}

impl fmt::Display for MonoExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.neg {
            write!(f, "-")?;
        }
        let mut parts: Vec<String> = Vec::new();
        match self.w_pow {
            0 => {}
            1 => parts.push("w".into()),
            j => parts.push(format!("w^{}", j)),
        }
        match self.zeta_pow {
            0 => {}
            1 => parts.push("zeta".into()),
            j => parts.push(format!("zeta^{}", j)),
        }
        match self.q_pow {
            0 => {}
            1 => parts.push("q".into()),
            k => parts.push(format!("q^{}", k)),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Abstract syntax of the expression language.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    /// A non-negative rational literal (negative values arise through Neg).
    Rational(Rat),
    /// The primitive third root of unity.
    Omega,
    /// zeta^j, a power of the configured primitive K-th root.
    Zeta(i64),
    /// q^k.
    QPow(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer power of a subexpression.
    Pow(Box<Expr>, i64),
    /// T(a,m) or Tb(a,m).
    ThetaAM { bar: bool, a: i64, m: i64 },
    /// E(m).
    Eta(i64),
    /// theta(x; base).
    Theta { x: MonoExpr, base: MonoExpr },
    /// m(x; z; base).
    AppellM {
        x: MonoExpr,
        z: MonoExpr,
        base: MonoExpr,
    },
    /// D2/D3(x; z; zp; base).
    Dn {
        n: u32,
        x: MonoExpr,
        z: MonoExpr,
        zp: MonoExpr,
        base: MonoExpr,
    },
    /// A mock theta function applied to a monomial, e.g. psi10(w*q).
    Mock { f: MockFunction, arg: MonoExpr },
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::QPow(k) if *k != 1 => 4,
            Expr::Zeta(j) if *j != 1 => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
        let prec = self.precedence();
        let need_parens = prec < parent;
        if need_parens {
            write!(f, "(")?;
        }
        match self {
            Expr::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())?;
                } else {
                    // non-integer literals print as a quotient, which parses
                    // back as a division of integers
                    write!(f, "{}/{}", r.numer(), r.denom())?;
                }
            }
            Expr::Omega => write!(f, "w")?,
            Expr::Zeta(1) => write!(f, "zeta")?,
            Expr::Zeta(j) => write!(f, "zeta^{}", j)?,
            Expr::QPow(1) => write!(f, "q")?,
            Expr::QPow(k) => write!(f, "q^{}", k)?,
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.fmt_prec(f, 4)?;
            }
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Pow(base, n) => {
                base.fmt_prec(f, 5)?;
                write!(f, "^{}", n)?;
            }
            Expr::ThetaAM { bar, a, m } => {
                write!(f, "{}({},{})", if *bar { "Tb" } else { "T" }, a, m)?;
            }
            Expr::Eta(m) => write!(f, "E({})", m)?,
            Expr::Theta { x, base } => write!(f, "theta({}; {})", x, base)?,
            Expr::AppellM { x, z, base } => write!(f, "m({}; {}; {})", x, z, base)?,
            Expr::Dn { n, x, z, zp, base } => {
                write!(f, "D{}({}; {}; {}; {})", n, x, z, zp, base)?;
            }
            Expr::Mock { f: func, arg } => write!(f, "{}({})", func.name(), arg)?,
        }
        if need_parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // a negative rational literal would not re-parse as a literal
        debug_assert!(
            !matches!(self, Expr::Rational(r) if r.is_negative()),
            "negative rationals must be wrapped in Neg"
        );
        self.fmt_prec(f, 0)
    }
}
