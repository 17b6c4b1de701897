//! Recursive-descent parser with the conventional precedence ladder:
//! `^` binds tightest, then unary minus, then `* /`, then `+ -`.

use super::lexer::{lex, Token, TokenKind};
use super::{Expr, MonoExpr};
use crate::cyclotomic::Rat;
use crate::error::{Error, Result};
use crate::mock::MockFunction;
use num_bigint::BigInt;

pub fn parse(src: &str) -> Result<Expr> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let expr = p.parse_additive()?;
    p.expect_eof()?;
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Syntax {
            col: t.col,
            expected: expected.to_string(),
            found: t.kind.describe(),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<Token> {
        if self.peek().kind == kind {
            Ok(self.next())
        } else {
            Err(self.error(expected))
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if self.peek().kind == TokenKind::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn parse_additive(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_multiplicative()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.next();
                    let rhs = self.parse_multiplicative()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                TokenKind::Minus => {
                    self.next();
                    let rhs = self.parse_multiplicative()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_multiplicative(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_unary()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.next();
                    let rhs = self.parse_unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                TokenKind::Slash => {
                    self.next();
                    let rhs = self.parse_unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        if self.peek().kind == TokenKind::Minus {
            self.next();
            let inner = self.parse_unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.parse_power()
    }

    /// A signed integer literal (for exponents and shorthand arguments).
    fn parse_signed_int(&mut self) -> Result<i64> {
        let negative = if self.peek().kind == TokenKind::Minus {
            self.next();
            true
        } else {
            false
        };
        match self.next().kind {
            TokenKind::Int(n) => Ok(if negative { -n } else { n }),
            _ => {
                self.pos -= 1;
                Err(self.error("an integer"))
            }
        }
    }

    fn parse_power(&mut self) -> Result<Expr> {
        let base = self.parse_atom()?;
        if self.peek().kind == TokenKind::Caret {
            self.next();
            let n = self.parse_signed_int()?;
            // fold powers of the base symbols into their monomial nodes
            return Ok(match base {
                Expr::QPow(1) => Expr::QPow(n),
                Expr::Zeta(1) => Expr::Zeta(n),
                other => Expr::Pow(Box::new(other), n),
            });
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        match self.peek().kind.clone() {
            TokenKind::Int(n) => {
                self.next();
                Ok(Expr::Rational(Rat::from(BigInt::from(n))))
            }
            TokenKind::LParen => {
                self.next();
                let inner = self.parse_additive()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::Ident(name) => {
                let tok = self.next();
                self.parse_ident(name, tok.col)
            }
            _ => Err(self.error("a literal, `(`, or a function name")),
        }
    }

    fn parse_ident(&mut self, name: String, col: usize) -> Result<Expr> {
        match name.as_str() {
            "q" => return Ok(Expr::QPow(1)),
            "w" => return Ok(Expr::Omega),
            "zeta" => return Ok(Expr::Zeta(1)),
            _ => {}
        }
        // everything else is a function application
        match name.as_str() {
            "T" | "Tb" => {
                let (a, m) = self.int_pair(&name)?;
                Ok(Expr::ThetaAM {
                    bar: name == "Tb",
                    a,
                    m,
                })
            }
            "E" => {
                self.expect(TokenKind::LParen, "`(`")?;
                let m = self.parse_signed_int()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(Expr::Eta(m))
            }
            "theta" => {
                let args = self.monomial_args(&name, 2)?;
                Ok(Expr::Theta {
                    x: args[0],
                    base: args[1],
                })
            }
            "m" => {
                let args = self.monomial_args(&name, 3)?;
                Ok(Expr::AppellM {
                    x: args[0],
                    z: args[1],
                    base: args[2],
                })
            }
            "D2" | "D3" => {
                let n = if name == "D2" { 2 } else { 3 };
                let args = self.monomial_args(&name, 4)?;
                Ok(Expr::Dn {
                    n,
                    x: args[0],
                    z: args[1],
                    zp: args[2],
                    base: args[3],
                })
            }
            other => {
                if let Some(f) = MockFunction::from_name(other) {
                    let args = self.monomial_args(other, 1)?;
                    Ok(Expr::Mock { f, arg: args[0] })
                } else {
                    Err(Error::Syntax {
                        col,
                        expected: "a known function name (T, Tb, E, theta, m, D2, D3, or a mock theta name)".into(),
                        found: format!("identifier `{}`", other),
                    })
                }
            }
        }
    }

    fn int_pair(&mut self, name: &str) -> Result<(i64, i64)> {
        self.expect(TokenKind::LParen, "`(`")?;
        let a = self.parse_signed_int()?;
        if self.peek().kind != TokenKind::Comma {
            return Err(Error::Arity {
                col: self.peek().col,
                name: name.to_string(),
                expected: 2,
            });
        }
        self.next();
        let m = self.parse_signed_int()?;
        self.expect(TokenKind::RParen, "`)`")?;
        Ok((a, m))
    }

    /// Parse `(mono; mono; ...)` with exactly `count` semicolon-separated
    /// monomials.
    fn monomial_args(&mut self, name: &str, count: usize) -> Result<Vec<MonoExpr>> {
        self.expect(TokenKind::LParen, "`(`")?;
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            out.push(self.parse_monomial(name)?);
            let want = if i + 1 < count {
                TokenKind::Semi
            } else {
                TokenKind::RParen
            };
            if self.peek().kind != want {
                return Err(self.arg_list_error(name, count));
            }
            self.next();
        }
        Ok(out)
    }

    /// A monomial parsed cleanly but the argument list did not continue as
    /// expected: expression syntax in a monomial slot is a non-monomial
    /// argument, anything else is an arity problem.
    fn arg_list_error(&self, name: &str, count: usize) -> Error {
        let t = self.peek();
        match t.kind {
            TokenKind::Plus
            | TokenKind::Minus
            | TokenKind::Slash
            | TokenKind::Caret
            | TokenKind::Int(_)
            | TokenKind::Ident(_)
            | TokenKind::LParen => Error::NonMonomialArg {
                col: t.col,
                name: name.to_string(),
            },
            TokenKind::Eof => Error::Syntax {
                col: t.col,
                expected: "`;` or `)`".into(),
                found: t.kind.describe(),
            },
            _ => Error::Arity {
                col: t.col,
                name: name.to_string(),
                expected: count,
            },
        }
    }

    /// The monomial sub-grammar: `[-] part (* part)*` where each part is
    /// `1`, `w[^j]`, `zeta[^j]`, or `q[^k]`.
    fn parse_monomial(&mut self, name: &str) -> Result<MonoExpr> {
        let col = self.peek().col;
        let mut mono = MonoExpr::one();
        if self.peek().kind == TokenKind::Minus {
            self.next();
            mono.neg = true;
        }
        loop {
            match self.peek().kind.clone() {
                TokenKind::Int(1) => {
                    self.next();
                }
                TokenKind::Ident(id) if id == "q" || id == "w" || id == "zeta" => {
                    self.next();
                    let mut power = 1i64;
                    if self.peek().kind == TokenKind::Caret {
                        self.next();
                        power = self.parse_signed_int()?;
                    }
                    match id.as_str() {
                        "q" => mono.q_pow += power,
                        "w" => mono.w_pow += power,
                        _ => mono.zeta_pow += power,
                    }
                }
                _ => {
                    return Err(Error::NonMonomialArg {
                        col,
                        name: name.to_string(),
                    });
                }
            }
            if self.peek().kind == TokenKind::Star {
                self.next();
                continue;
            }
            break;
        }
        Ok(mono)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_smoke() {
        let e = parse("T(1,2)^2 / E(1)").unwrap();
        assert_eq!(
            e,
            Expr::Div(
                Box::new(Expr::Pow(
                    Box::new(Expr::ThetaAM {
                        bar: false,
                        a: 1,
                        m: 2
                    }),
                    2
                )),
                Box::new(Expr::Eta(1))
            )
        );
    }

    #[test]
    fn appell_node() {
        let e = parse("m(1; -q; q^3)").unwrap();
        assert_eq!(
            e,
            Expr::AppellM {
                x: MonoExpr::one(),
                z: MonoExpr {
                    neg: true,
                    w_pow: 0,
                    zeta_pow: 0,
                    q_pow: 1
                },
                base: MonoExpr::q_power(3),
            }
        );
    }

    #[test]
    fn error_paths_are_distinct() {
        // unterminated application: syntax error at end of input
        assert!(matches!(parse("phi10(q"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("1 +"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("T(1)"), Err(Error::Arity { .. })));
        assert!(matches!(parse("m(1; q)"), Err(Error::Arity { .. })));
        assert!(matches!(
            parse("m(1+q; q; q^2)"),
            Err(Error::NonMonomialArg { .. })
        ));
        assert!(matches!(parse("$"), Err(Error::Lex { .. })));
        assert!(matches!(parse("foo(1)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn precedence_shapes() {
        // ^ tightest, then unary minus: -q^2 is -(q^2)
        let e = parse("-q^2").unwrap();
        assert_eq!(e, Expr::Neg(Box::new(Expr::QPow(2))));
        // unary minus then *: -q*E(1) is (-(q)) * E(1) times
        let e2 = parse("-q*E(1)").unwrap();
        assert_eq!(
            e2,
            Expr::Mul(
                Box::new(Expr::Neg(Box::new(Expr::QPow(1)))),
                Box::new(Expr::Eta(1))
            )
        );
        // a - b - c associates left
        let e3 = parse("1 - 2 - 3").unwrap();
        assert!(matches!(e3, Expr::Sub(_, _)));
        // negative exponents
        let e4 = parse("q^-2 * w^2").unwrap();
        assert_eq!(
            e4,
            Expr::Mul(
                Box::new(Expr::QPow(-2)),
                Box::new(Expr::Pow(Box::new(Expr::Omega), 2))
            )
        );
    }

    #[test]
    fn mock_application() {
        let e = parse("psi10(w^2*q)").unwrap();
        assert_eq!(
            e,
            Expr::Mock {
                f: MockFunction::Psi10,
                arg: MonoExpr {
                    neg: false,
                    w_pow: 2,
                    zeta_pow: 0,
                    q_pow: 1
                }
            }
        );
        let e2 = parse("A2(-q^4)").unwrap();
        assert_eq!(
            e2,
            Expr::Mock {
                f: MockFunction::A2,
                arg: MonoExpr {
                    neg: true,
                    w_pow: 0,
                    zeta_pow: 0,
                    q_pow: 4
                }
            }
        );
    }
}
