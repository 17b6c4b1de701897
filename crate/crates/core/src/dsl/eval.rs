//! Evaluator: expressions to truncated series at a requested order.

use std::sync::Arc;

use super::{Expr, MonoExpr};
use crate::appell::{appell_m, dn_lhs, DnSpec};
use crate::cyclotomic::CycloField;
use crate::error::{Error, Result};
use crate::mock;
use crate::series::QSeries;
use crate::theta::{theta, theta_shorthand, Monomial, ThetaKind};

/// Resolve a source-language monomial against the configured field.
pub fn resolve_monomial(m: &MonoExpr, field: &CycloField) -> Result<Monomial> {
    let k = field.k() as i64;
    let mut j = 0i64;
    if m.neg {
        j += k / 2;
    }
    if m.w_pow != 0 {
        if k % 3 != 0 {
            return Err(Error::OmegaUnavailable { k: field.k() });
        }
        j += m.w_pow * (k / 3);
    }
    j += m.zeta_pow;
    Ok(Monomial::new(field, j, m.q_pow))
}

/// Evaluate `expr` over Q(zeta_K) with target truncation `order`.
///
/// The returned window is sound but can be narrower than `order` when
/// divisions shift precision; callers that need the full order re-evaluate
/// at a widened order (see the verifier).
pub fn evaluate(expr: &Expr, field: &Arc<CycloField>, order: i64) -> Result<QSeries> {
    match expr {
        Expr::Rational(r) => Ok(QSeries::constant(
            field,
            field.from_rational(r.clone()),
            order,
        )),
        Expr::Omega => {
            let w = field.omega()?;
            Ok(QSeries::constant(field, w, order))
        }
        Expr::Zeta(j) => Ok(QSeries::constant(field, field.root_power(*j), order)),
        Expr::QPow(k) => Ok(QSeries::monomial(field, field.one(), *k, order)),
        Expr::Neg(e) => Ok(evaluate(e, field, order)?.neg()),
        Expr::Add(a, b) => Ok(evaluate(a, field, order)?.add(&evaluate(b, field, order)?)),
        Expr::Sub(a, b) => Ok(evaluate(a, field, order)?.sub(&evaluate(b, field, order)?)),
        Expr::Mul(a, b) => Ok(evaluate(a, field, order)?.mul(&evaluate(b, field, order)?)),
        Expr::Div(a, b) => {
            let num = evaluate(a, field, order)?;
            let den = evaluate(b, field, order)?;
            let inv = den.invert().map_err(|e| e.at(b.to_string()))?;
            Ok(num.mul(&inv))
        }
        Expr::Pow(base, n) => {
            let b = evaluate(base, field, order)?;
            b.pow(*n).map_err(|e| e.at(expr.to_string()))
        }
        Expr::ThetaAM { bar, a, m } => {
            let kind = if *bar { ThetaKind::Bar } else { ThetaKind::Plain };
            theta_shorthand(field, kind, *a, *m, order).map_err(|e| e.at(expr.to_string()))
        }
        Expr::Eta(m) => {
            theta_shorthand(field, ThetaKind::Eta, 0, *m, order).map_err(|e| e.at(expr.to_string()))
        }
        Expr::Theta { x, base } => {
            let xm = resolve_monomial(x, field)?;
            let bm = resolve_monomial(base, field)?;
            theta(field, xm, bm, order).map_err(|e| e.at(expr.to_string()))
        }
        Expr::AppellM { x, z, base } => {
            let xm = resolve_monomial(x, field)?;
            let zm = resolve_monomial(z, field)?;
            let bm = resolve_monomial(base, field)?;
            appell_m(field, xm, zm, bm, order).map_err(|e| e.at(expr.to_string()))
        }
        Expr::Dn { n, x, z, zp, base } => {
            let spec = DnSpec {
                n: *n,
                x: resolve_monomial(x, field)?,
                z: resolve_monomial(z, field)?,
                zprime: resolve_monomial(zp, field)?,
                base: resolve_monomial(base, field)?,
            };
            dn_lhs(field, &spec, order).map_err(|e| e.at(expr.to_string()))
        }
        Expr::Mock { f, arg } => {
            let m = resolve_monomial(arg, field)?;
            if m.d() < 1 {
                return Err(Error::BadSubstitution { t: m.d() }.at(expr.to_string()));
            }
            mock::mock_substituted(field, *f, m.j(), m.d(), order)
                .map_err(|e| e.at(expr.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn field12() -> Arc<CycloField> {
        CycloField::new(12).unwrap()
    }

    fn eval(src: &str, order: i64) -> QSeries {
        let f = field12();
        evaluate(&parse(src).unwrap(), &f, order).unwrap()
    }

    #[test]
    fn shorthand_identity_tb01() {
        let a = eval("Tb(0,1)", 50);
        let b = eval("2*Tb(1,4)", 50);
        assert!(a.residual(&b).unwrap().is_zero());
    }

    #[test]
    fn q_zero_is_one() {
        let f = field12();
        let one = eval("q^0", 20);
        assert_eq!(one.coeff(0), f.one());
        assert_eq!(one.iter().count(), 1);
    }

    #[test]
    fn omega_filter_on_mock_function() {
        // psi6(w*q) - psi6(w^2*q) kills every exponent divisible by 3 and
        // keeps the others scaled by +-(w - w^2).
        let f = field12();
        let s = eval("psi6(w*q) - psi6(w^2*q)", 60);
        let plain = crate::mock::mock_eulerian(&f, crate::mock::MockFunction::Psi6, 60);
        let w = f.omega().unwrap();
        let unit = f.sub(&w, &f.mul(&w, &w));
        for e in 0..s.prec() {
            let expected = match e.rem_euclid(3) {
                0 => f.zero(),
                1 => f.mul(&plain.coeff(e), &unit),
                _ => f.neg(&f.mul(&plain.coeff(e), &unit)),
            };
            assert_eq!(s.coeff(e), expected, "exponent {}", e);
        }
    }

    #[test]
    fn evaluation_is_compositional() {
        let f = field12();
        let a = parse("T(1,3)").unwrap();
        let b = parse("Tb(2,5)").unwrap();
        let prod = parse("T(1,3)*Tb(2,5)").unwrap();
        let lhs = evaluate(&prod, &f, 40).unwrap();
        let rhs = evaluate(&a, &f, 40)
            .unwrap()
            .mul(&evaluate(&b, &f, 40).unwrap());
        assert!(lhs.residual(&rhs).unwrap().is_zero());
    }

    #[test]
    fn division_by_zero_series_is_reported() {
        let f = field12();
        let e = parse("1 / (T(1,2) - T(1,2))").unwrap();
        let err = evaluate(&e, &f, 20);
        assert!(matches!(err, Err(Error::Eval { .. })));
    }

    #[test]
    fn mock_argument_must_move_toward_zero() {
        let f = field12();
        let e = parse("phi10(w)").unwrap();
        assert!(evaluate(&e, &f, 10).is_err());
    }
}
