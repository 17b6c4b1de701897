//! Pochhammer symbols and theta functions with monomial arguments.
//!
//! The argument and base of every theta function in the registry is a
//! monomial zeta_K^j q^d (signs fold in through zeta^{K/2} = -1), so the
//! engine works with the closed monomial algebra rather than general series
//! arguments.
//!
//! Theta(x; q) is computed from the bilateral sum
//!
//!   Theta(x; q) = sum_{n in Z} (-1)^n q^binom(n,2) x^n,
//!
//! which is total: it tolerates x on the zero lattice of the base, where the
//! triple-product quotient form degenerates. The product form
//! (x)_inf (q/x)_inf (q)_inf is kept as an independent cross-check in the
//! test suite.

use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::CycloField;
use crate::error::{Error, Result};
use crate::series::QSeries;

/// A term zeta_K^j q^d; the coefficient index j is kept reduced into [0, K).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    j: i64,
    d: i64,
}

impl Monomial {
    pub fn new(field: &CycloField, j: i64, d: i64) -> Monomial {
        Monomial {
            j: j.rem_euclid(field.k() as i64),
            d,
        }
    }

    /// q^d with coefficient 1.
    pub fn q_power(d: i64) -> Monomial {
        Monomial { j: 0, d }
    }

    pub fn one() -> Monomial {
        Monomial { j: 0, d: 0 }
    }

    /// Index of the root-of-unity coefficient zeta_K^j.
    pub fn j(&self) -> i64 {
        self.j
    }

    /// Exponent of q.
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn mul(&self, other: &Monomial, field: &CycloField) -> Monomial {
        Monomial::new(field, self.j + other.j, self.d + other.d)
    }

    /// Integer power, negative exponents included.
    pub fn pow(&self, n: i64, field: &CycloField) -> Monomial {
        Monomial::new(field, self.j * n, self.d * n)
    }

    pub fn neg(&self, field: &CycloField) -> Monomial {
        Monomial::new(field, self.j + field.k() as i64 / 2, self.d)
    }

    pub fn inv(&self, field: &CycloField) -> Monomial {
        self.pow(-1, field)
    }

    /// The monomial as a one-term series.
    pub fn as_series(&self, field: &Arc<CycloField>, prec: i64) -> QSeries {
        QSeries::monomial(field, field.root_power(self.j), self.d, prec)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.j, self.d) {
            (0, 0) => write!(f, "1"),
            (0, 1) => write!(f, "q"),
            (0, d) => write!(f, "q^{}", d),
            (j, 0) => write!(f, "zeta^{}", j),
            (j, 1) => write!(f, "zeta^{}*q", j),
            (j, d) => write!(f, "zeta^{}*q^{}", j, d),
        }
    }
}

/// Length of a Pochhammer product.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PochLen {
    Finite(u32),
    Infinite,
}

/// The q-Pochhammer symbol (x; base)_n = prod_{i=0}^{n-1} (1 - base^i x),
/// truncated at `order`.
///
/// For the infinite product the factor exponents x.d + i*base.d must
/// eventually increase past any bound, so base.d >= 1 and x.d >= 0 are
/// required; anything else is a divergent product.
pub fn pochhammer(
    field: &Arc<CycloField>,
    x: Monomial,
    base: Monomial,
    n: PochLen,
    order: i64,
) -> Result<QSeries> {
    let mut acc = QSeries::one(field, order);
    match n {
        PochLen::Finite(n) => {
            for i in 0..n as i64 {
                let e = x.d + i * base.d;
                if e >= acc.prec() {
                    continue; // factor is 1 within the window
                }
                let c = field.root_power(x.j + i * base.j);
                acc = acc.mul_one_minus(&c, e);
            }
        }
        PochLen::Infinite => {
            if base.d < 1 || x.d < 0 {
                return Err(Error::DivergentProduct {
                    detail: format!(
                        "start at q^{} with step q^{} do not increase to infinity",
                        x.d, base.d
                    ),
                });
            }
            let mut i = 0i64;
            loop {
                let e = x.d + i * base.d;
                if e >= order {
                    break;
                }
                let c = field.root_power(x.j + i * base.j);
                acc = acc.mul_one_minus(&c, e);
                i += 1;
            }
        }
    }
    Ok(acc)
}

/// Theta(x; base) via the bilateral sum sum_n (-1)^n base^binom(n,2) x^n,
/// truncated at `order`. The n-range expands outward from 0 and stops in
/// each direction once the term exponent is past the order and growing;
/// the exponent is convex in n, so that is sound.
pub fn theta(field: &Arc<CycloField>, x: Monomial, base: Monomial, order: i64) -> Result<QSeries> {
    if base.d < 1 {
        return Err(Error::BadThetaBase { d: base.d });
    }
    let exponent = |n: i64| base.d * (n * (n - 1) / 2) + x.d * n;
    let mut terms: Vec<(i64, crate::cyclotomic::CycloNum)> = Vec::new();
    let mut push_term = |n: i64| {
        let e = exponent(n);
        if e < order {
            let j = base.j * (n * (n - 1) / 2) + x.j * n;
            let mut c = field.root_power(j);
            if n.rem_euclid(2) == 1 {
                c = field.neg(&c);
            }
            terms.push((e, c));
        }
    };

    // upward direction (n >= 0)
    let mut n = 0i64;
    loop {
        let e = exponent(n);
        if e >= order && exponent(n + 1) >= e {
            break;
        }
        push_term(n);
        n += 1;
    }
    // downward direction (n <= -1)
    let mut n = -1i64;
    loop {
        let e = exponent(n);
        if e >= order && exponent(n - 1) >= e {
            break;
        }
        push_term(n);
        n -= 1;
    }

    Ok(QSeries::from_terms(field, &terms, order))
}

/// The shorthand kinds Theta_{a,m}, Thetabar_{a,m}, and Theta_m.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThetaKind {
    /// Theta_{a,m} = Theta(q^a; q^m)
    Plain,
    /// Thetabar_{a,m} = Theta(-q^a; q^m)
    Bar,
    /// Theta_m = prod_{i>=1} (1 - q^{mi})
    Eta,
}

/// Expand one of the theta shorthands. `a` is ignored for the `Eta` kind.
pub fn theta_shorthand(
    field: &Arc<CycloField>,
    kind: ThetaKind,
    a: i64,
    m: i64,
    order: i64,
) -> Result<QSeries> {
    if m < 1 {
        return Err(Error::BadThetaBase { d: m });
    }
    match kind {
        ThetaKind::Plain => theta(field, Monomial::q_power(a), Monomial::q_power(m), order),
        ThetaKind::Bar => theta(
            field,
            Monomial::new(field, field.k() as i64 / 2, a),
            Monomial::q_power(m),
            order,
        ),
        ThetaKind::Eta => pochhammer(
            field,
            Monomial::q_power(m),
            Monomial::q_power(m),
            PochLen::Infinite,
            order,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycloField;
    use crate::testing::random_monomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field12() -> Arc<CycloField> {
        CycloField::new(12).unwrap()
    }

    /// Independent oracle: expand prod_{i>=1}(1 - q^i) with plain integer
    /// vectors, no QSeries machinery.
    fn naive_euler_product(order: usize) -> Vec<i64> {
        let mut v = vec![0i64; order];
        v[0] = 1;
        for i in 1..order {
            // multiply by (1 - q^i)
            for e in (i..order).rev() {
                let t = v[e - i];
                v[e] -= t;
            }
        }
        v
    }

    #[test]
    fn euler_product_matches_pentagonal_oracle() {
        let f = field12();
        let order = 50usize;
        let p = pochhammer(
            &f,
            Monomial::q_power(1),
            Monomial::q_power(1),
            PochLen::Infinite,
            order as i64,
        )
        .unwrap();
        let oracle = naive_euler_product(order);
        for e in 0..order {
            assert_eq!(
                p.coeff(e as i64),
                f.from_integer(oracle[e]),
                "(q;q)_inf at q^{}",
                e
            );
        }
        // frozen prefix: 1 - q - q^2 + q^5 + q^7 + O(q^8)
        let frozen = [1i64, -1, -1, 0, 0, 1, 0, 1];
        for (e, c) in frozen.iter().enumerate() {
            assert_eq!(p.coeff(e as i64), f.from_integer(*c));
        }
    }

    #[test]
    fn pochhammer_edge_cases() {
        let f = field12();
        // (x; q)_0 = 1
        let p0 = pochhammer(
            &f,
            Monomial::q_power(3),
            Monomial::q_power(1),
            PochLen::Finite(0),
            10,
        )
        .unwrap();
        assert_eq!(p0.coeff(0), f.one());
        assert!(p0.iter().count() == 1);

        // (q; q^2)_1 = 1 - q
        let p1 = pochhammer(
            &f,
            Monomial::q_power(1),
            Monomial::q_power(2),
            PochLen::Finite(1),
            10,
        )
        .unwrap();
        assert_eq!(p1.coeff(0), f.one());
        assert_eq!(p1.coeff(1), f.from_integer(-1));

        // divergent infinite products are rejected
        assert!(pochhammer(
            &f,
            Monomial::q_power(-1),
            Monomial::q_power(1),
            PochLen::Infinite,
            10
        )
        .is_err());
        assert!(pochhammer(
            &f,
            Monomial::q_power(1),
            Monomial::q_power(0),
            PochLen::Infinite,
            10
        )
        .is_err());
    }

    #[test]
    fn theta_q_base_q3_is_euler_series() {
        // Theta(q; q^3) = (q;q)_inf by Euler's pentagonal number theorem.
        let f = field12();
        let t = theta(&f, Monomial::q_power(1), Monomial::q_power(3), 13).unwrap();
        let expected = [1i64, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1];
        for (e, c) in expected.iter().enumerate() {
            assert_eq!(t.coeff(e as i64), f.from_integer(*c), "at q^{}", e);
        }
    }

    #[test]
    fn theta_vanishes_on_zero_lattice() {
        let f = field12();
        let t = theta(&f, Monomial::one(), Monomial::q_power(1), 40).unwrap();
        assert!(t.is_zero_on_window());
        let t2 = theta(&f, Monomial::q_power(5), Monomial::q_power(1), 40).unwrap();
        assert!(t2.is_zero_on_window());
    }

    #[test]
    fn theta_with_negative_base_coefficient() {
        // Theta(-q^2; -q^10) = sum (-1)^binom(n,2) q^{10 binom(n,2) + 2n}
        let f = field12();
        let order = 60i64;
        let t = theta(
            &f,
            Monomial::new(&f, 6, 2),
            Monomial::new(&f, 6, 10),
            order,
        )
        .unwrap();
        let mut expected = vec![0i64; order as usize];
        for n in -10i64..=10 {
            let e = 10 * (n * (n - 1) / 2) + 2 * n;
            if e >= 0 && e < order {
                // (-1)^n * (-1)^binom(n,2) * (-1)^n = (-1)^binom(n,2)
                let sign = if (n * (n - 1) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
                expected[e as usize] += sign;
            }
        }
        for e in 0..order {
            assert_eq!(t.coeff(e), f.from_integer(expected[e as usize]), "at q^{}", e);
        }
    }

    #[test]
    fn triple_product_cross_check() {
        // Theta(x; base) = (x)_inf (base/x)_inf (base)_inf for 0 < x.d < base.d
        let f = field12();
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        let order = 120i64;
        for _ in 0..10 {
            let base = random_monomial(&f, &mut rng, 2, 6);
            let xd = rng_range(&mut rng, 1, base.d() - 1);
            let x = random_monomial(&f, &mut rng, xd, xd);
            let sum_side = theta(&f, x, base, order).unwrap();
            let p1 = pochhammer(&f, x, base, PochLen::Infinite, order).unwrap();
            let p2 = pochhammer(
                &f,
                base.mul(&x.inv(&f), &f),
                base,
                PochLen::Infinite,
                order,
            )
            .unwrap();
            let p3 = pochhammer(&f, base, base, PochLen::Infinite, order).unwrap();
            let prod_side = p1.mul(&p2).mul(&p3);
            assert!(
                sum_side.residual(&prod_side).unwrap().is_zero(),
                "triple product failed for x={}, base={}",
                x,
                base
            );
        }
    }

    fn rng_range(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
        use rand::Rng;
        rng.gen_range(lo..=hi.max(lo))
    }

    #[test]
    fn shorthands() {
        let f = field12();
        let order = 50i64;
        // Theta_{1,2} = Theta(q; q^2)
        let s = theta_shorthand(&f, ThetaKind::Plain, 1, 2, order).unwrap();
        let t = theta(&f, Monomial::q_power(1), Monomial::q_power(2), order).unwrap();
        assert!(s.residual(&t).unwrap().is_zero());

        // Theta_1 is the Euler product
        let e1 = theta_shorthand(&f, ThetaKind::Eta, 0, 1, order).unwrap();
        let frozen = [1i64, -1, -1, 0, 0, 1, 0, 1];
        for (e, c) in frozen.iter().enumerate() {
            assert_eq!(e1.coeff(e as i64), f.from_integer(*c));
        }

        // Thetabar_{0,1} = 2 Thetabar_{1,4}
        let b01 = theta_shorthand(&f, ThetaKind::Bar, 0, 1, order).unwrap();
        let b14 = theta_shorthand(&f, ThetaKind::Bar, 1, 4, order).unwrap();
        let rhs = b14.scalar_mul(&f.from_integer(2));
        assert!(b01.residual(&rhs).unwrap().is_zero());
    }

    #[test]
    fn monomial_algebra() {
        let f = field12();
        let a = Monomial::new(&f, 3, 2);
        let b = Monomial::new(&f, 10, -1);
        assert_eq!(a.mul(&b, &f), Monomial::new(&f, 1, 1));
        assert_eq!(Monomial::q_power(2).neg(&f), Monomial::new(&f, 6, 2));
        // (-q)^3 = -q^3
        assert_eq!(
            Monomial::q_power(1).neg(&f).pow(3, &f),
            Monomial::new(&f, 6, 3)
        );
        assert_eq!(a.mul(&a.inv(&f), &f), Monomial::one());
    }
}
