//! Exact arithmetic in the cyclotomic field Q(zeta_K).
//!
//! Every series coefficient in the engine lives in Q(zeta_K) for a fixed even
//! K (default 12). Elements are stored densely in the power basis of
//! Q[x]/Phi_K(x) with arbitrary-precision rational coordinates, so equality
//! and the zero test are exact. K = 12 houses the two roots of unity the
//! identity registry needs: -1 = zeta_12^6 and the primitive third root
//! w = zeta_12^4.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// An element of Q(zeta_K) in the power basis of Q[x]/Phi_K(x).
///
/// The coordinate vector always has length phi(K); the representation is the
/// unique reduced form modulo the K-th cyclotomic polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloNum {
    coeffs: Vec<Rat>,
}

impl CycloNum {
    /// Exact zero test: true iff every rational coordinate is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// If the element lies in Q, return the rational part.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Power-basis coordinates (length phi(K)).
    pub fn coords(&self) -> &[Rat] {
        &self.coeffs
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                if i == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// The field Q(zeta_K): cyclotomic order, minimal polynomial, and the
/// reduction data shared by every coefficient in a run.
///
/// All arithmetic goes through the field so that operands are guaranteed to
/// live in the same extension. Mixing elements of two different fields is a
/// configuration bug and panics.
#[derive(Debug)]
pub struct CycloField {
    k: u32,
    phi: usize,
    /// Phi_K, monic, little-endian, length phi + 1.
    modulus: Vec<Rat>,
    /// reduction[d] = x^(phi + d) reduced mod Phi_K, for d in 0..phi-1.
    reduction: Vec<Vec<Rat>>,
    /// zeta_K^j for j in 0..K.
    zeta_powers: Vec<Vec<Rat>>,
}

impl CycloField {
    /// Build the field Q(zeta_K). K must be a positive even integer: the
    /// engine folds signs of monomials through -1 = zeta_K^{K/2}.
    pub fn new(k: u32) -> Result<Arc<CycloField>> {
        if k == 0 || k % 2 != 0 {
            return Err(Error::Config(format!(
                "K must be a positive even integer, got {}",
                k
            )));
        }
        let modulus = cyclotomic_polynomial(k as usize);
        let phi = modulus.len() - 1;

        // x^phi = -(lower part of Phi); higher powers by repeated shift.
        let mut reduction: Vec<Vec<Rat>> = Vec::with_capacity(phi.max(1));
        let mut row: Vec<Rat> = modulus[..phi].iter().map(|c| -c.clone()).collect();
        reduction.push(row.clone());
        for _ in 1..phi.max(1) {
            // multiply row by x, reduce the overflow term through reduction[0]
            let carry = row[phi - 1].clone();
            for i in (1..phi).rev() {
                row[i] = row[i - 1].clone();
            }
            row[0] = Rat::zero();
            if !carry.is_zero() {
                for i in 0..phi {
                    row[i] += &carry * &reduction[0][i];
                }
            }
            reduction.push(row.clone());
        }

        let mut field = CycloField {
            k,
            phi,
            modulus,
            reduction,
            zeta_powers: Vec::new(),
        };
        // zeta^j = x^j reduced; j < K. Computed by repeated multiplication.
        let mut powers = Vec::with_capacity(k as usize);
        let mut cur = field.one_coeffs();
        for _ in 0..k {
            powers.push(cur.clone());
            cur = field.mul_raw(&cur, &field.x_coeffs());
        }
        field.zeta_powers = powers;
        Ok(Arc::new(field))
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// phi(K), the degree of the extension.
    pub fn degree(&self) -> usize {
        self.phi
    }

    fn one_coeffs(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.phi];
        v[0] = Rat::one();
        v
    }

    fn x_coeffs(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.phi];
        if self.phi > 1 {
            v[1] = Rat::one();
        } else {
            // phi(K) = 1 only for K in {1, 2}; x reduces to a constant.
            v[0] = -self.modulus[0].clone();
        }
        v
    }

    pub fn zero(&self) -> CycloNum {
        CycloNum {
            coeffs: vec![Rat::zero(); self.phi],
        }
    }

    pub fn one(&self) -> CycloNum {
        CycloNum {
            coeffs: self.one_coeffs(),
        }
    }

    pub fn from_rational(&self, r: Rat) -> CycloNum {
        let mut v = vec![Rat::zero(); self.phi];
        v[0] = r;
        CycloNum { coeffs: v }
    }

    pub fn from_integer(&self, n: i64) -> CycloNum {
        self.from_rational(Rat::from(BigInt::from(n)))
    }

    /// zeta_K^j as a reduced field element; j is reduced mod K first.
    pub fn root_power(&self, j: i64) -> CycloNum {
        let j = j.rem_euclid(self.k as i64) as usize;
        CycloNum {
            coeffs: self.zeta_powers[j].clone(),
        }
    }

    /// The primitive third root of unity w = zeta_K^{K/3}. Needs 3 | K.
    pub fn omega(&self) -> Result<CycloNum> {
        if self.k % 3 != 0 {
            return Err(Error::OmegaUnavailable { k: self.k });
        }
        Ok(self.root_power(self.k as i64 / 3))
    }

    fn check(&self, a: &CycloNum) {
        assert_eq!(
            a.coeffs.len(),
            self.phi,
            "CycloNum of degree {} used with Q(zeta_{}) of degree {}: mismatched K configuration",
            a.coeffs.len(),
            self.k,
            self.phi
        );
    }

    pub fn add(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        self.check(a);
        self.check(b);
        CycloNum {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn add_assign(&self, a: &mut CycloNum, b: &CycloNum) {
        self.check(a);
        self.check(b);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
    }

    pub fn sub(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        self.check(a);
        self.check(b);
        CycloNum {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &CycloNum) -> CycloNum {
        CycloNum {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, a: &CycloNum, r: &Rat) -> CycloNum {
        CycloNum {
            coeffs: a.coeffs.iter().map(|x| x * r).collect(),
        }
    }

    pub fn mul(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        self.check(a);
        self.check(b);
        // Rational fast path: most coefficients in a run are plain rationals.
        if let Some(r) = b.as_rational() {
            if r.is_zero() {
                return self.zero();
            }
            return self.scale(a, r);
        }
        if let Some(r) = a.as_rational() {
            return self.scale(b, r);
        }
        CycloNum {
            coeffs: self.mul_raw(&a.coeffs, &b.coeffs),
        }
    }

    fn mul_raw(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let phi = self.phi;
        let mut prod = vec![Rat::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        let mut out: Vec<Rat> = prod[..phi].to_vec();
        for d in phi..2 * phi - 1 {
            if prod[d].is_zero() {
                continue;
            }
            let row = &self.reduction[d - phi];
            for i in 0..phi {
                if !row[i].is_zero() {
                    out[i] += &prod[d] * &row[i];
                }
            }
        }
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on Phi_K.
    pub fn inv(&self, a: &CycloNum) -> Result<CycloNum> {
        self.check(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero { k: self.k });
        }
        if let Some(r) = a.as_rational() {
            return Ok(self.from_rational(r.recip()));
        }
        let inv = poly_mod_inverse(&a.coeffs, &self.modulus);
        let mut coeffs = inv;
        coeffs.resize(self.phi, Rat::zero());
        Ok(CycloNum { coeffs })
    }

    /// a / b.
    pub fn div(&self, a: &CycloNum, b: &CycloNum) -> Result<CycloNum> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// a^n for n >= 0 by square-and-multiply.
    pub fn pow(&self, a: &CycloNum, mut n: u64) -> CycloNum {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// The Galois conjugate sigma_j: zeta -> zeta^j (j coprime to K).
    pub fn conjugate(&self, a: &CycloNum, j: i64) -> CycloNum {
        self.check(a);
        let mut acc = self.zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = self.scale(&self.root_power(i as i64 * j), c);
            self.add_assign(&mut acc, &term);
        }
        acc
    }
}

// ===========================================================================
// Polynomial helpers over Q (little-endian coefficient vectors)
// ===========================================================================

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Exact (quotient, remainder) of a / b with b nonzero.
fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead = bb[db].clone();
    if rem.len() <= db && !(rem.len() == 1 && db == 0) {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db || (db == 0 && rem.iter().any(|c| !c.is_zero())) {
        let dr = rem.len() - 1;
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        if c.is_zero() {
            rem.pop();
            poly_trim(&mut rem);
            if rem.len() == 1 && rem[0].is_zero() {
                break;
            }
            continue;
        }
        quot[dr - db] = c.clone();
        for i in 0..=db {
            let t = &c * &bb[i];
            rem[dr - db + i] -= t;
        }
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
        if rem.len() - 1 < db && !(rem.len() == 1 && rem[0].is_zero()) {
            break;
        }
    }
    poly_trim(&mut rem);
    (quot, rem)
}

/// Inverse of a modulo m (m irreducible over Q, a not divisible by m).
fn poly_mod_inverse(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    // extended Euclid: old_r = m, r = a
    let mut old_r = m.to_vec();
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut old_t = vec![Rat::zero()];
    let mut t = vec![Rat::one()];
    while !(r.len() == 1 && r[0].is_zero()) {
        let (q, rem) = poly_divrem(&old_r, &r);
        old_r = std::mem::replace(&mut r, rem);
        let qt = poly_mul(&q, &t);
        let mut new_t = old_t.clone();
        new_t.resize(new_t.len().max(qt.len()), Rat::zero());
        for (i, c) in qt.iter().enumerate() {
            new_t[i] -= c;
        }
        poly_trim(&mut new_t);
        old_t = std::mem::replace(&mut t, new_t);
    }
    // old_r is now a nonzero constant gcd; scale old_t by its inverse.
    debug_assert!(old_r.len() == 1 && !old_r[0].is_zero());
    let scale = old_r[0].recip();
    let (_, mut reduced) = poly_divrem(&old_t, m);
    for c in reduced.iter_mut() {
        *c *= &scale;
    }
    reduced
}

/// The n-th cyclotomic polynomial Phi_n, monic with integer coefficients,
/// computed by dividing x^n - 1 by the Phi_d for proper divisors d.
fn cyclotomic_polynomial(n: usize) -> Vec<Rat> {
    if n == 1 {
        return vec![-Rat::one(), Rat::one()];
    }
    let mut num = vec![Rat::zero(); n + 1];
    num[0] = -Rat::one();
    num[n] = Rat::one();
    let mut result = num;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            let (q, r) = poly_divrem(&result, &phi_d);
            debug_assert!(r.iter().all(|c| c.is_zero()), "Phi_{} division not exact", d);
            result = q;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field12() -> Arc<CycloField> {
        CycloField::new(12).unwrap()
    }

    fn random_element(field: &CycloField, rng: &mut ChaCha8Rng) -> CycloNum {
        let coeffs: Vec<Rat> = (0..field.degree())
            .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
            .collect();
        CycloNum { coeffs }
    }

    #[test]
    fn phi_12_is_x4_minus_x2_plus_1() {
        let f = field12();
        assert_eq!(f.degree(), 4);
        let m: Vec<i64> = vec![1, 0, -1, 0, 1];
        for (c, expect) in f.modulus.iter().zip(m) {
            assert_eq!(*c, rat(expect, 1));
        }
    }

    #[test]
    fn omega_plus_omega_squared_is_minus_one() {
        let f = field12();
        let w = f.omega().unwrap();
        let w2 = f.mul(&w, &w);
        let sum = f.add(&w, &w2);
        assert_eq!(sum, f.from_integer(-1));
    }

    #[test]
    fn one_plus_omega_plus_omega_squared_is_zero() {
        // 1 + root_power(4) + root_power(8) = 0 with K = 12.
        let f = field12();
        let sum = f.add(
            &f.add(&f.one(), &f.root_power(4)),
            &f.root_power(8),
        );
        assert!(sum.is_zero());
    }

    #[test]
    fn addition_identity_and_rationals() {
        let f = field12();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = random_element(&f, &mut rng);
        assert_eq!(f.add(&f.zero(), &x), x);
        // 1/2 + 1/3 = 5/6
        let s = f.add(&f.from_rational(rat(1, 2)), &f.from_rational(rat(1, 3)));
        assert_eq!(s, f.from_rational(rat(5, 6)));
    }

    #[test]
    fn omega_squared_in_power_basis() {
        // omega^2 = -1 - omega
        let f = field12();
        let w = f.omega().unwrap();
        let lhs = f.mul(&w, &w);
        let rhs = f.sub(&f.from_integer(-1), &w);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn minus_one_squares_to_one() {
        let f = field12();
        let m1 = f.root_power(6);
        assert_eq!(m1, f.from_integer(-1));
        assert!(f.mul(&m1, &m1).is_one());
    }

    #[test]
    fn two_omega_plus_one_squares_to_minus_three() {
        let f = field12();
        let w = f.omega().unwrap();
        let t = f.add(&f.scale(&w, &rat(2, 1)), &f.one());
        assert_eq!(f.mul(&t, &t), f.from_integer(-3));
    }

    #[test]
    fn inverse_of_two_omega_plus_one() {
        // inv(2w+1) = -(2w+1)/3, since (2w+1)^2 = -3.
        let f = field12();
        let w = f.omega().unwrap();
        let t = f.add(&f.scale(&w, &rat(2, 1)), &f.one());
        let inv = f.inv(&t).unwrap();
        assert_eq!(inv, f.scale(&t, &rat(-1, 3)));
        assert!(f.mul(&t, &inv).is_one());
    }

    #[test]
    fn trivial_inverses() {
        let f = field12();
        assert!(f.inv(&f.one()).unwrap().is_one());
        // roots of unity invert by the conjugate power
        assert_eq!(f.inv(&f.root_power(1)).unwrap(), f.root_power(11));
        assert!(matches!(
            f.inv(&f.zero()),
            Err(Error::DivisionByZero { .. })
        ));
    }

    #[test]
    fn root_power_basics() {
        let f = field12();
        assert!(f.root_power(0).is_one());
        assert_eq!(f.root_power(6), f.from_integer(-1));
        assert_eq!(f.root_power(4), f.omega().unwrap());
        assert_eq!(f.root_power(-1), f.root_power(11));
        assert_eq!(f.root_power(25), f.root_power(1));
    }

    #[test]
    fn field_axioms_on_random_elements() {
        let f = field12();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let a = random_element(&f, &mut rng);
            let b = random_element(&f, &mut rng);
            let c = random_element(&f, &mut rng);
            // associativity of multiplication
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            // distributivity
            assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
            // inverses
            if !a.is_zero() {
                assert!(f.mul(&a, &f.inv(&a).unwrap()).is_one());
            }
        }
    }

    #[test]
    fn euclidean_inverse_matches_conjugate_product() {
        // The norm route: inv(a) = prod_{j in (Z/K)*, j != 1} sigma_j(a) / N(a)
        // with N(a) = a * prod sigma_j(a) rational.
        let f = field12();
        let units: Vec<i64> = (1..12).filter(|j| num_integer::gcd(*j, 12) == 1).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for _ in 0..50 {
            let a = random_element(&f, &mut rng);
            if a.is_zero() {
                continue;
            }
            let mut conj_prod = f.one();
            for &j in units.iter().filter(|&&j| j != 1) {
                conj_prod = f.mul(&conj_prod, &f.conjugate(&a, j));
            }
            let norm = f.mul(&a, &conj_prod);
            let norm_rat = norm.as_rational().expect("norm must be rational").clone();
            let via_norm = f.scale(&conj_prod, &norm_rat.recip());
            assert_eq!(via_norm, f.inv(&a).unwrap());
        }
    }

    #[test]
    fn small_even_orders_build() {
        for k in [2u32, 4, 6, 8, 10, 12, 24] {
            let f = CycloField::new(k).unwrap();
            // zeta^K = 1 and zeta^{K/2} = -1 in every even order
            assert!(f.root_power(k as i64).is_one());
            assert_eq!(f.root_power(k as i64 / 2), f.from_integer(-1));
        }
        assert!(CycloField::new(0).is_err());
        assert!(CycloField::new(7).is_err());
    }
}
