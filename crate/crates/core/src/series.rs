//! Truncated Laurent series in q over Q(zeta_K) with tracked precision.
//!
//! A `QSeries` stores exact coefficients for every exponent e with
//! `min_exp <= e < prec`, and is implicitly zero below `min_exp`. Exponents
//! may be negative. Every operation computes the sound precision window of
//! its output, so a verifier downstream can report the honest comparison
//! order instead of a nominal one.

use num_traits::Signed;
use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::{CycloField, CycloNum, Rat};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct QSeries {
    field: Arc<CycloField>,
    min_exp: i64,
    prec: i64,
    /// coeffs[i] is the coefficient of q^(min_exp + i). The vector may stop
    /// short of the window; entries past its end (but below prec) are zero.
    coeffs: Vec<CycloNum>,
}

/// Outcome of comparing two series on the intersection of their windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    /// The half-open comparison window [lo, hi).
    pub window: (i64, i64),
    /// Smallest exponent where the two series differ, if any.
    pub first_mismatch: Option<i64>,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl QSeries {
    // =======================================================================
    // Constructors
    // =======================================================================

    /// The zero series, known to be zero everywhere below `prec`.
    pub fn zero(field: &Arc<CycloField>, prec: i64) -> QSeries {
        QSeries {
            field: field.clone(),
            min_exp: prec,
            prec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Arc<CycloField>, prec: i64) -> QSeries {
        QSeries::monomial(field, field.one(), 0, prec)
    }

    /// c * q^d truncated at `prec`.
    pub fn monomial(field: &Arc<CycloField>, c: CycloNum, d: i64, prec: i64) -> QSeries {
        if d >= prec || c.is_zero() {
            return QSeries::zero(field, prec);
        }
        QSeries {
            field: field.clone(),
            min_exp: d,
            prec,
            coeffs: vec![c],
        }
        .normalized()
    }

    pub fn constant(field: &Arc<CycloField>, c: CycloNum, prec: i64) -> QSeries {
        QSeries::monomial(field, c, 0, prec)
    }

    /// Build from explicit (exponent, coefficient) terms.
    pub fn from_terms(field: &Arc<CycloField>, terms: &[(i64, CycloNum)], prec: i64) -> QSeries {
        let lo = terms
            .iter()
            .filter(|(e, c)| *e < prec && !c.is_zero())
            .map(|(e, _)| *e)
            .min();
        let Some(lo) = lo else {
            return QSeries::zero(field, prec);
        };
        let mut s = QSeries {
            field: field.clone(),
            min_exp: lo,
            prec,
            coeffs: vec![field.zero(); (prec - lo) as usize],
        };
        for (e, c) in terms {
            if *e < prec && !c.is_zero() {
                let slot = (*e - lo) as usize;
                s.coeffs[slot] = field.add(&s.coeffs[slot], c);
            }
        }
        s.normalized()
    }

    fn normalized(mut self) -> QSeries {
        // Drop leading stored zeros so min_exp stays a tight lower bound.
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
        self
    }

    // =======================================================================
    // Accessors
    // =======================================================================

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Coefficients are exact for all exponents e with min_exp <= e < prec.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Coefficient of q^e. Panics if e >= prec (the coefficient is unknown).
    pub fn coeff(&self, e: i64) -> CycloNum {
        assert!(
            e < self.prec,
            "coefficient of q^{} requested beyond precision O(q^{})",
            e,
            self.prec
        );
        if e < self.min_exp {
            return self.field.zero();
        }
        let idx = (e - self.min_exp) as usize;
        if idx < self.coeffs.len() {
            self.coeffs[idx].clone()
        } else {
            self.field.zero()
        }
    }

    /// Lowest exponent with a nonzero coefficient inside the window; `None`
    /// when the series is indistinguishable from zero at this precision.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.min_exp + i as i64)
    }

    /// Valuation with the zero series treated as its precision.
    fn valuation_or_prec(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.valuation().is_none()
    }

    /// Iterate (exponent, coefficient) over nonzero stored entries.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &CycloNum)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    fn check_same_field(&self, other: &QSeries) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.k() == other.field.k(),
            "series over Q(zeta_{}) mixed with series over Q(zeta_{})",
            self.field.k(),
            other.field.k()
        );
    }

    // =======================================================================
    // Ring operations
    // =======================================================================

    pub fn add(&self, other: &QSeries) -> QSeries {
        self.check_same_field(other);
        let prec = self.prec.min(other.prec);
        let lo = self.min_exp.min(other.min_exp).min(prec);
        let mut coeffs = vec![self.field.zero(); (prec - lo) as usize];
        for (e, c) in self.iter() {
            if e < prec {
                coeffs[(e - lo) as usize] = c.clone();
            }
        }
        for (e, c) in other.iter() {
            if e < prec {
                let slot = &mut coeffs[(e - lo) as usize];
                *slot = self.field.add(slot, c);
            }
        }
        QSeries {
            field: self.field.clone(),
            min_exp: lo,
            prec,
            coeffs,
        }
        .normalized()
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            field: self.field.clone(),
            min_exp: self.min_exp,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    /// Cauchy product. The output window is
    /// [v(f)+v(g), min(f.prec + v(g), g.prec + v(f))).
    pub fn mul(&self, other: &QSeries) -> QSeries {
        self.check_same_field(other);
        let vf = self.valuation_or_prec();
        let vg = other.valuation_or_prec();
        let prec = (self.prec + vg).min(other.prec + vf);
        let lo = (vf + vg).min(prec);
        if prec <= lo {
            return QSeries {
                field: self.field.clone(),
                min_exp: lo,
                prec,
                coeffs: Vec::new(),
            };
        }
        let mut coeffs = vec![self.field.zero(); (prec - lo) as usize];
        for (ef, cf) in self.iter() {
            if ef + vg >= prec {
                continue;
            }
            for (eg, cg) in other.iter() {
                let e = ef + eg;
                if e >= prec {
                    break;
                }
                let slot = &mut coeffs[(e - lo) as usize];
                let prod = self.field.mul(cf, cg);
                *slot = self.field.add(slot, &prod);
            }
        }
        QSeries {
            field: self.field.clone(),
            min_exp: lo,
            prec,
            coeffs,
        }
        .normalized()
    }

    pub fn scalar_mul(&self, c: &CycloNum) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(&self.field, self.prec);
        }
        QSeries {
            field: self.field.clone(),
            min_exp: self.min_exp,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|x| self.field.mul(x, c)).collect(),
        }
        .normalized()
    }

    pub fn scalar_mul_rat(&self, r: &Rat) -> QSeries {
        self.scalar_mul(&self.field.from_rational(r.clone()))
    }

    /// Multiply by the exact monomial zeta^j q^d (window shifts by d).
    pub fn monomial_mul(&self, j: i64, d: i64) -> QSeries {
        let s = if j % self.field.k() as i64 == 0 {
            self.clone()
        } else {
            self.scalar_mul(&self.field.root_power(j))
        };
        QSeries {
            field: s.field.clone(),
            min_exp: s.min_exp + d,
            prec: s.prec + d,
            coeffs: s.coeffs,
        }
    }

    /// Multiplicative inverse. The lowest exponent of the result is -v(f) and
    /// the output precision is prec - 2 v(f).
    pub fn invert(&self) -> Result<QSeries> {
        let v = self.valuation().ok_or(Error::NotInvertible { prec: self.prec })?;
        let rel = (self.prec - v) as usize;
        let field = &self.field;
        let u0_inv = field.inv(&self.coeff(v))?;
        let mut unit = Vec::with_capacity(rel);
        for i in 0..rel {
            unit.push(self.coeff(v + i as i64));
        }
        let mut inv = Vec::with_capacity(rel);
        inv.push(u0_inv.clone());
        for n in 1..rel {
            let mut acc = field.zero();
            for i in 1..=n {
                if unit[i].is_zero() || inv[n - i].is_zero() {
                    continue;
                }
                let t = field.mul(&unit[i], &inv[n - i]);
                acc = field.add(&acc, &t);
            }
            let coeff = field.neg(&field.mul(&u0_inv, &acc));
            inv.push(coeff);
        }
        Ok(QSeries {
            field: field.clone(),
            min_exp: -v,
            prec: self.prec - 2 * v,
            coeffs: inv,
        }
        .normalized())
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow(&self, n: i64) -> Result<QSeries> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        let mut acc: Option<QSeries> = None;
        let mut base = self.clone();
        let mut n = n as u64;
        if n == 0 {
            return Ok(QSeries::one(&self.field, self.prec));
        }
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.unwrap())
    }

    /// The substitution q -> zeta_K^j q^t:
    /// sum c_n q^n maps to sum c_n zeta^{jn} q^{tn}.
    ///
    /// Exponents between consecutive multiples of t are known to be zero, so
    /// the output window is [t*min_exp, t*(prec-1) + 1).
    pub fn substitute(&self, j: i64, t: i64) -> Result<QSeries> {
        if t < 1 {
            return Err(Error::BadSubstitution { t });
        }
        let field = &self.field;
        let lo = t * self.min_exp;
        let prec = (t * (self.prec - 1) + 1).max(lo);
        let mut coeffs = vec![field.zero(); (prec - lo) as usize];
        for (e, c) in self.iter() {
            let twist = field.root_power(j * e);
            coeffs[(t * e - lo) as usize] = field.mul(c, &twist);
        }
        Ok(QSeries {
            field: field.clone(),
            min_exp: lo,
            prec,
            coeffs,
        }
        .normalized())
    }

    /// Restrict the window to end at `new_prec` (no-op if already tighter).
    pub fn truncate(&self, new_prec: i64) -> QSeries {
        if new_prec >= self.prec {
            return self.clone();
        }
        let lo = self.min_exp.min(new_prec);
        let keep = (new_prec - lo).max(0) as usize;
        QSeries {
            field: self.field.clone(),
            min_exp: lo,
            prec: new_prec,
            coeffs: self.coeffs.iter().take(keep).cloned().collect(),
        }
        .normalized()
    }

    // =======================================================================
    // Sparse binomial helpers (used heavily by product expansions)
    // =======================================================================

    /// Multiply by (1 - c q^e). For e = 0 this is the scalar (1 - c).
    pub fn mul_one_minus(&self, c: &CycloNum, e: i64) -> QSeries {
        if e == 0 {
            let factor = self.field.sub(&self.field.one(), c);
            return self.scalar_mul(&factor);
        }
        let shifted = self.monomial_mul(0, e).scalar_mul(c);
        self.sub(&shifted)
    }

    /// Divide by (1 - c q^e) for e >= 1 via the forward recurrence
    /// b_n = a_n + c b_{n-e}; the window is unchanged.
    pub fn div_one_minus(&self, c: &CycloNum, e: i64) -> QSeries {
        assert!(e >= 1, "div_one_minus requires e >= 1, got {}", e);
        let field = &self.field;
        let mut out = self.coeffs.clone();
        out.resize((self.prec - self.min_exp) as usize, field.zero());
        let eu = e as usize;
        for n in 0..out.len() {
            if n >= eu && !out[n - eu].is_zero() {
                let t = field.mul(&out[n - eu], c);
                out[n] = field.add(&out[n], &t);
            }
        }
        QSeries {
            field: field.clone(),
            min_exp: self.min_exp,
            prec: self.prec,
            coeffs: out,
        }
        .normalized()
    }

    // =======================================================================
    // Comparison
    // =======================================================================

    /// Compare `self` and `other` on the intersection of their knowledge
    /// windows, reporting the first mismatching exponent if any.
    pub fn residual(&self, other: &QSeries) -> Result<Residual> {
        self.check_same_field(other);
        let hi = self.prec.min(other.prec);
        let lo = self.min_exp.min(other.min_exp);
        if hi <= lo {
            return Err(Error::InsufficientPrecision { lo, hi });
        }
        let mut first_mismatch = None;
        for e in lo..hi {
            let a = self.coeff(e);
            let b = other.coeff(e);
            if a != b {
                first_mismatch = Some(e);
                break;
            }
        }
        Ok(Residual {
            window: (lo, hi),
            first_mismatch,
        })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (e, c) in self.iter() {
            let (sign, mag) = match c.as_rational() {
                Some(r) if r.is_negative() => ("-", self.field().neg(c)),
                _ => ("+", c.clone()),
            };
            if wrote {
                write!(f, " {} ", sign)?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            wrote = true;
            let mag_str = if mag.as_rational().is_some() {
                format!("{}", mag)
            } else {
                format!("({})", mag)
            };
            match (e, mag_str.as_str()) {
                (0, s) => write!(f, "{}", s)?,
                (1, "1") => write!(f, "q")?,
                (1, s) => write!(f, "{}*q", s)?,
                (_, "1") => write!(f, "q^{}", e)?,
                (_, s) => write!(f, "{}*q^{}", s, e)?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[{}..{}): {}", self.min_exp, self.prec, self)
    }
}

/// Geometric expansion of 1/(1 - c q^e) to the given order.
///
/// - e > 0: sum_{k>=0} c^k q^{ek}
/// - e < 0: -sum_{k>=1} c^{-k} q^{-ek} (formal expansion toward q -> 0)
/// - e = 0: the exact constant 1/(1-c); c must not be 1.
pub fn geometric(field: &Arc<CycloField>, c: &CycloNum, e: i64, order: i64) -> Result<QSeries> {
    if e == 0 {
        let denom = field.sub(&field.one(), c);
        let inv = field.inv(&denom).map_err(|_| Error::NonGenericPole { r: 0 })?;
        return Ok(QSeries::constant(field, inv, order));
    }
    let mut terms = Vec::new();
    if e > 0 {
        let mut power = field.one();
        let mut k = 0i64;
        while e * k < order {
            terms.push((e * k, power.clone()));
            power = field.mul(&power, c);
            k += 1;
        }
    } else {
        let cinv = field.inv(c)?;
        let mut power = cinv.clone();
        let mut k = 1i64;
        while -e * k < order {
            terms.push((-e * k, field.neg(&power)));
            power = field.mul(&power, &cinv);
            k += 1;
        }
        if terms.is_empty() {
            // all contributions are at or beyond the order; knowledge window
            // still starts at -e
            return Ok(QSeries::zero(field, order));
        }
    }
    Ok(QSeries::from_terms(field, &terms, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rat;
    use crate::testing::{random_series, random_unit_series};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field12() -> Arc<CycloField> {
        CycloField::new(12).unwrap()
    }

    #[test]
    fn add_cancels_terms() {
        let f = field12();
        // (1 - q) + q = 1
        let one_minus_q = QSeries::from_terms(
            &f,
            &[(0, f.one()), (1, f.from_integer(-1))],
            10,
        );
        let q = QSeries::monomial(&f, f.one(), 1, 10);
        let sum = one_minus_q.add(&q);
        assert_eq!(sum.coeff(0), f.one());
        for e in 1..10 {
            assert!(sum.coeff(e).is_zero());
        }
    }

    #[test]
    fn add_identity_and_laurent_support() {
        let f = field12();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_series(&f, &mut rng, -3, 20);
        let z = QSeries::zero(&f, 20);
        let sum = s.add(&z);
        assert!(s.residual(&sum).unwrap().is_zero());

        let qm2 = QSeries::monomial(&f, f.one(), -2, 10);
        let doubled = qm2.add(&qm2);
        assert_eq!(doubled.coeff(-2), f.from_integer(2));
    }

    #[test]
    fn telescoping_product() {
        let f = field12();
        let n = 30;
        // (1 - q) * (1 + q + ... + q^{N-1}) = 1 + O(q^N)
        let one_minus_q = QSeries::from_terms(&f, &[(0, f.one()), (1, f.from_integer(-1))], n);
        let geo: Vec<(i64, CycloNum)> = (0..n).map(|e| (e, f.one())).collect();
        let geo = QSeries::from_terms(&f, &geo, n);
        let prod = one_minus_q.mul(&geo);
        assert_eq!(prod.coeff(0), f.one());
        for e in 1..prod.prec() {
            assert!(prod.coeff(e).is_zero(), "exponent {}", e);
        }
    }

    #[test]
    fn mul_identities() {
        let f = field12();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = random_series(&f, &mut rng, -2, 15);
        let one = QSeries::one(&f, 15);
        assert!(s.mul(&one).residual(&s).unwrap().is_zero());

        let qinv = QSeries::monomial(&f, f.one(), -1, 5);
        let q = QSeries::monomial(&f, f.one(), 1, 5);
        let prod = qinv.mul(&q);
        assert_eq!(prod.coeff(0), f.one());
    }

    #[test]
    fn invert_geometric() {
        let f = field12();
        let s = QSeries::from_terms(&f, &[(0, f.one()), (1, f.from_integer(-1))], 12);
        let inv = s.invert().unwrap();
        for e in 0..12 {
            assert_eq!(inv.coeff(e), f.one(), "1/(1-q) coefficient at {}", e);
        }
    }

    #[test]
    fn invert_monomial_and_constant() {
        let f = field12();
        let q = QSeries::monomial(&f, f.one(), 1, 10);
        let inv = q.invert().unwrap();
        assert_eq!(inv.min_exp(), -1);
        assert_eq!(inv.coeff(-1), f.one());

        // constant 2w+1: inverse is -(2w+1)/3
        let w = f.omega().unwrap();
        let c = f.add(&f.scale(&w, &rat(2, 1)), &f.one());
        let cs = QSeries::constant(&f, c.clone(), 10);
        let cinv = cs.invert().unwrap();
        assert_eq!(cinv.coeff(0), f.scale(&c, &rat(-1, 3)));

        let z = QSeries::zero(&f, 10);
        assert!(matches!(z.invert(), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn invert_contract_on_random_units() {
        let f = field12();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..50 {
            let s = random_unit_series(&f, &mut rng, 40);
            let inv = s.invert().unwrap();
            let prod = s.mul(&inv);
            let one = QSeries::one(&f, prod.prec());
            let res = prod.residual(&one).unwrap();
            assert!(res.is_zero(), "f * f^-1 != 1: {:?}", res);
        }
    }

    #[test]
    fn ring_axioms_on_random_series() {
        let f = field12();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..100 {
            let a = random_series(&f, &mut rng, -2, 18);
            let b = random_series(&f, &mut rng, -2, 18);
            let c = random_series(&f, &mut rng, -2, 18);
            let assoc_l = a.mul(&b).mul(&c);
            let assoc_r = a.mul(&b.mul(&c));
            assert!(assoc_l.residual(&assoc_r).unwrap().is_zero());
            let dist_l = a.mul(&b.add(&c));
            let dist_r = a.mul(&b).add(&a.mul(&c));
            assert!(dist_l.residual(&dist_r).unwrap().is_zero());
            let add_assoc_l = a.add(&b).add(&c);
            let add_assoc_r = a.add(&b.add(&c));
            assert!(add_assoc_l.residual(&add_assoc_r).unwrap().is_zero());
        }
    }

    #[test]
    fn substitution_basics() {
        let f = field12();
        // 1 + q + q^2 with q -> w q
        let s = QSeries::from_terms(&f, &[(0, f.one()), (1, f.one()), (2, f.one())], 3);
        let w = f.omega().unwrap();
        let sub = s.substitute(4, 1).unwrap();
        assert_eq!(sub.coeff(0), f.one());
        assert_eq!(sub.coeff(1), w);
        assert_eq!(sub.coeff(2), f.mul(&w, &w));

        // identity substitution
        let id = s.substitute(0, 1).unwrap();
        assert!(id.residual(&s).unwrap().is_zero());

        // q -> -q^4 on 1 + q
        let s2 = QSeries::from_terms(&f, &[(0, f.one()), (1, f.one())], 2);
        let sub2 = s2.substitute(6, 4).unwrap();
        assert_eq!(sub2.coeff(0), f.one());
        assert_eq!(sub2.coeff(4), f.from_integer(-1));
        assert_eq!(sub2.prec(), 5);
        for e in 1..4 {
            assert!(sub2.coeff(e).is_zero());
        }

        assert!(matches!(
            s.substitute(0, 0),
            Err(Error::BadSubstitution { t: 0 })
        ));
    }

    #[test]
    fn substitution_is_multiplicative() {
        let f = field12();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_series(&f, &mut rng, 0, 15);
            let b = random_series(&f, &mut rng, 0, 15);
            for (j, t) in [(4, 1), (6, 2), (1, 3)] {
                let lhs = a.mul(&b).substitute(j, t).unwrap();
                let rhs = a.substitute(j, t).unwrap().mul(&b.substitute(j, t).unwrap());
                assert!(lhs.residual(&rhs).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn omega_combination_filter() {
        // (f(wq) - f(w^2 q)) / (w - w^2) keeps c_n for n = 1 mod 3, negates
        // it for n = 2 mod 3, kills n = 0 mod 3.
        let f = field12();
        let w = f.omega().unwrap();
        let w2 = f.mul(&w, &w);
        let denom = f.sub(&w, &w2);
        let denom_inv = f.inv(&denom).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let s = random_series(&f, &mut rng, 0, 24);
            let a = s.substitute(4, 1).unwrap();
            let b = s.substitute(8, 1).unwrap();
            let filt = a.sub(&b).scalar_mul(&denom_inv);
            for e in 0..filt.prec() {
                let expected = match e.rem_euclid(3) {
                    1 => s.coeff(e),
                    2 => f.neg(&s.coeff(e)),
                    _ => f.zero(),
                };
                assert_eq!(filt.coeff(e), expected, "exponent {}", e);
            }
        }
    }

    #[test]
    fn residual_reports_first_mismatch() {
        let f = field12();
        let a = QSeries::from_terms(&f, &[(0, f.one()), (1, f.one())], 10);
        let b = QSeries::from_terms(&f, &[(0, f.one()), (1, f.from_integer(2))], 10);
        let r = a.residual(&b).unwrap();
        assert_eq!(r.first_mismatch, Some(1));
        assert!(a.residual(&a).unwrap().is_zero());

        let empty_a = QSeries::zero(&f, 5);
        let empty_b = QSeries::zero(&f, 5);
        assert!(matches!(
            empty_a.residual(&empty_b),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn geometric_expansions() {
        let f = field12();
        let g = geometric(&f, &f.one(), 2, 9).unwrap();
        for e in 0..9 {
            let expect = if e % 2 == 0 { f.one() } else { f.zero() };
            assert_eq!(g.coeff(e), expect);
        }
        // negative exponent: 1/(1 - q^{-1}) = -q - q^2 - ...
        let gn = geometric(&f, &f.one(), -1, 6).unwrap();
        assert!(gn.coeff(0).is_zero());
        for e in 1..6 {
            assert_eq!(gn.coeff(e), f.from_integer(-1));
        }
        // constant: 1/(1 - (-1)) = 1/2
        let gc = geometric(&f, &f.from_integer(-1), 0, 4).unwrap();
        assert_eq!(gc.coeff(0), f.from_rational(rat(1, 2)));
    }

    #[test]
    fn binomial_helpers_match_series_ops() {
        let f = field12();
        let mut rng = ChaCha8Rng::seed_from_u64(321);
        let s = random_series(&f, &mut rng, 0, 25);
        let c = f.root_power(4);
        let via_helper = s.mul_one_minus(&c, 3);
        let factor = QSeries::from_terms(&f, &[(0, f.one()), (3, f.neg(&c))], 25);
        let via_mul = s.mul(&factor);
        assert!(via_helper.residual(&via_mul).unwrap().is_zero());

        let back = via_helper.div_one_minus(&c, 3);
        assert!(back.residual(&s).unwrap().is_zero());
    }
}
