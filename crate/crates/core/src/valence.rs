//! Rigorous truncation bounds from the valence formula.
//!
//! For an identity between weight-zero eta/theta quotients on Gamma_1(N),
//! checking finitely many q-coefficients proves the identity: if g is the
//! normalized combination (sum of quotients minus 1) and
//!
//!   B = sum_{s in cusps, s != ioo} min({ORD(f_j, s)} U {0}),
//!
//! then g = 0 as soon as its expansion at i-infinity vanishes past q^{-B},
//! i.e. through O(q^{-B+1}). ORD(f, s) = width(s) * ord(f, s).
//!
//! Quotients are reduced to products of the factors
//!
//!   P(delta, g) = prod_{n > 0, n = +-g mod delta} (1 - q^n),  0 < g < delta/2,
//!   E(delta)    = prod_{n > 0} (1 - q^{delta n}),
//!
//! whose invariant orders at a cusp a/c (gcd(a,c) = 1, e = gcd(c, delta)) are
//!
//!   ord(P(delta,g), a/c) = (e^2 / 2 delta) * P2(g a / e),
//!   ord(E(delta),   a/c) = e^2 / (24 delta),
//!
//! with P2(x) = {x}^2 - {x} + 1/6 the second Bernoulli periodic function.
//! These standard formulas are not taken on faith: every form must pass the
//! gates below (exact q-expansion match, integral ORD at every cusp, total
//! order zero), and the module reproduces the reference checkpoint B = -63
//! for the level-54 normalization in the registry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclotomic::{rat, CycloField, Rat};
use crate::dsl::{self, Expr};
use crate::error::{Error, Result};
use crate::series::QSeries;

// ===========================================================================
// Cusps of Gamma_1(N)
// ===========================================================================

/// One cusp a/c of Gamma_1(N) (c = 0 encodes i-infinity) with its fan width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspData {
    /// Numerator of a coprime representative.
    pub a: i64,
    /// Denominator of the representative; 0 for i-infinity.
    pub c: i64,
    /// Fan width N / gcd(c, N).
    pub width: i64,
    /// True for the class of i-infinity.
    pub is_infinity: bool,
}

impl CuspData {
    pub fn label(&self) -> String {
        if self.is_infinity {
            "oo".to_string()
        } else {
            format!("{}/{}", self.a, self.c)
        }
    }
}

/// Canonical class key of the cusp a/c under Gamma_1(N): lexicographic
/// minimum over the sign of (c mod N, a mod gcd(c, N)).
fn cusp_key(a: i64, c: i64, n: i64) -> (i64, i64) {
    let d = c.gcd(&n).max(1);
    let k1 = (c.rem_euclid(n), a.rem_euclid(d));
    let k2 = ((-c).rem_euclid(n), (-a).rem_euclid(d));
    k1.min(k2)
}

/// A complete set of pairwise inequivalent cusps of Gamma_1(N) with fan
/// widths. The sum of widths equals the index of the image of Gamma_1(N)
/// in the modular group (checked by the test suite for several N).
pub fn cusps_and_widths(n: u32) -> Vec<CuspData> {
    let n = n as i64;
    let inf_key = cusp_key(1, 0, n);
    let mut classes: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
    classes.insert(inf_key, (1, 0));
    for c in 0..=n {
        for a in 0..=2 * n {
            if a.gcd(&c) != 1 {
                continue;
            }
            classes.entry(cusp_key(a, c, n)).or_insert((a, c));
        }
    }
    let mut out: Vec<CuspData> = classes
        .into_iter()
        .map(|(key, (a, c))| CuspData {
            a,
            c,
            width: n / c.gcd(&n).max(if c == 0 { n } else { 1 }),
            is_infinity: key == inf_key,
        })
        .collect();
    // i-infinity first, then by denominator/numerator
    out.sort_by_key(|cd| (!cd.is_infinity, cd.c, cd.a));
    out
}

/// Index of the image of Gamma_1(N) in PSL_2(Z); the width-sum oracle.
pub fn psl2_index(n: u32) -> i64 {
    let n = n as i64;
    if n == 1 {
        return 1;
    }
    // [SL2(Z) : Gamma_1(N)] = N^2 prod_{p | N} (1 - 1/p^2)
    let mut index = n * n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            index = index / (p * p) * (p * p - 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        index = index / (m * m) * (m * m - 1);
    }
    // -I is in Gamma_1(N) only for N <= 2
    if n > 2 {
        index / 2
    } else {
        index
    }
}

// ===========================================================================
// Eta-quotient forms
// ===========================================================================

/// A product c * q^lead * prod P(delta,g)^e * prod E(delta)^e, the shape
/// every constituent of a valence-mode identity must reduce to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientForm {
    pub coeff: Rat,
    pub lead_exp: i64,
    /// P(delta, g) factors with 0 < g < delta/2, keyed by (delta, g).
    pub gen: BTreeMap<(i64, i64), i64>,
    /// E(delta) factors keyed by delta.
    pub eta: BTreeMap<i64, i64>,
}

impl EtaQuotientForm {
    fn new() -> EtaQuotientForm {
        EtaQuotientForm {
            coeff: Rat::one(),
            lead_exp: 0,
            gen: BTreeMap::new(),
            eta: BTreeMap::new(),
        }
    }

    fn add_eta(&mut self, delta: i64, e: i64) {
        let slot = self.eta.entry(delta).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.eta.remove(&delta);
        }
    }

    /// Insert P(delta, g)^e, rewriting the degenerate positions g = 0 and
    /// g = delta/2 into classical E factors.
    fn add_p(&mut self, delta: i64, g: i64, e: i64) {
        let g = g.rem_euclid(delta);
        let g = g.min(delta - g);
        if g == 0 {
            self.add_eta(delta, 2 * e);
        } else if 2 * g == delta {
            self.add_eta(g, 2 * e);
            self.add_eta(delta, -2 * e);
        } else {
            let slot = self.gen.entry((delta, g)).or_insert(0);
            *slot += e;
            if *slot == 0 {
                self.gen.remove(&(delta, g));
            }
        }
    }

    /// Fold Theta_{a,m}^e in, reducing a modulo m through quasi-periodicity
    /// (which contributes a sign and a power of q).
    fn add_theta_plain(&mut self, a: i64, m: i64, e: i64) -> Result<()> {
        if m < 1 {
            return Err(Error::BadThetaBase { d: m });
        }
        if a.rem_euclid(m) == 0 {
            return Err(Error::ValenceNotApplicable {
                detail: format!("T({},{}) is the zero series", a, m),
            });
        }
        let a0 = a.rem_euclid(m);
        let shift = (a - a0) / m;
        // Theta(q^{a0+m*shift}; q^m) = (-1)^shift q^{-m*binom(shift,2)-a0*shift} Theta(q^{a0};q^m)
        if (shift * e).rem_euclid(2) == 1 {
            self.coeff = -self.coeff.clone();
        }
        self.lead_exp += e * (-m * (shift * (shift - 1) / 2) - a0 * shift);
        self.add_p(m, a0, e);
        self.add_eta(m, e);
        Ok(())
    }

    /// Fold Thetabar_{a,m}^e in.
    fn add_theta_bar(&mut self, a: i64, m: i64, e: i64) -> Result<()> {
        if m < 1 {
            return Err(Error::BadThetaBase { d: m });
        }
        let a0 = a.rem_euclid(m);
        let shift = (a - a0) / m;
        self.lead_exp += e * (-m * (shift * (shift - 1) / 2) - a0 * shift);
        if a0 == 0 {
            // Theta(-1; q^m) = 2 E(2m)^2 / E(m)
            self.coeff *= pow_rat(&rat(2, 1), e);
            self.add_eta(2 * m, 2 * e);
            self.add_eta(m, -e);
        } else {
            // Theta(-q^a0; q^m) = P(2m, 2 a0) E(m) / P(m, a0)
            self.add_p(2 * m, 2 * a0, e);
            self.add_eta(m, e);
            self.add_p(m, a0, -e);
        }
        Ok(())
    }

    /// Syntactic conversion of a multiplicative expression over the theta
    /// shorthands into the canonical form. Anything additive, or any Appell
    /// node, refuses valence mode.
    pub fn from_expr(expr: &Expr) -> Result<EtaQuotientForm> {
        let mut form = EtaQuotientForm::new();
        fold(expr, 1, &mut form)?;
        if form.coeff.is_zero() {
            return Err(Error::ValenceNotApplicable {
                detail: "form has zero coefficient".into(),
            });
        }
        return Ok(form);

        fn fold(expr: &Expr, e: i64, form: &mut EtaQuotientForm) -> Result<()> {
            match expr {
                Expr::Rational(r) => {
                    if r.is_zero() && e < 0 {
                        return Err(Error::DivisionByZero { k: 0 });
                    }
                    form.coeff *= pow_rat(r, e);
                    Ok(())
                }
                Expr::QPow(k) => {
                    form.lead_exp += k * e;
                    Ok(())
                }
                Expr::Neg(inner) => {
                    if e.rem_euclid(2) == 1 {
                        form.coeff = -form.coeff.clone();
                    }
                    fold(inner, e, form)
                }
                Expr::Mul(x, y) => {
                    fold(x, e, form)?;
                    fold(y, e, form)
                }
                Expr::Div(x, y) => {
                    fold(x, e, form)?;
                    fold(y, -e, form)
                }
                Expr::Pow(base, n) => fold(base, e * n, form),
                Expr::ThetaAM { bar: false, a, m } => form.add_theta_plain(*a, *m, e),
                Expr::ThetaAM { bar: true, a, m } => form.add_theta_bar(*a, *m, e),
                Expr::Eta(m) => {
                    if *m < 1 {
                        return Err(Error::BadThetaBase { d: *m });
                    }
                    form.add_eta(*m, e);
                    Ok(())
                }
                Expr::Theta { x, base } => {
                    // monomial arguments of the shape +-q^a over base q^m
                    if x.w_pow != 0 || x.zeta_pow != 0 || base.w_pow != 0 || base.zeta_pow != 0
                        || base.neg
                    {
                        return Err(Error::ValenceNotApplicable {
                            detail: format!("theta argument {} ; {} is not a +-q^a form", x, base),
                        });
                    }
                    if x.neg {
                        form.add_theta_bar(x.q_pow, base.q_pow, e)
                    } else {
                        form.add_theta_plain(x.q_pow, base.q_pow, e)
                    }
                }
                other => Err(Error::ValenceNotApplicable {
                    detail: format!("`{}` is not an eta/theta quotient", other),
                }),
            }
        }
    }

    /// Independent q-expansion of the canonical form (used as the
    /// consistency gate against the expression evaluator).
    pub fn expansion(&self, field: &Arc<CycloField>, order: i64) -> Result<QSeries> {
        let mut acc = QSeries::constant(field, field.from_rational(self.coeff.clone()), order);
        for ((delta, g), e) in &self.gen {
            let mut p = QSeries::one(field, order);
            let mut n = *g;
            while n < order {
                p = p.mul_one_minus(&field.one(), n);
                n += delta;
            }
            let mut n = delta - g;
            while n < order {
                p = p.mul_one_minus(&field.one(), n);
                n += delta;
            }
            acc = acc.mul(&p.pow(*e)?);
        }
        for (delta, e) in &self.eta {
            let mut p = QSeries::one(field, order);
            let mut n = *delta;
            while n < order {
                p = p.mul_one_minus(&field.one(), n);
                n += delta;
            }
            acc = acc.mul(&p.pow(*e)?);
        }
        Ok(acc.monomial_mul(0, self.lead_exp))
    }

    /// Every factor level must divide N, the classical eta weights must
    /// cancel, and the collected power of q must equal the total q-shift of
    /// the eta factors (otherwise the form is q^t times an eta quotient with
    /// t != 0 and is not modular).
    pub fn modularity_gate(&self, name: &str, n: u32) -> Result<()> {
        let n = n as i64;
        for (delta, _) in self.gen.keys().map(|k| (*k, ())) {
            if n % delta.0 != 0 {
                return Err(Error::NonModularForm {
                    name: name.into(),
                    detail: format!("factor level {} does not divide N = {}", delta.0, n),
                });
            }
        }
        for delta in self.eta.keys() {
            if n % delta != 0 {
                return Err(Error::NonModularForm {
                    name: name.into(),
                    detail: format!("factor level {} does not divide N = {}", delta, n),
                });
            }
        }
        let weight: i64 = self.eta.values().sum();
        if weight != 0 {
            return Err(Error::NonModularForm {
                name: name.into(),
                detail: format!("classical eta exponents sum to {}, not 0", weight),
            });
        }
        let mut shift = Rat::zero();
        for ((delta, g), e) in &self.gen {
            shift += rat(*e * delta / 2, 1) * p2(&rat(*g, *delta));
        }
        for (delta, e) in &self.eta {
            shift += rat(*e * delta, 24);
        }
        if shift != rat(self.lead_exp, 1) {
            return Err(Error::NonModularForm {
                name: name.into(),
                detail: format!(
                    "q-power {} does not cancel the eta shift {}",
                    self.lead_exp, shift
                ),
            });
        }
        Ok(())
    }

    /// Invariant order ord(f, a/c); at i-infinity (c = 0) this is the
    /// leading exponent of the q-expansion.
    pub fn invariant_order(&self, cusp: &CuspData) -> Rat {
        let mut ord = Rat::zero();
        for ((delta, g), exp) in &self.gen {
            let e = if cusp.c == 0 { *delta } else { cusp.c.gcd(delta) };
            ord += rat(*exp, 1) * rat(e * e, 2 * delta) * p2(&rat(g * cusp.a, e));
        }
        for (delta, exp) in &self.eta {
            let e = if cusp.c == 0 { *delta } else { cusp.c.gcd(delta) };
            ord += rat(*exp * e * e, 24 * delta);
        }
        ord
    }
}

fn pow_rat(r: &Rat, e: i64) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e.abs() {
        out *= r;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// Second Bernoulli periodic function P2(x) = {x}^2 - {x} + 1/6.
fn p2(x: &Rat) -> Rat {
    let frac = x - x.floor();
    &frac * &frac - frac + rat(1, 6)
}

// ===========================================================================
// The bound
// ===========================================================================

/// Per-cusp row of the audit table: ORD(f_j, cusp) for each form.
#[derive(Clone, Debug)]
pub struct CuspOrders {
    pub cusp: CuspData,
    pub orders: Vec<Rat>,
}

/// Result of the valence-bound computation.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub level: u32,
    pub table: Vec<CuspOrders>,
    pub b: i64,
    pub required_order: i64,
}

/// Compute B and the required verification order for a family of forms on
/// Gamma_1(N). All gate failures abort: a bound from an ungated form would
/// not be a proof.
pub fn bound_b(forms: &[EtaQuotientForm], n: u32) -> Result<BoundReport> {
    for (idx, form) in forms.iter().enumerate() {
        form.modularity_gate(&format!("f{}", idx + 1), n)?;
    }
    let cusps = cusps_and_widths(n);
    let mut table = Vec::with_capacity(cusps.len());
    let mut totals = vec![Rat::zero(); forms.len()];
    for cusp in &cusps {
        let mut orders = Vec::with_capacity(forms.len());
        for (idx, form) in forms.iter().enumerate() {
            let ord = form.invariant_order(cusp) * rat(cusp.width, 1);
            if !ord.denom().is_one() {
                return Err(Error::NonModularForm {
                    name: format!("f{}", idx + 1),
                    detail: format!("non-integral ORD {} at cusp {}", ord, cusp.label()),
                });
            }
            totals[idx] += &ord;
            orders.push(ord);
        }
        table.push(CuspOrders {
            cusp: cusp.clone(),
            orders,
        });
    }
    for (idx, total) in totals.iter().enumerate() {
        if !total.is_zero() {
            return Err(Error::NonModularForm {
                name: format!("f{}", idx + 1),
                detail: format!("total order over all cusps is {}, not 0", total),
            });
        }
    }
    let mut b = BigInt::zero();
    for row in &table {
        if row.cusp.is_infinity {
            continue;
        }
        let min = row
            .orders
            .iter()
            .map(|o| o.to_integer())
            .min()
            .unwrap_or_else(BigInt::zero);
        if min.is_negative() {
            b += min;
        }
    }
    let b = b.to_i64().expect("bound fits in i64");
    Ok(BoundReport {
        level: n,
        table,
        b,
        required_order: -b + 1,
    })
}

// ===========================================================================
// Normalizations of the registry's valence-mode identities
// ===========================================================================

/// The normalized combination sum_j c_j f_j - 1 = 0 equivalent to a registry
/// identity, with each f_j a pure theta quotient.
pub struct ValenceNormalization {
    pub identity: &'static str,
    pub level: u32,
    /// (coefficient, expression source) per constituent.
    pub forms: &'static [(i64, i64, &'static str)],
}

impl ValenceNormalization {
    /// Coefficients as exact rationals (stored as numerator/denominator).
    pub fn coefficients(&self) -> Vec<Rat> {
        self.forms.iter().map(|(n, d, _)| rat(*n, *d)).collect()
    }

    pub fn parsed_forms(&self) -> Result<Vec<Expr>> {
        self.forms.iter().map(|(_, _, src)| dsl::parse(src)).collect()
    }

    pub fn eta_forms(&self) -> Result<Vec<EtaQuotientForm>> {
        self.parsed_forms()?
            .iter()
            .map(EtaQuotientForm::from_expr)
            .collect()
    }

    /// Expand sum_j c_j f_j - 1 through O(q^order) and return the residual
    /// window and first nonzero exponent, if any.
    pub fn check_to_order(
        &self,
        field: &Arc<CycloField>,
        order: i64,
    ) -> Result<crate::series::Residual> {
        let exprs = self.parsed_forms()?;
        let coeffs = self.coefficients();
        let mut acc = QSeries::constant(field, field.from_integer(-1), order);
        for (c, expr) in coeffs.iter().zip(&exprs) {
            let mut val = dsl::evaluate(expr, field, order)?;
            if val.prec() < order {
                val = dsl::evaluate(expr, field, order + (order - val.prec()))?;
            }
            acc = acc.add(&val.truncate(order).scalar_mul_rat(c));
        }
        acc.residual(&QSeries::zero(field, order))
    }
}

/// Normalization tables for the four prop42 identities. Each is derived by
/// substituting the matching D_3 evaluation (lemma41) into the identity and
/// dividing by the left-hand quotient; the repeated prefactor in each group
/// is that reciprocal.
pub fn normalization_for(name: &str) -> Option<ValenceNormalization> {
    let norm = match name {
        "prop42-1" => ValenceNormalization {
            identity: "prop42-1",
            level: 216,
            forms: &[
                (-1, 1, "q * (Tb(1,4)*Tb(9,36)/(Tb(3,12)*E(6)^2)) * (E(9)^3/(Tb(1,3)*Tb(9,27)*Tb(0,9))) * (T(1,9)*T(6,27)/Tb(1,9))"),
                (1, 1, "q^2 * (Tb(1,4)*Tb(9,36)/(Tb(3,12)*E(6)^2)) * (E(9)^3/(Tb(1,3)*Tb(9,27)*Tb(0,9))) * (T(4,9)*T(3,27)/Tb(4,9))"),
                (1, 1, "(Tb(1,4)*Tb(9,36)/(Tb(3,12)*E(6)^2)) * (E(9)^3/(Tb(1,3)*Tb(9,27)*Tb(0,9))) * (T(7,9)*T(12,27)/Tb(7,9))"),
                (1, 1, "(Tb(1,4)*Tb(9,36)/(Tb(3,12)*E(6)^2)) * (E(27)^3*E(9)^2/(Tb(0,27)*Tb(9,27)^3))"),
            ],
        },
        "prop42-2" => ValenceNormalization {
            identity: "prop42-2",
            level: 54,
            forms: &[
                (1, 1, "q * (T(1,2)*T(9,18)/(T(3,6)*E(3)^2)) * (E(18)^3/(T(1,6)*T(9,54)*T(9,18))) * (T(10,18)*T(6,54)/T(1,18))"),
                (1, 1, "q^2 * (T(1,2)*T(9,18)/(T(3,6)*E(3)^2)) * (E(18)^3/(T(1,6)*T(9,54)*T(9,18))) * (T(16,18)*T(12,54)/T(7,18))"),
                (1, 1, "q^-1 * (T(1,2)*T(9,18)/(T(3,6)*E(3)^2)) * (E(18)^3/(T(1,6)*T(9,54)*T(9,18))) * (T(4,18)*T(30,54)/T(13,18))"),
                (-1, 1, "q^-1 * (T(1,2)*T(9,18)/(T(3,6)*E(3)^2)) * (E(54)^3*T(18,54)^2/(T(9,54)^3*T(27,54)))"),
            ],
        },
        "prop42-3" => ValenceNormalization {
            identity: "prop42-3",
            level: 216,
            forms: &[
                (-1, 1, "q^2 * (Tb(1,4)*Tb(9,36)/(T(3,6)*E(6)^2)) * (E(18)^3/(Tb(2,6)*Tb(27,54)*Tb(9,18))) * (T(11,18)*T(21,54)/Tb(2,18))"),
                (-1, 1, "q^10 * (Tb(1,4)*Tb(9,36)/(T(3,6)*E(6)^2)) * (E(18)^3/(Tb(2,6)*Tb(27,54)*Tb(9,18))) * (T(17,18)*T(3,54)/Tb(8,18))"),
                (-1, 1, "q^4 * (Tb(1,4)*Tb(9,36)/(T(3,6)*E(6)^2)) * (E(18)^3/(Tb(2,6)*Tb(27,54)*Tb(9,18))) * (T(5,18)*T(15,54)/Tb(14,18))"),
                (-1, 1, "q^-1 * (Tb(1,4)*Tb(9,36)/(T(3,6)*E(6)^2)) * (E(18)^3/(Tb(1,6)*Tb(0,54)*Tb(0,18))) * (T(1,18)*T(3,54)/Tb(1,18))"),
                (-1, 1, "q^-6 * (Tb(1,4)*Tb(9,36)/(T(3,6)*E(6)^2)) * (E(18)^3/(Tb(1,6)*Tb(0,54)*Tb(0,18))) * (T(7,18)*T(21,54)/Tb(7,18))"),
                (-1, 1, "q^-5 * (Tb(1,4)*Tb(9,36)/(T(3,6)*E(6)^2)) * (E(18)^3/(Tb(1,6)*Tb(0,54)*Tb(0,18))) * (T(13,18)*T(39,54)/Tb(13,18))"),
                (-1, 1, "q^12 * (Tb(1,4)*Tb(9,36)/(T(3,6)*E(6)^2)) * (E(54)^3*T(9,54)^2/(Tb(27,54)^2*Tb(18,54)^2))"),
                (1, 1, "q^-6 * (Tb(1,4)*Tb(9,36)/(T(3,6)*E(6)^2)) * (E(54)^3*T(9,54)^2/(Tb(0,54)^2*Tb(9,54)^2))"),
            ],
        },
        "prop42-4" => ValenceNormalization {
            identity: "prop42-4",
            level: 216,
            forms: &[
                (1, 2, "q^-2 * (T(1,2)*T(9,18)/(Tb(3,12)*E(3)^2)) * (E(9)^3/(E(1)*Tb(0,27)*Tb(0,9))) * (Tb(1,9)*Tb(3,27)/T(1,9))"),
                (-1, 2, "q^-4 * (T(1,2)*T(9,18)/(Tb(3,12)*E(3)^2)) * (E(9)^3/(E(1)*Tb(0,27)*Tb(0,9))) * (Tb(4,9)*Tb(12,27)/T(4,9))"),
                (1, 2, "q^-3 * (T(1,2)*T(9,18)/(Tb(3,12)*E(3)^2)) * (E(9)^3/(E(1)*Tb(0,27)*Tb(0,9))) * (Tb(7,9)*Tb(21,27)/T(7,9))"),
                (1, 2, "(T(1,2)*T(9,18)/(Tb(3,12)*E(3)^2)) * (E(6)^3/(E(1)*E(2)))"),
                (1, 1, "q^8 * (T(1,2)*T(9,18)/(Tb(3,12)*E(3)^2)) * (Tb(27,108)^3/(E(9)*Tb(9,36)))"),
                (-1, 1, "q^-1 * (T(1,2)*T(9,18)/(Tb(3,12)*E(3)^2)) * (E(27)^3*Tb(9,27)^2/(E(9)^2*Tb(0,27)*Tb(9,27)))"),
                (1, 2, "q^5 * (T(1,2)*T(9,18)/(Tb(3,12)*E(3)^2)) * (E(54)^3/(E(9)*E(18)))"),
                (1, 2, "q^-4 * (T(1,2)*T(9,18)/(Tb(3,12)*E(3)^2)) * (E(27)^3*Tb(9,27)^2/(E(9)^2*Tb(0,27)^2))"),
            ],
        },
        _ => return None,
    };
    Some(norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_counts_match_class_number_formula() {
        // number of cusps of Gamma_1(N) for N >= 5: (1/2) sum_{d|N} phi(d) phi(N/d)
        fn phi(n: i64) -> i64 {
            (1..=n).filter(|k| k.gcd(&n) == 1).count() as i64
        }
        for n in [5i64, 6, 7, 8, 9, 10, 12, 16, 36, 54] {
            let expected: i64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| phi(d) * phi(n / d))
                .sum::<i64>()
                / 2;
            let got = cusps_and_widths(n as u32).len() as i64;
            assert_eq!(got, expected, "cusp count for N = {}", n);
        }
        assert_eq!(cusps_and_widths(1).len(), 1);
        assert_eq!(cusps_and_widths(2).len(), 2);
        assert_eq!(cusps_and_widths(3).len(), 2);
    }

    #[test]
    fn width_sums_match_group_index() {
        for n in [6u32, 12, 36, 54] {
            let total: i64 = cusps_and_widths(n).iter().map(|c| c.width).sum();
            assert_eq!(total, psl2_index(n), "width sum for N = {}", n);
        }
    }

    #[test]
    fn infinity_cusp_has_width_one() {
        for n in [1u32, 6, 54] {
            let cusps = cusps_and_widths(n);
            let inf: Vec<_> = cusps.iter().filter(|c| c.is_infinity).collect();
            assert_eq!(inf.len(), 1);
            assert_eq!(inf[0].width, 1);
        }
    }

    #[test]
    fn p2_values() {
        assert_eq!(p2(&rat(0, 1)), rat(1, 6));
        assert_eq!(p2(&rat(1, 2)), rat(-1, 12));
        assert_eq!(p2(&rat(1, 3)), p2(&rat(2, 3)));
        assert_eq!(p2(&rat(-1, 3)), p2(&rat(1, 3)));
    }

    #[test]
    fn constant_form_has_zero_orders_and_zero_bound() {
        let form = EtaQuotientForm::from_expr(&dsl::parse("1").unwrap()).unwrap();
        let report = bound_b(&[form], 12).unwrap();
        assert_eq!(report.b, 0);
        assert_eq!(report.required_order, 1);
        for row in &report.table {
            assert!(row.orders[0].is_zero());
        }
    }

    #[test]
    fn conversion_rejects_non_quotients() {
        assert!(matches!(
            EtaQuotientForm::from_expr(&dsl::parse("T(1,2) + 1").unwrap()),
            Err(Error::ValenceNotApplicable { .. })
        ));
        assert!(matches!(
            EtaQuotientForm::from_expr(&dsl::parse("m(1; -q; q^3)").unwrap()),
            Err(Error::ValenceNotApplicable { .. })
        ));
    }

    #[test]
    fn eta_form_expansion_matches_evaluator() {
        let field = CycloField::new(12).unwrap();
        for src in [
            "T(1,2)",
            "Tb(3,12)",
            "Tb(0,9)",
            "E(6)^2",
            "q^2 * T(1,2)*T(9,18)/(T(3,6)*E(3)^2)",
            "Tb(2,6)*Tb(27,54)/Tb(9,18)^2",
            "T(30,54)*Tb(14,18)^-1",
        ] {
            let expr = dsl::parse(src).unwrap();
            let form = EtaQuotientForm::from_expr(&expr).unwrap();
            let direct = form.expansion(&field, 50).unwrap();
            let via_eval = dsl::evaluate(&expr, &field, 60).unwrap().truncate(50);
            let res = direct.residual(&via_eval).unwrap();
            assert!(res.is_zero(), "{}: {:?}", src, res);
        }
    }

    #[test]
    fn quasi_periodic_reduction_in_conversion() {
        // T(a + m, m) = -q^{-a} T(a, m): check via expansion
        let field = CycloField::new(12).unwrap();
        let big = EtaQuotientForm::from_expr(&dsl::parse("T(7,5)").unwrap()).unwrap();
        let direct = big.expansion(&field, 40).unwrap();
        let reference = dsl::evaluate(&dsl::parse("T(7,5)").unwrap(), &field, 40).unwrap();
        assert!(direct.residual(&reference).unwrap().is_zero());
    }
}
