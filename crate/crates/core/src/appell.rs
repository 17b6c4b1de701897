//! The Appell-Lerch sum m(x, z; q) and the D_n combinations.
//!
//! m(x, z; q) := (1/Theta(z;q)) sum_{r in Z} (-1)^r q^binom(r,2) z^r / (1 - q^{r-1} x z)
//!
//! For monomial x, z and base the denominators are binomials 1 - c q^e with a
//! root-of-unity c, so each bilateral summand expands geometrically:
//! directly for e > 0, through 1/(1-cq^e) = -sum_{k>=1} c^{-k} q^{-ek} for
//! e < 0, and as the exact constant 1/(1-c) for e = 0 with c != 1. The
//! minimal exponent contributed by the r-th summand grows quadratically in
//! |r|, which truncates the bilateral sum. Division by Theta(z;q) happens
//! last, as a single inversion.
//!
//! D_n(x,z,z';q) := m(x,z;q)
//!     - sum_{r=0}^{n-1} q^{-binom(r+1,2)} (-x)^r m(-q^{binom(n,2)-nr} (-x)^n, z'; q^{n^2}),
//!
//! and `dn_rhs` builds the finite sum of theta quotients this combination
//! equals for generic parameters.

use std::sync::Arc;

use crate::cyclotomic::CycloField;
use crate::error::{Error, Result};
use crate::series::{geometric, QSeries};
use crate::theta::{pochhammer, theta, Monomial, PochLen};

/// Parameters of one Appell sum evaluation.
#[derive(Clone, Copy, Debug)]
pub struct AppellCall {
    pub x: Monomial,
    pub z: Monomial,
    pub base: Monomial,
    pub order: i64,
}

/// Parameters of a D_n combination.
#[derive(Clone, Copy, Debug)]
pub struct DnSpec {
    pub n: u32,
    pub x: Monomial,
    pub z: Monomial,
    pub zprime: Monomial,
    pub base: Monomial,
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Re-run a computation with a widened internal order until the output
/// window reaches the requested order. The precision loss of a fixed
/// expression is a constant (twice the valuations of its denominators), so
/// this converges in a bounded number of passes.
pub(crate) fn with_target_order<F>(order: i64, f: F) -> Result<QSeries>
where
    F: Fn(i64) -> Result<QSeries>,
{
    let mut internal = order;
    let mut out = f(internal)?;
    for _ in 0..3 {
        if out.prec() >= order {
            break;
        }
        internal += order - out.prec();
        out = f(internal)?;
    }
    Ok(out)
}

/// True iff z lies on the zero lattice of Theta(.; base), i.e. z = base^k.
fn on_zero_lattice(field: &CycloField, z: Monomial, base: Monomial) -> bool {
    if base.d() == 0 {
        return false;
    }
    if z.d() % base.d() != 0 {
        return false;
    }
    let k = z.d() / base.d();
    (z.j() - k * base.j()).rem_euclid(field.k() as i64) == 0
}

/// The truncated Appell sum m(x, z; base).
pub fn appell_m(
    field: &Arc<CycloField>,
    x: Monomial,
    z: Monomial,
    base: Monomial,
    order: i64,
) -> Result<QSeries> {
    if base.d() < 1 {
        return Err(Error::BadThetaBase { d: base.d() });
    }
    if on_zero_lattice(field, z, base) {
        return Err(Error::ZLattice {
            z: z.to_string(),
            base: base.to_string(),
        });
    }
    // A denominator 1 - q^{e_r} with unit coefficient degenerates iff
    // e_r = base.d (r-1) + x.d + z.d = 0 has an integer solution whose
    // coefficient index also vanishes.
    let s = x.d() + z.d();
    if s % base.d() == 0 {
        let r = 1 - s / base.d();
        let cj = (base.j() * (r - 1) + x.j() + z.j()).rem_euclid(field.k() as i64);
        if cj == 0 {
            return Err(Error::NonGenericPole { r });
        }
    }
    with_target_order(order, |internal| appell_m_raw(field, x, z, base, internal))
}

fn appell_m_raw(
    field: &Arc<CycloField>,
    x: Monomial,
    z: Monomial,
    base: Monomial,
    order: i64,
) -> Result<QSeries> {
    let num_exp = |r: i64| base.d() * binom2(r) + z.d() * r;
    let den_exp = |r: i64| base.d() * (r - 1) + x.d() + z.d();
    // lowest exponent the r-th summand can contribute; convex in r
    let term_min = |r: i64| num_exp(r) + (-den_exp(r)).max(0);

    let mut sum = QSeries::zero(field, order);
    let mut add_term = |r: i64| -> Result<()> {
        if term_min(r) >= order {
            return Ok(());
        }
        let e_r = den_exp(r);
        let c_r = field.root_power(base.j() * (r - 1) + x.j() + z.j());
        let geo = geometric(field, &c_r, e_r, order - num_exp(r))
            .map_err(|_| Error::NonGenericPole { r })?;
        // (-1)^r base^binom(r,2) z^r
        let mut jnum = base.j() * binom2(r) + z.j() * r;
        if r.rem_euclid(2) == 1 {
            jnum += field.k() as i64 / 2;
        }
        sum = sum.add(&geo.monomial_mul(jnum, num_exp(r)));
        Ok(())
    };

    let mut r = 0i64;
    loop {
        let tm = term_min(r);
        if tm >= order && term_min(r + 1) >= tm {
            break;
        }
        add_term(r)?;
        r += 1;
    }
    let mut r = -1i64;
    loop {
        let tm = term_min(r);
        if tm >= order && term_min(r - 1) >= tm {
            break;
        }
        add_term(r)?;
        r -= 1;
    }

    let th = theta(field, z, base, order)?;
    let th_inv = th.invert().map_err(|_| Error::ZLattice {
        z: z.to_string(),
        base: base.to_string(),
    })?;
    Ok(sum.mul(&th_inv))
}

/// The combination D_n(x, z, z'; base) built from Appell sums.
pub fn dn_lhs(field: &Arc<CycloField>, spec: &DnSpec, order: i64) -> Result<QSeries> {
    let DnSpec {
        n,
        x,
        z,
        zprime,
        base,
    } = *spec;
    let n = n as i64;
    assert!(n >= 2, "D_n is defined for n >= 2");
    let negx = x.neg(field);
    let inner_base = base.pow(n * n, field);
    let mut acc = appell_m(field, x, z, base, order)?;
    for r in 0..n {
        // q^{-binom(r+1,2)} (-x)^r, powers of q meaning powers of the base
        let outer = base
            .pow(-binom2(r + 1), field)
            .mul(&negx.pow(r, field), field);
        let inner_x = base
            .pow(binom2(n) - n * r, field)
            .mul(&negx.pow(n, field), field)
            .neg(field);
        let inner = appell_m(field, inner_x, zprime, inner_base, order - outer.d())
            .map_err(|e| Error::InDnTerm {
                r,
                source: Box::new(e),
            })?;
        acc = acc.sub(&inner.monomial_mul(outer.j(), outer.d()));
    }
    Ok(acc)
}

/// The theta-quotient side of the D_n evaluation:
///
/// z' Theta_n^3 sum_{r=0}^{n-1} q^binom(r,2) (-xz)^r
///   Theta(-q^{binom(n,2)+r} (-x)^n z z'; q^n) Theta(q^{nr} z^n / z'; q^{n^2})
///   / [ Theta(xz;q) Theta(z';q^{n^2}) Theta(-q^binom(n,2)} (-x)^n z'; q^n) Theta(q^r z; q^n) ]
pub fn dn_rhs(field: &Arc<CycloField>, spec: &DnSpec, order: i64) -> Result<QSeries> {
    with_target_order(order, |internal| dn_rhs_raw(field, spec, internal))
}

fn dn_rhs_raw(field: &Arc<CycloField>, spec: &DnSpec, order: i64) -> Result<QSeries> {
    let DnSpec {
        n,
        x,
        z,
        zprime,
        base,
    } = *spec;
    let n = n as i64;
    let negx_n = x.neg(field).pow(n, field);
    let base_n = base.pow(n, field);
    let base_nn = base.pow(n * n, field);

    let denom_theta = |arg: Monomial, b: Monomial, name: &str| -> Result<QSeries> {
        let t = theta(field, arg, b, order)?;
        if t.is_zero_on_window() {
            return Err(Error::DegenerateDenominator {
                factor: format!("Theta({}; {}) [{}]", arg, b, name),
            });
        }
        Ok(t)
    };

    let d1 = denom_theta(x.mul(&z, field), base, "Theta(x z; q)")?;
    let d2 = denom_theta(zprime, base_nn, "Theta(z'; q^(n^2))")?;
    let d3_arg = base
        .pow(binom2(n), field)
        .mul(&negx_n, field)
        .mul(&zprime, field)
        .neg(field);
    let d3 = denom_theta(d3_arg, base_n, "Theta(-q^binom(n,2) (-x)^n z'; q^n)")?;

    let mut bracket = QSeries::zero(field, order);
    for r in 0..n {
        let d4 = denom_theta(base.pow(r, field).mul(&z, field), base_n, "Theta(q^r z; q^n)")?;
        let t1_arg = base
            .pow(binom2(n) + r, field)
            .mul(&negx_n, field)
            .mul(&z, field)
            .mul(&zprime, field)
            .neg(field);
        let t1 = theta(field, t1_arg, base_n, order)?;
        let t2_arg = base
            .pow(n * r, field)
            .mul(&z.pow(n, field), field)
            .mul(&zprime.inv(field), field);
        let t2 = theta(field, t2_arg, base_nn, order)?;
        // q^binom(r,2) (-xz)^r
        let lead = base
            .pow(binom2(r), field)
            .mul(&x.mul(&z, field).neg(field).pow(r, field), field);
        let term = t1.mul(&t2).mul(&d4.invert()?).monomial_mul(lead.j(), lead.d());
        bracket = bracket.add(&term);
    }

    let theta_n3 = pochhammer(field, base_n, base_n, PochLen::Infinite, order)?.pow(3)?;
    let denom = d1.mul(&d2).mul(&d3);
    let result = bracket
        .mul(&theta_n3)
        .mul(&denom.invert()?)
        .monomial_mul(zprime.j(), zprime.d());
    Ok(result)
}

/// The theta-quotient value of m(x, z1; q) - m(x, z0; q):
///
/// z0 (q)_inf^3 Theta(z1/z0; q) Theta(x z0 z1; q)
///   / [ Theta(z0;q) Theta(z1;q) Theta(x z0;q) Theta(x z1;q) ]
pub fn changing_z(
    field: &Arc<CycloField>,
    x: Monomial,
    z0: Monomial,
    z1: Monomial,
    base: Monomial,
    order: i64,
) -> Result<QSeries> {
    with_target_order(order, |internal| {
        let denom_theta = |arg: Monomial, name: &str| -> Result<QSeries> {
            let t = theta(field, arg, base, internal)?;
            if t.is_zero_on_window() {
                return Err(Error::DegenerateDenominator {
                    factor: format!("Theta({}; {}) [{}]", arg, base, name),
                });
            }
            Ok(t)
        };
        let n1 = theta(field, z1.mul(&z0.inv(field), field), base, internal)?;
        let n2 = theta(
            field,
            x.mul(&z0, field).mul(&z1, field),
            base,
            internal,
        )?;
        let d = denom_theta(z0, "Theta(z0;q)")?
            .mul(&denom_theta(z1, "Theta(z1;q)")?)
            .mul(&denom_theta(x.mul(&z0, field), "Theta(x z0;q)")?)
            .mul(&denom_theta(x.mul(&z1, field), "Theta(x z1;q)")?);
        let euler3 = pochhammer(field, base, base, PochLen::Infinite, internal)?.pow(3)?;
        let num = n1.mul(&n2).mul(&euler3);
        if num.is_zero_on_window() {
            // both sides vanish identically (e.g. z0 = z1)
            return Ok(QSeries::zero(field, num.prec().min(internal)));
        }
        Ok(num.mul(&d.invert()?).monomial_mul(z0.j(), z0.d()))
    })
}
