//! Seeded random generators shared by the unit, property, and acceptance
//! test suites. Not part of the public API surface.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use crate::cyclotomic::{rat, CycloField, CycloNum};
use crate::series::QSeries;
use crate::theta::Monomial;

/// Random element with small rational coordinates; rational-only most of the
/// time so the fast paths and the general path both get exercised.
pub fn random_cyclo(field: &CycloField, rng: &mut ChaCha8Rng) -> CycloNum {
    if rng.gen_bool(0.7) {
        field.from_rational(rat(rng.gen_range(-9..=9), rng.gen_range(1..=3)))
    } else {
        let mut acc = field.from_integer(rng.gen_range(-3..=3));
        let term = field.scale(
            &field.root_power(rng.gen_range(0..field.k() as i64)),
            &rat(rng.gen_range(-3..=3), 1),
        );
        acc = field.add(&acc, &term);
        acc
    }
}

/// Random series supported on [min_exp, prec) with ~60% nonzero entries.
pub fn random_series(
    field: &Arc<CycloField>,
    rng: &mut ChaCha8Rng,
    min_exp: i64,
    prec: i64,
) -> QSeries {
    let mut terms = Vec::new();
    for e in min_exp..prec {
        if rng.gen_bool(0.6) {
            terms.push((e, random_cyclo(field, rng)));
        }
    }
    QSeries::from_terms(field, &terms, prec)
}

/// Random series with an invertible coefficient at exponent zero.
pub fn random_unit_series(field: &Arc<CycloField>, rng: &mut ChaCha8Rng, prec: i64) -> QSeries {
    let mut s = random_series(field, rng, 1, prec);
    let unit = QSeries::constant(field, field.from_integer(rng.gen_range(1..=3)), prec);
    s = s.add(&unit);
    s
}

/// Random monomial zeta^j q^d with the q-degree in [lo_d, hi_d].
pub fn random_monomial(
    field: &CycloField,
    rng: &mut ChaCha8Rng,
    lo_d: i64,
    hi_d: i64,
) -> Monomial {
    let j = rng.gen_range(0..field.k() as i64);
    let d = rng.gen_range(lo_d..=hi_d);
    Monomial::new(field, j, d)
}

/// Random sign-only monomial (+-q^d), the shape the registry identities use.
pub fn random_pm_monomial(
    field: &CycloField,
    rng: &mut ChaCha8Rng,
    lo_d: i64,
    hi_d: i64,
) -> Monomial {
    let j = if rng.gen_bool(0.5) { 0 } else { field.k() as i64 / 2 };
    let d = rng.gen_range(lo_d..=hi_d);
    Monomial::new(field, j, d)
}
