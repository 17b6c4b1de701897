//! Exact q-series engine and identity verifier.
//!
//! The crate expands theta products, Appell-Lerch sums, and the classical
//! second-, sixth-, eighth-, and tenth-order mock theta functions as
//! truncated Laurent series over a cyclotomic coefficient field Q(zeta_K),
//! and verifies a built-in registry of identities by exact residual
//! comparison. For identities between eta/theta quotients it can also compute
//! the valence-formula truncation bound on Gamma_1(N) that turns a finite
//! coefficient check into a proof.
//!
//! Layers, bottom up:
//!
//! - [`cyclotomic`]: exact arithmetic in Q(zeta_K)
//! - [`series`]: truncated Laurent series with tracked precision windows
//! - [`theta`]: Pochhammer symbols, theta functions, and the usual shorthands
//! - [`appell`]: the Appell sum m(x,z;q), the D_n combinations, and the
//!   theta-quotient expansion they equal
//! - [`mock`]: the mock theta functions, each with an Eulerian and an Appell
//!   construction
//! - [`dsl`]: a small expression language so identities live as text
//! - [`registry`] / [`verifier`]: the identity registry and the verification
//!   driver
//! - [`valence`]: cusps of Gamma_1(N), invariant orders, and the rigorous
//!   truncation bound

pub mod appell;
pub mod cyclotomic;
pub mod dsl;
pub mod error;
pub mod mock;
pub mod registry;
pub mod series;
pub mod theta;
pub mod valence;
pub mod verifier;

#[cfg(any(test, feature = "testing"))]
#[doc(hidden)]
pub mod testing;

pub use cyclotomic::{CycloField, CycloNum, Rat};
pub use error::{Error, Result};
pub use series::QSeries;
pub use theta::Monomial;
