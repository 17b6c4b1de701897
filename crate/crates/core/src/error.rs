//! Error types shared across the engine.

use thiserror::Error;

/// Errors produced by the series engine, the expression language, and the
/// verification layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid field configuration (K must be a positive even integer).
    #[error("invalid cyclotomic configuration: {0}")]
    Config(String),

    /// Division by zero in the coefficient field.
    #[error("division by zero in Q(zeta_{k})")]
    DivisionByZero { k: u32 },

    /// A series with no nonzero coefficient inside its precision window
    /// cannot be inverted.
    #[error("series is indistinguishable from zero at precision O(q^{prec}) and cannot be inverted")]
    NotInvertible { prec: i64 },

    /// Substitution q -> zeta^j q^t requires t >= 1.
    #[error("substitution step t must be >= 1, got {t}")]
    BadSubstitution { t: i64 },

    /// An infinite Pochhammer product whose factor exponents do not increase
    /// has no formal limit.
    #[error("divergent infinite product: factor exponents {detail}")]
    DivergentProduct { detail: String },

    /// Theta base must have positive q-exponent.
    #[error("theta base must have positive q-exponent, got q-degree {d}")]
    BadThetaBase { d: i64 },

    /// The comparison window of two series is empty.
    #[error("insufficient precision: empty comparison window [{lo}, {hi})")]
    InsufficientPrecision { lo: i64, hi: i64 },

    /// Appell argument z lies on the zero lattice of Theta(z; base).
    #[error("non-generic Appell argument: Theta({z}; {base}) vanishes identically")]
    ZLattice { z: String, base: String },

    /// An Appell denominator 1 - q^{r-1} x z degenerates to zero.
    #[error("non-generic Appell pole: denominator vanishes at bilateral index r = {r}")]
    NonGenericPole { r: i64 },

    /// A theta factor in a quotient denominator vanishes identically.
    #[error("degenerate denominator: {factor} is the zero series")]
    DegenerateDenominator { factor: String },

    /// Error in a D_n constituent, annotated with the offending summand.
    #[error("in D_n summand r = {r}: {source}")]
    InDnTerm {
        r: i64,
        #[source]
        source: Box<Error>,
    },

    /// Lexical error with source position.
    #[error("lexical error at column {col}: {msg}")]
    Lex { col: usize, msg: String },

    /// Syntax error with source position and expectation set.
    #[error("syntax error at column {col}: expected {expected}, found {found}")]
    Syntax {
        col: usize,
        expected: String,
        found: String,
    },

    /// Wrong number of arguments to a DSL function.
    #[error("arity error at column {col}: {name} takes {expected} argument(s)")]
    Arity {
        col: usize,
        name: String,
        expected: usize,
    },

    /// A monomial was required but a general expression was supplied.
    #[error("non-monomial argument at column {col}: {name} requires a monomial of the form [-][w^j|zeta^j][q^k]")]
    NonMonomialArg { col: usize, name: String },

    /// Evaluation failure annotated with the failing subexpression.
    #[error("while evaluating `{at}`: {source}")]
    Eval {
        at: String,
        #[source]
        source: Box<Error>,
    },

    /// The primitive cube root w needs 3 | K.
    #[error("the constant w (a primitive third root of unity) requires 3 | K, but K = {k}")]
    OmegaUnavailable { k: u32 },

    /// Registry lookup failure.
    #[error("unknown identity: {name}")]
    UnknownIdentity { name: String },

    /// The identity requires a larger coefficient field than configured.
    #[error("identity {name} needs cyclotomic order {needed} but the run is configured with K = {k}")]
    FieldTooSmall { name: String, needed: u32, k: u32 },

    /// An expression cannot be put in eta-quotient form for the valence bound.
    #[error("valence mode refused: {detail}")]
    ValenceNotApplicable { detail: String },

    /// An eta-quotient form fails a modularity gate.
    #[error("modularity gate failed for {name}: {detail}")]
    NonModularForm { name: String, detail: String },

    /// Identity ingestion failure.
    #[error("identity file error: {0}")]
    Ingest(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wrap an error with the pretty-printed subexpression it arose in.
    pub fn at(self, context: impl Into<String>) -> Error {
        Error::Eval {
            at: context.into(),
            source: Box::new(self),
        }
    }
}
