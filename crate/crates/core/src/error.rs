use thiserror::Error;

/// Errors raised by the exact-arithmetic core and the knot/Verlinde layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid torus knot ({p}, {q}): {reason}")]
    InvalidKnot { p: i64, q: i64, reason: String },

    #[error("cyclotomic order mismatch: Q(zeta_{left}) vs Q(zeta_{right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("division by zero in Q(zeta_{order})")]
    DivisionByZero { order: usize },

    #[error("{divisor} does not divide the ambient order {ambient}")]
    NotDivisible { divisor: usize, ambient: usize },

    #[error("index ({a}, {b}) is outside the grid 0<a<{p}, 0<b<{q}")]
    OutOfGrid { a: i64, b: i64, p: u32, q: u32 },

    #[error("({a}, {b}) is not a component label: a and b must have the same parity")]
    ParityMismatch { a: u32, b: u32 },

    #[error("degenerate projective coordinate [0 : 0] at t = {t}")]
    DegenerateProjective { t: String },

    #[error("negative index {0} for the second-kind Chebyshev polynomial")]
    NegativeIndex(i64),

    #[error("invalid puncture spec {spec:?}: {reason}")]
    PunctureSpec { spec: String, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
