use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sector numerator must be positive, got n = {0}")]
    NonPositiveNumerator(i64),
    #[error("sector denominator must be non-negative, got m = {0}")]
    NegativeDenominator(i64),
    #[error("matrix is not unimodular: determinant {0}")]
    NotUnimodular(Rational),
    #[error("vectors ({}, {}) and ({}, {}) are parallel", .omega1.0, .omega1.1, .omega2.0, .omega2.1)]
    ParallelRays {
        omega1: (i64, i64),
        omega2: Box<(Rational, Rational)>,
    },
    #[error("first ray ({0}, {1}) must have r >= 1 and gcd(r, s) = 1")]
    BadPrimitiveRay(i64, i64),
    #[error("window bound must be non-negative, got {0}")]
    NegativeWindow(i64),
    #[error("window bound must be at least 1, got {0}")]
    EmptyWindow(i64),
    #[error("point ({x}, {y}) is not a lattice point of the sector {n}/{m}")]
    PointOutsideSector { x: Rational, y: i64, n: i64, m: i64 },
    #[error("coefficient {coefficient} = {value} of the alpha form is not an integer")]
    NonIntegralAlphaForm { coefficient: &'static str, value: Rational },
    /// The linear part `(x, y)` of the step difference, which must vanish.
    #[error("difference along the staircase step is not constant (x: {}, y: {})", .linear.0, .linear.1)]
    NonConstantDifference { linear: Box<(Rational, Rational)> },
    #[error("n/l = {n_over_l} does not divide l = {l}")]
    StaircaseSpacing { l: i64, n_over_l: i64 },
    #[error("{name} = {value} is not an integer")]
    NonIntegral { name: &'static str, value: Rational },
    #[error("constant term mismatch for k = {k}: formula gives {formula}, expected {expected}")]
    ConstantMismatch { k: i64, formula: Rational, expected: i64 },
    #[error("k = {k} is not admissible on the sector {n}/{m}: {reason}")]
    Inadmissible { n: i64, m: i64, k: i64, reason: String },
    #[error("empty or inverted bound for {name}: {lo}..{hi}")]
    BadBounds { name: &'static str, lo: i64, hi: i64 },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
