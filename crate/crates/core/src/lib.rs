//! Quadratic packing polynomials on rational sectors.
//!
//! A packing polynomial on the lattice points `I(n/m)` of the sector
//! `{0 <= y <= (n/m) x}` is a polynomial mapping them bijectively onto
//! `0, 1, 2, ...`. This crate classifies the quadratic ones for every
//! rational slope, builds them in closed form, and checks them with an
//! independent certified-window verifier and exhaustive coefficient search.
//!
//! ```
//! use qpp_core::{classify, make_sector};
//!
//! let qpps = classify(make_sector(12, 7).unwrap());
//! assert_eq!(qpps.len(), 4);
//! assert_eq!(qpps[2].poly.to_string(), "6*x^2 - 6*x*y + 3/2*y^2 - 8*x + 11/2*y + 2");
//! ```

pub mod classify;
pub mod error;
pub mod format;
pub mod geometry;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod search;
pub mod staircase;
pub mod verify;

pub use classify::{
    admissibility, admissible_ks, classify, constant_term_f, equivalence_class, flipped_sector, homogeneous_form,
    qpp_for, sector_arithmetic, Admissibility, ClassifiedQpp, SectorArithmetic,
};
pub use error::{Error, Result};
pub use format::{coefficient_tuple, factored_main_form};
pub use geometry::{
    flip_map, make_sector, reduce_general_sector, skew_map, GeneralReduction, LatticePoint, SectorSpec, UnimodularMap,
};
pub use parse::{parse_coefficients, parse_poly, parse_poly_spec};
pub use poly::{
    conjugate, derive_d, expand_main_formula, expand_transformed_form, step_difference_k, to_alpha_form,
    AlphaFormCoeffs, QuadPoly,
};
pub use rational::Rational;
pub use search::{brute_force_search, CoeffRange, SearchBounds, SearchHit, SearchMode, SearchOptions};
pub use staircase::{lattice_window, staircase_index, staircase_points, staircase_size, yif, Staircase};
pub use verify::{
    certify, first_steps_check, packing_window_verify, value_floor, CertifyOptions, FailReason, ValueFloor, Verdict,
    WindowCertificate,
};
