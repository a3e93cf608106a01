//! Certified two-sided envelope bounds for the trigonometric functions with
//! poles (tan, sec, cot, cosec) and for Bessel functions.
//!
//! Each target function is expanded around its poles at x = ±1 as a single
//! pole term 1/(1-x^2) plus an alternating power series in (1-x^2) whose
//! coefficients are finite combinations of zeta or eta values at even
//! integers. Because the inner series alternates with decreasing terms,
//! truncations of consecutive orders enclose the function, and for tan and
//! sec the enclosure can be sharpened with exact tail constants. The Bessel
//! analogue expands x^{-p} J_p(x) in powers of (r^2 - x^2) with certified
//! tail constants on both sides.
//!
//! Every coefficient is computed by two independent routes (closed form in
//! exact rational arithmetic, and the defining infinite sum with a certified
//! truncation tail) and cross-verified; see the [`verify`] module for the
//! full sweep suite.
//!
//! ```
//! use polebound::{
//!     bound, build_even_zeta_cache, reference_value, CoefficientTable, EnvelopeQuery,
//!     EnvelopeTables, FamilyKind, RemainderConstants, Side,
//! };
//!
//! let cache = build_even_zeta_cache(12).unwrap();
//! let table = CoefficientTable::closed(FamilyKind::Tan, 12, &cache).unwrap();
//! let constants = RemainderConstants::build(FamilyKind::Tan, 8, &table).unwrap();
//! let tables = EnvelopeTables { coeffs: &table, constants: Some(&constants) };
//!
//! let x = 0.75;
//! let lower = bound(
//!     &EnvelopeQuery { family: FamilyKind::Tan, order: 2, side: Side::Lower, sharpened: true },
//!     x,
//!     &tables,
//! )
//! .unwrap();
//! let upper = bound(
//!     &EnvelopeQuery { family: FamilyKind::Tan, order: 2, side: Side::Upper, sharpened: false },
//!     x,
//!     &tables,
//! )
//! .unwrap();
//! let f = reference_value(FamilyKind::Tan, x).unwrap();
//! assert!(lower.value <= f && f <= upper.value);
//! assert!(upper.value - lower.value < 2e-4);
//! ```

#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::manual_is_multiple_of)]

pub mod bessel;
pub mod coeffs;
pub mod envelope;
pub mod error;
pub mod special;
pub mod verify;

mod dd;
mod kahan;
mod trig;

pub use bessel::{bessel_bounds, bessel_j_normalized, build_expansion, first_zero, BesselExpansion};
pub use coeffs::{
    coeff_closed, coeff_direct, remainder_constant, shifted_direct, shifted_recursive,
    CoefficientTable, FamilyKind, Method, RemainderConstants, ShiftedMethod, ShiftedTable,
};
pub use envelope::{
    bound, crossover_report, partial_expansion, reference_value, remainder_magnitude_bound,
    shifted_expansion, taylor_partial, BoundValue, CrossoverRow, EnvelopeQuery, EnvelopeTables,
    ExpansionKind, Side,
};
pub use error::{Error, Result};
pub use special::{bernoulli_even, build_even_zeta_cache, EvenZetaCache, Rational};
pub use verify::{linspace, run_verification, CheckOutcome, VerifyConfig, VerifyReport};
