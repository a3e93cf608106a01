//! Certified lower/upper envelope pairs of every order for the four pole
//! families, plus the truncated expansions themselves, the remainder
//! magnitude bound, the Taylor comparison for tan, and the shifted-center
//! series.
//!
//! Every family takes the shape
//!
//! ```text
//! f(x) = prefactor(x) * [ 1/(1-x^2) +- sum_{k>=0} (-1)^k c_{k+1}/4^{k+1} (1-x^2)^k ]
//! ```
//!
//! with prefactor 8/pi^2 (tan), 4/pi (sec) or 2x^2 (cot, cosec). Because the
//! inner series alternates with decreasing terms, consecutive truncations
//! bracket the function; for tan and sec the bracket can be sharpened by
//! replacing the first omitted term with the exact tail constant H/J.

use std::f64::consts::PI;

use crate::coeffs::{CoefficientTable, FamilyKind, RemainderConstants};
use crate::error::{Error, Result};
use crate::special::EvenZetaCache;
use crate::trig;

/// Which side of the function a bound lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// A request for one certified bound value.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeQuery {
    pub family: FamilyKind,
    /// Truncation order m >= 0: the plain side retains inner terms k = 0..m.
    pub order: usize,
    pub side: Side,
    /// Use the H/J constant on the truncation term where the family provides
    /// one; ignored on the side whose plain truncation already bounds.
    pub sharpened: bool,
}

/// A bound evaluation result.
#[derive(Debug, Clone, Copy)]
pub struct BoundValue {
    pub value: f64,
    /// Open interval of x on which the bound construction is valid.
    pub valid_domain: (f64, f64),
    /// Whether the side obligation is backed by a verified bracketing
    /// argument (always for tan/sec; after the term-monotonicity check for
    /// cot/cosec).
    pub certified: bool,
}

/// Coefficient tables a bound evaluation draws from.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeTables<'a> {
    pub coeffs: &'a CoefficientTable,
    /// Sharpened constants; required only when `sharpened` is requested.
    pub constants: Option<&'a RemainderConstants>,
}

fn check_x(x: f64) -> Result<()> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain {
            what: "x".into(),
            lo: -1.0,
            hi: 1.0,
        });
    }
    Ok(())
}

/// 1 - x^2 computed as (1-x)(1+x): both factors are exact near the poles,
/// keeping the pole term accurate to a couple of ulps across the interval.
fn one_minus_x_sq(x: f64) -> f64 {
    (1.0 - x) * (1.0 + x)
}

/// Ground-truth value of the family's target function at x, using the
/// platform trig functions (argument-reflected near the poles):
/// tan(pi x/2)/(pi x/2), sec(pi x/2), 1 - pi x cot(pi x), pi x cosec(pi x) - 1.
pub fn reference_value(family: FamilyKind, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(match family {
        FamilyKind::Tan => trig::tan_ratio(x),
        FamilyKind::Sec => trig::sec_half(x),
        FamilyKind::Cot => trig::one_minus_cot(x),
        FamilyKind::Cosec => trig::cosec_minus_one(x),
    })
}

/// Multiplier in front of the bracket for this family.
pub fn family_prefactor(family: FamilyKind, x: f64) -> f64 {
    match family {
        FamilyKind::Tan => 8.0 / (PI * PI),
        FamilyKind::Sec => 4.0 / PI,
        FamilyKind::Cot | FamilyKind::Cosec => 2.0 * x * x,
    }
}

/// Signed bracket coefficients q_k = sign * (-1)^k c_{k+1}/4^{k+1} for
/// k = 0..terms-1, where sign is -1 for the alternating-prefactor families
/// (sec, cosec) and +1 otherwise.
fn bracket_coefficients(family: FamilyKind, terms: usize, table: &CoefficientTable) -> Result<Vec<f64>> {
    if table.family() != family {
        return Err(Error::InvalidArgument(format!(
            "table holds {} coefficients, query is for {family}",
            table.family()
        )));
    }
    if table.order_max() < terms {
        return Err(Error::InvalidArgument(format!(
            "table covers orders 1..={}, need {terms}",
            table.order_max()
        )));
    }
    let sign = if family.is_alternating() { -1.0 } else { 1.0 };
    Ok((0..terms)
        .map(|k| {
            let s = if k % 2 == 0 { sign } else { -sign };
            s * table.value(k + 1) / 4f64.powi(k as i32 + 1)
        })
        .collect())
}

fn horner(coeffs: &[f64], u: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
}

/// Bracket value 1/u + sum q_k u^k for a plain truncation with the given
/// number of inner terms. Exposed because the cot/cosec bounds degenerate to
/// 0 = 0 at x = 0 and their bracketing is checked on the inner series there.
pub fn inner_bracket_value(
    family: FamilyKind,
    u: f64,
    terms: usize,
    table: &CoefficientTable,
) -> Result<f64> {
    let q = bracket_coefficients(family, terms, table)?;
    Ok(1.0 / u + horner(&q, u))
}

/// Truncated expansion through inner term k = m.
pub fn partial_expansion(
    family: FamilyKind,
    x: f64,
    m: usize,
    table: &CoefficientTable,
) -> Result<f64> {
    check_x(x)?;
    let q = bracket_coefficients(family, m + 1, table)?;
    let u = one_minus_x_sq(x);
    Ok(family_prefactor(family, x) * (1.0 / u + horner(&q, u)))
}

/// The side on which the plain truncation through k = m lies: the remainder
/// sign is (-1)^{m+1} for tan/cot and mirrored for sec/cosec.
fn natural_side(family: FamilyKind, m: usize) -> Side {
    let even = m % 2 == 0;
    match (family.is_alternating(), even) {
        (false, true) => Side::Upper,
        (false, false) => Side::Lower,
        (true, true) => Side::Lower,
        (true, false) => Side::Upper,
    }
}

/// Bracket coefficients for a full bound query (plain or sharpened). The
/// bound value is prefactor(x) * (1/u + sum q_k u^k).
pub fn bound_bracket_coefficients(query: &EnvelopeQuery, tables: &EnvelopeTables<'_>) -> Result<Vec<f64>> {
    let EnvelopeQuery {
        family,
        order: m,
        side,
        sharpened,
    } = *query;
    if sharpened && !family.has_sharpened_constants() {
        return Err(Error::UnsupportedOption(format!(
            "sharpened bounds are not available for {family}; only plain truncation \
             brackets exist there"
        )));
    }
    if side == natural_side(family, m) {
        // Plain truncation through k = m already bounds on this side.
        bracket_coefficients(family, m + 1, tables.coeffs)
    } else if sharpened {
        // Replace the omitted term with the exact tail constant.
        let constants = tables.constants.ok_or_else(|| {
            Error::InvalidArgument("sharpened bound requested without a constants table".into())
        })?;
        if constants.family() != family {
            return Err(Error::InvalidArgument(format!(
                "constants table is for {}, query is for {family}",
                constants.family()
            )));
        }
        if constants.count() < m + 1 {
            return Err(Error::InvalidArgument(format!(
                "constants table covers 1..={}, need {}",
                constants.count(),
                m + 1
            )));
        }
        let mut q = bracket_coefficients(family, m, tables.coeffs)?;
        let sign = if family.is_alternating() { -1.0 } else { 1.0 };
        let s = if m % 2 == 0 { sign } else { -sign };
        q.push(s * constants.get(m + 1));
        Ok(q)
    } else {
        // Opposite side, plain: drop the last retained term.
        bracket_coefficients(family, m, tables.coeffs)
    }
}

/// Evaluate one certified bound. See the module docs for the construction;
/// the returned side obligation is lower.value <= f(x) <= upper.value.
pub fn bound(query: &EnvelopeQuery, x: f64, tables: &EnvelopeTables<'_>) -> Result<BoundValue> {
    check_x(x)?;
    let q = bound_bracket_coefficients(query, tables)?;
    let u = one_minus_x_sq(x);
    let value = family_prefactor(query.family, x) * (1.0 / u + horner(&q, u));
    let certified = if query.family.has_sharpened_constants() {
        true
    } else {
        truncation_certified(query.family, query.order, tables.coeffs)
    };
    Ok(BoundValue {
        value,
        valid_domain: (-1.0, 1.0),
        certified,
    })
}

/// Verify the alternating-bracket precondition for a cot/cosec truncation at
/// order m: every stored coefficient beyond the first omitted one must keep
/// the term ratio c_{p+1}/(4 c_p) below 1, so the inner tail alternates with
/// decreasing terms for every u in (0, 1].
fn truncation_certified(family: FamilyKind, m: usize, table: &CoefficientTable) -> bool {
    debug_assert!(matches!(family, FamilyKind::Cot | FamilyKind::Cosec));
    let first_omitted = m + 2;
    if table.order_max() < first_omitted + 1 {
        return false;
    }
    for p in first_omitted..table.order_max() {
        let c = table.value(p);
        let next = table.value(p + 1);
        if !(c > 0.0 && next > 0.0 && next < 4.0 * c) {
            return false;
        }
    }
    true
}

/// Magnitude bound (1-x^2)^{m+1} / 2^{3m+5} on the inner-series remainder of
/// the tan expansion after terms k = 0..m; dominates
/// |reference - partial_expansion| * pi^2/8.
pub fn remainder_magnitude_bound(x: f64, m: usize) -> Result<f64> {
    check_x(x)?;
    let u = one_minus_x_sq(x);
    Ok(u.powi(m as i32 + 1) * 2f64.powi(-(3 * m as i32 + 5)))
}

/// Partial Taylor-type sum 1 + (8/pi^2) sum_{k=1}^{m} lambda(2k+2) x^{2k}
/// for tan(pi x/2)/(pi x/2).
pub fn taylor_partial(x: f64, m: usize, cache: &EvenZetaCache) -> Result<f64> {
    check_x(x)?;
    if m == 0 {
        return Err(Error::InvalidArgument("taylor order must be >= 1".into()));
    }
    if cache.max_index() < m + 1 {
        return Err(Error::InvalidArgument(format!(
            "zeta cache covers lambda arguments up to {}, need {}",
            2 * cache.max_index(),
            2 * m + 2
        )));
    }
    let x2 = x * x;
    let mut acc = 0.0;
    for k in (1..=m).rev() {
        acc = acc * x2 + cache.lambda_2m(k + 1);
    }
    Ok(1.0 + 8.0 / (PI * PI) * x2 * acc)
}

/// Which of the two competing truncations wins at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionKind {
    Laurent,
    Taylor,
}

impl ExpansionKind {
    pub fn name(self) -> &'static str {
        match self {
            ExpansionKind::Laurent => "laurent",
            ExpansionKind::Taylor => "taylor",
        }
    }
}

/// Per-point comparison of the two truncation remainders at order m.
#[derive(Debug, Clone, Copy)]
pub struct CrossoverRow {
    pub x: f64,
    pub laurent_remainder: f64,
    pub taylor_remainder: f64,
    pub winner: ExpansionKind,
}

/// Remainder of the pole-anchored expansion after inner terms k = 0..m,
/// evaluated as the (alternating, fast-decaying) coefficient tail itself.
/// At large m the remainder sits far below f64 resolution of the reference,
/// so subtracting partial from reference would only measure rounding noise;
/// the tail sum is mathematically identical and numerically well-posed.
pub fn laurent_remainder(x: f64, m: usize, table: &CoefficientTable) -> Result<f64> {
    check_x(x)?;
    if table.family() != FamilyKind::Tan {
        return Err(Error::InvalidArgument(
            "crossover remainders are defined for the tan family".into(),
        ));
    }
    let avail = table.order_max().saturating_sub(m + 1);
    if avail < 8 {
        return Err(Error::InvalidArgument(format!(
            "table covers orders 1..={}, need at least {} past the truncation for the \
             remainder tail",
            table.order_max(),
            m + 2 + 8
        )));
    }
    let u = one_minus_x_sq(x);
    let terms = avail.min(40);
    // tail = sum_{l>=0} (-1)^l T_{m+2+l}/4^{m+2+l} u^l; consecutive terms
    // shrink by at least ~u/8, so 40 terms are far past f64 resolution.
    let mut acc = 0.0;
    for l in (0..terms).rev() {
        let p = m + 2 + l;
        let c = table.value(p) / 4f64.powi(p as i32);
        acc = -acc * u + c;
    }
    Ok(8.0 / (PI * PI) * acc.abs() * u.powi(m as i32 + 1))
}

/// Remainder of the Taylor-type sum after terms k = 1..m: the lambda tail
/// through the cache horizon plus a geometric closure (lambda -> 1).
pub fn taylor_remainder(x: f64, m: usize, cache: &EvenZetaCache) -> Result<f64> {
    check_x(x)?;
    if cache.max_index() < m + 2 {
        return Err(Error::InvalidArgument(format!(
            "zeta cache covers lambda arguments up to {}, need beyond {}",
            2 * cache.max_index(),
            2 * m + 2
        )));
    }
    let x2 = x * x;
    let hi = cache.max_index() - 1;
    let mut acc = 0.0;
    for k in ((m + 1)..=hi).rev() {
        acc = acc * x2 + cache.lambda_2m(k + 1);
    }
    let tail = acc * x2.powi(m as i32 + 1) + x2.powi(hi as i32 + 1) / (1.0 - x2);
    Ok(8.0 / (PI * PI) * tail)
}

/// Compare the two expansions' remainders at truncation m over a grid in
/// (0, 1).
pub fn crossover_report(
    m: usize,
    x_grid: &[f64],
    table: &CoefficientTable,
    cache: &EvenZetaCache,
) -> Result<Vec<CrossoverRow>> {
    let mut rows = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain {
                what: "crossover grid point".into(),
                lo: 0.0,
                hi: 1.0,
            });
        }
        let lr = laurent_remainder(x, m, table)?;
        let tr = taylor_remainder(x, m, cache)?;
        rows.push(CrossoverRow {
            x,
            laurent_remainder: lr,
            taylor_remainder: tr,
            winner: if tr < lr {
                ExpansionKind::Taylor
            } else {
                ExpansionKind::Laurent
            },
        });
    }
    Ok(rows)
}

/// Partial sum through k = m of the shifted-center expansion
/// (8/pi^2) sum_k (-1)^k T~_{k+1}(r)/4^{k+1} (r^2-x^2)^k, valid on the window
/// 2r^2 - 1 < x^2 < 1.
pub fn shifted_expansion(x: f64, m: usize, table: &crate::coeffs::ShiftedTable) -> Result<f64> {
    let r = table.r();
    let lo = 2.0 * r * r - 1.0;
    if !(x * x > lo && x * x < 1.0) {
        return Err(Error::Domain {
            what: format!("x^2 (shifted expansion window for r = {r})"),
            lo,
            hi: 1.0,
        });
    }
    if table.order_max() < m + 1 {
        return Err(Error::InvalidArgument(format!(
            "shifted table covers orders 1..={}, need {}",
            table.order_max(),
            m + 1
        )));
    }
    let w = (r - x) * (r + x);
    let mut acc = 0.0;
    for k in (0..=m).rev() {
        let c = table.value(k + 1) / 4f64.powi(k as i32 + 1);
        acc = -acc * w + c;
    }
    Ok(8.0 / (PI * PI) * acc)
}
