//! Expansion coefficients for the four pole families, computed by two
//! independent routes.
//!
//! Each family's coefficient sequence has a closed form as a finite binomial
//! combination of zeta or eta values, and a defining infinite sum:
//!
//! - tan:   T_p = sum_{n>=1} 1 / (n (n+1))^p
//! - sec:   S_p = sum_{n>=1} (-1)^{n-1} (2n+1) / (n (n+1))^p
//! - cot:   C_p = sum_{n>=1} 4^p / (n (n+2))^p
//! - cosec: D_p = sum_{n>=1} (-1)^{n-1} 4^p / (n (n+2))^p
//!
//! The closed forms are accumulated in exact rational arithmetic (binomials
//! as big integers, zeta/eta values as rationals with pi substituted at high
//! precision) because the combinations cancel catastrophically at large p.
//! The direct sums serve as the independent oracle; they are truncated with
//! certified tail enclosures rather than heuristic term cutoffs, so the
//! oracle's own error is known.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dd::{self, Dd};
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::special::{pi_rational, rational_to_f64, EvenZetaCache, Rational};

/// Highest coefficient order any table will hold.
pub const MAX_ORDER: usize = 64;

/// The four expansion families. Family metadata (prefactor, inner-series
/// sign, pole factor) is a pure function of the tag; see the envelope module
/// for the evaluation side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Tan,
    Sec,
    Cot,
    Cosec,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Tan,
        FamilyKind::Sec,
        FamilyKind::Cot,
        FamilyKind::Cosec,
    ];

    /// Families whose defining coefficient sum alternates in n, and whose
    /// inner series enters the expansion with a minus sign.
    pub fn is_alternating(self) -> bool {
        matches!(self, FamilyKind::Sec | FamilyKind::Cosec)
    }

    /// Families for which sharpened truncation constants exist (H for tan,
    /// J for sec).
    pub fn has_sharpened_constants(self) -> bool {
        matches!(self, FamilyKind::Tan | FamilyKind::Sec)
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Tan => "tan",
            FamilyKind::Sec => "sec",
            FamilyKind::Cot => "cot",
            FamilyKind::Cosec => "cosec",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tan" => Ok(FamilyKind::Tan),
            "sec" => Ok(FamilyKind::Sec),
            "cot" => Ok(FamilyKind::Cot),
            "cosec" | "csc" => Ok(FamilyKind::Cosec),
            other => Err(Error::InvalidArgument(format!(
                "unknown family '{other}' (expected tan, sec, cot or cosec)"
            ))),
        }
    }
}

/// How a coefficient table was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    DirectSum,
}

fn check_order(p: usize) -> Result<()> {
    if p == 0 || p > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "coefficient order must satisfy 1 <= p <= {MAX_ORDER}, got {p}"
        )));
    }
    Ok(())
}

/// Binomial coefficient with the usual out-of-range convention C(n, k) = 0
/// for k < 0 or k > n.
fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        num_integer::binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// Closed-form coefficient as an exact rational (with pi substituted by the
/// crate's high-precision rational approximation).
pub(crate) fn coeff_closed_exact(
    family: FamilyKind,
    p: usize,
    cache: &EvenZetaCache,
) -> Result<Rational> {
    check_order(p)?;
    if cache.max_index() < p / 2 {
        return Err(Error::InvalidArgument(format!(
            "zeta cache covers 2m <= {}, need 2m <= {p}",
            2 * cache.max_index()
        )));
    }
    let n = p as i64;
    let mut acc: Rational;
    match family {
        FamilyKind::Tan => {
            acc = -Rational::from_integer(binom(2 * n - 1, n - 1));
            for m in 1..=p / 2 {
                let c = binom(2 * n - 2 * m as i64 - 1, n - 1);
                acc += cache.zeta_exact(m) * Rational::from_integer(2 * c);
            }
        }
        FamilyKind::Cot => {
            acc = -Rational::from_integer(binom(2 * n - 1, n - 1) + (BigInt::one() << (2 * p - 1)));
            for m in 1..=p / 2 {
                let c = binom(2 * n - 2 * m as i64 - 1, n - 1) << (2 * m + 1);
                acc += cache.zeta_exact(m) * Rational::from_integer(c);
            }
        }
        FamilyKind::Sec => {
            acc = Rational::from_integer(binom(2 * n - 2, n - 2) - binom(2 * n - 2, n - 1));
            for m in 1..=p / 2 {
                let c = binom(2 * n - 2 * m as i64 - 2, n - 2) - binom(2 * n - 2 * m as i64 - 2, n - 1);
                acc += cache.eta_exact(m) * Rational::from_integer(2 * c);
            }
        }
        FamilyKind::Cosec => {
            acc = Rational::from_integer(binom(2 * n - 1, n - 1) - (BigInt::one() << (2 * p - 1)));
            for m in 1..=p / 2 {
                let c = binom(2 * n - 2 * m as i64 - 1, n - 1) << (2 * m + 1);
                acc += cache.eta_exact(m) * Rational::from_integer(c);
            }
        }
    }
    if p % 2 == 1 {
        acc = -acc;
    }
    Ok(acc)
}

/// Closed-form coefficient value (T_p, S_p, C_p or D_p).
pub fn coeff_closed(family: FamilyKind, p: usize, cache: &EvenZetaCache) -> Result<f64> {
    Ok(rational_to_f64(&coeff_closed_exact(family, p, cache)?))
}

// ---------------------------------------------------------------------------
// Direct sums with certified tail enclosures.
//
// For the monotone families the term function f is positive, decreasing and
// convex, so the tail after index N is enclosed by
//     int_{N+1}^inf f  <=  tail  <=  int_{N+1/2}^inf f
// (the upper bound is the midpoint rule read backwards). The integrals are in
// turn enclosed by elementary comparisons of the quadratic under the power
// with a shifted square. For the alternating families, pairing consecutive
// terms gives a positive decreasing convex paired-term function g with
//     int_c^inf g = int_c^{c+1} a,
// and the same midpoint argument encloses the paired tail by halves of that
// one-unit integral at N and N+1. Adding the enclosure midpoint leaves a
// certified error of half the enclosure width.
// ---------------------------------------------------------------------------

struct TailEnclosure {
    lo: f64,
    hi: f64,
}

impl TailEnclosure {
    fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo).abs()
    }
}

fn tan_tail(n: f64, p: i32) -> TailEnclosure {
    let s = 1 - 2 * p;
    let lo = (n + 1.5).powi(s) / f64::from(2 * p - 1);
    let slack = (1.0 - (2.0 * n + 2.0).powi(-2)).powi(-p);
    let hi = (n + 1.0).powi(s) / f64::from(2 * p - 1) * slack;
    TailEnclosure { lo, hi }
}

fn cot_tail(n: f64, p: i32) -> TailEnclosure {
    let s = 1 - 2 * p;
    let four_p = 4f64.powi(p);
    let lo = four_p * (n + 2.0).powi(s) / f64::from(2 * p - 1);
    let slack = (1.0 - (n + 1.5).powi(-2)).powi(-p);
    let hi = four_p * (n + 1.5).powi(s) / f64::from(2 * p - 1) * slack;
    TailEnclosure { lo, hi }
}

/// int_c^{c+1} (2t+1) / (t(t+1))^p dt, exact: the numerator is the derivative
/// of t(t+1).
fn sec_unit_integral(c: f64, p: i32) -> f64 {
    if p == 1 {
        ((c + 2.0) / c).ln()
    } else {
        let u0 = c * (c + 1.0);
        let u1 = (c + 1.0) * (c + 2.0);
        (u0.powi(1 - p) - u1.powi(1 - p)) / f64::from(p - 1)
    }
}

fn sec_tail(n: f64, n_parity_even: bool, p: i32) -> TailEnclosure {
    let lo = 0.5 * sec_unit_integral(n + 1.0, p);
    let hi = 0.5 * sec_unit_integral(n, p);
    if n_parity_even {
        TailEnclosure { lo, hi }
    } else {
        TailEnclosure { lo: -hi, hi: -lo }
    }
}

/// Enclosure of int_c^{c+1} 4^p / (t(t+2))^p dt.
fn cosec_unit_integral(c: f64, p: i32) -> TailEnclosure {
    let four_p = 4f64.powi(p);
    let base = four_p * ((c + 1.0).powi(1 - 2 * p) - (c + 2.0).powi(1 - 2 * p)) / f64::from(2 * p - 1);
    let slack = (1.0 - (c + 1.0).powi(-2)).powi(-p);
    TailEnclosure {
        lo: base,
        hi: base * slack,
    }
}

fn cosec_tail(n: f64, n_parity_even: bool, p: i32) -> TailEnclosure {
    let lo = 0.5 * cosec_unit_integral(n + 1.0, p).lo;
    let hi = 0.5 * cosec_unit_integral(n, p).hi;
    if n_parity_even {
        TailEnclosure { lo, hi }
    } else {
        TailEnclosure { lo: -hi, hi: -lo }
    }
}

const DIRECT_SUM_MAX_TERMS: u64 = 80_000_000;

/// Direct-sum coefficient, truncated when the certified tail enclosure is
/// narrower than `2 * abs_tol`; the enclosure midpoint is added so the
/// returned value carries a certified absolute error below `abs_tol`.
///
/// For the alternating families the classical bracketing precondition (term
/// magnitudes decreasing from n = 2 onward) is verified while summing.
pub fn coeff_direct(family: FamilyKind, p: usize, abs_tol: f64) -> Result<f64> {
    check_order(p)?;
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "abs_tol must be positive, got {abs_tol}"
        )));
    }
    let pi = p as i32;
    let mut sum = KahanSum::new();
    let mut prev_mag = f64::INFINITY;
    let mut n: u64 = 0;
    loop {
        n += 1;
        if n > DIRECT_SUM_MAX_TERMS {
            return Err(Error::InvalidArgument(format!(
                "direct sum for {family} p={p} did not reach abs_tol={abs_tol:e} \
                 within {DIRECT_SUM_MAX_TERMS} terms"
            )));
        }
        let nf = n as f64;
        let (mag, signed) = match family {
            FamilyKind::Tan => {
                let t = (nf * (nf + 1.0)).recip().powi(pi);
                (t, t)
            }
            FamilyKind::Cot => {
                let t = (4.0 / (nf * (nf + 2.0))).powi(pi);
                (t, t)
            }
            FamilyKind::Sec => {
                let t = (2.0 * nf + 1.0) * (nf * (nf + 1.0)).recip().powi(pi);
                (t, if n % 2 == 1 { t } else { -t })
            }
            FamilyKind::Cosec => {
                let t = (4.0 / (nf * (nf + 2.0))).powi(pi);
                (t, if n % 2 == 1 { t } else { -t })
            }
        };
        if family.is_alternating() && n >= 2 && mag > prev_mag {
            return Err(Error::OutOfRange(format!(
                "alternating term magnitudes not decreasing at n={n} for {family} p={p}"
            )));
        }
        prev_mag = mag;
        sum.add(signed);

        if n >= 8 && (n < 64 || n % 1024 == 0) {
            let tail = match family {
                FamilyKind::Tan => tan_tail(nf, pi),
                FamilyKind::Cot => cot_tail(nf, pi),
                FamilyKind::Sec => sec_tail(nf, n % 2 == 0, pi),
                FamilyKind::Cosec => cosec_tail(nf, n % 2 == 0, pi),
            };
            if tail.half_width() <= abs_tol {
                return Ok(sum.value() + tail.midpoint());
            }
        }
    }
}

/// Immutable table of expansion coefficients for one family.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    family: FamilyKind,
    values: Vec<f64>,
    method: Method,
    accuracy: f64,
    exact: Option<Vec<Rational>>,
}

impl CoefficientTable {
    /// Build a table from the closed forms, orders 1..=order_max.
    pub fn closed(family: FamilyKind, order_max: usize, cache: &EvenZetaCache) -> Result<Self> {
        check_order(order_max)?;
        let mut exact = Vec::with_capacity(order_max);
        let mut values = Vec::with_capacity(order_max);
        for p in 1..=order_max {
            let e = coeff_closed_exact(family, p, cache)?;
            values.push(rational_to_f64(&e));
            exact.push(e);
        }
        let max_abs = values.iter().fold(0f64, |a, v| a.max(v.abs()));
        Ok(CoefficientTable {
            family,
            values,
            method: Method::ClosedForm,
            // exact rational evaluation, then one rounding to f64
            accuracy: f64::EPSILON * max_abs,
            exact: Some(exact),
        })
    }

    /// Build a table from the defining sums, orders 1..=order_max.
    pub fn direct(family: FamilyKind, order_max: usize, abs_tol: f64) -> Result<Self> {
        check_order(order_max)?;
        let values = (1..=order_max)
            .map(|p| coeff_direct(family, p, abs_tol))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoefficientTable {
            family,
            values,
            method: Method::DirectSum,
            accuracy: abs_tol,
            exact: None,
        })
    }

    pub fn family(&self) -> FamilyKind {
        self.family
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Bound on the absolute error of each stored entry.
    pub fn accuracy(&self) -> f64 {
        self.accuracy
    }

    pub fn order_max(&self) -> usize {
        self.values.len()
    }

    /// The p-th coefficient, 1-based. Panics if p = 0 or p > order_max.
    pub fn value(&self, p: usize) -> f64 {
        assert!(p >= 1 && p <= self.values.len(), "coefficient order {p} not in table");
        self.values[p - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn exact_value(&self, p: usize) -> Option<&Rational> {
        self.exact.as_ref().map(|e| &e[p - 1])
    }

    /// Negative-control hook: perturb one entry so verification sweeps must
    /// detect the defect.
    #[doc(hidden)]
    pub fn perturb(&mut self, p: usize, delta: f64) {
        self.values[p - 1] += delta;
        self.exact = None;
    }
}

// ---------------------------------------------------------------------------
// Sharpened truncation constants.
// ---------------------------------------------------------------------------

/// Finite-form constant of index j >= 1 for the tan (H_j) or sec (J_j)
/// family, computed in exact rational arithmetic when the table carries its
/// closed-form data:
///
///   H_j = (-1)^{j-1} [ pi^2/8 - (1 + T_1/4 - T_2/4^2 + ... + (-1)^{j-2} T_{j-1}/4^{j-1}) ]
///   J_j = (-1)^j     [ pi/4   - (1 - S_1/4 + S_2/4^2 - ... + (-1)^{j-1} S_{j-1}/4^{j-1}) ]
///
/// Each constant equals the exact alternating coefficient tail
/// c_j/4^j - c_{j+1}/4^{j+1} + ... and must satisfy 0 < const < c_j/4^j.
fn constant_finite_form(family: FamilyKind, j: usize, table: &CoefficientTable) -> Result<f64> {
    if !family.has_sharpened_constants() {
        return Err(Error::UnsupportedOption(format!(
            "sharpened truncation constants exist only for tan and sec, not {family}"
        )));
    }
    if family != table.family() {
        return Err(Error::InvalidArgument(format!(
            "table holds {} coefficients, constants requested for {family}",
            table.family()
        )));
    }
    if j == 0 || j > table.order_max() {
        return Err(Error::InvalidArgument(format!(
            "constant index must satisfy 1 <= j <= {} (table coverage), got {j}",
            table.order_max()
        )));
    }
    let value = if table.exact.is_some() {
        // Exact path: the alternating partial sums cancel down to ~2^{-3j},
        // far below f64 resolution for large j.
        let mut partial = Rational::one();
        for k in 0..j.saturating_sub(1) {
            let term = table.exact_value(k + 1).unwrap()
                / Rational::from_integer(BigInt::one() << (2 * (k + 1)));
            // tan: + - + -...; sec: - + - +...
            let positive = match family {
                FamilyKind::Tan => k % 2 == 0,
                _ => k % 2 == 1,
            };
            if positive {
                partial += term;
            } else {
                partial -= term;
            }
        }
        let anchor = match family {
            FamilyKind::Tan => pi_rational() * pi_rational() / Rational::from_integer(8.into()),
            _ => pi_rational() / Rational::from_integer(4.into()),
        };
        let diff = anchor - partial;
        let flip = match family {
            FamilyKind::Tan => j % 2 == 0,
            _ => j % 2 == 1,
        };
        rational_to_f64(&if flip { -diff } else { diff })
    } else {
        if table.accuracy() > 1e-13 {
            return Err(Error::InvalidArgument(format!(
                "table accuracy {:e} too coarse for remainder constants (need <= 1e-13)",
                table.accuracy()
            )));
        }
        let mut partial = KahanSum::new();
        partial.add(1.0);
        for k in 0..j - 1 {
            let term = table.value(k + 1) / 4f64.powi(k as i32 + 1);
            let positive = match family {
                FamilyKind::Tan => k % 2 == 0,
                _ => k % 2 == 1,
            };
            partial.add(if positive { term } else { -term });
        }
        let anchor = match family {
            FamilyKind::Tan => std::f64::consts::PI * std::f64::consts::PI / 8.0,
            _ => std::f64::consts::FRAC_PI_4,
        };
        let diff = anchor - partial.value();
        let flip = match family {
            FamilyKind::Tan => j % 2 == 0,
            _ => j % 2 == 1,
        };
        if flip {
            -diff
        } else {
            diff
        }
    };

    // Sandwich validation: a violation beyond tolerance means the coefficient
    // table itself is defective.
    let upper = table.value(j) / 4f64.powi(j as i32);
    if value <= -1e-12 || value >= upper + 1e-12 {
        return Err(Error::OutOfRange(format!(
            "constant {j} for {family} escaped its enclosure: value {value:e}, \
             upper bound {upper:e}"
        )));
    }
    Ok(value)
}

/// The sharpened remainder constant H_{m+2} (tan) or J_{m+2} (sec); the
/// coefficient table must cover orders 1..=m+2.
pub fn remainder_constant(family: FamilyKind, m: usize, table: &CoefficientTable) -> Result<f64> {
    constant_finite_form(family, m + 2, table)
}

/// Table of sharpened truncation constants, 1-based: `get(j)` is H_j for the
/// tan family, J_j for sec.
#[derive(Debug, Clone)]
pub struct RemainderConstants {
    family: FamilyKind,
    values: Vec<f64>,
}

impl RemainderConstants {
    pub fn build(family: FamilyKind, count: usize, table: &CoefficientTable) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidArgument("constant count must be positive".into()));
        }
        let values = (1..=count)
            .map(|j| constant_finite_form(family, j, table))
            .collect::<Result<Vec<_>>>()?;
        Ok(RemainderConstants { family, values })
    }

    pub fn family(&self) -> FamilyKind {
        self.family
    }

    pub fn count(&self) -> usize {
        self.values.len()
    }

    /// The j-th constant, 1-based.
    pub fn get(&self, j: usize) -> f64 {
        assert!(j >= 1 && j <= self.values.len(), "constant index {j} not in table");
        self.values[j - 1]
    }
}

// ---------------------------------------------------------------------------
// Shifted-center coefficients.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftedMethod {
    DirectSum,
    Recursion,
}

/// Coefficients of the expansion centered at r in (0, 1), indexed 1-based.
#[derive(Debug, Clone)]
pub struct ShiftedTable {
    r: f64,
    values: Vec<f64>,
    method: ShiftedMethod,
    validated_through: usize,
    diagnostic: Option<String>,
}

impl ShiftedTable {
    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn method(&self) -> ShiftedMethod {
        self.method
    }

    pub fn order_max(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, p: usize) -> f64 {
        assert!(p >= 1 && p <= self.values.len(), "shifted order {p} not in table");
        self.values[p - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Highest order that was cross-validated against the defining sum
    /// (equals order_max unless the table was truncated and flagged).
    pub fn validated_through(&self) -> usize {
        self.validated_through
    }

    pub fn diagnostic(&self) -> Option<&str> {
        self.diagnostic.as_deref()
    }

    /// Build the table directly from the defining sums.
    pub fn direct(r: f64, order_max: usize, abs_tol: f64) -> Result<Self> {
        check_order(order_max)?;
        let values = (1..=order_max)
            .map(|p| shifted_direct(r, p, abs_tol))
            .collect::<Result<Vec<_>>>()?;
        Ok(ShiftedTable {
            r,
            values,
            method: ShiftedMethod::DirectSum,
            validated_through: order_max,
            diagnostic: None,
        })
    }
}

fn check_center(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "expansion center must satisfy 0 < r < 1, got {r} (the shifted sum is not \
             defined at r = 1)"
        )));
    }
    Ok(())
}

/// Shifted coefficient by its defining sum
/// sum_{n>=0} 1 / ((n + (1-r)/2)^p (n + (1+r)/2)^p), truncated with the same
/// certified integral enclosure as the tan family (the quadratic under the
/// power is (t + 1/2)^2 - (r/2)^2).
pub fn shifted_direct(r: f64, p: usize, abs_tol: f64) -> Result<f64> {
    check_center(r)?;
    check_order(p)?;
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "abs_tol must be positive, got {abs_tol}"
        )));
    }
    let a = (1.0 - r) / 2.0;
    let b = (1.0 + r) / 2.0;
    let pi = p as i32;
    let mut sum = KahanSum::new();
    let mut n: u64 = 0;
    loop {
        let nf = n as f64;
        let term = ((nf + a) * (nf + b)).recip().powi(pi);
        if !term.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "shifted sum overflows at r={r}, p={p}"
            )));
        }
        sum.add(term);
        if n >= 8 && (n < 64 || n % 1024 == 0) {
            let s = 1 - 2 * pi;
            let lo = (nf + 1.5).powi(s) / f64::from(2 * pi - 1);
            let slack = (1.0 - (r / (2.0 * nf + 2.0)).powi(2)).powi(-pi);
            let hi = (nf + 1.0).powi(s) / f64::from(2 * pi - 1) * slack;
            if (hi - lo) / 2.0 <= abs_tol {
                return Ok(sum.value() + (hi + lo) / 2.0);
            }
        }
        n += 1;
        if n > DIRECT_SUM_MAX_TERMS {
            return Err(Error::InvalidArgument(format!(
                "shifted sum for p={p} did not reach abs_tol={abs_tol:e}"
            )));
        }
    }
}

/// Shifted coefficients by the quadratic recursion that the tan ratio's
/// Riccati equation induces on the expansion:
///
///   T~_1 = (pi^2/2) tan(pi r/2) / (pi r/2)
///   r^2 T~_2 = pi^2 - 2 T~_1 + r^2 T~_1^2
///   (k+1) r^2 T~_{k+2} = -(4k+2) T~_{k+1} + r^2 sum_{j=0}^{k} T~_{j+1} T~_{k-j+1}
///                        + 4 sum_{j=0}^{k-1} T~_{j+1} T~_{k-j}
///
/// The recursion is run on double-double pairs: it amplifies seed error by
/// ~2e8 over ten orders at small r, so plain f64 cannot hold the validation
/// tolerance there. Every entry is validated against the defining sum with
/// tolerance max(1e-9 |value|, 1e-12); on the first failure the table is
/// truncated at the last validated order and a diagnostic is attached.
pub fn shifted_recursive(r: f64, order_max: usize) -> Result<ShiftedTable> {
    check_center(r)?;
    check_order(order_max)?;
    let pi2 = Dd::pi().sqr();
    let r2 = Dd::from(r).sqr();
    let mut t: Vec<Dd> = Vec::with_capacity(order_max);
    let y = Dd::pi().mul_f64(r).scale_pow2(0.5);
    t.push(pi2.mul(dd::tan_half_pi(r)).div(y.scale_pow2(2.0)));
    if order_max >= 2 {
        let num = pi2.sub(t[0].scale_pow2(2.0)).add(r2.mul(t[0].sqr()));
        t.push(num.div(r2));
    }
    for k in 1..=order_max.saturating_sub(2) {
        let mut s1 = Dd::from(0.0);
        for j in 0..=k {
            s1 = s1.add(t[j].mul(t[k - j]));
        }
        let mut s2 = Dd::from(0.0);
        for j in 0..k {
            s2 = s2.add(t[j].mul(t[k - 1 - j]));
        }
        let num = t[k]
            .mul_f64(-(4.0 * k as f64 + 2.0))
            .add(r2.mul(s1))
            .add(s2.scale_pow2(4.0));
        t.push(num.div(r2.mul_f64(k as f64 + 1.0)));
    }
    let mut t: Vec<f64> = t.into_iter().map(Dd::to_f64).collect();

    let mut validated_through = 0;
    let mut diagnostic = None;
    for p in 1..=t.len() {
        let rec = t[p - 1];
        let oracle_tol = (1e-12 * rec.abs()).max(1e-14);
        let direct = shifted_direct(r, p, oracle_tol)?;
        let tol = (1e-9 * direct.abs()).max(1e-12);
        if (rec - direct).abs() <= tol {
            validated_through = p;
        } else {
            diagnostic = Some(format!(
                "recursion diverged from defining sum at order {p} (r={r}): \
                 recursion {rec:.17e}, direct {direct:.17e}, tolerance {tol:.3e}; \
                 table truncated at order {validated_through}"
            ));
            t.truncate(validated_through);
            break;
        }
    }

    Ok(ShiftedTable {
        r,
        values: t,
        method: ShiftedMethod::Recursion,
        validated_through,
        diagnostic,
    })
}
