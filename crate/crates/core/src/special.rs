//! Exact Bernoulli numbers and high-accuracy values of zeta, eta and lambda
//! at even integer arguments.
//!
//! Bernoulli numbers are carried as exact big rationals through the standard
//! recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0, B_0 = 1. Even zeta values
//! follow from
//!
//! ```text
//! zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!)
//! ```
//!
//! evaluated by substituting a 120-digit rational approximation of pi so that
//! the whole computation stays in exact rational arithmetic and the only
//! inexact step is the final rounding to f64. The Dirichlet companions are
//! derived by the scaling identities eta(2m) = (1 - 2^{1-2m}) zeta(2m) and
//! lambda(2m) = (1 - 2^{-2m}) zeta(2m).

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational carrier used for Bernoulli numbers and closed-form
/// coefficient accumulation. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Largest supported index m for zeta(2m), eta(2m), lambda(2m). Far beyond
/// what any envelope order needs (coefficients use 2m <= p <= ~64).
pub const MAX_EVEN_INDEX: usize = 64;

/// pi to 120 decimal digits. The closed forms cancel up to ~40 digits at the
/// highest supported orders; 120 digits leave a wide margin.
const PI_DIGITS: &str = "3.141592653589793238462643383279502884197169399375105820974944\
592307816406286208998628034825342117067982148086513282306647";

/// Fixed-point scale used for the dyadic carriers below. Keeping every
/// denominator a power of two makes all rational reductions downstream a
/// matter of stripping twos instead of full-size gcds.
const DYADIC_BITS: u32 = 768;

/// Round num/den (den > 0) to the dyadic grid n / 2^DYADIC_BITS using plain
/// integer arithmetic. The absolute error is at most 2^-769 ~ 3e-232, far
/// below anything the f64 surface can see.
fn dyadic_round(num: BigInt, den: &BigInt) -> Rational {
    let (q, rem) = (num << DYADIC_BITS).div_rem(den);
    let mut q = q;
    let two_rem: BigInt = rem.abs() * 2;
    if &two_rem >= den {
        if q.is_negative() || (q.is_zero() && rem.is_negative()) {
            q -= 1;
        } else {
            q += 1;
        }
    }
    Rational::new(q, BigInt::one() << DYADIC_BITS)
}

fn to_dyadic(r: &Rational) -> Rational {
    dyadic_round(r.numer().clone(), r.denom())
}

/// pi as an exact dyadic rational (394 significant decimal digits of the
/// literal collapse to 2^-768 resolution), parsed once.
pub(crate) fn pi_rational() -> &'static Rational {
    static PI_RAT: OnceLock<Rational> = OnceLock::new();
    PI_RAT.get_or_init(|| {
        let digits: String = PI_DIGITS.chars().filter(|c| *c != '.').collect();
        let numer: BigInt = digits.parse().expect("pi digit literal");
        let denom = BigInt::from(10u32).pow((digits.len() - 1) as u32);
        to_dyadic(&Rational::new(numer, denom))
    })
}

/// Round an arbitrary-size rational to the nearest f64.
///
/// num-rational's own conversion is not trusted here because the Bernoulli
/// route produces numerators and denominators with thousands of bits; this
/// shifts the quotient into a 63-bit window and rounds explicitly.
pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let a = r.numer().abs();
    let b = r.denom().clone();
    let shift = b.bits() as i64 - a.bits() as i64 + 63;
    let scaled = if shift >= 0 {
        a << shift as usize
    } else {
        a >> (-shift) as usize
    };
    let (q, rem) = scaled.div_rem(&b);
    let mut q = q;
    if &rem * 2 >= b {
        q += 1;
    }
    let mag = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32);
    if negative {
        -mag
    } else {
        mag
    }
}

fn check_index(m_max: usize) -> Result<()> {
    if m_max == 0 || m_max > MAX_EVEN_INDEX {
        return Err(Error::InvalidArgument(format!(
            "even index bound must satisfy 1 <= m_max <= {MAX_EVEN_INDEX}, got {m_max}"
        )));
    }
    Ok(())
}

/// Exact Bernoulli numbers B_0, B_2, B_4, ..., B_{2 m_max}.
///
/// Uses the recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0 with B_0 = 1 (so
/// B_1 = -1/2); odd-index numbers beyond B_1 vanish and are skipped in the
/// returned list. Internally every B_j is carried as an integer over the
/// common denominator lcm(1..=top+2) — by von Staudt-Clausen each B_j's
/// denominator is a squarefree product of primes p with (p-1) | j, all of
/// which divide that lcm — so the recurrence runs on integers and only one
/// reduction per index is paid.
pub fn bernoulli_even(m_max: usize) -> Result<Vec<Rational>> {
    check_index(m_max)?;
    let top = 2 * m_max;
    let common: BigInt = (1..=top as u64 + 2).fold(BigInt::one(), |acc, k| {
        let k = BigInt::from(k);
        let g = acc.gcd(&k);
        acc / g * k
    });
    let mut scaled: Vec<BigInt> = Vec::with_capacity(top + 1); // B_j * common
    let mut exact: Vec<Rational> = Vec::with_capacity(top + 1);
    scaled.push(common.clone());
    exact.push(Rational::one());
    for n in 1..=top {
        let mut acc = BigInt::zero();
        // C(n+1, j) built incrementally across the row
        let mut binm = BigInt::one();
        for (j, bj) in scaled.iter().enumerate().take(n) {
            if !bj.is_zero() {
                acc += &binm * bj;
            }
            binm = binm * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        // acc = common * (n+1) * (-B_n), an exact integer multiple of n+1
        let (s, rem) = (-acc).div_rem(&BigInt::from(n + 1));
        debug_assert!(rem.is_zero());
        exact.push(Rational::new(s.clone(), common.clone()));
        scaled.push(s);
    }
    Ok(exact.into_iter().step_by(2).collect())
}

/// Immutable cache of zeta(2m), eta(2m) and lambda(2m) for 1 <= m <= m_max,
/// in both f64 and exact-rational (pi substituted) form.
///
/// Safe for concurrent reads after construction.
#[derive(Debug, Clone)]
pub struct EvenZetaCache {
    max_index: usize,
    zeta: Vec<f64>,
    eta: Vec<f64>,
    lambda: Vec<f64>,
    zeta_exact: Vec<Rational>,
    eta_exact: Vec<Rational>,
}

/// Build the cache from exact Bernoulli numbers. See the module docs for the
/// formulas involved.
pub fn build_even_zeta_cache(m_max: usize) -> Result<EvenZetaCache> {
    check_index(m_max)?;
    let bern = bernoulli_even(m_max)?;

    let mut zeta = Vec::with_capacity(m_max);
    let mut eta = Vec::with_capacity(m_max);
    let mut lambda = Vec::with_capacity(m_max);
    let mut zeta_exact = Vec::with_capacity(m_max);
    let mut eta_exact = Vec::with_capacity(m_max);

    // pi^{2m} tracked as a raw numerator/denominator pair; the rational layer
    // would re-reduce ~100k-bit operands on every multiply.
    let pi_num_sq = pi_rational().numer() * pi_rational().numer();
    let pi_den_sq = pi_rational().denom() * pi_rational().denom();
    let mut pp_num = BigInt::one();
    let mut pp_den = BigInt::one();
    let mut factorial = BigInt::one(); // (2m)!
    #[allow(clippy::needless_range_loop)] // m drives the formulas, not just bern[m]
    for m in 1..=m_max {
        pp_num *= &pi_num_sq;
        pp_den *= &pi_den_sq;
        factorial *= BigInt::from(2 * m - 1) * BigInt::from(2 * m);
        // zeta(2m) = (-1)^{m+1} B_{2m} 2^{2m} / (2 (2m)!) * pi^{2m}; the exact
        // carriers are snapped to the dyadic grid (error < 2^-769) so every
        // consumer's rational arithmetic reduces by stripping twos.
        let mut num = bern[m].numer() * (BigInt::one() << (2 * m)) * &pp_num;
        if m % 2 == 0 {
            num = -num;
        }
        let den = bern[m].denom() * 2 * &factorial * &pp_den;
        let z_exact = dyadic_round(num, &den);
        let two_pow = BigInt::one() << (2 * m - 1);
        let e_exact = dyadic_round(
            z_exact.numer() * (&two_pow - 1),
            &(z_exact.denom() * &two_pow),
        );
        let l_exact = dyadic_round(
            z_exact.numer() * (2 * &two_pow - 1),
            &(z_exact.denom() * 2 * two_pow),
        );

        zeta.push(rational_to_f64(&z_exact));
        eta.push(rational_to_f64(&e_exact));
        lambda.push(rational_to_f64(&l_exact));
        zeta_exact.push(z_exact);
        eta_exact.push(e_exact);
    }

    Ok(EvenZetaCache {
        max_index: m_max,
        zeta,
        eta,
        lambda,
        zeta_exact,
        eta_exact,
    })
}

impl EvenZetaCache {
    pub fn max_index(&self) -> usize {
        self.max_index
    }

    /// zeta(2m) for 1 <= m <= max_index.
    pub fn zeta_2m(&self, m: usize) -> f64 {
        self.zeta[m - 1]
    }

    /// eta(2m).
    pub fn eta_2m(&self, m: usize) -> f64 {
        self.eta[m - 1]
    }

    /// lambda(2m).
    pub fn lambda_2m(&self, m: usize) -> f64 {
        self.lambda[m - 1]
    }

    pub(crate) fn zeta_exact(&self, m: usize) -> &Rational {
        &self.zeta_exact[m - 1]
    }

    pub(crate) fn eta_exact(&self, m: usize) -> &Rational {
        &self.eta_exact[m - 1]
    }
}
