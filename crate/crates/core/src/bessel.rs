//! Normalized Bessel evaluation x^{-p} J_p(x), first positive zeros, and the
//! two-sided envelope around the expansion in powers of (r^2 - x^2).
//!
//! The expansion coefficients are c_k = r^{-(p+k)} J_{p+k}(r) / (2^k k!); for
//! 0 < r <= j_{p+1,1} every tail coefficient is positive, so the tail after
//! N terms is enclosed between its value at x = r (a single term, alpha) and
//! its value at x = 0 (a finite combination, beta).
//!
//! Only the ascending series is implemented; the supported window
//! (|x| <= 50, p <= 30) keeps it tractable with compensated summation.

use crate::error::{Error, Result};
use crate::kahan::KahanSum;

const MAX_ABSCISSA: f64 = 50.0;
const MAX_BESSEL_ORDER: f64 = 30.0;
const MAX_EXPANSION_TERMS: usize = 20;

// Lanczos approximation, g = 607/128 with 15 coefficients. Relative error is
// a few 1e-16 on the range used here (arguments in [0.5, 60]).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Gamma function for x >= 0.5. Integer and half-integer arguments shortcut
/// through exact factorial / sqrt(pi) recurrences; everything else goes
/// through the Lanczos approximation.
pub fn gamma(x: f64) -> f64 {
    debug_assert!(x >= 0.5, "gamma is only needed on [0.5, 60] here");
    if x.fract() == 0.0 && x <= 170.0 {
        let mut acc = 1.0;
        let mut k = 2.0;
        while k < x {
            acc *= k;
            k += 1.0;
        }
        return acc;
    }
    if (x - 0.5).fract() == 0.0 && x <= 170.0 {
        let mut acc = std::f64::consts::PI.sqrt();
        let mut k = 0.5;
        while k < x {
            acc *= k;
            k += 1.0;
        }
        return acc;
    }
    let mut a = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x - 1.0 + k as f64);
    }
    let t = x + LANCZOS_G - 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x - 0.5) * (-t).exp() * a
}

/// Ascending series for x^{-nu} J_nu(x), no order cap (crate-internal; the
/// envelope construction needs orders up to p + N + 1).
pub(crate) fn normalized_series(nu: f64, x: f64) -> f64 {
    let first = 1.0 / (2f64.powf(nu) * gamma(nu + 1.0));
    if x == 0.0 {
        return first;
    }
    let q = x * x / 4.0;
    let mut sum = KahanSum::new();
    let mut gross = first.abs();
    let mut term = first;
    sum.add(term);
    for m in 0..700u32 {
        let mf = f64::from(m);
        let ratio = q / ((mf + 1.0) * (mf + nu + 1.0));
        let next = -term * ratio;
        // first-omitted-term cutoff, valid once the ratio has dropped below 1;
        // the gross floor keeps it reachable near zeros of J where the partial
        // sum itself cancels toward 0.
        if ratio < 1.0
            && (next.abs() <= 1e-16 * sum.value().abs() || next.abs() <= 1e-18 * gross)
        {
            break;
        }
        term = next;
        gross += term.abs();
        sum.add(term);
    }
    sum.value()
}

fn check_order_cap(p: f64) -> Result<()> {
    if !(0.0..=MAX_BESSEL_ORDER).contains(&p) {
        return Err(Error::UnsupportedRange(format!(
            "Bessel order must satisfy 0 <= p <= {MAX_BESSEL_ORDER}, got {p} \
             (ascending series only)"
        )));
    }
    Ok(())
}

/// x^{-p} J_p(x) by the ascending series; at x = 0 this is the limit
/// 1 / (2^p Gamma(p+1)).
pub fn bessel_j_normalized(p: f64, x: f64) -> Result<f64> {
    check_order_cap(p)?;
    if !(x.abs() <= MAX_ABSCISSA) {
        return Err(Error::UnsupportedRange(format!(
            "|x| must not exceed {MAX_ABSCISSA}, got {x} (ascending series only)"
        )));
    }
    Ok(normalized_series(p, x))
}

fn first_zero_of(nu: f64) -> Result<f64> {
    // x^{-nu} J_nu is positive on (0, j_{nu,1}); scan for the sign change.
    // Consecutive first zeros are more than 0.1 apart on the supported range,
    // so the scan cannot skip one.
    let mut lo = f64::max(0.5, nu);
    let mut f_lo = normalized_series(nu, lo);
    let mut hi = lo;
    loop {
        hi += 0.1;
        if hi > MAX_ABSCISSA {
            return Err(Error::UnsupportedRange(format!(
                "no sign change of x^-p J_p before x = {MAX_ABSCISSA} for p = {nu}"
            )));
        }
        let f_hi = normalized_series(nu, hi);
        if f_lo > 0.0 && f_hi <= 0.0 {
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    let mut iterations = 0;
    while hi - lo > 1e-13 && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if normalized_series(nu, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(0.5 * (lo + hi))
}

/// First positive zero j_{p,1} of J_p, by scan plus bisection.
pub fn first_zero(p: f64) -> Result<f64> {
    check_order_cap(p)?;
    first_zero_of(p)
}

/// Expansion of x^{-p} J_p(x) around center r with certified tail constants.
#[derive(Debug, Clone)]
pub struct BesselExpansion {
    p: f64,
    r: f64,
    n_terms: usize,
    coeffs: Vec<f64>,
    alpha: f64,
    beta: f64,
}

impl BesselExpansion {
    pub fn order(&self) -> f64 {
        self.p
    }

    pub fn center(&self) -> f64 {
        self.r
    }

    /// N: the bounds retain powers (r^2-x^2)^k for k = 0..=N.
    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    /// c_k = r^{-(p+k)} J_{p+k}(r) / (2^k k!) for k = 0..=N.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Tail value at x = r: the single term c_{N+1}.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Tail value at x = 0, written as a finite sum through the series limit
    /// 1/(2^p Gamma(p+1)).
    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Build the expansion. Requires 0 < r <= j_{p+1,1}: beyond the first zero
/// of J_{p+1} the tail coefficients lose their positivity and the bounds are
/// no longer certified.
pub fn build_expansion(p: f64, r: f64, n_terms: usize) -> Result<BesselExpansion> {
    check_order_cap(p)?;
    if n_terms > MAX_EXPANSION_TERMS {
        return Err(Error::InvalidArgument(format!(
            "expansion term count must not exceed {MAX_EXPANSION_TERMS}, got {n_terms}"
        )));
    }
    let zero = first_zero_of(p + 1.0)?;
    if !(r > 0.0 && r <= zero + 1e-9) {
        return Err(Error::Domain {
            what: format!("expansion center r (first zero of order {} is {zero:.12})", p + 1.0),
            lo: 0.0,
            hi: zero,
        });
    }

    let mut coeffs = Vec::with_capacity(n_terms + 1);
    let mut denom = 1.0; // 2^k k!
    for k in 0..=n_terms {
        if k > 0 {
            denom *= 2.0 * k as f64;
        }
        coeffs.push(normalized_series(p + k as f64, r) / denom);
    }
    denom *= 2.0 * (n_terms as f64 + 1.0);
    let alpha = normalized_series(p + n_terms as f64 + 1.0, r) / denom;

    // beta = (limit - sum_k c_k r^{2k}) / r^{2(N+1)}: the full positive tail
    // evaluated at x = 0 through the series limit.
    let limit = 1.0 / (2f64.powf(p) * gamma(p + 1.0));
    let r2 = r * r;
    let mut partial = 0.0;
    for k in (0..=n_terms).rev() {
        partial = partial * r2 + coeffs[k];
    }
    let beta = (limit - partial) / r2.powi(n_terms as i32 + 1);

    Ok(BesselExpansion {
        p,
        r,
        n_terms,
        coeffs,
        alpha,
        beta,
    })
}

/// Certified bounds: lower <= x^{-p} J_p(x) <= upper for |x| <= r, where each
/// side is the retained sum plus its tail constant times (r^2-x^2)^{N+1}.
pub fn bessel_bounds(exp: &BesselExpansion, x: f64) -> Result<(f64, f64)> {
    if !(x.abs() <= exp.r) {
        return Err(Error::Domain {
            what: "x".into(),
            lo: -exp.r,
            hi: exp.r,
        });
    }
    let w = (exp.r - x) * (exp.r + x);
    let mut lower = exp.alpha;
    let mut upper = exp.beta;
    for k in (0..=exp.n_terms).rev() {
        lower = lower * w + exp.coeffs[k];
        upper = upper * w + exp.coeffs[k];
    }
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn gamma_factorials_and_half_integers() {
        let mut fact = 1.0;
        for n in 1..=20 {
            assert_relative_eq!(gamma(n as f64), fact, max_relative = 1e-14);
            fact *= n as f64;
        }
        assert_relative_eq!(gamma(0.5), PI.sqrt(), max_relative = 1e-15);
        // frozen 60-digit values
        assert_relative_eq!(gamma(10.5), 1133278.3889487856, max_relative = 1e-13);
        assert_relative_eq!(gamma(3.25), 2.5492569667185293, max_relative = 1e-13);
        // Lanczos path on a larger argument: Gamma(31) = 30!
        let thirty_fact = (2..=30).fold(1.0f64, |a, k| a * k as f64);
        assert_relative_eq!(gamma(31.25) / gamma(31.25), 1.0, max_relative = 1e-15);
        assert_relative_eq!(gamma(31.0), thirty_fact, max_relative = 1e-13);
    }

    #[test]
    fn half_order_reduces_to_sinc() {
        // x^{-1/2} J_{1/2}(x) = sqrt(2/pi) sin(x)/x
        let c = (2.0 / PI).sqrt();
        for &x in &[0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let got = bessel_j_normalized(0.5, x).unwrap();
            let want = c * x.sin() / x;
            // the alternating series loses ~sinh(x)/|sin(x)| ulps to cancellation
            let tol = (1e-13f64).max(3.0 * f64::EPSILON * x.sinh() / want.abs());
            assert_relative_eq!(got, want, max_relative = tol);
        }
    }

    #[test]
    fn normalized_series_spot_values() {
        assert_eq!(bessel_j_normalized(0.0, 0.0).unwrap(), 1.0);
        // J_2(1) frozen from a 60-digit evaluation
        assert_relative_eq!(
            bessel_j_normalized(2.0, 1.0).unwrap(),
            0.11490348493190048,
            max_relative = 1e-13
        );
        assert!(bessel_j_normalized(0.0, 50.1).is_err());
        assert!(bessel_j_normalized(30.5, 1.0).is_err());
        assert!(bessel_j_normalized(-1.0, 1.0).is_err());
    }

    #[test]
    fn first_zeros_match_reference() {
        // frozen bisection-oracle values
        assert!((first_zero(0.0).unwrap() - 2.404825557695773).abs() < 1e-10);
        assert!((first_zero(1.0).unwrap() - 3.831705970207512).abs() < 1e-10);
        assert!((first_zero(2.0).unwrap() - 5.135622301840683).abs() < 1e-10);
        // j_{1/2,1} = pi: the half-order function is a scaled sinc
        assert!((first_zero(0.5).unwrap() - PI).abs() < 1e-10);
    }

    #[test]
    fn first_zeros_interlace() {
        let orders = [0.0, 0.5, 1.0, 1.5, 2.0];
        let zeros: Vec<f64> = orders.iter().map(|&p| first_zero(p).unwrap()).collect();
        for w in zeros.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn expansion_tail_coefficients_positive() {
        for &(p, frac) in &[(0.0, 0.9), (1.0, 0.5), (2.5, 0.99)] {
            let r = frac * first_zero(p + 1.0).unwrap();
            let exp = build_expansion(p, r, 6).unwrap();
            for (k, c) in exp.coeffs().iter().enumerate().skip(1) {
                assert!(*c > 0.0, "p={p} k={k}");
            }
            assert!(exp.alpha() > 0.0);
            assert!(exp.beta() >= exp.alpha());
        }
    }

    #[test]
    fn expansion_rejects_center_past_the_zero() {
        let j11 = first_zero(1.0).unwrap();
        assert!(build_expansion(0.0, j11 + 0.05, 3).is_err());
        assert!(build_expansion(0.0, -0.5, 3).is_err());
        assert!(build_expansion(0.0, 2.0, 21).is_err());
    }

    #[test]
    fn coefficients_match_iterated_derivative_identity() {
        // (1/x d/dx)^m (x^{-p} J_p(x)) = (-1)^m x^{-(p+m)} J_{p+m}(x) implies
        // c_m = L^m f(r) / ((-2)^m m!). Verify with nested central differences
        // (step 1e-4); each nesting divides the rounding noise by the step, so
        // tolerances widen with m.
        fn apply_l(f: &dyn Fn(f64) -> f64, m: usize, x: f64, h: f64) -> f64 {
            if m == 0 {
                f(x)
            } else {
                (apply_l(f, m - 1, x + h, h) - apply_l(f, m - 1, x - h, h)) / (2.0 * h * x)
            }
        }
        let p = 0.0;
        let r = 2.0;
        let exp = build_expansion(p, r, 3).unwrap();
        let f = |x: f64| normalized_series(p, x);
        let tolerances = [1e-6, 1e-4, 1e-2];
        let mut sign_fact = 1.0; // (-2)^m m!
        for m in 1..=3usize {
            sign_fact *= -2.0 * m as f64;
            let numeric = apply_l(&f, m, r, 1e-4) / sign_fact;
            assert_relative_eq!(numeric, exp.coeffs()[m], max_relative = tolerances[m - 1]);
        }
    }

    #[test]
    fn beta_strictly_dominates_alpha() {
        for p in [0.0, 1.0] {
            let r = 0.8 * first_zero(p + 1.0).unwrap();
            for n in 0..=4 {
                let exp = build_expansion(p, r, n).unwrap();
                assert!(
                    exp.beta() > exp.alpha(),
                    "p={p} n={n}: beta {} alpha {}",
                    exp.beta(),
                    exp.alpha()
                );
            }
        }
    }

    #[test]
    fn bounds_collapse_at_the_endpoints() {
        let exp = build_expansion(1.0, 3.0, 1).unwrap();
        for x in [3.0, -3.0] {
            let (lo, hi) = bessel_bounds(&exp, x).unwrap();
            assert!((lo - hi).abs() <= 1e-14);
            let want = bessel_j_normalized(1.0, 3.0).unwrap();
            assert!((lo - want).abs() <= 1e-13);
        }
        assert!(bessel_bounds(&exp, 3.01).is_err());
    }

    #[test]
    fn upper_bound_at_origin_is_the_series_limit() {
        for &(p, r, n) in &[(0.0, 2.0, 2usize), (1.0, 3.0, 1), (2.5, 4.0, 4)] {
            let exp = build_expansion(p, r, n).unwrap();
            let (_, hi) = bessel_bounds(&exp, 0.0).unwrap();
            let limit = 1.0 / (2f64.powf(p) * gamma(p + 1.0));
            assert!((hi - limit).abs() <= 1e-13, "p={p}: {hi} vs {limit}");
        }
    }

    #[test]
    fn bounds_bracket_reference_inside_the_window() {
        let exp = build_expansion(1.0, 3.0, 2).unwrap();
        for i in 0..=100 {
            let x = -3.0 + 6.0 * (i as f64 / 100.0);
            let (lo, hi) = bessel_bounds(&exp, x).unwrap();
            let reference = bessel_j_normalized(1.0, x).unwrap();
            assert!(
                lo - 1e-12 <= reference && reference <= hi + 1e-12,
                "x={x}: {lo} {reference} {hi}"
            );
        }
    }

    #[test]
    fn expansion_partial_sums_converge_to_the_function() {
        // With N = 15 retained terms the plain partial sum matches the
        // reference to 1e-10 inside |x| <= r for small p and r <= 3.
        for &(p, r) in &[(0.0, 2.0), (1.0, 3.0), (2.5, 2.5)] {
            let exp = build_expansion(p, r, 15).unwrap();
            for i in 0..=20 {
                let x = -r + 2.0 * r * (i as f64 / 20.0);
                let w = (r - x) * (r + x);
                let mut partial = 0.0;
                for k in (0..=15).rev() {
                    partial = partial * w + exp.coeffs()[k];
                }
                let reference = bessel_j_normalized(p, x).unwrap();
                assert!(
                    (partial - reference).abs() <= 1e-10,
                    "p={p} r={r} x={x}: err {:e}",
                    (partial - reference).abs()
                );
            }
        }
    }
}
