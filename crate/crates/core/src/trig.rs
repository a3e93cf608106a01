//! Accurate evaluation of the four target functions on (-1, 1).
//!
//! Near the poles at x = ±1 the half-angle arguments are reflected so that
//! the trig call sees a small exact argument (1 - |x| is exact in floating
//! point there). This keeps the relative error at a few ulps across the
//! whole interval, which the bracketing sweeps rely on.

use std::f64::consts::{FRAC_PI_2, PI};

/// tan(pi x / 2) / (pi x / 2), extended by 1 at x = 0.
pub(crate) fn tan_ratio(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let ax = x.abs();
    let y = FRAC_PI_2 * ax;
    if ax < 0.5 {
        y.tan() / y
    } else {
        // tan(pi/2 - t) = 1/tan(t) with t = pi (1-ax) / 2; 1 - ax is exact here.
        let t = FRAC_PI_2 * (1.0 - ax);
        1.0 / (t.tan() * y)
    }
}

/// sec(pi x / 2).
pub(crate) fn sec_half(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 0.5 {
        1.0 / (FRAC_PI_2 * ax).cos()
    } else {
        // cos(pi/2 - t) = sin(t)
        1.0 / (FRAC_PI_2 * (1.0 - ax)).sin()
    }
}

/// 1 - pi x cot(pi x), extended by 0 at x = 0.
pub(crate) fn one_minus_cot(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    let y = PI * ax;
    if ax < 0.5 {
        1.0 - y * y.cos() / y.sin()
    } else {
        // cot(pi ax) = -cot(pi (1-ax)) for ax in (1/2, 1)
        let w = PI * (1.0 - ax);
        1.0 + y * w.cos() / w.sin()
    }
}

/// pi x cosec(pi x) - 1, extended by 0 at x = 0.
pub(crate) fn cosec_minus_one(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    let y = PI * ax;
    // sin(pi ax) = sin(pi (1-ax)); pick the smaller argument.
    let s = if ax < 0.5 { y.sin() } else { (PI * (1.0 - ax)).sin() };
    y / s - 1.0
}
