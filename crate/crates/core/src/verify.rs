//! Verification sweeps over the invariants of the coefficient and envelope
//! machinery, shared by the command-line `verify` subcommand and the
//! acceptance test suite.
//!
//! Every check reports a signed worst-case margin with the convention that
//! `worst <= 0` means the check passed with that much headroom; a positive
//! value is the amount by which the worst offender broke its tolerance.

use std::f64::consts::PI;

use crate::bessel;
use crate::coeffs::{
    coeff_direct, shifted_direct, shifted_recursive, CoefficientTable, FamilyKind,
    RemainderConstants,
};
use crate::envelope::{
    bound, bound_bracket_coefficients, crossover_report, laurent_remainder, partial_expansion,
    reference_value, remainder_magnitude_bound, EnvelopeQuery, EnvelopeTables, ExpansionKind,
    Side,
};
use crate::error::Result;
use crate::special::{build_even_zeta_cache, EvenZetaCache};

/// Deterministic, endpoint-inclusive linear grid. For a symmetric range with
/// an odd sample count the midpoint lands exactly on 0.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![a];
    }
    let span = b - a;
    (0..n)
        .map(|i| a + span * (i as f64 / (n - 1) as f64))
        .collect()
}

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub family: Option<FamilyKind>,
    pub passed: bool,
    /// Signed worst-case margin; <= 0 means passed with headroom.
    pub worst: f64,
    pub detail: String,
}

impl CheckOutcome {
    fn from_margin(name: &str, family: Option<FamilyKind>, worst: f64, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            family,
            passed: worst <= 0.0,
            worst,
            detail,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// (label, passed, failed) counts, one row per family plus one for the
    /// family-independent checks.
    pub fn summary(&self) -> Vec<(String, usize, usize)> {
        let mut rows: Vec<(String, usize, usize)> = Vec::new();
        let labels: Vec<String> = FamilyKind::ALL
            .iter()
            .map(|f| f.name().to_string())
            .chain(std::iter::once("global".to_string()))
            .collect();
        for label in labels {
            let (mut pass, mut fail) = (0, 0);
            for c in &self.checks {
                let matches = match c.family {
                    Some(f) => f.name() == label,
                    None => label == "global",
                };
                if matches {
                    if c.passed {
                        pass += 1;
                    } else {
                        fail += 1;
                    }
                }
            }
            if pass + fail > 0 {
                rows.push((label, pass, fail));
            }
        }
        rows
    }
}

/// Configuration of a verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Families to sweep; `None` selects all four plus the family-independent
    /// suites (crossover, shifted recursion, Bessel).
    pub families: Option<Vec<FamilyKind>>,
    pub order_min: usize,
    pub order_max: usize,
    pub samples: usize,
    /// Negative-control hook: perturb one tan coefficient so the sweeps must
    /// detect the defect.
    pub inject_corruption: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            families: None,
            order_min: 0,
            order_max: 8,
            samples: 10_001,
            inject_corruption: false,
        }
    }
}

const SWEEP_EDGE: f64 = 0.9998;
const ORACLE_MAX_ORDER: usize = 20;

struct FamilyFixture {
    table: CoefficientTable,
    constants: Option<RemainderConstants>,
}

fn build_fixture(
    family: FamilyKind,
    table_order: usize,
    cache: &EvenZetaCache,
    corrupt: bool,
) -> Result<FamilyFixture> {
    let mut table = CoefficientTable::closed(family, table_order, cache)?;
    if corrupt && family == FamilyKind::Tan {
        table.perturb(5, 1e-6);
    }
    let constants = if family.has_sharpened_constants() && !corrupt {
        Some(RemainderConstants::build(family, table_order - 1, &table)?)
    } else if family.has_sharpened_constants() {
        // A corrupted table may not admit constants at all; fall back to the
        // orders that still validate so the sweeps can run and fail honestly.
        let mut count = table_order - 1;
        loop {
            match RemainderConstants::build(family, count, &table) {
                Ok(c) => break Some(c),
                Err(_) if count > 1 => count -= 1,
                Err(_) => break None,
            }
        }
    } else {
        None
    };
    Ok(FamilyFixture { table, constants })
}

fn symbolic_first_three(family: FamilyKind) -> [f64; 3] {
    let pi2 = PI * PI;
    match family {
        FamilyKind::Tan => [1.0, pi2 / 3.0 - 3.0, 10.0 - pi2],
        FamilyKind::Sec => [1.0, pi2 / 6.0 - 1.0, 2.0 - pi2 / 6.0],
        FamilyKind::Cot => [3.0, 4.0 * pi2 / 3.0 - 11.0, 42.0 - 4.0 * pi2],
        FamilyKind::Cosec => [1.0, 2.0 * pi2 / 3.0 - 5.0, 22.0 - 2.0 * pi2],
    }
}

fn check_first_three(family: FamilyKind, fixture: &FamilyFixture) -> CheckOutcome {
    let mut worst = f64::NEG_INFINITY;
    for (i, want) in symbolic_first_three(family).into_iter().enumerate() {
        let got = fixture.table.value(i + 1);
        worst = worst.max((got - want).abs() - 1e-14);
    }
    CheckOutcome::from_margin(
        "closed-first-three",
        Some(family),
        worst,
        "first three closed-form coefficients vs symbolic values, tol 1e-14".into(),
    )
}

fn check_oracle_equivalence(family: FamilyKind, fixture: &FamilyFixture) -> CheckOutcome {
    let mut worst = f64::NEG_INFINITY;
    let mut at = 0;
    for p in 1..=ORACLE_MAX_ORDER {
        let direct = match coeff_direct(family, p, 1e-13) {
            Ok(v) => v,
            Err(e) => {
                return CheckOutcome {
                    name: "oracle-equivalence".into(),
                    family: Some(family),
                    passed: false,
                    worst: f64::INFINITY,
                    detail: format!("direct sum failed at p={p}: {e}"),
                }
            }
        };
        let tol = 1e-12f64.max(1e-12 * direct.abs());
        let margin = (fixture.table.value(p) - direct).abs() - tol;
        if margin > worst {
            worst = margin;
            at = p;
        }
    }
    CheckOutcome::from_margin(
        "oracle-equivalence",
        Some(family),
        worst,
        format!("closed vs defining-sum coefficients, p=1..{ORACLE_MAX_ORDER}; worst at p={at}"),
    )
}

fn check_tan_sandwich(fixture: &FamilyFixture) -> CheckOutcome {
    // 2^-p < T_p < 2^{1-p}. At p = 1 the upper comparison is an equality
    // (T_1 = 1 = 2^0), so strictness applies to the upper side from p = 2.
    let mut worst = f64::NEG_INFINITY;
    for p in 1..=ORACLE_MAX_ORDER {
        let t = fixture.table.value(p);
        let lo = 2f64.powi(-(p as i32));
        let hi = 2f64.powi(1 - p as i32);
        worst = worst.max(lo - t);
        if p == 1 {
            worst = worst.max(t - hi);
        } else {
            worst = worst.max(t - hi);
            if t >= hi {
                worst = worst.max(f64::MIN_POSITIVE);
            }
        }
    }
    CheckOutcome::from_margin(
        "tan-sandwich",
        Some(FamilyKind::Tan),
        worst,
        "2^-p < T_p <= 2^{1-p} for p=1..20 (equality only at p=1)".into(),
    )
}

fn check_remainder_sandwich(family: FamilyKind, fixture: &FamilyFixture) -> CheckOutcome {
    let constants = match &fixture.constants {
        Some(c) => c,
        None => {
            return CheckOutcome {
                name: "remainder-sandwich".into(),
                family: Some(family),
                passed: false,
                worst: f64::INFINITY,
                detail: "constants table could not be built (coefficient defect)".into(),
            }
        }
    };
    let mut worst = f64::NEG_INFINITY;
    let count = constants.count().min(15);
    for j in 1..=count {
        let c = constants.get(j);
        let upper = fixture.table.value(j) / 4f64.powi(j as i32);
        worst = worst.max(-c); // must be strictly positive
        worst = worst.max(c - upper);
    }
    // symbolic anchors for the first two constants
    let (w1, w2) = match family {
        FamilyKind::Tan => (PI * PI / 8.0 - 1.0, (10.0 - PI * PI) / 8.0),
        _ => (1.0 - PI / 4.0, (PI - 3.0) / 4.0),
    };
    worst = worst.max((constants.get(1) - w1).abs() - 1e-14);
    worst = worst.max((constants.get(2) - w2).abs() - 1e-14);
    CheckOutcome::from_margin(
        "remainder-sandwich",
        Some(family),
        worst,
        format!("0 < const_j < coeff_j/4^j for j=1..{count}, plus symbolic anchors"),
    )
}

struct SweepVariant {
    query: EnvelopeQuery,
    coeffs: Vec<f64>,
}

fn sweep_variants(
    family: FamilyKind,
    orders: std::ops::RangeInclusive<usize>,
    tables: &EnvelopeTables<'_>,
) -> Result<Vec<SweepVariant>> {
    let mut variants = Vec::new();
    for order in orders {
        for side in [Side::Lower, Side::Upper] {
            let sharp_options: &[bool] = if family.has_sharpened_constants() {
                &[false, true]
            } else {
                &[false]
            };
            for &sharpened in sharp_options {
                let query = EnvelopeQuery {
                    family,
                    order,
                    side,
                    sharpened,
                };
                let coeffs = bound_bracket_coefficients(&query, tables)?;
                variants.push(SweepVariant { query, coeffs });
            }
        }
    }
    Ok(variants)
}

fn eval_bracket(coeffs: &[f64], u: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
}

fn check_bracketing_sweep(
    family: FamilyKind,
    fixture: &FamilyFixture,
    cfg: &VerifyConfig,
) -> Result<CheckOutcome> {
    let tables = EnvelopeTables {
        coeffs: &fixture.table,
        constants: fixture.constants.as_ref(),
    };
    let variants = sweep_variants(family, cfg.order_min..=cfg.order_max, &tables)?;
    let grid = linspace(-SWEEP_EDGE, SWEEP_EDGE, cfg.samples);
    let mut worst = f64::NEG_INFINITY;
    let mut at = (0usize, 0.0f64);
    for &x in &grid {
        let reference = reference_value(family, x)?;
        let tol = 1e-13 * reference.abs().max(1.0);
        let u = (1.0 - x) * (1.0 + x);
        let pole = 1.0 / u;
        let prefactor = crate::envelope::family_prefactor(family, x);
        for (i, v) in variants.iter().enumerate() {
            let value = prefactor * (pole + eval_bracket(&v.coeffs, u));
            let margin = match v.query.side {
                Side::Lower => value - reference - tol,
                Side::Upper => reference - value - tol,
            };
            if margin > worst {
                worst = margin;
                at = (i, x);
            }
        }
    }
    // certification flag must come back true for the plain families
    if !family.has_sharpened_constants() {
        let q = EnvelopeQuery {
            family,
            order: cfg.order_min,
            side: Side::Lower,
            sharpened: false,
        };
        if !bound(&q, 0.5, &tables)?.certified {
            return Ok(CheckOutcome {
                name: "bracketing-sweep".into(),
                family: Some(family),
                passed: false,
                worst: f64::INFINITY,
                detail: "term-monotonicity certification failed".into(),
            });
        }
    }
    let detail = format!(
        "{} bound variants x {} grid points; worst at variant {} (order {}, {:?}, sharpened {}), x={:.6}",
        variants.len(),
        cfg.samples,
        at.0,
        variants[at.0].query.order,
        variants[at.0].query.side,
        variants[at.0].query.sharpened,
        at.1
    );
    Ok(CheckOutcome::from_margin(
        "bracketing-sweep",
        Some(family),
        worst,
        detail,
    ))
}

fn check_strictness_at_zero(
    family: FamilyKind,
    fixture: &FamilyFixture,
    cfg: &VerifyConfig,
) -> Result<CheckOutcome> {
    // The plain truncation on its natural side stays strictly away from the
    // reference at x = 0 (the sharpened side attains equality there by
    // construction of the H/J constants).
    let tables = EnvelopeTables {
        coeffs: &fixture.table,
        constants: fixture.constants.as_ref(),
    };
    let mut worst = f64::NEG_INFINITY;
    for order in cfg.order_min..=cfg.order_max {
        let even = order % 2 == 0;
        let side = match (family, even) {
            (FamilyKind::Tan, true) => Side::Upper,
            (FamilyKind::Tan, false) => Side::Lower,
            (FamilyKind::Sec, true) => Side::Lower,
            (FamilyKind::Sec, false) => Side::Upper,
            _ => unreachable!("strictness check applies to tan and sec"),
        };
        let q = EnvelopeQuery {
            family,
            order,
            side,
            sharpened: false,
        };
        let v = bound(&q, 0.0, &tables)?.value;
        let gap = (v - 1.0).abs(); // both references equal 1 at x = 0
        worst = worst.max(1e-15 - gap);
    }
    Ok(CheckOutcome::from_margin(
        "strict-at-zero",
        Some(family),
        worst,
        "plain natural-side truncation differs from reference by >= 1e-15 at x=0".into(),
    ))
}

fn check_gap_bound(fixture: &FamilyFixture, cfg: &VerifyConfig) -> Result<CheckOutcome> {
    // Sharpened pair with m+1 retained-term indices: upper minus lower equals
    // prefactor * H_{m+3} u^{m+1} algebraically, which must stay below
    // prefactor * u^{m+1} / 2^{3m+8}. The pole terms of the two sides cancel
    // exactly in the bracket-coefficient difference, so the comparison stays
    // meaningful near |x| = 1 where direct subtraction would drown in
    // rounding.
    let tables = EnvelopeTables {
        coeffs: &fixture.table,
        constants: fixture.constants.as_ref(),
    };
    let grid = linspace(-SWEEP_EDGE, SWEEP_EDGE, cfg.samples.min(2001));
    let mut worst = f64::NEG_INFINITY;
    for m in cfg.order_min..=cfg.order_max {
        let order = m + 1;
        let upper = bound_bracket_coefficients(
            &EnvelopeQuery {
                family: FamilyKind::Tan,
                order,
                side: Side::Upper,
                sharpened: true,
            },
            &tables,
        )?;
        let lower = bound_bracket_coefficients(
            &EnvelopeQuery {
                family: FamilyKind::Tan,
                order,
                side: Side::Lower,
                sharpened: true,
            },
            &tables,
        )?;
        let mut diff = upper.clone();
        for (d, l) in diff.iter_mut().zip(&lower) {
            *d -= l;
        }
        let budget = 2f64.powi(-(3 * m as i32 + 8)) * (1.0 + 1e-10);
        for &x in &grid {
            let u = (1.0 - x) * (1.0 + x);
            let gap = eval_bracket(&diff, u); // bracket units: gap/prefactor
            let allowed = budget * u.powi(m as i32 + 1);
            worst = worst.max(gap - allowed);
            worst = worst.max(-gap); // the pair must not cross
        }
    }
    Ok(CheckOutcome::from_margin(
        "gap-bound",
        Some(FamilyKind::Tan),
        worst,
        format!(
            "sharpened pair width <= (8/pi^2)(1-x^2)^(m+1)/2^(3m+8) for m={}..{}",
            cfg.order_min, cfg.order_max
        ),
    ))
}

fn check_pole_sharpness(fixture: &FamilyFixture) -> Result<CheckOutcome> {
    let tables = EnvelopeTables {
        coeffs: &fixture.table,
        constants: fixture.constants.as_ref(),
    };
    let x = SWEEP_EDGE;
    let reference = reference_value(FamilyKind::Tan, x)?;
    let upper = bound(
        &EnvelopeQuery {
            family: FamilyKind::Tan,
            order: 0,
            side: Side::Upper,
            sharpened: false,
        },
        x,
        &tables,
    )?
    .value;
    let lower = bound(
        &EnvelopeQuery {
            family: FamilyKind::Tan,
            order: 0,
            side: Side::Lower,
            sharpened: true,
        },
        x,
        &tables,
    )?
    .value;
    let width = upper - lower;
    let worst = width - 1e-4 * reference;
    Ok(CheckOutcome::from_margin(
        "pole-sharpness",
        Some(FamilyKind::Tan),
        worst,
        format!("order-0 bracket width {width:.3e} vs 1e-4 * reference at x={x}"),
    ))
}

fn check_monotone_refinement(fixture: &FamilyFixture, cfg: &VerifyConfig) -> Result<CheckOutcome> {
    // Plain truncations nest: two more retained terms move the bound toward
    // the function, pointwise. Compared through bracket-coefficient
    // differences for the same pole-cancellation reason as the gap check.
    let tables = EnvelopeTables {
        coeffs: &fixture.table,
        constants: None,
    };
    let grid = linspace(-SWEEP_EDGE, SWEEP_EDGE, cfg.samples.min(2001));
    let mut worst = f64::NEG_INFINITY;
    for m in cfg.order_min..=cfg.order_max {
        let even = m % 2 == 0;
        let side = if even { Side::Upper } else { Side::Lower };
        let qa = bound_bracket_coefficients(
            &EnvelopeQuery {
                family: FamilyKind::Tan,
                order: m,
                side,
                sharpened: false,
            },
            &tables,
        )?;
        let qb = bound_bracket_coefficients(
            &EnvelopeQuery {
                family: FamilyKind::Tan,
                order: m + 2,
                side,
                sharpened: false,
            },
            &tables,
        )?;
        let mut diff = qb.clone();
        for (d, a) in diff.iter_mut().zip(&qa) {
            *d -= a;
        }
        for &x in &grid {
            let u = (1.0 - x) * (1.0 + x);
            let delta = eval_bracket(&diff, u);
            // upper bounds must not grow, lower bounds must not shrink
            worst = worst.max(if even { delta } else { -delta });
        }
    }
    Ok(CheckOutcome::from_margin(
        "monotone-refinement",
        Some(FamilyKind::Tan),
        worst,
        "plain truncation at order m+2 refines the order-m bound pointwise".into(),
    ))
}

fn check_remainder_datapoint(fixture: &FamilyFixture) -> Result<CheckOutcome> {
    let x = 0.9;
    let m = 4;
    let reference = reference_value(FamilyKind::Tan, x)?;
    let partial = partial_expansion(FamilyKind::Tan, x, m, &fixture.table)?;
    let actual = (reference - partial).abs() * PI * PI / 8.0;
    let budget = remainder_magnitude_bound(x, m)?;
    Ok(CheckOutcome::from_margin(
        "remainder-datapoint",
        Some(FamilyKind::Tan),
        actual - budget,
        format!("|reference - partial(m=4)| * pi^2/8 = {actual:.3e} vs bound {budget:.3e} at x=0.9"),
    ))
}

fn check_convolution(tan: &FamilyFixture, sec: &FamilyFixture) -> CheckOutcome {
    // (n+1) S_{n+1} = T_{n+1} + sum_{k=0}^{n-1} T_{k+1} S_{n-k}. The (n+1)
    // factor on the left is forced by matching powers in the derivative
    // identity relating the two expansions and is confirmed numerically to
    // 1e-13 (without it the relation fails at n = 1 by ~0.645).
    let mut worst = f64::NEG_INFINITY;
    for n in 0..=15usize {
        let mut rhs = tan.table.value(n + 1);
        for k in 0..n {
            rhs += tan.table.value(k + 1) * sec.table.value(n - k);
        }
        let lhs = (n as f64 + 1.0) * sec.table.value(n + 1);
        worst = worst.max((lhs - rhs).abs() - 1e-12);
    }
    CheckOutcome::from_margin(
        "convolution-identity",
        None,
        worst,
        "(n+1) S_{n+1} = T_{n+1} + sum T_{k+1} S_{n-k}, n=0..15, tol 1e-12".into(),
    )
}

fn check_cd_recurrence(cot: &FamilyFixture, cosec: &FamilyFixture) -> CheckOutcome {
    // n D_n + 4n D_{n-1} = C_n + 2 C_{n-1} + sum_{k=1}^{n-1} D_k C_{n-k}
    //                      + 4 sum_{k=1}^{n-2} D_k C_{n-k-1}.
    // The factor 4 on the second sum is forced by the power-matching
    // derivation and confirmed numerically (without it n = 3 misses by 9).
    let c = |p: usize| cot.table.value(p);
    let d = |p: usize| cosec.table.value(p);
    let mut worst = f64::NEG_INFINITY;
    for n in 2..=15usize {
        let lhs = n as f64 * d(n) + 4.0 * n as f64 * d(n - 1);
        let mut rhs = c(n) + 2.0 * c(n - 1);
        for k in 1..n {
            rhs += d(k) * c(n - k);
        }
        for k in 1..=n.saturating_sub(2) {
            rhs += 4.0 * d(k) * c(n - k - 1);
        }
        let tol = 1e-9 * c(n).abs().max(1.0);
        worst = worst.max((lhs - rhs).abs() - tol);
    }
    CheckOutcome::from_margin(
        "cd-recurrence",
        None,
        worst,
        "cot/cosec coefficient recurrence, n=2..15, tol 1e-9 max(1,|C_n|)".into(),
    )
}

fn check_tk_sum(fixture: &FamilyFixture) -> CheckOutcome {
    // |pi^2/8 - (1 + sum_{k=0}^{K} (-1)^k T_{k+1}/4^{k+1})| <= T_{K+2}/4^{K+2}
    // for K = 0..15. The left side is exactly the constant H_{K+2}, computed
    // through the exact-rational path so the comparison stays meaningful at
    // K = 15 where both sides sit near 4e-16.
    let constants = fixture.constants.as_ref();
    let mut worst = f64::NEG_INFINITY;
    match constants {
        // a defective table truncates the constants before K = 15, which is
        // itself a failure of this identity
        Some(cons) if cons.count() >= 17 => {
            for big_k in 0..=15usize {
                let h = cons.get(big_k + 2);
                let allowed = fixture.table.value(big_k + 2) / 4f64.powi(big_k as i32 + 2);
                worst = worst.max(h.abs() - allowed);
            }
        }
        _ => worst = f64::INFINITY,
    }
    CheckOutcome::from_margin(
        "partial-sum-identity",
        Some(FamilyKind::Tan),
        worst,
        "|pi^2/8 - partial alternating sum through K| <= T_{K+2}/4^{K+2}, K=0..15".into(),
    )
}

fn check_alternating_monotonicity(family: FamilyKind) -> CheckOutcome {
    // Precondition of the first-omitted-term bracket: term magnitudes of the
    // defining alternating sums decrease from n = 2 onward.
    let mut worst = f64::NEG_INFINITY;
    for p in 1..=ORACLE_MAX_ORDER as i32 {
        let term = |n: f64| match family {
            FamilyKind::Sec => (2.0 * n + 1.0) * (n * (n + 1.0)).recip().powi(p),
            FamilyKind::Cosec => (4.0 / (n * (n + 2.0))).powi(p),
            _ => unreachable!(),
        };
        let mut prev = term(2.0);
        for n in 3..=2000u32 {
            let t = term(f64::from(n));
            worst = worst.max(t - prev);
            prev = t;
        }
    }
    CheckOutcome::from_margin(
        "alternating-term-monotonicity",
        Some(family),
        worst,
        "defining-sum term magnitudes decrease for n >= 2 at every p".into(),
    )
}

fn check_crossover(tan: &FamilyFixture, cache: &EvenZetaCache) -> Result<CheckOutcome> {
    let rows = crossover_report(40, &[0.2, 0.5], &tan.table, cache)?;
    let ok = rows[0].winner == ExpansionKind::Taylor && rows[1].winner == ExpansionKind::Laurent;
    // sanity: consistency of the analytic tail with direct subtraction where
    // f64 still resolves the remainder
    let lr = laurent_remainder(0.5, 4, &tan.table)?;
    let reference = reference_value(FamilyKind::Tan, 0.5)?;
    let partial = partial_expansion(FamilyKind::Tan, 0.5, 4, &tan.table)?;
    let sub = (reference - partial).abs() * PI * PI / 8.0;
    let consistent = (lr * PI * PI / 8.0 - sub).abs() <= 1e-6 * sub;
    Ok(CheckOutcome {
        name: "crossover-direction".into(),
        family: Some(FamilyKind::Tan),
        passed: ok && consistent,
        worst: if ok && consistent { -1.0 } else { f64::INFINITY },
        detail: format!(
            "m=40: winner(0.2)={}, winner(0.5)={}; tail/subtraction consistency {}",
            rows[0].winner.name(),
            rows[1].winner.name(),
            consistent
        ),
    })
}

fn check_shifted_recursion() -> CheckOutcome {
    let mut worst = f64::NEG_INFINITY;
    let mut detail = String::from("recursion vs defining sums, orders 1..10, r in {0.3, 0.5, 0.9}");
    for r in [0.3, 0.5, 0.9] {
        match shifted_recursive(r, 10) {
            Ok(table) => {
                if let Some(diag) = table.diagnostic() {
                    return CheckOutcome {
                        name: "shifted-recursion".into(),
                        family: None,
                        passed: false,
                        worst: f64::INFINITY,
                        detail: diag.to_string(),
                    };
                }
                for p in 1..=10 {
                    let direct =
                        match shifted_direct(r, p, (1e-12 * table.value(p).abs()).max(1e-14)) {
                            Ok(v) => v,
                            Err(e) => {
                                return CheckOutcome {
                                    name: "shifted-recursion".into(),
                                    family: None,
                                    passed: false,
                                    worst: f64::INFINITY,
                                    detail: e.to_string(),
                                }
                            }
                        };
                    let tol = (1e-9 * direct.abs()).max(1e-12);
                    worst = worst.max((table.value(p) - direct).abs() - tol);
                }
            }
            Err(e) => {
                return CheckOutcome {
                    name: "shifted-recursion".into(),
                    family: None,
                    passed: false,
                    worst: f64::INFINITY,
                    detail: e.to_string(),
                }
            }
        }
    }
    detail.push_str("; all validated");
    CheckOutcome::from_margin("shifted-recursion", None, worst, detail)
}

fn check_bessel_suite() -> CheckOutcome {
    let mut worst = f64::NEG_INFINITY;
    let mut detail = String::new();
    // frozen first zeros
    let frozen = [
        (0.0, 2.404825557695773),
        (1.0, 3.831705970207512),
        (2.0, 5.135622301840683),
    ];
    for (p, want) in frozen {
        match bessel::first_zero(p) {
            Ok(z) => worst = worst.max((z - want).abs() - 1e-10),
            Err(e) => {
                return CheckOutcome {
                    name: "bessel-suite".into(),
                    family: None,
                    passed: false,
                    worst: f64::INFINITY,
                    detail: e.to_string(),
                }
            }
        }
    }
    // interlacing
    let orders = [0.0, 0.5, 1.0, 1.5, 2.0];
    let mut prev = 0.0;
    for p in orders {
        let z = bessel::first_zero(p).unwrap();
        worst = worst.max(prev - z);
        prev = z;
    }
    // bracketing sweeps
    for p in [0.0, 1.0, 2.5] {
        let r = 0.9 * bessel::first_zero(p + 1.0).unwrap();
        for n in 0..=4usize {
            let exp = match bessel::build_expansion(p, r, n) {
                Ok(e) => e,
                Err(e) => {
                    return CheckOutcome {
                        name: "bessel-suite".into(),
                        family: None,
                        passed: false,
                        worst: f64::INFINITY,
                        detail: e.to_string(),
                    }
                }
            };
            for &x in linspace(-r, r, 1001).iter() {
                let (lo, hi) = bessel::bessel_bounds(&exp, x).unwrap();
                let reference = bessel::bessel_j_normalized(p, x).unwrap();
                worst = worst.max(lo - reference - 1e-12);
                worst = worst.max(reference - hi - 1e-12);
            }
            // endpoint collapse and exact upper at the origin
            let (lo_r, hi_r) = bessel::bessel_bounds(&exp, r).unwrap();
            worst = worst.max((lo_r - hi_r).abs() - 1e-14);
            let want = bessel::bessel_j_normalized(p, r).unwrap();
            worst = worst.max((lo_r - want).abs() - 1e-13);
            let (_, hi_0) = bessel::bessel_bounds(&exp, 0.0).unwrap();
            let limit = 1.0 / (2f64.powf(p) * bessel::gamma(p + 1.0));
            worst = worst.max((hi_0 - limit).abs() - 1e-13);
        }
    }
    detail.push_str("zeros to 1e-10, interlacing, bracketing sweeps (1001 pts), endpoints");
    CheckOutcome::from_margin("bessel-suite", None, worst, detail)
}

/// Run the configured verification checks.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let full_run = cfg.families.is_none();
    let families: Vec<FamilyKind> = cfg
        .families
        .clone()
        .unwrap_or_else(|| FamilyKind::ALL.to_vec());

    // Table horizon: sweeps need order_max + 3, identities need 16+,
    // oracle comparison needs 20, the crossover tail needs ~64.
    let table_order = if full_run {
        crate::coeffs::MAX_ORDER
    } else {
        (cfg.order_max + 4).max(22)
    };
    // the full run's crossover check needs lambda values out to the cache rim
    let cache_size = if full_run {
        crate::special::MAX_EVEN_INDEX
    } else {
        table_order.div_ceil(2)
    };
    let cache = build_even_zeta_cache(cache_size)?;

    let mut fixtures: Vec<(FamilyKind, FamilyFixture)> = Vec::new();
    for &family in &families {
        fixtures.push((
            family,
            build_fixture(family, table_order, &cache, cfg.inject_corruption)?,
        ));
    }
    let fixture_of = |f: FamilyKind| fixtures.iter().find(|(g, _)| *g == f).map(|(_, fx)| fx);

    // A check that cannot even be constructed (e.g. a corrupted table refuses
    // to yield its sharpened constants) is itself a failed check, not a
    // configuration error.
    fn settle(name: &str, family: Option<FamilyKind>, res: Result<CheckOutcome>) -> CheckOutcome {
        res.unwrap_or_else(|e| CheckOutcome {
            name: name.into(),
            family,
            passed: false,
            worst: f64::INFINITY,
            detail: format!("check could not run: {e}"),
        })
    }

    let mut checks = Vec::new();
    for (family, fixture) in &fixtures {
        let fam = Some(*family);
        checks.push(check_first_three(*family, fixture));
        checks.push(check_oracle_equivalence(*family, fixture));
        checks.push(settle(
            "bracketing-sweep",
            fam,
            check_bracketing_sweep(*family, fixture, cfg),
        ));
        match family {
            FamilyKind::Tan => {
                checks.push(check_tan_sandwich(fixture));
                checks.push(check_remainder_sandwich(*family, fixture));
                checks.push(settle(
                    "strict-at-zero",
                    fam,
                    check_strictness_at_zero(*family, fixture, cfg),
                ));
                checks.push(settle("gap-bound", fam, check_gap_bound(fixture, cfg)));
                checks.push(settle("pole-sharpness", fam, check_pole_sharpness(fixture)));
                checks.push(settle(
                    "monotone-refinement",
                    fam,
                    check_monotone_refinement(fixture, cfg),
                ));
                checks.push(settle(
                    "remainder-datapoint",
                    fam,
                    check_remainder_datapoint(fixture),
                ));
                checks.push(check_tk_sum(fixture));
            }
            FamilyKind::Sec => {
                checks.push(check_remainder_sandwich(*family, fixture));
                checks.push(settle(
                    "strict-at-zero",
                    fam,
                    check_strictness_at_zero(*family, fixture, cfg),
                ));
                checks.push(check_alternating_monotonicity(*family));
            }
            FamilyKind::Cosec => {
                checks.push(check_alternating_monotonicity(*family));
            }
            FamilyKind::Cot => {}
        }
    }
    if let (Some(tan), Some(sec)) = (fixture_of(FamilyKind::Tan), fixture_of(FamilyKind::Sec)) {
        checks.push(check_convolution(tan, sec));
    }
    if let (Some(cot), Some(cosec)) = (fixture_of(FamilyKind::Cot), fixture_of(FamilyKind::Cosec)) {
        checks.push(check_cd_recurrence(cot, cosec));
    }
    if full_run {
        if let Some(tan) = fixture_of(FamilyKind::Tan) {
            checks.push(settle(
                "crossover-direction",
                Some(FamilyKind::Tan),
                check_crossover(tan, &cache),
            ));
        }
        checks.push(check_shifted_recursion());
        checks.push(check_bessel_suite());
    }

    Ok(VerifyReport { checks })
}
