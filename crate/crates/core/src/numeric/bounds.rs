//! Numeric checks of the rational, logarithmic, exponential and ratio
//! approximations of `F(a,b;c;x)` built from truncated coefficient sums.
//!
//! Coefficients are computed exactly and converted to floats only when the
//! bound is evaluated. Each report carries an error budget so that an ordering
//! is never claimed on rounding noise.

use serde::Serialize;

use super::hyp::{eval_F, EvalResult, HypParams};
use crate::error::{Error, Result};
use crate::exact::{ExactScalar, ParameterTriple};
use crate::series::{fp_coeffs, gp_reduced_coeffs, lnfp_coeffs};
use crate::thresholds::{
    classify_vs_roots, n_cn_sequence, region, zero_balanced_gp_condition, zero_balanced_gp_threshold,
};

/// Relative tolerance for the `F` evaluations inside bound reports.
pub const BOUNDS_EVAL_TOL: f64 = 1e-14;

/// Which two-sided or one-sided form produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundForm {
    /// `-F_p'` (or `-F_p''`) absolutely monotonic: the partial sum minus its
    /// value at 1 from below, one more term from above.
    RationalTailDecreasing,
    /// `F_p''` absolutely monotonic: the two rational expressions swap.
    RationalTailIncreasing,
    /// `F > ln[sum v_j x^j / (1-x)^p]` only.
    LogLower,
    /// `F < ln[sum v_j x^j / (1-x)^p]` only (zero-balanced case).
    LogUpper,
    LogTwoSided,
    /// Region one of the exponential bound.
    ExpRegionOne,
    ExpRegionTwo,
    RatioRegionOne,
    RatioRegionTwo,
}

impl BoundForm {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundForm::RationalTailDecreasing => "rational_tail_decreasing",
            BoundForm::RationalTailIncreasing => "rational_tail_increasing",
            BoundForm::LogLower => "log_lower",
            BoundForm::LogUpper => "log_upper",
            BoundForm::LogTwoSided => "log_two_sided",
            BoundForm::ExpRegionOne => "exp_region_one",
            BoundForm::ExpRegionTwo => "exp_region_two",
            BoundForm::RatioRegionOne => "ratio_region_one",
            BoundForm::RatioRegionTwo => "ratio_region_two",
        }
    }
}

/// `lower < middle < upper`, checked against a numerical error budget.
///
/// A missing side is reported as an infinity and imposes no condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub form: BoundForm,
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    pub ordering_holds: bool,
    pub slack_lower: f64,
    pub slack_upper: f64,
    pub budget: f64,
}

impl BoundsReport {
    fn new(form: BoundForm, lower: f64, middle: f64, upper: f64, eval_error: f64) -> Self {
        let magnitude: f64 = [lower, middle, upper].iter().filter(|v| v.is_finite()).map(|v| v.abs()).sum();
        let budget = 8.0 * f64::EPSILON * magnitude + eval_error;
        let slack_lower = middle - lower;
        let slack_upper = upper - middle;
        BoundsReport {
            form,
            lower,
            middle,
            upper,
            ordering_holds: slack_lower > budget && slack_upper > budget,
            slack_lower,
            slack_upper,
            budget,
        }
    }
}

/// Selects one of the two forms for [`bounds_ratio`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioRegion {
    /// Region one if the triple lies there, else region two.
    Auto,
    One,
    Two,
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::DomainError(format!("x = {x} must lie in (0, 1)")))
    }
}

fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn middle(params: &ParameterTriple, x: f64) -> Result<EvalResult> {
    eval_F(&HypParams::from_exact(params), x, BOUNDS_EVAL_TOL)
}

fn upper_limits(params: &ParameterTriple) -> Result<(ExactScalar, ExactScalar)> {
    let (a, b, c) = (params.a(), params.b(), params.c());
    if c >= &(a + b) {
        Ok((ExactScalar::from_integer(1), ExactScalar::from_integer(2)))
    } else if a < c && b < c {
        let e = params.excess();
        Ok((e.add_int(1), e.add_int(2)))
    } else {
        Err(Error::RegimeViolation(format!(
            "{params}: needs c >= a+b or max{{a,b}} < c < a+b"
        )))
    }
}

/// Rational bounds on `F` from the coefficients `u_j` of `(1-x)^p F`.
///
/// With `S_n = sum_{j<=n} u_j x^j` and `U_n = sum_{j<=n} u_j`, the two
/// expressions are `(S_n - U_n x^{n+1})/(1-x)^p` and `(S_n + u_{n+1} x^{n+1})/(1-x)^p`.
/// They bound `F` from below and above when `ab/c <= p <= 1` (any `n`) or
/// `p_* <= p <= 1` (`n >= 1`), and swap roles when `p^* <= p <= 2` (`n >= 1`).
/// For `max{a,b} < c < a+b` the limits 1 and 2 become `a+b+1-c` and `a+b+2-c`.
pub fn bounds_rational(params: &ParameterTriple, p: &ExactScalar, n: usize, x: f64) -> Result<BoundsReport> {
    check_x(x)?;
    let (top1, top2) = upper_limits(params)?;
    let abc = params.ab_over_c();
    let pos = classify_vs_roots(params, p)?;
    let form = if p <= &top1 && (&abc <= p || (n >= 1 && pos.at_or_above_low())) {
        BoundForm::RationalTailDecreasing
    } else if n >= 1 && pos.at_or_above_high() && p <= &top2 {
        BoundForm::RationalTailIncreasing
    } else {
        return Err(Error::RegimeViolation(format!(
            "{params}, p = {p}, n = {n}: p is not in [ab/c, {top1}] = [{abc}, {top1}], \
             and with n >= 1 not in [p_*, {top1}] or [p^*, {top2}] (p is {})",
            pos.as_str()
        )));
    };
    let u = fp_coeffs(params, p, n + 1);
    let total: ExactScalar = u.coeffs()[..=n].iter().sum();
    let uf = u.to_f64();
    let s = poly(&uf[..=n], x);
    let xn1 = x.powi(n as i32 + 1);
    let scale = (1.0 - x).powf(p.to_f64());
    let short = (s - total.to_f64() * xn1) / scale;
    let long = (s + uf[n + 1] * xn1) / scale;
    let f = middle(params, x)?;
    let (lower, upper) = match form {
        BoundForm::RationalTailDecreasing => (short, long),
        _ => (long, short),
    };
    Ok(BoundsReport::new(form, lower, f.value, upper, f.tail_bound))
}

/// Logarithmic bounds on `F` from the coefficients `v_j = e r_j` of `(1-x)^p exp(F)`.
///
/// One-sided `F > ln[sum_{j<=n} v_j x^j/(1-x)^p]` when `c <= a+b` and `p <= ab/c`.
/// The reverse one-sided form holds when `c = a+b`, `a+b >= 2ab(a+b+1)`,
/// `ab(2a+2b+1)/((a+b)(a+b+1)) <= p <= 1` and `n >= 1`.
/// Two-sided when `c >= a+b+ab`, `ab/c <= p <= 1` and `n >= 1`, with the same
/// shapes as the rational bounds.
pub fn bounds_log(params: &ParameterTriple, p: &ExactScalar, n: usize, x: f64) -> Result<BoundsReport> {
    check_x(x)?;
    let (a, b, c) = (params.a(), params.b(), params.c());
    let sum = a + b;
    let abc = params.ab_over_c();
    let one = ExactScalar::one();
    let form = if c <= &sum && p <= &abc {
        BoundForm::LogLower
    } else if n >= 1
        && c == &sum
        && zero_balanced_gp_condition(params)
        && &zero_balanced_gp_threshold(params) <= p
        && p <= &one
    {
        BoundForm::LogUpper
    } else if n >= 1 && c >= &(&sum + &(a * b)) && &abc <= p && p <= &one {
        BoundForm::LogTwoSided
    } else {
        return Err(Error::RegimeViolation(format!(
            "{params}, p = {p}, n = {n}: needs c <= a+b with p <= ab/c = {abc}; \
             or c = a+b, a+b >= 2ab(a+b+1), p in [{}, 1], n >= 1; \
             or c >= a+b+ab, p in [ab/c, 1], n >= 1",
            zero_balanced_gp_threshold(params)
        )));
    };
    let r = gp_reduced_coeffs(params, p, n + 1);
    let total: ExactScalar = r.coeffs()[..=n].iter().sum();
    let rf = r.to_f64();
    let s = poly(&rf[..=n], x);
    let xn1 = x.powi(n as i32 + 1);
    // ln[e * y / (1-x)^p] with the factor e applied as its logarithm
    let log_of = |y: f64| 1.0 + y.ln() - p.to_f64() * (1.0 - x).ln();
    let f = middle(params, x)?;
    let (lower, upper) = match form {
        BoundForm::LogLower => (log_of(s), f64::INFINITY),
        BoundForm::LogUpper => (f64::NEG_INFINITY, log_of(s)),
        _ => (log_of(s - total.to_f64() * xn1), log_of(s + rf[n + 1] * xn1)),
    };
    Ok(BoundsReport::new(form, lower, f.value, upper, f.tail_bound))
}

/// Exponential bounds `exp(sum w_j(p) x^j)/(1-x)^p < F < exp(sum w_j(q) x^j)/(1-x)^q`.
///
/// Region one: `p <= max{0,a+b-c}` and `q >= k C_k` for some `1 <= k <= n`
/// (`k = 1` gives `q >= ab/c`). Region two: `q >= a+b-c` and `p <= k C_k` for
/// some `1 <= k <= n`.
pub fn bounds_exp(
    params: &ParameterTriple,
    p: &ExactScalar,
    q: &ExactScalar,
    n: usize,
    x: f64,
) -> Result<BoundsReport> {
    check_x(x)?;
    let reg = region(params);
    let kck = n_cn_sequence(params, n);
    let s0 = params.excess().max(ExactScalar::zero());
    let form = if reg.in_r1 && p <= &s0 && kck.iter().any(|k| q >= k) {
        BoundForm::ExpRegionOne
    } else if reg.in_r2 && q >= &params.excess() && kck.iter().any(|k| p <= k) {
        BoundForm::ExpRegionTwo
    } else {
        return Err(Error::RegimeViolation(format!(
            "{params}, p = {p}, q = {q}, n = {n}: needs region one with p <= {s0} and q >= k C_k \
             for some k <= n, or region two with q >= a+b-c and p <= k C_k for some k <= n \
             (in region one: {}, in region two: {})",
            reg.in_r1, reg.in_r2
        )));
    };
    let side = |s: &ExactScalar| {
        let w = lnfp_coeffs(params, s, n).to_f64();
        (poly(&w, x) - s.to_f64() * (1.0 - x).ln()).exp()
    };
    let f = middle(params, x)?;
    Ok(BoundsReport::new(form, side(p), f.value, side(q), f.tail_bound))
}

/// `ab(c-a)(c-b) / (2c^2(c+1))`, the exponent coefficient in the ratio bounds.
///
/// Equals `-w_2(ab/c)`.
pub fn ratio_exponent_coefficient(params: &ParameterTriple) -> ExactScalar {
    let (a, b, c) = (params.a(), params.b(), params.c());
    let num = &(&(a * b) * &(c - a)) * &(c - b);
    let den = &c.square().mul_int(2) * &c.add_int(1);
    &num / &den
}

/// Bounds on `F(r^p)/F(r^{p/q})` for `p, q > 1` and `0 < r < 1`.
///
/// With `P = (1-r^{p/q})/(1-r^p)` and `kappa` from [`ratio_exponent_coefficient`]:
/// region one gives `P^{ab/c} exp(kappa (r^{2p/q} - r^{2p}))` below and
/// `P^{s0} exp((s0 - ab/c)(r^{p/q} - r^p))` above, `s0 = max{0,a+b-c}`;
/// region two gives `P^{a+b-c} exp((a-c)(c-b)(r^{p/q} - r^p)/c)` below and
/// `P^{ab/c} exp(kappa (r^{2p/q} - r^{2p}))` above.
pub fn bounds_ratio(params: &ParameterTriple, p: f64, q: f64, r: f64, choice: RatioRegion) -> Result<BoundsReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::DomainError(format!("p = {p} must exceed 1")));
    }
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::DomainError(format!("q = {q} must exceed 1")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::DomainError(format!("r = {r} must lie in (0, 1)")));
    }
    let reg = region(params);
    let form = match choice {
        RatioRegion::Auto if reg.in_r1 => BoundForm::RatioRegionOne,
        RatioRegion::Auto if reg.in_r2 => BoundForm::RatioRegionTwo,
        RatioRegion::One if reg.in_r1 => BoundForm::RatioRegionOne,
        RatioRegion::Two if reg.in_r2 => BoundForm::RatioRegionTwo,
        _ => {
            return Err(Error::RegimeViolation(format!(
                "{params} requested {choice:?}, in region one: {}, in region two: {}",
                reg.in_r1, reg.in_r2
            )))
        }
    };
    let (a, b, c) = params.to_f64();
    let abc = params.ab_over_c().to_f64();
    let kappa = ratio_exponent_coefficient(params).to_f64();
    let x = r.powf(p);
    let y = r.powf(p / q);
    let big_p = (1.0 - y) / (1.0 - x);
    let quad = (kappa * (y * y - x * x)).exp();
    let (lower, upper) = match form {
        BoundForm::RatioRegionOne => {
            let s0 = (a + b - c).max(0.0);
            (big_p.powf(abc) * quad, big_p.powf(s0) * ((s0 - abc) * (y - x)).exp())
        }
        _ => (
            big_p.powf(a + b - c) * ((a - c) * (c - b) * (y - x) / c).exp(),
            big_p.powf(abc) * quad,
        ),
    };
    let fx = middle(params, x)?;
    let fy = middle(params, y)?;
    let ratio = fx.value / fy.value;
    let rel = fx.tail_bound / fx.value + fy.tail_bound / fy.value;
    Ok(BoundsReport::new(form, lower, ratio, upper, ratio * rel))
}

/// `Q_{s,n}(x)` from its definition, with `y = x^{1/q}`:
/// `(ln[(1-x)^s F(x)] - ln[(1-y)^s F(y)])/(y - x) - sum_{j<=n} w_j(s) (x^j - y^j)/(y - x)`.
pub fn q_sn(params: &ParameterTriple, s: &ExactScalar, n: usize, q: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::DomainError(format!("q = {q} must exceed 1")));
    }
    let y = x.powf(1.0 / q);
    let sf = s.to_f64();
    let fx = middle(params, x)?.value;
    let fy = middle(params, y)?.value;
    let logs = (sf * (1.0 - x).ln() + fx.ln()) - (sf * (1.0 - y).ln() + fy.ln());
    let w = lnfp_coeffs(params, s, n).to_f64();
    let trunc = poly(&w, x) - poly(&w, y);
    Ok((logs - trunc) / (y - x))
}
