//! Floating evaluation of `F(a,b;c;x)` on `(0,1)` and its behavior at `x = 1`.

use serde::Serialize;

use super::special::{beta, ln_gamma, ramanujan_R};
use crate::error::{Error, Result};
use crate::exact::ParameterTriple;
use crate::thresholds::Balance;

/// Maximum number of series terms before giving up.
pub const TERM_CAP: usize = 10_000_000;

/// Floating parameters of `F(a,b;c;x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `c` against `a + b`; exact when built from rationals.
    pub balance: Balance,
}

impl HypParams {
    /// Floating parameters; `c` within a few ulps of `a + b` counts as balanced.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::DomainError(format!("{name} = {v} must be positive")));
            }
        }
        let d = c - (a + b);
        let balance = if d.abs() <= 4.0 * f64::EPSILON * c.max(a + b) {
            Balance::Equal
        } else if d < 0.0 {
            Balance::Less
        } else {
            Balance::Greater
        };
        Ok(HypParams { a, b, c, balance })
    }

    pub fn from_exact(params: &ParameterTriple) -> Self {
        let (a, b, c) = params.to_f64();
        let balance = Balance::from(params.c().cmp(&(params.a() + params.b())));
        HypParams { a, b, c, balance }
    }

    fn symmetric_applies(&self) -> bool {
        self.balance == Balance::Less && self.c > self.a && self.c > self.b
    }
}

/// A truncated series value with a bound on its total error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub terms_used: usize,
    /// Tail bound plus a worst-case rounding estimate.
    pub tail_bound: f64,
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::DomainError(format!("x = {x} must lie in (0, 1)")))
    }
}

fn check_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("rel_tol = {rel_tol} must be positive")))
    }
}

/// Bound on `sum_{k>=m} t_k` given `t_m`.
///
/// Geometric: every ratio `t_{k+1}/t_k` with `k >= m` is at most
/// `x max(1,(a+m)/(c+m)) max(1,(b+m)/(1+m))`.
/// Power law (when `s = c-a-b > 0`): `k A_k` telescopes with decrement
/// `A_k (s k - ab)/(c+k)`, so the tail is at most `t_m m (c+m) / (s m - ab)` once `s m > ab`.
fn tail_from(h: &HypParams, x: f64, m: usize, t: f64) -> f64 {
    let mf = m as f64;
    let rho = x * ((h.a + mf) / (h.c + mf)).max(1.0) * ((h.b + mf) / (1.0 + mf)).max(1.0);
    let geometric = if rho < 1.0 { t / (1.0 - rho) } else { f64::INFINITY };
    let s = h.c - h.a - h.b;
    let power = if s > 0.0 && s * mf > h.a * h.b {
        t * mf * (h.c + mf) / (s * mf - h.a * h.b)
    } else {
        f64::INFINITY
    };
    geometric.min(power)
}

/// Plain summation of the hypergeometric series.
#[allow(non_snake_case)]
pub fn eval_F_direct(h: &HypParams, x: f64, rel_tol: f64) -> Result<EvalResult> {
    check_x(x)?;
    check_tol(rel_tol)?;
    let mut term = 1.0f64;
    let mut sum = 0.0f64;
    for m in 0..TERM_CAP {
        if m > 0 {
            let tail = tail_from(h, x, m, term);
            if tail <= rel_tol * sum {
                let rounding = 6.0 * m as f64 * f64::EPSILON * sum;
                return Ok(EvalResult {
                    value: sum,
                    terms_used: m,
                    tail_bound: tail + rounding,
                });
            }
        }
        sum += term;
        let mf = m as f64;
        term *= (h.a + mf) * (h.b + mf) / ((h.c + mf) * (mf + 1.0)) * x;
    }
    Err(Error::NonconvergentAtTolerance { terms: TERM_CAP })
}

/// `F = (1-x)^{c-a-b} F(c-a, c-b; c; x)`, valid when `c > a` and `c > b`.
#[allow(non_snake_case)]
pub fn eval_F_symmetric(h: &HypParams, x: f64, rel_tol: f64) -> Result<EvalResult> {
    if !(h.c > h.a && h.c > h.b) {
        return Err(Error::HypothesisViolated(format!(
            "symmetry needs c > max(a, b), got ({}, {}, {})",
            h.a, h.b, h.c
        )));
    }
    check_x(x)?;
    let inner = HypParams::new(h.c - h.a, h.c - h.b, h.c)?;
    let r = eval_F_direct(&inner, x, rel_tol)?;
    let factor = (1.0 - x).powf(h.c - h.a - h.b);
    let value = r.value * factor;
    Ok(EvalResult {
        value,
        terms_used: r.terms_used,
        tail_bound: r.tail_bound * factor + 4.0 * f64::EPSILON * value,
    })
}

/// `F(a,b;c;x)` for `0 < x < 1`, switching to the symmetric form when `c < a+b`.
#[allow(non_snake_case)]
pub fn eval_F(h: &HypParams, x: f64, rel_tol: f64) -> Result<EvalResult> {
    if h.symmetric_applies() {
        eval_F_symmetric(h, x, rel_tol)
    } else {
        eval_F_direct(h, x, rel_tol)
    }
}

/// `F(a,b;c;1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))` for `c > a+b`.
pub fn value_at_one(h: &HypParams) -> Result<f64> {
    if h.balance != Balance::Greater {
        return Err(Error::HypothesisViolated(format!(
            "F(a,b;c;1) is finite only for c > a+b, got ({}, {}, {})",
            h.a, h.b, h.c
        )));
    }
    let (a, b, c) = (h.a, h.b, h.c);
    Ok((ln_gamma(c)? + ln_gamma(c - a - b)? - ln_gamma(c - a)? - ln_gamma(c - b)?).exp())
}

const RESIDUAL_TOLERANCES: [f64; 4] = [1e-12, 1e-10, 1e-8, 1e-6];

fn first_converging<T>(mut f: impl FnMut(f64) -> Result<T>) -> Result<T> {
    let mut last = None;
    for tol in RESIDUAL_TOLERANCES {
        match f(tol) {
            Err(e @ Error::NonconvergentAtTolerance { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("ladder is nonempty"))
}

/// Distance of `F` from its leading behavior near `x = 1`.
///
/// For `c = a+b` this is `B(a,b) F + ln(1-x) - R(a,b)`; for `c < a+b` it is
/// `F (1-x)^{a+b-c} Gamma(a)Gamma(b)/(Gamma(c)Gamma(a+b-c)) - 1`.
pub fn asymptotic_residual(h: &HypParams, x: f64) -> Result<f64> {
    check_x(x)?;
    let (a, b, c) = (h.a, h.b, h.c);
    match h.balance {
        Balance::Greater => Err(Error::HypothesisViolated(format!(
            "no singular asymptotic for c > a+b, got ({a}, {b}, {c})"
        ))),
        Balance::Equal => {
            let f = first_converging(|tol| eval_F(h, x, tol))?.value;
            Ok(beta(a, b)? * f + (1.0 - x).ln() - ramanujan_R(a, b)?)
        }
        Balance::Less => {
            let e = a + b - c;
            // With the symmetric form the power of (1-x) cancels exactly.
            let scaled = if h.symmetric_applies() {
                let inner = HypParams::new(c - a, c - b, c)?;
                first_converging(|tol| eval_F_direct(&inner, x, tol))?.value
            } else {
                first_converging(|tol| eval_F_direct(h, x, tol))?.value * (1.0 - x).powf(e)
            };
            let k = (ln_gamma(a)? + ln_gamma(b)? - ln_gamma(c)? - ln_gamma(e)?).exp();
            Ok(scaled * k - 1.0)
        }
    }
}
