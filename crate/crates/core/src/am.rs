//! Truncated absolute-monotonicity verdicts, Jurkat-style ratio tests and the
//! theorem predictors they are checked against.
//!
//! A power series with radius 1 is AM on (0,1) exactly when all its Maclaurin
//! coefficients are nonnegative. A scan to order N therefore proves non-AM
//! when it finds a negative coefficient and only evidences AM otherwise.

use std::fmt;
use std::str::FromStr;

use rug::Rational;
use serde::Serialize;

use crate::deep::{gp_prime_scan, lnfp_k_scan, DeepScan};
use crate::error::{Error, Result};
use crate::exact::{ExactScalar, ParameterTriple};
use crate::series::{
    binom_pow_coeffs, cauchy_product, hyp_coeffs, lnfp_coeffs, series_derivative, series_reciprocal,
    FpRecurrence, Sign, TruncatedSeries,
};
use crate::thresholds::{
    classify_vs_roots, region, upper_shift, zero_balanced_gp_condition, zero_balanced_gp_threshold, Balance,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmStatus {
    AllNonneg,
    AllNonpos,
    Mixed,
}

impl AmStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AmStatus::AllNonneg => "all_nonneg",
            AmStatus::AllNonpos => "all_nonpos",
            AmStatus::Mixed => "mixed",
        }
    }
}

impl fmt::Display for AmStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AMVerdict {
    pub status: AmStatus,
    pub first_violation: Option<usize>,
    pub checked_order: usize,
}

impl AMVerdict {
    fn clean(expect: Sign, checked_order: usize) -> Self {
        AMVerdict {
            status: match expect {
                Sign::Plus => AmStatus::AllNonneg,
                Sign::Minus => AmStatus::AllNonpos,
            },
            first_violation: None,
            checked_order,
        }
    }

    fn mixed(index: usize, checked_order: usize) -> Self {
        AMVerdict {
            status: AmStatus::Mixed,
            first_violation: Some(index),
            checked_order,
        }
    }

    pub fn is_mixed(&self) -> bool {
        self.status == AmStatus::Mixed
    }
}

/// Scans `S` for coefficients of the wrong sign. Zeros never violate.
pub fn am_scan(s: &TruncatedSeries, expect_sign: Sign) -> AMVerdict {
    let e = expect_sign.as_i32();
    match s.coeffs().iter().position(|c| c.signum() * e < 0) {
        Some(i) => AMVerdict::mixed(i, s.order()),
        None => AMVerdict::clean(expect_sign, s.order()),
    }
}

/// Coefficients of `(1-x) V'(x) - p V(x)`: `(n+1) V_{n+1} - (n+p) V_n`.
pub fn test_function_coeffs(v: &TruncatedSeries, p: &ExactScalar) -> Result<TruncatedSeries> {
    if v.order() < 1 {
        return Err(Error::OrderTooSmall {
            required: 1,
            actual: v.order(),
        });
    }
    let coeffs = (0..v.order())
        .map(|n| v.get(n + 1).mul_int(n as i64 + 1) - &(v.get(n) * &p.add_int(n as i64)))
        .collect();
    Ok(TruncatedSeries::new(coeffs).with_e_power(v.prefactor_e_power()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "first_index")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
    /// Direction changes; the index `n` where `V_{n+1}/W_{n+1}` first contradicts the earlier trend.
    Mixed(usize),
}

impl Monotonicity {
    pub fn as_str(self) -> &'static str {
        match self {
            Monotonicity::Increasing => "increasing",
            Monotonicity::Decreasing => "decreasing",
            Monotonicity::Constant => "constant",
            Monotonicity::Mixed(_) => "mixed",
        }
    }
}

fn check_positive(w: &TruncatedSeries) -> Result<()> {
    match w.coeffs().iter().position(|c| !c.is_positive()) {
        Some(index) => Err(Error::NonpositiveDenominatorCoefficient { index }),
        None => Ok(()),
    }
}

/// Direction of `{V_n / W_n}` (non-strict), by cross-multiplication.
pub fn ratio_monotonicity(v: &TruncatedSeries, w: &TruncatedSeries) -> Result<Monotonicity> {
    if v.order() != w.order() {
        return Err(Error::OrderMismatch {
            left: v.order(),
            right: w.order(),
        });
    }
    check_positive(w)?;
    let mut trend = 0;
    for n in 0..v.order() {
        let d = (&(v.get(n + 1) * w.get(n)) - &(v.get(n) * w.get(n + 1))).signum();
        if d == 0 {
            continue;
        }
        if trend == 0 {
            trend = d;
        } else if d != trend {
            return Ok(Monotonicity::Mixed(n));
        }
    }
    Ok(match trend {
        1 => Monotonicity::Increasing,
        -1 => Monotonicity::Decreasing,
        _ => Monotonicity::Constant,
    })
}

/// Whether `{W_{n+1}/W_n}` is increasing for `W_n = (p)_n / n!`; true exactly when `p <= 1`.
///
/// The closed form `W_{n+2}/W_{n+1} - W_{n+1}/W_n = (1-p)/((n+1)(n+2))` decides it;
/// for `p > 0` the ratios are also scanned up to `order`.
pub fn w_ratio_increasing(p: &ExactScalar, order: usize) -> bool {
    let closed = p <= &ExactScalar::one();
    if p.is_positive() && order >= 2 {
        let w = binom_pow_coeffs(p, Sign::Minus, order);
        let scanned = (0..order - 1)
            .all(|n| w.get(n + 2) * w.get(n) >= w.get(n + 1).square());
        debug_assert_eq!(closed, scanned);
    }
    closed
}

fn fp_scan(params: &ParameterTriple, p: &ExactScalar, derivative: usize, expect: Sign, order: usize) -> AMVerdict {
    let mut rec = FpRecurrence::new(params, p);
    for _ in 0..derivative {
        rec.advance();
    }
    for m in 0..=order {
        if rec.signum() * expect.as_i32() < 0 {
            return AMVerdict::mixed(m, order);
        }
        rec.advance();
    }
    AMVerdict::clean(Sign::Plus, order)
}

/// Scan of `-F_p'` where `F_p = (1-x)^p F`: coefficient `n` is `-(n+1) u_{n+1}`.
pub fn minus_fp_prime_verdict(params: &ParameterTriple, p: &ExactScalar, order: usize) -> AMVerdict {
    fp_scan(params, p, 1, Sign::Minus, order)
}

/// Scan of `sign * F_p''`: coefficient `n` is `sign * (n+1)(n+2) u_{n+2}`.
pub fn fp_second_verdict(params: &ParameterTriple, p: &ExactScalar, order: usize, sign: Sign) -> AMVerdict {
    fp_scan(params, p, 2, sign, order)
}

/// Coefficients of `(1-x)^p exp(F - 1)` up to `order`, via `exp(F - 1 + p ln(1-x))`.
pub fn gp_reduced_direct(params: &ParameterTriple, p: &ExactScalar, order: usize) -> TruncatedSeries {
    let a = hyp_coeffs(params, order);
    let pr = p.as_rational();
    let kh: Vec<Rational> = (0..=order)
        .map(|k| {
            if k == 0 {
                Rational::new()
            } else {
                Rational::from(a.get(k).as_rational() * k as u64) - pr
            }
        })
        .collect();
    let mut v: Vec<Rational> = Vec::with_capacity(order + 1);
    v.push(Rational::from(1));
    for n in 1..=order {
        let mut acc = Rational::new();
        for k in 1..=n {
            acc += Rational::from(&kh[k] * &v[n - k]);
        }
        acc /= n as u64;
        v.push(acc);
    }
    TruncatedSeries::new(v.into_iter().map(ExactScalar::from_rational).collect()).with_e_power(1)
}

/// Scan of `sign * G_p' / e` with `G_p = (1-x)^p exp(F)`.
pub fn gp_prime_verdict(params: &ParameterTriple, p: &ExactScalar, order: usize, sign: Sign) -> AMVerdict {
    let g = gp_reduced_direct(params, p, order + 1);
    let d = series_derivative(&g).expect("order >= 1");
    let d = if sign == Sign::Minus { d.negate() } else { d };
    am_scan(&d, Sign::Plus)
}

/// Scan of `sign * (ln F_p)^{(k)}`; `k = 0` is `ln F_p` itself.
pub fn lnfp_k_verdict(params: &ParameterTriple, p: &ExactScalar, k: usize, order: usize, sign: Sign) -> AMVerdict {
    let mut s = lnfp_coeffs(params, p, order + k);
    for _ in 0..k {
        s = series_derivative(&s).expect("order stays >= 1 while differentiating");
    }
    let s = if sign == Sign::Minus { s.negate() } else { s };
    am_scan(&s, Sign::Plus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JurkatReport {
    pub hypotheses_hold: bool,
    pub denominator_ratios_increasing: bool,
    pub ratio_monotonicity: Monotonicity,
    pub ratio_derivative_verdict: AMVerdict,
    /// Hypotheses hold and the derivative of `P/Q` has the sign they predict up to the checked order.
    pub conclusion_matches: bool,
}

/// Checks the hypotheses of Jurkat's criterion for `P/Q` and scans `(P/Q)'`.
pub fn jurkat_check(pnum: &TruncatedSeries, q: &TruncatedSeries) -> Result<JurkatReport> {
    if pnum.order() != q.order() {
        return Err(Error::OrderMismatch {
            left: pnum.order(),
            right: q.order(),
        });
    }
    check_positive(q)?;
    let n = q.order();
    let ratios_increasing = (0..n.saturating_sub(1)).all(|k| q.get(k + 2) * q.get(k) >= q.get(k + 1).square());
    let mono = ratio_monotonicity(pnum, q)?;
    let q0 = q.get(0).clone();
    let normalized = q.scale(&q0.recip());
    let ratio = cauchy_product(pnum, &series_reciprocal(&normalized)?)?.scale(&q0.recip());
    let expect = match mono {
        Monotonicity::Decreasing => Sign::Minus,
        _ => Sign::Plus,
    };
    let verdict = if n >= 1 {
        am_scan(&series_derivative(&ratio)?, expect)
    } else {
        AMVerdict::clean(expect, 0)
    };
    let hypotheses_hold = ratios_increasing && !matches!(mono, Monotonicity::Mixed(_));
    Ok(JurkatReport {
        hypotheses_hold,
        denominator_ratios_increasing: ratios_increasing,
        ratio_monotonicity: mono,
        conclusion_matches: hypotheses_hold && !verdict.is_mixed(),
        ratio_derivative_verdict: verdict,
    })
}

/// The theorem statements, one id per item.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    T1i,
    T1ii,
    T1iii,
    T2i,
    T2ii,
    T2iii,
    C1i,
    C1ii,
    C1iii,
    T3i,
    T3ii,
    T4,
    /// `sign * (ln F_p)^{(k)}`.
    T5 { k: usize, sign: Sign },
}

impl TheoremId {
    pub const FIXED: [TheoremId; 12] = [
        TheoremId::T1i,
        TheoremId::T1ii,
        TheoremId::T1iii,
        TheoremId::T2i,
        TheoremId::T2ii,
        TheoremId::T2iii,
        TheoremId::C1i,
        TheoremId::C1ii,
        TheoremId::C1iii,
        TheoremId::T3i,
        TheoremId::T3ii,
        TheoremId::T4,
    ];

    pub fn condition_kind(self) -> ConditionKind {
        match self {
            TheoremId::T1iii | TheoremId::T2iii | TheoremId::C1iii | TheoremId::T3ii => ConditionKind::SufficientOnly,
            _ => ConditionKind::Iff,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremId::T1i => "T1i",
            TheoremId::T1ii => "T1ii",
            TheoremId::T1iii => "T1iii",
            TheoremId::T2i => "T2i",
            TheoremId::T2ii => "T2ii",
            TheoremId::T2iii => "T2iii",
            TheoremId::C1i => "C1i",
            TheoremId::C1ii => "C1ii",
            TheoremId::C1iii => "C1iii",
            TheoremId::T3i => "T3i",
            TheoremId::T3ii => "T3ii",
            TheoremId::T4 => "T4",
            TheoremId::T5 { k, sign } => return write!(f, "T5k{k}{sign}"),
        };
        f.write_str(s)
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Fixed ids by name; `T5` optionally followed by `k<k>` and a sign, e.g. `T5k2-` (defaults k=0, `+`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(id) = TheoremId::FIXED.iter().find(|id| id.to_string() == s) {
            return Ok(*id);
        }
        let bad = || Error::Parse(format!("unknown theorem id {s:?}"));
        let rest = s.strip_prefix("T5").ok_or_else(bad)?;
        let (rest, sign) = match rest.chars().last() {
            Some('+') => (&rest[..rest.len() - 1], Sign::Plus),
            Some('-') => (&rest[..rest.len() - 1], Sign::Minus),
            _ => (rest, Sign::Plus),
        };
        let k = if rest.is_empty() {
            0
        } else {
            rest.strip_prefix('k').and_then(|d| d.parse().ok()).ok_or_else(bad)?
        };
        Ok(TheoremId::T5 { k, sign })
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictedVerdict {
    Am,
    NotAm,
    OutsideScope,
}

impl PredictedVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            PredictedVerdict::Am => "am",
            PredictedVerdict::NotAm => "not_am",
            PredictedVerdict::OutsideScope => "outside_scope",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    Iff,
    SufficientOnly,
}

impl ConditionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConditionKind::Iff => "iff",
            ConditionKind::SufficientOnly => "sufficient_only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremPrediction {
    pub verdict: PredictedVerdict,
    pub condition_kind: ConditionKind,
    pub theorem_id: TheoremId,
}

fn between(lo: &ExactScalar, p: &ExactScalar, hi: &ExactScalar) -> bool {
    lo <= p && p <= hi
}

/// The verdict the theorem statement predicts for `(params, p)`.
///
/// Hypothesis failures and the ranges a sufficient-only statement leaves open
/// are `OutsideScope`.
pub fn theorem_prediction(params: &ParameterTriple, p: &ExactScalar, id: TheoremId) -> TheoremPrediction {
    let kind = id.condition_kind();
    let iff = |holds: bool| if holds { PredictedVerdict::Am } else { PredictedVerdict::NotAm };
    let sufficient = |holds: bool| if holds { PredictedVerdict::Am } else { PredictedVerdict::OutsideScope };
    let reg = region(params);
    let balance = reg.c_vs_ab_sum;
    let r = params.ab_over_c();
    let one = ExactScalar::one();

    let fp_family = |scope: bool, upper1: ExactScalar, upper2: ExactScalar, item: u8| -> PredictedVerdict {
        if !scope {
            return PredictedVerdict::OutsideScope;
        }
        // (c-a)(c-b) >= 0 holds in every F_p scope.
        let pos = classify_vs_roots(params, p).expect("scope implies (c-a)(c-b) >= 0");
        match item {
            1 => iff(between(&r, p, &upper1)),
            2 => iff(pos.at_or_above_low() && p <= &upper1),
            _ => sufficient(pos.at_or_above_high() && p <= &upper2),
        }
    };

    let t1_scope = balance != Balance::Less;
    let t2_scope = reg.max_ab_lt_c && balance == Balance::Less;
    let c1_scope = balance == Balance::Equal;
    let shift1 = upper_shift(params);
    let shift2 = shift1.add_int(1);
    let two = ExactScalar::from_integer(2);

    let verdict = match id {
        TheoremId::T1i => fp_family(t1_scope, one.clone(), two, 1),
        TheoremId::T1ii => fp_family(t1_scope, one.clone(), two, 2),
        TheoremId::T1iii => fp_family(t1_scope, one.clone(), two, 3),
        TheoremId::C1i => fp_family(c1_scope, one.clone(), two, 1),
        TheoremId::C1ii => fp_family(c1_scope, one.clone(), two, 2),
        TheoremId::C1iii => fp_family(c1_scope, one.clone(), two, 3),
        TheoremId::T2i => fp_family(t2_scope, shift1, shift2, 1),
        TheoremId::T2ii => fp_family(t2_scope, shift1, shift2, 2),
        TheoremId::T2iii => fp_family(t2_scope, shift1, shift2, 3),
        TheoremId::T3i => {
            if balance == Balance::Greater {
                PredictedVerdict::OutsideScope
            } else {
                iff(p <= &r)
            }
        }
        TheoremId::T3ii => {
            if balance == Balance::Equal && zero_balanced_gp_condition(params) {
                sufficient(between(&zero_balanced_gp_threshold(params), p, &one))
            } else {
                PredictedVerdict::OutsideScope
            }
        }
        TheoremId::T4 => {
            if reg.c_ge_abc_combined {
                iff(between(&r, p, &one))
            } else {
                PredictedVerdict::OutsideScope
            }
        }
        TheoremId::T5 { k, sign } => {
            // kC_k for k >= 1; k = 0 uses C_1 = ab/c.
            let kck = || if k == 0 { r.clone() } else { crate::thresholds::kCk(params, k).expect("k >= 1") };
            if reg.in_r1 {
                match sign {
                    Sign::Plus => iff(p <= &crate::thresholds::nCn_limit(params)),
                    Sign::Minus => iff(p >= &kck()),
                }
            } else if reg.in_r2 {
                match sign {
                    Sign::Plus => iff(p <= &kck()),
                    Sign::Minus => iff(p >= &params.excess()),
                }
            } else {
                PredictedVerdict::OutsideScope
            }
        }
    };
    TheoremPrediction {
        verdict,
        condition_kind: kind,
        theorem_id: id,
    }
}

/// Runs the verdict operation that matches a theorem id.
pub fn verdict_for(params: &ParameterTriple, p: &ExactScalar, id: TheoremId, order: usize) -> AMVerdict {
    match id {
        TheoremId::T1i | TheoremId::T2i | TheoremId::C1i => minus_fp_prime_verdict(params, p, order),
        TheoremId::T1ii | TheoremId::T2ii | TheoremId::C1ii => fp_second_verdict(params, p, order, Sign::Minus),
        TheoremId::T1iii | TheoremId::T2iii | TheoremId::C1iii => fp_second_verdict(params, p, order, Sign::Plus),
        TheoremId::T3i => gp_prime_verdict(params, p, order, Sign::Plus),
        TheoremId::T3ii | TheoremId::T4 => gp_prime_verdict(params, p, order, Sign::Minus),
        TheoremId::T5 { k, sign } => lnfp_k_verdict(params, p, k, order, sign),
    }
}

/// First sign violation up to index `cap`, by exact recurrence (F_p family)
/// or certified ball arithmetic (the exp and log families).
pub fn deep_scan(params: &ParameterTriple, p: &ExactScalar, id: TheoremId, cap: usize) -> DeepScan {
    let exact = |v: AMVerdict| DeepScan {
        scanned_to: v.first_violation.unwrap_or(cap),
        first_violation: v.first_violation,
        undecided: 0,
    };
    match id {
        TheoremId::T1i | TheoremId::T2i | TheoremId::C1i => exact(minus_fp_prime_verdict(params, p, cap)),
        TheoremId::T1ii | TheoremId::T2ii | TheoremId::C1ii => exact(fp_second_verdict(params, p, cap, Sign::Minus)),
        TheoremId::T1iii | TheoremId::T2iii | TheoremId::C1iii => exact(fp_second_verdict(params, p, cap, Sign::Plus)),
        TheoremId::T3i => gp_prime_scan(params, p, Sign::Plus, cap),
        TheoremId::T3ii | TheoremId::T4 => gp_prime_scan(params, p, Sign::Minus, cap),
        TheoremId::T5 { k, sign } => lnfp_k_scan(params, p, k, sign, cap),
    }
}

/// Truncation orders tried before a predicted non-AM case is reported undetected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Escalation {
    pub base: usize,
    pub cap: usize,
}

impl Default for Escalation {
    fn default() -> Self {
        Escalation { base: 200, cap: 5000 }
    }
}

impl Escalation {
    /// Smallest order in the doubling schedule `base, 2 base, ..., cap` that reaches `index`.
    pub fn order_reaching(&self, index: usize) -> usize {
        let mut n = self.base;
        while n < index && n < self.cap {
            n = (n * 2).min(self.cap);
        }
        n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Concordance {
    Concordant,
    Discordant,
    UndetectedAtCap,
    OutOfScope,
}

impl Concordance {
    pub fn as_str(self) -> &'static str {
        match self {
            Concordance::Concordant => "concordant",
            Concordance::Discordant => "discordant",
            Concordance::UndetectedAtCap => "undetected_at_cap",
            Concordance::OutOfScope => "out_of_scope",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcordanceReport {
    pub prediction: TheoremPrediction,
    /// Scan result at the final order reached; for out-of-scope points an observation only.
    pub verdict: AMVerdict,
    pub outcome: Concordance,
    /// Coefficients whose sign the deep scan could not certify.
    pub undecided: usize,
}

/// Compares prediction and scan.
///
/// A predicted AM case must scan clean at `policy.base`. A predicted non-AM
/// case must show a violation at some order up to `policy.cap`; if none shows,
/// the outcome is `UndetectedAtCap`, never a theorem violation.
pub fn concordance(params: &ParameterTriple, p: &ExactScalar, id: TheoremId, policy: Escalation) -> ConcordanceReport {
    let prediction = theorem_prediction(params, p, id);
    let base = verdict_for(params, p, id, policy.base);
    let (verdict, outcome, undecided) = match prediction.verdict {
        PredictedVerdict::OutsideScope => (base, Concordance::OutOfScope, 0),
        PredictedVerdict::Am => {
            let outcome = if base.is_mixed() { Concordance::Discordant } else { Concordance::Concordant };
            (base, outcome, 0)
        }
        PredictedVerdict::NotAm if base.is_mixed() => (base, Concordance::Concordant, 0),
        PredictedVerdict::NotAm if policy.cap <= policy.base => (base, Concordance::UndetectedAtCap, 0),
        PredictedVerdict::NotAm => {
            let deep = deep_scan(params, p, id, policy.cap);
            match deep.first_violation {
                Some(i) => (
                    AMVerdict::mixed(i, policy.order_reaching(i)),
                    Concordance::Concordant,
                    deep.undecided,
                ),
                None => (
                    AMVerdict {
                        checked_order: policy.cap,
                        ..base
                    },
                    Concordance::UndetectedAtCap,
                    deep.undecided,
                ),
            }
        }
    };
    ConcordanceReport {
        prediction,
        verdict,
        outcome,
        undecided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::make_params;
    use crate::series::{fp_coeffs, gp_reduced_coeffs, second_derivative_kernel};
    use crate::thresholds::tau;
    use proptest::prelude::*;

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn s(lits: &[&str]) -> TruncatedSeries {
        TruncatedSeries::parse(lits).unwrap()
    }

    fn params(a: &str, b: &str, c: &str) -> ParameterTriple {
        make_params(q(a), q(b), q(c)).unwrap()
    }

    fn k_case() -> ParameterTriple {
        params("1/2", "1/2", "1")
    }

    #[test]
    fn am_scan_examples() {
        let v = am_scan(&s(&["1", "0", "2", "3"]), Sign::Plus);
        assert_eq!(v.status, AmStatus::AllNonneg);
        assert_eq!(v.first_violation, None);
        let v = am_scan(&s(&["1", "-1", "2"]), Sign::Plus);
        assert_eq!((v.status, v.first_violation), (AmStatus::Mixed, Some(1)));
        let d = series_derivative(&fp_coeffs(&k_case(), &q("1/4"), 201)).unwrap().negate();
        assert_eq!(am_scan(&d, Sign::Plus).status, AmStatus::AllNonneg);
        assert_eq!(am_scan(&s(&["0", "-1", "0"]), Sign::Minus).status, AmStatus::AllNonpos);
    }

    #[test]
    fn test_function_examples() {
        let p = q("3/7");
        let t = test_function_coeffs(&binom_pow_coeffs(&p, Sign::Minus, 12), &p).unwrap();
        assert!(t.coeffs().iter().all(ExactScalar::is_zero));
        let t = test_function_coeffs(&s(&["1", "1", "1", "1"]), &q("0")).unwrap();
        assert_eq!(t, s(&["1", "1", "1"]));
        // 2 A_2 - (5/4) A_1 = 9/32 - 5/16
        let t = test_function_coeffs(&hyp_coeffs(&k_case(), 2), &q("1/4")).unwrap();
        assert_eq!(t, s(&["0", "-1/32"]));
    }

    #[test]
    fn ratio_monotonicity_examples() {
        let w = binom_pow_coeffs(&q("1/4"), Sign::Minus, 50);
        assert_eq!(ratio_monotonicity(&w, &w).unwrap(), Monotonicity::Constant);
        assert_eq!(ratio_monotonicity(&hyp_coeffs(&k_case(), 50), &w).unwrap(), Monotonicity::Decreasing);
        let w2 = binom_pow_coeffs(&q("2"), Sign::Minus, 20);
        let w1 = binom_pow_coeffs(&q("1"), Sign::Minus, 20);
        assert_eq!(ratio_monotonicity(&w2, &w1).unwrap(), Monotonicity::Increasing);
        assert!(matches!(
            ratio_monotonicity(&w1, &s(&["1", "0"]).truncate(1)),
            Err(Error::OrderMismatch { .. }) | Err(Error::NonpositiveDenominatorCoefficient { .. })
        ));
        assert_eq!(
            ratio_monotonicity(&s(&["1", "2"]), &s(&["1", "0"])),
            Err(Error::NonpositiveDenominatorCoefficient { index: 1 })
        );
        assert_eq!(ratio_monotonicity(&s(&["1", "2", "1"]), &s(&["1", "1", "1"])).unwrap(), Monotonicity::Mixed(1));
    }

    #[test]
    fn w_ratio_examples() {
        assert!(w_ratio_increasing(&q("1/2"), 100));
        assert!(w_ratio_increasing(&q("1"), 100));
        assert!(!w_ratio_increasing(&q("3/2"), 100));
    }

    #[test]
    fn minus_fp_prime_examples() {
        assert_eq!(minus_fp_prime_verdict(&k_case(), &q("1/4"), 200).status, AmStatus::AllNonneg);
        let v = minus_fp_prime_verdict(&k_case(), &q("6/25"), 200);
        assert_eq!((v.status, v.first_violation), (AmStatus::Mixed, Some(0)));
    }

    #[test]
    fn k_case_just_above_one_is_clean_at_two_hundred() {
        // The first violation for p = 101/100 lies far beyond order 200; the
        // truncated scan is honest about that and reports no violation yet.
        let v = minus_fp_prime_verdict(&k_case(), &q("101/100"), 200);
        assert_eq!(v.status, AmStatus::AllNonneg);
        // A violation appears once p moves further from 1.
        let v = minus_fp_prime_verdict(&k_case(), &q("11/10"), 5000);
        assert!(v.is_mixed());
    }

    #[test]
    fn fp_scans_match_series_route() {
        for (pr, p) in [(k_case(), q("1")), (k_case(), q("3/2")), (params("2", "2", "3"), q("7/5")), (params("1", "1", "3"), q("101/100"))] {
            let u = fp_coeffs(&pr, &p, 62);
            let d1 = series_derivative(&u).unwrap();
            let d2 = series_derivative(&d1).unwrap();
            assert_eq!(minus_fp_prime_verdict(&pr, &p, 60), am_scan(&d1.negate().truncate(60), Sign::Plus));
            assert_eq!(fp_second_verdict(&pr, &p, 60, Sign::Plus), am_scan(&d2.truncate(60), Sign::Plus));
            assert_eq!(fp_second_verdict(&pr, &p, 60, Sign::Minus), am_scan(&d2.negate().truncate(60), Sign::Plus));
        }
    }

    #[test]
    fn fp_second_examples() {
        assert_eq!(fp_second_verdict(&k_case(), &q("1"), 200, Sign::Minus).status, AmStatus::AllNonneg);
        assert_eq!(fp_second_verdict(&k_case(), &q("2"), 200, Sign::Plus).status, AmStatus::AllNonneg);
        // 3/2 sits above p^* (tau(3/2) > 0), inside the sufficient range for F_p''.
        assert!(tau(&k_case(), &q("3/2")).is_positive());
        assert_eq!(fp_second_verdict(&k_case(), &q("3/2"), 200, Sign::Plus).status, AmStatus::AllNonneg);
        // Strictly between the roots the second coefficient is negative.
        let v = fp_second_verdict(&k_case(), &q("1"), 200, Sign::Plus);
        assert_eq!(v.first_violation, Some(0));
    }

    #[test]
    fn gp_prime_examples() {
        assert_eq!(gp_prime_verdict(&k_case(), &q("1/4"), 200, Sign::Plus).status, AmStatus::AllNonneg);
        let v = gp_prime_verdict(&k_case(), &q("26/100"), 200, Sign::Plus);
        assert_eq!((v.status, v.first_violation), (AmStatus::Mixed, Some(0)));
        assert_eq!(gp_prime_verdict(&params("1", "1", "3"), &q("1/2"), 200, Sign::Minus).status, AmStatus::AllNonneg);
    }

    #[test]
    fn gp_direct_route_matches_exp_then_product() {
        for (pr, p) in [(k_case(), q("1/3")), (params("7/3", "2", "5"), q("-3/2")), (params("1", "1", "3"), q("9/8"))] {
            let spec = gp_reduced_coeffs(&pr, &p, 40);
            assert_eq!(gp_reduced_direct(&pr, &p, 40), spec);
        }
    }

    #[test]
    fn lnfp_examples() {
        assert_eq!(lnfp_k_verdict(&k_case(), &q("0"), 0, 200, Sign::Plus).status, AmStatus::AllNonneg);
        assert_eq!(lnfp_k_verdict(&k_case(), &q("1/4"), 0, 500, Sign::Minus).status, AmStatus::AllNonneg);
        let v = lnfp_k_verdict(&k_case(), &q("6/25"), 0, 500, Sign::Minus);
        assert_eq!((v.status, v.first_violation), (AmStatus::Mixed, Some(1)));
    }

    #[test]
    fn jurkat_examples() {
        let w = binom_pow_coeffs(&q("1/4"), Sign::Minus, 64);
        let r = jurkat_check(&w, &w).unwrap();
        assert!(r.hypotheses_hold && r.conclusion_matches);
        assert_eq!(r.ratio_monotonicity, Monotonicity::Constant);
        assert_eq!(r.ratio_derivative_verdict.status, AmStatus::AllNonneg);

        let r = jurkat_check(&hyp_coeffs(&k_case(), 64), &w).unwrap();
        assert!(r.hypotheses_hold && r.conclusion_matches);
        assert_eq!(r.ratio_derivative_verdict.status, AmStatus::AllNonpos);

        let r = jurkat_check(&binom_pow_coeffs(&q("2"), Sign::Minus, 64), &binom_pow_coeffs(&q("1"), Sign::Minus, 64)).unwrap();
        assert!(r.hypotheses_hold && r.conclusion_matches);
        assert_eq!(r.ratio_derivative_verdict.status, AmStatus::AllNonneg);

        assert!(matches!(
            jurkat_check(&s(&["1", "1"]), &s(&["1", "-1"])),
            Err(Error::NonpositiveDenominatorCoefficient { index: 1 })
        ));
    }

    #[test]
    fn prediction_examples() {
        let pr = theorem_prediction(&k_case(), &q("1/2"), TheoremId::T1i);
        assert_eq!((pr.verdict, pr.condition_kind), (PredictedVerdict::Am, ConditionKind::Iff));
        let pr = theorem_prediction(&params("2", "2", "3"), &q("1/2"), TheoremId::T1i);
        assert_eq!(pr.verdict, PredictedVerdict::OutsideScope);
        let pr = theorem_prediction(&params("2", "2", "3"), &q("3/2"), TheoremId::T2i);
        assert_eq!((pr.verdict, pr.condition_kind), (PredictedVerdict::Am, ConditionKind::Iff));
    }

    #[test]
    fn prediction_scopes() {
        // sufficient-only statements leave the complement open
        assert_eq!(theorem_prediction(&k_case(), &q("1"), TheoremId::T1iii).verdict, PredictedVerdict::OutsideScope);
        assert_eq!(theorem_prediction(&k_case(), &q("2"), TheoremId::T1iii).verdict, PredictedVerdict::Am);
        // K case meets a+b >= 2ab(a+b+1) with equality; threshold 3/8
        assert_eq!(theorem_prediction(&k_case(), &q("1/2"), TheoremId::T3ii).verdict, PredictedVerdict::Am);
        assert_eq!(theorem_prediction(&k_case(), &q("1/4"), TheoremId::T3ii).verdict, PredictedVerdict::OutsideScope);
        assert_eq!(theorem_prediction(&params("1", "1", "2"), &q("1/2"), TheoremId::T3ii).verdict, PredictedVerdict::OutsideScope);
        let small = params("1/4", "1/4", "1/2");
        assert_eq!(theorem_prediction(&small, &q("1/2"), TheoremId::T3ii).verdict, PredictedVerdict::Am);
        assert_eq!(theorem_prediction(&small, &q("1/7"), TheoremId::T3ii).verdict, PredictedVerdict::OutsideScope);
        // neither region
        let id = TheoremId::T5 { k: 1, sign: Sign::Plus };
        assert_eq!(theorem_prediction(&params("2", "2", "3"), &q("1"), id).verdict, PredictedVerdict::OutsideScope);
        // T4 needs c >= a+b+ab
        assert_eq!(theorem_prediction(&params("1", "1", "3"), &q("1/2"), TheoremId::T4).verdict, PredictedVerdict::Am);
        assert_eq!(theorem_prediction(&params("1", "1", "5/2"), &q("1/2"), TheoremId::T4).verdict, PredictedVerdict::OutsideScope);
    }

    #[test]
    fn theorem_id_round_trip() {
        for id in TheoremId::FIXED {
            assert_eq!(id.to_string().parse::<TheoremId>().unwrap(), id);
        }
        let id = TheoremId::T5 { k: 3, sign: Sign::Minus };
        assert_eq!(id.to_string(), "T5k3-");
        assert_eq!("T5k3-".parse::<TheoremId>().unwrap(), id);
        assert_eq!("T5".parse::<TheoremId>().unwrap(), TheoremId::T5 { k: 0, sign: Sign::Plus });
        assert_eq!("T5-".parse::<TheoremId>().unwrap(), TheoremId::T5 { k: 0, sign: Sign::Minus });
        assert!("T6".parse::<TheoremId>().is_err());
        assert!("T5kx".parse::<TheoremId>().is_err());
    }

    #[test]
    fn concordance_escalates() {
        // (1/2,1/2,6/5), p = 21/20: the first violation of -F_p' lies beyond order 400.
        let r = concordance(&params("1/2", "1/2", "6/5"), &q("21/20"), TheoremId::T1i, Escalation::default());
        assert_eq!(r.prediction.verdict, PredictedVerdict::NotAm);
        assert_eq!(r.outcome, Concordance::Concordant);
        let i = r.verdict.first_violation.unwrap();
        assert!(i > 400 && i <= 800, "first violation at {i}");
        assert_eq!(r.verdict.checked_order, 800);
    }

    #[test]
    fn concordance_reports_undetected() {
        let policy = Escalation { base: 200, cap: 400 };
        let r = concordance(&k_case(), &q("101/100"), TheoremId::T1i, policy);
        assert_eq!(r.outcome, Concordance::UndetectedAtCap);
        assert_eq!(r.verdict.checked_order, 400);
    }

    #[test]
    fn escalation_schedule() {
        let e = Escalation::default();
        assert_eq!(e.order_reaching(0), 200);
        assert_eq!(e.order_reaching(201), 400);
        assert_eq!(e.order_reaching(1601), 3200);
        assert_eq!(e.order_reaching(4000), 5000);
    }

    #[test]
    fn kappa_coefficients() {
        // kernel coefficients equal (a)_n (b)_n kappa_n / ((c)_n n!) with kappa_0 = -tau(p)
        for (pr, p) in [(k_case(), q("1/3")), (params("3/2", "2/5", "7/3"), q("6/5")), (params("1", "1", "3"), q("-1/2"))] {
            let ker = second_derivative_kernel(&pr, &p, 64);
            let lam = hyp_coeffs(&pr, 64);
            let (a, b, c) = (pr.a(), pr.b(), pr.c());
            let ab = a * b;
            let e = pr.excess();
            for n in 0..=64i64 {
                let nn = ExactScalar::from_integer(n);
                let cn = c + &nn;
                let lin = ExactScalar::one() + &(&(&ab.mul_int(2) + &(&e * &nn).mul_int(2)) / &cn);
                let inner = &(&(&(ExactScalar::one() + a) + b) + &ab.mul_int(2)) + &(&cn + &(&e * &nn));
                let num = &(&(&e * &nn) * &inner) + &(&(&ab * &a.add_int(1)) * &b.add_int(1));
                let kappa = &(&(-&p.square()) + &(&lin * &p)) - &(&num / &(&cn * &cn.add_int(1)));
                if n == 0 {
                    assert_eq!(kappa, -tau(&pr, &p));
                }
                assert_eq!(ker.get(n as usize), &(lam.get(n as usize) * &kappa));
            }
        }
    }

    #[test]
    fn kernel_is_scaled_second_derivative() {
        // (1-x)^{2-p} F_p'' equals minus the kernel
        let (pr, p) = (params("5/4", "2/3", "9/4"), q("7/5"));
        let d2 = series_derivative(&series_derivative(&fp_coeffs(&pr, &p, 42)).unwrap()).unwrap();
        let lhs = cauchy_product(&d2, &binom_pow_coeffs(&(ExactScalar::from_integer(2) - &p), Sign::Plus, 40)).unwrap();
        assert_eq!(lhs, second_derivative_kernel(&pr, &p, 40).negate());
    }

    fn rational() -> impl Strategy<Value = ExactScalar> {
        (-60i64..60, 1i64..30).prop_map(|(n, d)| ExactScalar::ratio(n, d))
    }

    fn positive_below(max: i64) -> impl Strategy<Value = ExactScalar> {
        (1i64..(max * 40), 1i64..40).prop_map(move |(n, d)| ExactScalar::ratio(n, d)).prop_filter("in range", move |x| x < &ExactScalar::from_integer(max))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn test_function_identity(tail in prop::collection::vec(rational(), 64), p in positive_below(3)) {
            let mut coeffs = vec![ExactScalar::one()];
            coeffs.extend(tail);
            let v = TruncatedSeries::new(coeffs);
            let w = binom_pow_coeffs(&p, Sign::Minus, 64);
            let t = test_function_coeffs(&v, &p).unwrap();
            for n in 0..64 {
                let rhs = &w.get(n + 1).mul_int(n as i64 + 1) * &(&(v.get(n + 1) / w.get(n + 1)) - &(v.get(n) / w.get(n)));
                prop_assert_eq!(t.get(n), &rhs);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn w_ratio_closed_form(p in positive_below(3)) {
            let w = binom_pow_coeffs(&p, Sign::Minus, 102);
            for n in 0..=100usize {
                let lhs = &(w.get(n + 2) / w.get(n + 1)) - &(w.get(n + 1) / w.get(n));
                let rhs = &(ExactScalar::one() - &p) / &ExactScalar::from_integer(((n + 1) * (n + 2)) as i64);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
