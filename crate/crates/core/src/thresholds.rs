//! Parameter thresholds: the quadratic tau(p) and its roots, region flags,
//! and the `n C_n` sequence of `ln F`.
//!
//! Every decision is an exact sign test. The roots of tau are irrational in
//! general, so positions relative to them are read off sign(tau(p)) and the
//! side of the vertex `1/2 + ab/c`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, ParameterTriple};
use crate::series::log_hyp_coeffs;

/// How `c` compares with `a + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Balance {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for Balance {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Balance::Less,
            Ordering::Equal => Balance::Equal,
            Ordering::Greater => Balance::Greater,
        }
    }
}

impl Balance {
    pub fn as_str(self) -> &'static str {
        match self {
            Balance::Less => "less",
            Balance::Equal => "equal",
            Balance::Greater => "greater",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub in_r1: bool,
    pub in_r2: bool,
    /// `c` compared with `a + b`.
    pub c_vs_ab_sum: Balance,
    /// `c >= a + b + ab`.
    pub c_ge_abc_combined: bool,
    pub zero_balanced: bool,
    /// `max{a, b} < c`.
    pub max_ab_lt_c: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootPosition {
    BelowPstarLow,
    EqualsPstarLow,
    StrictlyBetween,
    EqualsPstarHigh,
    AbovePstarHigh,
}

impl RootPosition {
    pub fn as_str(self) -> &'static str {
        match self {
            RootPosition::BelowPstarLow => "below_pstar_low",
            RootPosition::EqualsPstarLow => "equals_pstar_low",
            RootPosition::StrictlyBetween => "strictly_between",
            RootPosition::EqualsPstarHigh => "equals_pstar_high",
            RootPosition::AbovePstarHigh => "above_pstar_high",
        }
    }

    /// `p_* <= p <= p^*`.
    pub fn within_roots(self) -> bool {
        !matches!(self, RootPosition::BelowPstarLow | RootPosition::AbovePstarHigh)
    }

    /// `p >= p_*`.
    pub fn at_or_above_low(self) -> bool {
        self != RootPosition::BelowPstarLow
    }

    /// `p >= p^*`.
    pub fn at_or_above_high(self) -> bool {
        matches!(self, RootPosition::EqualsPstarHigh | RootPosition::AbovePstarHigh)
    }
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalInterval {
    pub lo: ExactScalar,
    pub hi: ExactScalar,
}

impl RationalInterval {
    pub fn width(&self) -> ExactScalar {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &ExactScalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> ExactScalar {
        self.lo.midpoint(&self.hi)
    }
}

/// `(c - a)(c - b)`.
pub fn sign_product(params: &ParameterTriple) -> ExactScalar {
    &(params.c() - params.a()) * &(params.c() - params.b())
}

/// `tau(p) = p^2 - (1 + 2ab/c) p + ab(a+1)(b+1) / (c (c+1))`.
///
/// This is the form for which `tau(p) = 2 u_2(p)` and whose roots are
/// `1/2 + ab/c -+ sqrt(1/4 + ab(c-a)(c-b) / (c^2 (c+1)))`.
pub fn tau(params: &ParameterTriple, p: &ExactScalar) -> ExactScalar {
    let (a, b, c) = (params.a(), params.b(), params.c());
    let ab = a * b;
    let lin = ExactScalar::one() + (&ab / c).mul_int(2);
    let constant = &(&(&ab * &a.add_int(1)) * &b.add_int(1)) / &(c * &c.add_int(1));
    &(&p.square() - &(&lin * p)) + &constant
}

/// Axis of symmetry of tau: `1/2 + ab/c`.
pub fn tau_vertex(params: &ParameterTriple) -> ExactScalar {
    params.ab_over_c() + ExactScalar::ratio(1, 2)
}

fn require_lemma_hypothesis(params: &ParameterTriple) -> Result<()> {
    if sign_product(params).is_negative() {
        return Err(Error::HypothesisViolated(format!(
            "(c-a)(c-b) >= 0 required, parameters {params}"
        )));
    }
    Ok(())
}

/// Position of `p` relative to the roots `p_* <= p^*` of tau.
pub fn classify_vs_roots(params: &ParameterTriple, p: &ExactScalar) -> Result<RootPosition> {
    require_lemma_hypothesis(params)?;
    Ok(position_unchecked(params, p))
}

/// Same as [`classify_vs_roots`] without the `(c-a)(c-b) >= 0` check.
///
/// The roots are real for every positive triple with `(c-a)(c-b) > -c^2(c+1)/(4ab)`,
/// and the theorems with a shifted triple need this form.
pub(crate) fn position_unchecked(params: &ParameterTriple, p: &ExactScalar) -> RootPosition {
    let t = tau(params, p).signum();
    let side = p.cmp(&tau_vertex(params));
    match (t, side) {
        (-1, _) => RootPosition::StrictlyBetween,
        (0, Ordering::Greater) => RootPosition::EqualsPstarHigh,
        (0, _) => RootPosition::EqualsPstarLow,
        (_, Ordering::Greater) => RootPosition::AbovePstarHigh,
        // tau > 0 at the vertex only when there are no real roots
        (_, _) => RootPosition::BelowPstarLow,
    }
}

/// Rational enclosures of width `<= eps` for `p_*` and `p^*`, by bisection on tau.
pub fn root_enclosures(
    params: &ParameterTriple,
    eps: &ExactScalar,
) -> Result<(RationalInterval, RationalInterval)> {
    require_lemma_hypothesis(params)?;
    if !eps.is_positive() {
        return Err(Error::DomainError(format!("eps must be > 0, got {eps}")));
    }
    let v = tau_vertex(params);
    // tau(0) > 0 for positive parameters; tau(v) < 0.
    let low = bisect(params, ExactScalar::zero(), v.clone(), true, eps);
    let mut offset = ExactScalar::one();
    while !tau(params, &(&v + &offset)).is_positive() {
        offset = offset.mul_int(2);
    }
    let high = bisect(params, v.clone(), &v + &offset, false, eps);
    Ok((low, high))
}

/// Bisection on an interval where tau changes sign exactly once.
/// `positive_left` tells which end has tau > 0.
fn bisect(
    params: &ParameterTriple,
    mut lo: ExactScalar,
    mut hi: ExactScalar,
    positive_left: bool,
    eps: &ExactScalar,
) -> RationalInterval {
    while &(&hi - &lo) > eps {
        let mid = lo.midpoint(&hi);
        let t = tau(params, &mid);
        if t.is_zero() {
            return RationalInterval { lo: mid.clone(), hi: mid };
        }
        if t.is_positive() == positive_left {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RationalInterval { lo, hi }
}

/// Region flags. Boundary equalities count for both regions.
pub fn region(params: &ParameterTriple) -> RegionReport {
    let (a, b, c) = (params.a(), params.b(), params.c());
    let ab = a * b;
    let sum = a + b;
    let prod = sign_product(params);
    let base = c >= &sum.add_int(-1);
    let aux = &(&(ExactScalar::one() + &sum) - &ab) * c >= ab.mul_int(2);
    let balance = Balance::from(c.cmp(&sum));
    RegionReport {
        in_r1: base && aux && !prod.is_negative(),
        in_r2: base && !prod.is_positive(),
        c_vs_ab_sum: balance,
        c_ge_abc_combined: c >= &(&sum + &ab),
        zero_balanced: balance == Balance::Equal,
        max_ab_lt_c: a < c && b < c,
    }
}

/// `k C_k`, where `C_k` is the k-th coefficient of `ln F`.
#[allow(non_snake_case)]
pub fn kCk(params: &ParameterTriple, k: usize) -> Result<ExactScalar> {
    if k == 0 {
        return Err(Error::DomainError("k must be >= 1".into()));
    }
    Ok(log_hyp_coeffs(params, k).get(k).mul_int(k as i64))
}

/// `[1 C_1, 2 C_2, ..., N C_N]`, computed from one log expansion.
pub fn n_cn_sequence(params: &ParameterTriple, order: usize) -> Vec<ExactScalar> {
    let c = log_hyp_coeffs(params, order);
    (1..=order).map(|n| c.get(n).mul_int(n as i64)).collect()
}

/// `lim n C_n = max{0, a+b-c}`.
#[allow(non_snake_case)]
pub fn nCn_limit(params: &ParameterTriple) -> ExactScalar {
    params.excess().max(ExactScalar::zero())
}

/// `a + b + 1 - c`.
pub fn upper_shift(params: &ParameterTriple) -> ExactScalar {
    params.excess().add_int(1)
}

/// Lower threshold `ab(2a+2b+1) / ((a+b)(a+b+1))` for `-G'_p` in the zero-balanced case.
///
/// This is the form attached to the exponential-derivative theorem. The companion
/// logarithmic bound is sometimes quoted with denominator `a+b` alone; that
/// variant differs by the factor `a+b+1` and is not used here.
pub fn zero_balanced_gp_threshold(params: &ParameterTriple) -> ExactScalar {
    let (a, b) = (params.a(), params.b());
    let sum = a + b;
    let num = &(a * b) * &sum.mul_int(2).add_int(1);
    &num / &(&sum * &sum.add_int(1))
}

/// The side condition `a + b >= 2ab(a+b+1)` paired with [`zero_balanced_gp_threshold`].
pub fn zero_balanced_gp_condition(params: &ParameterTriple) -> bool {
    let (a, b) = (params.a(), params.b());
    let sum = a + b;
    sum >= &(a * b).mul_int(2) * &sum.add_int(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::make_params;
    use proptest::prelude::*;

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn params(a: &str, b: &str, c: &str) -> ParameterTriple {
        make_params(q(a), q(b), q(c)).unwrap()
    }

    fn k_case() -> ParameterTriple {
        params("1/2", "1/2", "1")
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&k_case(), &q("0")), q("9/32"));
        assert_eq!(tau(&k_case(), &q("1/4")), q("-1/32"));
        assert_eq!(tau(&k_case(), &q("3/4")), q("-9/32"));
    }

    #[test]
    fn tau_is_twice_second_coefficient() {
        use crate::series::fp_coeffs;
        for (pr, p) in [(k_case(), q("1/3")), (params("2", "5/3", "7/4"), q("9/5")), (params("1", "1", "3"), q("-2"))] {
            let u = fp_coeffs(&pr, &p, 2);
            assert_eq!(tau(&pr, &p), u.get(2).mul_int(2));
        }
    }

    #[test]
    fn tau_at_ab_over_c_closed_form() {
        let pr = params("3/5", "7/4", "11/3");
        let (a, b, c) = (pr.a(), pr.b(), pr.c());
        let expected = -(&(&(a * b) * &sign_product(&pr)) / &(&c.square() * &c.add_int(1)));
        assert_eq!(tau(&pr, &pr.ab_over_c()), expected);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_vs_roots(&k_case(), &q("1/4")).unwrap(), RootPosition::StrictlyBetween);
        assert_eq!(classify_vs_roots(&k_case(), &q("0")).unwrap(), RootPosition::BelowPstarLow);
        assert_eq!(classify_vs_roots(&k_case(), &q("2")).unwrap(), RootPosition::AbovePstarHigh);
        assert!(matches!(
            classify_vs_roots(&params("1/2", "2", "8/5"), &q("1")),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn classify_exact_roots() {
        // (c-a)(c-b) = 0: roots are ab/c and 1 + ab/c.
        let pr = params("2", "3/2", "2");
        let r = pr.ab_over_c();
        assert_eq!(classify_vs_roots(&pr, &r).unwrap(), RootPosition::EqualsPstarLow);
        assert_eq!(classify_vs_roots(&pr, &r.add_int(1)).unwrap(), RootPosition::EqualsPstarHigh);
    }

    #[test]
    fn enclosure_examples() {
        let eps = q("1/1000");
        let (lo, hi) = root_enclosures(&k_case(), &eps).unwrap();
        assert!(lo.width() <= eps && hi.width() <= eps);
        let p_low = 0.75 - 0.75 / 2f64.sqrt();
        let p_high = 0.75 + 0.75 / 2f64.sqrt();
        assert!(lo.lo.to_f64() <= p_low && p_low <= lo.hi.to_f64());
        assert!(hi.lo.to_f64() <= p_high && p_high <= hi.hi.to_f64());
        assert!((lo.midpoint().to_f64() - 0.2197).abs() < 1e-3);
        assert!((hi.midpoint().to_f64() - 1.2803).abs() < 1e-3);
    }

    #[test]
    fn enclosures_degenerate_case() {
        let pr = params("2", "3/2", "2");
        let eps = q("1/1000000");
        let (lo, hi) = root_enclosures(&pr, &eps).unwrap();
        assert!(lo.contains(&pr.ab_over_c()));
        assert!(hi.contains(&pr.ab_over_c().add_int(1)));
    }

    #[test]
    fn region_examples() {
        let r = region(&k_case());
        assert!(r.in_r1 && !r.in_r2 && r.zero_balanced);
        assert_eq!(r.c_vs_ab_sum, Balance::Equal);
        let r = region(&params("2", "2", "3"));
        assert!(!r.in_r1 && !r.in_r2);
        assert_eq!(r.c_vs_ab_sum, Balance::Less);
        let r = region(&params("1/2", "2", "8/5"));
        assert!(r.in_r2 && !r.in_r1);
        let r = region(&params("1", "1", "3"));
        assert!(r.c_ge_abc_combined && r.max_ab_lt_c);
    }

    #[test]
    fn region_boundary_reports_both() {
        // (c-a)(c-b) = 0 with the auxiliary inequality satisfied
        let r = region(&params("1", "1/2", "1"));
        assert!(r.in_r1 && r.in_r2);
    }

    #[test]
    fn kck_examples() {
        assert_eq!(kCk(&k_case(), 1).unwrap(), q("1/4"));
        assert_eq!(kCk(&k_case(), 2).unwrap(), q("7/32"));
        assert_eq!(kCk(&params("1", "1", "3"), 1).unwrap(), q("1/3"));
    }

    #[test]
    fn limit_examples() {
        assert_eq!(nCn_limit(&k_case()), q("0"));
        assert_eq!(nCn_limit(&params("2", "2", "3")), q("1"));
        assert_eq!(nCn_limit(&params("1", "1", "3")), q("0"));
    }

    #[test]
    fn gp_threshold_value() {
        // a = b = 1/4: ab(2a+2b+1)/((a+b)(a+b+1)) = (1/16)(2)/((1/2)(3/2)) = 1/6
        let pr = params("1/4", "1/4", "1/2");
        assert_eq!(zero_balanced_gp_threshold(&pr), q("1/6"));
        assert!(zero_balanced_gp_condition(&pr));
        assert!(zero_balanced_gp_condition(&k_case()));
        assert_eq!(zero_balanced_gp_threshold(&k_case()), q("3/8"));
        assert!(!zero_balanced_gp_condition(&params("1", "1", "2")));
    }

    fn positive() -> impl Strategy<Value = ExactScalar> {
        (1i64..120, 1i64..40).prop_map(|(n, d)| ExactScalar::ratio(n, d))
    }

    fn triple() -> impl Strategy<Value = ParameterTriple> {
        (positive(), positive(), positive()).prop_map(|(a, b, c)| make_params(a, b, c).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn lemma_chain(pr in triple()) {
            prop_assume!(sign_product(&pr).is_positive());
            let r = pr.ab_over_c();
            prop_assert!(tau(&pr, &ExactScalar::zero()).is_positive());
            prop_assert!(tau(&pr, &r).is_negative());
            prop_assert!(tau(&pr, &r.add_int(1)).is_negative());
        }

        #[test]
        fn shifted_threshold_below_upper_root(a in positive(), b in positive(), t in (0i64..80, 1i64..40)) {
            let pr = make_params(a.clone(), b.clone(), &(&a + &b) + &ExactScalar::ratio(t.0, t.1)).unwrap();
            let (a, b, c) = (pr.a(), pr.b(), pr.c());
            let lhs = &(&(a + b) + &(a * b)).add_int(1) / &c.add_int(2);
            prop_assert!(lhs < pr.ab_over_c().add_int(1));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn classification_agrees_with_enclosures(pr in triple(), pn in 0i64..400, pd in 1i64..60) {
            prop_assume!(!sign_product(&pr).is_negative());
            let p = ExactScalar::ratio(pn, pd);
            let eps = ExactScalar::ratio(1, 1 << 20);
            let (lo, hi) = root_enclosures(&pr, &eps).unwrap();
            let pos = classify_vs_roots(&pr, &p).unwrap();
            if p < lo.lo {
                prop_assert_eq!(pos, RootPosition::BelowPstarLow);
            } else if p > lo.hi && p < hi.lo {
                prop_assert_eq!(pos, RootPosition::StrictlyBetween);
            } else if p > hi.hi {
                prop_assert_eq!(pos, RootPosition::AbovePstarHigh);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(6))]

        #[test]
        fn ncn_monotone_in_regions(an in 1i64..12, bn in 1i64..12, cn in 1i64..16, d in 1i64..5) {
            let pr = make_params(ExactScalar::ratio(an, d), ExactScalar::ratio(bn, d), ExactScalar::ratio(cn, d)).unwrap();
            let reg = region(&pr);
            prop_assume!(reg.in_r1 != reg.in_r2);
            let seq = n_cn_sequence(&pr, 200);
            let lim = nCn_limit(&pr);
            for w in seq.windows(2) {
                if reg.in_r1 {
                    prop_assert!(w[1] <= w[0]);
                } else {
                    prop_assert!(w[1] >= w[0]);
                }
            }
            for v in &seq {
                if reg.in_r1 {
                    prop_assert!(v >= &lim);
                } else {
                    prop_assert!(v <= &lim);
                }
            }
        }
    }
}
