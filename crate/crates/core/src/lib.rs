//! Exact power-series machinery for `(1-x)^p F(a,b;c;x)` and its exponential
//! and logarithmic relatives, where `F` is the Gauss hypergeometric function.
//!
//! The crate computes Maclaurin coefficients over exact rationals, evaluates the
//! parameter thresholds that govern absolute monotonicity, scans coefficient
//! signs to a chosen order, and checks the associated inequalities numerically.

pub mod am;
pub mod deep;
pub mod error;
pub mod exact;
pub mod numeric;
pub mod series;
pub mod thresholds;

pub use am::{
    am_scan, concordance, fp_second_verdict, gp_prime_verdict, jurkat_check, lnfp_k_verdict,
    minus_fp_prime_verdict, ratio_monotonicity, test_function_coeffs, theorem_prediction, verdict_for,
    w_ratio_increasing, AMVerdict, AmStatus, Concordance, ConcordanceReport, ConditionKind, Escalation,
    JurkatReport, Monotonicity, PredictedVerdict, TheoremId, TheoremPrediction,
};
pub use error::{Error, Result};
pub use exact::{make_params, pochhammer, ExactScalar, ParameterTriple};
pub use series::{
    binom_pow_coeffs, cauchy_product, fp_coeffs, gp_reduced_coeffs, hyp_coeffs, lnfp_coeffs, series_derivative,
    series_exp_reduced, series_log, Sign, TruncatedSeries,
};
pub use numeric::{
    asymptotic_residual, bounds_exp, bounds_log, bounds_ratio, bounds_rational, digamma, eval_F, ramanujan_R,
    value_at_one, BoundsReport, EvalResult, HypParams, RatioRegion,
};
pub use thresholds::{
    classify_vs_roots, kCk, nCn_limit, region, root_enclosures, tau, Balance, RationalInterval, RegionReport,
    RootPosition,
};
