//! Floating-point evaluation of `F(a,b;c;x)`, its boundary constants, and
//! numeric checks of the approximation inequalities.

pub mod bounds;
pub mod hyp;
pub mod special;

pub use bounds::{
    bounds_exp, bounds_log, bounds_ratio, bounds_rational, q_sn, ratio_exponent_coefficient, BoundForm, BoundsReport,
    RatioRegion,
};
pub use hyp::{asymptotic_residual, eval_F, eval_F_direct, eval_F_symmetric, value_at_one, EvalResult, HypParams};
pub use special::{beta, digamma, ln_gamma, ramanujan_R, EULER_GAMMA};
