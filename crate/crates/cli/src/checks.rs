//! Single checks at a single parameter point, shared by `verify`, `bounds` and `sweep`.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use hypam::{
    bounds_exp, bounds_log, bounds_ratio, bounds_rational, concordance, make_params, region, BoundsReport, Escalation,
    ExactScalar, ParameterTriple, RatioRegion, TheoremId,
};

use crate::error::{CliError, CliResult};
use crate::report::{fmt_float, PointResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundFamily {
    Rational,
    Log,
    Exp,
    Ratio,
}

impl BoundFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundFamily::Rational => "rational",
            BoundFamily::Log => "log",
            BoundFamily::Exp => "exp",
            BoundFamily::Ratio => "ratio",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegionChoice {
    Auto,
    One,
    Two,
}

impl From<RegionChoice> for RatioRegion {
    fn from(r: RegionChoice) -> Self {
        match r {
            RegionChoice::Auto => RatioRegion::Auto,
            RegionChoice::One => RatioRegion::One,
            RegionChoice::Two => RatioRegion::Two,
        }
    }
}

/// A check identifier: a theorem id, `region`, or a bound family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Theorem(TheoremId),
    Region,
    Bound(BoundFamily),
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Theorem(id) => write!(f, "{id}"),
            Check::Region => f.write_str("region"),
            Check::Bound(b) => f.write_str(b.as_str()),
        }
    }
}

impl FromStr for Check {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let s = s.trim();
        if s == "region" {
            return Ok(Check::Region);
        }
        if let Ok(b) = BoundFamily::from_str(s, false) {
            return Ok(Check::Bound(b));
        }
        s.parse::<TheoremId>()
            .map(Check::Theorem)
            .map_err(|_| CliError::Usage(format!("unknown check {s:?}")))
    }
}

/// Settings shared by every point of a run.
#[derive(Clone, Debug)]
pub struct CheckSettings {
    pub order: usize,
    pub cap: usize,
    pub n: usize,
    pub q: Option<ExactScalar>,
    /// `x` values for the bound families (`r` for `ratio`).
    pub x: Vec<f64>,
    pub region: RatioRegion,
}

/// One bound evaluation.
pub fn bound_at(
    family: BoundFamily,
    params: &ParameterTriple,
    p: &ExactScalar,
    q: Option<&ExactScalar>,
    n: usize,
    x: f64,
    region: RatioRegion,
) -> CliResult<BoundsReport> {
    let need_q = || q.ok_or_else(|| CliError::Usage(format!("{} bounds need q", family.as_str())));
    Ok(match family {
        BoundFamily::Rational => bounds_rational(params, p, n, x)?,
        BoundFamily::Log => bounds_log(params, p, n, x)?,
        BoundFamily::Exp => bounds_exp(params, p, need_q()?, n, x)?,
        BoundFamily::Ratio => bounds_ratio(params, p.to_f64(), need_q()?.to_f64(), x, region)?,
    })
}

fn skeleton(index: usize, check: Check, a: &ExactScalar, b: &ExactScalar, c: &ExactScalar, p: Option<&ExactScalar>) -> PointResult {
    PointResult {
        index,
        check: check.to_string(),
        a: a.to_string(),
        b: b.to_string(),
        c: c.to_string(),
        p: p.map(|v| v.to_string()),
        outcome: String::new(),
        prediction: None,
        status: None,
        first_violation: None,
        checked_order: None,
        undecided: None,
        detail: String::new(),
    }
}

/// Runs one check; failures are recorded in the result rather than returned.
pub fn run_point(
    index: usize,
    check: Check,
    abc: (&ExactScalar, &ExactScalar, &ExactScalar),
    p: Option<&ExactScalar>,
    settings: &CheckSettings,
) -> PointResult {
    let (a, b, c) = abc;
    let mut out = skeleton(index, check, a, b, c, p);
    let params = match make_params(a.clone(), b.clone(), c.clone()) {
        Ok(t) => t,
        Err(e) => {
            out.outcome = "skipped".into();
            out.detail = e.to_string();
            return out;
        }
    };
    let need_p = |out: &mut PointResult| {
        out.outcome = "error".into();
        out.detail = "this check needs p".into();
    };
    match check {
        Check::Region => {
            let r = region(&params);
            out.outcome = "ok".into();
            out.detail = format!(
                "in_r1={};in_r2={};c_vs_ab_sum={};zero_balanced={};c_ge_abc_combined={};max_ab_lt_c={}",
                r.in_r1,
                r.in_r2,
                r.c_vs_ab_sum.as_str(),
                r.zero_balanced,
                r.c_ge_abc_combined,
                r.max_ab_lt_c
            );
        }
        Check::Theorem(id) => {
            let Some(p) = p else {
                need_p(&mut out);
                return out;
            };
            let policy = Escalation {
                base: settings.order,
                cap: settings.cap.max(settings.order),
            };
            let rep = concordance(&params, p, id, policy);
            out.outcome = rep.outcome.as_str().into();
            out.prediction = Some(rep.prediction.verdict.as_str().into());
            out.status = Some(rep.verdict.status.as_str().into());
            out.first_violation = rep.verdict.first_violation;
            out.checked_order = Some(rep.verdict.checked_order);
            out.undecided = Some(rep.undecided);
            out.detail = format!("condition={}", rep.prediction.condition_kind.as_str());
        }
        Check::Bound(family) => {
            let Some(p) = p else {
                need_p(&mut out);
                return out;
            };
            let mut min_slack = f64::INFINITY;
            let mut failed = Vec::new();
            for &x in &settings.x {
                match bound_at(family, &params, p, settings.q.as_ref(), settings.n, x, settings.region) {
                    Ok(r) => {
                        min_slack = min_slack.min(r.slack_lower.min(r.slack_upper));
                        if !r.ordering_holds {
                            failed.push(fmt_float(x));
                        }
                    }
                    Err(e) => {
                        out.outcome = match e {
                            CliError::Core(hypam::Error::RegimeViolation(_)) => "regime_violation",
                            _ => "error",
                        }
                        .into();
                        out.detail = e.to_string();
                        return out;
                    }
                }
            }
            out.outcome = if failed.is_empty() { "holds" } else { "fails" }.into();
            out.detail = if failed.is_empty() {
                format!("points={};min_slack={}", settings.x.len(), fmt_float(min_slack))
            } else {
                format!("points={};fails_at={}", settings.x.len(), failed.join(";"))
            };
        }
    }
    out
}
