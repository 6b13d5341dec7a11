//! Sweep files: flat `key = value` lines describing a parameter grid.
//!
//! ```text
//! # K case, p across the lower threshold
//! a = 1/2
//! b = 1/2
//! c = 1
//! p = 0.20:0.01:15
//! checks = T1i, region
//! order = 200
//! point = 1, 1, 3, 101/100, T1i
//! ```
//!
//! `a`, `b`, `c` and `p` take literals, `start:step:count` ranges, or
//! comma-separated mixtures. The grid is the product in `a, b, c, p, check`
//! order. Each `point` line adds one explicit point after the grid, with an
//! optional check overriding `checks`.

use hypam::{ExactScalar, RatioRegion};
use rayon::prelude::*;

use crate::checks::{run_point, Check, CheckSettings};
use crate::error::{CliError, CliResult};
use crate::grid::{float_values, rational_list};
use crate::report::{PointResult, RunReport};

#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitPoint {
    pub a: ExactScalar,
    pub b: ExactScalar,
    pub c: ExactScalar,
    pub p: Option<ExactScalar>,
    pub check: Option<Check>,
}

#[derive(Clone, Debug, Default)]
pub struct SweepSpec {
    pub a: Vec<ExactScalar>,
    pub b: Vec<ExactScalar>,
    pub c: Vec<ExactScalar>,
    pub p: Vec<ExactScalar>,
    pub checks: Vec<Check>,
    pub points: Vec<ExplicitPoint>,
    pub order: Option<usize>,
    pub cap: Option<usize>,
    pub n: Option<usize>,
    pub q: Option<ExactScalar>,
    pub x: Option<Vec<f64>>,
    /// Normalized `key = value` lines, echoed into the report.
    pub echo: Vec<String>,
}

fn usage(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("sweep line {line}: {msg}"))
}

fn parse_point(value: &str, line: usize) -> CliResult<ExplicitPoint> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if !(3..=5).contains(&parts.len()) {
        return Err(usage(line, "point needs a, b, c[, p[, check]]"));
    }
    let num = |s: &str| s.parse::<ExactScalar>().map_err(|e| usage(line, e));
    let p = match parts.get(3) {
        Some(s) if !s.is_empty() => Some(num(s)?),
        _ => None,
    };
    let check = match parts.get(4) {
        Some(s) => Some(s.parse::<Check>().map_err(|e| usage(line, e))?),
        None => None,
    };
    Ok(ExplicitPoint {
        a: num(parts[0])?,
        b: num(parts[1])?,
        c: num(parts[2])?,
        p,
        check,
    })
}

impl SweepSpec {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut spec = SweepSpec::default();
        let mut seen = std::collections::BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or_else(|| usage(line, "expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            if key != "point" && !seen.insert(key.to_string()) {
                return Err(usage(line, format!("duplicate key {key:?}")));
            }
            let int = |v: &str| v.parse::<usize>().map_err(|_| usage(line, format!("{key} must be an integer")));
            let list = |v: &str| rational_list(v).map_err(|e| usage(line, e));
            match key {
                "a" => spec.a = list(value)?,
                "b" => spec.b = list(value)?,
                "c" => spec.c = list(value)?,
                "p" => spec.p = list(value)?,
                "checks" => {
                    spec.checks = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse::<Check>().map_err(|e| usage(line, e)))
                        .collect::<CliResult<_>>()?
                }
                "point" => spec.points.push(parse_point(value, line)?),
                "order" => spec.order = Some(int(value)?),
                "cap" => spec.cap = Some(int(value)?),
                "n" => spec.n = Some(int(value)?),
                "q" => spec.q = Some(value.parse().map_err(|e| usage(line, e))?),
                "x" | "r" => spec.x = Some(float_values(value).map_err(|e| usage(line, e))?),
                _ => return Err(usage(line, format!("unknown key {key:?}"))),
            }
            spec.echo.push(format!("{key} = {value}"));
        }
        let keys = ["a", "b", "c"].iter().filter(|k| seen.contains(**k)).count();
        if keys != 0 && keys != 3 {
            return Err(CliError::Usage("sweep grid needs all of a, b and c".into()));
        }
        if keys == 3 && spec.checks.is_empty() {
            return Err(CliError::Usage("sweep grid needs a checks line".into()));
        }
        if spec.points.iter().any(|pt| pt.check.is_none()) && spec.checks.is_empty() {
            return Err(CliError::Usage("point without a check needs a checks line".into()));
        }
        Ok(spec)
    }

    /// Grid points and explicit points in output order.
    pub fn expand(&self) -> Vec<(Check, ExactScalar, ExactScalar, ExactScalar, Option<ExactScalar>)> {
        let mut out = Vec::new();
        let ps: Vec<Option<&ExactScalar>> = if self.p.is_empty() { vec![None] } else { self.p.iter().map(Some).collect() };
        for a in &self.a {
            for b in &self.b {
                for c in &self.c {
                    for p in &ps {
                        for check in &self.checks {
                            out.push((*check, a.clone(), b.clone(), c.clone(), p.cloned()));
                        }
                    }
                }
            }
        }
        for pt in &self.points {
            let checks = match pt.check {
                Some(c) => vec![c],
                None => self.checks.clone(),
            };
            for check in checks {
                out.push((check, pt.a.clone(), pt.b.clone(), pt.c.clone(), pt.p.clone()));
            }
        }
        out
    }
}

/// Runs every point on a pool of `workers` threads; results keep grid order.
pub fn run_sweep(spec: &SweepSpec, order: usize, cap: usize, workers: usize) -> CliResult<RunReport> {
    let settings = CheckSettings {
        order: spec.order.unwrap_or(order),
        cap: spec.cap.unwrap_or(cap),
        n: spec.n.unwrap_or(1),
        q: spec.q.clone(),
        x: spec.x.clone().unwrap_or_else(|| vec![0.5]),
        region: RatioRegion::Auto,
    };
    let jobs = spec.expand();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("worker pool: {e}")))?;
    let points: Vec<PointResult> = pool.install(|| {
        jobs.par_iter()
            .enumerate()
            .map(|(i, (check, a, b, c, p))| run_point(i, *check, (a, b, c), p.as_ref(), &settings))
            .collect()
    });
    Ok(RunReport::new("sweep", spec.echo.clone(), points))
}
