use std::path::Path;

use hypam::{
    fp_coeffs, gp_reduced_coeffs, hyp_coeffs, lnfp_coeffs, make_params, region, root_enclosures, ExactScalar,
    ParameterTriple, TheoremId, TruncatedSeries,
};
use serde_json::{json, Value};

use crate::args::{Family, Triple};
use crate::checks::{bound_at, run_point, BoundFamily, Check, CheckSettings, RegionChoice};
use crate::error::{exit, CliError, CliResult};
use crate::grid::float_values;
use crate::report::{fmt_float, Table, TOOL, VERSION};
use crate::sweep::{run_sweep, SweepSpec};

/// What a command produced: the same content as a table and as JSON.
pub struct Output {
    pub exit: i32,
    pub table: Table,
    pub json: Value,
}

fn params_of(t: &Triple) -> CliResult<ParameterTriple> {
    Ok(make_params(t.a.clone(), t.b.clone(), t.c.clone())?)
}

fn need_p(p: Option<&ExactScalar>, family: Family) -> CliResult<&ExactScalar> {
    p.ok_or_else(|| CliError::Usage(format!("family {} needs --p", family.as_str())))
}

pub fn cmd_coeffs(family: Family, triple: &Triple, p: Option<&ExactScalar>, order: usize) -> CliResult<Output> {
    let params = params_of(triple)?;
    let series: TruncatedSeries = match family {
        Family::F => hyp_coeffs(&params, order),
        Family::Fp => fp_coeffs(&params, need_p(p, family)?, order),
        Family::Gp => gp_reduced_coeffs(&params, need_p(p, family)?, order),
        Family::LnFp => lnfp_coeffs(&params, need_p(p, family)?, order),
    };
    let e_power = series.prefactor_e_power();
    let scale = (e_power as f64).exp();
    let mut table = Table::new("coeffs", &["n", "coefficient", "approx"]);
    let mut rows = Vec::new();
    for (n, c) in series.coeffs().iter().enumerate() {
        let approx = c.to_f64() * scale;
        table.rows.push(vec![n.to_string(), c.to_string(), fmt_float(approx)]);
        rows.push(json!({ "n": n, "coefficient": c.to_string(), "approx": approx }));
    }
    let prefactor = format!("e^{e_power}");
    table.notes.push(format!("family={} params={params} p={}", family.as_str(), p.map(|v| v.to_string()).unwrap_or_default()));
    if e_power != 0 {
        table
            .notes
            .push(format!("prefactor={prefactor}; coefficient omits it, approx includes it"));
    }
    let json = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": "coeffs",
        "family": family.as_str(),
        "a": triple.a.to_string(),
        "b": triple.b.to_string(),
        "c": triple.c.to_string(),
        "p": p.map(|v| v.to_string()),
        "order": order,
        "prefactor": prefactor,
        "coefficients": rows,
    });
    Ok(Output { exit: exit::OK, table, json })
}

pub fn cmd_classify(triple: &Triple, p: Option<&ExactScalar>) -> CliResult<Output> {
    let params = params_of(triple)?;
    let reg = region(&params);
    let mut kv: Vec<(String, String)> = vec![
        ("a".into(), triple.a.to_string()),
        ("b".into(), triple.b.to_string()),
        ("c".into(), triple.c.to_string()),
        ("in_r1".into(), reg.in_r1.to_string()),
        ("in_r2".into(), reg.in_r2.to_string()),
        ("c_vs_ab_sum".into(), reg.c_vs_ab_sum.as_str().into()),
        ("zero_balanced".into(), reg.zero_balanced.to_string()),
        ("c_ge_abc_combined".into(), reg.c_ge_abc_combined.to_string()),
        ("max_ab_lt_c".into(), reg.max_ab_lt_c.to_string()),
        ("ab_over_c".into(), params.ab_over_c().to_string()),
        ("upper_shift".into(), hypam::thresholds::upper_shift(&params).to_string()),
    ];
    for (k, v) in hypam::thresholds::n_cn_sequence(&params, 5).iter().enumerate() {
        kv.push((format!("kck_{}", k + 1), v.to_string()));
    }
    kv.push(("ncn_limit".into(), hypam::nCn_limit(&params).to_string()));
    match root_enclosures(&params, &ExactScalar::ratio(1, 1_000_000)) {
        Ok((low, high)) => {
            kv.push(("pstar_low".into(), format!("[{}, {}]", low.lo, low.hi)));
            kv.push(("pstar_low_approx".into(), fmt_float(low.midpoint().to_f64())));
            kv.push(("pstar_high".into(), format!("[{}, {}]", high.lo, high.hi)));
            kv.push(("pstar_high_approx".into(), fmt_float(high.midpoint().to_f64())));
        }
        Err(e) => kv.push(("roots".into(), e.to_string())),
    }
    if let Some(p) = p {
        kv.push(("p".into(), p.to_string()));
        let pos = match hypam::classify_vs_roots(&params, p) {
            Ok(pos) => pos.as_str().to_string(),
            Err(e) => e.to_string(),
        };
        kv.push(("root_position".into(), pos));
    }
    let mut table = Table::new("classify", &["key", "value"]);
    table.rows = kv.iter().map(|(k, v)| vec![k.clone(), v.clone()]).collect();
    let mut obj = serde_json::Map::new();
    obj.insert("tool".into(), json!(TOOL));
    obj.insert("version".into(), json!(VERSION));
    obj.insert("command".into(), json!("classify"));
    for (k, v) in kv {
        obj.insert(k, json!(v));
    }
    Ok(Output {
        exit: exit::OK,
        table,
        json: Value::Object(obj),
    })
}

pub fn cmd_verify(id: TheoremId, triple: &Triple, p: &ExactScalar, order: usize, cap: usize) -> CliResult<Output> {
    params_of(triple)?;
    let settings = CheckSettings {
        order,
        cap,
        n: 0,
        q: None,
        x: Vec::new(),
        region: hypam::RatioRegion::Auto,
    };
    let point = run_point(0, Check::Theorem(id), (&triple.a, &triple.b, &triple.c), Some(p), &settings);
    let code = match point.outcome.as_str() {
        "discordant" => exit::FAILED,
        "out_of_scope" => exit::OUTSIDE_SCOPE,
        _ => exit::OK,
    };
    let input = vec![
        format!("theorem = {id}"),
        format!("a = {}", triple.a),
        format!("b = {}", triple.b),
        format!("c = {}", triple.c),
        format!("p = {p}"),
        format!("order = {order}"),
        format!("cap = {cap}"),
    ];
    let report = crate::report::RunReport::new("verify", input, vec![point]);
    Ok(Output {
        exit: code,
        table: report.table(),
        json: serde_json::to_value(&report)?,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_bounds(
    family: BoundFamily,
    triple: &Triple,
    p: &ExactScalar,
    q: Option<&ExactScalar>,
    n: usize,
    x: Option<&str>,
    r: Option<&str>,
    choice: RegionChoice,
) -> CliResult<Output> {
    let params = params_of(triple)?;
    let (label, grid) = match (family, x, r) {
        (BoundFamily::Ratio, _, Some(r)) => ("r", r),
        (BoundFamily::Ratio, Some(x), None) => ("r", x),
        (_, Some(x), _) => ("x", x),
        (BoundFamily::Ratio, None, None) => return Err(CliError::Usage("ratio bounds need --r".into())),
        _ => return Err(CliError::Usage("bounds need --x".into())),
    };
    let points = float_values(grid)?;
    let columns = [
        label,
        "form",
        "lower",
        "middle",
        "upper",
        "slack_lower",
        "slack_upper",
        "budget",
        "ordering_holds",
    ];
    let mut table = Table::new("bounds", &columns);
    let mut rows = Vec::new();
    let mut failures = 0;
    for &x in &points {
        let rep = bound_at(family, &params, p, q, n, x, choice.into())?;
        if !rep.ordering_holds {
            failures += 1;
        }
        table.rows.push(vec![
            fmt_float(x),
            rep.form.as_str().into(),
            fmt_float(rep.lower),
            fmt_float(rep.middle),
            fmt_float(rep.upper),
            fmt_float(rep.slack_lower),
            fmt_float(rep.slack_upper),
            fmt_float(rep.budget),
            rep.ordering_holds.to_string(),
        ]);
        rows.push(json!({
            label: x,
            "form": rep.form.as_str(),
            "lower": fmt_float(rep.lower),
            "middle": fmt_float(rep.middle),
            "upper": fmt_float(rep.upper),
            "slack_lower": fmt_float(rep.slack_lower),
            "slack_upper": fmt_float(rep.slack_upper),
            "budget": fmt_float(rep.budget),
            "ordering_holds": rep.ordering_holds,
        }));
    }
    table.notes.push(format!(
        "family={} params={params} p={p} q={} n={n} points={} failures={failures}",
        family.as_str(),
        q.map(|v| v.to_string()).unwrap_or_default(),
        points.len()
    ));
    let json = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": "bounds",
        "family": family.as_str(),
        "a": triple.a.to_string(),
        "b": triple.b.to_string(),
        "c": triple.c.to_string(),
        "p": p.to_string(),
        "q": q.map(|v| v.to_string()),
        "n": n,
        "rows": rows,
        "summary": { "points": points.len(), "failures": failures },
    });
    Ok(Output {
        exit: if failures > 0 { exit::FAILED } else { exit::OK },
        table,
        json,
    })
}

pub fn cmd_sweep(path: &Path, order: usize, cap: usize, workers: usize) -> CliResult<Output> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let spec = SweepSpec::parse(&text)?;
    let report = run_sweep(&spec, order, cap, workers)?;
    let code = if report.count("discordant") > 0 { exit::FAILED } else { exit::OK };
    Ok(Output {
        exit: code,
        table: report.table(),
        json: serde_json::to_value(&report)?,
    })
}
