//! `start:step:count` ranges and comma-separated value lists.

use hypam::ExactScalar;

use crate::error::{CliError, CliResult};

fn split_range(s: &str) -> Option<(&str, &str, &str)> {
    let mut it = s.split(':');
    let parts = (it.next()?, it.next()?, it.next()?);
    it.next().is_none().then_some(parts)
}

fn parse_count(s: &str, whole: &str) -> CliResult<usize> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad count in range {whole:?}")))
}

fn parse_rational(s: &str) -> CliResult<ExactScalar> {
    s.trim().parse().map_err(|e: hypam::Error| CliError::Usage(e.to_string()))
}

/// Exact values from a single literal or `start:step:count`, where value `i` is `start + i*step`.
pub fn rational_values(s: &str) -> CliResult<Vec<ExactScalar>> {
    match split_range(s) {
        Some((start, step, count)) => {
            let (start, step) = (parse_rational(start)?, parse_rational(step)?);
            let count = parse_count(count, s)?;
            Ok((0..count).map(|i| &start + &step.mul_int(i as i64)).collect())
        }
        None => Ok(vec![parse_rational(s)?]),
    }
}

/// Comma-separated list of literals or ranges.
pub fn rational_list(s: &str) -> CliResult<Vec<ExactScalar>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        out.extend(rational_values(item)?);
    }
    Ok(out)
}

/// Float grid from a literal or `start:step:count`.
pub fn float_values(s: &str) -> CliResult<Vec<f64>> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("bad number {t:?} in {s:?}")))
    };
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match split_range(item) {
            Some((start, step, count)) => {
                let (start, step) = (num(start)?, num(step)?);
                let count = parse_count(count, item)?;
                out.extend((0..count).map(|i| start + i as f64 * step));
            }
            None => out.push(num(item)?),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_decimal_steps() {
        let v = rational_values("0.20:0.01:15").unwrap();
        assert_eq!(v.len(), 15);
        assert_eq!(v[4].to_string(), "6/25");
        assert_eq!(v[5].to_string(), "1/4");
        assert_eq!(v[14].to_string(), "17/50");
    }

    #[test]
    fn lists_and_empty_ranges() {
        assert_eq!(rational_list("1/2, 1:1/4:3").unwrap().len(), 4);
        assert!(rational_values("1:1:0").unwrap().is_empty());
        assert!(rational_values("1:1").is_err());
        assert!(rational_values("1:1:x").is_err());
    }

    #[test]
    fn float_grid() {
        let v = float_values("0.1:0.1:9").unwrap();
        assert_eq!(v.len(), 9);
        assert!((v[8] - 0.9).abs() < 1e-15);
        assert_eq!(float_values("0.5").unwrap(), vec![0.5]);
    }
}
