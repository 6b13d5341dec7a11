//! Log-gamma, digamma and the constants built from them.

use crate::error::{Error, Result};

/// Euler's constant to 30 digits.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::DomainError(format!("{name} needs a positive finite argument, got {x}")))
    }
}

/// `ln Gamma(x)` for `x > 0`: shift to `x >= 15`, then the Stirling series.
pub fn ln_gamma(x: f64) -> Result<f64> {
    positive("ln_gamma", x)?;
    let mut x = x;
    let mut shift = 0.0;
    while x < 15.0 {
        shift += x.ln();
        x += 1.0;
    }
    let z = 1.0 / x;
    let z2 = z * z;
    let series = z
        * (1.0 / 12.0
            + z2 * (-1.0 / 360.0
                + z2 * (1.0 / 1260.0 + z2 * (-1.0 / 1680.0 + z2 * (1.0 / 1188.0 + z2 * (-691.0 / 360360.0))))));
    Ok((x - 0.5) * x.ln() - x + LN_SQRT_2PI + series - shift)
}

/// `psi(x) = Gamma'(x)/Gamma(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    positive("digamma", x)?;
    let mut x = x;
    let mut shift = 0.0;
    while x < 10.0 {
        shift += 1.0 / x;
        x += 1.0;
    }
    let z2 = 1.0 / (x * x);
    let series = z2
        * (1.0 / 12.0
            + z2 * (-1.0 / 120.0
                + z2 * (1.0 / 252.0
                    + z2 * (-1.0 / 240.0 + z2 * (1.0 / 132.0 + z2 * (-691.0 / 32760.0 + z2 / 12.0))))));
    Ok(x.ln() - 0.5 / x - series - shift)
}

/// Ramanujan's constant `R(a,b) = -2 gamma - psi(a) - psi(b)`.
#[allow(non_snake_case)]
pub fn ramanujan_R(a: f64, b: f64) -> Result<f64> {
    Ok(-2.0 * EULER_GAMMA - digamma(a)? - digamma(b)?)
}

/// `B(a,b) = Gamma(a) Gamma(b) / Gamma(a+b)`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?).exp())
}
