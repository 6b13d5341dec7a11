//! Truncated formal power series over [`ExactScalar`].
//!
//! A [`TruncatedSeries`] holds `c_0..c_N` and an integer power of `e` that
//! multiplies the whole series. The `e` tag lets `exp(F) = e * exp(F - 1)` stay
//! rational; sign questions are answered on the rational part since `e > 0`.

use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, ParameterTriple};

/// A direction: `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s.trim() {
            "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

/// `e^{e_power} * sum coeffs[n] x^n`, truncated after `x^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactScalar>,
    prefactor_e_power: i32,
}

impl TruncatedSeries {
    /// Rational series. Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<ExactScalar>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        Self {
            coeffs,
            prefactor_e_power: 0,
        }
    }

    pub fn with_e_power(mut self, e_power: i32) -> Self {
        self.prefactor_e_power = e_power;
        self
    }

    /// Convenience constructor from string literals, mainly for tests and the CLI.
    pub fn parse(literals: &[&str]) -> Result<Self> {
        let coeffs = literals.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty series".into()));
        }
        Ok(Self::new(coeffs))
    }

    pub fn zeros(order: usize) -> Self {
        Self::new(vec![ExactScalar::zero(); order + 1])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactScalar> {
        self.coeffs
    }

    pub fn prefactor_e_power(&self) -> i32 {
        self.prefactor_e_power
    }

    pub fn get(&self, n: usize) -> &ExactScalar {
        &self.coeffs[n]
    }

    /// Keeps coefficients `0..=order`.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
            prefactor_e_power: self.prefactor_e_power,
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prefactor_e_power: self.prefactor_e_power,
        }
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            prefactor_e_power: self.prefactor_e_power,
        }
    }

    /// Termwise sum; both operands must share order and `e` power.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x - y)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        if self.prefactor_e_power != other.prefactor_e_power {
            return Err(Error::TranscendentalPrefactor(other.prefactor_e_power - self.prefactor_e_power));
        }
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| f(x, y)).collect(),
            prefactor_e_power: self.prefactor_e_power,
        })
    }

    /// Multiplies by `x` (shifting coefficients up) and truncates at the same order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(ExactScalar::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        Self {
            coeffs,
            prefactor_e_power: self.prefactor_e_power,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(ExactScalar::to_f64).collect()
    }
}

/// Maclaurin coefficients `A_n = (a)_n (b)_n / ((c)_n n!)` of F(a,b;c;x).
pub fn hyp_coeffs(params: &ParameterTriple, order: usize) -> TruncatedSeries {
    let (a, b, c) = (params.a().as_rational(), params.b().as_rational(), params.c().as_rational());
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::from(1);
    coeffs.push(ExactScalar::one());
    for n in 0..order as u64 {
        let num = Rational::from(a + n) * Rational::from(b + n);
        let den = Rational::from(c + n) * (n + 1);
        term *= num;
        term /= den;
        coeffs.push(ExactScalar::from_rational(term.clone()));
    }
    TruncatedSeries::new(coeffs)
}

/// Coefficients of `(1-x)^{-p}` for `Sign::Minus` and of `(1-x)^{p}` for `Sign::Plus`.
pub fn binom_pow_coeffs(p: &ExactScalar, sign: Sign, order: usize) -> TruncatedSeries {
    let q = match sign {
        Sign::Minus => p.as_rational().clone(),
        Sign::Plus => Rational::from(-p.as_rational()),
    };
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::from(1);
    coeffs.push(ExactScalar::one());
    for n in 0..order as u64 {
        term *= Rational::from(&q + n);
        term /= n + 1;
        coeffs.push(ExactScalar::from_rational(term.clone()));
    }
    TruncatedSeries::new(coeffs)
}

/// Product of two series of equal order. The `e` powers add.
pub fn cauchy_product(u: &TruncatedSeries, v: &TruncatedSeries) -> Result<TruncatedSeries> {
    if u.order() != v.order() {
        return Err(Error::OrderMismatch {
            left: u.order(),
            right: v.order(),
        });
    }
    let order = u.order();
    let (us, vs) = (u.coeffs(), v.coeffs());
    let coeffs = (0..=order)
        .map(|n| {
            let mut acc = Rational::new();
            for k in 0..=n {
                if us[k].is_zero() || vs[n - k].is_zero() {
                    continue;
                }
                acc += Rational::from(us[k].as_rational() * vs[n - k].as_rational());
            }
            ExactScalar::from_rational(acc)
        })
        .collect();
    Ok(TruncatedSeries {
        coeffs,
        prefactor_e_power: u.prefactor_e_power + v.prefactor_e_power,
    })
}

/// `exp(f)` for a rational series with `f[0] = 0`.
///
/// Uses `n g_n = sum_{k=1}^n k f_k g_{n-k}`, `g_0 = 1`. The result carries no
/// `e` factor: a caller exponentiating `F` passes `F - 1` and tags the result
/// with `e^1` itself.
pub fn series_exp_reduced(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.prefactor_e_power != 0 {
        return Err(Error::TranscendentalPrefactor(f.prefactor_e_power));
    }
    if !f.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstantTerm(f.coeffs[0].clone()));
    }
    let order = f.order();
    let kf: Vec<Rational> = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| Rational::from(c.as_rational() * k as u64))
        .collect();
    let mut g: Vec<Rational> = Vec::with_capacity(order + 1);
    g.push(Rational::from(1));
    for n in 1..=order {
        let mut acc = Rational::new();
        for k in 1..=n {
            if kf[k].cmp0().is_eq() {
                continue;
            }
            acc += Rational::from(&kf[k] * &g[n - k]);
        }
        acc /= n as u64;
        g.push(acc);
    }
    Ok(TruncatedSeries::new(g.into_iter().map(ExactScalar::from_rational).collect()))
}

/// `ln f` for a rational series with `f[0] = 1`; the result has `C_0 = 0`.
pub fn series_log(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.prefactor_e_power != 0 {
        return Err(Error::TranscendentalPrefactor(f.prefactor_e_power));
    }
    if f.coeffs[0] != ExactScalar::one() {
        return Err(Error::ConstantTermNotOne(f.coeffs[0].clone()));
    }
    let order = f.order();
    let fs: Vec<&Rational> = f.coeffs.iter().map(ExactScalar::as_rational).collect();
    // kc[k] = k C_k
    let mut kc: Vec<Rational> = Vec::with_capacity(order + 1);
    kc.push(Rational::new());
    for n in 1..=order {
        let mut acc = Rational::from(fs[n] * n as u64);
        for k in 1..n {
            if fs[n - k].cmp0().is_eq() {
                continue;
            }
            acc -= Rational::from(&kc[k] * fs[n - k]);
        }
        kc.push(acc);
    }
    let coeffs = kc
        .into_iter()
        .enumerate()
        .map(|(n, v)| if n == 0 { ExactScalar::zero() } else { ExactScalar::from_rational(v / n as u64) })
        .collect();
    Ok(TruncatedSeries::new(coeffs))
}

/// Termwise derivative; the order drops by one.
pub fn series_derivative(u: &TruncatedSeries) -> Result<TruncatedSeries> {
    if u.order() < 1 {
        return Err(Error::OrderTooSmall {
            required: 1,
            actual: u.order(),
        });
    }
    let coeffs = (0..u.order()).map(|n| u.coeffs[n + 1].mul_int(n as i64 + 1)).collect();
    Ok(TruncatedSeries {
        coeffs,
        prefactor_e_power: u.prefactor_e_power,
    })
}

/// `1/f` for `f[0] = 1`, computed as `exp(-ln f)`.
pub fn series_reciprocal(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let log = series_log(f)?;
    series_exp_reduced(&log.negate())
}

/// Coefficients `u_n(p)` of `(1-x)^p F(a,b;c;x)`.
pub fn fp_coeffs(params: &ParameterTriple, p: &ExactScalar, order: usize) -> TruncatedSeries {
    cauchy_product(&hyp_coeffs(params, order), &binom_pow_coeffs(p, Sign::Plus, order))
        .expect("orders agree by construction")
}

/// `(1-x)^p exp(F) / e` as a rational series tagged with `e^1`.
pub fn gp_reduced_coeffs(params: &ParameterTriple, p: &ExactScalar, order: usize) -> TruncatedSeries {
    let mut f = hyp_coeffs(params, order).into_coeffs();
    f[0] = ExactScalar::zero();
    let exp = series_exp_reduced(&TruncatedSeries::new(f)).expect("constant term removed");
    cauchy_product(&exp, &binom_pow_coeffs(p, Sign::Plus, order))
        .expect("orders agree by construction")
        .with_e_power(1)
}

/// Coefficients `C_n` of `ln F(a,b;c;x)`.
pub fn log_hyp_coeffs(params: &ParameterTriple, order: usize) -> TruncatedSeries {
    series_log(&hyp_coeffs(params, order)).expect("A_0 = 1")
}

/// Coefficients `w_n(p) = C_n - p/n` of `ln[(1-x)^p F]`, with `w_0 = 0`.
pub fn lnfp_coeffs(params: &ParameterTriple, p: &ExactScalar, order: usize) -> TruncatedSeries {
    lnfp_from_log(&log_hyp_coeffs(params, order), p)
}

/// Same as [`lnfp_coeffs`] but reusing precomputed `C_n`.
pub fn lnfp_from_log(log_f: &TruncatedSeries, p: &ExactScalar) -> TruncatedSeries {
    let coeffs = log_f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| if n == 0 { ExactScalar::zero() } else { c - &p.div_int(n as i64) })
        .collect();
    TruncatedSeries::new(coeffs)
}

/// Coefficients of `(1-x) F(a+1,b+1;c+1;x)`.
pub fn shifted_kernel(params: &ParameterTriple, order: usize) -> TruncatedSeries {
    cauchy_product(
        &hyp_coeffs(&params.shifted(1), order),
        &binom_pow_coeffs(&ExactScalar::one(), Sign::Plus, order),
    )
    .expect("orders agree by construction")
}

/// The combination
/// `p(1-p) F + (2abp/c)(1-x) F(a+1,b+1;c+1) - ab(a+1)(b+1)/(c(c+1)) (1-x)^2 F(a+2,b+2;c+2)`,
/// whose sign pattern controls the second derivative of `(1-x)^p F`.
pub fn second_derivative_kernel(params: &ParameterTriple, p: &ExactScalar, order: usize) -> TruncatedSeries {
    let (a, b, c) = (params.a(), params.b(), params.c());
    let ab = a * b;
    let two = ExactScalar::from_integer(2);
    let k0 = p * &(ExactScalar::one() - p);
    let k1 = &(&(&two * &ab) * p) / c;
    let k2 = &(&(&ab * &a.add_int(1)) * &b.add_int(1)) / &(c * &c.add_int(1));
    let f0 = hyp_coeffs(params, order).scale(&k0);
    let f1 = shifted_kernel(params, order).scale(&k1);
    let f2 = cauchy_product(
        &hyp_coeffs(&params.shifted(2), order),
        &binom_pow_coeffs(&two, Sign::Plus, order),
    )
    .expect("orders agree by construction")
    .scale(&k2);
    f0.add(&f1).and_then(|s| s.sub(&f2)).expect("orders agree by construction")
}

/// Streams the signs of `u_n(p)` from an all-integer three-term recurrence.
///
/// With `L` the common denominator of `a, b, c, p`, write `u_n = U_n / D_n`,
/// `D_n > 0`. The ODE satisfied by `(1-x)^p F` gives
/// `(n+1)(n+c) u_{n+1} = [2n^2 + (a+b+c-1-2p)n + ab - pc] u_n - (n-1+a-p)(n-1+b-p) u_{n-1}`,
/// which after scaling by `L` becomes an integer recurrence for `U_n`.
#[derive(Clone, Debug)]
pub struct FpRecurrence {
    l: Integer,
    a: Integer,
    b: Integer,
    c: Integer,
    p: Integer,
    n: u64,
    prev: Integer,
    cur: Integer,
    denom: Integer,
}

impl FpRecurrence {
    pub fn new(params: &ParameterTriple, p: &ExactScalar) -> Self {
        let mut l = Integer::from(1);
        for q in [params.a(), params.b(), params.c(), p] {
            l.lcm_mut(q.denom());
        }
        let scale = |q: &ExactScalar| -> Integer {
            let r = Rational::from(q.as_rational() * &l);
            debug_assert!(*r.denom() == 1);
            r.numer().clone()
        };
        Self {
            a: scale(params.a()),
            b: scale(params.b()),
            c: scale(params.c()),
            p: scale(p),
            l,
            n: 0,
            prev: Integer::new(),
            cur: Integer::from(1),
            denom: Integer::from(1),
        }
    }

    /// Index of the coefficient [`Self::numerator`] currently holds.
    pub fn index(&self) -> u64 {
        self.n
    }

    /// `U_n`; its sign is the sign of `u_n`.
    pub fn numerator(&self) -> &Integer {
        &self.cur
    }

    /// Current coefficient as an exact rational.
    pub fn value(&self) -> ExactScalar {
        ExactScalar::from_rational(Rational::from((self.cur.clone(), self.denom.clone())))
    }

    pub fn signum(&self) -> i32 {
        match self.cur.cmp0() {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }

    fn alpha(&self, n: u64) -> Integer {
        Integer::from(&self.l * n) + &self.c
    }

    /// Moves from `u_n` to `u_{n+1}`.
    pub fn advance(&mut self) {
        let n = self.n;
        let l = &self.l;
        let nl = Integer::from(l * n);
        // beta_n = 2 n^2 L^2 + (a+b+c-L-2p) n L + ab - pc
        let mut beta = Integer::from(&nl * &nl) * 2u32;
        let lin = Integer::from(&self.a + &self.b) + &self.c - l - Integer::from(&self.p * 2u32);
        beta += lin * &nl;
        beta += Integer::from(&self.a * &self.b);
        beta -= Integer::from(&self.p * &self.c);
        let mut next = beta * &self.cur;
        if n > 0 {
            let base = Integer::from(&nl - l);
            let g1 = Integer::from(&base + &self.a) - &self.p;
            let g2 = Integer::from(&base + &self.b) - &self.p;
            // alpha_{n-1} = n ((n-1)L + c)
            let alpha_prev = self.alpha(n - 1) * n;
            next -= g1 * g2 * l * alpha_prev * &self.prev;
        }
        let alpha_n = self.alpha(n) * (n + 1);
        self.denom *= alpha_n * l;
        self.prev = std::mem::replace(&mut self.cur, next);
        self.n += 1;
        // Keep the integers small: divide out a common factor occasionally.
        if self.n.is_multiple_of(64) {
            let mut g = Integer::from(self.prev.gcd_ref(&self.cur));
            g.gcd_mut(&self.denom);
            if g > 1 {
                self.prev.div_exact_mut(&g);
                self.cur.div_exact_mut(&g);
                self.denom.div_exact_mut(&g);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::make_params;
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
    fn hyp_examples() {
        assert_eq!(hyp_coeffs(&k_case(), 0), s(&["1"]));
        assert_eq!(hyp_coeffs(&k_case(), 1), s(&["1", "1/4"]));
        assert_eq!(hyp_coeffs(&k_case(), 2), s(&["1", "1/4", "9/64"]));
    }

    #[test]
    fn hyp_matches_pochhammer_formula() {
        use crate::exact::pochhammer;
        let pr = params("3/7", "5/2", "11/13");
        let h = hyp_coeffs(&pr, 20);
        let mut fact = ExactScalar::one();
        for n in 0..=20usize {
            if n > 0 {
                fact = fact.mul_int(n as i64);
            }
            let direct = &(&pochhammer(pr.a(), n) * &pochhammer(pr.b(), n)) / &(&pochhammer(pr.c(), n) * &fact);
            assert_eq!(h.get(n), &direct);
        }
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom_pow_coeffs(&q("1"), Sign::Minus, 3), s(&["1", "1", "1", "1"]));
        assert_eq!(binom_pow_coeffs(&q("1/2"), Sign::Minus, 2), s(&["1", "1/2", "3/8"]));
        assert_eq!(binom_pow_coeffs(&q("1"), Sign::Plus, 3), s(&["1", "-1", "0", "0"]));
    }

    #[test]
    fn cauchy_examples() {
        let r = cauchy_product(&s(&["1", "1", "1"]), &s(&["1", "-1", "0"])).unwrap();
        assert_eq!(r, s(&["1", "0", "0"]));
        let r = cauchy_product(&s(&["1", "0", "0"]), &s(&["1", "2", "3"])).unwrap();
        assert_eq!(r, s(&["1", "2", "3"]));
        // A_2 - A_1/4 - 3/32 = 9/64 - 4/64 - 6/64
        let r = cauchy_product(&hyp_coeffs(&k_case(), 2), &binom_pow_coeffs(&q("1/4"), Sign::Plus, 2)).unwrap();
        assert_eq!(r, s(&["1", "0", "-1/64"]));
        assert!(matches!(
            cauchy_product(&s(&["1"]), &s(&["1", "2"])),
            Err(Error::OrderMismatch { left: 0, right: 1 })
        ));
    }

    #[test]
    fn cauchy_adds_e_powers() {
        let u = s(&["1", "1"]).with_e_power(1);
        let v = s(&["2", "0"]).with_e_power(2);
        assert_eq!(cauchy_product(&u, &v).unwrap().prefactor_e_power(), 3);
    }

    #[test]
    fn exp_examples() {
        assert_eq!(series_exp_reduced(&s(&["0", "0", "0"])).unwrap(), s(&["1", "0", "0"]));
        assert_eq!(series_exp_reduced(&s(&["0", "1", "0", "0"])).unwrap(), s(&["1", "1", "1/2", "1/6"]));
        assert_eq!(series_exp_reduced(&s(&["0", "1", "1"])).unwrap(), s(&["1", "1", "3/2"]));
        assert!(matches!(series_exp_reduced(&s(&["1", "1"])), Err(Error::NonzeroConstantTerm(_))));
        assert!(matches!(
            series_exp_reduced(&s(&["0", "1"]).with_e_power(1)),
            Err(Error::TranscendentalPrefactor(1))
        ));
    }

    #[test]
    fn log_examples() {
        assert_eq!(series_log(&s(&["1", "0", "0"])).unwrap(), s(&["0", "0", "0"]));
        assert_eq!(series_log(&hyp_coeffs(&k_case(), 2)).unwrap(), s(&["0", "1/4", "7/64"]));
        assert_eq!(
            series_log(&binom_pow_coeffs(&q("1"), Sign::Minus, 3)).unwrap(),
            s(&["0", "1", "1/2", "1/3"])
        );
        assert!(matches!(series_log(&s(&["2", "1"])), Err(Error::ConstantTermNotOne(_))));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(series_derivative(&s(&["1", "1", "1"])).unwrap(), s(&["1", "2"]));
        assert_eq!(series_derivative(&s(&["5", "0", "0", "0"])).unwrap(), s(&["0", "0", "0"]));
        assert_eq!(series_derivative(&s(&["0", "1/4", "7/64"])).unwrap(), s(&["1/4", "7/32"]));
        assert!(matches!(
            series_derivative(&s(&["3"])),
            Err(Error::OrderTooSmall { required: 1, actual: 0 })
        ));
    }

    #[test]
    fn fp_examples() {
        assert_eq!(fp_coeffs(&k_case(), &q("0"), 2), s(&["1", "1/4", "9/64"]));
        assert_eq!(fp_coeffs(&k_case(), &q("1/4"), 2), s(&["1", "0", "-1/64"]));
        assert_eq!(fp_coeffs(&k_case(), &q("1"), 2), s(&["1", "-3/4", "-7/64"]));
    }

    #[test]
    fn gp_examples() {
        let g = gp_reduced_coeffs(&k_case(), &q("0"), 1);
        assert_eq!(g.prefactor_e_power(), 1);
        assert_eq!(g.coeffs(), s(&["1", "1/4"]).coeffs());
        let g = gp_reduced_coeffs(&params("7/3", "2", "5"), &q("9/2"), 0);
        assert_eq!(g.prefactor_e_power(), 1);
        assert_eq!(g.coeffs(), s(&["1"]).coeffs());
        let g = gp_reduced_coeffs(&k_case(), &q("1/4"), 1);
        assert_eq!(g.coeffs(), s(&["1", "0"]).coeffs());
    }

    #[test]
    fn lnfp_examples() {
        assert_eq!(lnfp_coeffs(&k_case(), &q("0"), 2), s(&["0", "1/4", "7/64"]));
        assert_eq!(lnfp_coeffs(&k_case(), &q("1/4"), 1), s(&["0", "0"]));
        assert_eq!(lnfp_coeffs(&k_case(), &q("1"), 2), s(&["0", "-3/4", "-25/64"]));
    }

    #[test]
    fn zero_balanced_first_log_coefficient() {
        let c = log_hyp_coeffs(&k_case(), 3);
        assert_eq!(c.get(1), &k_case().ab_over_c());
        assert_eq!(c.get(1), &q("1/4"));
    }

    #[test]
    fn recurrence_matches_convolution_examples() {
        for (pr, p) in [
            (k_case(), q("1/4")),
            (k_case(), q("101/100")),
            (params("2", "2", "3"), q("3/2")),
            (params("37/19", "5/7", "113/31"), q("-2/9")),
        ] {
            let conv = fp_coeffs(&pr, &p, 150);
            let mut rec = FpRecurrence::new(&pr, &p);
            for n in 0..=150 {
                assert_eq!(rec.index(), n as u64);
                assert_eq!(&rec.value(), conv.get(n), "n = {n}");
                assert_eq!(rec.signum(), conv.get(n).signum());
                rec.advance();
            }
        }
    }

    #[test]
    fn kernel_matches_lemma_formula() {
        // mu_n = c [ab + (a+b-c) n] / (ab (n+c)) * lambda_n
        let pr = params("3/4", "5/3", "7/2");
        let ker = shifted_kernel(&pr, 64);
        let lam = hyp_coeffs(&pr, 64);
        let (a, b, c) = (pr.a(), pr.b(), pr.c());
        let ab = a * b;
        for n in 0..=64usize {
            let nn = ExactScalar::from_integer(n as i64);
            let mu = &(&(c * &(&ab + &(&pr.excess() * &nn))) / &(&ab * &(&nn + c))) * lam.get(n);
            assert_eq!(ker.get(n), &mu);
        }
    }

    fn rational() -> impl Strategy<Value = ExactScalar> {
        (-60i64..60, 1i64..30).prop_map(|(n, d)| ExactScalar::ratio(n, d))
    }

    fn positive() -> impl Strategy<Value = ExactScalar> {
        (1i64..80, 1i64..25).prop_map(|(n, d)| ExactScalar::ratio(n, d))
    }

    fn triple() -> impl Strategy<Value = ParameterTriple> {
        (positive(), positive(), positive()).prop_map(|(a, b, c)| make_params(a, b, c).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn exp_log_round_trip(tail in prop::collection::vec(rational(), 1..=64)) {
            let mut coeffs = vec![ExactScalar::one()];
            coeffs.extend(tail);
            let f = TruncatedSeries::new(coeffs);
            let back = series_exp_reduced(&series_log(&f).unwrap()).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn product_consistency(pr in triple(), p in rational(), n in 0usize..40) {
            let fp = fp_coeffs(&pr, &p, n);
            let back = cauchy_product(&fp, &binom_pow_coeffs(&p, Sign::Minus, n)).unwrap();
            prop_assert_eq!(back, hyp_coeffs(&pr, n));
        }

        #[test]
        fn derivative_shift(pr in triple(), p in rational(), n in 1usize..30) {
            let fp = fp_coeffs(&pr, &p, n);
            let d = series_derivative(&fp).unwrap();
            for k in 0..n {
                prop_assert_eq!(d.get(k), &fp.get(k + 1).mul_int(k as i64 + 1));
            }
        }

        #[test]
        fn log_derivative_identity(pr in triple()) {
            let order = 64;
            let ker = shifted_kernel(&pr, order).scale(&pr.ab_over_c());
            let inv = series_reciprocal(&hyp_coeffs(&pr, order)).unwrap();
            let lhs = cauchy_product(&ker, &inv).unwrap();
            let c = log_hyp_coeffs(&pr, order + 1);
            for n in 0..=order {
                let rhs = c.get(n + 1).mul_int(n as i64 + 1) - c.get(n).mul_int(n as i64);
                prop_assert_eq!(lhs.get(n), &rhs);
            }
        }

        #[test]
        fn recurrence_matches_convolution(pr in triple(), p in rational()) {
            let conv = fp_coeffs(&pr, &p, 80);
            let mut rec = FpRecurrence::new(&pr, &p);
            for n in 0..=80 {
                prop_assert_eq!(&rec.value(), conv.get(n));
                rec.advance();
            }
        }

        #[test]
        fn reciprocal_is_inverse(tail in prop::collection::vec(rational(), 1..=30)) {
            let mut coeffs = vec![ExactScalar::one()];
            coeffs.extend(tail);
            let f = TruncatedSeries::new(coeffs);
            let inv = series_reciprocal(&f).unwrap();
            let prod = cauchy_product(&f, &inv).unwrap();
            let mut unit = vec![ExactScalar::zero(); f.order() + 1];
            unit[0] = ExactScalar::one();
            prop_assert_eq!(prod, TruncatedSeries::new(unit));
        }
    }
}
