//! Certified sign scans at large truncation orders.
//!
//! Exact rational expansions of `exp` and `log` grow too fast to reach a few
//! thousand terms, so these scans run the same recurrences in ball arithmetic:
//! a multiprecision midpoint with a rigorous radius. Only a ball that excludes
//! zero decides a sign; a ball straddling zero is counted as undecided.

use rug::float::Round;
use rug::{Float, Rational};

use crate::exact::{ExactScalar, ParameterTriple};
use crate::series::Sign;

/// Working precision of ball midpoints, in bits.
pub const BALL_PRECISION: u32 = 160;
const RAD_PREC: u32 = 64;

#[derive(Clone, Debug)]
pub(crate) struct Ball {
    mid: Float,
    rad: Float,
}

fn abs_up(m: &Float) -> Float {
    Float::with_val_round(RAD_PREC, m.abs_ref(), Round::Up).0
}

fn add_up(x: &Float, y: &Float) -> Float {
    Float::with_val_round(RAD_PREC, x + y, Round::Up).0
}

fn mul_up(x: &Float, y: &Float) -> Float {
    Float::with_val_round(RAD_PREC, x * y, Round::Up).0
}

/// Upper bound on the rounding error of a midpoint rounded to nearest.
fn rounding_bound(m: &Float) -> Float {
    let mut r = abs_up(m);
    r >>= m.prec();
    r
}

impl Ball {
    pub(crate) fn zero() -> Self {
        Ball {
            mid: Float::new(BALL_PRECISION),
            rad: Float::new(RAD_PREC),
        }
    }

    pub(crate) fn from_rational(r: &Rational) -> Self {
        let mid = Float::with_val(BALL_PRECISION, r);
        let rad = rounding_bound(&mid);
        Ball { mid, rad }
    }

    pub(crate) fn from_scalar(q: &ExactScalar) -> Self {
        Self::from_rational(q.as_rational())
    }

    pub(crate) fn add(&self, o: &Ball) -> Ball {
        let mid = Float::with_val(BALL_PRECISION, &self.mid + &o.mid);
        let rad = add_up(&add_up(&self.rad, &o.rad), &rounding_bound(&mid));
        Ball { mid, rad }
    }

    pub(crate) fn sub(&self, o: &Ball) -> Ball {
        let mid = Float::with_val(BALL_PRECISION, &self.mid - &o.mid);
        let rad = add_up(&add_up(&self.rad, &o.rad), &rounding_bound(&mid));
        Ball { mid, rad }
    }

    pub(crate) fn mul(&self, o: &Ball) -> Ball {
        let mid = Float::with_val(BALL_PRECISION, &self.mid * &o.mid);
        let mut rad = mul_up(&abs_up(&self.mid), &o.rad);
        rad = add_up(&rad, &mul_up(&abs_up(&o.mid), &self.rad));
        rad = add_up(&rad, &mul_up(&self.rad, &o.rad));
        rad = add_up(&rad, &rounding_bound(&mid));
        Ball { mid, rad }
    }

    pub(crate) fn mul_u64(&self, k: u64) -> Ball {
        let mid = Float::with_val(BALL_PRECISION, &self.mid * k);
        let rad = Float::with_val_round(RAD_PREC, &self.rad * k, Round::Up).0;
        let rad = add_up(&rad, &rounding_bound(&mid));
        Ball { mid, rad }
    }

    pub(crate) fn div_u64(&self, k: u64) -> Ball {
        let mid = Float::with_val(BALL_PRECISION, &self.mid / k);
        let rad = Float::with_val_round(RAD_PREC, &self.rad / k, Round::Up).0;
        let rad = add_up(&rad, &rounding_bound(&mid));
        Ball { mid, rad }
    }

    /// `Some(sign)` when the ball excludes zero (or is exactly zero).
    pub(crate) fn certified_sign(&self) -> Option<i32> {
        if self.mid.is_zero() && self.rad.is_zero() {
            return Some(0);
        }
        let lo = Float::with_val_round(BALL_PRECISION, &self.mid - &self.rad, Round::Down).0;
        if lo > 0 {
            return Some(1);
        }
        let hi = Float::with_val_round(BALL_PRECISION, &self.mid + &self.rad, Round::Up).0;
        if hi < 0 {
            return Some(-1);
        }
        None
    }

    #[cfg(test)]
    pub(crate) fn contains(&self, q: &Rational) -> bool {
        let lo = Float::with_val_round(BALL_PRECISION * 2, &self.mid - &self.rad, Round::Down).0;
        let hi = Float::with_val_round(BALL_PRECISION * 2, &self.mid + &self.rad, Round::Up).0;
        lo <= *q && *q <= hi
    }
}

/// Outcome of a streaming certified scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeepScan {
    /// First coefficient index with a certified sign violation.
    pub first_violation: Option<usize>,
    /// Highest coefficient index examined.
    pub scanned_to: usize,
    /// Indices whose sign could not be certified before the first violation.
    pub undecided: usize,
}

/// `A_0..A_order` as balls.
pub(crate) fn hyp_balls(params: &ParameterTriple, order: usize) -> Vec<Ball> {
    let (a, b, c) = (params.a().as_rational(), params.b().as_rational(), params.c().as_rational());
    let mut out = Vec::with_capacity(order + 1);
    out.push(Ball::from_rational(&Rational::from(1)));
    for n in 0..order as u64 {
        let ratio = Rational::from(a + n) * Rational::from(b + n) / (Rational::from(c + n) * (n + 1));
        let next = out[n as usize].mul(&Ball::from_rational(&ratio));
        out.push(next);
    }
    out
}

/// Scans the coefficients of `sign * (d/dx)[(1-x)^p exp(F - 1)]` up to index `cap`.
///
/// With `h = F - 1 + p ln(1-x)`, the coefficients `v_n` of `exp(h)` satisfy
/// `n v_n = sum_{k=1}^n (k A_k - p) v_{n-k}`. Index `m` of the derivative is `(m+1) v_{m+1}`.
pub fn gp_prime_scan(params: &ParameterTriple, p: &ExactScalar, sign: Sign, cap: usize) -> DeepScan {
    let top = cap + 1;
    let a = hyp_balls(params, top);
    let pb = Ball::from_scalar(p);
    let kh: Vec<Ball> = (0..=top)
        .map(|k| if k == 0 { Ball::zero() } else { a[k].mul_u64(k as u64).sub(&pb) })
        .collect();
    let mut v: Vec<Ball> = Vec::with_capacity(top + 1);
    v.push(Ball::from_rational(&Rational::from(1)));
    let mut undecided = 0;
    for n in 1..=top {
        let mut acc = Ball::zero();
        for k in 1..=n {
            acc = acc.add(&kh[k].mul(&v[n - k]));
        }
        let vn = acc.div_u64(n as u64);
        match vn.certified_sign() {
            Some(s) if s * sign.as_i32() < 0 => {
                return DeepScan {
                    first_violation: Some(n - 1),
                    scanned_to: n - 1,
                    undecided,
                }
            }
            None => undecided += 1,
            _ => {}
        }
        v.push(vn);
    }
    DeepScan {
        first_violation: None,
        scanned_to: cap,
        undecided,
    }
}

/// Scans the coefficients of `sign * (ln[(1-x)^p F])^{(k)}` up to index `cap`.
///
/// Index `m` is `(m+k)!/m! * (D_{m+k} - p)/(m+k)` with `D_n = n C_n`, and
/// `D_n = n A_n - sum_{j=1}^{n-1} D_j A_{n-j}`.
pub fn lnfp_k_scan(params: &ParameterTriple, p: &ExactScalar, k: usize, sign: Sign, cap: usize) -> DeepScan {
    let top = cap + k;
    let a = hyp_balls(params, top);
    let pb = Ball::from_scalar(p);
    let mut d: Vec<Ball> = Vec::with_capacity(top + 1);
    d.push(Ball::zero());
    let mut undecided = 0;
    for n in 1..=top {
        let mut acc = a[n].mul_u64(n as u64);
        for j in 1..n {
            acc = acc.sub(&d[j].mul(&a[n - j]));
        }
        if n >= k && n >= 1 {
            let m = n - k;
            match acc.sub(&pb).certified_sign() {
                Some(s) if s * sign.as_i32() < 0 => {
                    return DeepScan {
                        first_violation: Some(m),
                        scanned_to: m,
                        undecided,
                    }
                }
                None => undecided += 1,
                _ => {}
            }
        }
        d.push(acc);
    }
    DeepScan {
        first_violation: None,
        scanned_to: cap,
        undecided,
    }
}
