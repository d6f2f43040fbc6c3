//! Coefficient field abstraction and exact combinatorial helpers.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Zero};

/// An exact field of characteristic zero used for coefficients.
///
/// Implemented for [`BigRational`] (the default, see [`crate::Q`]) and for
/// `Ratio<i64>`, which is faster but may overflow on large inputs.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;
    /// Canonical `"p/q"` rendering with `q >= 1`.
    fn to_ratio_string(&self) -> String;
    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn parse_ratio(s: &str) -> Option<Self>;
    fn is_integer(&self) -> bool;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
    fn parse_ratio(s: &str) -> Option<Self> {
        parse_parts(s).and_then(|(p, q)| {
            let p = BigInt::from_str(p).ok()?;
            let q = BigInt::from_str(q).ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        })
    }
    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
    fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
    fn parse_ratio(s: &str) -> Option<Self> {
        parse_parts(s).and_then(|(p, q)| {
            let p: i64 = p.parse().ok()?;
            let q: i64 = q.parse().ok()?;
            (q != 0).then(|| Ratio::new(p, q))
        })
    }
    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }
}

fn parse_parts(s: &str) -> Option<(&str, &str)> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => Some((p.trim(), q.trim())),
        None => Some((s, "1")),
    }
}

/// n! as i64. Panics on overflow (n > 20).
pub fn factorial(n: u32) -> i64 {
    (1..=n as i64).try_fold(1i64, |acc, k| acc.checked_mul(k)).expect("factorial overflow")
}

/// Generalized binomial C(x, s) for integer x of either sign; 0 for s < 0.
pub fn binomial_i(x: i64, s: i64) -> i64 {
    if s < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for t in 0..s as i128 {
        acc = acc * (x as i128 - t) / (t + 1);
    }
    i64::try_from(acc).expect("binomial overflow")
}

/// Ordinary binomial for counts: C(n, k), 0 when k > n.
pub fn binomial_u(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k as u128 {
        acc = acc * (n as u128 - t) / (t + 1);
    }
    acc
}

/// Multinomial coefficient total! / (∏ parts! · (total − Σ parts)!); 0 if parts overflow total.
pub fn multinomial_with_rest(total: u32, parts: &[u32]) -> u128 {
    let mut left = total as u64;
    let mut acc: u128 = 1;
    for &p in parts {
        if p as u64 > left {
            return 0;
        }
        acc *= binomial_u(left, p as u64);
        left -= p as u64;
    }
    acc
}

/// Generalized binomial C(x, s) = x(x−1)…(x−s+1)/s! over the field; 0 for s < 0.
pub fn binomial<S: Scalar>(x: &S, s: i64) -> S {
    if s < 0 {
        return S::zero();
    }
    let mut acc = S::one();
    for t in 0..s {
        acc = acc * (x.clone() - S::from_i64(t)) / S::from_i64(t + 1);
    }
    acc
}
