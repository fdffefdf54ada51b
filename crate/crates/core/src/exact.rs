//! Exact rational arithmetic: Bernoulli numbers, factorials and the
//! even/odd Faulhaber power-sum polynomials.

use crate::dd::Dd;
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

/// Arbitrary-precision fraction, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn factorial(n: u32) -> Rational {
    Rational::from_integer(factorial_int(n))
}

pub fn factorial_int(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

pub fn pow2(e: u32) -> Rational {
    Rational::from_integer(BigInt::one() << e as usize)
}

pub fn pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow::pow(x.clone(), e as usize)
}

/// Immutable table of Bernoulli numbers `B_0..=B_max` with `B_1 = -1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, j: usize) -> Option<&Rational> {
        self.values.get(j)
    }
}

impl std::ops::Index<usize> for BernoulliTable {
    type Output = Rational;
    fn index(&self, j: usize) -> &Rational {
        &self.values[j]
    }
}

/// Builds `B_0..=B_max_order` from `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_table(max_order: usize) -> BernoulliTable {
    let mut values: Vec<Rational> = Vec::with_capacity(max_order + 1);
    values.push(Rational::one());
    for m in 1..=max_order {
        let mut acc = Rational::zero();
        for (j, bj) in values.iter().enumerate() {
            if !bj.is_zero() {
                acc += bj * Rational::from_integer(binomial(m as u32 + 1, j as u32));
            }
        }
        values.push(-acc / int(m as i64 + 1));
    }
    let table = BernoulliTable { values };
    if max_order >= 1 {
        // The (-1)^j sign convention in the power-sum formula needs B_1 = -1/2.
        debug_assert_eq!(table.values[1], ratio(-1, 2));
    }
    table
}

/// Shared table, large enough for every kernel order used in the crate.
pub fn shared_bernoulli() -> &'static BernoulliTable {
    static T: OnceLock<BernoulliTable> = OnceLock::new();
    T.get_or_init(|| bernoulli_table(SHARED_BERNOULLI_ORDER))
}

pub const SHARED_BERNOULLI_ORDER: usize = 96;

pub(crate) fn bernoulli_numbers(max: usize) -> &'static [Rational] {
    let t = shared_bernoulli();
    &t.values()[..=max.min(t.max_order())]
}

/// `sum_{k=1}^{n} k^(2i)` written through even-index Bernoulli numbers.
pub fn faulhaber_even(i: u32, n: &Rational) -> Rational {
    let b = bernoulli_numbers(2 * i as usize + 1);
    let p = 2 * i;
    let fp = factorial(p);
    let mut acc = Rational::zero();
    if p >= 1 {
        // the B_1 term, present only when the power is positive
        acc += pow(n, p) / int(2);
    }
    for j in 0..=i {
        let e = p + 1 - 2 * j;
        acc += &fp * &b[2 * j as usize] * pow(n, e) / (factorial(2 * j) * factorial(e));
    }
    acc
}

/// `sum_{k=1}^{n} k^(2i+1)` written through even-index Bernoulli numbers.
pub fn faulhaber_odd(i: u32, n: &Rational) -> Rational {
    let b = bernoulli_numbers(2 * i as usize + 2);
    let p = 2 * i + 1;
    let fp = factorial(p);
    let mut acc = pow(n, p) / int(2);
    for j in 0..=i {
        let e = p + 1 - 2 * j;
        acc += &fp * &b[2 * j as usize] * pow(n, e) / (factorial(2 * j) * factorial(e));
    }
    acc
}

/// Term-by-term `sum_{k=1}^{n} k^p`.
pub fn power_sum_oracle(p: u32, n: u64) -> Rational {
    let mut acc = BigInt::zero();
    for k in 1..=n {
        acc += num_traits::pow::pow(BigInt::from(k), p as usize);
    }
    Rational::from_integer(acc)
}

/// Splits `|n|` as `m * 2^e` with `m` holding at most ~120 significant bits.
fn bigint_to_dd_scaled(n: &BigInt) -> (Dd, i64) {
    let bits = n.bits() as i64;
    let shift = (bits - 120).max(0);
    let m = n.abs() >> shift as usize;
    let hi = m.to_f64().unwrap_or(f64::INFINITY);
    let hi_int = BigInt::from(hi as u128);
    let lo = (&m - hi_int).to_f64().unwrap_or(0.0);
    let d = Dd::new(hi, lo);
    let d = if n.sign() == Sign::Minus { -d } else { d };
    (d, shift)
}

pub fn bigint_to_dd(n: &BigInt) -> Dd {
    let (d, e) = bigint_to_dd_scaled(n);
    d.ldexp(e as i32)
}

/// Nearest double-double, accurate to about 2^-104 relative.
pub fn rational_to_dd(r: &Rational) -> Dd {
    if r.is_zero() {
        return Dd::ZERO;
    }
    let (n, en) = bigint_to_dd_scaled(r.numer());
    let (d, ed) = bigint_to_dd_scaled(r.denom());
    let q = n / d;
    let e = en - ed;
    if e > 2000 {
        Dd::from_f64(q.signum() * f64::INFINITY)
    } else if e < -2000 {
        Dd::ZERO
    } else if e.abs() > 1000 {
        q.ldexp((e / 2) as i32).ldexp((e - e / 2) as i32)
    } else {
        q.ldexp(e as i32)
    }
}

/// Exact value of a finite `f64`.
pub fn f64_to_rational(x: f64) -> Rational {
    Rational::from_float(x).expect("finite value")
}

/// Exact value `hi + lo` of a double-double.
pub fn dd_to_rational(x: Dd) -> Rational {
    f64_to_rational(x.hi()) + f64_to_rational(x.lo())
}

/// Whether `r` is an integer; returns it if so.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}
