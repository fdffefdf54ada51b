//! Direct term-by-term summation in 192-bit binary floating point.
//!
//! Nothing here calls into the double-double or quadrature code; inputs are
//! read as exact `hi + lo` pairs and results leave through decimal strings.

use crate::closed_forms::{FourierKind, FourierParams, LerchParams, ProgressionParams, TrigKind};
use crate::dd::{Cdd, Dd};
use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use std::fmt;

/// Working precision in bits (about 57 decimal digits).
pub const PRECISION: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

/// Order in which terms are added.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Forward,
    Reverse,
}

/// Complex value at [`PRECISION`] bits.
#[derive(Clone, Debug)]
pub struct HighPrecScalar {
    pub re: BigFloat,
    pub im: BigFloat,
}

fn bf(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PRECISION)
}

fn bf_int(x: i128) -> BigFloat {
    BigFloat::from_i128(x, PRECISION)
}

fn bf_dd(x: Dd) -> BigFloat {
    bf(x.hi()).add(&bf(x.lo()), PRECISION, RM)
}

fn to_decimal(x: &BigFloat, cc: &mut Consts) -> String {
    x.format(Radix::Dec, RM, cc).unwrap_or_else(|_| "NaN".into())
}

fn parse_f64(s: &str) -> f64 {
    s.parse::<f64>().unwrap_or(f64::NAN)
}

/// Nearest `hi + lo` pair, through decimal strings.
fn to_dd(x: &BigFloat, cc: &mut Consts) -> Dd {
    if x.is_zero() {
        return Dd::ZERO;
    }
    let hi = parse_f64(&to_decimal(x, cc));
    if !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    let rest = x.sub(&bf(hi), PRECISION, RM);
    let lo = if rest.is_zero() { 0.0 } else { parse_f64(&to_decimal(&rest, cc)) };
    Dd::new(hi, lo)
}

impl HighPrecScalar {
    pub fn zero() -> HighPrecScalar {
        HighPrecScalar { re: bf(0.0), im: bf(0.0) }
    }

    pub fn to_cdd(&self) -> Cdd {
        let mut cc = consts();
        Cdd::new(to_dd(&self.re, &mut cc), to_dd(&self.im, &mut cc))
    }

    pub fn re_dd(&self) -> Dd {
        to_dd(&self.re, &mut consts())
    }

    /// `|self - other| / |other|`, rounded to double precision at the end.
    pub fn rel_diff(&self, other: &HighPrecScalar) -> f64 {
        let dr = self.re.sub(&other.re, PRECISION, RM);
        let di = self.im.sub(&other.im, PRECISION, RM);
        let num = norm_sqr(&dr, &di);
        let den = norm_sqr(&other.re, &other.im);
        let q = if den.is_zero() { num } else { num.div(&den, PRECISION, RM) };
        let mut cc = consts();
        parse_f64(&to_decimal(&q, &mut cc)).sqrt()
    }
}

fn norm_sqr(re: &BigFloat, im: &BigFloat) -> BigFloat {
    mul(re, re).add(&mul(im, im), PRECISION, RM)
}

impl fmt::Display for HighPrecScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut cc = consts();
        write!(f, "{} + {}i", to_decimal(&self.re, &mut cc), to_decimal(&self.im, &mut cc))
    }
}

fn consts() -> Consts {
    Consts::new().expect("constant cache")
}

/// Neumaier-compensated sum of one component.
struct Compensated {
    sum: BigFloat,
    comp: BigFloat,
}

impl Compensated {
    fn new() -> Compensated {
        Compensated { sum: bf(0.0), comp: bf(0.0) }
    }

    fn add(&mut self, x: &BigFloat) {
        let t = self.sum.add(x, PRECISION, RM);
        let c = if self.sum.abs_cmp(x).is_none_or(|o| o >= 0) {
            self.sum.sub(&t, PRECISION, RM).add(x, PRECISION, RM)
        } else {
            x.sub(&t, PRECISION, RM).add(&self.sum, PRECISION, RM)
        };
        self.comp = self.comp.add(&c, PRECISION, RM);
        self.sum = t;
    }

    fn value(&self) -> BigFloat {
        self.sum.add(&self.comp, PRECISION, RM)
    }
}

struct Acc {
    re: Compensated,
    im: Compensated,
}

impl Acc {
    fn new() -> Acc {
        Acc { re: Compensated::new(), im: Compensated::new() }
    }

    fn add(&mut self, re: &BigFloat, im: &BigFloat) {
        self.re.add(re);
        self.im.add(im);
    }

    fn finish(self) -> HighPrecScalar {
        HighPrecScalar { re: self.re.value(), im: self.im.value() }
    }
}

fn indices(n: u64, order: Order) -> Box<dyn Iterator<Item = u64>> {
    match order {
        Order::Forward => Box::new(1..=n),
        Order::Reverse => Box::new((1..=n).rev()),
    }
}

fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, PRECISION, RM)
}

fn div(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.div(b, PRECISION, RM)
}

/// `(a + ib)(c + id)`.
fn cmul(a: &BigFloat, b: &BigFloat, c: &BigFloat, d: &BigFloat) -> (BigFloat, BigFloat) {
    (mul(a, c).sub(&mul(b, d), PRECISION, RM), mul(a, d).add(&mul(b, c), PRECISION, RM))
}

/// `(a + ib)/(c + id)`.
fn cdiv(a: &BigFloat, b: &BigFloat, c: &BigFloat, d: &BigFloat) -> (BigFloat, BigFloat) {
    let den = mul(c, c).add(&mul(d, d), PRECISION, RM);
    let re = mul(a, c).add(&mul(b, d), PRECISION, RM);
    let im = mul(b, c).sub(&mul(a, d), PRECISION, RM);
    (div(&re, &den), div(&im, &den))
}

/// `cos(x + iy)` and `sin(x + iy)`.
fn ccos_csin(x: &BigFloat, y: &BigFloat, cc: &mut Consts) -> ((BigFloat, BigFloat), (BigFloat, BigFloat)) {
    let (s, c) = (x.sin(PRECISION, RM, cc), x.cos(PRECISION, RM, cc));
    let (sh, ch) = (y.sinh(PRECISION, RM, cc), y.cosh(PRECISION, RM, cc));
    let cos = (mul(&c, &ch), mul(&s, &sh).neg());
    let sin = (mul(&s, &ch), mul(&c, &sh));
    (cos, sin)
}

/// `exp(x + iy)`.
fn cexp(x: &BigFloat, y: &BigFloat, cc: &mut Consts) -> (BigFloat, BigFloat) {
    let e = x.exp(PRECISION, RM, cc);
    (mul(&e, &y.cos(PRECISION, RM, cc)), mul(&e, &y.sin(PRECISION, RM, cc)))
}

/// `1 / x^k` for a real `x`.
fn inv_pow(x: &BigFloat, k: u32) -> BigFloat {
    bf(1.0).div(&x.powi(k as usize, PRECISION, RM), PRECISION, RM)
}

/// `sum_{j=1}^{n} 1/(a j + b)^k`.
pub fn sum_hp(p: &ProgressionParams) -> HighPrecScalar {
    sum_hp_ordered(p, Order::Forward)
}

pub fn sum_hp_ordered(p: &ProgressionParams, order: Order) -> HighPrecScalar {
    let mut acc = Acc::new();
    let zero = bf(0.0);
    for j in indices(p.n, order) {
        let x = bf_int(p.a as i128 * j as i128 + p.b as i128);
        acc.add(&inv_pow(&x, p.k), &zero);
    }
    acc.finish()
}

/// `sum_{j=1}^{n} cos or sin(2 pi (a j + b)/m) / (a j + b)^k`.
pub fn sum_fourier(f: &FourierParams, kind: FourierKind) -> HighPrecScalar {
    sum_fourier_ordered(f, kind, Order::Forward)
}

pub fn sum_fourier_ordered(f: &FourierParams, kind: FourierKind, order: Order) -> HighPrecScalar {
    let mut cc = consts();
    let p = f.base;
    let two_pi = mul(&cc.pi(PRECISION, RM), &bf(2.0));
    // w = 2 pi / m
    let (wr, wi) = cdiv(&two_pi, &bf(0.0), &bf_dd(f.m.re), &bf_dd(f.m.im));
    let mut acc = Acc::new();
    for j in indices(p.n, order) {
        let x = bf_int(p.a as i128 * j as i128 + p.b as i128);
        let (cos, sin) = ccos_csin(&mul(&wr, &x), &mul(&wi, &x), &mut cc);
        let (tr, ti) = match kind {
            FourierKind::Cos => cos,
            FourierKind::Sin => sin,
        };
        let s = inv_pow(&x, p.k);
        acc.add(&mul(&tr, &s), &mul(&ti, &s));
    }
    acc.finish()
}

/// `sum_{j=1}^{n} e^{m (j + b)} / (j + b)^k`.
pub fn sum_lerch(l: &LerchParams) -> HighPrecScalar {
    sum_lerch_ordered(l, Order::Forward)
}

pub fn sum_lerch_ordered(l: &LerchParams, order: Order) -> HighPrecScalar {
    let mut cc = consts();
    let (br, bi) = (bf_dd(l.b.re), bf_dd(l.b.im));
    let (mr, mi) = (bf_dd(l.m.re), bf_dd(l.m.im));
    let mut acc = Acc::new();
    for j in indices(l.n, order) {
        let zr = bf_int(j as i128).add(&br, PRECISION, RM);
        let (er, ei) = {
            let (xr, xi) = cmul(&mr, &mi, &zr, &bi);
            cexp(&xr, &xi, &mut cc)
        };
        // z^k by repeated multiplication
        let (mut pr, mut pi) = (bf(1.0), bf(0.0));
        for _ in 0..l.k {
            let next = cmul(&pr, &pi, &zr, &bi);
            pr = next.0;
            pi = next.1;
        }
        let (tr, ti) = cdiv(&er, &ei, &pr, &pi);
        acc.add(&tr, &ti);
    }
    acc.finish()
}

/// `sum_{j=1}^{K} sin or cos(2 pi n (a j + b) / K)`.
pub fn sum_lagrange(kind: TrigKind, a: Dd, b: Dd, n: Dd, big_k: u32) -> HighPrecScalar {
    sum_lagrange_ordered(kind, a, b, n, big_k, Order::Forward)
}

pub fn sum_lagrange_ordered(kind: TrigKind, a: Dd, b: Dd, n: Dd, big_k: u32, order: Order) -> HighPrecScalar {
    let mut cc = consts();
    let two_pi = mul(&cc.pi(PRECISION, RM), &bf(2.0));
    let (a, b, n) = (bf_dd(a), bf_dd(b), bf_dd(n));
    let scale = div(&mul(&two_pi, &n), &bf_int(big_k as i128));
    let mut acc = Acc::new();
    let zero = bf(0.0);
    for j in indices(big_k as u64, order) {
        let x = mul(&scale, &mul(&a, &bf_int(j as i128)).add(&b, PRECISION, RM));
        let t = match kind {
            TrigKind::Sin => x.sin(PRECISION, RM, &mut cc),
            TrigKind::Cos => x.cos(PRECISION, RM, &mut cc),
        };
        acc.add(&t, &zero);
    }
    acc.finish()
}
