//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`
//! with `|lo| <= ulp(hi)/2`, giving roughly 32 significant digits.
//!
//! Trigonometric functions are computed in turns (`sin(2*pi*t)`), so
//! integer turns reduce to exactly zero.

mod complex;

pub use complex::Cdd;

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const HALF: Dd = Dd { hi: 0.5, lo: 0.0 };
    pub const PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.2246467991473532e-16 };
    pub const TAU: Dd = Dd { hi: std::f64::consts::TAU, lo: 2.4492935982947064e-16 };
    pub const FRAC_PI_2: Dd = Dd { hi: std::f64::consts::FRAC_PI_2, lo: 6.123233995736766e-17 };
    pub const FRAC_1_TAU: Dd = Dd { hi: 0.15915494309189535, lo: -9.839338337591243e-18 };
    pub const LN_2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.3190468138462996e-17 };
    pub const EULER_GAMMA: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };
    pub const E: Dd = Dd { hi: std::f64::consts::E, lo: 1.4456468917292502e-16 };
    /// Unit roundoff of the format, 2^-104.
    pub const EPSILON: f64 = 4.930380657631324e-32;

    /// Builds from a pre-normalized pair; `lo` must be below half an ulp of `hi`.
    pub const fn from_parts(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    pub fn new(hi: f64, lo: f64) -> Dd {
        let (h, l) = two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i128(x: i128) -> Dd {
        let hi = x as f64;
        // `hi` rounds to nearest, so the remainder fits in i128 and is exact in f64
        // whenever |x| < 2^106.
        let rem = x - hi as i128;
        Dd::new(hi, rem as f64)
    }

    pub fn from_i64(x: i64) -> Dd {
        Dd::from_i128(x as i128)
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn signum(self) -> f64 {
        if self.hi > 0.0 {
            1.0
        } else if self.hi < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (h, l) = quick_two_sum(p, e + self.lo * b);
        Dd { hi: h, lo: l }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        let (h, l) = quick_two_sum(s, e + self.lo);
        Dd { hi: h, lo: l }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        self / Dd::from_f64(b)
    }

    pub fn sqr(self) -> Dd {
        let (p, e) = two_prod(self.hi, self.hi);
        let (h, l) = quick_two_sum(p, e + 2.0 * self.hi * self.lo);
        Dd { hi: h, lo: l }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    /// Multiplication by 2^k, exact barring under/overflow.
    pub fn ldexp(self, k: i32) -> Dd {
        let s = 2f64.powi(k);
        Dd { hi: self.hi * s, lo: self.lo * s }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let ax_dd = Dd::from_f64(ax);
        ax_dd.add_f64((self - ax_dd.sqr()).hi * (x * 0.5))
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round(self) -> Dd {
        let h = self.hi.round();
        if h == self.hi {
            let l = self.lo.round();
            let (hh, ll) = quick_two_sum(h, l);
            return Dd { hi: hh, lo: ll };
        }
        let mut h = h;
        if (h - self.hi).abs() == 0.5 {
            // hi sits on a tie; lo decides which side the true value is on.
            if self.lo < 0.0 && h > self.hi {
                h -= 1.0;
            } else if self.lo > 0.0 && h < self.hi {
                h += 1.0;
            }
        }
        Dd { hi: h, lo: 0.0 }
    }

    pub fn floor(self) -> Dd {
        let h = self.hi.floor();
        if h == self.hi {
            let l = self.lo.floor();
            let (hh, ll) = quick_two_sum(h, l);
            return Dd { hi: hh, lo: ll };
        }
        Dd { hi: h, lo: 0.0 }
    }

    /// Whether the value is an integer, exactly.
    pub fn is_integer(self) -> bool {
        self.hi.fract() == 0.0 && self.lo.fract() == 0.0
    }

    /// `(sin(2*pi*t), cos(2*pi*t))`.
    pub fn sin_cos_turns(self) -> (Dd, Dd) {
        if !self.is_finite() {
            return (Dd::from_f64(f64::NAN), Dd::from_f64(f64::NAN));
        }
        let r = self - self.round();
        let q = (r.hi * 4.0).round();
        let s = r - Dd::from_f64(q * 0.25);
        if s.is_zero() {
            return quarter_turn(q as i64, Dd::ZERO, Dd::ONE);
        }
        let (sx, cx) = sin_cos_taylor(s * Dd::TAU);
        quarter_turn(q as i64, sx, cx)
    }

    pub fn sin_turns(self) -> Dd {
        self.sin_cos_turns().0
    }

    pub fn cos_turns(self) -> Dd {
        self.sin_cos_turns().1
    }

    pub fn sin_cos(self) -> (Dd, Dd) {
        if self.hi.abs() < 0.785 {
            return sin_cos_taylor(self);
        }
        (self * Dd::FRAC_1_TAU).sin_cos_turns()
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    pub fn cot(self) -> Dd {
        let (s, c) = self.sin_cos();
        c / s
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.7 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN_2.hi).round();
        let r = self - Dd::LN_2.mul_f64(k);
        (expm1_reduced(r) + Dd::ONE).ldexp(k as i32)
    }

    pub fn expm1(self) -> Dd {
        if self.hi.abs() < 0.5 {
            expm1_reduced(self)
        } else {
            self.exp() - Dd::ONE
        }
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        let y = Dd::from_f64(self.hi.ln());
        y + self * (-y).exp() - Dd::ONE
    }

    /// `(sinh x, cosh x)`.
    pub fn sinh_cosh(self) -> (Dd, Dd) {
        if self.hi.abs() < 0.5 {
            let em = expm1_reduced(self);
            let e = em + Dd::ONE;
            let s = (em + em / e).ldexp(-1);
            let c = (e + e.recip()).ldexp(-1);
            (s, c)
        } else {
            let e = self.exp();
            let ei = e.recip();
            ((e - ei).ldexp(-1), (e + ei).ldexp(-1))
        }
    }

    /// `coth x` for real nonzero `x`.
    pub fn coth(self) -> Dd {
        if self.hi < 0.0 {
            return -(-self).coth();
        }
        if self.hi > 40.0 {
            return Dd::ONE + Dd::from_f64(2.0) * (-(self.ldexp(1))).exp();
        }
        Dd::ONE + Dd::from_f64(2.0) / self.ldexp(1).expm1()
    }

    /// `coth x - 1/x`, accurate near zero.
    pub fn coth_minus_recip(self) -> Dd {
        if self.hi.abs() < 0.5 {
            let c = coth_series();
            let x2 = self.sqr();
            let mut acc = Dd::ZERO;
            for ck in c.iter().rev() {
                acc = acc * x2 + *ck;
            }
            acc * self
        } else {
            self.coth() - self.recip()
        }
    }

    pub fn total_cmp(&self, other: &Dd) -> Ordering {
        self.hi.total_cmp(&other.hi).then(self.lo.total_cmp(&other.lo))
    }
}

fn quarter_turn(q: i64, s: Dd, c: Dd) -> (Dd, Dd) {
    match q.rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

pub(crate) fn inv_factorials() -> &'static [Dd; 40] {
    static T: OnceLock<[Dd; 40]> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = [Dd::ONE; 40];
        for i in 1..40 {
            t[i] = t[i - 1].div_f64(i as f64);
        }
        t
    })
}

/// Taylor coefficients of `coth x - 1/x = sum c_j x^(2j+1)`.
fn coth_series() -> &'static [Dd] {
    static T: OnceLock<Vec<Dd>> = OnceLock::new();
    T.get_or_init(|| {
        let b = crate::exact::bernoulli_numbers(60);
        (1..=28usize)
            .map(|k| {
                // 2^(2k) B_2k / (2k)!
                let r = &b[2 * k] * crate::exact::pow2(2 * k as u32) / crate::exact::factorial(2 * k as u32);
                crate::exact::rational_to_dd(&r)
            })
            .collect()
    })
}

/// Valid for |x| <= pi/4.
fn sin_cos_taylor(x: Dd) -> (Dd, Dd) {
    let f = inv_factorials();
    let x2 = x.sqr();
    // sin: x * sum (-1)^i x^(2i) / (2i+1)!, cos: sum (-1)^i x^(2i) / (2i)!
    let mut s = Dd::ZERO;
    let mut c = Dd::ZERO;
    let mut i = 14usize;
    loop {
        let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
        s = s * x2 + f[2 * i + 1].mul_f64(sign);
        c = c * x2 + f[2 * i].mul_f64(sign);
        if i == 0 {
            break;
        }
        i -= 1;
    }
    (s * x, c)
}

/// `exp(r) - 1` for |r| < 0.5.
fn expm1_reduced(r: Dd) -> Dd {
    let f = inv_factorials();
    let t = r.ldexp(-10);
    let mut s = Dd::ZERO;
    for i in (1..=12).rev() {
        s = (s + f[i]) * t;
    }
    // expm1(2x) = expm1(x) * (expm1(x) + 2)
    for _ in 0..10 {
        s = s * (s + Dd::from_f64(2.0));
    }
    s
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl From<i64> for Dd {
    fn from(x: i64) -> Dd {
        Dd::from_i64(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (h, l) = quick_two_sum(s, e + f);
        Dd { hi: h, lo: l }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p, e);
        Dd { hi: h, lo: l }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Dd::from_f64(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l }.add_f64(q3)
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, b: f64) -> Dd {
        self.add_f64(b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    fn sub(self, b: f64) -> Dd {
        self.add_f64(-b)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, b: f64) -> Dd {
        self.mul_f64(b)
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, b: f64) -> Dd {
        self.div_f64(b)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

impl DivAssign for Dd {
    fn div_assign(&mut self, b: Dd) {
        *self = *self / b;
    }
}

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}
