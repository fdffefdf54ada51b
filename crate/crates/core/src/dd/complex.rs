use super::Dd;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Complex number with double-double parts.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Cdd = Cdd { re: Dd::ONE, im: Dd::ZERO };
    pub const I: Cdd = Cdd { re: Dd::ZERO, im: Dd::ONE };

    pub const fn new(re: Dd, im: Dd) -> Cdd {
        Cdd { re, im }
    }

    pub const fn real(re: Dd) -> Cdd {
        Cdd { re, im: Dd::ZERO }
    }

    pub fn from_f64(re: f64, im: f64) -> Cdd {
        Cdd { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    pub fn is_real(self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(self) -> Cdd {
        Cdd { re: self.re, im: -self.im }
    }

    /// Multiplication by i.
    pub fn mul_i(self) -> Cdd {
        Cdd { re: -self.im, im: self.re }
    }

    pub fn scale(self, s: Dd) -> Cdd {
        Cdd { re: self.re * s, im: self.im * s }
    }

    pub fn scale_f64(self, s: f64) -> Cdd {
        Cdd { re: self.re.mul_f64(s), im: self.im.mul_f64(s) }
    }

    pub fn ldexp(self, k: i32) -> Cdd {
        Cdd { re: self.re.ldexp(k), im: self.im.ldexp(k) }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re.sqr() + self.im.sqr()
    }

    /// Modulus in plain double precision, for error bookkeeping.
    pub fn abs_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn abs(self) -> Dd {
        self.norm_sqr().sqrt()
    }

    pub fn recip(self) -> Cdd {
        if self.im.is_zero() {
            return Cdd::real(self.re.recip());
        }
        let d = self.norm_sqr();
        Cdd { re: self.re / d, im: -self.im / d }
    }

    pub fn powi(self, n: i32) -> Cdd {
        if n == 0 {
            return Cdd::ONE;
        }
        if self.im.is_zero() {
            return Cdd::real(self.re.powi(n));
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Cdd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// `exp(2*pi*i*t)` for real `t` given in turns.
    pub fn cis_turns(t: Dd) -> Cdd {
        let (s, c) = t.sin_cos_turns();
        Cdd { re: c, im: s }
    }

    pub fn exp(self) -> Cdd {
        if self.im.is_zero() {
            return Cdd::real(self.re.exp());
        }
        let (s, c) = self.im.sin_cos();
        if self.re.is_zero() {
            return Cdd { re: c, im: s };
        }
        let m = self.re.exp();
        Cdd { re: m * c, im: m * s }
    }

    /// `exp(2*pi*z)` evaluated with the imaginary part in turns, so that
    /// integer imaginary parts give an exactly real phase.
    pub fn exp_tau(self) -> Cdd {
        let (s, c) = self.im.sin_cos_turns();
        if self.re.is_zero() {
            return Cdd { re: c, im: s };
        }
        let m = (self.re * Dd::TAU).exp();
        Cdd { re: m * c, im: m * s }
    }

    pub fn sin(self) -> Cdd {
        let (s, c) = self.re.sin_cos();
        if self.im.is_zero() {
            return Cdd::real(s);
        }
        let (sh, ch) = self.im.sinh_cosh();
        Cdd { re: s * ch, im: c * sh }
    }

    pub fn cos(self) -> Cdd {
        let (s, c) = self.re.sin_cos();
        if self.im.is_zero() {
            return Cdd::real(c);
        }
        let (sh, ch) = self.im.sinh_cosh();
        Cdd { re: c * ch, im: -(s * sh) }
    }

    /// `sin(2*pi*z)` with the real part in turns.
    pub fn sin_turns(self) -> Cdd {
        let (s, c) = self.re.sin_cos_turns();
        if self.im.is_zero() {
            return Cdd::real(s);
        }
        let (sh, ch) = (self.im * Dd::TAU).sinh_cosh();
        Cdd { re: s * ch, im: c * sh }
    }

    /// `cos(2*pi*z)` with the real part in turns.
    pub fn cos_turns(self) -> Cdd {
        let (s, c) = self.re.sin_cos_turns();
        if self.im.is_zero() {
            return Cdd::real(c);
        }
        let (sh, ch) = (self.im * Dd::TAU).sinh_cosh();
        Cdd { re: c * ch, im: -(s * sh) }
    }

    pub fn cot(self) -> Cdd {
        if self.im.is_zero() {
            return Cdd::real(self.re.cot());
        }
        let y = self.im.to_f64();
        if y.abs() < 1.0 {
            let (s, c) = self.re.sin_cos();
            let (sh, ch) = self.im.sinh_cosh();
            let d = s.sqr() + sh.sqr();
            return Cdd { re: s * c / d, im: -(sh * ch) / d };
        }
        // Away from the real axis use w = exp(+-2iz), |w| < 1.
        if y > 0.0 {
            let w = (self.mul_i().ldexp(1)).exp();
            -(((Cdd::ONE + w) / (Cdd::ONE - w)).mul_i())
        } else {
            let w = (-(self.mul_i().ldexp(1))).exp();
            ((Cdd::ONE + w) / (Cdd::ONE - w)).mul_i()
        }
    }

    pub fn coth(self) -> Cdd {
        if self.im.is_zero() {
            return Cdd::real(self.re.coth());
        }
        // coth z = i cot(i z)
        self.mul_i().cot().mul_i()
    }

    /// Horner evaluation of `sum c[p] z^p`.
    pub fn horner(coeffs: &[Dd], z: Cdd) -> Cdd {
        let mut acc = Cdd::ZERO;
        for c in coeffs.iter().rev() {
            acc = acc * z + Cdd::real(*c);
        }
        acc
    }

    /// Horner evaluation with complex coefficients.
    pub fn horner_c(coeffs: &[Cdd], z: Cdd) -> Cdd {
        let mut acc = Cdd::ZERO;
        for c in coeffs.iter().rev() {
            acc = acc * z + *c;
        }
        acc
    }
}

impl fmt::Debug for Cdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.re, self.im)
    }
}

impl fmt::Display for Cdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = self.im.to_f64();
        if im < 0.0 {
            write!(f, "{} - {}i", self.re, -im)
        } else {
            write!(f, "{} + {}i", self.re, im)
        }
    }
}

impl From<Dd> for Cdd {
    fn from(x: Dd) -> Cdd {
        Cdd::real(x)
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    fn neg(self) -> Cdd {
        Cdd { re: -self.re, im: -self.im }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    #[inline]
    fn add(self, b: Cdd) -> Cdd {
        Cdd { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    #[inline]
    fn sub(self, b: Cdd) -> Cdd {
        Cdd { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, b: Cdd) -> Cdd {
        if b.im.is_zero() {
            return self.scale(b.re);
        }
        if self.im.is_zero() {
            return b.scale(self.re);
        }
        Cdd { re: self.re * b.re - self.im * b.im, im: self.re * b.im + self.im * b.re }
    }
}

impl Mul<Dd> for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, b: Dd) -> Cdd {
        self.scale(b)
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, b: Cdd) -> Cdd {
        if b.im.is_zero() {
            return Cdd { re: self.re / b.re, im: self.im / b.re };
        }
        let d = b.norm_sqr();
        Cdd { re: (self.re * b.re + self.im * b.im) / d, im: (self.im * b.re - self.re * b.im) / d }
    }
}

impl Div<Dd> for Cdd {
    type Output = Cdd;
    fn div(self, b: Dd) -> Cdd {
        Cdd { re: self.re / b, im: self.im / b }
    }
}

impl AddAssign for Cdd {
    fn add_assign(&mut self, b: Cdd) {
        *self = *self + b;
    }
}

impl SubAssign for Cdd {
    fn sub_assign(&mut self, b: Cdd) {
        *self = *self - b;
    }
}

impl MulAssign for Cdd {
    fn mul_assign(&mut self, b: Cdd) {
        *self = *self * b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cdd {
        Cdd::from_f64(re, im)
    }

    #[test]
    fn cot_agrees_across_branches() {
        for &(x, y) in &[(0.3, 0.2), (1.1, -0.7), (0.4, 0.999), (0.4, 1.001), (2.0, 3.5), (0.2, -6.0)] {
            let z = c(x, y);
            let direct = z.cos() / z.sin();
            let v = z.cot();
            assert!((v - direct).abs_f64() < 1e-28 * v.abs_f64().max(1.0), "{x} {y}");
        }
    }

    #[test]
    fn coth_is_i_cot_iz() {
        let z = c(0.3, 2.0);
        let direct = {
            let e = z.ldexp(1).exp();
            (e + Cdd::ONE) / (e - Cdd::ONE)
        };
        assert!((z.coth() - direct).abs_f64() < 1e-28);
    }

    #[test]
    fn exp_tau_exact_phase() {
        let z = Cdd::new(Dd::ZERO, Dd::from_f64(12.0));
        assert_eq!(z.exp_tau(), Cdd::ONE);
    }
}
