//! Complex-path evaluation of
//! `J = int_0^1 K(u) (e^{2 pi i c1 u} - e^{2 pi i c0 u}) cot(pi a u) du`
//! for integers `a > 0`, `c1 = c0 + a n`, where the integrand is entire.
//!
//! The segment is replaced by `0 -> iH -> 1+iH -> 1`. On the top side the
//! `c1` exponential is below `e^{-2 pi c1 H}` and the rest is smooth. The two
//! vertical sides combine by periodicity into a real-variable integral whose
//! `1/y` part is integrated in closed form through `Ein`.

use super::gk::{adaptive, Target};
use super::ContourForm;
use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::kernels::KernelPoly;
use num_traits::Zero;

fn normalized(form: &ContourForm) -> (i64, i128, i128, bool) {
    if form.a < 0 {
        (-form.a, -form.c1, -form.c0, true)
    } else {
        (form.a, form.c1, form.c0, false)
    }
}

// A negative c0 grows along the vertical sides, so the path stays low.
fn height(c0: i128) -> f64 {
    if c0 >= 0 {
        0.5
    } else {
        0.5 / (c0.unsigned_abs() as f64)
    }
}

pub(crate) fn eligible(form: &ContourForm, threshold: f64) -> bool {
    if form.a == 0 {
        return false;
    }
    let (a, c1, c0, _) = normalized(form);
    let an = c1 - c0;
    if an <= 0 || an % a as i128 != 0 {
        return false;
    }
    let h = height(c0);
    std::f64::consts::TAU * (c1.min(an) as f64) * h >= threshold
}

/// Returns `(J, error estimate, panels)`; the projection is left to the caller.
pub(crate) fn integrate(kernel: &KernelPoly, form: &ContourForm, tol: f64, budget: usize) -> Result<(Cdd, f64, usize)> {
    let (a, c1, c0, flipped) = normalized(form);
    let (j, err, panels) = integrate_positive(kernel, a, c1, c0, tol, budget)?;
    // J(a, c0, c1) = -conj(J(-a, -c0, -c1)) for a real kernel
    let j = if flipped { -j.conj() } else { j };
    Ok((j, err, panels))
}

fn integrate_positive(kernel: &KernelPoly, a: i64, c1: i128, c0: i128, tol: f64, budget: usize) -> Result<(Cdd, f64, usize)> {
    let h = Dd::from_f64(height(c0));
    let ad = Dd::from_i64(a);
    let an = Dd::from_i128(c1 - c0);
    let c = an * Dd::TAU;
    let c0d = Dd::from_i128(c0);
    let c1d = Dd::from_i128(c1);
    let pi_a = Dd::PI * ad;

    // Delta K(y) = K(iy) - K(1+iy) = -sum_q i^q d_q y^q, d_q = sum_{p>q} kappa_p C(p,q)
    let kappa = kernel.coeffs_in_u();
    let deg = kappa.len().saturating_sub(1);
    let mut dk: Vec<Cdd> = Vec::with_capacity(deg.max(1));
    for q in 0..deg.max(1) {
        let mut d = Rational::zero();
        for (p, kp) in kappa.iter().enumerate().skip(q + 1) {
            d += kp * Rational::from_integer(exact::binomial(p as u32, q as u32));
        }
        let d = -exact::rational_to_dd(&d);
        let e = match q % 4 {
            0 => Cdd::real(d),
            1 => Cdd::new(Dd::ZERO, d),
            2 => Cdd::real(-d),
            _ => Cdd::new(Dd::ZERO, -d),
        };
        dk.push(e);
    }
    let g0 = dk[0];
    let delta_k = |y: Dd| Cdd::horner_c(&dk, Cdd::real(y));
    // (Delta K(y) - g0) / y
    let delta_k_tail = |y: Dd| Cdd::horner_c(&dk[1..], Cdd::real(y));
    let two_pi_c0 = c0d * Dd::TAU;

    // B(y) = coth(pi a y) g(y) - g0 / (pi a y), g(y) = e^{-2 pi c0 y} Delta K(y)
    let b_fn = |y: Dd| -> Cdd {
        let x = pi_a * y;
        let e = (-(two_pi_c0 * y)).exp();
        if x.hi() < 0.5 {
            let g = delta_k(y).scale(e);
            let em1 = (-(two_pi_c0 * y)).expm1() / y;
            let diff = delta_k_tail(y).scale(e) + g0.scale(em1);
            g.scale(x.coth_minus_recip()) + diff / pi_a
        } else {
            delta_k(y).scale(e * x.coth()) - g0 / x
        }
    };

    let target = Target { rel: tol / 8.0, abs: 0.0 };
    let mut panels = 0;
    let mut err = 0.0;

    let ib = adaptive(&b_fn, &[Dd::ZERO, h], &|_| 1, target, budget);
    check(&ib)?;
    panels += ib.panels;
    err += ib.err;

    let tmax = (c * h).to_f64().min(100.0);
    let mut br = vec![Dd::ZERO];
    for t in [1.0, 10.0] {
        if t < tmax {
            br.push(Dd::from_f64(t));
        }
    }
    br.push(Dd::from_f64(tmax));
    let l_fn = |t: Dd| b_fn(t / c).scale((-t).exp());
    let il = adaptive(&l_fn, &br, &|_| 1, target, budget);
    check(&il)?;
    panels += il.panels;
    err += il.err / c.to_f64();
    let il_v = il.value / c;

    let ein = Dd::EULER_GAMMA + (c * h).ln();
    let v = -(ib.value - il_v + (g0 / pi_a).scale(ein));

    let c1_live = (Dd::TAU * c1d * h).to_f64() < 110.0;
    let top = |x: Dd| -> Cdd {
        let z = Cdd::new(x, h);
        let k = kernel.eval(z);
        // e^{2 pi i c z} = exp_tau(i c z)
        let mut num = -(z.scale(c0d).mul_i().exp_tau());
        if c1_live {
            num += z.scale(c1d).mul_i().exp_tau();
        }
        k * num * z.scale(pi_a).cot()
    };
    let t = adaptive(&top, &[Dd::ZERO, Dd::HALF, Dd::ONE], &|_| 1, target, budget);
    check(&t)?;
    panels += t.panels;
    err += t.err;

    Ok((t.value + v, err, panels))
}

fn check(r: &super::gk::Adaptive) -> Result<()> {
    if r.converged {
        Ok(())
    } else {
        Err(Error::ToleranceNotMet { best: r.value, err: r.err })
    }
}
