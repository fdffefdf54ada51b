//! Adaptive integration over `[0, 1]` of `kernel(u) * numerator(u) * cot/coth`
//! integrands whose poles on the segment are removable.
//!
//! Frequencies are stored in turns: a numerator atom `sin(2*pi*f*u)` keeps
//! `f`, and the cot factor `cot(2*pi*s*u)` keeps `s`. Integer turns then
//! reduce exactly.

mod contour;
pub(crate) mod gk;

use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::kernels::KernelPoly;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// `cot(2*pi*s*u)` or `coth(2*pi*s*u)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CotFactor {
    Trig { s: Cdd },
    Hyper { s: Cdd },
}

impl CotFactor {
    /// `cot(pi * a * u / m)`.
    pub fn cot_pi(a: Cdd, m: Cdd) -> CotFactor {
        CotFactor::Trig { s: (a / m).ldexp(-1) }
    }

    /// `coth(m * u / 2)`.
    pub fn coth_half(m: Cdd) -> CotFactor {
        CotFactor::Hyper { s: m.scale(Dd::FRAC_1_TAU).ldexp(-1) }
    }

    /// The multiplier of `u` inside cot or coth.
    pub fn scale(&self) -> Cdd {
        match self {
            CotFactor::Trig { s } | CotFactor::Hyper { s } => s.scale(Dd::TAU),
        }
    }

    fn turns(&self) -> Cdd {
        match self {
            CotFactor::Trig { s } | CotFactor::Hyper { s } => *s,
        }
    }

    fn eval(&self, u: Dd) -> Cdd {
        match *self {
            CotFactor::Trig { s } if s.is_real() => {
                let (sn, cs) = (s.re * u).sin_cos_turns();
                Cdd::real(cs / sn)
            }
            CotFactor::Trig { s } => s.scale(u).scale(Dd::TAU).cot(),
            CotFactor::Hyper { s } => s.scale(u).scale(Dd::TAU).coth(),
        }
    }
}

/// The numerator, built from `exp`, `sin` and `cos` of `2*pi*f*u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Numerator {
    Zero,
    /// `exp(2 pi f1 u) - exp(2 pi f0 u)`
    ExpDiff {
        f1: Cdd,
        f0: Cdd,
    },
    /// `sin(2 pi f1 u) - sin(2 pi f0 u)`
    SinDiff {
        f1: Cdd,
        f0: Cdd,
    },
    /// `cos(2 pi f1 u) - cos(2 pi f0 u)`
    CosDiff {
        f1: Cdd,
        f0: Cdd,
    },
    /// `sin(2 pi f1 u) * sin(2 pi f0 u)`
    SinSin {
        f1: Cdd,
        f0: Cdd,
    },
    /// `cos(2 pi f1 u) * sin(2 pi f0 u)`
    CosSin {
        f1: Cdd,
        f0: Cdd,
    },
}

#[derive(Clone, Copy)]
enum Atom {
    Exp(Cdd),
    Sin(Cdd),
    Cos(Cdd),
}

impl Atom {
    fn freq(&self) -> Cdd {
        match *self {
            Atom::Exp(f) | Atom::Sin(f) | Atom::Cos(f) => f,
        }
    }

    fn value(&self, u: Dd) -> Cdd {
        match *self {
            Atom::Exp(f) => f.scale(u).exp_tau(),
            Atom::Sin(f) => f.scale(u).sin_turns(),
            Atom::Cos(f) => f.scale(u).cos_turns(),
        }
    }

    /// Value and first three derivatives.
    fn derivs(&self, u: Dd) -> [Cdd; 4] {
        let w = self.freq().scale(Dd::TAU);
        let w2 = w * w;
        let w3 = w2 * w;
        match *self {
            Atom::Exp(_) => {
                let e = self.value(u);
                [e, w * e, w2 * e, w3 * e]
            }
            Atom::Sin(f) | Atom::Cos(f) => {
                let z = f.scale(u);
                let (s, c) = (z.sin_turns(), z.cos_turns());
                if matches!(self, Atom::Sin(_)) {
                    [s, w * c, -(w2 * s), -(w3 * c)]
                } else {
                    [c, -(w * s), -(w2 * c), w3 * s]
                }
            }
        }
    }
}

enum Shape {
    Zero,
    Diff(Atom, Atom),
    Prod(Atom, Atom),
}

impl Numerator {
    fn shape(&self) -> Shape {
        match *self {
            Numerator::Zero => Shape::Zero,
            Numerator::ExpDiff { f1, f0 } => Shape::Diff(Atom::Exp(f1), Atom::Exp(f0)),
            Numerator::SinDiff { f1, f0 } => Shape::Diff(Atom::Sin(f1), Atom::Sin(f0)),
            Numerator::CosDiff { f1, f0 } => Shape::Diff(Atom::Cos(f1), Atom::Cos(f0)),
            Numerator::SinSin { f1, f0 } => Shape::Prod(Atom::Sin(f1), Atom::Sin(f0)),
            Numerator::CosSin { f1, f0 } => Shape::Prod(Atom::Cos(f1), Atom::Sin(f0)),
        }
    }

    pub fn eval(&self, u: Dd) -> Cdd {
        match self.shape() {
            Shape::Zero => Cdd::ZERO,
            Shape::Diff(x, y) => x.value(u) - y.value(u),
            Shape::Prod(x, y) => x.value(u) * y.value(u),
        }
    }

    /// Value and derivatives up to the third.
    pub fn derivs(&self, u: Dd) -> [Cdd; 4] {
        match self.shape() {
            Shape::Zero => [Cdd::ZERO; 4],
            Shape::Diff(x, y) => {
                let (p, q) = (x.derivs(u), y.derivs(u));
                [p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3]]
            }
            Shape::Prod(x, y) => {
                let (p, q) = (x.derivs(u), y.derivs(u));
                let three = Dd::from_f64(3.0);
                [
                    p[0] * q[0],
                    p[1] * q[0] + p[0] * q[1],
                    p[2] * q[0] + (p[1] * q[1]).ldexp(1) + p[0] * q[2],
                    p[3] * q[0] + (p[2] * q[1] + p[1] * q[2]).scale(three) + p[0] * q[3],
                ]
            }
        }
    }

    /// Magnitude of the parts, used as the reference scale of the
    /// removability check.
    fn magnitude(&self, u: Dd) -> f64 {
        match self.shape() {
            Shape::Zero => 0.0,
            Shape::Diff(x, y) => x.value(u).abs_f64() + y.value(u).abs_f64(),
            Shape::Prod(x, y) => x.value(u).abs_f64().max(1.0) * y.value(u).abs_f64().max(1.0),
        }
    }

    /// Largest real frequency in turns per unit `u`.
    fn max_freq(&self) -> f64 {
        match self.shape() {
            Shape::Zero => 0.0,
            Shape::Diff(x, y) | Shape::Prod(x, y) => {
                let fx = match x {
                    Atom::Exp(f) => f.im.to_f64().abs(),
                    Atom::Sin(f) | Atom::Cos(f) => f.re.to_f64().abs(),
                };
                let fy = match y {
                    Atom::Exp(f) => f.im.to_f64().abs(),
                    Atom::Sin(f) | Atom::Cos(f) => f.re.to_f64().abs(),
                };
                fx.max(fy)
            }
        }
    }

    fn atoms(&self) -> Vec<Atom> {
        match self.shape() {
            Shape::Zero => Vec::new(),
            Shape::Diff(x, y) | Shape::Prod(x, y) => vec![x, y],
        }
    }

    /// Largest `|2 pi f|` over the atoms, complex frequencies included.
    fn max_rate(&self) -> f64 {
        self.atoms().iter().map(|a| a.freq().abs_f64() * std::f64::consts::TAU).fold(0.0, f64::max)
    }

    /// Breakpoints resolving the boundary layer of a fast real exponential:
    /// `2^i / r` away from the end where `e^{2 pi f u}` is largest.
    fn layer_points(&self) -> Vec<Dd> {
        let mut out = Vec::new();
        for atom in self.atoms() {
            let Atom::Exp(f) = atom else { continue };
            let r = f.re.to_f64() * std::f64::consts::TAU;
            if r.abs() < LAYER_RATE {
                continue;
            }
            let mut d = 1.0 / r.abs();
            while d < 0.5 {
                let x = Dd::from_f64(d);
                out.push(if r < 0.0 { x } else { Dd::ONE - x });
                d *= 4.0;
            }
        }
        out
    }
}

/// Decay rate above which exponential layers get explicit breakpoints.
const LAYER_RATE: f64 = 64.0;

/// Which part of the periodic integral a spec represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    Complex,
    Real,
    Imag,
}

/// Declares that `numerator * cot` equals the chosen part of
/// `(e^{2 pi i c1 u} - e^{2 pi i c0 u}) cot(pi a u)` with integers `a, c0, c1`.
/// The integrand is then entire and may be integrated along a path in the
/// upper half plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContourForm {
    pub a: i64,
    pub c1: i128,
    pub c0: i128,
    pub projection: Projection,
}

#[derive(Clone, Debug)]
pub struct IntegrandSpec {
    pub numerator: Numerator,
    pub cot: CotFactor,
    pub kernel: Arc<KernelPoly>,
    pub prefactor: Cdd,
    pub contour: Option<ContourForm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    RealSegment,
    Contour,
}

#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub value: Cdd,
    pub abs_error_estimate: f64,
    pub panels: usize,
    pub singular_points: Vec<f64>,
    pub route: Route,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadConfig {
    /// Half-width of the window around a singular point where the series
    /// form replaces direct evaluation.
    pub eps_switch: f64,
    /// Minimum distance between an off-segment pole and `[0, 1]`.
    pub delta_pole: f64,
    /// Maximum number of panels per integral.
    pub panel_budget: usize,
    /// Allow the complex-path route for periodic integrands.
    pub contour: bool,
    /// Minimum decay exponent `2 pi min(c1, a n) H` for that route.
    pub contour_threshold: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { eps_switch: 1e-6, delta_pole: 1e-3, panel_budget: 4096, contour: true, contour_threshold: 90.0 }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.eps_switch > 0.0 && self.eps_switch < 0.01 && self.delta_pole > 0.0 && self.panel_budget >= 1 && self.contour_threshold >= 80.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Validation(format!("bad quadrature configuration {self:?}")))
        }
    }
}

/// Singular points of the cot/coth factor on `[0, 1]`, sorted.
///
/// Poles off the segment but within `delta_pole` of it are rejected with
/// `NearPole`, and so are poles of a coth factor at nonzero points of the
/// segment.
pub fn singular_points(cot: &CotFactor, delta_pole: f64) -> Result<Vec<Dd>> {
    let s = cot.turns();
    if s.is_zero() {
        return Err(Error::Validation("cot scale is zero".into()));
    }
    let mut out = vec![Dd::ZERO];
    let two_s = s.ldexp(1);
    let reach = (two_s.abs_f64() * 2.0).ceil() as i64 + 1;
    let hyper = matches!(cot, CotFactor::Hyper { .. });
    if !hyper && s.is_real() {
        let w = two_s.re.abs();
        let mut j = 1i64;
        loop {
            let u = Dd::from_i64(j) / w;
            if (u - Dd::ONE).to_f64().abs() < 1e-25 {
                out.push(Dd::ONE);
                break;
            }
            if u > Dd::ONE {
                let d = (u - Dd::ONE).to_f64();
                if d < delta_pole {
                    return Err(Error::NearPole { distance: d });
                }
                break;
            }
            out.push(u);
            j += 1;
        }
        return Ok(out);
    }
    for j in (-reach..=reach).filter(|&j| j != 0) {
        // poles at j/(2s) for cot, i*j/(2s) for coth
        let p = Cdd::real(Dd::from_i64(j)) / two_s;
        let p = if hyper { p.mul_i() } else { p };
        let d = distance_to_unit_segment(p);
        if d < delta_pole {
            return Err(Error::NearPole { distance: d });
        }
    }
    Ok(out)
}

fn distance_to_unit_segment(p: Cdd) -> f64 {
    let x = p.re.to_f64();
    let y = p.im.to_f64();
    let dx = if x < 0.0 {
        -x
    } else if x > 1.0 {
        x - 1.0
    } else {
        0.0
    };
    dx.hypot(y)
}

struct Guard {
    at: Dd,
    n1: Cdd,
    n2: Cdd,
    n3: Cdd,
}

/// An integrand with its singular points resolved.
pub struct Prepared<'a> {
    spec: &'a IntegrandSpec,
    points: Vec<Dd>,
    guards: Vec<Guard>,
    sigma: Cdd,
    sign: f64,
    eps: f64,
}

impl<'a> Prepared<'a> {
    pub fn new(spec: &'a IntegrandSpec, cfg: &QuadConfig) -> Result<Prepared<'a>> {
        let points = singular_points(&spec.cot, cfg.delta_pole)?;
        let mut guards = Vec::with_capacity(points.len());
        for &p in &points {
            let d = spec.numerator.derivs(p);
            let scale = spec.numerator.magnitude(p).max(1.0);
            if d[0].abs_f64() > 1e-20 * scale {
                return Err(Error::NonRemovable { at: p.to_f64() });
            }
            guards.push(Guard { at: p, n1: d[1], n2: d[2], n3: d[3] });
        }
        let sign = match spec.cot {
            CotFactor::Trig { .. } => -1.0,
            CotFactor::Hyper { .. } => 1.0,
        };
        // the truncated expansion is only good while the phase across the window is small
        let rate = spec.numerator.max_rate() + spec.cot.scale().abs_f64();
        let eps = cfg.eps_switch.min(1e-3 / rate.max(1e-300));
        Ok(Prepared { spec, points, guards, sigma: spec.cot.scale(), sign, eps })
    }

    pub fn singular_points(&self) -> &[Dd] {
        &self.points
    }

    /// `numerator * cot` without kernel or prefactor.
    fn core(&self, u: Dd) -> Cdd {
        for g in &self.guards {
            let t = u - g.at;
            if t.to_f64().abs() < self.eps {
                return self.guarded(g, t);
            }
        }
        self.spec.numerator.eval(u) * self.spec.cot.eval(u)
    }

    // numerator * cot(sigma t) ~ [N1 + N2 t/2 + t^2 (N3/6 -+ sigma^2 N1/3)] / sigma
    fn guarded(&self, g: &Guard, t: Dd) -> Cdd {
        let s2 = self.sigma * self.sigma;
        let c2 = g.n3.scale(Dd::ONE.div_f64(6.0)) + (s2 * g.n1).scale(Dd::ONE.div_f64(3.0)).scale_f64(self.sign);
        let poly = g.n1 + g.n2.scale(t).ldexp(-1) + c2.scale(t.sqr());
        poly / self.sigma
    }

    /// Full integrand value at `u`, prefactor included.
    pub fn eval(&self, u: Dd) -> Cdd {
        let k = self.spec.kernel.eval_real(u);
        self.spec.prefactor * self.core(u).scale(k)
    }

    /// The integrand's limit at singular point `i`.
    pub fn guarded_limit(&self, i: usize) -> Cdd {
        let g = &self.guards[i];
        let k = self.spec.kernel.eval_real(g.at);
        self.spec.prefactor * (g.n1 / self.sigma).scale(k)
    }

    /// Initial panels per unit length: one per two periods.
    fn panel_density(&self) -> f64 {
        let f = self.spec.numerator.max_freq() + self.spec.cot.turns().re.to_f64().abs();
        (f / 2.0).ceil().max(1.0)
    }
}

/// Integrates with default knobs.
pub fn integrate(spec: &IntegrandSpec, tol: f64) -> Result<QuadratureResult> {
    integrate_with(spec, tol, &QuadConfig::default())
}

pub fn integrate_with(spec: &IntegrandSpec, tol: f64, cfg: &QuadConfig) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::Validation(format!("tolerance must be positive, got {tol}")));
    }
    cfg.validate()?;
    if let (true, Some(form)) = (cfg.contour, spec.contour) {
        if contour::eligible(&form, cfg.contour_threshold) {
            let points = singular_points(&spec.cot, cfg.delta_pole)?;
            let (j, err, panels) = contour::integrate(&spec.kernel, &form, tol, cfg.panel_budget)?;
            let v = match form.projection {
                Projection::Complex => j,
                Projection::Real => Cdd::real(j.re),
                Projection::Imag => Cdd::real(j.im),
            };
            return Ok(QuadratureResult {
                value: spec.prefactor * v,
                abs_error_estimate: err * spec.prefactor.abs_f64(),
                panels,
                singular_points: points.iter().map(|p| p.to_f64()).collect(),
                route: Route::Contour,
            });
        }
    }
    let prep = Prepared::new(spec, cfg)?;
    let singular_points: Vec<f64> = prep.points.iter().map(|p| p.to_f64()).collect();
    if matches!(spec.numerator, Numerator::Zero) {
        return Ok(QuadratureResult { value: Cdd::ZERO, abs_error_estimate: 0.0, panels: 0, singular_points, route: Route::RealSegment });
    }
    let mut breaks = prep.points.clone();
    breaks.extend(spec.numerator.layer_points());
    breaks.push(Dd::ZERO);
    breaks.push(Dd::ONE);
    breaks.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    breaks.dedup();
    let core = |u: Dd| prep.core(u).scale(spec.kernel.eval_real(u));
    let target = gk::Target { rel: tol, abs: 0.0 };
    let density = prep.panel_density();
    let initial = |len: f64| ((density * len).ceil() as usize).clamp(1, 1024);
    let r = gk::adaptive(&core, &breaks, &initial, target, cfg.panel_budget);
    let pf = spec.prefactor.abs_f64();
    if !r.converged {
        return Err(Error::ToleranceNotMet { best: spec.prefactor * r.value, err: r.err * pf });
    }
    Ok(QuadratureResult { value: spec.prefactor * r.value, abs_error_estimate: r.err * pf, panels: r.panels, singular_points, route: Route::RealSegment })
}
