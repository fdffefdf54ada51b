//! The integral representations: harmonic progressions of any order, partial
//! Fourier sums, partial Lerch and polylogarithm sums, and the Lagrange
//! finite trigonometric sums.

mod fourier;
mod hp;
mod lagrange;
mod lerch;
pub mod tails;

pub use fourier::FourierKind;
pub use hp::SineVariant;
pub use lagrange::{lagrange_closed_form, lagrange_series_check, SeriesKind, TrigKind};
pub use lerch::lerch_dropped_pair;

use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_with, IntegrandSpec, QuadConfig, QuadratureResult, Route};
use serde::{Deserialize, Serialize};

/// `sum_{j=1}^{n} 1/(a j + b)^k` with integers `a != 0`, `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProgressionParams {
    pub a: i64,
    pub b: i64,
    pub k: u32,
    pub n: u64,
}

/// Largest `|a| n + |b|` accepted; keeps every `a j + b` exact in a double.
pub const MAX_LAST_TERM: i128 = 1 << 52;

impl ProgressionParams {
    pub fn new(a: i64, b: i64, k: u32, n: u64) -> Result<ProgressionParams> {
        let p = ProgressionParams { a, b, k, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a == 0 {
            return Err(Error::Validation("a must be nonzero".into()));
        }
        if self.k == 0 {
            return Err(Error::Validation("k must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(Error::Validation("n must be at least 1".into()));
        }
        if self.a.unsigned_abs() as i128 * self.n as i128 + self.b.unsigned_abs() as i128 > MAX_LAST_TERM {
            return Err(Error::Validation("a*n + b too large".into()));
        }
        if self.k > 60 {
            return Err(Error::Validation("k must be at most 60".into()));
        }
        // a j + b = 0 for some 1 <= j <= n?
        if self.b % self.a == 0 {
            let j = -(self.b / self.a);
            if j >= 1 && (j as u64) <= self.n {
                return Err(Error::Validation(format!("term j = {j} has a zero denominator")));
            }
        }
        Ok(())
    }

    /// `a n + b`.
    pub fn last(&self) -> i128 {
        self.a as i128 * self.n as i128 + self.b as i128
    }

    pub fn with_k(&self, k: u32) -> ProgressionParams {
        ProgressionParams { k, ..*self }
    }

    pub fn with_n(&self, n: u64) -> ProgressionParams {
        ProgressionParams { n, ..*self }
    }
}

/// Parameters of `sum cos or sin(2 pi (a j + b)/m) / (a j + b)^k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierParams {
    pub base: ProgressionParams,
    pub m: Cdd,
}

impl FourierParams {
    pub fn new(base: ProgressionParams, m: Cdd) -> Result<FourierParams> {
        base.validate()?;
        if m.is_zero() || !m.is_finite() {
            return Err(Error::Validation("m must be finite and nonzero".into()));
        }
        Ok(FourierParams { base, m })
    }
}

/// Parameters of `sum_{j=1}^{n} e^{m (j + b)} / (j + b)^k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LerchParams {
    pub b: Cdd,
    pub k: u32,
    pub m: Cdd,
    pub n: u64,
}

impl LerchParams {
    pub fn new(b: Cdd, k: u32, m: Cdd, n: u64) -> Result<LerchParams> {
        let l = LerchParams { b, k, m, n };
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > 40 {
            return Err(Error::Validation("k must be in 1..=40".into()));
        }
        if self.n == 0 || self.n as i128 > MAX_LAST_TERM {
            return Err(Error::Validation("n out of range".into()));
        }
        if !self.b.is_finite() || !self.m.is_finite() {
            return Err(Error::Validation("b and m must be finite".into()));
        }
        if self.b.is_real() && self.b.re.is_integer() {
            let b = self.b.re.to_f64();
            if b <= -1.0 && -b <= self.n as f64 {
                return Err(Error::Validation(format!("term j = {} has a zero denominator", -b)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    /// Relative accuracy requested for each result.
    pub tol: f64,
    /// Results smaller than this in magnitude are accepted once their
    /// absolute error is below `tol * abs_floor`.
    pub abs_floor: f64,
    /// Bound on the imaginary part of the exponential-kernel form.
    pub imag_residual_bound: f64,
    /// Below this `|m|` the Lerch sum is returned as the plain progression.
    pub eps_m: f64,
    pub quad: QuadConfig,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { tol: 1e-12, abs_floor: 1e-8, imag_residual_bound: 1e-10, eps_m: 1e-8, quad: QuadConfig::default() }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Validation(format!("tol must be in (0, 1), got {}", self.tol)));
        }
        if !(self.abs_floor >= 0.0) || !(self.eps_m >= 0.0) || !(self.imag_residual_bound > 0.0) {
            return Err(Error::Validation("bad evaluation configuration".into()));
        }
        self.quad.validate()
    }
}

/// A value with its error estimate and quadrature bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation<T> {
    pub value: T,
    pub abs_error_estimate: f64,
    /// Panels summed over every integral evaluated.
    pub panels: usize,
    pub integrals: usize,
    /// `Contour` if any integral took the complex-path route.
    pub route: Route,
}

impl Evaluation<Cdd> {
    fn real(self) -> Evaluation<Dd> {
        Evaluation { value: self.value.re, abs_error_estimate: self.abs_error_estimate, panels: self.panels, integrals: self.integrals, route: self.route }
    }
}

/// Smallest inner relative tolerance the refinement loop will request.
const MIN_INNER_TOL: f64 = 1e-28;

/// Running sum of formula terms.
#[derive(Clone, Debug)]
pub(crate) struct Acc {
    value: Cdd,
    mag: f64,
    err: f64,
    panels: usize,
    integrals: usize,
    route: Route,
}

impl Acc {
    fn new() -> Acc {
        Acc { value: Cdd::ZERO, mag: 0.0, err: 0.0, panels: 0, integrals: 0, route: Route::RealSegment }
    }

    /// A term computed to working precision.
    fn add(&mut self, v: Cdd) {
        self.value += v;
        self.mag += v.abs_f64();
    }

    /// `coef * e` for an ingredient carrying its own error.
    fn add_scaled(&mut self, coef: Cdd, e: &Evaluation<Cdd>) {
        let v = coef * e.value;
        self.value += v;
        self.mag += v.abs_f64();
        self.err += coef.abs_f64() * e.abs_error_estimate;
        self.absorb(e.panels, e.integrals, e.route);
    }

    fn add_integral(&mut self, r: &QuadratureResult) {
        self.value += r.value;
        self.mag += r.value.abs_f64();
        self.err += r.abs_error_estimate;
        self.absorb(r.panels, 1, r.route);
    }

    fn absorb(&mut self, panels: usize, integrals: usize, route: Route) {
        self.panels += panels;
        self.integrals += integrals;
        if route == Route::Contour {
            self.route = Route::Contour;
        }
    }

    fn finish(self) -> Evaluation<Cdd> {
        Evaluation {
            value: self.value,
            // rounding of the terms themselves
            abs_error_estimate: self.err + self.mag * 1e-30,
            panels: self.panels,
            integrals: self.integrals,
            route: self.route,
        }
    }
}

/// Entry point for every quadrature-backed formula.
#[derive(Clone, Debug, Default)]
pub struct Evaluator {
    pub cfg: EvalConfig,
}

impl Evaluator {
    pub fn new(cfg: EvalConfig) -> Result<Evaluator> {
        cfg.validate()?;
        Ok(Evaluator { cfg })
    }

    /// Same configuration with a different relative tolerance.
    pub fn with_tol(&self, tol: f64) -> Evaluator {
        Evaluator { cfg: EvalConfig { tol, ..self.cfg } }
    }

    fn quad(&self, spec: &IntegrandSpec, tol: f64) -> Result<QuadratureResult> {
        integrate_with(spec, tol, &self.cfg.quad)
    }

    /// Runs `pass` with an inner tolerance, tightening it until the combined
    /// error estimate meets `tol` relative to the result (or the absolute
    /// floor), or the inner tolerance bottoms out.
    fn refine<F: FnMut(f64) -> Result<Acc>>(&self, mut pass: F) -> Result<Evaluation<Cdd>> {
        let tol = self.cfg.tol;
        let mut inner = (tol * 0.1).max(MIN_INNER_TOL);
        loop {
            let acc = pass(inner)?;
            let e = acc.finish();
            let target = tol * e.value.abs_f64().max(self.cfg.abs_floor);
            if e.abs_error_estimate <= target {
                return Ok(e);
            }
            if inner <= MIN_INNER_TOL {
                return Err(Error::ToleranceNotMet { best: e.value, err: e.abs_error_estimate });
            }
            let shrink = (target / e.abs_error_estimate).clamp(1e-12, 0.5);
            inner = (inner * shrink * 0.5).max(MIN_INNER_TOL);
        }
    }
}

fn i_pow(k: u32) -> Cdd {
    match k % 4 {
        0 => Cdd::ONE,
        1 => Cdd::I,
        2 => -Cdd::ONE,
        _ => -Cdd::I,
    }
}

fn sign(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn inv_factorial(k: u32) -> Dd {
    let t = crate::dd::inv_factorials();
    if (k as usize) < t.len() {
        t[k as usize]
    } else {
        crate::exact::rational_to_dd(&crate::exact::factorial(k).recip())
    }
}
