//! Problem instances, verification sweeps against the oracle and timing runs.

use crate::closed_forms::{lagrange_closed_form, Evaluation, Evaluator, FourierKind, FourierParams, LerchParams, ProgressionParams, SineVariant, TrigKind};
use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::oracle::{self, HighPrecScalar};
use crate::quadrature::Route;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Which representation evaluates a harmonic progression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HpMethod {
    /// Exponential kernel, any order.
    Exp,
    /// Sine approach, sum-form integrand.
    Sine,
    /// Sine approach, product-form integrand.
    SineProduct,
    /// Recursion over orders of the same parity.
    Recursive,
}

impl HpMethod {
    pub const ALL: [HpMethod; 4] = [HpMethod::Exp, HpMethod::Sine, HpMethod::SineProduct, HpMethod::Recursive];

    fn name(self) -> &'static str {
        match self {
            HpMethod::Exp => "exp",
            HpMethod::Sine => "sine",
            HpMethod::SineProduct => "sine_product",
            HpMethod::Recursive => "recursive",
        }
    }
}

/// One quantity with its parameters. Complex parameters are `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "quantity", rename_all = "snake_case")]
pub enum Instance {
    Hp { method: HpMethod, a: i64, b: i64, k: u32, n: u64 },
    Fourier { kind: FourierKind, a: i64, b: i64, k: u32, n: u64, m: [f64; 2] },
    Lerch { b: [f64; 2], k: u32, m: [f64; 2], n: u64 },
    Polylog { k: u32, m: [f64; 2], n: u64 },
    Lagrange { kind: TrigKind, a: f64, b: f64, n: f64, big_k: u32 },
}

fn cdd(z: [f64; 2]) -> Cdd {
    Cdd::from_f64(z[0], z[1])
}

fn real(e: Evaluation<Dd>) -> Evaluation<Cdd> {
    Evaluation { value: Cdd::real(e.value), abs_error_estimate: e.abs_error_estimate, panels: e.panels, integrals: e.integrals, route: e.route }
}

impl Instance {
    /// Stable sort key, also used as the record id.
    pub fn key(&self) -> String {
        match self {
            Instance::Hp { method, a, b, k, n } => format!("hp/{}/a={a}/b={b}/k={k:02}/n={n:010}", method.name()),
            Instance::Fourier { kind, a, b, k, n, m } => {
                format!("fourier/{kind:?}/m={:+.6e},{:+.6e}/a={a}/b={b}/k={k:02}/n={n:010}", m[0], m[1]).to_lowercase()
            }
            Instance::Lerch { b, k, m, n } => format!("lerch/m={:+.6e},{:+.6e}/b={:+.6e},{:+.6e}/k={k:02}/n={n:010}", m[0], m[1], b[0], b[1]),
            Instance::Polylog { k, m, n } => format!("polylog/m={:+.6e},{:+.6e}/k={k:02}/n={n:010}", m[0], m[1]),
            Instance::Lagrange { kind, a, b, n, big_k } => format!("lagrange/{kind:?}/a={a:+.17e}/b={b:+.17e}/n={n:+.17e}/K={big_k:02}").to_lowercase(),
        }
    }

    pub fn progression(&self) -> Option<ProgressionParams> {
        match *self {
            Instance::Hp { a, b, k, n, .. } | Instance::Fourier { a, b, k, n, .. } => Some(ProgressionParams { a, b, k, n }),
            _ => None,
        }
    }

    /// Checks the parameters without evaluating anything.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Instance::Hp { method, a, b, k, n } => {
                ProgressionParams::new(a, b, k, n)?;
                if method == HpMethod::SineProduct && k == 0 {
                    return Err(Error::Validation("k must be at least 1".into()));
                }
                Ok(())
            }
            Instance::Fourier { a, b, k, n, m, .. } => FourierParams::new(ProgressionParams::new(a, b, k, n)?, cdd(m)).map(|_| ()),
            Instance::Lerch { b, k, m, n } => LerchParams::new(cdd(b), k, cdd(m), n).map(|_| ()),
            Instance::Polylog { k, m, n } => LerchParams::new(Cdd::ZERO, k, cdd(m), n).map(|_| ()),
            Instance::Lagrange { a, b, n, big_k, .. } => {
                if big_k == 0 || !(a.is_finite() && b.is_finite() && n.is_finite()) {
                    return Err(Error::Validation("K must be positive and a, b, n finite".into()));
                }
                Ok(())
            }
        }
    }

    /// Evaluates through the integral representations.
    pub fn evaluate(&self, ev: &Evaluator) -> Result<Evaluation<Cdd>> {
        match *self {
            Instance::Hp { method, a, b, k, n } => {
                let p = ProgressionParams::new(a, b, k, n)?;
                let e = match method {
                    HpMethod::Exp => ev.hp_exp(&p)?,
                    HpMethod::Sine => ev.hp_sine(&p, SineVariant::Sum)?,
                    HpMethod::SineProduct => ev.hp_sine(&p, SineVariant::Product)?,
                    HpMethod::Recursive => ev.hp_recursive(&p)?,
                };
                Ok(real(e))
            }
            Instance::Fourier { kind, a, b, k, n, m } => ev.fourier(&FourierParams::new(ProgressionParams::new(a, b, k, n)?, cdd(m))?, kind),
            Instance::Lerch { b, k, m, n } => ev.lerch_partial(&LerchParams::new(cdd(b), k, cdd(m), n)?),
            Instance::Polylog { k, m, n } => ev.polylog_partial(k, cdd(m), n),
            Instance::Lagrange { kind, a, b, n, big_k } => {
                let v = lagrange_closed_form(kind, Dd::from_f64(a), Dd::from_f64(b), Dd::from_f64(n), big_k)?;
                Ok(Evaluation { value: Cdd::real(v), abs_error_estimate: 0.0, panels: 0, integrals: 0, route: Route::RealSegment })
            }
        }
    }

    /// Direct summation. Call only on validated instances.
    pub fn oracle(&self) -> HighPrecScalar {
        match *self {
            Instance::Hp { a, b, k, n, .. } => oracle::sum_hp(&ProgressionParams { a, b, k, n }),
            Instance::Fourier { kind, a, b, k, n, m } => oracle::sum_fourier(&FourierParams { base: ProgressionParams { a, b, k, n }, m: cdd(m) }, kind),
            Instance::Lerch { b, k, m, n } => oracle::sum_lerch(&LerchParams { b: cdd(b), k, m: cdd(m), n }),
            Instance::Polylog { k, m, n } => oracle::sum_lerch(&LerchParams { b: Cdd::ZERO, k, m: cdd(m), n }),
            Instance::Lagrange { kind, a, b, n, big_k } => oracle::sum_lagrange(kind, Dd::from_f64(a), Dd::from_f64(b), Dd::from_f64(n), big_k),
        }
    }
}

/// Parameter grid for a sweep; every combination that validates is run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub hp: Option<HpGrid>,
    pub fourier: Option<FourierGrid>,
    pub lerch: Option<LerchGrid>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HpGrid {
    pub methods: Vec<HpMethod>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub k: Vec<u32>,
    pub n: Vec<u64>,
}

/// Each `k` is paired with both kinds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierGrid {
    pub m: Vec<[f64; 2]>,
    pub kinds: Vec<FourierKind>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub k: Vec<u32>,
    pub n: Vec<u64>,
}

/// `b = [0, 0]` runs the polylogarithm form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LerchGrid {
    pub m: Vec<[f64; 2]>,
    pub b: Vec<[f64; 2]>,
    pub k: Vec<u32>,
    pub n: Vec<u64>,
}

/// Complex `m` used in the default Fourier grid: every pole `j m / a` of
/// `cot(pi a u / m)` other than `u = 0` stays at least 0.25 from `[0, 1]`.
pub const COMPLEX_FOURIER_M: [f64; 2] = [3.0, 0.5];

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::empty()
    }
}

impl GridSpec {
    pub fn empty() -> GridSpec {
        GridSpec { hp: None, fourier: None, lerch: None }
    }

    pub fn default_hp() -> HpGrid {
        HpGrid { methods: HpMethod::ALL.to_vec(), a: vec![1, 2, 3, 5], b: vec![0, 1, 2, 7, -1], k: (1..=8).collect(), n: vec![1, 2, 5, 10, 50] }
    }

    pub fn default_fourier() -> FourierGrid {
        FourierGrid {
            m: vec![[1.0, 0.0], [2.0, 0.0], [3.0, 0.0], [3.5, 0.0], [std::f64::consts::E, 0.0], COMPLEX_FOURIER_M],
            kinds: vec![FourierKind::Cos, FourierKind::Sin],
            a: vec![1, 2],
            b: vec![0, 1],
            k: (1..=6).collect(),
            n: vec![1, 5, 25],
        }
    }

    pub fn default_lerch() -> LerchGrid {
        LerchGrid {
            m: vec![[-1.0, 0.0], [-0.5, 0.0], [0.0, std::f64::consts::FRAC_PI_4], [0.5, 1.0 / 3.0]],
            b: vec![[0.0, 0.0], [0.5, 0.0], [1.0, 0.0], [2.0, 0.0]],
            k: (1..=6).collect(),
            n: vec![1, 5, 25],
        }
    }

    /// The full acceptance grid.
    pub fn acceptance() -> GridSpec {
        GridSpec { hp: Some(GridSpec::default_hp()), fourier: Some(GridSpec::default_fourier()), lerch: Some(GridSpec::default_lerch()) }
    }

    /// Valid instances, sorted by key.
    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        if let Some(g) = &self.hp {
            for &method in &g.methods {
                for &a in &g.a {
                    for &b in &g.b {
                        for &k in &g.k {
                            for &n in &g.n {
                                out.push(Instance::Hp { method, a, b, k, n });
                            }
                        }
                    }
                }
            }
        }
        if let Some(g) = &self.fourier {
            for &m in &g.m {
                for &kind in &g.kinds {
                    for &a in &g.a {
                        for &b in &g.b {
                            for &k in &g.k {
                                for &n in &g.n {
                                    out.push(Instance::Fourier { kind, a, b, k, n, m });
                                }
                            }
                        }
                    }
                }
            }
        }
        if let Some(g) = &self.lerch {
            for &m in &g.m {
                for &b in &g.b {
                    for &k in &g.k {
                        for &n in &g.n {
                            if b == [0.0, 0.0] {
                                out.push(Instance::Polylog { k, m, n });
                            } else {
                                out.push(Instance::Lerch { b, k, m, n });
                            }
                        }
                    }
                }
            }
        }
        out.retain(|i| i.validate().is_ok());
        out.sort_by_key(|i| i.key());
        out.dedup();
        out
    }
}

/// Pass/fail thresholds for a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    /// Largest accepted `|closed - oracle| / max(|oracle|, 1e-30)`.
    pub rel: f64,
    /// When the oracle is below `1e-30` in magnitude the sum is zero at
    /// working precision; the closed form must then be below this.
    pub zero_abs: f64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { rel: 1e-9, zero_abs: 1e-12 }
    }
}

/// Magnitudes below this count as an exactly vanishing sum.
pub const ZERO_FLOOR: f64 = 1e-30;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Failed,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub instance: Instance,
    pub status: Status,
    /// Error message when evaluation itself failed.
    pub message: Option<String>,
    pub value: Option<[f64; 2]>,
    pub oracle: [f64; 2],
    pub abs_error: Option<f64>,
    pub rel_error: Option<f64>,
    pub error_estimate: Option<f64>,
    pub panels: usize,
    pub integrals: usize,
    pub route: Option<Route>,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub failures: usize,
    pub max_rel_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub bounds: Bounds,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Summary {
    pub fn from_records(records: &[Record]) -> Summary {
        Summary {
            records: records.len(),
            failures: records.iter().filter(|r| r.status != Status::Ok).count(),
            max_rel_error: records.iter().filter_map(|r| r.rel_error).fold(0.0, f64::max),
        }
    }
}

fn pair(z: Cdd) -> [f64; 2] {
    [z.re.to_f64(), z.im.to_f64()]
}

/// Evaluates one instance and compares it with the oracle.
pub fn check(ev: &Evaluator, inst: &Instance, bounds: &Bounds) -> Record {
    let start = Instant::now();
    let got = inst.evaluate(ev);
    let seconds = start.elapsed().as_secs_f64();
    let truth = inst.oracle().to_cdd();
    let mut rec = Record {
        id: inst.key(),
        instance: inst.clone(),
        status: Status::Error,
        message: None,
        value: None,
        oracle: pair(truth),
        abs_error: None,
        rel_error: None,
        error_estimate: None,
        panels: 0,
        integrals: 0,
        route: None,
        seconds,
    };
    match got {
        Err(e) => rec.message = Some(e.to_string()),
        Ok(e) => {
            let abs = (e.value - truth).abs_f64();
            let scale = truth.abs_f64();
            let rel = abs / scale.max(ZERO_FLOOR);
            let pass = if scale < ZERO_FLOOR { e.value.abs_f64() <= bounds.zero_abs } else { rel <= bounds.rel };
            rec.status = if pass { Status::Ok } else { Status::Failed };
            rec.value = Some(pair(e.value));
            rec.abs_error = Some(abs);
            rec.rel_error = Some(if scale < ZERO_FLOOR { 0.0 } else { rel });
            rec.error_estimate = Some(e.abs_error_estimate);
            rec.panels = e.panels;
            rec.integrals = e.integrals;
            rec.route = Some(e.route);
        }
    }
    rec
}

/// Runs every instance of the grid; records come back sorted by id.
pub fn verify(ev: &Evaluator, grid: &GridSpec, bounds: &Bounds) -> SweepReport {
    let instances = grid.instances();
    let mut records: Vec<Record> = instances.par_iter().map(|i| check(ev, i, bounds)).collect();
    records.sort_by(|x, y| x.id.cmp(&y.id));
    let summary = Summary::from_records(&records);
    SweepReport { bounds: *bounds, records, summary }
}

/// Column order of the sweep CSV.
pub const CSV_HEADER: [&str; 16] = [
    "id",
    "status",
    "value_re",
    "value_im",
    "oracle_re",
    "oracle_im",
    "abs_error",
    "rel_error",
    "error_estimate",
    "panels",
    "integrals",
    "route",
    "seconds",
    "message",
    "quantity",
    "params",
];

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<SweepReport> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        for r in &self.records {
            let params = serde_json::to_value(&r.instance).expect("instance serializes");
            let quantity = params["quantity"].as_str().unwrap_or_default().to_string();
            let status = match r.status {
                Status::Ok => "ok",
                Status::Failed => "failed",
                Status::Error => "error",
            };
            let route = match r.route {
                Some(Route::RealSegment) => "real_segment",
                Some(Route::Contour) => "contour",
                None => "",
            };
            w.write_record([
                r.id.clone(),
                status.to_string(),
                opt(r.value.map(|v| v[0])),
                opt(r.value.map(|v| v[1])),
                fmt_f64(r.oracle[0]),
                fmt_f64(r.oracle[1]),
                opt(r.abs_error),
                opt(r.rel_error),
                opt(r.error_estimate),
                r.panels.to_string(),
                r.integrals.to_string(),
                route.to_string(),
                fmt_f64(r.seconds),
                r.message.clone().unwrap_or_default(),
                quantity,
                params.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

/// One row of a timing run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: u64,
    /// Median over the repeats.
    pub closed_form_seconds: f64,
    /// Direct summation time, only for `n <= DIRECT_LIMIT`.
    pub direct_seconds: Option<f64>,
    pub value_re: f64,
    pub value_im: f64,
    pub panels: usize,
    pub route: Route,
}

/// Largest `n` summed directly in timing runs.
pub const DIRECT_LIMIT: u64 = 1_000_000;

/// Times the closed form of `inst` with `n` replaced by each entry of `ns`.
pub fn bench(ev: &Evaluator, inst: &Instance, ns: &[u64], repeats: usize) -> Result<Vec<BenchRow>> {
    let repeats = repeats.max(1);
    let mut rows = Vec::new();
    for &n in ns {
        let inst = with_n(inst, n)?;
        inst.validate()?;
        let mut times = Vec::with_capacity(repeats);
        let mut last = None;
        for _ in 0..repeats {
            let start = Instant::now();
            let e = inst.evaluate(ev)?;
            times.push(start.elapsed().as_secs_f64());
            last = Some(e);
        }
        times.sort_by(f64::total_cmp);
        let e = last.expect("at least one repeat");
        let direct_seconds = (n <= DIRECT_LIMIT).then(|| {
            let start = Instant::now();
            let _ = inst.oracle();
            start.elapsed().as_secs_f64()
        });
        rows.push(BenchRow {
            n,
            closed_form_seconds: times[times.len() / 2],
            direct_seconds,
            value_re: e.value.re.to_f64(),
            value_im: e.value.im.to_f64(),
            panels: e.panels,
            route: e.route,
        });
    }
    Ok(rows)
}

fn with_n(inst: &Instance, n_new: u64) -> Result<Instance> {
    let mut i = inst.clone();
    match &mut i {
        Instance::Hp { n, .. } | Instance::Fourier { n, .. } | Instance::Lerch { n, .. } | Instance::Polylog { n, .. } => *n = n_new,
        Instance::Lagrange { .. } => return Err(Error::Validation("timing runs need a quantity with n terms".into())),
    }
    Ok(i)
}

pub const BENCH_HEADER: [&str; 7] = ["n", "closed_form_seconds", "direct_seconds", "value_re", "value_im", "panels", "route"];

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BENCH_HEADER).expect("in-memory write");
    for r in rows {
        let route = match r.route {
            Route::RealSegment => "real_segment",
            Route::Contour => "contour",
        };
        w.write_record([
            r.n.to_string(),
            fmt_f64(r.closed_form_seconds),
            opt(r.direct_seconds),
            fmt_f64(r.value_re),
            fmt_f64(r.value_im),
            r.panels.to_string(),
            route.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
