use clap::{Args, Parser, Subcommand, ValueEnum};
use harmprog::closed_forms::{FourierKind, TrigKind};
use harmprog::report::{self, fmt_f64, Bounds, GridSpec, HpMethod, Instance};
use harmprog::{EvalConfig, Evaluator};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "hprog", version, about = "Partial sums of harmonic progressions and related series through integral representations")]
struct Cli {
    /// JSON file with evaluation and quadrature settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Relative tolerance; overrides the config file.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one quantity.
    Eval {
        #[arg(long, global = true, value_enum, default_value = "text")]
        format: TextOrJson,
        #[command(subcommand)]
        q: Quantity,
    },
    /// Compare closed forms with direct summation over a grid.
    Verify {
        /// Grid as JSON; the built-in acceptance grid when absent.
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Keep only these sections of the grid.
        #[arg(long, value_enum, value_delimiter = ',')]
        only: Vec<Section>,
        /// Relative error bound.
        #[arg(long, default_value_t = 1e-9)]
        bound: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: JsonOrCsv,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time the closed form against direct summation for several n.
    Bench {
        /// Comma-separated term counts.
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[command(subcommand)]
        q: Quantity,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum JsonOrCsv {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Section {
    Hp,
    Fourier,
    Lerch,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exp,
    Sine,
    SineProduct,
    Recursive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Trig {
    Cos,
    Sin,
}

#[derive(Args)]
struct Prog {
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    #[arg(long)]
    k: u32,
    /// Number of terms; ignored by `bench`.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
struct Complex {
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    m_re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    m_im: f64,
}

#[derive(Subcommand)]
enum Quantity {
    /// sum 1/(a j + b)^k
    Hp {
        #[command(flatten)]
        p: Prog,
        #[arg(long, value_enum, default_value = "exp")]
        method: Method,
    },
    /// sum cos or sin(2 pi (a j + b)/m) / (a j + b)^k
    Fourier {
        #[command(flatten)]
        p: Prog,
        #[arg(long, value_enum)]
        kind: Trig,
        #[command(flatten)]
        m: Complex,
    },
    /// sum e^{m (j + b)} / (j + b)^k
    Lerch {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        b_re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        b_im: f64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: Option<u64>,
        #[command(flatten)]
        m: Complex,
    },
    /// sum e^{m j} / j^k
    Polylog {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: Option<u64>,
        #[command(flatten)]
        m: Complex,
    },
    /// sum_{j=1}^{K} sin or cos(2 pi n (a j + b)/K)
    Lagrange {
        #[arg(long, value_enum)]
        kind: Trig,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        n: f64,
        #[arg(long = "K")]
        big_k: u32,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.into() }
}

impl From<harmprog::Error> for Failure {
    fn from(e: harmprog::Error) -> Failure {
        Failure { code: if e.is_numerical() { EXIT_NUMERIC } else { EXIT_USAGE }, msg: e.to_string() }
    }
}

fn fourier_kind(t: Trig) -> FourierKind {
    match t {
        Trig::Cos => FourierKind::Cos,
        Trig::Sin => FourierKind::Sin,
    }
}

/// `n` is required unless `placeholder` is given.
fn instance(q: &Quantity, placeholder: Option<u64>) -> Result<Instance, Failure> {
    let need = |n: Option<u64>| n.or(placeholder).ok_or_else(|| usage("--n is required"));
    Ok(match q {
        Quantity::Hp { p, method } => {
            let method = match method {
                Method::Exp => HpMethod::Exp,
                Method::Sine => HpMethod::Sine,
                Method::SineProduct => HpMethod::SineProduct,
                Method::Recursive => HpMethod::Recursive,
            };
            Instance::Hp { method, a: p.a, b: p.b, k: p.k, n: need(p.n)? }
        }
        Quantity::Fourier { p, kind, m } => Instance::Fourier { kind: fourier_kind(*kind), a: p.a, b: p.b, k: p.k, n: need(p.n)?, m: [m.m_re, m.m_im] },
        Quantity::Lerch { b_re, b_im, k, n, m } => Instance::Lerch { b: [*b_re, *b_im], k: *k, m: [m.m_re, m.m_im], n: need(*n)? },
        Quantity::Polylog { k, n, m } => Instance::Polylog { k: *k, m: [m.m_re, m.m_im], n: need(*n)? },
        Quantity::Lagrange { kind, a, b, n, big_k } => {
            let kind = match kind {
                Trig::Cos => TrigKind::Cos,
                Trig::Sin => TrigKind::Sin,
            };
            Instance::Lagrange { kind, a: *a, b: *b, n: *n, big_k: *big_k }
        }
    })
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn evaluator(cli: &Cli) -> Result<Evaluator, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => serde_json::from_str::<EvalConfig>(&read(path)?).map_err(|e| usage(format!("config: {e}")))?,
        None => EvalConfig::default(),
    };
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    Ok(Evaluator::new(cfg)?)
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let ev = evaluator(cli)?;
    match &cli.cmd {
        Cmd::Eval { format, q } => {
            let inst = instance(q, None)?;
            let e = inst.evaluate(&ev)?;
            let complex = matches!(inst, Instance::Fourier { .. } | Instance::Lerch { .. } | Instance::Polylog { .. });
            match format {
                TextOrJson::Text => {
                    println!("value          {}", fmt_f64(e.value.re.to_f64()));
                    if complex {
                        println!("imag           {}", fmt_f64(e.value.im.to_f64()));
                    }
                    println!("error_estimate {}", fmt_f64(e.abs_error_estimate));
                    println!("panels         {}", e.panels);
                    println!("integrals      {}", e.integrals);
                    println!("route          {}", serde_json::to_value(e.route).unwrap_or_default().as_str().unwrap_or_default());
                }
                TextOrJson::Json => {
                    let out = json!({
                        "instance": inst,
                        "value": [e.value.re.to_f64(), e.value.im.to_f64()],
                        "value_lo": [e.value.re.lo(), e.value.im.lo()],
                        "error_estimate": e.abs_error_estimate,
                        "panels": e.panels,
                        "integrals": e.integrals,
                        "route": e.route,
                    });
                    println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
                }
            }
            Ok(0)
        }
        Cmd::Verify { grid, only, bound, format, output } => {
            if bound.is_nan() || *bound <= 0.0 {
                return Err(usage("--bound must be positive"));
            }
            let mut spec = match grid {
                Some(path) => serde_json::from_str::<GridSpec>(&read(path)?).map_err(|e| usage(format!("grid: {e}")))?,
                None => GridSpec::acceptance(),
            };
            if !only.is_empty() {
                if !only.contains(&Section::Hp) {
                    spec.hp = None;
                }
                if !only.contains(&Section::Fourier) {
                    spec.fourier = None;
                }
                if !only.contains(&Section::Lerch) {
                    spec.lerch = None;
                }
            }
            let bounds = Bounds { rel: *bound, ..Bounds::default() };
            let rep = report::verify(&ev, &spec, &bounds);
            let text = match format {
                JsonOrCsv::Json => rep.to_json() + "\n",
                JsonOrCsv::Csv => rep.to_csv(),
            };
            emit(&text, output)?;
            eprintln!("{} records, {} failures, max relative error {}", rep.summary.records, rep.summary.failures, fmt_f64(rep.summary.max_rel_error));
            Ok(if rep.summary.failures == 0 { 0 } else { EXIT_VERIFY })
        }
        Cmd::Bench { n_list, repeats, q } => {
            let inst = instance(q, Some(1))?;
            let rows = report::bench(&ev, &inst, n_list, *repeats)?;
            print!("{}", report::bench_csv(&rows));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
