//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use harmprog::closed_forms::{lagrange_closed_form, lagrange_series_check, lerch_dropped_pair, SeriesKind, TrigKind};
use harmprog::exact::{self, bernoulli_table, faulhaber_even, faulhaber_odd, power_sum_oracle, Rational};
use harmprog::kernels::{kernel, taylor_oracle_poly, KernelKind};
use harmprog::oracle;
use harmprog::quadrature::{singular_points, CotFactor, QuadConfig};
use harmprog::report::{self, Bounds, GridSpec, HpMethod, Instance, Record, Status, SweepReport};
use harmprog::{Cdd, Dd, EvalConfig, Evaluator, LerchParams, ProgressionParams};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel(x: [f64; 2], y: [f64; 2]) -> f64 {
    let d = (x[0] - y[0]).hypot(x[1] - y[1]);
    d / y[0].hypot(y[1]).max(1e-30)
}

fn failures(rep: &SweepReport) -> Vec<&Record> {
    rep.records.iter().filter(|r| r.status != Status::Ok).collect()
}

fn describe(bad: &[&Record]) -> String {
    bad.iter().take(5).map(|r| format!("{} ({:?}: {:?} {})", r.id, r.status, r.rel_error, r.message.clone().unwrap_or_default())).collect::<Vec<_>>().join("; ")
}

fn hp_grid(methods: Vec<HpMethod>) -> GridSpec {
    let mut g = GridSpec::default_hp();
    g.methods = methods;
    GridSpec { hp: Some(g), ..GridSpec::empty() }
}

fn criterion_1(ev: &Evaluator, rep: &SweepReport, secs: f64) -> Outcome {
    let bad = failures(rep);
    let pass = bad.is_empty() && secs < 300.0;
    outcome(
        pass,
        format!(
            "{} instances, max rel error {:.2e}, {:.1}s (tol {:.0e}){}",
            rep.summary.records,
            rep.summary.max_rel_error,
            secs,
            ev.cfg.tol,
            if bad.is_empty() { String::new() } else { format!("; failures: {}", describe(&bad)) }
        ),
    )
}

fn criterion_2(rep: &SweepReport) -> Outcome {
    type Values = HashMap<HpMethod, [f64; 2]>;
    let mut by_params: HashMap<(i64, i64, u32, u64), Values> = HashMap::new();
    for r in &rep.records {
        if let (Instance::Hp { method, a, b, k, n }, Some(v)) = (&r.instance, r.value) {
            by_params.entry((*a, *b, *k, *n)).or_default().insert(*method, v);
        }
    }
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    let mut missing = 0;
    let pairs =
        [(HpMethod::Exp, HpMethod::Sine), (HpMethod::Exp, HpMethod::Recursive), (HpMethod::Sine, HpMethod::Recursive), (HpMethod::Sine, HpMethod::SineProduct)];
    for (key, vals) in &by_params {
        for (x, y) in pairs {
            match (vals.get(&x), vals.get(&y)) {
                (Some(&vx), Some(&vy)) => {
                    let d = rel(vx, vy);
                    if d > worst {
                        worst = d;
                        worst_at = format!("{x:?}/{y:?} at {key:?}");
                    }
                }
                _ => missing += 1,
            }
        }
    }
    outcome(
        worst <= 1e-10 && missing == 0,
        format!("{} parameter sets, worst pairwise difference {worst:.2e} ({worst_at}), {missing} missing pairs", by_params.len()),
    )
}

fn criterion_3(ev: &Evaluator) -> Outcome {
    let grid = GridSpec { fourier: Some(GridSpec::default_fourier()), ..GridSpec::empty() };
    let rep = report::verify(ev, &grid, &Bounds::default());
    let bad = failures(&rep);
    let mut m1_worst = 0.0f64;
    let mut m2_worst = 0.0f64;
    let mut m1_count = 0;
    let mut m2_count = 0;
    for r in &rep.records {
        if let (Instance::Fourier { kind, a, b, k, n, m }, Some(v)) = (&r.instance, r.value) {
            if *m == [1.0, 0.0] && *kind == harmprog::closed_forms::FourierKind::Cos {
                let p = ProgressionParams::new(*a, *b, *k, *n).unwrap();
                let hp_oracle = oracle::sum_hp(&p).to_cdd();
                let hp_closed = ev.hp_exp(&p).unwrap().value;
                let d1 = rel(v, [hp_oracle.re.to_f64(), 0.0]);
                let d2 = rel(v, [hp_closed.to_f64(), 0.0]);
                m1_worst = m1_worst.max(d1).max(d2);
                m1_count += 1;
            }
            if *m == [2.0, 0.0] && *kind == harmprog::closed_forms::FourierKind::Sin {
                m2_worst = m2_worst.max(v[0].hypot(v[1]));
                m2_count += 1;
            }
        }
    }
    // pole clearance of the complex m
    let mz = Cdd::from_f64(report::COMPLEX_FOURIER_M[0], report::COMPLEX_FOURIER_M[1]);
    let clear = [1i64, 2]
        .iter()
        .all(|&a| singular_points(&CotFactor::cot_pi(Cdd::real(Dd::from_i64(a)), mz), QuadConfig::default().delta_pole).map(|p| p.len() == 1).unwrap_or(false));
    let pass = bad.is_empty() && m1_worst <= 1e-9 && m2_worst <= 1e-12 && clear && m1_count > 0 && m2_count > 0;
    outcome(
        pass,
        format!(
            "{} instances, max rel error {:.2e}; m=1 cosine vs HP worst {m1_worst:.2e} over {m1_count}; m=2 sine max |value| {m2_worst:.2e} over {m2_count}; complex m clear of poles: {clear}{}",
            rep.summary.records,
            rep.summary.max_rel_error,
            if bad.is_empty() { String::new() } else { format!("; failures: {}", describe(&bad)) }
        ),
    )
}

fn criterion_4(ev: &Evaluator) -> Outcome {
    let grid = GridSpec { lerch: Some(GridSpec::default_lerch()), ..GridSpec::empty() };
    let rep = report::verify(ev, &grid, &Bounds::default());
    let bad = failures(&rep);

    // |m| below eps_m returns the plain progression
    let mut red_worst = 0.0f64;
    for b in [0.0, 0.5, 1.0, 2.0] {
        for k in 1..=6 {
            for n in [1u64, 5, 25] {
                for m in [Cdd::ZERO, Cdd::from_f64(1e-9, 0.0), Cdd::from_f64(0.0, -5e-9)] {
                    let l = LerchParams::new(Cdd::from_f64(b, 0.0), k, m, n).unwrap();
                    let got = ev.lerch_partial(&l).unwrap().value;
                    let want = oracle::sum_lerch(&LerchParams { m: Cdd::ZERO, ..l }).to_cdd();
                    red_worst = red_worst.max((got - want).abs_f64() / want.abs_f64());
                    if b.fract() == 0.0 {
                        let hp = oracle::sum_hp(&ProgressionParams::new(1, b as i64, k, n).unwrap()).to_cdd();
                        red_worst = red_worst.max((got - hp).abs_f64() / hp.abs_f64());
                    }
                }
            }
        }
    }

    // dropped pair tends to zero with b
    let mut monotone = true;
    let mut largest_last = 0.0f64;
    for k in 1..=6 {
        for m in [Cdd::from_f64(-1.0, 0.0), Cdd::from_f64(-0.5, 0.0), Cdd::from_f64(0.0, std::f64::consts::FRAC_PI_4), Cdd::from_f64(0.5, 1.0 / 3.0)] {
            let v: Vec<f64> = [1e-4, 1e-5, 1e-6].iter().map(|&b| lerch_dropped_pair(Cdd::from_f64(b, 0.0), k, m).abs_f64()).collect();
            monotone &= v[0] > v[1] && v[1] > v[2];
            largest_last = largest_last.max(v[2]);
        }
    }
    let pass = bad.is_empty() && red_worst <= 1e-9 && monotone;
    outcome(
        pass,
        format!(
            "{} instances, max rel error {:.2e}; small-m reduction worst {red_worst:.2e}; dropped pair monotone: {monotone}, largest at b=1e-6 {largest_last:.2e}{}",
            rep.summary.records,
            rep.summary.max_rel_error,
            if bad.is_empty() { String::new() } else { format!("; failures: {}", describe(&bad)) }
        ),
    )
}

fn criterion_5() -> Outcome {
    let table = bernoulli_table(40);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for kind in [KernelKind::SineEven, KernelKind::SineOdd, KernelKind::Exp] {
        for k in 0..=8 {
            let poly = kernel(kind, k, &table).unwrap();
            let want = taylor_oracle_poly(kind, k);
            let mut got = poly.dense().to_vec();
            got.resize(want.len().max(got.len()), Rational::zero());
            let mut want = want;
            want.resize(got.len(), Rational::zero());
            if got != want {
                mismatches.push(format!("{kind} k={k}"));
            }
            checked += 1;
        }
    }
    outcome(mismatches.is_empty(), format!("{checked} kernels compared coefficient by coefficient; mismatches: {mismatches:?}"))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for p in 0..=12u32 {
        for n in 1..=100u64 {
            let nr = exact::int(n as i64);
            let split = if p % 2 == 0 { faulhaber_even(p / 2, &nr) } else { faulhaber_odd(p / 2, &nr) };
            if split != power_sum_oracle(p, n) {
                bad.push((p, n));
            }
            checked += 1;
        }
    }
    let table = bernoulli_table(24);
    let mut rec_bad = Vec::new();
    for m in 1..=24u32 {
        let mut s = Rational::zero();
        for j in 0..=m {
            s += Rational::from_integer(exact::binomial(m + 1, j)) * &table[j as usize];
        }
        if !s.is_zero() {
            rec_bad.push(m);
        }
    }
    outcome(bad.is_empty() && rec_bad.is_empty(), format!("{checked} power sums exact, recurrence through index 24; mismatches {bad:?} {rec_bad:?}"))
}

/// Rational with denominator 1000 in `[-3, 3]`.
fn draw(rng: &mut ChaCha8Rng) -> Rational {
    exact::ratio(rng.gen_range(-3000..=3000), 1000)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut closed_worst = 0.0f64;
    let mut closed_done = 0;
    let mut poles = 0;
    while closed_done < 200 {
        let (a, b, n) = (rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0));
        let big_k = rng.gen_range(1..=10u32);
        let kind = if closed_done % 2 == 0 { TrigKind::Sin } else { TrigKind::Cos };
        match lagrange_closed_form(kind, Dd::from_f64(a), Dd::from_f64(b), Dd::from_f64(n), big_k) {
            Ok(v) => {
                let want = oracle::sum_lagrange(kind, Dd::from_f64(a), Dd::from_f64(b), Dd::from_f64(n), big_k).re_dd();
                closed_worst = closed_worst.max((v - want).abs().to_f64());
                closed_done += 1;
            }
            Err(_) => poles += 1,
        }
    }

    // The series converge for every argument, but forty terms only suffice
    // while 2 pi |n| (|a| + |b|/K) stays moderate.
    let mut series_worst = 0.0f64;
    let mut series_done = 0;
    let mut rejected = 0;
    while series_done < 100 {
        let (a, b, n) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let big_k = rng.gen_range(1..=10u32);
        let (af, bf, nf) = (exact::rational_to_dd(&a).to_f64(), exact::rational_to_dd(&b).to_f64(), exact::rational_to_dd(&n).to_f64());
        let tau = std::f64::consts::TAU;
        let small = (tau * bf * nf / big_k as f64).abs() <= 2.0;
        let reach = tau * nf.abs() * (af.abs() + bf.abs() / big_k as f64) <= 12.0;
        let an_k = &a * &n / exact::int(big_k as i64);
        if !small || !reach || an_k.is_integer() {
            rejected += 1;
            continue;
        }
        let which = if series_done % 2 == 0 { SeriesKind::Series1 } else { SeriesKind::Series2 };
        let (lhs, rhs) = lagrange_series_check(which, &a, &b, &n, big_k, 40);
        series_worst = series_worst.max((lhs - rhs).abs().to_f64());
        series_done += 1;
    }
    let pass = closed_worst <= 1e-12 && series_worst <= 1e-10;
    outcome(
        pass,
        format!(
            "closed form: {closed_done} instances ({poles} cot-pole draws skipped), worst abs error {closed_worst:.2e}; series at 40 terms: {series_done} instances, worst {series_worst:.2e} ({rejected} draws outside the sampling region)"
        ),
    )
}

fn criterion_8(ev: &Evaluator, first: &SweepReport) -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    let mut count = 0;
    let mut errors = Vec::new();
    let g = GridSpec::default_hp();
    for method in [HpMethod::Exp, HpMethod::Sine, HpMethod::SineProduct, HpMethod::Recursive] {
        for &a in &g.a {
            for &b in &g.b {
                for &k in &g.k {
                    for &n in g.n.iter().filter(|&&n| n >= 2) {
                        let hi = Instance::Hp { method, a, b, k, n };
                        let lo = Instance::Hp { method, a, b, k, n: n - 1 };
                        if hi.validate().is_err() || lo.validate().is_err() {
                            continue;
                        }
                        match (hi.evaluate(ev), lo.evaluate(ev)) {
                            (Ok(x), Ok(y)) => {
                                let term = Dd::from_i128(a as i128 * n as i128 + b as i128).recip().powi(k as i32);
                                let d = (x.value.re - y.value.re - term).abs().to_f64() / x.value.re.abs().to_f64();
                                if d > worst {
                                    worst = d;
                                    worst_at = hi.key();
                                }
                                count += 1;
                            }
                            (Err(e), _) | (_, Err(e)) => errors.push(format!("{}: {e}", hi.key())),
                        }
                    }
                }
            }
        }
    }

    // determinism: the whole HP sweep again, compared bit for bit
    let again = report::verify(ev, &hp_grid(HpMethod::ALL.to_vec()), &Bounds::default());
    let same = first.records.len() == again.records.len()
        && first.records.iter().zip(&again.records).all(|(x, y)| {
            x.id == y.id
                && x.value.map(|v| v.map(f64::to_bits)) == y.value.map(|v| v.map(f64::to_bits))
                && x.error_estimate.map(f64::to_bits) == y.error_estimate.map(f64::to_bits)
                && x.panels == y.panels
        });
    let mut full_same = true;
    for inst in first.records.iter().step_by(7).map(|r| &r.instance) {
        let x = inst.evaluate(ev).map(|e| (e.value, e.abs_error_estimate.to_bits()));
        let y = inst.evaluate(ev).map(|e| (e.value, e.abs_error_estimate.to_bits()));
        full_same &= match (x, y) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        };
    }
    let pass = worst <= 1e-9 && errors.is_empty() && same && full_same;
    outcome(
        pass,
        format!(
            "{count} telescoping differences, worst {worst:.2e} relative to HP(n) ({worst_at}); {} errors; repeated sweep identical: {same}; repeated double-double values identical: {full_same}",
            errors.len()
        ),
    )
}

fn median_seconds(ev: &Evaluator, p: &ProgressionParams, repeats: usize) -> f64 {
    let mut t: Vec<f64> = (0..repeats)
        .map(|_| {
            let s = Instant::now();
            ev.hp(p).expect("evaluates");
            s.elapsed().as_secs_f64()
        })
        .collect();
    t.sort_by(f64::total_cmp);
    t[t.len() / 2]
}

fn criterion_9(ev: &Evaluator) -> Outcome {
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    for (a, b, k) in [(1i64, 1i64, 2u32), (2, 1, 3), (3, -1, 5), (5, 7, 8), (1, 7, 8)] {
        let small = ProgressionParams::new(a, b, k, 100).unwrap();
        let large = ProgressionParams::new(a, b, k, 1_000_000_000).unwrap();
        // warm the kernel cache
        ev.hp(&small).unwrap();
        ev.hp(&large).unwrap();
        let ts = median_seconds(ev, &small, 21);
        let tl = median_seconds(ev, &large, 21);
        let ratio = ts.max(tl) / ts.min(tl);
        worst = worst.max(ratio);
        lines.push(format!("({a},{b},{k}) {:.2}ms/{:.2}ms", ts * 1e3, tl * 1e3));
    }
    outcome(worst <= 2.0, format!("time at n=1e2 / n=1e9: {}; worst ratio {worst:.2}", lines.join(", ")))
}

fn main() {
    let ev = Evaluator::new(EvalConfig { tol: 1e-12, ..EvalConfig::default() }).unwrap();
    let mut results: Vec<(usize, Outcome)> = Vec::new();

    let start = Instant::now();
    let hp_rep = report::verify(&ev, &hp_grid(vec![HpMethod::Exp, HpMethod::Sine, HpMethod::Recursive]), &Bounds::default());
    let secs = start.elapsed().as_secs_f64();
    results.push((1, criterion_1(&ev, &hp_rep, secs)));

    let all_rep = report::verify(&ev, &hp_grid(HpMethod::ALL.to_vec()), &Bounds::default());
    results.push((2, criterion_2(&all_rep)));
    results.push((3, criterion_3(&ev)));
    results.push((4, criterion_4(&ev)));
    results.push((5, criterion_5()));
    results.push((6, criterion_6()));
    results.push((7, criterion_7()));
    results.push((8, criterion_8(&ev, &all_rep)));
    results.push((9, criterion_9(&ev)));

    let mut all = true;
    for (i, o) in &results {
        println!("criterion {i}: {} - {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all &= o.pass;
    }
    if !all {
        std::process::exit(1);
    }
}
