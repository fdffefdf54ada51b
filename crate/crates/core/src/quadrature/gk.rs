//! 15-point Gauss / 31-point Kronrod pair in double-double and a global
//! adaptive bisection driver.

use crate::dd::{Cdd, Dd};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// `(node, kronrod weight, gauss weight)` for non-negative nodes, as hi/lo pairs.
/// Gauss weights are zero on Kronrod-only nodes.
#[rustfmt::skip]
const TABLE: [(f64, f64, f64, f64, f64, f64); 16] = [
    (0.0, 0.0, 0.10133000701479154, 6.309697995859148e-18, 0.2025782419255613, -1.36265978284512e-17),
    (0.1011420669187175, 5.365002115935119e-18, 0.10076984552387559, 2.581499158984791e-18, 0.0, 0.0),
    (0.20119409399743451, 7.913604507205427e-18, 0.09917359872179196, -1.897816548604454e-18, 0.19843148532711158, -2.153186516313571e-18),
    (0.29918000715316884, -2.43643851735454e-17, 0.09664272698362368, -2.242468258206518e-18, 0.0, 0.0),
    (0.3941513470775634, -1.5493212254783433e-17, 0.09312659817082532, 4.123180899198409e-18, 0.1861610000155622, -3.0256685282523727e-19),
    (0.4850818636402397, -1.5917533661432536e-17, 0.08856444305621176, 6.597974049996241e-18, 0.0, 0.0),
    (0.5709721726085388, 1.7063336834903418e-17, 0.08308050282313302, 4.426197405390319e-19, 0.16626920581699392, 1.3342622820894374e-17),
    (0.650996741297417, -5.479551684240652e-17, 0.07684968075772038, 2.7936050136615153e-18, 0.0, 0.0),
    (0.7244177313601701, -2.220487673927142e-17, 0.06985412131872826, 1.458979085436146e-18, 0.13957067792615432, -9.552247248209171e-18),
    (0.790418501442466, -1.5369097056015034e-17, 0.06200956780067064, -2.1605203218164122e-18, 0.0, 0.0),
    (0.8482065834104272, 1.0018456681246771e-17, 0.05348152469092809, -8.184757448339653e-19, 0.10715922046717194, -4.482963053162582e-18),
    (0.8972645323440819, 2.3236362706753718e-17, 0.04458975132476488, -1.9623561490628022e-18, 0.0, 0.0),
    (0.937273392400706, -4.708055882377859e-17, 0.03534636079137585, -8.548404096877809e-19, 0.07036604748810812, 3.345058292453826e-19),
    (0.9677390756791391, 5.1804186187875555e-17, 0.02546084732671532, 4.651723540929497e-19, 0.0, 0.0),
    (0.9879925180204854, 5.108381742345454e-17, 0.015007947329316122, 6.428487036714607e-19, 0.03075324199611727, -7.812069212644382e-19),
    (0.9980022986933971, -1.160851198416519e-17, 0.005377479872923349, -1.8118623946053598e-19, 0.0, 0.0),
];

struct Node {
    x: Dd,
    wk: Dd,
    wg: Dd,
}

fn nodes() -> [Node; 16] {
    TABLE.map(|(x0, x1, k0, k1, g0, g1)| Node { x: Dd::from_parts(x0, x1), wk: Dd::from_parts(k0, k1), wg: Dd::from_parts(g0, g1) })
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PanelEval {
    pub value: Cdd,
    pub err: f64,
    pub l1: f64,
}

/// One G15/K31 application on `[a, b]`; nodes are interior.
pub(crate) fn panel<F: Fn(Dd) -> Cdd>(f: &F, a: Dd, b: Dd) -> PanelEval {
    let nodes = nodes();
    let c = (a + b).ldexp(-1);
    let h = (b - a).ldexp(-1);
    let mut k = Cdd::ZERO;
    let mut g = Cdd::ZERO;
    let mut l1 = 0.0;
    for (i, nd) in nodes.iter().enumerate() {
        let pts: &[Dd] = if i == 0 { &[Dd::ZERO] } else { &[nd.x, -nd.x] };
        for &x in pts {
            let v = f(c + h * x);
            k += v.scale(nd.wk);
            if !nd.wg.is_zero() {
                g += v.scale(nd.wg);
            }
            l1 += nd.wk.to_f64() * v.abs_f64();
        }
    }
    let hf = h.to_f64().abs();
    let k = k.scale(h);
    let g = g.scale(h);
    PanelEval { value: k, err: (k - g).abs_f64(), l1: l1 * hf }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Adaptive {
    pub value: Cdd,
    pub err: f64,
    pub panels: usize,
    pub converged: bool,
}

struct Live {
    a: Dd,
    b: Dd,
    eval: PanelEval,
    alive: bool,
}

#[derive(PartialEq)]
struct Key {
    err: f64,
    idx: usize,
}

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Key) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Key {
    // Largest error first; ties go to the leftmost (lowest index) panel.
    fn cmp(&self, o: &Key) -> Ordering {
        self.err.total_cmp(&o.err).then(o.idx.cmp(&self.idx))
    }
}

/// Stopping rule: total error at most `rel * max(|I|, 1e-12 * int |f|)` or `abs`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Target {
    pub rel: f64,
    pub abs: f64,
}

impl Target {
    fn met(&self, value: Cdd, err: f64, l1: f64) -> bool {
        let scale = value.abs_f64().max(1e-12 * l1);
        err <= (self.rel * scale).max(self.abs) || err <= 64.0 * Dd::EPSILON * l1
    }
}

/// Global adaptive integration over consecutive breakpoints.
///
/// `breaks` must be sorted; each interval is split into `initial(length)`
/// equal panels. Panels are always summed left to right, so the result does not
/// depend on refinement order beyond the panel set itself.
pub(crate) fn adaptive<F: Fn(Dd) -> Cdd>(f: &F, breaks: &[Dd], initial: &dyn Fn(f64) -> usize, target: Target, budget: usize) -> Adaptive {
    let mut live: Vec<Live> = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let initial = initial((b - a).to_f64()).max(1);
        let step = (b - a).div_f64(initial as f64);
        for i in 0..initial {
            let pa = a + step.mul_f64(i as f64);
            let pb = if i + 1 == initial { b } else { a + step.mul_f64((i + 1) as f64) };
            live.push(Live { a: pa, b: pb, eval: panel(f, pa, pb), alive: true });
        }
    }
    let mut heap: BinaryHeap<Key> = live.iter().enumerate().map(|(idx, p)| Key { err: p.eval.err, idx }).collect();
    let mut count = live.len();
    if count > budget {
        return finish(live, count, false);
    }
    let (mut value, mut err, mut l1) = totals(&live);
    loop {
        if count.is_multiple_of(64) {
            (value, err, l1) = totals(&live);
        }
        if target.met(value, err, l1) {
            (value, err, l1) = totals(&live);
            if target.met(value, err, l1) {
                return finish(live, count, true);
            }
        }
        if count + 1 > budget {
            return finish(live, count, false);
        }
        let Some(top) = heap.pop() else {
            return finish(live, count, false);
        };
        let (a, b) = (live[top.idx].a, live[top.idx].b);
        let mid = (a + b).ldexp(-1);
        if !(a < mid && mid < b) {
            // Cannot split further in this precision.
            return finish(live, count, false);
        }
        live[top.idx].alive = false;
        let old = live[top.idx].eval;
        value -= old.value;
        err -= old.err;
        l1 -= old.l1;
        for (pa, pb) in [(a, mid), (mid, b)] {
            let eval = panel(f, pa, pb);
            value += eval.value;
            err += eval.err;
            l1 += eval.l1;
            heap.push(Key { err: eval.err, idx: live.len() });
            live.push(Live { a: pa, b: pb, eval, alive: true });
        }
        count += 1;
    }
}

fn totals(live: &[Live]) -> (Cdd, f64, f64) {
    let mut v = Cdd::ZERO;
    let mut e = 0.0;
    let mut l = 0.0;
    for p in live.iter().filter(|p| p.alive) {
        v += p.eval.value;
        e += p.eval.err;
        l += p.eval.l1;
    }
    (v, e, l)
}

fn finish(mut live: Vec<Live>, count: usize, converged: bool) -> Adaptive {
    live.retain(|p| p.alive);
    live.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = Cdd::ZERO;
    let mut err = 0.0;
    for p in &live {
        value += p.eval.value;
        err += p.eval.err;
    }
    Adaptive { value, err, panels: count, converged }
}
