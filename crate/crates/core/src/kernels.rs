//! Bernoulli-weighted polynomials in `v = 1 - u` and the truncated Taylor
//! series used to check them.

use crate::dd::{Cdd, Dd};
use crate::error::Error;
use crate::exact::{self, factorial, int, pow, pow2, BernoulliTable, Rational};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelKind {
    /// `sum_j B_2j (2 - 2^2j) v^(2k-2j) / ((2j)! (2k-2j)!)`
    SineEven,
    /// `sum_j B_2j (2 - 2^2j) v^(2k+1-2j) / ((2j)! (2k+1-2j)!)`
    SineOdd,
    /// `sum_j B_j v^(k-j) / (j! (k-j)!)`
    Exp,
    /// The bare monomial `v^k`, used by the recursions and the Fourier and
    /// Lerch integrals.
    Power,
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KernelKind::SineEven => "sine_even",
            KernelKind::SineOdd => "sine_odd",
            KernelKind::Exp => "exp",
            KernelKind::Power => "power",
        };
        f.write_str(s)
    }
}

/// Polynomial in `v = 1 - u` with exact coefficients.
///
/// `coeffs[j]` is the Bernoulli term with index `j` (only even indices for
/// the sine kinds, so `coeffs[j]` there belongs to `B_2j`). `dense` holds the
/// same polynomial by ascending power of `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelPoly {
    pub kind: KernelKind,
    pub order: u32,
    pub coeffs: Vec<Rational>,
    dense: Vec<Rational>,
    dense_dd: Vec<Dd>,
}

impl KernelPoly {
    fn from_terms(kind: KernelKind, order: u32, coeffs: Vec<Rational>) -> KernelPoly {
        let deg = match kind {
            KernelKind::SineEven => 2 * order,
            KernelKind::SineOdd => 2 * order + 1,
            KernelKind::Exp | KernelKind::Power => order,
        } as usize;
        let mut dense = vec![Rational::zero(); deg + 1];
        for (j, c) in coeffs.iter().enumerate() {
            let p = match kind {
                KernelKind::SineEven | KernelKind::SineOdd => deg - 2 * j,
                KernelKind::Exp | KernelKind::Power => deg - j,
            };
            dense[p] += c;
        }
        let dense_dd = dense.iter().map(exact::rational_to_dd).collect();
        KernelPoly { kind, order, coeffs, dense, dense_dd }
    }

    pub fn power(p: u32) -> KernelPoly {
        KernelPoly::from_terms(KernelKind::Power, p, vec![Rational::one()])
    }

    pub fn degree(&self) -> usize {
        self.dense.len() - 1
    }

    /// Coefficients by ascending power of `v = 1 - u`.
    pub fn dense(&self) -> &[Rational] {
        &self.dense
    }

    pub fn dense_dd(&self) -> &[Dd] {
        &self.dense_dd
    }

    /// Coefficients by ascending power of `u`.
    pub fn coeffs_in_u(&self) -> Vec<Rational> {
        let d = self.degree();
        let mut out = vec![Rational::zero(); d + 1];
        for (p, c) in self.dense.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // (1-u)^p = sum_q C(p,q) (-u)^q
            for (q, slot) in out.iter_mut().enumerate().take(p + 1) {
                let b = Rational::from_integer(exact::binomial(p as u32, q as u32));
                let term = c * b;
                if q % 2 == 0 {
                    *slot += term;
                } else {
                    *slot -= term;
                }
            }
        }
        out
    }

    pub fn eval_rational(&self, u: &Rational) -> Rational {
        let v = Rational::one() - u;
        let mut acc = Rational::zero();
        for c in self.dense.iter().rev() {
            acc = acc * &v + c;
        }
        acc
    }

    pub fn eval_real(&self, u: Dd) -> Dd {
        let v = Dd::ONE - u;
        let mut acc = Dd::ZERO;
        for c in self.dense_dd.iter().rev() {
            acc = acc * v + *c;
        }
        acc
    }

    pub fn eval(&self, u: Cdd) -> Cdd {
        if u.is_real() {
            return Cdd::real(self.eval_real(u.re));
        }
        Cdd::horner(&self.dense_dd, Cdd::ONE - u)
    }
}

/// Builds the kernel of the given kind and order.
pub fn kernel(kind: KernelKind, k: u32, bernoulli: &BernoulliTable) -> Result<KernelPoly, Error> {
    let need = match kind {
        KernelKind::SineEven => 2 * k as usize,
        KernelKind::SineOdd => 2 * k as usize,
        KernelKind::Exp => k as usize,
        KernelKind::Power => 0,
    };
    if bernoulli.max_order() < need {
        return Err(Error::TableTooShort { needed: need, available: bernoulli.max_order() });
    }
    let coeffs = match kind {
        KernelKind::SineEven | KernelKind::SineOdd => {
            let top = if kind == KernelKind::SineEven { 2 * k } else { 2 * k + 1 };
            (0..=k)
                .map(|j| {
                    let w = int(2) - pow2(2 * j);
                    &bernoulli[2 * j as usize] * w / (factorial(2 * j) * factorial(top - 2 * j))
                })
                .collect()
        }
        KernelKind::Exp => (0..=k).map(|j| &bernoulli[j as usize] / (factorial(j) * factorial(k - j))).collect(),
        KernelKind::Power => vec![Rational::one()],
    };
    Ok(KernelPoly::from_terms(kind, k, coeffs))
}

type KernelCache = HashMap<(KernelKind, u32), Arc<KernelPoly>>;

/// Write-once cache keyed by `(kind, k)`, backed by the shared Bernoulli table.
pub fn kernel_cached(kind: KernelKind, k: u32) -> Result<Arc<KernelPoly>, Error> {
    static CACHE: OnceLock<Mutex<KernelCache>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("kernel cache").get(&(kind, k)) {
        return Ok(p.clone());
    }
    let p = Arc::new(kernel(kind, k, exact::shared_bernoulli())?);
    let mut guard = cache.lock().expect("kernel cache");
    Ok(guard.entry((kind, k)).or_insert(p).clone())
}

/// Power series `c_0 + c_1 x + ... + c_N x^N` with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> TruncatedSeries {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse; `None` when the constant term is zero.
    pub fn inverse(&self) -> Option<TruncatedSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(c0.recip());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=m {
                acc += &self.coeffs[i] * &out[m - i];
            }
            out.push(-acc / c0);
        }
        Some(TruncatedSeries { coeffs: out })
    }

    pub fn div(&self, other: &TruncatedSeries) -> Option<TruncatedSeries> {
        Some(self.mul(&other.inverse()?))
    }
}

/// `sin(x)/x` or `(e^x - 1)/x`, the normalized divisors.
fn normalized_divisor(kind: KernelKind, order: usize) -> TruncatedSeries {
    let c = (0..=order)
        .map(|i| match kind {
            KernelKind::Exp => factorial(i as u32 + 1).recip(),
            _ => {
                if i % 2 == 1 {
                    Rational::zero()
                } else {
                    let s = if (i / 2) % 2 == 0 { int(1) } else { int(-1) };
                    s / factorial(i as u32 + 1)
                }
            }
        })
        .collect();
    TruncatedSeries::new(c, order)
}

/// Taylor coefficient of `cos(xv)`, `sin(xv)` or `e^(xv)` at `x^i`, as the
/// scalar multiplying `v^i`.
fn numerator_weight(kind: KernelKind, i: usize) -> Rational {
    let f = factorial(i as u32).recip();
    match kind {
        KernelKind::SineEven => match i % 4 {
            0 => f,
            2 => -f,
            _ => Rational::zero(),
        },
        KernelKind::SineOdd => match i % 4 {
            1 => f,
            3 => -f,
            _ => Rational::zero(),
        },
        _ => f,
    }
}

fn target_index(kind: KernelKind, k: u32) -> (usize, bool) {
    match kind {
        KernelKind::SineEven => (2 * k as usize, k % 2 == 1),
        KernelKind::SineOdd => (2 * k as usize + 1, k % 2 == 1),
        _ => (k as usize, false),
    }
}

/// The order-matching Taylor coefficient of the generating function
/// (`x cos(x(1-u))/sin x`, `x sin(x(1-u))/sin x` or `x e^(x(1-u))/(e^x - 1)`),
/// times `(-1)^k` for the sine kinds, by exact series division.
pub fn taylor_oracle(kind: KernelKind, k: u32, u: &Rational) -> Rational {
    assert!(kind != KernelKind::Power, "no generating function for plain powers");
    let order = 2 * k as usize + 2;
    let v = Rational::one() - u;
    let num = TruncatedSeries::new((0..=order).map(|i| numerator_weight(kind, i) * pow(&v, i as u32)).collect(), order);
    let q = num.div(&normalized_divisor(kind, order)).expect("normalized divisor");
    let (idx, negate) = target_index(kind, k);
    let c = q.coeff(idx).clone();
    if negate {
        -c
    } else {
        c
    }
}

/// The same coefficient as a polynomial in `v = 1 - u`, ascending powers.
///
/// The numerator's `x^i` coefficient is a single monomial in `v`, so the
/// quotient's `x^N` coefficient has `v^i` weight `num_i * inv_{N-i}`.
pub fn taylor_oracle_poly(kind: KernelKind, k: u32) -> Vec<Rational> {
    assert!(kind != KernelKind::Power, "no generating function for plain powers");
    let order = 2 * k as usize + 2;
    let inv = normalized_divisor(kind, order).inverse().expect("normalized divisor");
    let (idx, negate) = target_index(kind, k);
    (0..=idx)
        .map(|i| {
            let c = numerator_weight(kind, i) * inv.coeff(idx - i);
            if negate {
                -c
            } else {
                c
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn table() -> &'static BernoulliTable {
        exact::shared_bernoulli()
    }

    #[test]
    fn spot_kernels() {
        let p = kernel(KernelKind::SineOdd, 0, table()).unwrap();
        assert_eq!(p.dense(), &[int(0), int(1)]);
        let p = kernel(KernelKind::Exp, 1, table()).unwrap();
        assert_eq!(p.dense(), &[ratio(-1, 2), int(1)]);
        assert_eq!(p.eval_rational(&int(0)), ratio(1, 2));
        let p = kernel(KernelKind::SineEven, 1, table()).unwrap();
        assert_eq!(p.dense(), &[ratio(-1, 6), int(0), ratio(1, 2)]);
    }

    #[test]
    fn short_table_is_an_error() {
        let t = exact::bernoulli_table(3);
        assert!(matches!(kernel(KernelKind::SineEven, 2, &t), Err(Error::TableTooShort { needed: 4, available: 3 })));
    }

    #[test]
    fn oracle_spot_values() {
        assert_eq!(taylor_oracle(KernelKind::SineOdd, 0, &ratio(1, 3)), ratio(2, 3));
        assert_eq!(taylor_oracle(KernelKind::Exp, 0, &ratio(5, 7)), int(1));
        let p = kernel(KernelKind::SineEven, 2, table()).unwrap();
        assert_eq!(taylor_oracle(KernelKind::SineEven, 2, &ratio(1, 2)), p.eval_rational(&ratio(1, 2)));
    }

    #[test]
    fn u_expansion_matches_v_form() {
        let p = kernel(KernelKind::Exp, 5, table()).unwrap();
        let cu = p.coeffs_in_u();
        let u = ratio(2, 9);
        let direct: Rational = cu.iter().enumerate().map(|(q, c)| c * pow(&u, q as u32)).sum();
        assert_eq!(direct, p.eval_rational(&u));
    }
}
