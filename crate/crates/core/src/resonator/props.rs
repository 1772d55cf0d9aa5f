use super::config::ResonatorConfig;
use super::layers::PrimeLayers;
use crate::summation::CompensatedSum;
use crate::{loglog, logloglog, Error, Result};
use std::f64::consts::E;

/// Largest prime set accepted by the exhaustive ratio computations.
pub const EXACT_PRIME_GUARD: usize = 25;

fn h_prime(p: u64) -> f64 {
    let p = p as f64;
    p / (p + 1.0)
}

/// `log A_N` and its pieces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ANValue {
    /// Compensated sum of `log(1 + f^2 h + f h p^-sigma) - log(1 + f^2)`.
    pub log_value: f64,
    /// The same quantity as a plain running product.
    pub direct_product: f64,
}

impl ANValue {
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

/// `A_N = prod_p (1 + f^2 h + f h p^-sigma) / (1 + f^2)`. Fails if any
/// factor is below 1.
pub fn compute_a_n(layers: &PrimeLayers) -> Result<ANValue> {
    let mut acc = CompensatedSum::new();
    let mut direct = 1.0f64;
    for (&p, &f) in layers.primes.iter().zip(&layers.weights) {
        let h = h_prime(p);
        let x = p as f64;
        let num = f * f * h + f * h * x.powf(-layers.sigma);
        let den = f * f;
        if num < den {
            return Err(Error::numeric(format!("A_N factor below 1 at p = {p}")));
        }
        acc.add(num.ln_1p() - den.ln_1p());
        direct *= (1.0 + num) / (1.0 + den);
    }
    Ok(ANValue {
        log_value: acc.value(),
        direct_product: direct,
    })
}

/// `delta gamma (log N)^(1 - sigma) (log log log N)^sigma (log log N)^-sigma`.
pub fn prop31_bound(cfg: &ResonatorConfig) -> f64 {
    let (l1, l2, l3) = cfg.logs();
    let s = cfg.sigma();
    cfg.delta * cfg.gamma * l1.powf(1.0 - s) * l3.powf(s) * l2.powf(-s)
}

/// `sum_{p in P_k} p^(-2 sigma)` next to `(log log N)^(-2 sigma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerSum {
    pub k: usize,
    pub sum: f64,
    pub scale: f64,
    /// `sum / scale`, the empirical `delta` of this layer.
    pub ratio: f64,
}

pub fn chirre_layer_sum(k: usize, layers: &PrimeLayers, n: u64) -> Result<LayerSum> {
    let layer = layers
        .layers
        .iter()
        .find(|l| l.k == k)
        .ok_or_else(|| Error::domain(format!("no layer {k}")))?;
    if layer.members.is_empty() {
        return Err(Error::domain(format!("layer {k} is empty")));
    }
    let s = layers.sigma;
    let sum = crate::summation::sum(
        layer
            .members
            .iter()
            .map(|&i| (layers.primes[i] as f64).powf(-2.0 * s)),
    );
    let scale = loglog(n as f64).powf(-2.0 * s);
    Ok(LayerSum {
        k,
        sum,
        scale,
        ratio: sum / scale,
    })
}

/// `(e - 1)(b - 1) - a log b`.
pub fn exponent_coefficient(a: f64, b: f64) -> f64 {
    (E - 1.0) * (b - 1.0) - a * b.ln()
}

/// The minimiser `a / (e - 1)` of [`exponent_coefficient`].
pub fn find_optimal_b(a: f64) -> Result<f64> {
    if !(a > E - 1.0) {
        return Err(Error::domain(format!("need a > e - 1, got {a}")));
    }
    Ok(a / (E - 1.0))
}

/// `b^(-Delta_k) exp((b - 1) sum_{p in P_k} f(p)^2)`.
pub fn prop32_chernoff(layers: &PrimeLayers, k: usize, b: f64) -> Result<f64> {
    if !(b > 1.0) {
        return Err(Error::domain(format!("need b > 1, got {b}")));
    }
    let layer = layers
        .layers
        .iter()
        .find(|l| l.k == k)
        .ok_or_else(|| Error::domain(format!("no layer {k}")))?;
    let mass = crate::summation::sum(layer.members.iter().map(|&i| layers.weights[i].powi(2)));
    Ok((-layer.delta * b.ln() + (b - 1.0) * mass).exp())
}

/// Per-prime pieces of the exhaustive sums: `t = h (f p^-sigma + f^2)`,
/// `A = h f^2`, `B = h f p^-sigma`.
struct Terms {
    t: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

fn terms(layers: &PrimeLayers) -> Terms {
    let mut out = Terms {
        t: Vec::new(),
        a: Vec::new(),
        b: Vec::new(),
    };
    for (&p, &f) in layers.primes.iter().zip(&layers.weights) {
        let h = h_prime(p);
        let a = h * f * f;
        let b = h * f * (p as f64).powf(-layers.sigma);
        out.t.push(a + b);
        out.a.push(a);
        out.b.push(b);
    }
    out
}

fn guard(layers: &PrimeLayers) -> Result<()> {
    if layers.len() > EXACT_PRIME_GUARD {
        return Err(Error::resource(format!(
            "exact enumeration limited to {EXACT_PRIME_GUARD} primes, got {}",
            layers.len()
        )));
    }
    Ok(())
}

/// Mass outside `M` relative to `A_N`:
/// `sum_{n not in M} f(n) h(n) n^-sigma sum_{q | n} f(q) q^sigma`, divided by
/// `A_N sum_n f(n)^2`.
pub fn prop32_exact_ratio(layers: &PrimeLayers) -> Result<f64> {
    guard(layers)?;
    let tm = terms(layers);
    let n = layers.len();
    let limit: Vec<f64> = layers.layers.iter().map(|l| l.delta).collect();
    let mut acc = CompensatedSum::new();
    let mut counts = vec![0usize; layers.layers.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        prod: f64,
        n: usize,
        tm: &Terms,
        layers: &PrimeLayers,
        limit: &[f64],
        counts: &mut Vec<usize>,
        acc: &mut CompensatedSum,
    ) {
        if i == n {
            if counts.iter().zip(limit).any(|(&c, &d)| c as f64 >= d) {
                acc.add(prod);
            }
            return;
        }
        rec(i + 1, prod, n, tm, layers, limit, counts, acc);
        let k = layers.layer_of[i];
        counts[k] += 1;
        rec(i + 1, prod * tm.t[i], n, tm, layers, limit, counts, acc);
        counts[k] -= 1;
    }
    rec(0, 1.0, n, &tm, layers, &limit, &mut counts, &mut acc);
    let total: f64 = tm.t.iter().map(|t| t.ln_1p()).sum::<f64>().exp();
    Ok(acc.value() / total)
}

/// Upper bound for [`prop32_exact_ratio`] through the per-layer Chernoff
/// estimate: `sum_k chernoff_k prod_{p in P_k} (1 + 1 / (f(p) p^sigma))`.
/// Valid when every `f(p) <= p^(1 - sigma)`, which is checked.
pub fn prop32_chain_bound(layers: &PrimeLayers, b: f64) -> Result<f64> {
    let mut total = CompensatedSum::new();
    for layer in &layers.layers {
        if layer.members.is_empty() {
            continue;
        }
        let mut extra = 0.0;
        for &i in &layer.members {
            let p = layers.primes[i] as f64;
            let f = layers.weights[i];
            if f > p.powf(1.0 - layers.sigma) {
                return Err(Error::numeric(format!("f({p}) exceeds p^(1 - sigma)")));
            }
            extra += (1.0 / (f * p.powf(layers.sigma))).ln_1p();
        }
        total.add(prop32_chernoff(layers, layer.k, b)? * extra.exp());
    }
    Ok(total.value())
}

/// Sum of [`prop32_chernoff`] over the layers, without the divisor factor.
pub fn prop32_summed_chernoff(layers: &PrimeLayers, b: f64) -> Result<f64> {
    let mut total = CompensatedSum::new();
    for layer in &layers.layers {
        if !layer.members.is_empty() {
            total.add(prop32_chernoff(layers, layer.k, b)?);
        }
    }
    Ok(total.value())
}

/// Mass of the short-divisor part relative to `A_N`:
/// `sum_n f(n) h(n) n^-sigma sum_{q | n, q <= n / N^eps} f(q) q^sigma`,
/// divided by `A_N sum_n f(n)^2`.
///
/// Writing `n = q r` the inner condition is `r >= N^eps`, and the sum
/// becomes `sum_{r >= N^eps} B(r) prod_{p not dividing r} (1 + A(p))`.
pub fn prop33_exact_ratio(layers: &PrimeLayers, n_param: u64, eps: f64) -> Result<f64> {
    guard(layers)?;
    let tm = terms(layers);
    let n = layers.len();
    let log_threshold = eps * (n_param as f64).ln();
    let ln_p: Vec<f64> = layers.primes.iter().map(|&p| (p as f64).ln()).collect();
    let log_all_a: f64 = tm.a.iter().map(|a| a.ln_1p()).sum();
    let mut acc = CompensatedSum::new();
    // walk subsets r; carry B(r) / prod_{p | r} (1 + A(p)) and log r
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        weight: f64,
        log_r: f64,
        n: usize,
        tm: &Terms,
        ln_p: &[f64],
        thr: f64,
        acc: &mut CompensatedSum,
    ) {
        if i == n {
            // r >= N^eps, with a little slack for r = N^eps exactly
            if log_r >= thr - 1e-12 {
                acc.add(weight);
            }
            return;
        }
        rec(i + 1, weight, log_r, n, tm, ln_p, thr, acc);
        rec(
            i + 1,
            weight * tm.b[i] / (1.0 + tm.a[i]),
            log_r + ln_p[i],
            n,
            tm,
            ln_p,
            thr,
            acc,
        );
    }
    rec(0, 1.0, 0.0, n, &tm, &ln_p, log_threshold, &mut acc);
    let log_total: f64 = tm.t.iter().map(|t| t.ln_1p()).sum();
    Ok(acc.value() * (log_all_a - log_total).exp())
}

/// `1 / (2 (e - 1) e^A)`.
pub fn lambda_a(big_a: f64) -> Result<f64> {
    if !(big_a >= 0.0) {
        return Err(Error::domain(format!("A must be nonnegative, got {big_a}")));
    }
    Ok(1.0 / (2.0 * (E - 1.0) * big_a.exp()))
}

/// Smallest `X` accepted by [`theorem_lower_bound`].
pub const BASELINE_MIN_X: u64 = 10_000;

/// `exp(lambda(A) sqrt(log X log log log X / log log X))`, the asymptotic
/// baseline with the `o(1)` dropped.
pub fn theorem_lower_bound(x: u64, big_a: f64) -> Result<f64> {
    if x < BASELINE_MIN_X {
        return Err(Error::domain(format!(
            "baseline needs X >= {BASELINE_MIN_X}, got {x}"
        )));
    }
    let xf = x as f64;
    let inner = xf.ln() * logloglog(xf) / loglog(xf);
    Ok((lambda_a(big_a)? * inner.sqrt()).exp())
}
