use super::config::ResonatorConfig;
use crate::arith::sieve_primes;
use crate::Result;
use serde::{Deserialize, Serialize};

/// One layer `P_k` with its threshold `Delta_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub k: usize,
    pub lower: f64,
    pub upper: f64,
    /// Indices into [`PrimeLayers::primes`].
    pub members: Vec<usize>,
    pub delta: f64,
}

/// The prime set with weights `f(p)` and its layer decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeLayers {
    pub sigma: f64,
    pub lower: f64,
    pub upper: f64,
    pub primes: Vec<u64>,
    pub weights: Vec<f64>,
    /// Layer position (0-based) of each prime.
    pub layer_of: Vec<usize>,
    pub layers: Vec<Layer>,
    /// Layers whose threshold is below 2.
    pub small_delta_layers: Vec<usize>,
}

impl PrimeLayers {
    /// No prime qualifies; the resonator collapses to `{1}`.
    pub fn is_degenerate(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn weight_of(&self, p: u64) -> f64 {
        match self.primes.binary_search(&p) {
            Ok(i) => self.weights[i],
            Err(_) => 0.0,
        }
    }

    /// Hand-made layers: each entry lists primes and a threshold. The
    /// weights come from the usual formula for `cfg`.
    pub fn synthetic(cfg: &ResonatorConfig, groups: &[(Vec<u64>, f64)]) -> Result<Self> {
        cfg.validate()?;
        let sigma = cfg.sigma();
        let mut tagged: Vec<(u64, usize)> = Vec::new();
        let mut layers = Vec::new();
        for (k, (ps, delta)) in groups.iter().enumerate() {
            for &p in ps {
                tagged.push((p, k));
            }
            layers.push(Layer {
                k: k + 1,
                lower: f64::NAN,
                upper: f64::NAN,
                members: Vec::new(),
                delta: *delta,
            });
        }
        tagged.sort_unstable();
        tagged.dedup_by_key(|t| t.0);
        let primes: Vec<u64> = tagged.iter().map(|t| t.0).collect();
        let layer_of: Vec<usize> = tagged.iter().map(|t| t.1).collect();
        for (i, &k) in layer_of.iter().enumerate() {
            layers[k].members.push(i);
        }
        let weights = primes.iter().map(|&p| f_formula(p as f64, cfg)).collect();
        let small_delta_layers = layers
            .iter()
            .filter(|l| l.delta < 2.0)
            .map(|l| l.k)
            .collect();
        Ok(Self {
            sigma,
            lower: primes.first().copied().unwrap_or(0) as f64,
            upper: primes.last().copied().unwrap_or(0) as f64,
            primes,
            weights,
            layer_of,
            layers,
            small_delta_layers,
        })
    }
}

/// `(e log N log log N, exp((log log N)^gamma) log N log log N]`.
pub fn prime_interval(cfg: &ResonatorConfig) -> (f64, f64) {
    let (l1, l2, _) = cfg.logs();
    let base = l1 * l2;
    (
        std::f64::consts::E * base,
        (l2.powf(cfg.gamma)).exp() * base,
    )
}

/// The weight formula without the membership test.
pub(crate) fn f_formula(p: f64, cfg: &ResonatorConfig) -> f64 {
    let (l1, l2, l3) = cfg.logs();
    let sigma = cfg.sigma();
    let scale = l1.powf(1.0 - sigma) * l2.powf(sigma) / l3.powf(1.0 - sigma);
    scale / (p.powf(sigma) * (p.ln() - l2 - l3))
}

/// `f(p)`: the weight formula on the prime set, zero elsewhere.
pub fn f_value(p: u64, cfg: &ResonatorConfig) -> f64 {
    let (lo, hi) = prime_interval(cfg);
    let x = p as f64;
    if x > lo && x <= hi {
        f_formula(x, cfg)
    } else {
        0.0
    }
}

/// `Delta_k = a (log N)^(2 - 2 sigma) / (k^2 (log log log N)^(2 - 2 sigma))`.
pub fn layer_threshold(cfg: &ResonatorConfig, k: usize) -> f64 {
    let (l1, _, l3) = cfg.logs();
    let e = 2.0 - 2.0 * cfg.sigma();
    cfg.a * l1.powf(e) / ((k * k) as f64 * l3.powf(e))
}

pub fn build_prime_layers(cfg: &ResonatorConfig) -> Result<PrimeLayers> {
    cfg.validate()?;
    let (l1, l2, _) = cfg.logs();
    let base = l1 * l2;
    let (lower, upper) = prime_interval(cfg);
    let primes = sieve_primes(lower, upper)?;
    let weights: Vec<f64> = primes.iter().map(|&p| f_formula(p as f64, cfg)).collect();
    let count = l2.powf(cfg.gamma).floor() as usize;
    let mut layers: Vec<Layer> = (1..=count)
        .map(|k| Layer {
            k,
            lower: (k as f64).exp() * base,
            upper: (k as f64 + 1.0).exp() * base,
            members: Vec::new(),
            delta: layer_threshold(cfg, k),
        })
        .collect();
    let mut layer_of = Vec::with_capacity(primes.len());
    for (i, &p) in primes.iter().enumerate() {
        let x = p as f64;
        let pos = layers
            .iter()
            .position(|l| x > l.lower && x <= l.upper)
            .unwrap_or(count.saturating_sub(1));
        layers[pos].members.push(i);
        layer_of.push(pos);
    }
    let small_delta_layers = layers
        .iter()
        .filter(|l| l.delta < 2.0)
        .map(|l| l.k)
        .collect();
    Ok(PrimeLayers {
        sigma: cfg.sigma(),
        lower,
        upper,
        primes,
        weights,
        layer_of,
        layers,
        small_delta_layers,
    })
}
