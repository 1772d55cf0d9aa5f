use super::layers::PrimeLayers;
use super::set::allowed;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Block {
    /// Indices into the prime list.
    index: Vec<usize>,
    weights: Vec<f64>,
    limit: usize,
}

impl Block {
    /// `sum_{j <= limit} e_j(xs)` by the usual one-pass recurrence.
    fn bounded_symmetric_sum(&self, xs: impl Iterator<Item = f64>, e: &mut Vec<f64>) -> f64 {
        e.clear();
        e.resize(self.limit + 1, 0.0);
        e[0] = 1.0;
        for (i, x) in xs.enumerate() {
            for j in (1..=self.limit.min(i + 1)).rev() {
                e[j] += x * e[j - 1];
            }
        }
        crate::summation::sum(e.iter().copied())
    }
}

/// `M` in product form: per layer, any subset with at most `limit` primes.
/// Evaluates `sum_m f(m) chi(m)` without listing the members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactoredSet {
    pub primes: Vec<u64>,
    blocks: Vec<Block>,
    size: u128,
    mass: f64,
    max_ln_m: f64,
}

fn binomial_prefix(n: usize, k: usize) -> u128 {
    let mut c = 1u128;
    let mut total = 1u128;
    for j in 1..=k.min(n) {
        c = c * (n - j + 1) as u128 / j as u128;
        total += c;
    }
    total
}

impl FactoredSet {
    pub fn from_layers(layers: &PrimeLayers) -> Self {
        let mut blocks = Vec::with_capacity(layers.layers.len());
        let mut size = 1u128;
        let mut max_ln_m = 0.0;
        for layer in &layers.layers {
            let limit = allowed(layer.delta).min(layer.members.len());
            let weights: Vec<f64> = layer.members.iter().map(|&i| layers.weights[i]).collect();
            size = size.saturating_mul(binomial_prefix(layer.members.len(), limit));
            let mut logs: Vec<f64> = layer
                .members
                .iter()
                .map(|&i| (layers.primes[i] as f64).ln())
                .collect();
            logs.sort_by(|a, b| b.total_cmp(a));
            max_ln_m += logs.iter().take(limit).sum::<f64>();
            blocks.push(Block {
                index: layer.members.clone(),
                weights,
                limit,
            });
        }
        let mut e = Vec::new();
        let mass = blocks
            .iter()
            .map(|b| b.bounded_symmetric_sum(b.weights.iter().map(|f| f * f), &mut e))
            .product();
        Self {
            primes: layers.primes.clone(),
            blocks,
            size,
            mass,
            max_ln_m,
        }
    }

    /// The set `{1}`.
    pub fn trivial() -> Self {
        Self {
            primes: Vec::new(),
            blocks: Vec::new(),
            size: 1,
            mass: 1.0,
            max_ln_m: 0.0,
        }
    }

    /// `|M|`.
    pub fn size(&self) -> u128 {
        self.size
    }

    /// `sum_m f(m)^2`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `log max M`.
    pub fn max_ln_m(&self) -> f64 {
        self.max_ln_m
    }

    /// `sum_m f(m) chi(m)` given `chi` on the prime set.
    pub fn value(&self, chi_p: &[i8], scratch: &mut Vec<f64>) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let xs = b
                    .index
                    .iter()
                    .zip(&b.weights)
                    .map(|(&i, &f)| f * chi_p[i] as f64);
                b.bounded_symmetric_sum(xs, scratch)
            })
            .product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonator::{build_m, build_prime_layers, ResonatorConfig};

    fn chi_pattern(len: usize, seed: u64) -> Vec<i8> {
        (0..len as u64)
            .map(|i| match (i * 7 + seed * 13) % 5 {
                0 => 0,
                1 | 3 => -1,
                _ => 1,
            })
            .collect()
    }

    #[test]
    fn matches_member_list() {
        let cfg = ResonatorConfig::new(1_000_000, 1.0).unwrap();
        let layers = build_prime_layers(&cfg).unwrap();
        let set = build_m(&layers, cfg.m_cap).unwrap();
        let fs = FactoredSet::from_layers(&layers);
        assert_eq!(fs.size(), set.len() as u128);
        assert!((fs.mass() - set.mass).abs() <= 1e-13 * set.mass);
        assert!((fs.max_ln_m() - (set.max_member() as f64).ln()).abs() < 1e-12);
        let mut chi_m = Vec::new();
        let mut scratch = Vec::new();
        for seed in 0..6 {
            let chi = chi_pattern(layers.len(), seed);
            set.characters(&chi, &mut chi_m);
            let direct: f64 = set
                .members
                .iter()
                .zip(&chi_m)
                .map(|(x, &c)| x.f * c as f64)
                .sum();
            let got = fs.value(&chi, &mut scratch);
            assert!(
                (got - direct).abs() <= 1e-12 * direct.abs().max(1.0),
                "{got} vs {direct}"
            );
        }
    }

    #[test]
    fn unbounded_layer_is_full_product() {
        let cfg = ResonatorConfig::new(1_000_000, 0.0).unwrap();
        let layers = build_prime_layers(&cfg).unwrap();
        let fs = FactoredSet::from_layers(&layers);
        assert_eq!(fs.size(), 1 << layers.len());
        let chi = chi_pattern(layers.len(), 3);
        let want: f64 = layers
            .weights
            .iter()
            .zip(&chi)
            .map(|(f, &c)| 1.0 + f * c as f64)
            .product();
        assert!((fs.value(&chi, &mut Vec::new()) - want).abs() <= 1e-13 * want.abs());
    }

    #[test]
    fn trivial_is_one() {
        let fs = FactoredSet::trivial();
        assert_eq!(fs.value(&[], &mut Vec::new()), 1.0);
        assert_eq!((fs.size(), fs.mass()), (1, 1.0));
    }
}
