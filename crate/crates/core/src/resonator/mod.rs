//! The resonator: prime set and layers, weights `f`, the divisor-closed set
//! `M`, the normalising product `A_N` and the estimates around it.

mod config;
mod factored;
mod layers;
mod props;
mod set;

pub use config::{derive_sigma, ResonatorConfig, DEFAULT_A, DEFAULT_GAMMA, MIN_N};
pub use factored::FactoredSet;
pub use layers::{
    build_prime_layers, f_value, layer_threshold, prime_interval, Layer, PrimeLayers,
};
pub use props::{
    chirre_layer_sum, compute_a_n, exponent_coefficient, find_optimal_b, lambda_a, prop31_bound,
    prop32_chain_bound, prop32_chernoff, prop32_exact_ratio, prop32_summed_chernoff,
    prop33_exact_ratio, theorem_lower_bound, ANValue, LayerSum, BASELINE_MIN_X, EXACT_PRIME_GUARD,
};
pub use set::{build_m, Member, ResonatorSet};

use crate::{Error, Result};
use serde::Serialize;

/// Flags raised while building a resonator; none of them stop the build.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResonatorDiagnostics {
    /// `M = {1}`: no prime qualifies, or no layer admits one.
    pub degenerate: bool,
    pub small_delta_layers: Vec<usize>,
    /// `|M| > N`: the parameters are outside the asymptotic regime.
    pub pre_asymptotic: bool,
    /// Some `f(p) >= (log log log N)^(sigma - 1)`.
    pub f_bound_exceeded: bool,
    /// The smallest `C` with `m <= exp(C log N log3 N / log2 N)` on `M`.
    pub size_constant: f64,
}

/// Largest `log m` accepted when listing members.
const U64_LN_LIMIT: f64 = 44.3;

/// Configuration, layers and set built together.
#[derive(Debug, Clone)]
pub struct Resonator {
    pub config: ResonatorConfig,
    pub layers: PrimeLayers,
    pub factored: FactoredSet,
    /// The member list, absent when some member does not fit in a `u64`.
    pub set: Option<ResonatorSet>,
    pub diagnostics: ResonatorDiagnostics,
}

impl Resonator {
    pub fn build(config: &ResonatorConfig) -> Result<Self> {
        let layers = build_prime_layers(config)?;
        let factored = FactoredSet::from_layers(&layers);
        if factored.size() > config.m_cap as u128 {
            return Err(Error::resource(format!(
                "resonator set has {} members, above m_cap = {}",
                factored.size(),
                config.m_cap
            )));
        }
        let set = if factored.max_ln_m() < U64_LN_LIMIT {
            Some(build_m(&layers, config.m_cap)?)
        } else {
            None
        };
        let (l1, l2, l3) = config.logs();
        let bound = l3.powf(config.sigma() - 1.0);
        let scale = l1 * l3 / l2;
        let diagnostics = ResonatorDiagnostics {
            degenerate: factored.size() == 1,
            small_delta_layers: layers.small_delta_layers.clone(),
            pre_asymptotic: factored.size() > config.n as u128,
            f_bound_exceeded: layers.weights.iter().any(|&f| f >= bound),
            size_constant: factored.max_ln_m() / scale,
        };
        Ok(Self {
            config: *config,
            layers,
            factored,
            set,
            diagnostics,
        })
    }

    /// The member list, or a resource error if it cannot be represented.
    pub fn members(&self) -> Result<&ResonatorSet> {
        self.set.as_ref().ok_or_else(|| {
            Error::resource(format!(
                "resonator members reach e^{:.1} and do not fit in u64",
                self.factored.max_ln_m()
            ))
        })
    }

    pub fn sigma(&self) -> f64 {
        self.layers.sigma
    }
}
