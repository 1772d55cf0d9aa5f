use super::checks::{check_afe, check_u, s2_reassociated, DEFAULT_SEED};
use super::lemma::{check_lemma21_many, lemma_main_term};
use crate::arith::{count_fundamental, kronecker, kronecker_at_prime, radical, Signs};
use crate::lfun::{AfeConfig, AfeEvaluator, Parity};
use crate::resonance::{compute_s2, run_scan, LSource, ScanConfig};
use crate::resonator::{
    build_m, build_prime_layers, compute_a_n, exponent_coefficient, f_value, find_optimal_b,
    prop32_chain_bound, prop32_exact_ratio, prop33_exact_ratio, FactoredSet, PrimeLayers,
    ResonatorConfig, ResonatorSet,
};
use crate::{loglog, logloglog, Error, Result, ZETA_2};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::domain(format!("unknown level '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A recorded property that does not hold here, reported rather than
    /// treated as a failure.
    Flagged,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub invariant_id: String,
    pub module: String,
    pub status: Status,
    pub witness: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub level: Level,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&SuiteEntry> {
        self.entries.iter().find(|e| e.invariant_id == id)
    }
}

/// Which group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    /// The character-sum average and its main term.
    Lemma21,
    Afe,
    U,
    /// Arithmetic, resonator and resonance invariants.
    Props,
    All,
}

impl Selection {
    pub fn covers(self, id: &str) -> bool {
        match self {
            Selection::Lemma21 => id.starts_with("verify."),
            Selection::Afe => id.starts_with("lfun.afe"),
            Selection::U => id.starts_with("lfun.u_"),
            Selection::Props => ["arith.", "resonator.", "resonance."]
                .iter()
                .any(|g| id.starts_with(g)),
            Selection::All => true,
        }
    }
}

impl std::str::FromStr for Selection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma21" => Ok(Selection::Lemma21),
            "afe" => Ok(Selection::Afe),
            "u" => Ok(Selection::U),
            "props" => Ok(Selection::Props),
            "all" => Ok(Selection::All),
            _ => Err(Error::domain(format!("unknown suite '{s}'"))),
        }
    }
}

/// Deliberate corruption of the resonator weights, for checking that the
/// suite localises faults.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FaultInjection {
    /// Multiply every stored `f(p)` by `1 + perturb_f`.
    pub perturb_f: Option<f64>,
}

/// Outcome of a single check body.
enum Outcome {
    Pass,
    Fail(String),
    Flag(String),
}

fn ok_if(cond: bool, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Outcome::Pass
    } else {
        Outcome::Fail(witness())
    }
}

fn flag_if_not(cond: bool, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Outcome::Pass
    } else {
        Outcome::Flag(witness())
    }
}

struct Runner {
    select: Selection,
    entries: Vec<SuiteEntry>,
}

impl Runner {
    fn run(&mut self, id: &str, module: &str, body: impl FnOnce() -> Result<Outcome>) {
        if !self.select.covers(id) {
            return;
        }
        let start = Instant::now();
        let (status, witness) = match body() {
            Ok(Outcome::Pass) => (Status::Pass, None),
            Ok(Outcome::Fail(w)) => (Status::Fail, Some(w)),
            Ok(Outcome::Flag(w)) => (Status::Flagged, Some(w)),
            Err(e) => (Status::Fail, Some(format!("error: {e}"))),
        };
        self.entries.push(SuiteEntry {
            invariant_id: id.to_owned(),
            module: module.to_owned(),
            status,
            witness,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
}

fn euler_criterion(d: i64, p: u64) -> i8 {
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let mut acc = 1u64;
    let mut base = r;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Residue table oracle for `p = 2`: `chi_d(2)` from `d mod 8`.
fn chi_two(d: i64) -> i8 {
    match d.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// `(d, p)` with the Kronecker symbol disagreeing with the residue oracles,
/// over fundamental `|d| <= d_max` and primes `p < p_max`.
pub fn kronecker_oracle_mismatch(d_max: u64, p_max: u64) -> Option<(i64, u64)> {
    let ds = crate::arith::enumerate_fundamental(0, d_max, Signs::Both).ok()?;
    let primes = crate::arith::sieve_primes(1.0, p_max as f64 - 0.5).ok()?;
    for d in &ds {
        for &p in &primes {
            let want = if p == 2 {
                chi_two(d.get())
            } else {
                euler_criterion(d.get(), p)
            };
            if kronecker(d.get(), p) != want {
                return Some((d.get(), p));
            }
        }
    }
    None
}

fn perturbed(layers: &PrimeLayers, set: &ResonatorSet, by: f64) -> (PrimeLayers, ResonatorSet) {
    let mut l = layers.clone();
    for w in &mut l.weights {
        *w *= 1.0 + by;
    }
    let mut s = set.clone();
    for (i, x) in s.members.clone().iter().enumerate() {
        if x.prime != u32::MAX {
            s.members[i].f = s.members[x.parent as usize].f * l.weights[x.prime as usize];
        }
    }
    (l, s)
}

pub fn run_property_suite(level: Level) -> SuiteReport {
    run_property_suite_with(level, FaultInjection::default())
}

pub fn run_property_suite_with(level: Level, fault: FaultInjection) -> SuiteReport {
    run_suite(Selection::All, level, DEFAULT_SEED, fault)
}

/// Runs the checks covered by `select`. `seed` drives the discriminant
/// sample of the approximate-functional-equation checks.
pub fn run_suite(select: Selection, level: Level, seed: u64, fault: FaultInjection) -> SuiteReport {
    let full = level == Level::Full;
    let mut r = Runner {
        select,
        entries: Vec::new(),
    };
    let lcfg = AfeConfig::default();

    // arith
    r.run("arith.kronecker_residue_oracle", "arith", || {
        let m = kronecker_oracle_mismatch(500, 1000);
        Ok(ok_if(m.is_none(), || format!("(d, p) = {m:?}")))
    });
    r.run("arith.kronecker_multiplicative", "arith", || {
        let lim = if full { 300 } else { 80 };
        for d in -lim..=lim {
            for a in 1..=lim as u64 {
                for b in [2u64, 3, 7, 12, 45] {
                    if kronecker(d, a * b) != kronecker(d, a) * kronecker(d, b) {
                        return Ok(Outcome::Fail(format!("d = {d}, a = {a}, b = {b}")));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });
    r.run("arith.fundamental_density", "arith", || {
        let x = 1_000_000u64;
        let c = count_fundamental(0, x, Signs::Both) as f64;
        let rel = (c - x as f64 / ZETA_2).abs() / (x as f64 / ZETA_2);
        Ok(ok_if(rel <= 0.002, || {
            format!("count {c}, relative deviation {rel:e}")
        }))
    });

    // lfun
    let alphas = [0.0, 0.01, 0.1];
    let mut u_records = Vec::new();
    r.run("lfun.u_limits", "lfun", || {
        for parity in [Parity::Even, Parity::Odd] {
            u_records.extend(check_u(&alphas, parity, &lcfg)?);
        }
        let bad: Vec<_> = u_records.iter().filter(|u| !u.limits_hold()).collect();
        Ok(ok_if(bad.is_empty(), || format!("{bad:?}")))
    });
    r.run("lfun.u_positivity", "lfun", || {
        let bad = u_records.iter().find(|u| !u.positive());
        Ok(flag_if_not(bad.is_none(), || {
            let u = bad.unwrap();
            format!(
                "u_positivity_violation: U_{} ({:?}) = {:.3e} at x = {:.3e}",
                u.alpha, u.parity, u.grid_min, u.grid_argmin
            )
        }))
    });
    r.run("lfun.afe_vs_exact", "lfun", || {
        let count = if full { 50 } else { 8 };
        let res = check_afe(count, (1000, 10_000), &[0.0, 1e-3, 1e-2, 5e-2], &lcfg, seed)?;
        Ok(ok_if(res.max_rel_err <= 1e-6, || format!("{res:?}")))
    });
    r.run("lfun.afe_continuity", "lfun", || {
        let ds =
            super::checks::sample_discriminants(if full { 20 } else { 5 }, 1000, 10_000, seed)?;
        for &a in &[0.0, 0.01] {
            let e0 = AfeEvaluator::new(a, &lcfg, 10_000, Signs::Both)?;
            let e1 = AfeEvaluator::new(a + 1e-6, &lcfg, 10_000, Signs::Both)?;
            for &d in &ds {
                let gap = (e1.eval(d)? - e0.eval(d)?).abs();
                if gap > 1e-3 {
                    return Ok(Outcome::Fail(format!("d = {d}, alpha = {a}: gap {gap:e}")));
                }
            }
        }
        Ok(Outcome::Pass)
    });
    if full {
        r.run("lfun.afe_step_stability", "lfun", || {
            let half = AfeConfig {
                quad_step: lcfg.quad_step / 2.0,
                ..lcfg
            };
            let a = check_afe(10, (1000, 10_000), &[0.0, 0.05], &lcfg, seed)?;
            let b = check_afe(10, (1000, 10_000), &[0.0, 0.05], &half, seed)?;
            let delta = (a.max_rel_err - b.max_rel_err).abs();
            Ok(ok_if(delta <= 1e-9, || {
                format!("worst errors {} and {}", a.max_rel_err, b.max_rel_err)
            }))
        });
    }

    // resonator
    let rcfg = ResonatorConfig::new(1_000_000, 1.0).expect("defaults are valid");
    let built = build_prime_layers(&rcfg).and_then(|l| build_m(&l, rcfg.m_cap).map(|s| (l, s)));
    match built {
        Err(e) => r.run("resonator.build", "resonator", || {
            Ok(Outcome::Fail(e.to_string()))
        }),
        Ok((layers, set)) => {
            let (layers, set) = match fault.perturb_f {
                Some(by) => perturbed(&layers, &set, by),
                None => (layers, set),
            };
            resonator_checks(&mut r, &rcfg, &layers, &set, full);
        }
    }
    r.run("resonator.prop32_chain", "resonator", || {
        let cfg = ResonatorConfig::new(100_000, 1.0)?;
        let l = build_prime_layers(&cfg)?;
        let exact = prop32_exact_ratio(&l)?;
        let bound = prop32_chain_bound(&l, cfg.b())?;
        Ok(ok_if(exact <= bound, || {
            format!("exact {exact:e} > bound {bound:e}")
        }))
    });
    r.run("resonator.optimal_b", "resonator", || {
        let b = find_optimal_b(1.8)?;
        let c = exponent_coefficient(1.8, b);
        Ok(ok_if(
            (b - 1.8 / (std::f64::consts::E - 1.0)).abs() <= 1e-12 && c < 0.0,
            || format!("b = {b}, coefficient {c}"),
        ))
    });
    r.run("resonator.prop33_vanishing", "resonator", || {
        let cfg = ResonatorConfig::new(1000, 1.0)?;
        let l = build_prime_layers(&cfg)?;
        let v = prop33_exact_ratio(&l, cfg.n, 10.0)?;
        Ok(ok_if(v == 0.0, || format!("value {v}")))
    });

    // resonance
    r.run("resonance.s2_reassociation", "resonance", || {
        let cfg = ScanConfig {
            x: 200,
            big_a: 0.5,
            n_explicit: Some(1000),
            workers: 2,
            ..Default::default()
        };
        let set = build_m(
            &build_prime_layers(&ResonatorConfig::new(1000, 0.5)?)?,
            1000,
        )?;
        let direct = compute_s2(&cfg, &set)?;
        let re = s2_reassociated(&cfg, &set)?;
        let rel = (direct - re).abs() / direct;
        Ok(ok_if(rel <= 1e-9, || {
            format!("direct {direct}, re-associated {re}")
        }))
    });
    r.run("resonance.maxl_ge_ratio", "resonance", || {
        let cfg = ScanConfig {
            x: if full { 10_000 } else { 2_000 },
            big_a: 1.0,
            workers: 4,
            ..Default::default()
        };
        let rep = run_scan(&cfg, &lcfg)?;
        let ratio = rep.ratio.unwrap_or(f64::NAN);
        Ok(ok_if(rep.max_l >= ratio - 1e-6, || {
            format!("maxL {} < ratio {ratio}", rep.max_l)
        }))
    });
    r.run("resonance.determinism", "resonance", || {
        let base = ScanConfig {
            x: 3000,
            big_a: 1.0,
            n_explicit: Some(100_000),
            ..Default::default()
        };
        let a = run_scan(
            &ScanConfig {
                workers: 1,
                ..base.clone()
            },
            &lcfg,
        )?
        .without_timing();
        let b = run_scan(
            &ScanConfig {
                workers: 3,
                ..base.clone()
            },
            &lcfg,
        )?
        .without_timing();
        let c = run_scan(&ScanConfig { workers: 3, ..base }, &lcfg)?.without_timing();
        Ok(ok_if(a == b && b == c, || {
            format!("S1 {:?} / {:?}", a.s1, b.s1)
        }))
    });
    r.run("resonance.first_moment_band", "resonance", || {
        let cfg = ScanConfig {
            x: 10_000,
            big_a: 0.0,
            n_explicit: Some(1),
            workers: 4,
            ..Default::default()
        };
        let rep = run_scan(&cfg, &lcfg)?;
        let ratio = rep.ratio.unwrap_or(f64::NAN);
        Ok(flag_if_not(ratio > 1.0 / 3.0 && ratio < 3.0, || {
            format!("S1/S2 = {ratio}")
        }))
    });
    if full {
        r.run("resonance.exact_l_in_s1", "resonance", || {
            let cfg = ScanConfig {
                x: 2000,
                big_a: 1.0,
                n_explicit: Some(1000),
                workers: 4,
                ..Default::default()
            };
            let set = build_m(
                &build_prime_layers(&ResonatorConfig::new(1000, 1.0)?)?,
                1000,
            )?;
            let afe = crate::resonance::compute_s1(&cfg, &set, &lcfg)?;
            let exact = crate::resonance::compute_s1(
                &ScanConfig {
                    l_source: LSource::Exact,
                    ..cfg
                },
                &set,
                &lcfg,
            )?;
            let rel = ((afe - exact) / exact).abs();
            Ok(ok_if(rel <= 1e-6, || format!("AFE {afe}, exact {exact}")))
        });
    }

    // verify
    r.run("verify.lemma21_dichotomy", "verify", || {
        let x = if full { 1_000_000 } else { 100_000 };
        let ns: Vec<u64> = (1..=if full { 50 } else { 12 }).collect();
        let recs = check_lemma21_many(&ns, x, 0.1)?;
        let xf = x as f64;
        for rec in recs {
            let good = if rec.is_square() {
                rec.abs_err / xf <= 0.01
            } else {
                rec.lhs.abs() / xf <= 0.01 && rec.lhs.abs() <= xf.powf(0.75)
            };
            if !good {
                return Ok(Outcome::Fail(format!("{rec:?}")));
            }
        }
        Ok(Outcome::Pass)
    });
    r.run("verify.main_term_radical", "verify", || {
        for n in 1..=50u64 {
            let a = lemma_main_term(n * n, 1000)?;
            let b = lemma_main_term(radical(n)?.pow(2), 1000)?;
            if a != b {
                return Ok(Outcome::Fail(format!("n = {n}")));
            }
        }
        Ok(Outcome::Pass)
    });

    SuiteReport {
        level,
        entries: r.entries,
    }
}

fn resonator_checks(
    r: &mut Runner,
    cfg: &ResonatorConfig,
    layers: &PrimeLayers,
    set: &ResonatorSet,
    full: bool,
) {
    r.run("resonator.divisor_closure", "resonator", || {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let picks: Vec<usize> = if full || set.len() <= 1000 {
            (0..set.len()).collect()
        } else {
            sample(&mut rng, set.len(), 1000).into_vec()
        };
        for i in picks {
            let m = set.members[i].m;
            for &p in &layers.primes {
                if m % p == 0 && !set.contains(m / p) {
                    return Ok(Outcome::Fail(format!("m = {m}, p = {p}")));
                }
            }
        }
        Ok(Outcome::Pass)
    });
    r.run("resonator.layer_counts", "resonator", || {
        for x in &set.members {
            for layer in &layers.layers {
                let c = layer
                    .members
                    .iter()
                    .filter(|&&i| x.m % layers.primes[i] == 0)
                    .count();
                if c as f64 >= layer.delta {
                    return Ok(Outcome::Fail(format!(
                        "m = {}, layer {}: {c} >= {}",
                        x.m, layer.k, layer.delta
                    )));
                }
            }
        }
        Ok(Outcome::Pass)
    });
    r.run("resonator.f_positive_decreasing", "resonator", || {
        let w = &layers.weights;
        let ok = w.iter().all(|&f| f > 0.0) && w.windows(2).all(|p| p[0] > p[1]);
        Ok(ok_if(ok, || format!("{w:?}")))
    });
    r.run("resonator.denominator", "resonator", || {
        let (l2, l3) = (loglog(cfg.n as f64), logloglog(cfg.n as f64));
        let bad = layers
            .primes
            .iter()
            .find(|&&p| (p as f64).ln() - l2 - l3 <= 1.0);
        Ok(ok_if(bad.is_none(), || format!("p = {bad:?}")))
    });
    r.run("resonator.m_size_le_n", "resonator", || {
        Ok(flag_if_not(set.len() as u64 <= cfg.n, || {
            format!("pre-asymptotic: |M| = {}", set.len())
        }))
    });
    r.run("resonator.f_bound", "resonator", || {
        let bound = logloglog(cfg.n as f64).powf(cfg.sigma() - 1.0);
        let bad = layers.weights.iter().find(|&&f| f >= bound);
        let witness = || format!("f = {bad:?} >= {bound}");
        Ok(if cfg.n >= 1_000_000 {
            ok_if(bad.is_none(), witness)
        } else {
            flag_if_not(bad.is_none(), witness)
        })
    });
    r.run("resonator.weights_multiplicative", "resonator", || {
        for x in &set.members {
            let want: f64 = layers
                .primes
                .iter()
                .zip(&layers.weights)
                .filter(|(&p, _)| x.m % p == 0)
                .map(|(_, &w)| w)
                .product();
            if (x.f - want).abs() > 1e-12 * want || x.f <= 0.0 {
                return Ok(Outcome::Fail(format!("m = {}", x.m)));
            }
        }
        Ok(Outcome::Pass)
    });
    r.run("resonator.product_form", "resonator", || {
        let fs = FactoredSet::from_layers(layers);
        if fs.size() != set.len() as u128 {
            return Ok(Outcome::Fail(format!(
                "|M| = {} vs {}",
                fs.size(),
                set.len()
            )));
        }
        let (mut chi_m, mut scratch) = (Vec::new(), Vec::new());
        for d in [5i64, -7, 13, -4, 1_000_001, -99_999] {
            let chi_p: Vec<i8> = layers
                .primes
                .iter()
                .map(|&p| kronecker_at_prime(d, p))
                .collect();
            set.characters(&chi_p, &mut chi_m);
            let direct =
                crate::summation::sum(set.members.iter().zip(&chi_m).map(|(x, &c)| x.f * c as f64));
            let product = fs.value(&chi_p, &mut scratch);
            if (direct - product).abs() > 1e-12 * direct.abs().max(1.0) {
                return Ok(Outcome::Fail(format!("d = {d}: {direct} vs {product}")));
            }
        }
        Ok(Outcome::Pass)
    });
    r.run("resonator.a_n_consistency", "resonator", || {
        let stored = compute_a_n(layers)?;
        let mut fresh = layers.clone();
        for (w, &p) in fresh.weights.iter_mut().zip(&layers.primes) {
            *w = f_value(p, cfg);
        }
        let recomputed = compute_a_n(&fresh)?;
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
        if rel(stored.value(), stored.direct_product) > 1e-10 {
            return Ok(Outcome::Fail(format!(
                "sum of logs {} vs product {}",
                stored.value(),
                stored.direct_product
            )));
        }
        if stored.value() <= 1.0 {
            return Ok(Outcome::Fail(format!("A_N = {}", stored.value())));
        }
        Ok(ok_if(
            rel(stored.value(), recomputed.value()) <= 1e-10,
            || {
                format!(
                    "stored weights give {}, formula gives {}",
                    stored.value(),
                    recomputed.value()
                )
            },
        ))
    });
    r.run("resonator.square_pairs_diagonal", "resonator", || {
        // for squarefree m, n: m n is a square iff m = n
        let limit = set.len().min(if full { 1400 } else { 300 });
        for a in &set.members[..limit] {
            for b in &set.members[..limit] {
                let g = gcd(a.m, b.m);
                let square = a.m / g == 1 && b.m / g == 1;
                if square != (a.m == b.m) {
                    return Ok(Outcome::Fail(format!("{} {}", a.m, b.m)));
                }
            }
        }
        Ok(Outcome::Pass)
    });
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_oracle_matches_on_small_cases() {
        assert_eq!(euler_criterion(-4, 3), -1);
        assert_eq!(chi_two(8), 0);
        assert_eq!(chi_two(-7), 1);
        assert!(kronecker_oracle_mismatch(60, 100).is_none());
    }

    #[test]
    fn perturbation_touches_weights_only() {
        let cfg = ResonatorConfig::new(1000, 1.0).unwrap();
        let l = build_prime_layers(&cfg).unwrap();
        let s = build_m(&l, 100).unwrap();
        let (pl, ps) = perturbed(&l, &s, 1e-3);
        assert_eq!(pl.primes, l.primes);
        assert_eq!(
            ps.members.iter().map(|x| x.m).collect::<Vec<_>>(),
            s.members.iter().map(|x| x.m).collect::<Vec<_>>()
        );
        assert!((ps.members[1].f / s.members[1].f - 1.001).abs() < 1e-12);
    }

    #[test]
    fn quick_suite_passes_and_localises_faults() {
        let clean = run_property_suite(Level::Quick);
        let failed: Vec<_> = clean.failures().collect();
        assert!(failed.is_empty(), "{failed:#?}");
        let faulty = run_property_suite_with(
            Level::Quick,
            FaultInjection {
                perturb_f: Some(1e-3),
            },
        );
        assert_eq!(
            faulty.get("resonator.divisor_closure").unwrap().status,
            Status::Pass
        );
        assert_eq!(
            faulty.get("resonator.a_n_consistency").unwrap().status,
            Status::Fail
        );
    }

    #[test]
    fn selection_restricts_entries() {
        let u = run_suite(
            Selection::U,
            Level::Quick,
            DEFAULT_SEED,
            FaultInjection::default(),
        );
        let ids: Vec<&str> = u.entries.iter().map(|e| e.invariant_id.as_str()).collect();
        assert_eq!(ids, ["lfun.u_limits", "lfun.u_positivity"]);
        assert!(u.all_pass());
        assert!("bogus".parse::<Selection>().unwrap_err().is_domain());
        assert!(Selection::Props.covers("resonator.build"));
        assert!(!Selection::Props.covers("lfun.afe_vs_exact"));
    }
}
