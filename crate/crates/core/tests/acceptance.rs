//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the
//! process exits non-zero if any fails.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reslab::arith::{count_fundamental, enumerate_fundamental, kronecker};
use reslab::lfun::{l_exact, u_alpha_parity, AfeConfig, AfeEvaluator, Parity};
use reslab::resonance::{
    compute_s1, compute_s2, run_scan, LSource, ScanConfig, ScanReport, Strategy,
};
use reslab::resonator::{
    build_m, build_prime_layers, compute_a_n, exponent_coefficient, find_optimal_b, lambda_a,
    prop32_chain_bound, prop32_exact_ratio, prop32_summed_chernoff, prop33_exact_ratio,
    PrimeLayers, ResonatorConfig,
};
use reslab::verify::{check_lemma21_many, s2_reassociated};
use reslab::Signs;
use std::f64::consts::{E, PI};
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(
        t <= limit,
        format!(
            "runtime {:.1}s exceeds {:.0}s",
            t.as_secs_f64(),
            limit.as_secs_f64()
        ),
    )
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Euler's criterion for odd `p`, the residue table mod 8 for `p = 2`.
fn residue_oracle(d: i64, p: u64) -> i8 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        0
    } else if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let ds = enumerate_fundamental(0, 500, Signs::Both).map_err(err)?;
    let primes: Vec<u64> = (2..1000).filter(|&n| is_prime(n)).collect();
    let mut checked = 0;
    for d in &ds {
        for &p in &primes {
            let (got, want) = (kronecker(d.get(), p), residue_oracle(d.get(), p));
            ensure(got == want, format!("d = {d}, p = {p}: {got} vs {want}"))?;
            checked += 1;
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("{checked} pairs agree"))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let x = 1_000_000u64;
    let count = count_fundamental(0, x, Signs::Both) as f64;
    let expect = x as f64 * 6.0 / (PI * PI);
    let rel = (count - expect).abs() / expect;
    ensure(rel <= 0.002, format!("count {count}, deviation {rel:.2e}"))?;
    within(Duration::from_secs(30), start)?;
    Ok(format!("count {count}, relative deviation {rel:.2e}"))
}

fn main_term(n: u64, x: u64) -> f64 {
    let mut m = n;
    let mut prod = 1.0;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            prod *= p as f64 / (p as f64 + 1.0);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    x as f64 * 6.0 / (PI * PI) * prod
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let x = 1_000_000u64;
    let squares = [1u64, 4, 9, 16, 25, 36, 49];
    let others = [2u64, 3, 5, 6, 7, 10];
    let ns: Vec<u64> = squares.iter().chain(&others).copied().collect();
    let recs = check_lemma21_many(&ns, x, 0.1).map_err(err)?;
    let mut worst_sq = 0.0f64;
    let mut worst_ns = 0.0f64;
    for r in &recs {
        if squares.contains(&r.n) {
            let main = main_term(r.n, x);
            ensure(
                (r.main - main).abs() <= 1e-9 * main,
                format!("main term mismatch at n = {}", r.n),
            )?;
            let rel = (r.lhs - main).abs() / main;
            worst_sq = worst_sq.max(rel);
            ensure(
                rel <= 0.01,
                format!("n = {}: relative deviation {rel:.3e}", r.n),
            )?;
        } else {
            worst_ns = worst_ns.max(r.lhs.abs());
            ensure(
                r.lhs.abs() <= (x as f64).powf(0.75),
                format!("n = {}: |sum| = {}", r.n, r.lhs),
            )?;
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!(
        "worst square deviation {worst_sq:.2e}, largest non-square |sum| {worst_ns} <= {:.0}",
        (x as f64).powf(0.75)
    ))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let cfg = AfeConfig::default();
    let all = enumerate_fundamental(999, 10_000, Signs::Both).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_101);
    let ds: Vec<_> = sample(&mut rng, all.len(), 50)
        .into_iter()
        .map(|i| all[i])
        .collect();
    let mut worst = (0.0f64, 0i64, 0.0f64);
    for alpha in [0.0, 1e-3, 1e-2, 5e-2] {
        let ev = AfeEvaluator::new(alpha, &cfg, 10_000, Signs::Both).map_err(err)?;
        for &d in &ds {
            let got = ev.eval(d).map_err(err)?;
            let want = l_exact(0.5 + alpha, d).map_err(err)?;
            let rel = ((got - want) / want).abs();
            if rel.is_nan() || rel > worst.0 {
                worst = (rel, d.get(), alpha);
            }
        }
    }
    ensure(
        worst.0 <= 1e-6,
        format!(
            "relative error {:.3e} at d = {}, alpha = {}",
            worst.0, worst.1, worst.2
        ),
    )?;
    within(Duration::from_secs(600), start)?;
    Ok(format!(
        "max relative error {:.3e} (d = {}, alpha = {})",
        worst.0, worst.1, worst.2
    ))
}

fn criterion_5() -> Check {
    let cfg = AfeConfig::default();
    let fine = AfeConfig {
        quad_step: cfg.quad_step / 2.0,
        quad_tmax: cfg.quad_tmax * 2.0,
        ..cfg
    };
    let (mut small, mut decay, mut refine) = (0.0f64, 0.0f64, 0.0f64);
    for parity in [Parity::Even, Parity::Odd] {
        for alpha in [0.0, 0.01, 0.1] {
            let u = |x: f64, c: &AfeConfig| u_alpha_parity(x, alpha, parity, c).map_err(err);
            let s = (u(1e-6, &cfg)? - 1.0).abs();
            let d = u(40.0, &cfg)?.abs();
            ensure(
                s <= 1e-3,
                format!("|U(1e-6) - 1| = {s:.3e} at alpha = {alpha}, {parity:?}"),
            )?;
            ensure(
                d <= 1e-15,
                format!("|U(40)| = {d:.3e} at alpha = {alpha}, {parity:?}"),
            )?;
            for x in [1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 40.0] {
                let delta = (u(x, &cfg)? - u(x, &fine)?).abs();
                ensure(
                    delta <= 1e-9,
                    format!("refinement changes U({x}) by {delta:.3e}"),
                )?;
                refine = refine.max(delta);
            }
            small = small.max(s);
            decay = decay.max(d);
        }
    }
    Ok(format!(
        "max |U(1e-6) - 1| = {small:.2e}, max |U(40)| = {decay:.2e}, max refinement change {refine:.2e}"
    ))
}

fn criterion_6() -> Check {
    let cfg = ResonatorConfig::new(1_000_000, 1.0).map_err(err)?;
    let layers = build_prime_layers(&cfg).map_err(err)?;
    let set = build_m(&layers, cfg.m_cap).map_err(err)?;
    ensure(!set.is_empty(), "M is empty")?;
    for x in &set.members {
        let mut seen = vec![0usize; layers.layers.len()];
        for (i, &p) in layers.primes.iter().enumerate() {
            if x.m % p == 0 {
                ensure(set.contains(x.m / p), format!("{} / {p} missing", x.m))?;
                seen[layers.layer_of[i]] += 1;
            }
        }
        for (k, layer) in layers.layers.iter().enumerate() {
            ensure(
                (seen[k] as f64) < layer.delta,
                format!("m = {} has {} primes in layer {}", x.m, seen[k], layer.k),
            )?;
        }
    }
    ensure(
        layers.weights.windows(2).all(|w| w[0] > w[1]),
        "f is not strictly decreasing",
    )?;
    let a_n = compute_a_n(&layers).map_err(err)?;
    // independent product straight from the weight formula
    let l1 = 1e6f64.ln();
    let (l2, s) = (l1.ln(), cfg.sigma());
    let l3 = l2.ln();
    let mut direct = 1.0f64;
    for &p in &layers.primes {
        let x = p as f64;
        let f = l1.powf(1.0 - s) * l2.powf(s) / l3.powf(1.0 - s) / (x.powf(s) * (x.ln() - l2 - l3));
        let h = x / (x + 1.0);
        direct *= (1.0 + f * f * h + f * h * x.powf(-s)) / (1.0 + f * f);
    }
    ensure(a_n.value() > 1.0, format!("A_N = {}", a_n.value()))?;
    let rel = (a_n.value() - direct).abs() / direct;
    ensure(
        rel <= 1e-10,
        format!("sum of logs {} vs product {direct}", a_n.value()),
    )?;
    Ok(format!(
        "|P| = {}, |M| = {}, A_N = {:.12}, log-sum vs product {rel:.1e}",
        layers.len(),
        set.len(),
        a_n.value()
    ))
}

/// `sum_n f(n) h(n) n^-sigma sum_{q | n, q <= n / N^eps} f(q) q^sigma`
/// over all squarefree `n`, divided by `A_N sum_n f(n)^2`, by a direct
/// double loop over index masks.
fn prop33_brute(layers: &PrimeLayers, n_param: u64, eps: f64) -> f64 {
    let k = layers.primes.len();
    let s = layers.sigma;
    let ps: Vec<f64> = layers.primes.iter().map(|&p| p as f64).collect();
    let fs = &layers.weights;
    let log_thr = eps * (n_param as f64).ln();
    let mut total = 0.0;
    for n in 0u32..(1 << k) {
        let (mut fn_, mut hn, mut ln_n) = (1.0, 1.0, 0.0);
        for i in 0..k {
            if n >> i & 1 == 1 {
                fn_ *= fs[i];
                hn *= ps[i] / (ps[i] + 1.0);
                ln_n += ps[i].ln();
            }
        }
        let outer = fn_ * hn * (-s * ln_n).exp();
        let mut inner = 0.0;
        let mut q = n;
        loop {
            let (mut fq, mut ln_q) = (1.0, 0.0);
            for i in 0..k {
                if q >> i & 1 == 1 {
                    fq *= fs[i];
                    ln_q += ps[i].ln();
                }
            }
            if ln_n - ln_q >= log_thr - 1e-12 {
                inner += fq * (s * ln_q).exp();
            }
            if q == 0 {
                break;
            }
            q = (q - 1) & n;
        }
        total += outer * inner;
    }
    let mut norm = 1.0;
    for i in 0..k {
        let h = ps[i] / (ps[i] + 1.0);
        let f = fs[i];
        norm *= 1.0 + f * f * h + f * h * ps[i].powf(-s);
    }
    total / norm
}

fn criterion_7() -> Check {
    let b = find_optimal_b(1.8).map_err(err)?;
    ensure((b - 1.8 / (E - 1.0)).abs() <= 1e-12, format!("b* = {b}"))?;
    let coeff = exponent_coefficient(1.8, b);
    ensure(coeff < 0.0, format!("coefficient {coeff}"))?;
    let cfg = ResonatorConfig::new(100_000, 1.0).map_err(err)?;
    let real = build_prime_layers(&cfg).map_err(err)?;
    let synth = PrimeLayers::synthetic(
        &cfg,
        &[
            (vec![79, 83, 89, 97, 101, 103, 107], 2.5),
            (vec![109, 113, 127, 131, 137, 139, 149], 1.9),
        ],
    )
    .map_err(err)?;
    let mut notes = Vec::new();
    for (name, layers) in [("N = 1e5", &real), ("two-layer", &synth)] {
        ensure(layers.len() <= 20, "prime set too large")?;
        let exact = prop32_exact_ratio(layers).map_err(err)?;
        let summed = prop32_summed_chernoff(layers, b).map_err(err)?;
        let chain = prop32_chain_bound(layers, b).map_err(err)?;
        ensure(
            exact <= summed,
            format!("{name}: exact {exact:e} > summed Chernoff {summed:e}"),
        )?;
        ensure(
            exact <= chain,
            format!("{name}: exact {exact:e} > chain bound {chain:e}"),
        )?;
        let p33 = prop33_exact_ratio(layers, cfg.n, cfg.eps).map_err(err)?;
        let brute = prop33_brute(layers, cfg.n, cfg.eps);
        let rel = (p33 - brute).abs() / brute.abs();
        ensure(
            rel <= 1e-10,
            format!("{name}: prop33 {p33:e} vs brute force {brute:e}"),
        )?;
        notes.push(format!(
            "{name}: |P| = {}, ratio {exact:.2e} <= {summed:.2e}, prop33 rel {rel:.1e}",
            layers.len()
        ));
    }
    Ok(format!(
        "b* = {b:.12}, coefficient {coeff:.5}; {}",
        notes.join("; ")
    ))
}

fn criterion_8() -> Check {
    let big_a = 0.5;
    let cfg = ScanConfig {
        x: 200,
        big_a,
        n_explicit: Some(1000),
        workers: 2,
        ..Default::default()
    };
    let rcfg = ResonatorConfig::new(1000, big_a).map_err(err)?;
    let layers = build_prime_layers(&rcfg).map_err(err)?;
    ensure(layers.len() <= 6, format!("|P| = {}", layers.len()))?;
    let set = build_m(&layers, 1000).map_err(err)?;
    let s2 = compute_s2(&cfg, &set).map_err(err)?;
    let re = s2_reassociated(&cfg, &set).map_err(err)?;
    let rel2 = (s2 - re).abs() / s2;
    ensure(rel2 <= 1e-9, format!("S2 {s2} vs re-associated {re}"))?;
    let exact_cfg = ScanConfig {
        l_source: LSource::Exact,
        ..cfg.clone()
    };
    let s1 = compute_s1(&exact_cfg, &set, &AfeConfig::default()).map_err(err)?;
    let alpha = cfg.alpha();
    let mut brute = 0.0;
    for d in enumerate_fundamental(200, 400, Signs::Both).map_err(err)? {
        let l = l_exact(0.5 + alpha, d).map_err(err)?;
        for a in &set.members {
            for b in &set.members {
                brute += l * a.f * b.f * (kronecker(d.get(), a.m) * kronecker(d.get(), b.m)) as f64;
            }
        }
    }
    let rel1 = (s1 - brute).abs() / brute.abs();
    ensure(rel1 <= 1e-8, format!("S1 {s1} vs double loop {brute}"))?;
    Ok(format!(
        "|P| = {}, S2 rel {rel2:.1e}, S1 rel {rel1:.1e}",
        layers.len()
    ))
}

fn scan(x: u64, big_a: f64, workers: usize) -> Result<ScanReport, String> {
    let cfg = ScanConfig {
        x,
        big_a,
        workers,
        strategy: Strategy::Exhaustive,
        ..Default::default()
    };
    run_scan(&cfg, &AfeConfig::default()).map_err(err)
}

fn criterion_9() -> Check {
    let lambda0 = lambda_a(0.0).map_err(err)?;
    ensure(
        (lambda0 - 0.290_988_4).abs() <= 1e-6,
        format!("lambda(0) = {lambda0}"),
    )?;
    let mut notes = Vec::new();
    for x in [10_000u64, 100_000] {
        for big_a in [0.0, 1.0] {
            let start = Instant::now();
            let r = scan(x, big_a, 8)?;
            let ratio = r.ratio.ok_or("ratio missing")?;
            ensure(
                r.max_l >= ratio - 1e-6,
                format!("X = {x}, A = {big_a}: maxL {} < ratio {ratio}", r.max_l),
            )?;
            let base = r.theorem_baseline.ok_or("baseline missing")?;
            let xf = x as f64;
            let want = (lambda_a(big_a).map_err(err)?
                * (xf.ln() * xf.ln().ln().ln() / xf.ln().ln()).sqrt())
            .exp();
            ensure(
                (base - want).abs() <= 1e-12 * want,
                format!("baseline {base} vs {want}"),
            )?;
            if x == 100_000 {
                within(Duration::from_secs(600), start)?;
            }
            notes.push(format!(
                "X={x} A={big_a}: maxL {:.4} >= S1/S2 {ratio:.4} (d = {}, {:.1}s)",
                r.max_l,
                r.argmax_d,
                start.elapsed().as_secs_f64()
            ));
        }
    }
    Ok(notes.join("; "))
}

fn criterion_10() -> Check {
    let a = scan(20_000, 1.0, 4)?.without_timing();
    let b = scan(20_000, 1.0, 4)?.without_timing();
    ensure(a == b, "repeated runs differ")?;
    let json_a = serde_json::to_string(&a).map_err(err)?;
    let json_b = serde_json::to_string(&b).map_err(err)?;
    ensure(json_a == json_b, "serialised reports differ")?;
    let mut drift = 0.0f64;
    for w in [1usize, 3, 8] {
        let c = scan(20_000, 1.0, w)?;
        let rel = |p: f64, q: f64| {
            if q == 0.0 {
                p.abs()
            } else {
                ((p - q) / q).abs()
            }
        };
        drift = drift
            .max(rel(c.s1.unwrap(), a.s1.unwrap()))
            .max(rel(c.s2, a.s2))
            .max(rel(c.max_l, a.max_l));
        ensure(
            c.argmax_d == a.argmax_d,
            "argmax differs across worker counts",
        )?;
    }
    ensure(drift <= 1e-12, format!("worker drift {drift:e}"))?;
    Ok(format!(
        "bit-identical repeats; worker-count drift {drift:.1e}"
    ))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 10] = [
        ("kronecker vs residue oracle", criterion_1),
        ("fundamental discriminant density", criterion_2),
        ("character-sum dichotomy", criterion_3),
        ("AFE vs Hurwitz oracle", criterion_4),
        ("U properties", criterion_5),
        ("resonator structure", criterion_6),
        ("Chernoff machinery", criterion_7),
        ("resonance identities", criterion_8),
        ("end-to-end search", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {}: {name} ({secs:.1}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
