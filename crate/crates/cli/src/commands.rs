use crate::config::{set_path, RunConfig};
use crate::{
    DiscriminantArgs, LMode, LfunArgs, ResonatorArgs, ResonatorFlags, SearchArgs, VerifyArgs,
};
use reslab::arith::enumerate_fundamental;
use reslab::lfun::{l_afe, l_exact, POLE_GUARD};
use reslab::resonance::run_scan;
use reslab::resonator::{
    chirre_layer_sum, compute_a_n, prop31_bound, ResonatorDiagnostics, BASELINE_MIN_X,
};
use reslab::verify::{run_suite, FaultInjection, Selection};
use reslab::{Error, FundamentalDiscriminant, Resonator, ScanReport};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

pub struct Globals {
    pub config: Option<PathBuf>,
    pub workers: Option<usize>,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numeric(String),
    Invariant(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Numeric(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) | Failure::Invariant(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Numeric(format!("i/o error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T, copy: Option<&Path>) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Numeric(e.to_string()))?;
    if let Some(p) = copy {
        let mut f = create(p)?;
        writeln!(f, "{text}")?;
        f.flush()?;
    }
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn put<T: Serialize>(patch: &mut Value, path: &str, value: Option<T>) {
    if let Some(v) = value {
        set_path(patch, path, json!(v));
    }
}

fn resolve(g: &Globals, mut patch: Value) -> Result<RunConfig, Failure> {
    put(&mut patch, "scan.workers", g.workers);
    Ok(RunConfig::resolve(g.config.as_deref(), &patch)?)
}

fn resonator_patch(patch: &mut Value, f: &ResonatorFlags) {
    put(patch, "resonator.N", f.n);
    put(patch, "resonator.A", f.big_a);
    put(patch, "resonator.gamma", f.gamma);
    put(patch, "resonator.a", f.a);
    put(patch, "resonator.delta", f.delta);
    put(patch, "resonator.eps", f.eps);
    put(patch, "resonator.b", f.b);
    put(patch, "resonator.m_cap", f.m_cap);
}

fn install_pool(workers: Option<usize>) {
    if let Some(n) = workers.filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

pub fn discriminants(a: &DiscriminantArgs) -> Outcome {
    let ds = enumerate_fundamental(a.lo, a.hi, a.signs)?;
    let mut out: Box<dyn Write> = match &a.out {
        Some(p) => Box::new(create(p)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    writeln!(out, "d")?;
    for d in ds {
        writeln!(out, "{d}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn lfun(g: &Globals, a: &LfunArgs) -> Outcome {
    let cfg = resolve(g, Value::Object(Map::new()))?;
    let d = FundamentalDiscriminant::new(a.d)?;
    if !(a.alpha >= 0.0 && a.alpha < 0.5 - POLE_GUARD) {
        return Err(Failure::Usage(format!(
            "alpha must lie in [0, 1/2), got {}",
            a.alpha
        )));
    }
    let afe = match a.mode {
        LMode::Afe | LMode::Both => Some(l_afe(d, a.alpha, &cfg.afe)?),
        LMode::Exact => None,
    };
    let exact = match a.mode {
        LMode::Exact | LMode::Both => Some(l_exact(0.5 + a.alpha, d)?),
        LMode::Afe => None,
    };
    let rel_diff = afe.zip(exact).map(|(x, y)| ((x - y) / y).abs());
    print_json(
        &json!({"d": d.get(), "alpha": a.alpha, "afe": afe, "exact": exact, "rel_diff": rel_diff}),
        None,
    )
}

#[derive(Serialize)]
struct LayerSummary {
    k: usize,
    lower: f64,
    upper: f64,
    size: usize,
    delta: f64,
    chirre_sum: f64,
    chirre_scale: f64,
}

#[derive(Serialize)]
struct ResonatorSummary {
    #[serde(rename = "N")]
    n: u64,
    #[serde(rename = "A")]
    big_a: f64,
    sigma: f64,
    prime_interval: (f64, f64),
    #[serde(rename = "P_size")]
    p_size: usize,
    #[serde(rename = "M_size")]
    m_size: u128,
    mass: f64,
    #[serde(rename = "A_N")]
    a_n: f64,
    prop31_bound: f64,
    degenerate: bool,
    members_listed: bool,
    layers: Vec<LayerSummary>,
    small_delta_layers: Vec<usize>,
    diagnostics: ResonatorDiagnostics,
}

pub fn resonator(g: &Globals, a: &ResonatorArgs) -> Outcome {
    let mut patch = Value::Object(Map::new());
    resonator_patch(&mut patch, &a.flags);
    let cfg = resolve(g, patch)?.resonator;
    let r = Resonator::build(&cfg)?;
    let mut layers = Vec::new();
    for layer in &r.layers.layers {
        let s = chirre_layer_sum(layer.k, &r.layers, cfg.n)?;
        layers.push(LayerSummary {
            k: layer.k,
            lower: layer.lower,
            upper: layer.upper,
            size: layer.members.len(),
            delta: layer.delta,
            chirre_sum: s.sum,
            chirre_scale: s.scale,
        });
    }
    let summary = ResonatorSummary {
        n: cfg.n,
        big_a: cfg.big_a,
        sigma: r.sigma(),
        prime_interval: (r.layers.lower, r.layers.upper),
        p_size: r.layers.len(),
        m_size: r.factored.size(),
        mass: r.factored.mass(),
        a_n: compute_a_n(&r.layers)?.value(),
        prop31_bound: prop31_bound(&cfg),
        degenerate: r.diagnostics.degenerate,
        members_listed: r.set.is_some(),
        layers,
        small_delta_layers: r.layers.small_delta_layers.clone(),
        diagnostics: r.diagnostics.clone(),
    };
    if let Some(p) = &a.csv {
        let mut f = create(p)?;
        r.members()?.write_csv(&mut f)?;
        f.flush()?;
    }
    print_json(&summary, a.json.as_deref())
}

pub fn verify(g: &Globals, a: &VerifyArgs) -> Outcome {
    let select: Selection = a.suite.parse()?;
    let cfg = resolve(g, Value::Object(Map::new()))?;
    install_pool(g.workers);
    let report = run_suite(
        select,
        a.level,
        a.seed.unwrap_or(cfg.seed),
        FaultInjection {
            perturb_f: a.perturb_f,
        },
    );
    print_json(&report, None)?;
    let failed: Vec<&str> = report.failures().map(|e| e.invariant_id.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invariant(format!(
            "failed invariants: {}",
            failed.join(", ")
        )))
    }
}

pub fn search(g: &Globals, a: &SearchArgs) -> Outcome {
    let mut patch = Value::Object(Map::new());
    resonator_patch(&mut patch, &a.resonator);
    let obj = patch.as_object_mut().unwrap();
    if let Some(Value::Object(r)) = obj.get_mut("resonator") {
        r.remove("N");
        r.remove("A");
    }
    put(&mut patch, "scan.X", a.x);
    put(&mut patch, "scan.A", a.resonator.big_a);
    put(&mut patch, "scan.N_explicit", a.resonator.n);
    put(&mut patch, "scan.K", a.k);
    put(&mut patch, "scan.strategy", a.strategy.as_deref());
    put(&mut patch, "scan.signs", a.signs.as_deref());
    put(&mut patch, "scan.n_policy", a.n_policy.as_deref());
    put(&mut patch, "scan.l_source", a.l_source.as_deref());
    put(&mut patch, "scan.range", a.range.as_deref());
    put(&mut patch, "afe.kernel", a.kernel.as_deref());
    let cfg = resolve(g, patch)?;
    if cfg.scan.x < BASELINE_MIN_X {
        return Err(Failure::Usage(format!(
            "search needs X >= {BASELINE_MIN_X} for the baseline, got {}",
            cfg.scan.x
        )));
    }
    let report = run_scan(&cfg.scan, &cfg.afe)?;
    eprintln!(
        "maxL = {} at d = {}, theorem_baseline = {}",
        report.max_l,
        report.argmax_d,
        report
            .theorem_baseline
            .map_or("n/a".to_owned(), |b| b.to_string())
    );
    if let Some(p) = &a.csv {
        let mut f = create(p)?;
        ScanReport::write_csv(std::slice::from_ref(&report), &mut f)?;
        f.flush()?;
    }
    print_json(&report, a.json.as_deref())
}
