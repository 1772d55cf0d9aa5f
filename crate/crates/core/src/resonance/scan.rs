use super::config::{LSource, ScanConfig, Strategy};
use super::report::{Diagnostic, ErrorBudget, ScanReport};
use crate::arith::{
    count_fundamental, for_each_fundamental, kronecker, kronecker_at_prime, FundamentalDiscriminant,
};
use crate::lfun::{l_exact, AfeConfig, AfeEvaluator, EXACT_MODULUS_GUARD};
use crate::resonator::{
    theorem_lower_bound, FactoredSet, Resonator, ResonatorConfig, ResonatorSet, BASELINE_MIN_X,
    MIN_N,
};
use crate::summation::CompensatedSum;
use crate::{Error, Result, ZETA_2};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::time::Instant;

/// Discriminants per work unit. Fixed so that reductions do not depend on
/// the number of workers.
pub const CHUNK_SIZE: usize = 4096;

/// `R_d = sum_{m in M} f(m) chi_d(m)`.
pub fn resonator_value(d: FundamentalDiscriminant, set: &ResonatorSet) -> f64 {
    set.members
        .iter()
        .map(|x| x.f * kronecker(d.get(), x.m) as f64)
        .collect::<CompensatedSum>()
        .value()
}

/// The resonator chosen for a scan, possibly degenerate.
#[derive(Debug, Clone)]
pub struct ScanSetup {
    pub n: u64,
    pub resonator: Option<Resonator>,
    pub factored: FactoredSet,
    pub diagnostics: Vec<Diagnostic>,
}

impl ScanSetup {
    pub fn new(cfg: &ScanConfig) -> Result<Self> {
        cfg.validate()?;
        let n = cfg.resolve_n()?;
        let mut diagnostics = Vec::new();
        if n < MIN_N {
            diagnostics.push(Diagnostic::new(
                "degenerate_resonator",
                format!("N = {n} is below e^e; the resonator is M = {{1}}"),
            ));
            return Ok(Self {
                n,
                resonator: None,
                factored: FactoredSet::trivial(),
                diagnostics,
            });
        }
        let rc = ResonatorConfig {
            n,
            big_a: cfg.big_a,
            ..cfg.resonator
        };
        let res = Resonator::build(&rc)?;
        let diag = &res.diagnostics;
        if diag.degenerate {
            diagnostics.push(Diagnostic::new(
                "degenerate_resonator",
                format!("the resonator at N = {n} is M = {{1}}"),
            ));
        }
        if !diag.small_delta_layers.is_empty() {
            diagnostics.push(Diagnostic::new(
                "small_delta_layers",
                format!("layers with Delta_k < 2: {:?}", diag.small_delta_layers),
            ));
        }
        if diag.pre_asymptotic {
            diagnostics.push(Diagnostic::new(
                "pre_asymptotic",
                format!("|M| = {} exceeds N", res.factored.size()),
            ));
        }
        if diag.f_bound_exceeded {
            diagnostics.push(Diagnostic::new(
                "f_bound_exceeded",
                "some f(p) >= (log log log N)^(sigma - 1)",
            ));
        }
        Ok(Self {
            n,
            factored: res.factored.clone(),
            resonator: Some(res),
            diagnostics,
        })
    }

    pub fn p_size(&self) -> usize {
        self.factored.primes.len()
    }

    pub fn m_size(&self) -> usize {
        usize::try_from(self.factored.size()).unwrap_or(usize::MAX)
    }

    pub fn resonator_sigma(&self) -> Option<f64> {
        self.resonator.as_ref().map(|r| r.sigma())
    }
}

enum LEval {
    None,
    Afe(Box<AfeEvaluator>),
    Exact(f64),
}

#[derive(Clone, Copy)]
enum Source<'a> {
    Members(&'a ResonatorSet),
    Factored(&'a FactoredSet),
}

impl Source<'_> {
    fn primes(&self) -> &[u64] {
        match self {
            Source::Members(s) => &s.primes,
            Source::Factored(s) => &s.primes,
        }
    }
}

struct Context<'a> {
    set: Source<'a>,
    l: LEval,
}

type Ranked = (f64, FundamentalDiscriminant);

/// Larger `R_d^2` first, then smaller `|d|`, then positive `d`.
fn rank(a: &Ranked, b: &Ranked) -> Ordering {
    b.0.partial_cmp(&a.0)
        .unwrap_or(Ordering::Equal)
        .then(a.1.modulus().cmp(&b.1.modulus()))
        .then((a.1.get() < 0).cmp(&(b.1.get() < 0)))
}

#[derive(Default)]
struct Totals {
    count: u64,
    s1: CompensatedSum,
    s2: CompensatedSum,
    max: Option<Ranked>,
    l_evals: u64,
    top: Vec<Ranked>,
}

impl Totals {
    fn offer_max(&mut self, cand: Ranked) {
        if self.max.map_or(true, |m| cand.0 > m.0) {
            self.max = Some(cand);
        }
    }

    fn merge(&mut self, other: Totals, keep: usize) {
        self.count += other.count;
        self.s1.absorb(&other.s1);
        self.s2.absorb(&other.s2);
        self.l_evals += other.l_evals;
        if let Some(m) = other.max {
            self.offer_max(m);
        }
        if keep > 0 {
            self.top.extend(other.top);
            self.top.sort_by(rank);
            self.top.truncate(keep);
        }
    }
}

impl Context<'_> {
    fn l_value(&self, d: FundamentalDiscriminant, chi: &mut Vec<i8>) -> Result<f64> {
        match &self.l {
            LEval::None => Err(Error::domain("no L evaluator configured")),
            LEval::Afe(ev) => ev.eval_with(d, chi),
            LEval::Exact(alpha) => l_exact(0.5 + alpha, d),
        }
    }

    fn chunk(&self, ds: &[FundamentalDiscriminant], with_l: bool, keep: usize) -> Result<Totals> {
        let mut t = Totals::default();
        let primes = self.set.primes();
        let mut chi_p = Vec::with_capacity(primes.len());
        let mut chi_m = Vec::new();
        let mut sym = Vec::new();
        let mut scratch = Vec::new();
        let mut ranked = Vec::new();
        for &d in ds {
            chi_p.clear();
            chi_p.extend(primes.iter().map(|&p| kronecker_at_prime(d.get(), p)));
            let r = match self.set {
                Source::Members(set) => {
                    set.characters(&chi_p, &mut chi_m);
                    set.members
                        .iter()
                        .zip(&chi_m)
                        .map(|(x, &c)| x.f * c as f64)
                        .collect::<CompensatedSum>()
                        .value()
                }
                Source::Factored(set) => set.value(&chi_p, &mut sym),
            };
            let r2 = r * r;
            t.count += 1;
            t.s2.add(r2);
            if with_l {
                let l = self
                    .l_value(d, &mut scratch)
                    .map_err(|e| Error::AtDiscriminant {
                        d: d.get(),
                        source: Box::new(e),
                    })?;
                t.l_evals += 1;
                t.s1.add(l * r2);
                t.offer_max((l, d));
            }
            if keep > 0 {
                ranked.push((r2, d));
            }
        }
        if keep > 0 {
            ranked.sort_by(rank);
            ranked.truncate(keep);
            t.top = ranked;
        }
        Ok(t)
    }
}

struct Driver<'a> {
    ctx: &'a Context<'a>,
    pool: &'a rayon::ThreadPool,
    with_l: bool,
    keep: usize,
    totals: Totals,
    completed: usize,
    total_chunks: usize,
    failure: Option<Error>,
}

impl Driver<'_> {
    fn flush(&mut self, batch: &[FundamentalDiscriminant]) {
        if self.failure.is_some() || batch.is_empty() {
            return;
        }
        let (ctx, with_l, keep) = (self.ctx, self.with_l, self.keep);
        let results: Vec<Result<Totals>> = self.pool.install(|| {
            batch
                .par_chunks(CHUNK_SIZE)
                .map(|c| ctx.chunk(c, with_l, keep))
                .collect()
        });
        for r in results {
            match r {
                Ok(t) => {
                    self.totals.merge(t, self.keep);
                    self.completed += 1;
                }
                Err(e) => {
                    self.failure = Some(Error::PartialScan {
                        completed_chunks: self.completed,
                        total_chunks: self.total_chunks,
                        source: Box::new(e),
                    });
                    return;
                }
            }
        }
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::resource(format!("cannot start worker pool: {e}")))
}

fn drive(cfg: &ScanConfig, ctx: &Context<'_>, with_l: bool, keep: usize) -> Result<Totals> {
    let (lo, hi) = cfg.bounds();
    let total = count_fundamental(lo, hi, cfg.signs) as usize;
    let pool = pool(cfg.workers)?;
    let mut driver = Driver {
        ctx,
        pool: &pool,
        with_l,
        keep,
        totals: Totals::default(),
        completed: 0,
        total_chunks: total.div_ceil(CHUNK_SIZE),
        failure: None,
    };
    let cap = CHUNK_SIZE * (4 * cfg.workers).max(8);
    let mut batch = Vec::with_capacity(cap);
    for_each_fundamental(lo, hi, cfg.signs, |d| {
        if driver.failure.is_some() {
            return;
        }
        batch.push(d);
        if batch.len() == cap {
            driver.flush(&batch);
            batch.clear();
        }
    });
    driver.flush(&batch);
    match driver.failure {
        Some(e) => Err(e),
        None => Ok(driver.totals),
    }
}

fn l_evaluator(cfg: &ScanConfig, lcfg: &AfeConfig) -> Result<LEval> {
    let (_, hi) = cfg.bounds();
    Ok(match cfg.l_source {
        LSource::Afe => LEval::Afe(Box::new(AfeEvaluator::new(
            cfg.alpha(),
            lcfg,
            hi,
            cfg.signs,
        )?)),
        LSource::Exact => {
            if hi > EXACT_MODULUS_GUARD {
                return Err(Error::resource(format!(
                    "exact L values limited to |d| <= {EXACT_MODULUS_GUARD}"
                )));
            }
            LEval::Exact(cfg.alpha())
        }
    })
}

/// `S2 = sum_d R_d^2` over the configured range.
pub fn compute_s2(cfg: &ScanConfig, set: &ResonatorSet) -> Result<f64> {
    cfg.validate()?;
    let ctx = Context {
        set: Source::Members(set),
        l: LEval::None,
    };
    Ok(drive(cfg, &ctx, false, 0)?.s2.value())
}

/// `S1 = sum_d L(1/2 + alpha, chi_d) R_d^2` over the configured range.
pub fn compute_s1(cfg: &ScanConfig, set: &ResonatorSet, lcfg: &AfeConfig) -> Result<f64> {
    cfg.validate()?;
    let ctx = Context {
        set: Source::Members(set),
        l: l_evaluator(cfg, lcfg)?,
    };
    Ok(drive(cfg, &ctx, true, 0)?.s1.value())
}

/// The error-term estimates for a resonator of `m_size` members and mass
/// `sum_m f(m)^2`.
pub fn error_budget(cfg: &ScanConfig, m_size: f64, mass: f64) -> Result<ErrorBudget> {
    let n = cfg.resolve_n()? as f64;
    let x = cfg.x as f64;
    let eps = cfg.eps();
    let common = n.powf(1.5 * eps) * m_size * mass;
    let primary = x.powf(0.75 + 2.0 * eps) * common;
    let dual = x.powf(0.75 + cfg.alpha() / 2.0 + 2.0 * eps) * common;
    let main_term_scale = x / ZETA_2 * mass;
    Ok(ErrorBudget {
        primary,
        dual,
        main_term_scale,
        ratio: primary / main_term_scale,
    })
}

/// Scans the range for the largest `L(1/2 + alpha, chi_d)` and collects the
/// resonance sums.
pub fn scan_max(cfg: &ScanConfig, setup: &ScanSetup, lcfg: &AfeConfig) -> Result<ScanReport> {
    cfg.validate()?;
    lcfg.validate()?;
    let start = Instant::now();
    let (lo, hi) = cfg.bounds();
    let in_range = count_fundamental(lo, hi, cfg.signs);
    if in_range == 0 {
        return Err(Error::domain(
            "no fundamental discriminant in the scan range",
        ));
    }
    let ctx = Context {
        set: Source::Factored(&setup.factored),
        l: l_evaluator(cfg, lcfg)?,
    };
    let exhaustive = cfg.strategy == Strategy::Exhaustive || cfg.k as u64 >= in_range;
    let totals;
    let (s1, max, exact);
    if exhaustive {
        totals = drive(cfg, &ctx, true, 0)?;
        s1 = Some(totals.s1.value());
        max = totals.max.expect("range is nonempty");
        exact = true;
    } else {
        totals = drive(cfg, &ctx, false, cfg.k)?;
        let pool = pool(cfg.workers)?;
        let evaluated: Vec<Result<Option<Ranked>>> = pool.install(|| {
            totals
                .top
                .par_chunks(CHUNK_SIZE)
                .map(|c| {
                    let mut scratch = Vec::new();
                    let mut best: Option<Ranked> = None;
                    for &(_, d) in c {
                        let l =
                            ctx.l_value(d, &mut scratch)
                                .map_err(|e| Error::AtDiscriminant {
                                    d: d.get(),
                                    source: Box::new(e),
                                })?;
                        if best.map_or(true, |b| l > b.0) {
                            best = Some((l, d));
                        }
                    }
                    Ok(best)
                })
                .collect()
        });
        let mut best: Option<Ranked> = None;
        for r in evaluated {
            if let Some(c) = r? {
                if best.map_or(true, |b| c.0 > b.0) {
                    best = Some(c);
                }
            }
        }
        s1 = None;
        max = best.expect("K is positive");
        exact = false;
    }
    let s2 = totals.s2.value();
    let alpha = cfg.alpha();
    let budget = error_budget(cfg, setup.factored.size() as f64, setup.factored.mass())?;
    let mut diagnostics = setup.diagnostics.clone();
    let baseline = if cfg.x >= BASELINE_MIN_X {
        Some(theorem_lower_bound(cfg.x, cfg.big_a)?)
    } else {
        diagnostics.push(Diagnostic::new(
            "baseline_unavailable",
            format!("asymptotic baseline needs X >= {BASELINE_MIN_X}"),
        ));
        None
    };
    let ratio = s1.map(|s| s / s2);
    if setup.factored.size() == 1 {
        if let Some(r) = ratio {
            if !(r > 1.0 / 3.0 && r < 3.0) {
                diagnostics.push(Diagnostic::new(
                    "first_moment_band",
                    format!("S1/S2 = {r} with M = {{1}} is outside [1/3, 3]"),
                ));
            }
        }
    }
    if budget.ratio > 1.0 {
        diagnostics.push(Diagnostic::new(
            "error_term_dominant",
            format!(
                "error budget is {:.3e} times the main-term scale",
                budget.ratio
            ),
        ));
    }
    if !exact {
        diagnostics.push(Diagnostic::new(
            "max_lower_bound",
            format!(
                "maxL is a lower bound on the max, from the top {} of {in_range}",
                cfg.k
            ),
        ));
    }
    Ok(ScanReport {
        x: cfg.x,
        n: setup.n,
        sigma: 0.5 + alpha,
        alpha,
        resonator_sigma: setup.resonator_sigma(),
        p_size: setup.p_size(),
        m_size: setup.m_size(),
        s1,
        s2,
        ratio,
        max_l: max.0,
        argmax_d: max.1,
        max_is_exact: exact,
        d_count: totals.count,
        l_evaluations: if exact {
            totals.l_evals
        } else {
            totals.top.len() as u64
        },
        theorem_baseline: baseline,
        error_budget: budget.primary,
        error_budget_detail: budget,
        s2_eta: s2 / budget.main_term_scale - 1.0,
        strategy: cfg.strategy,
        n_policy: cfg.n_policy,
        signs: cfg.signs,
        l_source: cfg.l_source,
        range: cfg.range,
        runtime_seconds: start.elapsed().as_secs_f64(),
        diagnostics,
    })
}

/// Builds the resonator and runs [`scan_max`].
pub fn run_scan(cfg: &ScanConfig, lcfg: &AfeConfig) -> Result<ScanReport> {
    let setup = ScanSetup::new(cfg)?;
    scan_max(cfg, &setup, lcfg)
}
