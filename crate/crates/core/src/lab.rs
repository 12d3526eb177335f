//! Monte-Carlo estimates of asymptotic densities and attack success rates.
//!
//! Every trial draws from its own stream derived from the master seed, the
//! grid point and the trial index, and results are aggregated in index
//! order, so output does not depend on the worker count.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aag::{keygen, sample_factors, true_key, AagParams, Platform, ScspStar};
use crate::attacks::{lba_solve_scsp_star_traced, run_attack, AttackKind, ObjectiveKind};
use crate::conjugacy::ConjugacySystem;
use crate::error::{Error, Result};
use crate::raag::choose_projection;
use crate::rng::Rng;
use crate::stallings::{build_core, has_free_basis, lambda_condition, SubgroupExpression};
use crate::word::{Alphabet, Word, WordTuple};

/// 1.96, the two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Always,
    IdentityTuple,
    /// The 1/4 small-cancellation condition.
    LambdaQuarter,
    FreeBasis,
    /// The `F₂` image of a RAAG tuple has a free basis.
    RaagImageFreeBasis,
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "always" => Ok(Property::Always),
            "identity_tuple" => Ok(Property::IdentityTuple),
            "lambda_quarter" => Ok(Property::LambdaQuarter),
            "free_basis" => Ok(Property::FreeBasis),
            "raag_image_free_basis" => Ok(Property::RaagImageFreeBasis),
            _ => Err(Error::UnknownProperty(s.to_string())),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Always => "always",
            Property::IdentityTuple => "identity_tuple",
            Property::LambdaQuarter => "lambda_quarter",
            Property::FreeBasis => "free_basis",
            Property::RaagImageFreeBasis => "raag_image_free_basis",
        })
    }
}

/// `Sphere`: each component uniform among words of length exactly `n`.
/// `Ball`: each component uniform among words of length at most `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMode {
    #[default]
    Sphere,
    Ball,
}

impl fmt::Display for SamplingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplingMode::Sphere => "sphere",
            SamplingMode::Ball => "ball",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub radius: usize,
    pub trials: usize,
    pub successes: usize,
    pub rate: f64,
    pub ci_half_width: f64,
    /// The normal approximation is unreliable: `trials·min(ρ̂, 1−ρ̂) < 10`.
    pub small_sample: bool,
}

impl DensityEstimate {
    pub fn new(radius: usize, trials: usize, successes: usize) -> Self {
        let n = trials as f64;
        let rate = if trials == 0 { 0.0 } else { successes as f64 / n };
        let ci_half_width = if trials == 0 { f64::NAN } else { Z95 * (rate * (1.0 - rate) / n).sqrt() };
        let small_sample = n * rate.min(1.0 - rate) < 10.0;
        DensityEstimate { radius, trials, successes, rate, ci_half_width, small_sample }
    }
}

/// Runs `f(trial, rng)` for every trial on `workers` threads, keeping the
/// results in trial order.
pub fn run_trials<T, F>(workers: usize, seed: u64, point: u64, trials: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &mut Rng) -> T + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParams(e.to_string()))?;
    Ok(pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = Rng::derive(seed, &[point, t as u64]);
                f(t, &mut rng)
            })
            .collect()
    }))
}

fn sample_component(platform: &Platform, radius: usize, mode: SamplingMode, rng: &mut Rng) -> Word {
    match (platform, mode) {
        (Platform::Free(a), SamplingMode::Sphere) => a.random_word(radius, rng),
        (Platform::Free(a), SamplingMode::Ball) => a.random_ball_word(radius, rng),
        (Platform::Raag(g), mode) => {
            let free = Platform::Free(Alphabet::new(g.vertex_count()).expect("nonempty graph"));
            let w = sample_component(&free, radius, mode, rng);
            platform.normalize(w.letters()).expect("letters in range")
        }
    }
}

/// Samples a `k`-tuple at the given radius.
pub fn sample_tuple(platform: &Platform, k: usize, radius: usize, mode: SamplingMode, rng: &mut Rng) -> WordTuple {
    WordTuple((0..k).map(|_| sample_component(platform, radius, mode, rng)).collect())
}

/// Evaluates a property of a sampled tuple.
pub fn check_property(property: Property, platform: &Platform, tuple: &WordTuple) -> Result<bool> {
    Ok(match property {
        Property::Always => true,
        Property::IdentityTuple => tuple.iter().all(Word::is_identity),
        Property::LambdaQuarter => {
            if !platform.is_free() {
                return Err(Error::NotFreePlatform);
            }
            lambda_condition(tuple, 0.25).unwrap_or(false)
        }
        Property::FreeBasis => {
            if !platform.is_free() {
                return Err(Error::NotFreePlatform);
            }
            has_free_basis(tuple)
        }
        Property::RaagImageFreeBasis => {
            let g = platform.graph().ok_or(Error::NotRaagPlatform)?;
            let proj = choose_projection(g)?;
            has_free_basis(&WordTuple(tuple.iter().map(|w| proj.apply(w.letters())).collect()))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityConfig {
    pub property: Property,
    pub platform: Platform,
    pub k: usize,
    pub radii: Vec<usize>,
    #[serde(default)]
    pub sampling_mode: SamplingMode,
}

/// Estimates the frequency of the property at each radius.
pub fn estimate_density(cfg: &DensityConfig, trials: usize, seed: u64, workers: usize) -> Result<Vec<DensityEstimate>> {
    if trials == 0 || cfg.radii.is_empty() {
        return Err(Error::InvalidParams("need at least one trial and one radius".into()));
    }
    // Surface configuration errors before spawning work.
    check_property(cfg.property, &cfg.platform, &WordTuple(vec![Word::identity()]))?;
    let mut out = Vec::with_capacity(cfg.radii.len());
    for (point, &radius) in cfg.radii.iter().enumerate() {
        let hits = run_trials(workers, seed, point as u64, trials, |_, rng| {
            let t = sample_tuple(&cfg.platform, cfg.k, radius, cfg.sampling_mode, rng);
            check_property(cfg.property, &cfg.platform, &t).unwrap_or(false)
        })?;
        out.push(DensityEstimate::new(radius, trials, hits.iter().filter(|h| **h).count()));
    }
    Ok(out)
}

/// Lower bound for the density of tuples with a free basis in `G(Γ)`: the
/// frequency with which the `F₂` image has one.
pub fn fb_density_via_quotient(
    platform: &Platform,
    k: usize,
    radii: &[usize],
    trials: usize,
    seed: u64,
    workers: usize,
) -> Result<Vec<DensityEstimate>> {
    let g = platform.graph().ok_or(Error::NotRaagPlatform)?;
    choose_projection(g)?;
    let cfg = DensityConfig {
        property: Property::RaagImageFreeBasis,
        platform: platform.clone(),
        k,
        radii: radii.to_vec(),
        sampling_mode: SamplingMode::Sphere,
    };
    estimate_density(&cfg, trials, seed, workers)
}

/// Least-squares slope of `ln(1 − ρ̂_n)` against `n`. A steady negative slope
/// is suggestive of exponential convergence, not a proof of it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceFit {
    pub slope: f64,
    pub points: usize,
    pub label: &'static str,
}

pub fn convergence_slope(estimates: &[DensityEstimate]) -> Option<ConvergenceFit> {
    let pts: Vec<(f64, f64)> = estimates
        .iter()
        .filter(|e| e.rate > 0.0 && e.rate < 1.0)
        .map(|e| (e.radius as f64, (1.0 - e.rate).ln()))
        .collect();
    let slope = least_squares_slope(&pts)?;
    Some(ConvergenceFit { slope, points: pts.len(), label: "suggestive, not a proof" })
}

/// Ordinary least-squares slope; `None` for fewer than two distinct `x`.
pub fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistortionEstimate {
    pub samples: usize,
    /// Largest `l_Y(w) / l_X(w)`.
    pub max_ratio: f64,
    /// Smallest `l_Y(w) / l_X(w)`.
    pub min_ratio: f64,
    /// Slope of `l_Y` against `l_X` through the origin.
    pub slope: f64,
}

/// Compares subgroup length with ambient length on random products of at
/// most `max_factors` generators.
pub fn distortion_probe(
    platform: &Platform,
    gens: &WordTuple,
    samples: usize,
    max_factors: u32,
    rng: &mut Rng,
) -> Result<DistortionEstimate> {
    if !platform.is_free() {
        return Err(Error::NotFreePlatform);
    }
    if gens.size() == 0 || max_factors == 0 || samples == 0 {
        return Err(Error::InvalidParams("need generators, factors and samples".into()));
    }
    let graph = build_core(gens);
    let basis = graph.nielsen_basis();
    let (mut sxy, mut sxx) = (0.0, 0.0);
    let (mut max_ratio, mut min_ratio) = (0.0f64, f64::INFINITY);
    let mut taken = 0;
    while taken < samples {
        let c = rng.gen_range(1..=max_factors);
        let expr = sample_factors(gens.size() as u32, c, rng);
        let w = platform.evaluate(&expr, gens)?;
        if w.is_identity() {
            continue;
        }
        let ly = graph.basis_word(&basis, &w)?.len() as f64;
        let lx = w.len() as f64;
        sxy += lx * ly;
        sxx += lx * lx;
        max_ratio = max_ratio.max(ly / lx);
        min_ratio = min_ratio.min(ly / lx);
        taken += 1;
    }
    Ok(DistortionEstimate { samples, max_ratio, min_ratio, slope: sxy / sxx })
}

/// Frequency of `|u^w| > |u|` for uniform `u`, `w` of the given lengths.
pub fn conjugation_growth_probe(rank: u32, len_u: usize, len_w: usize, samples: usize, rng: &mut Rng) -> Result<f64> {
    let a = Alphabet::new(rank)?;
    let mut grew = 0;
    for _ in 0..samples {
        let u = a.random_word(len_u, rng);
        let x = a.random_word(len_w, rng);
        if u.conjugate(&x).len() > u.len() {
            grew += 1;
        }
    }
    Ok(grew as f64 / samples.max(1) as f64)
}

/// A generated constrained conjugacy instance with its planted solution.
#[derive(Clone, Debug)]
pub struct LbaInput {
    pub problem: ScspStar,
    pub secret: SubgroupExpression,
}

/// The standard input generator for LBA: `a_1..a_k` and `u_1..u_m` sampled
/// per `params`, `w` a product of generators, `v_i = u_i^w`. With
/// `quarter_condition` the joint tuple `(u, a)` is resampled until it
/// satisfies the 1/4-condition.
pub fn generate_lba_input(
    platform: &Platform,
    params: &AagParams,
    quarter_condition: bool,
    rng: &mut Rng,
) -> Result<LbaInput> {
    params.validate()?;
    if quarter_condition && !platform.is_free() {
        return Err(Error::NotFreePlatform);
    }
    let sample = |rng: &mut Rng, count: [u32; 2], lengths: [u32; 2]| -> WordTuple {
        let n = rng.gen_range(count[0]..=count[1]);
        WordTuple(
            (0..n)
                .map(|_| loop {
                    let w = platform.random_word(rng.gen_range(lengths[0]..=lengths[1]) as usize, rng);
                    if !w.is_identity() {
                        break w;
                    }
                })
                .collect(),
        )
    };
    let (a, u) = loop {
        let a = sample(rng, params.k_range, params.gen_length_range);
        let u = sample(rng, params.m_range, params.u_length_range);
        if !quarter_condition {
            break (a, u);
        }
        let z = WordTuple(u.iter().chain(a.iter()).cloned().collect());
        if lambda_condition(&z, 0.25)? {
            break (a, u);
        }
    };
    let factors = rng.gen_range(params.key_factors_range[0]..=params.key_factors_range[1]);
    let secret = sample_factors(a.size() as u32, factors, rng);
    let x = platform.evaluate(&secret, &a)?;
    let pairs = u.iter().map(|ui| (ui.clone(), platform.conjugate(ui, &x))).collect();
    Ok(LbaInput { problem: ScspStar { system: ConjugacySystem::new(pairs)?, subgroup: a }, secret })
}

/// Attacks a sweep can run. `LbaScsp` runs LBA on a single generated
/// constrained system; `Lba` and `Qa` attack full key-exchange instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAttack {
    Lba,
    Qa,
    LbaScsp,
}

impl FromStr for SweepAttack {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lba" => Ok(SweepAttack::Lba),
            "qa" => Ok(SweepAttack::Qa),
            "lba_scsp" => Ok(SweepAttack::LbaScsp),
            _ => Err(Error::UnknownAttack(s.to_string())),
        }
    }
}

impl fmt::Display for SweepAttack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAttack::Lba => "lba",
            SweepAttack::Qa => "qa",
            SweepAttack::LbaScsp => "lba_scsp",
        })
    }
}

fn default_objective() -> ObjectiveKind {
    ObjectiveKind::Inner
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub attack: SweepAttack,
    pub platform: Platform,
    #[serde(default)]
    pub params: AagParams,
    /// Generator lengths; each overrides both length ranges.
    pub lengths: Vec<u32>,
    /// Private key factor counts; each overrides the factor range. Empty
    /// keeps the range from `params`.
    #[serde(default)]
    pub key_factors: Vec<u32>,
    #[serde(default = "default_objective")]
    pub objective: ObjectiveKind,
    #[serde(default)]
    pub max_iters: Option<usize>,
    /// Require the 1/4-condition on generated `lba_scsp` inputs.
    #[serde(default)]
    pub quarter_condition: bool,
}

/// Outcome of one attack trial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub success: bool,
    /// A key was produced but differs from the true one.
    pub wrong: bool,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub gen_length: u32,
    pub params: AagParams,
    pub trials: usize,
    pub successes: usize,
    pub wrong_keys: usize,
    pub rate: f64,
    pub ci_half_width: f64,
    pub mean_steps: f64,
    pub mean_ms: f64,
    pub outcomes: Vec<TrialOutcome>,
}

fn one_trial(cfg: &SweepConfig, params: &AagParams, seed: u64) -> Result<TrialOutcome> {
    match cfg.attack {
        SweepAttack::LbaScsp => {
            let input = generate_lba_input(&cfg.platform, params, cfg.quarter_condition, &mut Rng::new(seed))?;
            let trace = lba_solve_scsp_star_traced(&cfg.platform, &input.problem, cfg.objective, cfg.max_iters)?;
            let success = match trace.conjugator() {
                Some(e) => {
                    input.problem.is_solved_by(&cfg.platform, &cfg.platform.evaluate(e, &input.problem.subgroup)?)
                }
                None => false,
            };
            Ok(TrialOutcome { success, wrong: trace.conjugator().is_some() && !success, steps: trace.steps.len() })
        }
        SweepAttack::Lba | SweepAttack::Qa => {
            let attack = if cfg.attack == SweepAttack::Lba { AttackKind::Lba } else { AttackKind::Qa };
            let (inst, a, b) = keygen(&cfg.platform, params, seed)?;
            let (r, _) = run_attack(&inst, attack, cfg.objective, cfg.max_iters)?;
            let truth = true_key(&inst, &a, &b)?;
            let success = r.key.as_ref() == Some(&truth);
            Ok(TrialOutcome { success, wrong: r.key.is_some() && !success, steps: r.steps })
        }
    }
}

/// Runs the attack at every grid point. Grid points are the product of
/// `lengths` and `key_factors`, lengths outermost.
pub fn attack_success_sweep(cfg: &SweepConfig, trials: usize, seed: u64, workers: usize) -> Result<Vec<SweepPoint>> {
    if trials == 0 || cfg.lengths.is_empty() {
        return Err(Error::InvalidParams("need at least one trial and one length".into()));
    }
    cfg.params.validate()?;
    if cfg.attack == SweepAttack::Qa {
        let g = cfg.platform.graph().ok_or(Error::NotRaagPlatform)?;
        choose_projection(g)?;
    }
    if cfg.objective == ObjectiveKind::Inner && cfg.attack != SweepAttack::Qa && !cfg.platform.is_free() {
        return Err(Error::NotFreePlatform);
    }
    let factor_grid: Vec<Option<u32>> =
        if cfg.key_factors.is_empty() { vec![None] } else { cfg.key_factors.iter().map(|&p| Some(p)).collect() };
    let mut points = Vec::new();
    for &len in &cfg.lengths {
        for &p in &factor_grid {
            let mut params = cfg.params.clone();
            params.gen_length_range = [len, len];
            params.u_length_range = [len, len];
            if let Some(p) = p {
                params.key_factors_range = [p, p];
            }
            params.validate()?;
            let point = points.len() as u64;
            let results = run_trials(workers, seed, point, trials, |_, rng| {
                let s: u64 = rng.gen();
                let start = Instant::now();
                let r = one_trial(cfg, &params, s);
                (r, start.elapsed().as_secs_f64() * 1000.0)
            })?;
            let mut outcomes = Vec::with_capacity(trials);
            let mut ms = 0.0;
            for (r, t) in results {
                outcomes.push(r?);
                ms += t;
            }
            let successes = outcomes.iter().filter(|o| o.success).count();
            let est = DensityEstimate::new(len as usize, trials, successes);
            points.push(SweepPoint {
                gen_length: len,
                params,
                trials,
                successes,
                wrong_keys: outcomes.iter().filter(|o| o.wrong).count(),
                rate: est.rate,
                ci_half_width: est.ci_half_width,
                mean_steps: outcomes.iter().map(|o| o.steps as f64).sum::<f64>() / trials as f64,
                mean_ms: ms / trials as f64,
                outcomes,
            });
        }
    }
    Ok(points)
}

/// One experiment from a configuration file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "snake_case")]
pub enum ExperimentKind {
    Density(DensityConfig),
    FbQuotient { platform: Platform, k: usize, radii: Vec<usize> },
    Sweep(SweepConfig),
}

fn default_workers() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment_id: String,
    pub seed: u64,
    pub trials: usize,
    #[serde(default = "default_workers")]
    pub workers: usize,
    /// Record mean wall time per trial. Off by default so that output is
    /// byte-reproducible.
    #[serde(default)]
    pub timing: bool,
    #[serde(flatten)]
    pub kind: ExperimentKind,
}

/// One CSV row. Empty cells are written for fields that do not apply.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub experiment_id: String,
    pub property_or_attack: String,
    pub platform: String,
    pub k: String,
    #[serde(rename = "L")]
    pub l: usize,
    pub trials: usize,
    pub successes: usize,
    pub rate: f64,
    pub ci_half_width: f64,
    pub mean_steps: Option<f64>,
    pub mean_ms: Option<f64>,
    pub seed: u64,
    pub sampling_mode: String,
    /// The normal-approximation interval is unreliable at this point.
    pub small_sample: bool,
    pub params: String,
}

fn range(r: [u32; 2]) -> String {
    if r[0] == r[1] {
        r[0].to_string()
    } else {
        format!("{}-{}", r[0], r[1])
    }
}

fn params_label(p: &AagParams) -> String {
    format!(
        "K={};L={};M={};N={};P={}",
        range(p.k_range),
        range(p.gen_length_range),
        range(p.m_range),
        range(p.u_length_range),
        range(p.key_factors_range)
    )
}

/// Runs an experiment and returns its CSV rows.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<CsvRow>> {
    if cfg.trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let density_rows =
        |property: Property, platform: &Platform, k: usize, mode: SamplingMode, est: Vec<DensityEstimate>| {
            est.into_iter()
                .map(|e| CsvRow {
                    experiment_id: cfg.experiment_id.clone(),
                    property_or_attack: property.to_string(),
                    platform: platform.name(),
                    k: k.to_string(),
                    l: e.radius,
                    trials: e.trials,
                    successes: e.successes,
                    rate: e.rate,
                    ci_half_width: e.ci_half_width,
                    mean_steps: None,
                    mean_ms: None,
                    seed: cfg.seed,
                    sampling_mode: mode.to_string(),
                    small_sample: e.small_sample,
                    params: String::new(),
                })
                .collect::<Vec<_>>()
        };
    match &cfg.kind {
        ExperimentKind::Density(d) => {
            let est = estimate_density(d, cfg.trials, cfg.seed, cfg.workers)?;
            Ok(density_rows(d.property, &d.platform, d.k, d.sampling_mode, est))
        }
        ExperimentKind::FbQuotient { platform, k, radii } => {
            let est = fb_density_via_quotient(platform, *k, radii, cfg.trials, cfg.seed, cfg.workers)?;
            Ok(density_rows(Property::RaagImageFreeBasis, platform, *k, SamplingMode::Sphere, est))
        }
        ExperimentKind::Sweep(s) => {
            let points = attack_success_sweep(s, cfg.trials, cfg.seed, cfg.workers)?;
            Ok(points
                .into_iter()
                .map(|p| CsvRow {
                    experiment_id: cfg.experiment_id.clone(),
                    property_or_attack: format!("{}:{}", s.attack, s.objective),
                    platform: s.platform.name(),
                    k: range(p.params.k_range),
                    l: p.gen_length as usize,
                    trials: p.trials,
                    successes: p.successes,
                    rate: p.rate,
                    ci_half_width: p.ci_half_width,
                    mean_steps: Some(p.mean_steps),
                    mean_ms: cfg.timing.then_some(p.mean_ms),
                    seed: cfg.seed,
                    sampling_mode: SamplingMode::Sphere.to_string(),
                    small_sample: DensityEstimate::new(0, p.trials, p.successes).small_sample,
                    params: params_label(&p.params),
                })
                .collect())
        }
    }
}

pub fn write_csv<W: std::io::Write>(rows: &[CsvRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidParams(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::InvalidParams(e.to_string()))?;
    Ok(())
}

pub fn csv_string(rows: &[CsvRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}
