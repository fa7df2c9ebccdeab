//! Adversarial training loop, parameter-shift gradients, relative entropy,
//! and multi-run sweeps.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversary::{AmsgradConfig, AmsgradState, Discriminator, DiscriminatorConfig, PARAM_COUNT};
use crate::error::{Error, Result};
use crate::generator::{GeneratorCircuit, InitMode, LOGNORMAL_NORMAL_INIT_FIRST, LOGNORMAL_NORMAL_INIT_SECOND};
use crate::initfit::{make_init_spec, AngleFormula};
use crate::pmf::Pmf;
use crate::qsim;
use crate::targets::{discretized_normal, TailMode, TargetKind, TargetSpec, TrainingSet};

/// Floor applied to generated probabilities inside the relative entropy.
pub const ENTROPY_FLOOR: f64 = 1e-12;

/// `H(p|q) = sum_x p(x) ln(p(x) / q(x))` with `p` the target and `q` the
/// generated distribution.
pub fn relative_entropy(p: &Pmf, q: &Pmf) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            actual: q.len(),
        });
    }
    let h: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .filter(|(pp, _)| **pp > 0.0)
        .map(|(pp, qq)| pp * (pp / qq.max(ENTROPY_FLOOR)).ln())
        .sum();
    Ok(h.max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GradMode {
    /// Shifted distributions estimated from `shift_shots` samples.
    #[default]
    Shots,
    /// Shifted distributions read off the statevector.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InitKind {
    #[default]
    #[serde(alias = "our")]
    OurMethod,
    Uniform,
    Normal,
}

impl InitKind {
    pub const ALL: [InitKind; 3] = [InitKind::OurMethod, InitKind::Uniform, InitKind::Normal];

    pub fn name(self) -> &'static str {
        match self {
            InitKind::OurMethod => "our_method",
            InitKind::Uniform => "uniform",
            InitKind::Normal => "normal",
        }
    }
}

/// Angles of the two-column normal-distribution init.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalAngles {
    pub first: Vec<f64>,
    pub second: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NormalFitConfig {
    /// Fit angles when no constants are known for the target.
    pub enabled: bool,
    pub max_evaluations: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for NormalFitConfig {
    fn default() -> Self {
        Self {
            enabled: true,
            max_evaluations: 10_000,
            restarts: 8,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub n_qubits: usize,
    pub k: usize,
    pub init_kind: InitKind,
    pub target: TargetSpec,
    pub epochs: usize,
    pub data_count: usize,
    pub batch_size: usize,
    pub gen_shots: u64,
    pub shift_shots: u64,
    pub grad_mode: GradMode,
    pub gen_init_weight_range: [f64; 2],
    pub angle_formula: AngleFormula,
    pub generator_optimizer: AmsgradConfig,
    pub discriminator_optimizer: AmsgradConfig,
    pub discriminator: DiscriminatorConfig,
    /// Explicit normal-init angles; overrides both the built-in constants
    /// and the fit.
    pub normal_init: Option<NormalAngles>,
    pub normal_fit: NormalFitConfig,
    pub runs: usize,
    pub base_seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            n_qubits: 3,
            k: 1,
            init_kind: InitKind::OurMethod,
            target: TargetSpec::lognormal(),
            epochs: 2000,
            data_count: 2000,
            batch_size: 2000,
            gen_shots: 2000,
            shift_shots: 8000,
            grad_mode: GradMode::Shots,
            gen_init_weight_range: [-0.1, 0.1],
            angle_formula: AngleFormula::Sqrt,
            generator_optimizer: AmsgradConfig::default(),
            discriminator_optimizer: AmsgradConfig::default(),
            discriminator: DiscriminatorConfig::default(),
            normal_init: None,
            normal_fit: NormalFitConfig::default(),
            runs: 10,
            base_seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_qubits == 0 || self.n_qubits > qsim::MAX_QUBITS {
            return Err(Error::QubitCount(self.n_qubits));
        }
        if self.data_count == 0 || self.batch_size == 0 || self.gen_shots == 0 || self.shift_shots == 0 {
            return bad("data_count, batch_size, gen_shots and shift_shots must be at least 1".into());
        }
        if self.runs == 0 {
            return bad("runs must be at least 1".into());
        }
        if self.batch_size > self.data_count {
            return bad(format!(
                "batch_size {} exceeds data_count {}",
                self.batch_size, self.data_count
            ));
        }
        let [lo, hi] = self.gen_init_weight_range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return bad(format!("gen_init_weight_range [{lo}, {hi}]"));
        }
        for opt in [&self.generator_optimizer, &self.discriminator_optimizer] {
            let ok = opt.lr > 0.0
                && (0.0..1.0).contains(&opt.beta1)
                && (0.0..1.0).contains(&opt.beta2)
                && opt.eps > 0.0;
            if !ok {
                return bad(format!("optimizer settings {opt:?}"));
            }
        }
        self.target.validate()
    }

    /// Seed of run `index` in a sweep.
    pub fn run_seed(&self, index: usize) -> u64 {
        self.base_seed.wrapping_add(index as u64)
    }

    /// The generator's init gates for this target.
    pub fn init_mode(&self) -> Result<InitMode> {
        let target = self.target.discretize(self.n_qubits)?;
        match self.init_kind {
            InitKind::OurMethod => Ok(InitMode::OurMethod {
                spec: make_init_spec(&target, self.angle_formula)?,
            }),
            InitKind::Uniform => Ok(InitMode::UniformH),
            InitKind::Normal => {
                let angles = match &self.normal_init {
                    Some(angles) => angles.clone(),
                    None => match known_normal_angles(&self.target, self.n_qubits) {
                        Some(angles) => angles,
                        None if self.normal_fit.enabled => {
                            fit_normal_init(&target, self.target.tail_mode, self.normal_fit)?.angles
                        }
                        None => {
                            return Err(Error::InvalidConfig(format!(
                                "no normal-init constants for the {} target and fitting is disabled",
                                self.target.name()
                            )))
                        }
                    },
                };
                Ok(InitMode::NormalFixed {
                    first: angles.first,
                    second: angles.second,
                })
            }
        }
    }
}

/// Published constants exist only for the three-qubit log-normal(1, 1).
pub fn known_normal_angles(target: &TargetSpec, n_qubits: usize) -> Option<NormalAngles> {
    match target.kind {
        TargetKind::LogNormal { mu, sigma } if mu == 1.0 && sigma == 1.0 && n_qubits == 3 => Some(NormalAngles {
            first: LOGNORMAL_NORMAL_INIT_FIRST.to_vec(),
            second: LOGNORMAL_NORMAL_INIT_SECOND.to_vec(),
        }),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalFit {
    pub angles: NormalAngles,
    /// `H(normal | circuit)` at the returned angles.
    pub rel_entropy: f64,
    pub evaluations: usize,
}

/// Readout distribution of the init gates alone.
pub fn init_only_pmf(init: &InitMode, n_qubits: usize) -> Result<Pmf> {
    GeneratorCircuit::new(n_qubits, 0, init.clone(), vec![0.0; n_qubits])?.pmf()
}

fn normal_circuit_pmf(x: &[f64], n: usize) -> Result<Pmf> {
    let init = InitMode::NormalFixed {
        first: x[..n].to_vec(),
        second: x[n..].to_vec(),
    };
    init_only_pmf(&init, n)
}

/// Fits the two-column normal init to a normal law with the target's mean and
/// standard deviation by compass search from seeded random starts.
pub fn fit_normal_init(target: &Pmf, tail_mode: TailMode, config: NormalFitConfig) -> Result<NormalFit> {
    let n = target.n_qubits();
    let mean = target.mean();
    let var = target
        .probs()
        .iter()
        .enumerate()
        .map(|(m, p)| p * (m as f64 - mean).powi(2))
        .sum::<f64>();
    let goal = discretized_normal(mean, var.sqrt().max(1e-3), n, tail_mode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut evaluations = 0;
    let objective = |x: &[f64], evaluations: &mut usize| -> Result<f64> {
        *evaluations += 1;
        relative_entropy(&goal, &normal_circuit_pmf(x, n)?)
    };
    let restarts = config.restarts.max(1);
    let per_start = (config.max_evaluations / restarts).max(1);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for _ in 0..restarts {
        let mut x: Vec<f64> = (0..2 * n).map(|_| rng.random_range(0.0..PI)).collect();
        let stop = evaluations + per_start;
        let mut fx = objective(&x, &mut evaluations)?;
        let mut step = 0.5;
        'search: while step > 1e-7 {
            let mut improved = false;
            for i in 0..2 * n {
                for dir in [1.0, -1.0] {
                    if evaluations >= stop {
                        break 'search;
                    }
                    let mut y = x.clone();
                    y[i] += dir * step;
                    let fy = objective(&y, &mut evaluations)?;
                    if fy < fx {
                        x = y;
                        fx = fy;
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                step /= 2.0;
            }
        }
        if best.as_ref().is_none_or(|(_, b)| fx < *b) {
            best = Some((x, fx));
        }
    }
    let (x, rel_entropy) = best.expect("at least one restart");
    log::debug!("normal-init fit: H = {rel_entropy:.3e} after {evaluations} evaluations");
    Ok(NormalFit {
        angles: NormalAngles {
            first: x[..n].to_vec(),
            second: x[n..].to_vec(),
        },
        rel_entropy,
        evaluations,
    })
}

/// Parameter-shift gradient of the generator loss
/// `-sum_m p_theta(m) log D(m)` over every trainable angle.
pub fn param_shift_gradient<R: Rng + ?Sized>(
    circuit: &GeneratorCircuit,
    disc: &Discriminator,
    grad_mode: GradMode,
    shift_shots: u64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let log_d = disc.log_d_table(1 << circuit.n_qubits());
    let mut shifted_probs = |params: &[f64]| -> Result<Vec<f64>> {
        let pmf = circuit.pmf_with(params)?;
        match grad_mode {
            GradMode::Exact => Ok(pmf.into_vec()),
            GradMode::Shots => {
                let counts = qsim::sample_counts(pmf.probs(), shift_shots, rng)?;
                Ok(counts.iter().map(|&c| c as f64 / shift_shots as f64).collect())
            }
        }
    };
    let mut params = circuit.params().to_vec();
    let mut grad = Vec::with_capacity(params.len());
    for j in 0..params.len() {
        let theta = params[j];
        params[j] = theta + FRAC_PI_2;
        let plus = shifted_probs(&params)?;
        params[j] = theta - FRAC_PI_2;
        let minus = shifted_probs(&params)?;
        params[j] = theta;
        let g: f64 = plus
            .iter()
            .zip(&minus)
            .zip(&log_d)
            .map(|((p, q), l)| (p - q) / 2.0 * l)
            .sum();
        grad.push(-g);
    }
    Ok(grad)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpochMetrics {
    pub epoch: usize,
    pub loss_g: f64,
    /// The discriminator's minimized loss `-L_D`.
    pub loss_d: f64,
    pub rel_entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub target_pmf: Pmf,
    pub init_pmf: Pmf,
    /// Metrics before the first update.
    pub initial: EpochMetrics,
    /// One entry per training epoch.
    pub epochs: Vec<EpochMetrics>,
    pub final_pmf: Pmf,
    pub final_circuit: GeneratorCircuit,
    pub final_discriminator: Discriminator,
    pub wall_time_secs: f64,
}

impl RunRecord {
    /// Initial metrics followed by every epoch.
    pub fn trace(&self) -> impl Iterator<Item = &EpochMetrics> {
        std::iter::once(&self.initial).chain(&self.epochs)
    }

    pub fn final_rel_entropy(&self) -> f64 {
        self.epochs.last().unwrap_or(&self.initial).rel_entropy
    }

    pub fn min_rel_entropy(&self) -> f64 {
        self.trace().map(|m| m.rel_entropy).fold(f64::INFINITY, f64::min)
    }

    /// Equality ignoring wall time.
    pub fn same_result(&self, other: &RunRecord) -> bool {
        let mut a = self.clone();
        a.wall_time_secs = other.wall_time_secs;
        &a == other
    }
}

fn histogram_weights(counts: &[u64]) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    counts.iter().map(|&c| c as f64 / total as f64).collect()
}

/// One seeded adversarial training run.
pub fn train_run(config: &TrainConfig, run_seed: u64) -> Result<RunRecord> {
    config.validate()?;
    let started = Instant::now();
    let n = config.n_qubits;
    let len = 1usize << n;
    let target = config.target.discretize(n)?;
    let init = config.init_mode()?;
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed);

    let data = TrainingSet::draw(&target, config.data_count, &mut rng)?;
    let [lo, hi] = config.gen_init_weight_range;
    let params = (0..n * (config.k + 1)).map(|_| rng.random_range(lo..=hi)).collect();
    let mut circuit = GeneratorCircuit::new(n, config.k, init, params)?;
    let init_pmf = init_only_pmf(circuit.init(), n)?;
    let mut disc = Discriminator::random(config.discriminator, &mut rng);
    let mut g_opt = AmsgradState::new(circuit.n_params(), config.generator_optimizer);
    let mut d_opt = AmsgradState::new(PARAM_COUNT, config.discriminator_optimizer);

    let real_all = histogram_weights(&counts_of(&data.samples, len));
    let pmf = circuit.pmf()?;
    let initial = EpochMetrics {
        epoch: 0,
        loss_g: disc.gen_loss_from_pmf(&pmf),
        loss_d: disc.disc_loss_weighted(&real_all, pmf.probs()),
        rel_entropy: relative_entropy(&target, &pmf)?,
    };

    let mut epochs = Vec::with_capacity(config.epochs);
    for epoch in 1..=config.epochs {
        let real = if config.batch_size == config.data_count {
            real_all.clone()
        } else {
            let picks = rand::seq::index::sample(&mut rng, config.data_count, config.batch_size);
            let batch: Vec<usize> = picks.iter().map(|i| data.samples[i]).collect();
            histogram_weights(&counts_of(&batch, len))
        };
        let exact = circuit.pmf()?;
        let fake = histogram_weights(&qsim::sample_counts(exact.probs(), config.gen_shots, &mut rng)?);

        let loss_d = disc.disc_loss_weighted(&real, &fake);
        let grad_d = disc.disc_grad_weighted(&real, &fake);
        d_opt.step(disc.params_mut(), &grad_d)?;

        let loss_g = match config.grad_mode {
            GradMode::Shots => disc.gen_loss_from_pmf(&Pmf::new(fake)?),
            GradMode::Exact => disc.gen_loss_from_pmf(&exact),
        };
        let grad_g = param_shift_gradient(&circuit, &disc, config.grad_mode, config.shift_shots, &mut rng)?;
        g_opt.step(circuit.params_mut(), &grad_g)?;

        let pmf = circuit.pmf()?;
        epochs.push(EpochMetrics {
            epoch,
            loss_g,
            loss_d,
            rel_entropy: relative_entropy(&target, &pmf)?,
        });
    }

    Ok(RunRecord {
        seed: run_seed,
        final_pmf: circuit.pmf()?,
        target_pmf: target,
        init_pmf,
        initial,
        epochs,
        final_circuit: circuit,
        final_discriminator: disc,
        wall_time_secs: started.elapsed().as_secs_f64(),
    })
}

fn counts_of(labels: &[usize], len: usize) -> Vec<u64> {
    let mut counts = vec![0; len];
    for &m in labels {
        counts[m] += 1;
    }
    counts
}

/// Mean, population standard deviation and minimum.
pub fn describe(values: &[f64]) -> (f64, f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    (mean, var.sqrt(), min)
}

/// Aggregate of one (target, init, k) configuration.
#[derive(Debug, Clone, Serialize)]
pub struct CellSummary {
    pub data: String,
    pub init: InitKind,
    pub k: usize,
    pub runs_ok: usize,
    pub runs_failed: usize,
    /// Final-epoch relative entropy statistics.
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    /// The same statistics over each run's best epoch.
    pub best_mean: f64,
    pub best_std: f64,
    pub best_min: f64,
    pub initial_rel_entropy: f64,
    pub errors: Vec<String>,
    #[serde(skip)]
    pub records: Vec<RunRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub cells: Vec<CellSummary>,
}

impl SweepSummary {
    pub fn cell(&self, data: &str, init: InitKind, k: usize) -> Option<&CellSummary> {
        self.cells.iter().find(|c| c.data == data && c.init == init && c.k == k)
    }
}

/// Runs `runs` seeded runs of every config on up to `workers` threads. Results
/// do not depend on the worker count. Failed runs are counted and skipped.
pub fn sweep(configs: &[TrainConfig], runs: usize, workers: usize) -> Result<SweepSummary> {
    if runs == 0 {
        return Err(Error::InvalidConfig("runs must be at least 1".into()));
    }
    for config in configs {
        config.validate()?;
    }
    // the init (and any normal fit) is shared by every run of a config
    let prepared: Vec<TrainConfig> = configs
        .iter()
        .map(|c| {
            let mut c = c.clone();
            if c.init_kind == InitKind::Normal && c.normal_init.is_none() {
                if let Ok(InitMode::NormalFixed { first, second }) = c.init_mode() {
                    c.normal_init = Some(NormalAngles { first, second });
                }
            }
            c
        })
        .collect();
    let jobs: Vec<(usize, usize)> = (0..prepared.len())
        .flat_map(|c| (0..runs).map(move |r| (c, r)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let results: Vec<Result<RunRecord>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(c, r)| {
                let config = &prepared[c];
                let record = train_run(config, config.run_seed(r));
                if let Err(e) = &record {
                    log::warn!("{} / {} / k={} run {r} failed: {e}", config.target.name(), config.init_kind.name(), config.k);
                }
                record
            })
            .collect()
    });

    let mut results = results.into_iter();
    let cells = prepared
        .iter()
        .map(|config| {
            let mut records = Vec::new();
            let mut errors = Vec::new();
            for outcome in results.by_ref().take(runs) {
                match outcome {
                    Ok(record) => records.push(record),
                    Err(e) => errors.push(e.to_string()),
                }
            }
            let finals: Vec<f64> = records.iter().map(RunRecord::final_rel_entropy).collect();
            let bests: Vec<f64> = records.iter().map(RunRecord::min_rel_entropy).collect();
            let (mean, std, min) = describe(&finals);
            let (best_mean, best_std, best_min) = describe(&bests);
            let initial_rel_entropy = records.first().map_or(f64::NAN, |r| r.initial.rel_entropy);
            CellSummary {
                data: config.target.name().to_string(),
                init: config.init_kind,
                k: config.k,
                runs_ok: records.len(),
                runs_failed: errors.len(),
                mean,
                std,
                min,
                best_mean,
                best_std,
                best_min,
                initial_rel_entropy,
                errors,
                records,
            }
        })
        .collect();
    Ok(SweepSummary { cells })
}

/// One line of the init-ordering comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderingCheck {
    pub data: String,
    pub k: usize,
    pub statistic: &'static str,
    pub winner: InitKind,
    pub loser: InitKind,
    pub winner_value: f64,
    pub loser_value: f64,
    /// Checks the published table itself does not satisfy.
    pub expected_to_hold: bool,
    pub holds: bool,
}

/// Ordering claims of the benchmark table: our method beats uniform on mean
/// and min everywhere except the bimodal k = 3 mean, and beats the normal
/// init on the log-normal target except the k = 1 minimum. The two
/// exceptions are where the published values themselves go the other way.
pub fn ordering_report(summary: &SweepSummary) -> Vec<OrderingCheck> {
    let mut checks = Vec::new();
    let mut ks: Vec<usize> = summary.cells.iter().map(|c| c.k).collect();
    ks.sort_unstable();
    ks.dedup();
    let mut datas: Vec<String> = Vec::new();
    for c in &summary.cells {
        if !datas.contains(&c.data) {
            datas.push(c.data.clone());
        }
    }
    for data in &datas {
        for &k in &ks {
            let Some(ours) = summary.cell(data, InitKind::OurMethod, k) else {
                continue;
            };
            let mut rivals = vec![InitKind::Uniform];
            if data == "log-normal" {
                rivals.push(InitKind::Normal);
            }
            for rival in rivals {
                let Some(other) = summary.cell(data, rival, k) else {
                    continue;
                };
                for (statistic, a, b) in [("mean", ours.mean, other.mean), ("min", ours.min, other.min)] {
                    let exempt = (data == "bimodal" && k == 3 && statistic == "mean" && rival == InitKind::Uniform)
                        || (data == "log-normal" && k == 1 && statistic == "min" && rival == InitKind::Normal);
                    checks.push(OrderingCheck {
                        data: data.clone(),
                        k,
                        statistic,
                        winner: InitKind::OurMethod,
                        loser: rival,
                        winner_value: a,
                        loser_value: b,
                        expected_to_hold: !exempt,
                        holds: a < b,
                    });
                }
            }
        }
    }
    checks
}

/// Published table rows: (data, init, k, mean, std, min).
pub const REFERENCE_TABLE: [(&str, InitKind, usize, f64, f64, f64); 27] = [
    ("log-normal", InitKind::OurMethod, 1, 0.00190, 0.000290, 0.00134),
    ("log-normal", InitKind::OurMethod, 2, 0.00163, 0.000405, 0.00092),
    ("log-normal", InitKind::OurMethod, 3, 0.00163, 0.000514, 0.00086),
    ("log-normal", InitKind::Uniform, 1, 0.14514, 0.013234, 0.12992),
    ("log-normal", InitKind::Uniform, 2, 0.07810, 0.043166, 0.03962),
    ("log-normal", InitKind::Uniform, 3, 0.07702, 0.052596, 0.00706),
    ("log-normal", InitKind::Normal, 1, 0.00414, 0.005282, 0.00129),
    ("log-normal", InitKind::Normal, 2, 0.01260, 0.009894, 0.00119),
    ("log-normal", InitKind::Normal, 3, 0.01320, 0.018007, 0.00097),
    ("triangular", InitKind::OurMethod, 1, 0.03962, 0.007225, 0.03078),
    ("triangular", InitKind::OurMethod, 2, 0.03931, 0.011143, 0.00744),
    ("triangular", InitKind::OurMethod, 3, 0.02480, 0.017297, 0.00165),
    ("triangular", InitKind::Uniform, 1, 0.36796, 0.129145, 0.06295),
    ("triangular", InitKind::Uniform, 2, 0.08249, 0.068867, 0.01054),
    ("triangular", InitKind::Uniform, 3, 0.19945, 0.264557, 0.00274),
    ("triangular", InitKind::Normal, 1, 0.00212, 0.000903, 0.00136),
    ("triangular", InitKind::Normal, 2, 0.00289, 0.003174, 0.00104),
    ("triangular", InitKind::Normal, 3, 0.00288, 0.001490, 0.00121),
    ("bimodal", InitKind::OurMethod, 1, 0.17156, 0.041284, 0.10309),
    ("bimodal", InitKind::OurMethod, 2, 0.11749, 0.077465, 0.00474),
    ("bimodal", InitKind::OurMethod, 3, 0.09782, 0.067075, 0.00194),
    ("bimodal", InitKind::Uniform, 1, 0.34285, 0.015677, 0.31533),
    ("bimodal", InitKind::Uniform, 2, 0.16386, 0.060814, 0.05680),
    ("bimodal", InitKind::Uniform, 3, 0.04484, 0.039178, 0.01275),
    ("bimodal", InitKind::Normal, 1, 0.00953, 0.001066, 0.00786),
    ("bimodal", InitKind::Normal, 2, 0.00846, 0.002848, 0.00100),
    ("bimodal", InitKind::Normal, 3, 0.00863, 0.003180, 0.00191),
];

/// The 27 benchmark configurations (3 targets x 3 inits x k in 1..=3).
pub fn benchmark_configs(base: &TrainConfig) -> Vec<TrainConfig> {
    let mut configs = Vec::new();
    for target in TargetSpec::benchmarks() {
        for init_kind in InitKind::ALL {
            for k in 1..=3 {
                configs.push(TrainConfig {
                    target: target.clone().with_tail_mode(base.target.tail_mode),
                    init_kind,
                    k,
                    ..base.clone()
                });
            }
        }
    }
    configs
}
