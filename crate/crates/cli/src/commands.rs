use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::Value;

use qgan_core::harness::{
    self, benchmark_configs, fit_normal_init, known_normal_angles, ordering_report, GradMode, InitKind, RunRecord,
    TrainConfig,
};
use qgan_core::initfit::{make_init_spec, AngleFormula};
use qgan_core::report::{self, RunSidecar};
use qgan_core::targets::{load_custom_pmf, TailMode, TargetKind, TargetSpec};
use qgan_core::{relative_entropy, Pmf};

use crate::{plot, Scale, TargetArg, TargetArgs, TrainArgs, UsageError};

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn family_of(kind: &TargetKind) -> TargetArg {
    match kind {
        TargetKind::LogNormal { .. } => TargetArg::Lognormal,
        TargetKind::Triangular { .. } => TargetArg::Triangular,
        TargetKind::Bimodal { .. } => TargetArg::Bimodal,
        TargetKind::Custom { .. } => TargetArg::Custom,
    }
}

fn has_target_flags(args: &TargetArgs) -> bool {
    args.target.is_some()
        || [args.mu, args.sigma, args.l, args.m, args.u, args.mu1, args.sigma1, args.mu2, args.sigma2]
            .iter()
            .any(Option::is_some)
        || args.pmf_file.is_some()
        || args.tail_mode.is_some()
}

/// Applies target flags on top of `base`; law parameters not given keep the
/// base value when the family is unchanged, else the benchmark default.
fn target_from_args(args: &TargetArgs, base: &TargetSpec, n_qubits: usize) -> Result<TargetSpec> {
    let family = args.target.unwrap_or_else(|| family_of(&base.kind));
    let same = args.target.is_none() || family_of(&base.kind) == family;
    let pick = |given: Option<f64>, current: f64| given.unwrap_or(current);
    let reject = |names: &[(&str, Option<f64>)]| -> Result<()> {
        if let Some((name, _)) = names.iter().find(|(_, v)| v.is_some()) {
            return Err(usage(format!("--{name} does not apply to this target")));
        }
        Ok(())
    };
    let lognormal = [("mu", args.mu), ("sigma", args.sigma)];
    let triangular = [("l", args.l), ("m", args.m), ("u", args.u)];
    let bimodal = [("mu1", args.mu1), ("sigma1", args.sigma1), ("mu2", args.mu2), ("sigma2", args.sigma2)];
    if family != TargetArg::Custom && args.pmf_file.is_some() {
        return Err(usage("--pmf-file requires --target custom"));
    }
    let kind = match family {
        TargetArg::Lognormal => {
            reject(&triangular)?;
            reject(&bimodal)?;
            let (mu, sigma) = match (&base.kind, same) {
                (TargetKind::LogNormal { mu, sigma }, true) => (*mu, *sigma),
                _ => (1.0, 1.0),
            };
            TargetKind::LogNormal {
                mu: pick(args.mu, mu),
                sigma: pick(args.sigma, sigma),
            }
        }
        TargetArg::Triangular => {
            reject(&lognormal)?;
            reject(&bimodal)?;
            let (lower, mode, upper) = match (&base.kind, same) {
                (TargetKind::Triangular { lower, mode, upper }, true) => (*lower, *mode, *upper),
                _ => (0.0, 2.0, 7.0),
            };
            TargetKind::Triangular {
                lower: pick(args.l, lower),
                mode: pick(args.m, mode),
                upper: pick(args.u, upper),
            }
        }
        TargetArg::Bimodal => {
            reject(&lognormal)?;
            reject(&triangular)?;
            let (mu1, sigma1, mu2, sigma2) = match (&base.kind, same) {
                (TargetKind::Bimodal { mu1, sigma1, mu2, sigma2 }, true) => (*mu1, *sigma1, *mu2, *sigma2),
                _ => (0.5, 1.0, 3.5, 0.5),
            };
            TargetKind::Bimodal {
                mu1: pick(args.mu1, mu1),
                sigma1: pick(args.sigma1, sigma1),
                mu2: pick(args.mu2, mu2),
                sigma2: pick(args.sigma2, sigma2),
            }
        }
        TargetArg::Uniform => {
            reject(&lognormal)?;
            reject(&triangular)?;
            reject(&bimodal)?;
            TargetKind::Custom {
                probabilities: Pmf::uniform(n_qubits).into_vec(),
            }
        }
        TargetArg::Custom => {
            reject(&lognormal)?;
            reject(&triangular)?;
            reject(&bimodal)?;
            match (&args.pmf_file, &base.kind) {
                (Some(path), _) => TargetKind::Custom {
                    probabilities: load_custom_pmf(path).with_context(|| format!("reading {}", path.display()))?,
                },
                (None, TargetKind::Custom { probabilities }) if same => TargetKind::Custom {
                    probabilities: probabilities.clone(),
                },
                (None, _) => return Err(usage("--target custom requires --pmf-file")),
            }
        }
    };
    let tail_mode = args.tail_mode.map_or(base.tail_mode, Into::into);
    let spec = TargetSpec::new(kind).with_tail_mode(tail_mode);
    spec.validate().map_err(|e| usage(e.to_string()))?;
    Ok(spec)
}

fn fmt_vec(values: &[f64], digits: usize) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.digits$}")).collect();
    format!("[{}]", parts.join(", "))
}

fn tail_name(mode: TailMode) -> &'static str {
    match mode {
        TailMode::Clip => "clip",
        TailMode::Truncate => "truncate",
    }
}

pub fn fit_init(args: &TargetArgs, formula: AngleFormula, out: Option<&Path>) -> Result<()> {
    let n = args.qubits.unwrap_or(3);
    if n == 0 || n > qgan_core::qsim::MAX_QUBITS {
        return Err(usage(format!("--qubits {n} is out of range")));
    }
    let spec = target_from_args(args, &TargetSpec::lognormal(), n)?;
    let target = spec.discretize(n)?;
    let init = make_init_spec(&target, formula)?;
    let induced = init.induced_pmf()?;
    let over_pi: Vec<String> = init.angles_over_pi().iter().map(|a| format!("{a:.3}π")).collect();
    println!("target: {} ({} tails), {n} qubits", spec.name(), tail_name(spec.tail_mode));
    println!("target pmf:    {}", fmt_vec(target.probs(), 5));
    println!("angles (rad):  {}", fmt_vec(&init.angles, 4));
    println!("angles:        [{}]", over_pi.join(", "));
    println!("permutation (outcome -> label): {:?}", init.permutation.mapping());
    println!("init pmf:      {}", fmt_vec(induced.probs(), 5));
    println!("H(target|init) = {:.5}", relative_entropy(&target, &induced)?);
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join("init_spec.json");
        report::write_json(&init, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

pub fn discretize(args: &TargetArgs) -> Result<()> {
    let n = args.qubits.unwrap_or(3);
    let spec = target_from_args(args, &TargetSpec::lognormal(), n)?;
    let pmf = spec.discretize(n)?;
    println!("label,probability");
    for (m, p) in pmf.probs().iter().enumerate() {
        println!("{m},{p}");
    }
    Ok(())
}

/// Reads a config file: training settings plus the optional `out` and
/// `plots` keys. Unknown keys are rejected.
fn load_cli_config(path: &Path) -> Result<(TrainConfig, Option<String>, bool)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut value: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let map = value
        .as_object_mut()
        .ok_or_else(|| usage(format!("{}: expected a JSON object", path.display())))?;
    let out = match map.remove("out") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s),
        Some(_) => return Err(usage("config key \"out\" must be a string")),
    };
    let plots = match map.remove("plots") {
        None => false,
        Some(Value::Bool(b)) => b,
        Some(_) => return Err(usage("config key \"plots\" must be a boolean")),
    };
    let config = serde_json::from_value(value).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok((config, out, plots))
}

fn workers_or_default(workers: Option<usize>) -> usize {
    workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Pins the normal-init angles into the config, fitting and saving them
/// when no constants are known.
fn pin_normal_init(config: &mut TrainConfig, out: &Path) -> Result<()> {
    if config.init_kind != InitKind::Normal || config.normal_init.is_some() {
        return Ok(());
    }
    if let Some(angles) = known_normal_angles(&config.target, config.n_qubits) {
        config.normal_init = Some(angles);
        return Ok(());
    }
    if !config.normal_fit.enabled {
        bail!("no normal-init constants for the {} target and fitting is disabled", config.target.name());
    }
    let target = config.target.discretize(config.n_qubits)?;
    let fit = fit_normal_init(&target, config.target.tail_mode, config.normal_fit)?;
    let path = out.join(format!("normal_init_{}.json", config.target.name()));
    report::write_json(&fit, &path)?;
    log::info!("normal-init fit for {}: H = {:.2e}, saved to {}", config.target.name(), fit.rel_entropy, path.display());
    config.normal_init = Some(fit.angles);
    Ok(())
}

fn write_run(config: &TrainConfig, record: &RunRecord, index: usize, out: &Path, plots: bool) -> Result<()> {
    let stem = format!("run_{index:02}");
    let csv_path = out.join(format!("{stem}.csv"));
    report::write_run_csv(record, BufWriter::new(File::create(&csv_path)?))?;
    let mut run_config = config.clone();
    run_config.runs = 1;
    run_config.base_seed = record.seed;
    report::write_json(&RunSidecar::new(&run_config, record), &out.join(format!("{stem}.json")))?;
    if plots {
        let title = format!("{} / {} / k={} / seed {}", config.target.name(), config.init_kind.name(), config.k, record.seed);
        fs::write(out.join(format!("{stem}_pmf.svg")), plot::pmf_overlay(&record.target_pmf, &record.final_pmf, &title))?;
        let curve: Vec<f64> = record.trace().map(|m| m.rel_entropy).collect();
        fs::write(out.join(format!("{stem}_entropy.svg")), plot::entropy_curve(&curve, &title))?;
    }
    Ok(())
}

pub fn train(args: &TrainArgs) -> Result<()> {
    let (mut config, file_out, file_plots) = if let Some(path) = &args.from_sidecar {
        let overrides = has_target_flags(&args.target)
            || args.k.is_some()
            || args.init.is_some()
            || args.epochs.is_some()
            || args.runs.is_some()
            || args.seed.is_some()
            || args.grad_mode.is_some()
            || args.angle_formula.is_some();
        if overrides {
            return Err(usage("--from-sidecar replays a recorded run; only --out, --plots and --workers apply"));
        }
        let sidecar = RunSidecar::load(path).with_context(|| format!("reading {}", path.display()))?;
        let mut config = sidecar.config;
        config.runs = 1;
        config.base_seed = sidecar.seed;
        (config, None, false)
    } else if let Some(path) = &args.config {
        load_cli_config(path)?
    } else {
        (TrainConfig::default(), None, false)
    };

    if let Some(n) = args.target.qubits {
        config.n_qubits = n;
    }
    if has_target_flags(&args.target) {
        config.target = target_from_args(&args.target, &config.target, config.n_qubits)?;
    }
    if let Some(k) = args.k {
        config.k = k;
    }
    if let Some(init) = args.init {
        config.init_kind = init.into();
    }
    if let Some(epochs) = args.epochs {
        config.epochs = epochs;
    }
    if let Some(runs) = args.runs {
        config.runs = runs;
    }
    if let Some(seed) = args.seed {
        config.base_seed = seed;
    }
    if let Some(mode) = args.grad_mode {
        config.grad_mode = mode.into();
    }
    if let Some(formula) = args.angle_formula {
        config.angle_formula = formula.into();
    }
    config.validate().map_err(|e| usage(e.to_string()))?;

    let out = args
        .out
        .clone()
        .or(file_out.map(Into::into))
        .unwrap_or_else(|| "qgan-out".into());
    let plots = args.plots || file_plots;
    fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
    pin_normal_init(&mut config, &out)?;

    let summary = harness::sweep(std::slice::from_ref(&config), config.runs, workers_or_default(args.workers))?;
    let cell = &summary.cells[0];
    for (i, record) in cell.records.iter().enumerate() {
        let index = (record.seed.wrapping_sub(config.base_seed)) as usize;
        write_run(&config, record, index, &out, plots)?;
        println!(
            "run {i}: seed {} H(target|gen) initial {:.5} final {:.5} best {:.5}",
            record.seed,
            record.initial.rel_entropy,
            record.final_rel_entropy(),
            record.min_rel_entropy()
        );
    }
    report::write_summary_csv(&summary, BufWriter::new(File::create(out.join("summary.csv"))?))?;
    if cell.runs_ok > 1 {
        println!("final relative entropy: mean {:.5} std {:.5} min {:.5}", cell.mean, cell.std, cell.min);
    }
    println!("wrote {}", out.display());
    if cell.runs_failed > 0 {
        bail!("{} of {} runs failed: {}", cell.runs_failed, config.runs, cell.errors.join("; "));
    }
    Ok(())
}

pub fn reproduce(
    scale: Scale,
    runs: Option<usize>,
    epochs: Option<usize>,
    seed: u64,
    tail_mode: Option<TailMode>,
    workers: Option<usize>,
    out: &Path,
) -> Result<()> {
    let mut base = TrainConfig {
        base_seed: seed,
        ..TrainConfig::default()
    };
    if scale == Scale::Desk {
        base.runs = 5;
        base.epochs = 500;
        base.grad_mode = GradMode::Exact;
    }
    if let Some(runs) = runs {
        base.runs = runs;
    }
    if let Some(epochs) = epochs {
        base.epochs = epochs;
    }
    if let Some(mode) = tail_mode {
        base.target = base.target.with_tail_mode(mode);
    }
    base.validate().map_err(|e| usage(e.to_string()))?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;

    let mut configs = benchmark_configs(&base);
    for config in &mut configs {
        pin_normal_init(config, out)?;
    }
    let workers = workers_or_default(workers);
    eprintln!(
        "running {} configurations x {} runs x {} epochs on {workers} workers",
        configs.len(),
        base.runs,
        base.epochs
    );
    let summary = harness::sweep(&configs, base.runs, workers)?;

    report::write_summary_csv(&summary, BufWriter::new(File::create(out.join("summary.csv"))?))?;
    report::write_details_csv(&summary, BufWriter::new(File::create(out.join("details.csv"))?))?;
    let checks = ordering_report(&summary);
    let all_ok = report::write_ordering_report(&checks, BufWriter::new(File::create(out.join("ordering.txt"))?))?;

    println!("{:<11} {:<10} {:>2} {:>9} {:>9} {:>9}", "data", "init", "k", "mean", "std", "min");
    for c in &summary.cells {
        println!(
            "{:<11} {:<10} {:>2} {:>9.5} {:>9.5} {:>9.5}",
            c.data,
            c.init.name(),
            c.k,
            c.mean,
            c.std,
            c.min
        );
    }
    report::write_ordering_report(&checks, std::io::stdout())?;
    println!(
        "ordering: {}",
        if all_ok { "all required checks hold" } else { "some required checks fail" }
    );
    println!("wrote {}", out.display());
    let failed: usize = summary.cells.iter().map(|c| c.runs_failed).sum();
    if failed > 0 {
        bail!("{failed} runs failed");
    }
    Ok(())
}
