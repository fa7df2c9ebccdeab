//! Acceptance checks, one PASS/FAIL line each. Set `QGAN_FULL_SCALE=1` to
//! add the full benchmark sweep (hours).

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qgan_core::adversary::{AmsgradConfig, AmsgradState, Discriminator, DiscriminatorConfig, PARAM_COUNT};
use qgan_core::generator::{build_circuit, InitMode};
use qgan_core::harness::{self, benchmark_configs, param_shift_gradient, relative_entropy, GradMode, InitKind, TrainConfig};
use qgan_core::initfit::{fit_angles, make_init_spec, AngleFormula};
use qgan_core::qsim::StateVector;
use qgan_core::targets::{TailMode, TargetSpec};
use qgan_core::Pmf;

type Outcome = Result<String, String>;

fn random_pmf(rng: &mut ChaCha8Rng, n: usize) -> Pmf {
    let raw: Vec<f64> = (0..1 << n).map(|_| rng.random_range(1e-6..1.0)).collect();
    let total: f64 = raw.iter().sum();
    Pmf::new(raw.iter().map(|x| x / total).collect()).unwrap()
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    let mut s = StateVector::new_zero_state(n).unwrap();
    for _ in 0..4 {
        for q in 0..n {
            s.apply_ry(q, rng.random_range(-PI..PI)).unwrap();
        }
        for q in 0..n.saturating_sub(1) {
            s.apply_cz(q, q + 1).unwrap();
        }
    }
    s
}

fn max_amp_diff(a: &StateVector, b: &StateVector) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn gate_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=4);
        let state = random_state(&mut rng, n);
        let (a, b) = (rng.random_range(-4.0 * PI..4.0 * PI), rng.random_range(-4.0 * PI..4.0 * PI));
        let q = rng.random_range(0..n);
        let mut two = state.clone();
        two.apply_ry(q, a).unwrap();
        two.apply_ry(q, b).unwrap();
        let mut one = state.clone();
        one.apply_ry(q, a + b).unwrap();
        worst = worst.max(max_amp_diff(&two, &one));

        let mut h = StateVector::new_zero_state(n).unwrap();
        let mut ry = h.clone();
        h.apply_h(q).unwrap();
        ry.apply_ry(q, FRAC_PI_2).unwrap();
        worst = worst.max(max_amp_diff(&h, &ry));
    }
    if worst <= 1e-12 {
        Ok(format!("max deviation {worst:.1e}"))
    } else {
        Err(format!("max deviation {worst:.1e} > 1e-12"))
    }
}

fn angle_fit_range() -> Outcome {
    for n in 1..=5 {
        let uniform = fit_angles(&Pmf::uniform(n), AngleFormula::Sqrt);
        if uniform.iter().any(|a| (a - FRAC_PI_2).abs() > 1e-12) {
            return Err(format!("uniform n={n}: {uniform:?}"));
        }
        for label in [0, (1 << n) - 1] {
            let point = fit_angles(&Pmf::point_mass(n, label).unwrap(), AngleFormula::Sqrt);
            if point.iter().any(|&a| a != 0.0) {
                return Err(format!("point mass n={n}: {point:?}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let n = rng.random_range(1..=5);
        let angles = fit_angles(&random_pmf(&mut rng, n), AngleFormula::Sqrt);
        if angles.iter().any(|a| !(0.0..=FRAC_PI_2).contains(a)) {
            return Err(format!("angle outside [0, pi/2]: {angles:?}"));
        }
    }
    Ok("uniform, point mass and 1000 random targets".into())
}

fn rank_alignment() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..1000 {
        let n = rng.random_range(1..=5);
        let target = random_pmf(&mut rng, n);
        let induced = make_init_spec(&target, AngleFormula::Sqrt)
            .and_then(|s| s.induced_pmf())
            .map_err(|e| e.to_string())?;
        if induced.rank_order() != target.rank_order() {
            return Err(format!("target {i} ({target:?}) misaligned"));
        }
    }
    Ok("1000 random targets".into())
}

fn fold_preserves() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(1..=4);
        let k = rng.random_range(0..=3);
        let target = random_pmf(&mut rng, n);
        let spec = make_init_spec(&target, AngleFormula::Sqrt).map_err(|e| e.to_string())?;
        let params = (0..n * (k + 1)).map(|_| rng.random_range(-PI..PI)).collect();
        let circuit = build_circuit(n, k, InitMode::OurMethod { spec }, params).map_err(|e| e.to_string())?;
        let folded = circuit.fold_init().map_err(|e| e.to_string())?;
        let (a, b) = (circuit.pmf().unwrap(), folded.pmf().unwrap());
        for (x, y) in a.probs().iter().zip(b.probs()) {
            worst = worst.max((x - y).abs());
        }
    }
    if worst <= 1e-12 {
        Ok(format!("100 circuits, max deviation {worst:.1e}"))
    } else {
        Err(format!("max deviation {worst:.1e} > 1e-12"))
    }
}

fn gradients() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_shift: f64 = 0.0;
    let mut worst_backprop: f64 = 0.0;
    let mut skipped = 0usize;
    let lognormal = TargetSpec::lognormal().discretize(3).unwrap();
    let spec = make_init_spec(&lognormal, AngleFormula::Sqrt).unwrap();
    for _ in 0..100 {
        let params: Vec<f64> = (0..6).map(|_| rng.random_range(-PI..PI)).collect();
        let circuit = build_circuit(3, 1, InitMode::OurMethod { spec: spec.clone() }, params.clone()).unwrap();
        let disc = Discriminator::random(DiscriminatorConfig::default(), &mut rng);
        let grad = param_shift_gradient(&circuit, &disc, GradMode::Exact, 1, &mut rng).unwrap();
        let loss = |p: &[f64]| disc.gen_loss_from_pmf(&circuit.pmf_with(p).unwrap());
        let h = 1e-6;
        for j in 0..params.len() {
            let (mut plus, mut minus) = (params.clone(), params.clone());
            plus[j] += h;
            minus[j] -= h;
            let fd = (loss(&plus) - loss(&minus)) / (2.0 * h);
            worst_shift = worst_shift.max((grad[j] - fd).abs());
        }

        let real: Vec<usize> = (0..20).map(|_| rng.random_range(0..8)).collect();
        let fake: Vec<usize> = (0..20).map(|_| rng.random_range(0..8)).collect();
        let grad = disc.disc_grad(&real, &fake).unwrap();
        let signs = |d: &Discriminator| -> Vec<bool> {
            (0..8)
                .flat_map(|m| d.hidden_preactivations(m as f64).unwrap())
                .map(|z| z >= 0.0)
                .collect()
        };
        let base = signs(&disc);
        let h = 1e-5;
        for i in 0..PARAM_COUNT {
            let (mut plus, mut minus) = (disc.clone(), disc.clone());
            plus.params_mut()[i] += h;
            minus.params_mut()[i] -= h;
            // central differences are meaningless across a rectifier kink
            if signs(&plus) != base || signs(&minus) != base {
                skipped += 1;
                continue;
            }
            let f = |d: &Discriminator| -d.disc_objective(&real, &fake).unwrap();
            let fd = (f(&plus) - f(&minus)) / (2.0 * h);
            worst_backprop = worst_backprop.max((grad[i] - fd).abs());
        }
    }
    let msg = format!(
        "parameter shift {worst_shift:.1e}, backprop {worst_backprop:.1e} ({skipped} kink-crossing coordinates of {} skipped)",
        100 * PARAM_COUNT
    );
    if worst_shift <= 1e-6 && worst_backprop <= 1e-6 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn entropy_checks() -> Outcome {
    let p = Pmf::new(vec![0.5, 0.5]).unwrap();
    let h1 = relative_entropy(&p, &Pmf::new(vec![0.25, 0.75]).unwrap()).unwrap();
    let expected1 = 0.5 * 2f64.ln() + 0.5 * (2.0f64 / 3.0).ln();
    let h2 = relative_entropy(&Pmf::new(vec![1.0, 0.0]).unwrap(), &p).unwrap();
    if (h1 - expected1).abs() > 1e-9 || (h1 - 0.1438).abs() > 1e-4 || (h2 - 2f64.ln()).abs() > 1e-9 {
        return Err(format!("hand values {h1} {h2}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let n = rng.random_range(1..=4);
        let (a, b) = (random_pmf(&mut rng, n), random_pmf(&mut rng, n));
        let hab = relative_entropy(&a, &b).unwrap();
        let haa = relative_entropy(&a, &a).unwrap();
        if hab < 0.0 || haa.abs() > 1e-12 || (a != b && hab <= 0.0) {
            return Err(format!("H(a|b) = {hab}, H(a|a) = {haa}"));
        }
    }
    Ok(format!("H = {h1:.6}, {h2:.6}; 1000 random pairs"))
}

fn amsgrad_checks() -> Outcome {
    let mut state = AmsgradState::new(1, AmsgradConfig::default());
    let mut p = [0.0];
    state.step(&mut p, &[1.0]).unwrap();
    if (p[0] + 3.0e-4).abs() > 1e-9 {
        return Err(format!("step {}", p[0]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let mut s = AmsgradState::new(5, AmsgradConfig::default());
        let mut w = [0.0; 5];
        let mut prev = s.v_hat.clone();
        for _ in 0..50 {
            let g: Vec<f64> = (0..5).map(|_| rng.random_range(-3.0..3.0)).collect();
            s.step(&mut w, &g).unwrap();
            if s.v_hat.iter().zip(&prev).any(|(a, b)| a < b) {
                return Err("v_hat decreased".into());
            }
            prev = s.v_hat.clone();
        }
    }
    Ok(format!("step {:.4e}; v_hat monotone over 100 sequences", p[0]))
}

fn init_quality() -> Outcome {
    let mut lines = Vec::new();
    for target in TargetSpec::benchmarks() {
        let pmf = target.discretize(3).unwrap();
        let ours = make_init_spec(&pmf, AngleFormula::Sqrt).unwrap().induced_pmf().unwrap();
        let h_ours = relative_entropy(&pmf, &ours).unwrap();
        let h_uniform = relative_entropy(&pmf, &Pmf::uniform(3)).unwrap();
        lines.push(format!("{} {h_ours:.5} vs {h_uniform:.5}", target.name()));
        if h_ours >= h_uniform {
            return Err(lines.join("; "));
        }
    }
    Ok(lines.join("; "))
}

fn published_angles() -> Outcome {
    let published = [0.36, 0.40, 0.44];
    // published readout row: outcome assigned to each label
    let published_row = [3usize, 0, 4, 2, 1, 6, 5, 7];
    let pmf = TargetSpec::lognormal().discretize(3).unwrap();
    let angles = fit_angles(&pmf, AngleFormula::Sqrt);
    let over_pi: Vec<f64> = angles.iter().map(|a| a / PI).collect();
    let worst = over_pi
        .iter()
        .zip(published)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let mut best = (0usize, String::new());
    for tail in [TailMode::Truncate, TailMode::Clip] {
        let target = TargetSpec::lognormal().with_tail_mode(tail).discretize(3).unwrap();
        let spec = make_init_spec(&target, AngleFormula::Sqrt).unwrap();
        let row = spec.permutation.inverse();
        let top = &target.rank_order()[..4];
        let agree = top.iter().take_while(|&&l| row.mapping()[l] == published_row[l]).count();
        if agree > best.0 {
            best = (agree, format!("{tail:?}: {:?}", row.mapping()));
        }
    }
    let note = format!(
        "angles/pi {:?}, max deviation {worst:.3}; permutation best match {}/4 top labels ({})",
        over_pi.iter().map(|a| (a * 1000.0).round() / 1000.0).collect::<Vec<_>>(),
        best.0,
        best.1
    );
    if worst <= 0.05 {
        Ok(note)
    } else {
        Err(note)
    }
}

fn desk_config() -> TrainConfig {
    TrainConfig {
        k: 2,
        epochs: 500,
        grad_mode: GradMode::Exact,
        runs: 5,
        base_seed: 2024,
        ..TrainConfig::default()
    }
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn desk_means() -> Result<(f64, f64), String> {
    let base = desk_config();
    let configs = [
        TrainConfig { init_kind: InitKind::OurMethod, ..base.clone() },
        TrainConfig { init_kind: InitKind::Uniform, ..base.clone() },
    ];
    let summary = harness::sweep(&configs, base.runs, workers()).map_err(|e| e.to_string())?;
    if summary.cells.iter().any(|c| c.runs_failed > 0) {
        return Err("a training run failed".into());
    }
    Ok((summary.cells[0].mean, summary.cells[1].mean))
}

fn full_scale() -> Outcome {
    let base = TrainConfig::default();
    let summary = harness::sweep(&benchmark_configs(&base), base.runs, workers()).map_err(|e| e.to_string())?;
    let checks = harness::ordering_report(&summary);
    let mut failed = Vec::new();
    for c in &checks {
        println!(
            "    {} k={} {}: our_method {:.5} vs {} {:.5}{}",
            c.data,
            c.k,
            c.statistic,
            c.winner_value,
            c.loser.name(),
            c.loser_value,
            if c.expected_to_hold { "" } else { " (not required)" }
        );
        if c.expected_to_hold && !c.holds {
            failed.push(format!("{} k={} {} vs {}", c.data, c.k, c.statistic, c.loser.name()));
        }
    }
    if failed.is_empty() {
        Ok(format!("{} ordering checks", checks.len()))
    } else {
        Err(format!("violated: {}", failed.join(", ")))
    }
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut report = |id: &str, what: &str, outcome: Outcome, started: Instant| {
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {id}: {what} [{msg}] ({secs:.1}s)"),
            Err(msg) => {
                all_ok = false;
                println!("FAIL criterion {id}: {what} [{msg}] ({secs:.1}s)");
            }
        }
    };

    type Check = (&'static str, &'static str, fn() -> Outcome);
    let checks: [Check; 9] = [
        ("1", "Ry composition and H = Ry(pi/2) on |0>", gate_algebra),
        ("2", "angle fit on uniform, point mass and random targets", angle_fit_range),
        ("3", "induced init ranks labels like the target", rank_alignment),
        ("4", "folding the init preserves the distribution", fold_preserves),
        ("5", "gradients match finite differences", gradients),
        ("6", "relative entropy properties and hand values", entropy_checks),
        ("7", "AMSGRAD hand step and v_hat monotonicity", amsgrad_checks),
        ("8", "our init is closer than uniform on all benchmarks", init_quality),
        ("9", "log-normal angles within 0.05 pi of the published ones", published_angles),
    ];
    for (id, what, check) in checks {
        let started = Instant::now();
        report(id, what, check(), started);
    }

    let started = Instant::now();
    match desk_means() {
        Ok((ours, uniform)) => {
            let ratio = uniform / ours;
            let msg = format!("our_method {ours:.5}, uniform {uniform:.5}, ratio {ratio:.1}");
            let verdict = if ours * 2.0 <= uniform { Ok(msg.clone()) } else { Err(msg.clone()) };
            report("10", "desk-scale our_method beats uniform by 2x", verdict, started);
            let verdict = if ours < 0.05 { Ok(msg) } else { Err(msg) };
            report("11", "desk-scale our_method mean below 0.05", verdict, started);
        }
        Err(e) => {
            report("10", "desk-scale our_method beats uniform by 2x", Err(e.clone()), started);
            report("11", "desk-scale our_method mean below 0.05", Err(e), started);
        }
    }

    if std::env::var("QGAN_FULL_SCALE").as_deref() == Ok("1") {
        let started = Instant::now();
        report("12", "full-scale init ordering", full_scale(), started);
    } else {
        println!("SKIP criterion 12: full-scale init ordering (set QGAN_FULL_SCALE=1)");
    }

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
