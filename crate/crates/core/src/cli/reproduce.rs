//! Bundled experiments behind `tscale reproduce`.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Deserialize;

use super::{measure_csv, read_config, write_trajectory, CliError, CliResult, Format, Outputs, ReproduceArgs};
use crate::certificates::{
    check_contraction, check_pinning, check_siqr_conditions, check_uniform_exp_stability,
    reproduction_number, StateBox,
};
use crate::linalg::{Matrix, NormBase};
use crate::measures::{matrix_measure, MeasureKind};
use crate::models::{
    disease_free_solution, example1_matrix, example2_matrix, opinion_network_field,
    opinion_setup, siqr_field, stubborn_trajectory, SIQRParams, OPINION_SEED,
};
use crate::solver::{coppel_bound, fmt_f64, integrate, transition_history, Trajectory};
use crate::timescale::{TimeScale, TimeScaleSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    EpidemicPab,
    EpidemicRandom,
    EpidemicLockdown,
    Opinion,
    Example1,
    Example2,
}

/// Optional overrides read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Overrides {
    #[serde(default)]
    dense_step: Option<f64>,
    #[serde(default)]
    seed: Option<u64>,
}

/// Seed of the random discrete scale in `epidemic-random`.
pub const EPIDEMIC_RANDOM_SEED: u64 = 7;

pub(super) fn cmd_reproduce(args: &ReproduceArgs) -> CliResult<()> {
    let ov: Overrides = match &args.config {
        Some(p) => read_config(p)?,
        None => Overrides::default(),
    };
    let seed = args.seed.or(ov.seed);
    if ov.dense_step.is_some_and(|h| !(h > 0.0)) {
        return Err(CliError::Schema("dense_step must be positive".into()));
    }
    let step = ov.dense_step.unwrap_or(1e-3);
    let mut out = Outputs::new(&args.out);
    let failures = match args.experiment {
        Experiment::EpidemicPab => {
            let ts = TimeScaleSpec::PAB {
                a: 1.0,
                b: 0.24,
                window_end: 30.0,
            }
            .build()?;
            epidemic(&mut out, args.format, "epidemic_pab", &ts, step)?
        }
        Experiment::EpidemicRandom => {
            let ts = TimeScaleSpec::Nonhomogeneous {
                length_range: [0.0, 0.0],
                gap_range: [0.0, 0.24],
                mu_max: 0.24,
                seed: seed.unwrap_or(EPIDEMIC_RANDOM_SEED),
                window_end: 30.0,
            }
            .build()?;
            epidemic(&mut out, args.format, "epidemic_random", &ts, step)?
        }
        Experiment::EpidemicLockdown => lockdown(&mut out, args.format, ov.dense_step.unwrap_or(1e-2))?,
        Experiment::Opinion => opinion(&mut out, args.format, seed.unwrap_or(OPINION_SEED), step)?,
        Experiment::Example1 => example1(&mut out, step)?,
        Experiment::Example2 => example2(&mut out, step)?,
    };
    // files are written even when an embedded check fails, for inspection
    out.commit()?;
    if failures.is_empty() {
        println!("all embedded checks passed");
        Ok(())
    } else {
        Err(CliError::Assertion(failures.join("; ")))
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: String) {
    println!("[{}] {what}", if ok { "ok" } else { "FAILED" });
    if !ok {
        failures.push(what);
    }
}

fn gnuplot(data: &str, title: &str, ylabel: &str, columns: &[(usize, &str)]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set title '{title}'");
    let _ = writeln!(s, "set xlabel 't'");
    let _ = writeln!(s, "set ylabel '{ylabel}'");
    let _ = writeln!(s, "set key outside");
    let plots: Vec<String> = columns
        .iter()
        .map(|(c, name)| format!("'{data}' every ::1 using 1:{c} with lines title '{name}'"))
        .collect();
    let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    s
}

fn add_trajectory(out: &mut Outputs, stem: &str, traj: &Trajectory, format: Format) -> CliResult<()> {
    // the plot script reads the CSV, so it is always written
    out.add(format!("{stem}.csv"), traj.to_csv());
    if format == Format::Json {
        write_trajectory(out, stem, traj, Format::Json)?;
    }
    Ok(())
}

fn siqr_weight() -> MeasureKind {
    MeasureKind::weighted(NormBase::One, Matrix::diag(&[1.0, 1.0, 1.0, 1e-3])).expect("invertible weight")
}

fn epidemic(out: &mut Outputs, format: Format, stem: &str, ts: &TimeScale, step: f64) -> CliResult<Vec<String>> {
    let p = SIQRParams::representative();
    let f = siqr_field(&p)?;
    let x0 = [5.0, 5.0, 5.0, 5.0];
    let t_end = ts.end();
    let traj = integrate(ts, &f, 0.0, &x0, t_end, step)?;

    let conditions = check_siqr_conditions(&p, ts, 0.0, x0.iter().sum())?;
    let mus = ts.distinct_mu();
    let state_box = StateBox::grid(vec![[0.0, 10.0], [0.0, 30.0], [0.0, 30.0], [0.0, 30.0]], 7);
    let contraction = check_contraction(&mus, &f, &state_box, &siqr_weight())?;
    out.add_json(
        format!("{stem}_cert.json"),
        &serde_json::json!({"siqr_conditions": conditions, "contraction": contraction}),
    )?;
    add_trajectory(out, stem, &traj, format)?;
    out.add(
        format!("{stem}.gp"),
        gnuplot(&format!("{stem}.csv"), stem, "S, I, Q, R", &[(3, "S"), (4, "I"), (5, "Q"), (6, "R")]),
    );

    let mut failures = Vec::new();
    let target = disease_free_solution(&p, t_end);
    let dist: f64 = traj.last().x.iter().zip(&target).map(|(a, b)| (a - b).abs()).sum();
    check(&mut failures, dist < 1e-3, format!("|x(T) - x_d|_1 = {dist:.3e} < 1e-3 at T = {t_end}"));
    let min = traj.samples.iter().flat_map(|s| s.x.iter().copied()).fold(f64::INFINITY, f64::min);
    check(&mut failures, min >= -1e-9, format!("states stay nonnegative (min {min:.3e})"));
    Ok(failures)
}

fn lockdown(out: &mut Outputs, format: Format, step: f64) -> CliResult<Vec<String>> {
    let n = 6e7;
    let p = SIQRParams::lockdown(n, 1.0);
    let f = siqr_field(&p)?;
    let t_end = 200.0;
    let ts = TimeScale::interval(0.0, t_end)?;
    let x0 = [0.25 * n; 4];
    let traj = integrate(&ts, &f, 0.0, &x0, t_end, step)?;

    let mut cert = check_siqr_conditions(&p, &ts, 0.0, n)?;
    let (r0, _) = reproduction_number(&p, n)?;
    cert.set_constant("R0", r0);
    out.add_json("epidemic_lockdown_cert.json", &cert)?;
    add_trajectory(out, "epidemic_lockdown", &traj, format)?;
    out.add(
        "epidemic_lockdown.gp",
        gnuplot("epidemic_lockdown.csv", "lock-down", "S, I, Q, R", &[(3, "S"), (4, "I"), (5, "Q"), (6, "R")]),
    );

    let mut failures = Vec::new();
    let last = &traj.last().x;
    check(&mut failures, last[1] < 1e-2 * x0[1], format!("I(T)/I(0) = {:.3e} < 1e-2", last[1] / x0[1]));
    check(&mut failures, last[2] < 1e-2 * x0[2], format!("Q(T)/Q(0) = {:.3e} < 1e-2", last[2] / x0[2]));
    Ok(failures)
}

fn opinion(out: &mut Outputs, format: Format, seed: u64, step: f64) -> CliResult<Vec<String>> {
    let setup = opinion_setup(seed)?;
    let ts = &setup.timescale;
    let reference = stubborn_trajectory(ts, &setup.op, 0.0, setup.t_end, step)?;
    let field = opinion_network_field(&setup.net, &setup.op, |t| reference.eval(t))?;
    let traj = integrate(ts, &field, 0.0, &setup.x0, setup.t_end, step)?;

    let mus = ts.distinct_mu();
    let node = setup.op.node_field();
    let state_box = StateBox::grid(vec![[-5.0, 5.0]], 201);
    let cert = check_pinning(&setup.net, &node, &state_box, &mus)?;
    let dense_only = check_pinning(&setup.net, &node, &state_box, &[0.0])?;
    out.add_json(
        "opinion_pinning.json",
        &serde_json::json!({"all_graininess": cert, "dense_only": dense_only}),
    )?;
    let mut edges = String::new();
    for (u, v) in &setup.net.edges {
        let _ = writeln!(edges, "{u} {v}");
    }
    out.add("opinion_graph.txt", edges);
    let mut pins = String::new();
    for p in &setup.net.pinned {
        let _ = writeln!(pins, "{p}");
    }
    out.add("opinion_pinned.txt", pins);
    let mut rcsv = String::from("t,x_r\n");
    for s in &traj.samples {
        let _ = writeln!(rcsv, "{},{}", fmt_f64(s.t), fmt_f64(reference.eval(s.t)));
    }
    out.add("opinion_reference.csv", rcsv);
    add_trajectory(out, "opinion", &traj, format)?;
    let mut gp = String::from("set datafile separator ','\nset xlabel 't'\nset ylabel 'x_i'\nunset key\n");
    gp.push_str("plot for [i=3:102] 'opinion.csv' every ::1 using 1:i with lines lc rgb '#999999', \\\n");
    gp.push_str("     'opinion_reference.csv' every ::1 using 1:2 with lines dt 2 lw 2 lc rgb 'black'\n");
    out.add("opinion.gp", gp);

    println!("pinning verdict (all graininess values): {:?}", cert.verdict);
    println!("pinning verdict (dense points only): {:?}", dense_only.verdict);
    let mut failures = Vec::new();
    let xr = reference.eval(setup.t_end);
    let err = traj.last().x.iter().map(|x| (x - xr).abs()).fold(0.0, f64::max);
    check(
        &mut failures,
        err < 1e-2,
        format!("max_i |x_i(T) - x_r(T)| = {err:.3e} < 1e-2 at T = {}", setup.t_end),
    );
    Ok(failures)
}

fn example1(out: &mut Outputs, step: f64) -> CliResult<Vec<String>> {
    let t_end = 2.0 * std::f64::consts::PI;
    let ts = TimeScale::interval(0.0, t_end)?;
    let two = MeasureKind::two();
    let grid = ts.grid(0.0, t_end, 1e-2)?;
    let cert = check_uniform_exp_stability(&ts, &example1_matrix, &two, &grid)?;
    out.add_json("example1_cert.json", &cert)?;
    let hist = transition_history(&ts, &example1_matrix, 0.0, t_end, step)?;
    let mut failures = Vec::new();
    let mut csv = String::from("t,m,phi_norm,envelope\n");
    let mut worst_m = f64::NEG_INFINITY;
    let mut worst_gap = f64::NEG_INFINITY;
    for (t, phi) in &hist {
        let m = matrix_measure(&example1_matrix(*t), 0.0, &two)?;
        let norm = phi.norm_two();
        let env = (-t).exp();
        worst_m = worst_m.max(m);
        worst_gap = worst_gap.max(norm - env);
        let _ = writeln!(csv, "{},{},{},{}", fmt_f64(*t), fmt_f64(m), fmt_f64(norm), fmt_f64(env));
    }
    out.add("example1.csv", csv);
    out.add(
        "example1.gp",
        gnuplot("example1.csv", "example 1", "", &[(2, "m_2(A(t),0)"), (3, "|Phi(t,0)|_2"), (4, "exp(-t)")]),
    );
    check(&mut failures, worst_m <= -1.0 + 1e-9, format!("sup m_2(A(t), 0) = {worst_m:.12} <= -1"));
    check(&mut failures, worst_gap <= 1e-6, format!("|Phi(t,0)| - exp(-t) <= {worst_gap:.3e} <= 1e-6"));
    Ok(failures)
}

fn example2(out: &mut Outputs, step: f64) -> CliResult<Vec<String>> {
    let a = example2_matrix();
    let two = MeasureKind::two();
    let mus = [0.0, 0.1, 0.2, 2.0 / 7.0, 0.5];
    let rows = mus
        .iter()
        .map(|&mu| Ok((mu, matrix_measure(&a, mu, &two)?)))
        .collect::<CliResult<Vec<_>>>()?;
    out.add("example2_measure.csv", measure_csv(&rows));

    let t_end = 10.0;
    let ts = TimeScaleSpec::Alternating {
        c: 1.0,
        h: 0.2,
        window_end: t_end,
    }
    .build()?;
    let af = |_: f64| example2_matrix();
    let grid = ts.grid(0.0, t_end, step)?;
    let cert = check_uniform_exp_stability(&ts, &af, &two, &grid)?;
    out.add_json("example2_cert.json", &cert)?;
    let bound = coppel_bound(&ts, &af, &two, 0.0, 0.0, 1.0, &grid)?;
    let hist = transition_history(&ts, &af, 0.0, t_end, step)?;

    let mut failures = Vec::new();
    for ((mu, m), expect) in rows.iter().zip([-1.0, -1.0, -1.0, -1.0, 2.0]) {
        check(&mut failures, (m - expect).abs() <= 1e-9, format!("m_2(A, {mu:.6}) = {m:.12} (expected {expect})"));
    }
    let mut csv = String::from("t,mu,phi_norm,bound,exp_minus_one\n");
    let mut worst = f64::NEG_INFINITY;
    for ((t, phi), (_, b)) in hist.iter().zip(&bound) {
        let norm = phi.norm_two();
        let e = ts.exponential_constant(-1.0, *t, 0.0)?;
        worst = worst.max(norm - b).max(norm - e);
        let mu = ts.graininess(*t)?;
        let _ = writeln!(csv, "{},{},{},{},{}", fmt_f64(*t), fmt_f64(mu), fmt_f64(norm), fmt_f64(*b), fmt_f64(e));
    }
    out.add("example2.csv", csv);
    out.add(
        "example2.gp",
        gnuplot("example2.csv", "example 2", "", &[(3, "|Phi(t,0)|_2"), (4, "bound"), (5, "e_{-1}(t,0)")]),
    );
    check(&mut failures, worst <= 1e-6, format!("|Phi(t,0)| above its bounds by at most {worst:.3e}"));
    check(&mut failures, cert.holds(), format!("uniform exponential stability verdict {:?}", cert.verdict));
    Ok(failures)
}
