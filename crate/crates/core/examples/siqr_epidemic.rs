//! SIQR epidemic on a time scale with periodic reporting gaps.

use tscale::certificates::{check_siqr_conditions, reproduction_number};
use tscale::models::{disease_free_solution, siqr_field, SIQRParams};
use tscale::solver::integrate;
use tscale::timescale::TimeScaleSpec;

/// Final state from `(5, 5, 5, 5)` and its one-norm distance to the disease-free state.
pub fn run_example() -> tscale::Result<(Vec<f64>, f64)> {
    let params = SIQRParams::representative();
    let ts = TimeScaleSpec::PAB { a: 1.0, b: 0.24, window_end: 30.0 }.build()?;
    let x0 = [5.0, 5.0, 5.0, 5.0];
    let traj = integrate(&ts, &siqr_field(&params)?, 0.0, &x0, ts.end(), 1e-2)?;
    let last = traj.last();
    let target = disease_free_solution(&params, last.t);
    let dist: f64 = last.x.iter().zip(&target).map(|(a, b)| (a - b).abs()).sum();
    println!("S, I, Q, R at t = {}: {:?}", last.t, last.x);
    println!("distance to disease-free state: {dist:.3e}");

    let cert = check_siqr_conditions(&params, &ts, 0.0, x0.iter().sum())?;
    for c in &cert.conditions {
        println!("{:<16} {:?}: {:.4} < {:.4}", c.name, c.verdict, c.lhs, c.rhs);
    }
    let (r0, small) = reproduction_number(&params, 20.0)?;
    println!("R0 = {r0:.4} (below 0.5: {small})");
    Ok((last.x.clone(), dist))
}

fn main() -> tscale::Result<()> {
    run_example().map(|_| ())
}
