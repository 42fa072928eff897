//! A forced linear system against its measure-based solution bound.

use tscale::linalg::Matrix;
use tscale::measures::MeasureKind;
use tscale::solver::{coppel_bound, integrate, LinearSystem};
use tscale::timescale::TimeScaleSpec;

/// Largest ratio `|x(t)| / bound(t)` along the trajectory.
pub fn run_example() -> tscale::Result<f64> {
    let ts = TimeScaleSpec::Alternating { c: 1.0, h: 0.3, window_end: 8.0 }.build()?;
    let a = |t: f64| Matrix::new([[-2.0, 0.5 * t.sin()], [-0.5, -1.5]]);
    let sys = LinearSystem::time_varying(2, a).with_forcing(|t| vec![0.3 * t.cos(), 0.4], 0.5);
    let x0 = [2.0, -1.0];
    let step = 1e-2;
    let traj = integrate(&ts, &sys, 0.0, &x0, ts.end(), step)?;
    let grid = ts.grid(0.0, ts.end(), step)?;
    let kind = MeasureKind::two();
    let x0_norm = kind.vector_norm(&x0);
    let bound = coppel_bound(&ts, &a, &kind, sys.g_bar(), 0.0, x0_norm, &grid)?;
    let mut worst: f64 = 0.0;
    for (s, (t, b)) in traj.samples.iter().zip(&bound) {
        assert!((s.t - t).abs() < 1e-12);
        worst = worst.max(kind.vector_norm(&s.x) / b);
    }
    let (t, b) = bound.last().expect("nonempty");
    println!("t = {t}: |x| = {:.6}, bound = {b:.6}", kind.vector_norm(&traj.last().x));
    println!("largest |x|/bound: {worst:.6}");
    Ok(worst)
}

fn main() -> tscale::Result<()> {
    run_example().map(|_| ())
}
