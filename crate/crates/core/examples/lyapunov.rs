//! Decay of `V(x) = |f(x)|` along a contracting field.

use tscale::certificates::{check_contraction, StateBox};
use tscale::linalg::Matrix;
use tscale::measures::MeasureKind;
use tscale::measures::DEFAULT_H_PROBE;
use tscale::solver::{lyapunov_decrement, LinearSystem};

/// Largest `D⁺V + c̄² V` over sampled states and graininess values.
pub fn run_example() -> tscale::Result<f64> {
    let sys = LinearSystem::constant(Matrix::new([[-1.0, 0.4], [-0.4, -1.2]]))?;
    let kind = MeasureKind::two();
    let mus = [0.0, 0.1, 0.25];
    let state_box = StateBox::random(vec![[-2.0, 2.0], [-2.0, 2.0]], 100, 9);
    let cert = check_contraction(&mus, &sys, &state_box, &kind)?;
    let c2 = cert.constant("c_bar_sq").expect("contraction rate");
    let mut worst = f64::NEG_INFINITY;
    for x in state_box.points()? {
        for mu in mus {
            let (v, dv) = lyapunov_decrement(&sys, &x, mu, &kind, DEFAULT_H_PROBE);
            worst = worst.max(dv + c2 * v);
        }
    }
    println!("c_bar^2 = {c2:.5}; largest D+V + c_bar^2 V = {worst:.3e}");
    Ok(worst)
}

fn main() -> tscale::Result<()> {
    run_example().map(|_| ())
}
