//! Contraction certificate for SIQR and the distance between two solutions.

use tscale::certificates::{check_contraction, StateBox};
use tscale::linalg::{Matrix, NormBase};
use tscale::measures::MeasureKind;
use tscale::models::{siqr_field, SIQRParams};
use tscale::solver::pair_distance;
use tscale::timescale::TimeScaleSpec;

/// `c̄²` and the largest excess of the distance over its envelope.
pub fn run_example() -> tscale::Result<(f64, f64)> {
    let params = SIQRParams::representative();
    let field = siqr_field(&params)?;
    let ts = TimeScaleSpec::PAB { a: 1.0, b: 0.24, window_end: 15.0 }.build()?;
    let kind = MeasureKind::weighted(NormBase::One, Matrix::diag(&[1.0, 1.0, 1.0, 1e-3]))?;
    let state_box = StateBox::grid(vec![[0.0, 10.0], [0.0, 30.0], [0.0, 30.0], [0.0, 30.0]], 7);
    let cert = check_contraction(&ts.distinct_mu(), &field, &state_box, &kind)?;
    let c2 = cert.constant("c_bar_sq").expect("contraction rate");
    println!("verdict {:?}, c_bar^2 = {c2:.5}", cert.verdict);

    let pairs = pair_distance(&ts, &field, 0.0, &[8.0, 2.0, 1.0, 0.0], &[3.0, 6.0, 4.0, 9.0], ts.end(), &kind, 1e-2, &cert)?;
    let excess = pairs.iter().map(|p| p.distance - p.envelope).fold(f64::NEG_INFINITY, f64::max);
    for p in pairs.iter().step_by(pairs.len() / 5) {
        println!("t = {:6.3}: distance {:.3e} <= envelope {:.3e}", p.t, p.distance, p.envelope);
    }
    Ok((c2, excess))
}

fn main() -> tscale::Result<()> {
    run_example().map(|_| ())
}
