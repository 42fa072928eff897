//! Jump operator, graininess, Δ-integrals and exponentials on a few time scales.

use tscale::timescale::{Piece, TimeScaleSpec};

/// `e_{−1}(3, 0)` on `∪_k [1.5k, 1.5k + 1]` and the dense/scattered split of `[0, 3]`.
pub fn run_example() -> tscale::Result<(f64, (f64, f64))> {
    let ts = TimeScaleSpec::PAB { a: 1.0, b: 0.5, window_end: 4.0 }.build()?;
    for t in [0.5, 1.0, 2.5] {
        let g = ts.mu(t)?;
        println!("t = {t}: sigma = {}, mu = {}, scattered = {}", ts.sigma(t)?, g.mu, g.is_scattered());
    }
    for piece in ts.pieces(0.0, 3.0)? {
        match piece {
            Piece::Dense { lo, hi } => println!("dense     [{lo}, {hi})"),
            Piece::Scattered { t, mu } => println!("scattered {t} (mu = {mu})"),
        }
    }
    let area = ts.delta_integral(|t| t, 0.0, 3.0)?;
    println!("integral of t over [0, 3): {area}");
    let e = ts.exponential_constant(-1.0, 3.0, 0.0)?;
    println!("e_-1(3, 0) = {e} (two unit stretches, two halving jumps: {})", 0.25 * (-2.0f64).exp());

    let hz = TimeScaleSpec::HZ { h: 0.25, start: 0.0, window_end: 1.0 }.build()?;
    println!("on 0.25Z: e_-1(1, 0) = {} = 0.75^4", hz.exponential_constant(-1.0, 1.0, 0.0)?);

    let random = TimeScaleSpec::Nonhomogeneous {
        length_range: [0.5, 1.5],
        gap_range: [0.05, 0.25],
        mu_max: 0.25,
        seed: 3,
        window_end: 10.0,
    }
    .build()?;
    println!("random scale: distinct gaps {:?}", random.distinct_mu().len());
    Ok((e, ts.measure_split(0.0, 3.0)?))
}

fn main() -> tscale::Result<()> {
    run_example().map(|_| ())
}
