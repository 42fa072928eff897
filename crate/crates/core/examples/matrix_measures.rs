//! Matrix measures for several norms and graininess values.

use tscale::linalg::{Matrix, NormBase};
use tscale::measures::{closed_form_measure, matrix_measure, MeasureKind};
use tscale::models::example2_matrix;

/// Two-norm measure of `[[−5, 2], [2, −2]]` at the listed graininess values.
pub fn run_example() -> tscale::Result<Vec<(f64, f64)>> {
    let a = example2_matrix();
    let mut rows = Vec::new();
    println!("{:>8} {:>12} {:>12} {:>12}", "mu", "m_1", "m_2", "m_inf");
    for mu in [0.0, 0.1, 0.2, 2.0 / 7.0, 0.5, 1.0] {
        let m1 = closed_form_measure(&a, mu, NormBase::One)?;
        let m2 = matrix_measure(&a, mu, &MeasureKind::two())?;
        let mi = matrix_measure(&a, mu, &MeasureKind::inf())?;
        println!("{mu:>8.4} {m1:>12.6} {m2:>12.6} {mi:>12.6}");
        rows.push((mu, m2));
    }
    // a diagonal weight tightens the one-norm estimate
    let kind = MeasureKind::weighted(NormBase::One, Matrix::diag(&[1.0, 2.0]))?;
    println!("weighted one-norm at mu = 0: {}", matrix_measure(&a, 0.0, &kind)?);
    Ok(rows)
}

fn main() -> tscale::Result<()> {
    run_example().map(|_| ())
}
