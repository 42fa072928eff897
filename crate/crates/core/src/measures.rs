//! Matrix measures on time scales.
//!
//! For graininess `μ > 0` the measure is `(‖I + μA‖ − 1) / μ`; at `μ = 0` it is
//! the classical logarithmic norm, evaluated through its closed forms:
//! column/row sums for the one/inf norms and `λ_max((A + Aᵀ)/2)` for the
//! two-norm. A weight `P` turns every kind into the measure induced by
//! `x ↦ |Px|`, which equals the unweighted measure of `PAP⁻¹`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, expm, invert, symmetric_eigenvalues, Matrix, NormBase};
use crate::timescale::{Grid, TimeScale};

/// Default probe width for the initial growth rate at right-dense points.
pub const DEFAULT_H_PROBE: f64 = 1e-6;

/// Norm selector: a base norm plus an optional weight `P`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureKind {
    pub base: NormBase,
    #[serde(default)]
    pub weight: Option<Matrix>,
}

impl MeasureKind {
    pub const fn new(base: NormBase) -> Self {
        MeasureKind { base, weight: None }
    }

    pub const fn one() -> Self {
        MeasureKind::new(NormBase::One)
    }

    pub const fn two() -> Self {
        MeasureKind::new(NormBase::Two)
    }

    pub const fn inf() -> Self {
        MeasureKind::new(NormBase::Inf)
    }

    /// Weighted variant; fails if `p` is not invertible.
    pub fn weighted(base: NormBase, p: Matrix) -> Result<Self> {
        invert(&p)?;
        Ok(MeasureKind {
            base,
            weight: Some(p),
        })
    }

    /// Vector norm `|Px|` (or `|x|` without weight).
    pub fn vector_norm(&self, x: &[f64]) -> f64 {
        match &self.weight {
            None => linalg::vector_norm(x, self.base),
            Some(p) => linalg::vector_norm(&p.mul_vec(x), self.base),
        }
    }

    /// Induced matrix norm.
    pub fn matrix_norm(&self, a: &Matrix) -> Result<f64> {
        linalg::induced_norm(a, self.base, self.weight.as_ref())
    }

    /// `PAP⁻¹`, or `A` itself when unweighted.
    pub fn transform(&self, a: &Matrix) -> Result<Matrix> {
        match &self.weight {
            None => Ok(a.clone()),
            Some(p) => {
                if p.rows() != a.rows() {
                    return Err(Error::DimensionMismatch {
                        expected: p.rows(),
                        got: a.rows(),
                    });
                }
                let p_inv = invert(p)?;
                Ok(p.matmul(a).matmul(&p_inv))
            }
        }
    }
}

/// Scalar Hilger real part together with its inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HilgerValue {
    pub lambda: f64,
    pub mu: f64,
    pub value: f64,
}

/// `ĤRe{λ}(μ)`: `λ` at `μ = 0`, `(|1 + μλ| − 1)/μ` otherwise.
pub fn hilger_re(lambda: f64, mu: f64) -> HilgerValue {
    let value = if mu == 0.0 {
        lambda
    } else {
        ((1.0 + mu * lambda).abs() - 1.0) / mu
    };
    HilgerValue { lambda, mu, value }
}

fn check_mu(mu: f64) -> Result<()> {
    if mu >= 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "graininess must be nonnegative, got {mu}"
        )))
    }
}

/// Classical (μ = 0) measure of an unweighted matrix.
fn measure_at_zero(a: &Matrix, base: NormBase) -> Result<f64> {
    let n = a.ensure_square()?;
    Ok(match base {
        NormBase::One => (0..n)
            .map(|j| {
                a[(j, j)]
                    + (0..n)
                        .filter(|&i| i != j)
                        .map(|i| a[(i, j)].abs())
                        .sum::<f64>()
            })
            .fold(f64::NEG_INFINITY, f64::max),
        NormBase::Inf => (0..n)
            .map(|i| {
                a[(i, i)]
                    + (0..n)
                        .filter(|&j| j != i)
                        .map(|j| a[(i, j)].abs())
                        .sum::<f64>()
            })
            .fold(f64::NEG_INFINITY, f64::max),
        NormBase::Two => {
            let eig = symmetric_eigenvalues(&a.symmetric_part())?;
            eig[eig.len() - 1]
        }
    })
}

/// Matrix measure `m(A, μ)` induced by `kind`.
pub fn matrix_measure(a: &Matrix, mu: f64, kind: &MeasureKind) -> Result<f64> {
    a.ensure_square()?;
    check_mu(mu)?;
    let a = kind.transform(a)?;
    if mu == 0.0 {
        measure_at_zero(&a, kind.base)
    } else {
        Ok((a.shifted_identity(mu).norm(kind.base) - 1.0) / mu)
    }
}

/// Column/row-sum closed forms built from the Hilger real part of the diagonal.
pub fn closed_form_measure(a: &Matrix, mu: f64, base: NormBase) -> Result<f64> {
    let n = a.ensure_square()?;
    check_mu(mu)?;
    if base == NormBase::Two {
        return Err(Error::InvalidParameter(
            "closed forms exist only for the one and inf norms".into(),
        ));
    }
    // inf-norm sums run over rows, i.e. columns of the transpose
    let entry = |i: usize, j: usize| match base {
        NormBase::Inf => a[(j, i)],
        _ => a[(i, j)],
    };
    Ok((0..n)
        .map(|j| {
            hilger_re(entry(j, j), mu).value
                + (0..n)
                    .filter(|&i| i != j)
                    .map(|i| entry(i, j).abs())
                    .sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Initial growth rate `ν(A, t0)` of a constant matrix.
///
/// At a right-scattered `t0` this is exactly `m(A, μ(t0))`. At a right-dense
/// `t0` the limit is sampled as `(‖e^{hA}‖ − 1)/h` with `h = h_probe`; the
/// probe converges to `m(A, 0)` at first order in `h`.
pub fn initial_growth_rate(
    a: &Matrix,
    ts: &TimeScale,
    t0: f64,
    kind: &MeasureKind,
    h_probe: f64,
) -> Result<f64> {
    a.ensure_square()?;
    let grain = ts.mu(t0)?;
    if grain.is_scattered() {
        return matrix_measure(a, grain.mu, kind);
    }
    if !(h_probe > 0.0) {
        return Err(Error::InvalidParameter("h_probe must be positive".into()));
    }
    let loc = ts.locate(t0)?;
    let seg = ts.segments()[loc.segment];
    let end = loc.t + h_probe;
    if end > seg[1] {
        return Err(Error::ProbeLeavesDense { t0, end });
    }
    let phi = expm(&a.scale(h_probe))?;
    Ok((kind.matrix_norm(&phi)? - 1.0) / h_probe)
}

/// Pointwise measure profile along a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureProfile {
    /// `(t, μ(t), m(A(t), μ(t)))`.
    pub points: Vec<(f64, f64, f64)>,
    pub sup: f64,
    pub inf: f64,
}

/// Evaluates `t ↦ m(A(t), μ(t))` at every grid time.
pub fn measure_along<F>(
    a_of_t: F,
    ts: &TimeScale,
    grid: &Grid,
    kind: &MeasureKind,
) -> Result<MeasureProfile>
where
    F: Fn(f64) -> Matrix,
{
    let mut points = Vec::with_capacity(grid.len());
    let mut sup = f64::NEG_INFINITY;
    let mut inf = f64::INFINITY;
    for &t in &grid.times {
        let mu = ts.graininess(t)?;
        let m = matrix_measure(&a_of_t(t), mu, kind)?;
        sup = sup.max(m);
        inf = inf.min(m);
        points.push((t, mu, m));
    }
    Ok(MeasureProfile { points, sup, inf })
}
