//! Integration of dynamics `x^Δ = f(t, x)` on a time scale.
//!
//! Dense stretches are crossed with fixed-step classical RK4; at every
//! right-scattered point the Δ-derivative is the divided difference, so the
//! step `x(σ(t)) = x(t) + μ(t) f(t, x(t))` is applied exactly and never
//! subdivided.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::certificates::CertificateReport;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::measures::{matrix_measure, MeasureKind};
use crate::timescale::{Grid, Piece, TimeScale};

/// Any state component above this magnitude aborts integration.
pub const BLOW_UP_THRESHOLD: f64 = 1e12;

/// Right-hand side of `x^Δ = f(t, x)` with its Jacobian.
pub trait VectorField {
    fn dim(&self) -> usize;

    fn eval(&self, t: f64, x: &[f64]) -> Vec<f64>;

    /// Jacobian `∂f/∂x`; central differences unless overridden.
    fn jacobian(&self, t: f64, x: &[f64]) -> Matrix {
        finite_difference_jacobian(self, t, x, 1e-6)
    }
}

/// Central-difference Jacobian with step `h` scaled by `max(1, |x_j|)`.
pub fn finite_difference_jacobian<F: VectorField + ?Sized>(
    f: &F,
    t: f64,
    x: &[f64],
    h: f64,
) -> Matrix {
    let n = f.dim();
    let mut jac = Matrix::zeros(n, n);
    let mut xp = x.to_vec();
    for j in 0..n {
        let step = h * x[j].abs().max(1.0);
        xp[j] = x[j] + step;
        let fp = f.eval(t, &xp);
        xp[j] = x[j] - step;
        let fm = f.eval(t, &xp);
        xp[j] = x[j];
        for i in 0..n {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * step);
        }
    }
    jac
}

type FieldFn = Box<dyn Fn(f64, &[f64]) -> Vec<f64> + Send + Sync>;
type JacobianFn = Box<dyn Fn(f64, &[f64]) -> Matrix + Send + Sync>;

/// Vector field built from closures.
pub struct FnField {
    dim: usize,
    f: FieldFn,
    jac: Option<JacobianFn>,
}

impl FnField {
    pub fn new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(f64, &[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        FnField {
            dim,
            f: Box::new(f),
            jac: None,
        }
    }

    pub fn with_jacobian<J>(mut self, jac: J) -> Self
    where
        J: Fn(f64, &[f64]) -> Matrix + Send + Sync + 'static,
    {
        self.jac = Some(Box::new(jac));
        self
    }
}

impl VectorField for FnField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, t: f64, x: &[f64]) -> Vec<f64> {
        (self.f)(t, x)
    }

    fn jacobian(&self, t: f64, x: &[f64]) -> Matrix {
        match &self.jac {
            Some(j) => j(t, x),
            None => finite_difference_jacobian(self, t, x, 1e-6),
        }
    }
}

type MatrixFn = Box<dyn Fn(f64) -> Matrix + Send + Sync>;
type ForcingFn = Box<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

/// `x^Δ = A(t) x + g(t)`.
pub struct LinearSystem {
    dim: usize,
    a: MatrixFn,
    g: Option<ForcingFn>,
    g_bar: Option<f64>,
}

impl LinearSystem {
    pub fn constant(a: Matrix) -> Result<Self> {
        let dim = a.ensure_square()?;
        Ok(LinearSystem {
            dim,
            a: Box::new(move |_| a.clone()),
            g: None,
            g_bar: None,
        })
    }

    /// Time-varying coefficient; `a_of_t` must return `dim x dim` matrices.
    pub fn time_varying<F>(dim: usize, a_of_t: F) -> Self
    where
        F: Fn(f64) -> Matrix + Send + Sync + 'static,
    {
        LinearSystem {
            dim,
            a: Box::new(a_of_t),
            g: None,
            g_bar: None,
        }
    }

    /// Adds a forcing term with a known bound `|g(t)| <= g_bar`.
    pub fn with_forcing<G>(mut self, g: G, g_bar: f64) -> Self
    where
        G: Fn(f64) -> Vec<f64> + Send + Sync + 'static,
    {
        self.g = Some(Box::new(g));
        self.g_bar = Some(g_bar);
        self
    }

    pub fn a(&self, t: f64) -> Matrix {
        (self.a)(t)
    }

    pub fn g(&self, t: f64) -> Option<Vec<f64>> {
        self.g.as_ref().map(|g| g(t))
    }

    pub fn g_bar(&self) -> f64 {
        self.g_bar.unwrap_or(0.0)
    }

    pub fn coefficient(&self) -> impl Fn(f64) -> Matrix + '_ {
        move |t| (self.a)(t)
    }
}

impl VectorField for LinearSystem {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, t: f64, x: &[f64]) -> Vec<f64> {
        let mut y = self.a(t).mul_vec(x);
        if let Some(g) = &self.g {
            for (yi, gi) in y.iter_mut().zip(g(t)) {
                *yi += gi;
            }
        }
        y
    }

    fn jacobian(&self, t: f64, _x: &[f64]) -> Matrix {
        self.a(t)
    }
}

/// One time-scale sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub mu: f64,
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverMeta {
    pub method: String,
    pub dense_step: f64,
    pub t0: f64,
    pub t_end: f64,
}

/// Solution samples; consecutive samples at a scattered `t` are `t` and `σ(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub meta: SolverMeta,
}

/// Formats a float with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory is never empty")
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    /// CSV with header `t,mu,x1..xn`.
    pub fn to_csv(&self) -> String {
        let n = self.samples.first().map(|s| s.x.len()).unwrap_or(0);
        let mut out = String::from("t,mu");
        for i in 1..=n {
            let _ = write!(out, ",x{i}");
        }
        out.push('\n');
        for s in &self.samples {
            out.push_str(&fmt_f64(s.t));
            out.push(',');
            out.push_str(&fmt_f64(s.mu));
            for v in &s.x {
                out.push(',');
                out.push_str(&fmt_f64(*v));
            }
            out.push('\n');
        }
        out
    }
}

/// Exact step across a right-scattered point: `x + μ f(t, x)`.
pub fn step_scattered<F: VectorField + ?Sized>(field: &F, t: f64, mu: f64, x: &[f64]) -> Vec<f64> {
    let f = field.eval(t, x);
    x.iter().zip(f).map(|(xi, fi)| xi + mu * fi).collect()
}

fn axpy(x: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    x.iter().zip(k).map(|(xi, ki)| xi + a * ki).collect()
}

fn rk4_step<F: VectorField + ?Sized>(field: &F, t: f64, h: f64, x: &[f64]) -> Vec<f64> {
    let k1 = field.eval(t, x);
    let k2 = field.eval(t + 0.5 * h, &axpy(x, 0.5 * h, &k1));
    let k3 = field.eval(t + 0.5 * h, &axpy(x, 0.5 * h, &k2));
    let k4 = field.eval(t + h, &axpy(x, h, &k3));
    x.iter()
        .enumerate()
        .map(|(i, xi)| xi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

fn check_state(t: f64, x: &[f64]) -> Result<()> {
    if x.iter().all(|v| v.is_finite() && v.abs() <= BLOW_UP_THRESHOLD) {
        Ok(())
    } else {
        Err(Error::BlowUp { t })
    }
}

/// Integrates from `(t0, x0)` up to `t_end`, hitting every scattered point.
pub fn integrate<F: VectorField + ?Sized>(
    ts: &TimeScale,
    field: &F,
    t0: f64,
    x0: &[f64],
    t_end: f64,
    dense_step: f64,
) -> Result<Trajectory> {
    if x0.len() != field.dim() {
        return Err(Error::DimensionMismatch {
            expected: field.dim(),
            got: x0.len(),
        });
    }
    if !(dense_step > 0.0) {
        return Err(Error::InvalidParameter("dense_step must be positive".into()));
    }
    let start = ts.locate(t0)?.t;
    let pieces = ts.pieces(t0, t_end)?;
    check_state(start, x0)?;
    let mut samples = vec![Sample {
        t: start,
        mu: 0.0,
        x: x0.to_vec(),
    }];
    let mut x = x0.to_vec();
    for piece in pieces {
        match piece {
            Piece::Dense { lo, hi } => {
                let n = ((hi - lo) / dense_step).ceil().max(1.0) as usize;
                let h = (hi - lo) / n as f64;
                for i in 0..n {
                    let t = lo + i as f64 * h;
                    x = rk4_step(field, t, h, &x);
                    let t_next = if i + 1 == n { hi } else { lo + (i + 1) as f64 * h };
                    check_state(t_next, &x)?;
                    samples.push(Sample {
                        t: t_next,
                        mu: 0.0,
                        x: x.clone(),
                    });
                }
            }
            Piece::Scattered { t, mu } => {
                x = step_scattered(field, t, mu, &x);
                let next = ts.sigma(t)?;
                check_state(next, &x)?;
                samples.last_mut().expect("nonempty").mu = mu;
                samples.push(Sample {
                    t: next,
                    mu: 0.0,
                    x: x.clone(),
                });
            }
        }
    }
    Ok(Trajectory {
        samples,
        meta: SolverMeta {
            method: "rk4+exact-jump".into(),
            dense_step,
            t0: start,
            t_end,
        },
    })
}

/// Flattened matrix initial value problem `Y^Δ = A(t) Y`.
struct MatrixField<'a> {
    n: usize,
    a: &'a dyn Fn(f64) -> Matrix,
}

impl VectorField for MatrixField<'_> {
    fn dim(&self) -> usize {
        self.n * self.n
    }

    fn eval(&self, t: f64, y: &[f64]) -> Vec<f64> {
        let y = Matrix::from_row_major(self.n, self.n, y.to_vec()).expect("square state");
        (self.a)(t).matmul(&y).as_slice().to_vec()
    }
}

/// Transition operator `Φ_A(s, t0)` at every sample time `s` up to `t`.
pub fn transition_history(
    ts: &TimeScale,
    a_of_t: &dyn Fn(f64) -> Matrix,
    t0: f64,
    t: f64,
    dense_step: f64,
) -> Result<Vec<(f64, Matrix)>> {
    let n = a_of_t(t0).ensure_square()?;
    let field = MatrixField { n, a: a_of_t };
    let eye = Matrix::identity(n);
    let traj = integrate(ts, &field, t0, eye.as_slice(), t, dense_step)?;
    traj.samples
        .into_iter()
        .map(|s| Ok((s.t, Matrix::from_row_major(n, n, s.x)?)))
        .collect()
}

/// Transition operator `Φ_A(t, t0)`.
pub fn transition_operator(
    ts: &TimeScale,
    a_of_t: &dyn Fn(f64) -> Matrix,
    t0: f64,
    t: f64,
    dense_step: f64,
) -> Result<Matrix> {
    let hist = transition_history(ts, a_of_t, t0, t, dense_step)?;
    Ok(hist.into_iter().last().expect("nonempty").1)
}

/// Right-hand side of the Coppel inequality at every grid time,
/// `|x0| e_m(t, t0) + ḡ ∫_{t0}^t e_m(t, σ(τ)) Δτ` with `m(τ) = m(A(τ), μ(τ))`.
///
/// The integral term `χ` is propagated cell by cell through its own
/// recurrence `χ^Δ = m χ + ḡ`: exactly at jumps, and with Simpson on the
/// quadratic interpolant of `m` across dense cells.
pub fn coppel_bound(
    ts: &TimeScale,
    a_of_t: &dyn Fn(f64) -> Matrix,
    kind: &MeasureKind,
    g_bar: f64,
    t0: f64,
    x0_norm: f64,
    grid: &Grid,
) -> Result<Vec<(f64, f64)>> {
    if !(g_bar >= 0.0 && x0_norm >= 0.0) {
        return Err(Error::InvalidParameter(
            "g_bar and |x0| must be nonnegative".into(),
        ));
    }
    let times = &grid.times;
    let first = *times.first().ok_or(Error::InvalidParameter("empty grid".into()))?;
    if (first - ts.locate(t0)?.t).abs() > 1e-12 * t0.abs().max(1.0) {
        return Err(Error::InvalidParameter("grid must start at t0".into()));
    }
    let m_dense = |t: f64| matrix_measure(&a_of_t(t), 0.0, kind);
    let mut e = 1.0;
    let mut chi = 0.0;
    let mut out = Vec::with_capacity(times.len());
    out.push((first, x0_norm));
    for w in times.windows(2) {
        let (a, b) = (w[0], w[1]);
        let grain = ts.mu(a)?;
        if grain.is_scattered() {
            let next = ts.sigma(a)?;
            if (next - b).abs() > 1e-12 * b.abs().max(1.0) {
                return Err(Error::InvalidParameter(format!(
                    "grid skips the jump at t = {a}"
                )));
            }
            let factor = 1.0 + grain.mu * matrix_measure(&a_of_t(a), grain.mu, kind)?;
            e *= factor;
            chi = factor * chi + grain.mu * g_bar;
        } else {
            let h = b - a;
            let (ma, mm, mb) = (m_dense(a)?, m_dense(a + 0.5 * h)?, m_dense(b)?);
            let factor = (h / 6.0 * (ma + 4.0 * mm + mb)).exp();
            let from_mid = (h / 24.0 * (-ma + 8.0 * mm + 5.0 * mb)).exp();
            e *= factor;
            chi = factor * chi + g_bar * h / 6.0 * (factor + 4.0 * from_mid + 1.0);
        }
        out.push((b, x0_norm * e + chi));
    }
    Ok(out)
}

/// Distance between two solutions against the contraction envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairSample {
    pub t: f64,
    pub distance: f64,
    pub envelope: f64,
}

/// Integrates two solutions and compares `|x(t) − y(t)|` with
/// `|x0 − y0| e_{−c̄²}(t, t0)`, taking `c̄²` from a contraction certificate.
#[allow(clippy::too_many_arguments)]
pub fn pair_distance<F: VectorField + ?Sized>(
    ts: &TimeScale,
    field: &F,
    t0: f64,
    x0: &[f64],
    y0: &[f64],
    t_end: f64,
    kind: &MeasureKind,
    dense_step: f64,
    certificate: &CertificateReport,
) -> Result<Vec<PairSample>> {
    let c2 = certificate
        .constant("c_bar_sq")
        .ok_or(Error::CertificateMissing("c_bar_sq"))?;
    let xs = integrate(ts, field, t0, x0, t_end, dense_step)?;
    let ys = integrate(ts, field, t0, y0, t_end, dense_step)?;
    let d0 = distance(kind, x0, y0);
    let mut env = 1.0;
    let mut out = Vec::with_capacity(xs.samples.len());
    for (i, (sx, sy)) in xs.samples.iter().zip(&ys.samples).enumerate() {
        if i > 0 {
            let prev = &xs.samples[i - 1];
            if prev.mu > 0.0 {
                env *= 1.0 - prev.mu * c2;
            } else {
                env *= (-c2 * (sx.t - prev.t)).exp();
            }
        }
        out.push(PairSample {
            t: sx.t,
            distance: distance(kind, &sx.x, &sy.x),
            envelope: d0 * env,
        });
    }
    Ok(out)
}

fn distance(kind: &MeasureKind, x: &[f64], y: &[f64]) -> f64 {
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    kind.vector_norm(&d)
}

/// `V(x) = |f(x)|` and its upper right Δ-derivative along the flow.
///
/// For `μ > 0` the derivative is the divided difference over one jump; at
/// `μ = 0` it is the forward difference with width `h_probe`. The field is
/// evaluated at `t = 0` and must be autonomous.
pub fn lyapunov_decrement<F: VectorField + ?Sized>(
    field: &F,
    x: &[f64],
    mu: f64,
    kind: &MeasureKind,
    h_probe: f64,
) -> (f64, f64) {
    let fx = field.eval(0.0, x);
    let v = kind.vector_norm(&fx);
    let h = if mu > 0.0 { mu } else { h_probe };
    let moved = axpy(x, h, &fx);
    let v_next = kind.vector_norm(&field.eval(0.0, &moved));
    (v, (v_next - v) / h)
}
