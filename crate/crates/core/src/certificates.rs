//! Sufficient stability, contraction and synchronization conditions,
//! evaluated on concrete systems.
//!
//! Conditions that quantify over a continuum of states are checked on a
//! sampled [`StateBox`]; such reports carry `evidence: sampled` and are
//! numerical evidence, not proofs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, Matrix};
use crate::measures::{matrix_measure, MeasureKind};
use crate::models::{NetworkSpec, SIQRParams};
use crate::solver::VectorField;
use crate::timescale::{Grid, TimeScale};

/// Slack required to certify a strict inequality.
pub const STRICT_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Evidence {
    Sampled,
    Exact,
}

/// Point where a condition is tightest or violated.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub index: Option<usize>,
    pub value: f64,
}

/// Outcome of one named inequality `lhs < rhs` (or `<=`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub verdict: Verdict,
    pub lhs: f64,
    pub rhs: f64,
}

impl Condition {
    fn strict(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Condition {
            name: name.into(),
            verdict: if lhs <= rhs - STRICT_MARGIN { Verdict::Holds } else { Verdict::Fails },
            lhs,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub constants: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub samples_used: usize,
    pub evidence: Evidence,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectrum: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub conditions: Vec<Condition>,
}

impl CertificateReport {
    pub fn new(verdict: Verdict, evidence: Evidence) -> Self {
        CertificateReport {
            verdict,
            constants: BTreeMap::new(),
            witness: None,
            samples_used: 0,
            evidence,
            spectrum: None,
            conditions: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn constant(&self, name: &str) -> Option<f64> {
        self.constants.get(name).copied()
    }

    pub fn set_constant(&mut self, name: &str, value: f64) {
        self.constants.insert(name.to_string(), value);
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// How a [`StateBox`] is sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sampling {
    /// Uniform grid including the vertices; one count per axis.
    Grid { counts: Vec<usize> },
    Random { samples: usize, seed: u64 },
}

/// Axis-aligned box of states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateBox {
    pub bounds: Vec<[f64; 2]>,
    pub sampling: Sampling,
}

impl StateBox {
    pub fn grid(bounds: Vec<[f64; 2]>, per_axis: usize) -> Self {
        let counts = vec![per_axis; bounds.len()];
        StateBox {
            bounds,
            sampling: Sampling::Grid { counts },
        }
    }

    pub fn random(bounds: Vec<[f64; 2]>, samples: usize, seed: u64) -> Self {
        StateBox {
            bounds,
            sampling: Sampling::Random { samples, seed },
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.bounds.is_empty()
            || self
                .bounds
                .iter()
                .any(|[lo, hi]| !(lo.is_finite() && hi.is_finite() && lo <= hi))
        {
            return Err(Error::EmptyBox);
        }
        match &self.sampling {
            Sampling::Grid { counts } if counts.len() != self.bounds.len() => {
                Err(Error::DimensionMismatch {
                    expected: self.bounds.len(),
                    got: counts.len(),
                })
            }
            Sampling::Grid { counts } if counts.contains(&0) => Err(Error::EmptyBox),
            Sampling::Random { samples: 0, .. } => Err(Error::EmptyBox),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter().zip(&self.bounds).all(|(v, [lo, hi])| lo <= v && v <= hi)
    }

    pub fn points(&self) -> Result<Vec<Vec<f64>>> {
        self.validate()?;
        match &self.sampling {
            Sampling::Grid { counts } => {
                let axes: Vec<Vec<f64>> = self
                    .bounds
                    .iter()
                    .zip(counts)
                    .map(|(&[lo, hi], &c)| {
                        if c == 1 {
                            vec![0.5 * (lo + hi)]
                        } else {
                            (0..c)
                                .map(|k| lo + (hi - lo) * k as f64 / (c - 1) as f64)
                                .collect()
                        }
                    })
                    .collect();
                let mut pts = vec![Vec::with_capacity(axes.len())];
                for axis in &axes {
                    pts = pts
                        .into_iter()
                        .flat_map(|p| {
                            axis.iter().map(move |&v| {
                                let mut q = p.clone();
                                q.push(v);
                                q
                            })
                        })
                        .collect();
                }
                Ok(pts)
            }
            Sampling::Random { samples, seed } => Ok(self.uniform(*samples, *seed)),
        }
    }

    /// `n` uniform samples independent of the configured sampling.
    pub fn uniform(&self, n: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                self.bounds
                    .iter()
                    .map(|&[lo, hi]| if lo == hi { lo } else { rng.gen_range(lo..=hi) })
                    .collect()
            })
            .collect()
    }
}

fn grid_measures(
    ts: &TimeScale,
    a_of_t: &dyn Fn(f64) -> Matrix,
    kind: &MeasureKind,
    grid: &Grid,
) -> Result<Vec<(f64, f64, f64)>> {
    grid.times
        .iter()
        .map(|&t| {
            let mu = ts.graininess(t)?;
            Ok((t, mu, matrix_measure(&a_of_t(t), mu, kind)?))
        })
        .collect()
}

/// Largest `ε` with every sampled `m(A(t), μ(t))` in `(−2/μ̄ + ε, −ε)`;
/// holds iff `ε >= 1e-9`. `μ̄` is the largest graininess of `ts`.
pub fn check_uniform_exp_stability(
    ts: &TimeScale,
    a_of_t: &dyn Fn(f64) -> Matrix,
    kind: &MeasureKind,
    grid: &Grid,
) -> Result<CertificateReport> {
    let mu_bar = ts.mu_max();
    let lower = if mu_bar > 0.0 { -2.0 / mu_bar } else { f64::NEG_INFINITY };
    let mut eps = f64::INFINITY;
    let mut witness = Witness::default();
    let samples = grid_measures(ts, a_of_t, kind, grid)?;
    for &(t, mu, m) in &samples {
        let slack = (-m).min(m - lower);
        if slack < eps {
            eps = slack;
            witness = Witness {
                t: Some(t),
                mu: Some(mu),
                value: m,
                ..Witness::default()
            };
        }
    }
    let verdict = if eps >= STRICT_MARGIN { Verdict::Holds } else { Verdict::Fails };
    let mut r = CertificateReport::new(verdict, Evidence::Sampled);
    r.set_constant("mu_bar", mu_bar);
    r.set_constant("eps", eps);
    r.witness = Some(witness);
    r.samples_used = samples.len();
    Ok(r)
}

/// Separate measure bounds `c_d` (dense) and `c_s` (scattered) and the trend
/// of `c_d λ_d(t0, t) + c_s λ_s(t0, t)` over the grid; holds iff the
/// least-squares slope is negative.
pub fn check_dense_scattered(
    ts: &TimeScale,
    a_of_t: &dyn Fn(f64) -> Matrix,
    kind: &MeasureKind,
    t0: f64,
    horizon: f64,
    grid: &Grid,
) -> Result<CertificateReport> {
    let (first, last) = match (grid.times.first(), grid.times.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::InvalidParameter("empty grid".into())),
    };
    let tol = 1e-9 * horizon.abs().max(1.0);
    if first > t0 + tol || last < horizon - tol {
        return Err(Error::InvalidParameter(format!(
            "grid [{first}, {last}] does not cover [{t0}, {horizon}]"
        )));
    }
    let samples = grid_measures(ts, a_of_t, kind, grid)?;
    let mut c_d = f64::NEG_INFINITY;
    let mut c_s = f64::NEG_INFINITY;
    for &(t, mu, m) in &samples {
        if t >= horizon {
            continue;
        }
        if mu > 0.0 {
            c_s = c_s.max(m);
        } else {
            c_d = c_d.max(m);
        }
    }
    let c_d_eff = if c_d.is_finite() { c_d } else { 0.0 };
    let c_s_eff = if c_s.is_finite() { c_s } else { 0.0 };
    let mut pts = Vec::new();
    for &(t, _, _) in &samples {
        if t < t0 || t > horizon {
            continue;
        }
        let (ld, ls) = ts.measure_split(t0, t)?;
        pts.push((t, c_d_eff * ld + c_s_eff * ls));
    }
    let slope = least_squares_slope(&pts);
    let verdict = if slope <= -STRICT_MARGIN { Verdict::Holds } else { Verdict::Fails };
    let mut r = CertificateReport::new(verdict, Evidence::Sampled);
    if c_d.is_finite() {
        r.set_constant("c_d", c_d);
    }
    if c_s.is_finite() {
        r.set_constant("c_s", c_s);
    }
    r.set_constant("slope", slope);
    if let Some(&(t, e)) = pts.last() {
        r.witness = Some(Witness {
            t: Some(t),
            value: e,
            ..Witness::default()
        });
    }
    r.samples_used = samples.len();
    Ok(r)
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let me = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = pts.iter().map(|(t, e)| (t - mt) * (e - me)).sum();
    let var: f64 = pts.iter().map(|(t, _)| (t - mt).powi(2)).sum();
    if var == 0.0 {
        0.0
    } else {
        cov / var
    }
}

/// `c̄² = −sup m(f_x(0, ξ), μ)` over the sampled box and the given
/// graininess values; holds iff `c̄² >= 1e-9`.
///
/// The Jacobian is evaluated at `t = 0`, so the field should be autonomous.
pub fn check_contraction<F: VectorField + ?Sized>(
    mu_values: &[f64],
    vf: &F,
    state_box: &StateBox,
    kind: &MeasureKind,
) -> Result<CertificateReport> {
    if state_box.dim() != vf.dim() {
        return Err(Error::DimensionMismatch {
            expected: vf.dim(),
            got: state_box.dim(),
        });
    }
    let points = state_box.points()?;
    let mus: Vec<f64> = if mu_values.is_empty() { vec![0.0] } else { mu_values.to_vec() };
    let mut sup = f64::NEG_INFINITY;
    let mut witness = Witness::default();
    for x in &points {
        let jac = vf.jacobian(0.0, x);
        for &mu in &mus {
            let m = matrix_measure(&jac, mu, kind)?;
            if m > sup {
                sup = m;
                witness = Witness {
                    x: Some(x.clone()),
                    mu: Some(mu),
                    value: m,
                    ..Witness::default()
                };
            }
        }
    }
    let c2 = -sup;
    let verdict = if c2 >= STRICT_MARGIN { Verdict::Holds } else { Verdict::Fails };
    let mut r = CertificateReport::new(verdict, Evidence::Sampled);
    r.set_constant("c_bar_sq", c2);
    r.witness = Some(witness);
    r.samples_used = points.len() * mus.len();
    Ok(r)
}

/// Conditions (C1) `μ < 2/(d + 2β x̄)` and (C2) `2β x̄ < d + α₁ + γ`, checked
/// with worst-case coefficient bounds for two choices of the state bound
/// `x̄`: `|C(t0)| + Λ̄` ("initial") and `Λ̄ / d_min` ("asymptotic").
///
/// The verdict holds if both choices certify both conditions, fails if both
/// choices fail, and is inconclusive otherwise.
pub fn check_siqr_conditions(
    params: &SIQRParams,
    ts: &TimeScale,
    t0: f64,
    c0: f64,
) -> Result<CertificateReport> {
    params.validate()?;
    ts.locate(t0)?;
    let mu_bar = ts.mu_max();
    params.check_graininess(mu_bar)?;
    if !(c0 >= 0.0 && c0.is_finite()) {
        return Err(Error::InvalidParameter(format!("initial population {c0} must be nonnegative")));
    }
    let lambda_bar = params.lambda.upper();
    let d_min = params.d.lower();
    let d_bar = params.d.upper();
    let beta_bar = params.beta.upper();
    let damping = d_min + params.alpha1.lower() + params.gamma.lower();

    let mut r = CertificateReport::new(Verdict::Inconclusive, Evidence::Exact);
    r.set_constant("mu_bar", mu_bar);
    let mut passes = Vec::new();
    for (label, x_bar) in [("initial", c0 + lambda_bar), ("asymptotic", lambda_bar / d_min)] {
        let threshold = 2.0 / (d_bar + 2.0 * beta_bar * x_bar);
        r.set_constant(&format!("x_bar_{label}"), x_bar);
        r.set_constant(&format!("c1_threshold_{label}"), threshold);
        let c1 = Condition::strict(format!("C1_{label}"), mu_bar, threshold);
        let c2 = Condition::strict(format!("C2_{label}"), 2.0 * beta_bar * x_bar, damping);
        passes.push(c1.verdict == Verdict::Holds && c2.verdict == Verdict::Holds);
        r.conditions.push(c1);
        r.conditions.push(c2);
    }
    r.verdict = match (passes[0], passes[1]) {
        (true, true) => Verdict::Holds,
        (false, false) => Verdict::Fails,
        _ => Verdict::Inconclusive,
    };
    r.samples_used = r.conditions.len();
    Ok(r)
}

/// `R₀ = β̄ (N + Λ̄) / (γ + ζ + d + α₁)` and whether `R₀ < 0.5`.
pub fn reproduction_number(params: &SIQRParams, n: f64) -> Result<(f64, bool)> {
    let denom = params.gamma.lower() + params.zeta.lower() + params.d.lower() + params.alpha1.lower();
    if denom <= 0.0 {
        return Err(Error::ZeroDenominator("reproduction number"));
    }
    let r0 = params.beta.upper() * (n + params.lambda.upper()) / denom;
    Ok((r0, r0 < 0.5))
}

/// Pinning synchronizability of an undirected network.
///
/// `c_f` is the sup of `m₂(f_x(0, ξ), 2μ)` over the box and all `μ`; the
/// coupling condition `c_f + max_i m₂(−λ̃_i Γ, 2μ) <= −c̄²` is then checked
/// over the full spectrum of `L̃` for every `μ`. Holds iff `c̄² >= 1e-9`.
pub fn check_pinning<F: VectorField + ?Sized>(
    net: &NetworkSpec,
    vf: &F,
    state_box: &StateBox,
    mu_values: &[f64],
) -> Result<CertificateReport> {
    net.validate()?;
    let n = net.gamma.ensure_square()?;
    if vf.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: vf.dim(),
        });
    }
    if state_box.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: state_box.dim(),
        });
    }
    let spectrum = symmetric_eigenvalues(&net.l_tilde())?;
    let mus: Vec<f64> = if mu_values.is_empty() { vec![0.0] } else { mu_values.to_vec() };
    let two = MeasureKind::two();
    let points = state_box.points()?;

    let mut c_f = f64::NEG_INFINITY;
    for x in &points {
        let jac = vf.jacobian(0.0, x);
        for &mu in &mus {
            c_f = c_f.max(matrix_measure(&jac, 2.0 * mu, &two)?);
        }
    }

    let mut worst = f64::NEG_INFINITY;
    let mut witness = Witness::default();
    for &mu in &mus {
        for (i, &lam) in spectrum.iter().enumerate() {
            let v = c_f + matrix_measure(&net.gamma.scale(-lam), 2.0 * mu, &two)?;
            if v > worst {
                worst = v;
                witness = Witness {
                    mu: Some(mu),
                    index: Some(i),
                    value: v,
                    ..Witness::default()
                };
            }
        }
    }
    let c2 = -worst;
    let verdict = if c2 >= STRICT_MARGIN { Verdict::Holds } else { Verdict::Fails };
    let mut r = CertificateReport::new(verdict, Evidence::Sampled);
    r.set_constant("c_f", c_f);
    r.set_constant("c_bar_sq", c2);
    r.set_constant("K", 1.0);
    r.set_constant("lambda_min", spectrum[0]);
    r.set_constant("lambda_max", *spectrum.last().expect("nonempty spectrum"));
    r.set_constant("mu_bar", mus.iter().copied().fold(0.0, f64::max));
    r.witness = Some(witness);
    r.samples_used = points.len() * mus.len() + spectrum.len() * mus.len();
    r.spectrum = Some(spectrum);
    Ok(r)
}

/// `max{−d + S̄, −1/μ_max + d}`, the bound on `m₂` of the opinion node
/// Jacobian at doubled graininess.
pub fn check_opinion_bound(d: f64, s_bar: f64, mu_max: f64) -> f64 {
    let dense = -d + s_bar;
    if mu_max > 0.0 {
        dense.max(-1.0 / mu_max + d)
    } else {
        dense
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{example1_matrix, example2_matrix, siqr_field, OpinionParams, Sigmoid};
    use crate::solver::{FnField, LinearSystem};
    use crate::timescale::TimeScaleSpec;

    fn alt(c: f64, h: f64, end: f64) -> TimeScale {
        TimeScaleSpec::Alternating { c, h, window_end: end }.build().unwrap()
    }

    #[test]
    fn uniform_exp_stability_examples() {
        let ts = alt(1.0, 0.2, 5.0);
        let a = |_: f64| example2_matrix();
        let grid = ts.grid(0.0, 5.0, 0.01).unwrap();
        let r = check_uniform_exp_stability(&ts, &a, &MeasureKind::two(), &grid).unwrap();
        assert!(r.holds());
        assert!((r.constant("eps").unwrap() - 1.0).abs() < 1e-9);

        let r_ts = TimeScale::interval(0.0, 3.0).unwrap();
        let g = r_ts.grid(0.0, 3.0, 0.1).unwrap();
        let id = |_: f64| Matrix::identity(2);
        let r = check_uniform_exp_stability(&r_ts, &id, &MeasureKind::two(), &g).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert!((r.witness.unwrap().value - 1.0).abs() < 1e-12);

        let g = r_ts.grid(0.0, 3.0, 1e-2).unwrap();
        let r = check_uniform_exp_stability(&r_ts, &example1_matrix, &MeasureKind::two(), &g).unwrap();
        assert!(r.holds());
        assert!(r.constant("eps").unwrap() >= 1.0 - 1e-9);
    }

    #[test]
    fn dense_scattered_examples() {
        let p = TimeScaleSpec::PAB { a: 1.0, b: 1.0, window_end: 20.0 }.build().unwrap();
        let g = p.grid(0.0, 20.0, 0.05).unwrap();
        let minus = |_: f64| -&Matrix::identity(2);
        let r = check_dense_scattered(&p, &minus, &MeasureKind::two(), 0.0, 20.0, &g).unwrap();
        assert!(r.holds());
        assert!((r.constant("c_d").unwrap() + 1.0).abs() < 1e-12);
        assert!((r.constant("c_s").unwrap() + 1.0).abs() < 1e-12);

        // contractive dense flow, expansive jumps: -1 * 2 + 0.5 * 0.5 < 0
        let p = TimeScaleSpec::PAB { a: 2.0, b: 0.5, window_end: 25.0 }.build().unwrap();
        let g = p.grid(0.0, 25.0, 0.05).unwrap();
        let mixed = |t: f64| {
            if p.graininess(t).unwrap() > 0.0 {
                Matrix::scalar(0.5)
            } else {
                Matrix::scalar(-1.0)
            }
        };
        let r = check_dense_scattered(&p, &mixed, &MeasureKind::one(), 0.0, 25.0, &g).unwrap();
        assert!(r.constant("c_d").unwrap() < 0.0 && r.constant("c_s").unwrap() > 0.0);
        assert!(r.holds());

        let id = |_: f64| Matrix::identity(2);
        let r = check_dense_scattered(&p, &id, &MeasureKind::one(), 0.0, 25.0, &g).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
    }

    #[test]
    fn contraction_examples() {
        let neg = FnField::new(1, |_, x: &[f64]| vec![-x[0]]).with_jacobian(|_, _| Matrix::scalar(-1.0));
        let b = StateBox::grid(vec![[-10.0, 10.0]], 11);
        let r = check_contraction(&[0.0, 0.5, 1.0], &neg, &b, &MeasureKind::one()).unwrap();
        assert!(r.holds());
        assert!((r.constant("c_bar_sq").unwrap() - 1.0).abs() < 1e-12);

        let pos = FnField::new(1, |_, x: &[f64]| vec![x[0]]);
        let r = check_contraction(&[0.0], &pos, &b, &MeasureKind::one()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(r.witness.unwrap().value >= 1.0 - 1e-6);

        let empty = StateBox::grid(vec![[1.0, 0.0]], 3);
        assert_eq!(
            check_contraction(&[0.0], &neg, &empty, &MeasureKind::one()).unwrap_err(),
            Error::EmptyBox
        );
    }

    #[test]
    fn siqr_contraction_on_invariant_box() {
        let f = siqr_field(&crate::models::SIQRParams::representative()).unwrap();
        let kind = MeasureKind::weighted(
            crate::linalg::NormBase::One,
            Matrix::diag(&[1.0, 1.0, 1.0, 1e-3]),
        )
        .unwrap();
        let b = StateBox::grid(vec![[0.0, 10.0], [0.0, 30.0], [0.0, 30.0], [0.0, 30.0]], 5);
        let r = check_contraction(&[0.0, 0.24], &f, &b, &kind).unwrap();
        assert!(r.holds(), "{r:?}");
        // fresh samples never beat the certified sup
        let c2 = r.constant("c_bar_sq").unwrap();
        for x in b.uniform(20, 99) {
            for mu in [0.0, 0.24] {
                let m = matrix_measure(&f.jacobian(0.0, &x), mu, &kind).unwrap();
                assert!(m <= -c2 + 1e-9);
            }
        }
    }

    #[test]
    fn contraction_of_linear_system_is_box_invariant() {
        let a = Matrix::new([[-3.0, 1.0], [0.5, -2.0]]);
        let sys = LinearSystem::constant(a.clone()).unwrap();
        let k = MeasureKind::inf();
        let r1 = check_contraction(&[0.0, 0.1], &sys, &StateBox::grid(vec![[-1.0, 1.0]; 2], 3), &k).unwrap();
        let r2 = check_contraction(&[0.0, 0.1], &sys, &StateBox::random(vec![[5.0, 50.0]; 2], 17, 4), &k).unwrap();
        let expect = -matrix_measure(&a, 0.0, &k).unwrap().max(matrix_measure(&a, 0.1, &k).unwrap());
        assert_eq!(r1.constant("c_bar_sq"), r2.constant("c_bar_sq"));
        assert!((r1.constant("c_bar_sq").unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn siqr_condition_conventions() {
        let p = crate::models::SIQRParams::representative();
        let ts = TimeScaleSpec::PAB { a: 1.0, b: 0.24, window_end: 30.0 }.build().unwrap();
        let r = check_siqr_conditions(&p, &ts, 0.0, 20.0).unwrap();
        assert!((r.constant("c1_threshold_initial").unwrap() - 2.0 / 7.0).abs() < 1e-12);
        assert_eq!(r.condition("C1_initial").unwrap().verdict, Verdict::Holds);
        assert_eq!(r.condition("C1_asymptotic").unwrap().verdict, Verdict::Holds);
        assert_eq!(r.condition("C2_initial").unwrap().verdict, Verdict::Fails);
        assert_eq!(r.condition("C2_asymptotic").unwrap().verdict, Verdict::Holds);
        assert_eq!(r.verdict, Verdict::Inconclusive);

        let mut hot = p.clone();
        hot.beta = 10.0.into();
        let r = check_siqr_conditions(&hot, &ts, 0.0, 20.0).unwrap();
        assert_eq!(r.condition("C2_initial").unwrap().verdict, Verdict::Fails);
        assert_eq!(r.condition("C2_asymptotic").unwrap().verdict, Verdict::Fails);
        assert_eq!(r.verdict, Verdict::Fails);

        let coarse = TimeScaleSpec::HZ { h: 0.5, start: 0.0, window_end: 10.0 }.build().unwrap();
        assert!(matches!(
            check_siqr_conditions(&p, &coarse, 0.0, 20.0),
            Err(Error::AssumptionViolation(_))
        ));
    }

    #[test]
    fn reproduction_number_examples() {
        let mut p = crate::models::SIQRParams::representative();
        let (r0, small) = reproduction_number(&p, 20.0).unwrap();
        assert_eq!(r0, 0.1 * 30.0 / 3.1);
        assert!(!small);
        p.beta = 0.0.into();
        assert_eq!(reproduction_number(&p, 20.0).unwrap(), (0.0, true));
        let mut z = crate::models::SIQRParams::lockdown(6e7, 1.0);
        z.gamma = 0.0.into();
        z.zeta = 0.0.into();
        z.d = 0.0.into();
        assert_eq!(reproduction_number(&z, 6e7).unwrap_err(), Error::ZeroDenominator("reproduction number"));
    }

    #[test]
    fn pinning_single_node() {
        let net = NetworkSpec::new(1, vec![], 1.0, 2.0, vec![0]).unwrap();
        let op = OpinionParams::new(0.5, Sigmoid::Atan, 0.0).unwrap();
        let b = StateBox::grid(vec![[-1.0, 1.0]], 3);
        let r = check_pinning(&net, &op.node_field(), &b, &[0.0]).unwrap();
        assert!(r.holds());
        assert!((r.constant("c_f").unwrap() - 0.5).abs() < 1e-12);
        assert!((r.constant("c_bar_sq").unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(r.constant("K"), Some(1.0));
    }

    #[test]
    fn pinning_unpinned_component_fails() {
        let net = NetworkSpec::new(4, vec![(0, 1), (2, 3)], 1.0, 5.0, vec![0]).unwrap();
        let op = OpinionParams::new(0.5, Sigmoid::Atan, 0.0).unwrap();
        let b = StateBox::grid(vec![[-2.0, 2.0]], 5);
        let r = check_pinning(&net, &op.node_field(), &b, &[0.0]).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(r.spectrum.unwrap()[0].abs() < 1e-12);
    }

    #[test]
    fn pinning_dense_matches_smallest_eigenvalue() {
        let edges = crate::models::watts_strogatz(20, 2, 0.3, 5).unwrap();
        let net = NetworkSpec::new(20, edges, 2.0, 4.0, vec![0, 5, 10, 15]).unwrap();
        let op = OpinionParams::new(0.5, Sigmoid::Atan, 0.0).unwrap();
        let b = StateBox::grid(vec![[-3.0, 3.0]], 13);
        let r = check_pinning(&net, &op.node_field(), &b, &[0.0]).unwrap();
        let shortcut = r.constant("c_f").unwrap() - r.constant("lambda_min").unwrap();
        assert!((-r.constant("c_bar_sq").unwrap() - shortcut).abs() < 1e-12);
    }

    #[test]
    fn opinion_bound_examples() {
        assert_eq!(check_opinion_bound(0.5, 1.0, 0.25), 0.5);
        assert_eq!(check_opinion_bound(0.0, 0.0, 1.0), 0.0);
        assert_eq!(check_opinion_bound(2.0, 1.0, 0.1), -1.0);
    }

    #[test]
    fn report_json_shape() {
        let mut r = CertificateReport::new(Verdict::Holds, Evidence::Sampled);
        r.set_constant("c_bar_sq", 0.5);
        r.samples_used = 3;
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "holds");
        assert_eq!(v["evidence"], "sampled");
        assert_eq!(v["constants"]["c_bar_sq"], 0.5);
        assert_eq!(v["samples_used"], 3);
        let back: CertificateReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
