//! Concrete systems: the SIQR epidemic model, opinion networks with a
//! stubborn agent, Watts–Strogatz graphs and two linear benchmark systems.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::solver::{integrate, FnField, LinearSystem, VectorField};
use crate::timescale::{TimeScale, TimeScaleSpec};

/// Bounded, rd-continuous, nonnegative coefficient.
///
/// JSON accepts a bare number for a constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Constant(f64),
    /// `values[i]` holds on `[breaks[i-1], breaks[i])`; right-continuous.
    Piecewise { breaks: Vec<f64>, values: Vec<f64> },
    /// `mean + amplitude * sin(omega * t + phase)`.
    Sinusoid {
        mean: f64,
        amplitude: f64,
        omega: f64,
        #[serde(default)]
        phase: f64,
    },
}

impl Coefficient {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Coefficient::Constant(v) => *v,
            Coefficient::Piecewise { breaks, values } => {
                values[breaks.partition_point(|b| *b <= t)]
            }
            Coefficient::Sinusoid {
                mean,
                amplitude,
                omega,
                phase,
            } => mean + amplitude * (omega * t + phase).sin(),
        }
    }

    pub fn upper(&self) -> f64 {
        match self {
            Coefficient::Constant(v) => *v,
            Coefficient::Piecewise { values, .. } => {
                values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            }
            Coefficient::Sinusoid {
                mean, amplitude, ..
            } => mean + amplitude.abs(),
        }
    }

    pub fn lower(&self) -> f64 {
        match self {
            Coefficient::Constant(v) => *v,
            Coefficient::Piecewise { values, .. } => {
                values.iter().copied().fold(f64::INFINITY, f64::min)
            }
            Coefficient::Sinusoid {
                mean, amplitude, ..
            } => mean - amplitude.abs(),
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if let Coefficient::Piecewise { breaks, values } = self {
            if values.len() != breaks.len() + 1 || breaks.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "{name}: piecewise coefficient needs increasing breaks and one more value than breaks"
                )));
            }
        }
        let (lo, hi) = (self.lower(), self.upper());
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name}: non-finite coefficient")));
        }
        if lo < 0.0 {
            return Err(Error::InvalidParameter(format!("{name}: coefficient must be nonnegative")));
        }
        Ok(())
    }
}

impl From<f64> for Coefficient {
    fn from(v: f64) -> Self {
        Coefficient::Constant(v)
    }
}

/// Parameters of the SIQR model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SIQRParams {
    #[serde(rename = "Lambda")]
    pub lambda: Coefficient,
    pub beta: Coefficient,
    pub d: Coefficient,
    pub zeta: Coefficient,
    pub eps: Coefficient,
    pub gamma: Coefficient,
    pub alpha1: Coefficient,
    pub alpha2: Coefficient,
}

impl SIQRParams {
    /// The representative constant parameter set.
    pub fn representative() -> Self {
        SIQRParams {
            lambda: 10.0.into(),
            beta: 0.1.into(),
            d: 1.0.into(),
            zeta: 1.0.into(),
            eps: 0.1.into(),
            gamma: 0.1.into(),
            alpha1: 1.0.into(),
            alpha2: 1.0.into(),
        }
    }

    /// Lock-down scenario of population `n`: `β = 0.0373/n`,
    /// `d = k_d β`, `Λ = k_Λ β` with `k_Λ = n`.
    pub fn lockdown(n: f64, k_d: f64) -> Self {
        let beta = 0.0373 / n;
        SIQRParams {
            lambda: (n * beta).into(),
            beta: beta.into(),
            d: (k_d * beta).into(),
            zeta: 0.067.into(),
            eps: 0.036.into(),
            gamma: 0.067.into(),
            alpha1: 0.0.into(),
            alpha2: 0.0.into(),
        }
    }

    fn all(&self) -> [(&'static str, &Coefficient); 8] {
        [
            ("Lambda", &self.lambda),
            ("beta", &self.beta),
            ("d", &self.d),
            ("zeta", &self.zeta),
            ("eps", &self.eps),
            ("gamma", &self.gamma),
            ("alpha1", &self.alpha1),
            ("alpha2", &self.alpha2),
        ]
    }

    /// Nonnegativity, boundedness, `d_min > 0` and `Λ_min > 0`.
    pub fn validate(&self) -> Result<()> {
        for (name, c) in self.all() {
            c.validate(name)?;
        }
        if self.d.lower() <= 0.0 {
            return Err(Error::AssumptionViolation("d_min > 0".into()));
        }
        if self.lambda.lower() <= 0.0 {
            return Err(Error::AssumptionViolation("Lambda_min > 0".into()));
        }
        Ok(())
    }

    /// Upper bound of `a₁ = γ + ζ + d + α₁`.
    pub fn a1_bar(&self) -> f64 {
        self.gamma.upper() + self.zeta.upper() + self.d.upper() + self.alpha1.upper()
    }

    /// Upper bound of `a₂ = d + α₂ + ε`.
    pub fn a2_bar(&self) -> f64 {
        self.d.upper() + self.alpha2.upper() + self.eps.upper()
    }

    /// Graininess conditions `μ a₁ < 1` and `μ a₂ < 1` that keep the
    /// nonnegative orthant forward invariant.
    pub fn check_graininess(&self, mu_max: f64) -> Result<()> {
        if mu_max * self.a1_bar() >= 1.0 {
            return Err(Error::AssumptionViolation(format!(
                "mu * a1 < 1 (mu_max = {mu_max}, a1 = {})",
                self.a1_bar()
            )));
        }
        if mu_max * self.a2_bar() >= 1.0 {
            return Err(Error::AssumptionViolation(format!(
                "mu * a2 < 1 (mu_max = {mu_max}, a2 = {})",
                self.a2_bar()
            )));
        }
        Ok(())
    }
}

/// SIQR vector field with analytic Jacobian.
#[derive(Debug, Clone)]
pub struct SiqrField {
    params: SIQRParams,
}

impl SiqrField {
    pub fn params(&self) -> &SIQRParams {
        &self.params
    }
}

pub fn siqr_field(p: &SIQRParams) -> Result<SiqrField> {
    p.validate()?;
    Ok(SiqrField { params: p.clone() })
}

impl VectorField for SiqrField {
    fn dim(&self) -> usize {
        4
    }

    fn eval(&self, t: f64, x: &[f64]) -> Vec<f64> {
        let p = &self.params;
        let (s, i, q, r) = (x[0], x[1], x[2], x[3]);
        let (beta, d) = (p.beta.eval(t), p.d.eval(t));
        let (zeta, eps, gamma) = (p.zeta.eval(t), p.eps.eval(t), p.gamma.eval(t));
        let a1 = gamma + zeta + d + p.alpha1.eval(t);
        let a2 = d + p.alpha2.eval(t) + eps;
        vec![
            p.lambda.eval(t) - beta * s * i - d * s,
            beta * s * i - a1 * i,
            zeta * i - a2 * q,
            gamma * i + eps * q - d * r,
        ]
    }

    fn jacobian(&self, t: f64, x: &[f64]) -> Matrix {
        let p = &self.params;
        let (s, i) = (x[0], x[1]);
        let (beta, d) = (p.beta.eval(t), p.d.eval(t));
        let (zeta, eps, gamma) = (p.zeta.eval(t), p.eps.eval(t), p.gamma.eval(t));
        let a1 = gamma + zeta + d + p.alpha1.eval(t);
        let a2 = d + p.alpha2.eval(t) + eps;
        Matrix::new([
            [-d - beta * i, -beta * s, 0.0, 0.0],
            [beta * i, beta * s - a1, 0.0, 0.0],
            [0.0, zeta, -a2, 0.0],
            [0.0, gamma, eps, -d],
        ])
    }
}

/// `[Λ(t)/d(t), 0, 0, 0]`.
pub fn disease_free_solution(p: &SIQRParams, t: f64) -> Vec<f64> {
    vec![p.lambda.eval(t) / p.d.eval(t), 0.0, 0.0, 0.0]
}

/// Undirected network with pinning control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSpec {
    pub n_nodes: usize,
    pub edges: Vec<(usize, usize)>,
    pub sigma: f64,
    pub sigma_r: f64,
    pub pinned: Vec<usize>,
    #[serde(default = "unit_gamma")]
    pub gamma: Matrix,
}

fn unit_gamma() -> Matrix {
    Matrix::scalar(1.0)
}

impl NetworkSpec {
    pub fn new(n_nodes: usize, edges: Vec<(usize, usize)>, sigma: f64, sigma_r: f64, pinned: Vec<usize>) -> Result<Self> {
        let net = NetworkSpec {
            n_nodes,
            edges,
            sigma,
            sigma_r,
            pinned,
            gamma: unit_gamma(),
        };
        net.validate()?;
        Ok(net)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_nodes == 0 {
            return Err(Error::InvalidParameter("network needs at least one node".into()));
        }
        for &(u, v) in &self.edges {
            if u >= self.n_nodes || v >= self.n_nodes {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at node {u}")));
            }
        }
        if let Some(&p) = self.pinned.iter().find(|&&p| p >= self.n_nodes) {
            return Err(Error::InvalidParameter(format!("pinned node {p} out of range")));
        }
        if !(self.sigma > 0.0 && self.sigma_r > 0.0) {
            return Err(Error::InvalidParameter("sigma and sigma_r must be positive".into()));
        }
        self.gamma.ensure_square()?;
        Ok(())
    }

    /// Graph Laplacian `D − A` (duplicate edges count once).
    pub fn laplacian(&self) -> Matrix {
        let n = self.n_nodes;
        let mut l = Matrix::zeros(n, n);
        let unique: BTreeSet<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        for (u, v) in unique {
            l[(u, v)] -= 1.0;
            l[(v, u)] -= 1.0;
            l[(u, u)] += 1.0;
            l[(v, v)] += 1.0;
        }
        l
    }

    /// 0/1 pinning indicator per node.
    pub fn pinning_vector(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.n_nodes];
        for &i in &self.pinned {
            p[i] = 1.0;
        }
        p
    }

    /// `L̃ = σ L + σ_r diag(p)`.
    pub fn l_tilde(&self) -> Matrix {
        &self.laplacian().scale(self.sigma) + &Matrix::diag(&self.pinning_vector()).scale(self.sigma_r)
    }

    /// Parses whitespace-separated `u v` lines, 0-indexed; `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| {
                    Error::InvalidParameter(format!("edge list line {}: bad node `{s}`", lineno + 1))
                })
            };
            if nums.len() != 2 {
                return Err(Error::InvalidParameter(format!(
                    "edge list line {}: expected two nodes",
                    lineno + 1
                )));
            }
            edges.push((parse(nums[0])?, parse(nums[1])?));
        }
        Ok(edges)
    }
}

/// Ring lattice with `mean_degree / 2` neighbours per side, each edge's far
/// endpoint rewired with probability `rewire_p` (no self-loops, no duplicates).
pub fn watts_strogatz(n: usize, mean_degree: usize, rewire_p: f64, seed: u64) -> Result<Vec<(usize, usize)>> {
    if mean_degree < 2 || !mean_degree.is_multiple_of(2) || n <= mean_degree {
        return Err(Error::InvalidParameter(format!(
            "need even mean_degree >= 2 and n > mean_degree (n = {n}, k = {mean_degree})"
        )));
    }
    if !(0.0..=1.0).contains(&rewire_p) {
        return Err(Error::InvalidParameter(format!("rewire_p = {rewire_p} not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![BTreeSet::new(); n];
    let mut edges = Vec::with_capacity(n * mean_degree / 2);
    for i in 0..n {
        for j in 1..=mean_degree / 2 {
            let v = (i + j) % n;
            edges.push((i, v));
            adj[i].insert(v);
            adj[v].insert(i);
        }
    }
    for e in edges.iter_mut() {
        if !rng.gen_bool(rewire_p) {
            continue;
        }
        let (u, v) = *e;
        if adj[u].len() >= n - 1 {
            continue;
        }
        let w = loop {
            let w = rng.gen_range(0..n);
            if w != u && !adj[u].contains(&w) {
                break w;
            }
        };
        adj[u].remove(&v);
        adj[v].remove(&u);
        adj[u].insert(w);
        adj[w].insert(u);
        *e = (u, w);
    }
    Ok(edges)
}

/// Picks `count` distinct nodes to pin, deterministically per seed.
pub fn choose_pinned(n: usize, count: usize, seed: u64) -> Result<Vec<usize>> {
    if count > n {
        return Err(Error::InvalidParameter(format!("cannot pin {count} of {n} nodes")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = sample(&mut rng, n, count).into_vec();
    nodes.sort_unstable();
    Ok(nodes)
}

/// Odd sigmoid with unit slope at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sigmoid {
    #[default]
    Atan,
    Tanh,
}

impl Sigmoid {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Sigmoid::Atan => x.atan(),
            Sigmoid::Tanh => x.tanh(),
        }
    }

    pub fn derivative(self, x: f64) -> f64 {
        match self {
            Sigmoid::Atan => 1.0 / (1.0 + x * x),
            Sigmoid::Tanh => 1.0 - x.tanh().powi(2),
        }
    }

    /// `sup S'`.
    pub fn slope_bound(self) -> f64 {
        1.0
    }
}

/// Node dynamics `x^Δ = −d x + S(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpinionParams {
    pub d: f64,
    #[serde(default)]
    pub sigmoid: Sigmoid,
    pub x_r0: f64,
}

impl OpinionParams {
    pub fn new(d: f64, sigmoid: Sigmoid, x_r0: f64) -> Result<Self> {
        let op = OpinionParams { d, sigmoid, x_r0 };
        op.validate()?;
        Ok(op)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.d.is_finite() && self.d < 1.0) {
            return Err(Error::InvalidParameter(format!("need 1 - d > 0, got d = {}", self.d)));
        }
        let s = self.sigmoid;
        if s.eval(0.0) != 0.0 || (s.derivative(0.0) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter("sigmoid needs S(0) = 0 and S'(0) = 1".into()));
        }
        for k in -5..=5 {
            let x = k as f64;
            if (s.eval(-x) + s.eval(x)).abs() > 1e-12 || s.derivative(x) < 0.0 {
                return Err(Error::InvalidParameter(format!("sigmoid is not odd and monotone at {x}")));
            }
        }
        Ok(())
    }

    pub fn node(&self, x: f64) -> f64 {
        -self.d * x + self.sigmoid.eval(x)
    }

    pub fn node_slope(&self, x: f64) -> f64 {
        -self.d + self.sigmoid.derivative(x)
    }

    /// Scalar node field.
    pub fn node_field(&self) -> FnField {
        let (a, b) = (self.clone(), self.clone());
        FnField::new(1, move |_, x: &[f64]| vec![a.node(x[0])])
            .with_jacobian(move |_, x: &[f64]| Matrix::scalar(b.node_slope(x[0])))
    }

    /// Equilibria `{−x̄, 0, x̄}` of the node dynamics, `x̄` by bisection.
    pub fn equilibria(&self) -> Result<[f64; 3]> {
        if self.d <= 0.0 {
            return Err(Error::InvalidParameter("nonzero equilibria need d > 0".into()));
        }
        let g = |x: f64| self.sigmoid.eval(x) - self.d * x;
        let mut hi = 1.0;
        while g(hi) > 0.0 {
            hi *= 2.0;
            if hi > 1e12 {
                return Err(Error::InvalidParameter("no positive equilibrium".into()));
            }
        }
        let mut lo = hi / 2.0;
        while g(lo) <= 0.0 {
            lo /= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let x = if g(lo).abs() <= g(hi).abs() { lo } else { hi };
        Ok([-x, 0.0, x])
    }
}

/// Sampled scalar signal interpolated with cubic Hermite polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSignal {
    times: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
    jumps: Vec<bool>,
}

impl ReferenceSignal {
    /// Value at `t`; inside a gap the value at the last point before it.
    pub fn eval(&self, t: f64) -> f64 {
        let k = self.times.partition_point(|s| *s <= t);
        if k == 0 {
            return self.values[0];
        }
        let i = k - 1;
        if i + 1 == self.times.len() || t == self.times[i] || self.jumps[i] {
            return self.values[i];
        }
        let (t0, t1) = (self.times[i], self.times[i + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let (s2, s3) = (s * s, s * s * s);
        (2.0 * s3 - 3.0 * s2 + 1.0) * self.values[i]
            + (s3 - 2.0 * s2 + s) * h * self.slopes[i]
            + (-2.0 * s3 + 3.0 * s2) * self.values[i + 1]
            + (s3 - s2) * h * self.slopes[i + 1]
    }
}

/// Integrates the stubborn agent's own dynamics on `ts`.
pub fn stubborn_trajectory(
    ts: &TimeScale,
    op: &OpinionParams,
    t0: f64,
    t_end: f64,
    dense_step: f64,
) -> Result<ReferenceSignal> {
    let tr = integrate(ts, &op.node_field(), t0, &[op.x_r0], t_end, dense_step)?;
    let times = tr.samples.iter().map(|s| s.t).collect();
    let values: Vec<f64> = tr.samples.iter().map(|s| s.x[0]).collect();
    let slopes = values.iter().map(|&x| op.node(x)).collect();
    let jumps = tr.samples.iter().map(|s| s.mu > 0.0).collect();
    Ok(ReferenceSignal {
        times,
        values,
        slopes,
        jumps,
    })
}

/// Opinion network `x_i^Δ = −d x_i + S(x_i) − σ (L x)_i + p_i σ_r (x_r − x_i)`.
pub struct OpinionNetwork<R> {
    op: OpinionParams,
    sigma: f64,
    sigma_r: f64,
    pins: Vec<f64>,
    laplacian: Matrix,
    coupling: Matrix,
    x_r: R,
}

pub fn opinion_network_field<R: Fn(f64) -> f64>(
    net: &NetworkSpec,
    op: &OpinionParams,
    x_r: R,
) -> Result<OpinionNetwork<R>> {
    net.validate()?;
    op.validate()?;
    if net.gamma.rows() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: net.gamma.rows(),
        });
    }
    let laplacian = net.laplacian();
    let pins = net.pinning_vector();
    let coupling = net.l_tilde().scale(-1.0);
    Ok(OpinionNetwork {
        op: op.clone(),
        sigma: net.sigma,
        sigma_r: net.sigma_r,
        pins,
        laplacian,
        coupling,
        x_r,
    })
}

impl<R: Fn(f64) -> f64> VectorField for OpinionNetwork<R> {
    fn dim(&self) -> usize {
        self.pins.len()
    }

    fn eval(&self, t: f64, x: &[f64]) -> Vec<f64> {
        let xr = (self.x_r)(t);
        let lx = self.laplacian.mul_vec(x);
        x.iter()
            .enumerate()
            .map(|(i, &xi)| {
                self.op.node(xi) - self.sigma * lx[i] + self.pins[i] * self.sigma_r * (xr - xi)
            })
            .collect()
    }

    fn jacobian(&self, _t: f64, x: &[f64]) -> Matrix {
        let slopes: Vec<f64> = x.iter().map(|&xi| self.op.node_slope(xi)).collect();
        &Matrix::diag(&slopes) + &self.coupling
    }
}

/// Opinion network used by the stubborn-agent experiment.
#[derive(Debug, Clone)]
pub struct OpinionSetup {
    pub net: NetworkSpec,
    pub op: OpinionParams,
    pub timescale: TimeScale,
    pub x0: Vec<f64>,
    pub t_end: f64,
}

/// Seed for which every connected component of the graph holds a pinned node.
pub const OPINION_SEED: u64 = 1;

/// Watts–Strogatz graph (100 nodes, mean degree 2, rewiring 0.7) with 45
/// pinned nodes, `σ = 5`, `σ_r = 10`, `d = 0.5`, `S = atan`, on a
/// nonhomogeneous scale with `μ_max = 0.25` on the window `[0, 20]`.
///
/// The seed drives the graph, the pinned set, the time scale and the
/// initial opinions (uniform in `[−3, 3]`); the stubborn agent starts at 2.
pub fn opinion_setup(seed: u64) -> Result<OpinionSetup> {
    let n = 100;
    let edges = watts_strogatz(n, 2, 0.7, seed)?;
    let pinned = choose_pinned(n, 45, seed.wrapping_add(1))?;
    let net = NetworkSpec::new(n, edges, 5.0, 10.0, pinned)?;
    let op = OpinionParams::new(0.5, Sigmoid::Atan, 2.0)?;
    let timescale = TimeScaleSpec::Nonhomogeneous {
        length_range: [0.5, 1.5],
        gap_range: [0.05, 0.25],
        mu_max: 0.25,
        seed: seed.wrapping_add(2),
        window_end: 20.0,
    }
    .build()?;
    // the window may close inside a gap
    let t_end = timescale.end();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let x0 = (0..n).map(|_| rng.gen_range(-3.0..=3.0)).collect();
    Ok(OpinionSetup {
        net,
        op,
        timescale,
        x0,
        t_end,
    })
}

/// A linear benchmark system with its time scale.
pub struct ExampleSystem {
    pub name: &'static str,
    pub system: LinearSystem,
    pub timescale: TimeScale,
}

/// `[[−2, 1], [−1, −(sin t + 2)]]`.
pub fn example1_matrix(t: f64) -> Matrix {
    Matrix::new([[-2.0, 1.0], [-1.0, -(t.sin() + 2.0)]])
}

/// `[[−5, 2], [2, −2]]`.
pub fn example2_matrix() -> Matrix {
    Matrix::new([[-5.0, 2.0], [2.0, -2.0]])
}

/// Example 1 on the real window `[0, 10]`; Example 2 on the alternating
/// scale with unit dense stretches and gaps of 0.2.
pub fn example_systems() -> Vec<ExampleSystem> {
    vec![
        ExampleSystem {
            name: "example1",
            system: LinearSystem::time_varying(2, example1_matrix),
            timescale: TimeScale::interval(0.0, 10.0).expect("valid interval"),
        },
        ExampleSystem {
            name: "example2",
            system: LinearSystem::constant(example2_matrix()).expect("square"),
            timescale: TimeScaleSpec::Alternating {
                c: 1.0,
                h: 0.2,
                window_end: 10.0,
            }
            .build()
            .expect("valid alternating scale"),
        },
    ]
}
