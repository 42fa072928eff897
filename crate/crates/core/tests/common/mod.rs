//! Shared fixtures: random matrix cases and the measure property checks.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tscale::linalg::{invert, symmetric_eigenvalues, vector_norm, Matrix, NormBase};
use tscale::measures::{closed_form_measure, hilger_re, matrix_measure, MeasureKind};

pub const BASES: [NormBase; 3] = [NormBase::One, NormBase::Two, NormBase::Inf];

/// One randomized input for the measure checks.
#[derive(Debug, Clone)]
pub struct MeasureCase {
    pub a: Matrix,
    pub b: Matrix,
    pub sym: Matrix,
    pub weight: Matrix,
    pub x: Vec<f64>,
    pub mu: f64,
    pub mu2: f64,
}

impl MeasureCase {
    /// Assembles a case from raw entries in `[-3, 3]`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        n: usize,
        a: Vec<f64>,
        b: Vec<f64>,
        s: Vec<f64>,
        w: Vec<f64>,
        x: Vec<f64>,
        mu: f64,
        mu2: f64,
    ) -> Self {
        let a = Matrix::from_row_major(n, n, a).unwrap();
        let b = Matrix::from_row_major(n, n, b).unwrap();
        let s = Matrix::from_row_major(n, n, s).unwrap();
        let sym = (&s + &s.transpose()).scale(0.5);
        // diagonally dominant, hence invertible
        let mut weight = Matrix::from_row_major(n, n, w).unwrap().scale(0.3);
        for i in 0..n {
            weight[(i, i)] = n as f64 + 1.0 + weight[(i, i)].abs();
        }
        MeasureCase {
            a,
            b,
            sym,
            weight,
            x,
            mu,
            mu2,
        }
    }

    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        let n = rng.gen_range(2..=6);
        let mut entries = |k: usize| -> Vec<f64> { (0..k).map(|_| rng.gen_range(-3.0..=3.0)).collect() };
        let (a, b, s, w, x) = (entries(n * n), entries(n * n), entries(n * n), entries(n * n), entries(n));
        let mu = random_mu(rng);
        let mu2 = random_mu(rng);
        MeasureCase::from_parts(n, a, b, s, w, x, mu, mu2)
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// The graininess used where a strictly positive one is needed.
    pub fn positive_mu(&self) -> f64 {
        if self.mu > 0.0 {
            self.mu
        } else if self.mu2 > 0.0 {
            self.mu2
        } else {
            0.5
        }
    }
}

/// Zero a quarter of the time, otherwise uniform in `[0.01, 3]`.
pub fn random_mu(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen_bool(0.25) {
        0.0
    } else {
        rng.gen_range(0.01..=3.0)
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Matrix {
    let data = (0..n * n).map(|_| rng.gen_range(lo..=hi)).collect();
    Matrix::from_row_major(n, n, data).unwrap()
}

pub fn m(a: &Matrix, mu: f64, base: NormBase) -> f64 {
    matrix_measure(a, mu, &MeasureKind::new(base)).unwrap()
}

pub type Check = fn(&MeasureCase) -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn identity_values(c: &MeasureCase) -> Result<(), String> {
    let n = c.n();
    let eye = Matrix::identity(n);
    let minus = eye.scale(-1.0);
    let mu = c.mu;
    let expected = if 1.0 - mu >= 0.0 { -1.0 } else { (mu - 2.0) / mu };
    for base in BASES {
        let up = m(&eye, mu, base);
        let down = m(&minus, mu, base);
        ensure((up - 1.0).abs() <= 1e-12, || format!("m(I, {mu}) = {up} for {base:?}"))?;
        ensure((down - expected).abs() <= 1e-12, || {
            format!("m(-I, {mu}) = {down}, expected {expected} for {base:?}")
        })?;
    }
    Ok(())
}

pub fn norm_bounds(c: &MeasureCase) -> Result<(), String> {
    for base in BASES {
        let norm = c.a.norm(base);
        let v = m(&c.a, c.mu, base);
        ensure(-norm - 1e-10 <= v && v <= norm + 1e-10, || {
            format!("m = {v} outside [-{norm}, {norm}] for {base:?}, mu = {}", c.mu)
        })?;
    }
    Ok(())
}

pub fn convexity(c: &MeasureCase) -> Result<(), String> {
    for base in BASES {
        let (ma, mb) = (m(&c.a, c.mu, base), m(&c.b, c.mu, base));
        for alpha in [0.25, 0.5, 0.75] {
            let mix = &c.a.scale(alpha) + &c.b.scale(1.0 - alpha);
            let lhs = m(&mix, c.mu, base);
            let rhs = alpha * ma + (1.0 - alpha) * mb;
            ensure(lhs <= rhs + 1e-10, || {
                format!("convexity: {lhs} > {rhs} at alpha = {alpha}, {base:?}")
            })?;
        }
    }
    Ok(())
}

/// Larger graininess never gives a larger measure (the literal reading).
pub fn nonincreasing_in_mu(c: &MeasureCase) -> Result<(), String> {
    let (lo, hi) = (c.mu.min(c.mu2), c.mu.max(c.mu2));
    for base in BASES {
        let (m_lo, m_hi) = (m(&c.a, lo, base), m(&c.a, hi, base));
        ensure(m_lo >= m_hi - 1e-12, || {
            format!("m(A, {lo}) = {m_lo} < m(A, {hi}) = {m_hi} for {base:?}")
        })?;
    }
    Ok(())
}

/// Larger graininess never gives a smaller measure.
pub fn nondecreasing_in_mu(c: &MeasureCase) -> Result<(), String> {
    let (lo, hi) = (c.mu.min(c.mu2), c.mu.max(c.mu2));
    for base in BASES {
        let (m_lo, m_hi) = (m(&c.a, lo, base), m(&c.a, hi, base));
        ensure(m_lo <= m_hi + 1e-10, || {
            format!("m(A, {lo}) = {m_lo} > m(A, {hi}) = {m_hi} for {base:?}")
        })?;
    }
    Ok(())
}

pub fn eigenvalue_bound(c: &MeasureCase) -> Result<(), String> {
    let eig = symmetric_eigenvalues(&c.sym).map_err(|e| e.to_string())?;
    for base in BASES {
        let v = m(&c.sym, c.mu, base);
        for &lam in &eig {
            let h = hilger_re(lam, c.mu).value;
            ensure(h <= v + 1e-10, || {
                format!("Re_mu({lam}) = {h} exceeds m = {v} for {base:?}, mu = {}", c.mu)
            })?;
        }
    }
    Ok(())
}

pub fn lower_bounds(c: &MeasureCase) -> Result<(), String> {
    let minus = c.a.scale(-1.0);
    let ax = c.a.mul_vec(&c.x);
    for base in BASES {
        let (nx, nax) = (vector_norm(&c.x, base), vector_norm(&ax, base));
        for (label, v) in [("m(-A)", m(&minus, c.mu, base)), ("m(A)", m(&c.a, c.mu, base))] {
            ensure(nax >= -v * nx - 1e-10 * (1.0 + nx), || {
                format!("|Ax| = {nax} < -{label} |x| = {} for {base:?}", -v * nx)
            })?;
        }
    }
    Ok(())
}

/// Induced norm of `M` for `x ↦ |Px|`, from extreme points of the unit ball.
fn weighted_norm_by_vectors(mat: &Matrix, p: &Matrix, base: NormBase) -> f64 {
    let n = mat.rows();
    let p_inv = invert(p).unwrap();
    let probe = |s: Vec<f64>| {
        let x = p_inv.mul_vec(&s);
        vector_norm(&p.mul_vec(&mat.mul_vec(&x)), base) / vector_norm(&p.mul_vec(&x), base)
    };
    match base {
        NormBase::One => (0..n)
            .map(|j| probe((0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect()))
            .fold(0.0, f64::max),
        NormBase::Inf => (0..1usize << n)
            .map(|bits| probe((0..n).map(|i| if bits >> i & 1 == 1 { 1.0 } else { -1.0 }).collect()))
            .fold(0.0, f64::max),
        NormBase::Two => unreachable!("no finite set of extreme points"),
    }
}

pub fn weighted_similarity(c: &MeasureCase) -> Result<(), String> {
    let p_inv = invert(&c.weight).map_err(|e| e.to_string())?;
    let similar = c.weight.matmul(&c.a).matmul(&p_inv);
    for base in BASES {
        let kind = MeasureKind::weighted(base, c.weight.clone()).map_err(|e| e.to_string())?;
        let weighted = matrix_measure(&c.a, c.mu, &kind).map_err(|e| e.to_string())?;
        let plain = m(&similar, c.mu, base);
        ensure((weighted - plain).abs() <= 1e-9 * (1.0 + plain.abs()), || {
            format!("m_P = {weighted} vs m(PAP^-1) = {plain} for {base:?}")
        })?;
        if c.mu > 0.0 && base != NormBase::Two {
            let n_def = weighted_norm_by_vectors(&c.a.shifted_identity(c.mu), &c.weight, base);
            let by_def = (n_def - 1.0) / c.mu;
            ensure((weighted - by_def).abs() <= 1e-9 * (1.0 + by_def.abs()), || {
                format!("m_P = {weighted} vs vector-norm definition {by_def} for {base:?}")
            })?;
        }
    }
    Ok(())
}

pub fn split_subadditivity(c: &MeasureCase) -> Result<(), String> {
    let sum = &c.a + &c.b;
    for base in BASES {
        let lhs = m(&sum, c.mu, base);
        let rhs = m(&c.a, 2.0 * c.mu, base) + m(&c.b, 2.0 * c.mu, base);
        ensure(lhs <= rhs + 1e-10, || {
            format!("m(A+B, {}) = {lhs} > {rhs} for {base:?}", c.mu)
        })?;
    }
    Ok(())
}

pub fn scaling(c: &MeasureCase) -> Result<(), String> {
    for base in BASES {
        for s in [0.5, 2.0] {
            let lhs = m(&c.a.scale(s), c.mu, base);
            let rhs = s * m(&c.a, s * c.mu, base);
            ensure((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()), || {
                format!("m(cA, mu) = {lhs} vs c m(A, c mu) = {rhs}, c = {s}, {base:?}")
            })?;
        }
    }
    Ok(())
}

/// `A(η) = A + ηB` on `[0, 1]`; the midpoint rule is exact on the left side.
pub fn jensen(c: &MeasureCase) -> Result<(), String> {
    const CELLS: usize = 200;
    let mean = &c.a + &c.b.scale(0.5);
    for base in BASES {
        let lhs = m(&mean, c.mu, base);
        let rhs = (0..CELLS)
            .map(|k| {
                let eta = (k as f64 + 0.5) / CELLS as f64;
                m(&(&c.a + &c.b.scale(eta)), c.mu, base)
            })
            .sum::<f64>()
            / CELLS as f64;
        ensure(lhs <= rhs + 1e-10, || {
            format!("m(int A) = {lhs} > int m(A) = {rhs} for {base:?}")
        })?;
    }
    Ok(())
}

pub fn regressivity(c: &MeasureCase) -> Result<(), String> {
    let mu = c.positive_mu();
    for base in BASES {
        let lhs = 1.0 + mu * m(&c.a, mu, base);
        let norm = c.a.shifted_identity(mu).norm(base);
        ensure(lhs >= 0.0 && (lhs - norm).abs() <= 1e-10 * (1.0 + norm), || {
            format!("1 + mu m = {lhs} vs |I + mu A| = {norm} for {base:?}")
        })?;
    }
    Ok(())
}

pub fn closed_forms(c: &MeasureCase) -> Result<(), String> {
    for base in [NormBase::One, NormBase::Inf] {
        let closed = closed_form_measure(&c.a, c.mu, base).map_err(|e| e.to_string())?;
        let def = m(&c.a, c.mu, base);
        ensure((closed - def).abs() <= 1e-10, || {
            format!("closed form {closed} vs definition {def} for {base:?}, mu = {}", c.mu)
        })?;
    }
    Ok(())
}

pub fn continuity(c: &MeasureCase) -> Result<(), String> {
    let delta = 1e-6;
    for base in BASES {
        let gap = (m(&c.a, c.mu + delta, base) - m(&c.a, c.mu, base)).abs();
        let bound = 1e-3 * (1.0 + c.a.norm(base));
        ensure(gap <= bound, || {
            format!("jump {gap} > {bound} at mu = {} for {base:?}", c.mu)
        })?;
    }
    Ok(())
}

/// The thirteen measure properties in their literal form.
pub const MEASURE_INVARIANTS: [(&str, Check); 13] = [
    ("identity values", identity_values),
    ("norm bounds", norm_bounds),
    ("convexity", convexity),
    ("monotonicity in mu", nonincreasing_in_mu),
    ("eigenvalue bound", eigenvalue_bound),
    ("lower bounds", lower_bounds),
    ("weighted similarity", weighted_similarity),
    ("split subadditivity", split_subadditivity),
    ("scaling", scaling),
    ("jensen", jensen),
    ("regressivity", regressivity),
    ("closed forms", closed_forms),
    ("continuity", continuity),
];
