//! Small dense real matrices.
//!
//! Everything here is O(n^3) and allocation-happy; the measure and
//! certificate code never forms matrices larger than the network size.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Off-diagonal Frobenius threshold (relative to the matrix scale) for Jacobi.
pub const JACOBI_TOL: f64 = 1e-12;
/// Upper bound on cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Symmetry tolerance accepted by [`symmetric_eigenvalues`].
pub const SYMMETRY_TOL: f64 = 1e-10;
/// Relative pivot size below which a weight matrix counts as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Dense row-major real matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Base vector norm inducing a matrix norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormBase {
    #[serde(rename = "one-norm")]
    One,
    #[serde(rename = "two-norm")]
    Two,
    #[serde(rename = "inf-norm")]
    Inf,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Matrix::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    /// 1x1 matrix.
    pub fn scalar(v: f64) -> Self {
        Matrix::diag(&[v])
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotFinite("matrix"));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                got: bad.len(),
            });
        }
        Matrix::from_row_major(r, c, rows.concat())
    }

    /// Panicking shorthand for literals in tests and examples.
    pub fn new<const R: usize, const C: usize>(rows: [[f64; C]; R]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix::from_row_major(R, C, data).expect("literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// `I + h A`.
    pub fn shifted_identity(&self, h: f64) -> Matrix {
        let mut m = self.scale(h);
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] += 1.0;
        }
        m
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "mul_vec dimension mismatch");
        self.data
            .chunks(self.cols)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Symmetric part `(A + A^T) / 2`.
    pub fn symmetric_part(&self) -> Matrix {
        (self + &self.transpose()).scale(0.5)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Max column absolute sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Max row absolute sum.
    pub fn norm_inf(&self) -> f64 {
        self.data
            .chunks(self.cols)
            .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Spectral norm.
    pub fn norm_two(&self) -> f64 {
        sigma_max(self)
    }

    pub fn norm(&self, base: NormBase) -> f64 {
        match base {
            NormBase::One => self.norm_one(),
            NormBase::Two => self.norm_two(),
            NormBase::Inf => self.norm_inf(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(-1.0)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(deserializer)?;
        Matrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Vector norm matching [`Matrix::norm`].
pub fn vector_norm(x: &[f64], base: NormBase) -> f64 {
    match base {
        NormBase::One => x.iter().map(|v| v.abs()).sum(),
        NormBase::Two => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
        NormBase::Inf => x.iter().fold(0.0, |m, v| m.max(v.abs())),
    }
}

/// Induced norm of `A`, or of `P A P^{-1}` when a weight is given.
pub fn induced_norm(a: &Matrix, base: NormBase, weight: Option<&Matrix>) -> Result<f64> {
    match weight {
        None => Ok(a.norm(base)),
        Some(p) => {
            a.ensure_square()?;
            let p_inv = invert(p)?;
            Ok(p.matmul(a).matmul(&p_inv).norm(base))
        }
    }
}

/// Eigenvalues of a symmetric matrix in ascending order (cyclic Jacobi).
pub fn symmetric_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    let n = a.ensure_square()?;
    let deviation = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| (a[(i, j)] - a[(j, i)]).abs())
        .fold(0.0, f64::max);
    if deviation > SYMMETRY_TOL * a.max_abs().max(1.0) {
        return Err(Error::Asymmetric { deviation });
    }
    let mut m = a.symmetric_part();
    jacobi_diagonalize(&mut m);
    let mut eig: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    Ok(eig)
}

fn off_diagonal(m: &Matrix) -> f64 {
    let n = m.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

fn jacobi_diagonalize(m: &mut Matrix) {
    let n = m.rows;
    let scale = m.frobenius();
    if scale == 0.0 {
        return;
    }
    let mut converged_sweeps = 0;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = off_diagonal(m);
        if off == 0.0 {
            break;
        }
        // One extra sweep past the threshold costs nothing and squares the residual.
        if off <= JACOBI_TOL * scale {
            converged_sweeps += 1;
            if converged_sweeps > 1 {
                break;
            }
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
            }
        }
    }
}

/// Largest singular value, `sqrt(lambda_max(A^T A))`.
pub fn sigma_max(a: &Matrix) -> f64 {
    if a.max_abs() == 0.0 {
        return 0.0;
    }
    // Gram matrix of the smaller side.
    let gram = if a.rows >= a.cols {
        a.transpose().matmul(a)
    } else {
        a.matmul(&a.transpose())
    };
    let mut m = gram.symmetric_part();
    jacobi_diagonalize(&mut m);
    let lmax = (0..m.rows).map(|i| m[(i, i)]).fold(0.0, f64::max);
    lmax.max(0.0).sqrt()
}

/// Smallest singular value.
pub fn sigma_min(a: &Matrix) -> f64 {
    let gram = a.transpose().matmul(a);
    let mut m = gram.symmetric_part();
    jacobi_diagonalize(&mut m);
    let lmin = (0..m.rows).map(|i| m[(i, i)]).fold(f64::INFINITY, f64::min);
    lmin.max(0.0).sqrt()
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn invert(p: &Matrix) -> Result<Matrix> {
    let n = p.ensure_square()?;
    let scale = p.max_abs();
    if scale == 0.0 {
        return Err(Error::SingularWeight);
    }
    let mut a = p.clone();
    let mut inv = Matrix::identity(n);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
            .unwrap();
        let pivot = a[(pivot_row, col)];
        if pivot.abs() < SINGULAR_TOL * scale {
            return Err(Error::SingularWeight);
        }
        if pivot_row != col {
            for j in 0..n {
                a.data.swap(col * n + j, pivot_row * n + j);
                inv.data.swap(col * n + j, pivot_row * n + j);
            }
        }
        for j in 0..n {
            a[(col, j)] /= pivot;
            inv[(col, j)] /= pivot;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a[(i, col)];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                a[(i, j)] -= f * a[(col, j)];
                inv[(i, j)] -= f * inv[(col, j)];
            }
        }
    }
    Ok(inv)
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm(a: &Matrix) -> Result<Matrix> {
    let n = a.ensure_square()?;
    let norm = a.norm_one();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale(0.5f64.powi(squarings as i32));
    let mut term = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    for k in 1..=20 {
        term = term.matmul(&scaled).scale(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn induced_norm_examples() {
        let nil = Matrix::new([[0.0, 1.0], [0.0, 0.0]]);
        assert!(close(nil.norm_two(), 1.0, 1e-14));
        let a = Matrix::new([[-5.0, 2.0], [2.0, -2.0]]);
        assert_eq!(a.norm_inf(), 7.0);
        assert_eq!(a.norm_one(), 7.0);
        let i3 = Matrix::identity(3);
        for base in [NormBase::One, NormBase::Two, NormBase::Inf] {
            assert!(close(i3.norm(base), 1.0, 1e-14));
        }
    }

    #[test]
    fn weighted_norm_uses_similarity() {
        let a = Matrix::new([[1.0, 2.0], [0.0, 1.0]]);
        let p = Matrix::diag(&[1.0, 4.0]);
        // P A P^-1 = [[1, 0.5], [0, 1]]
        let n = induced_norm(&a, NormBase::Inf, Some(&p)).unwrap();
        assert!(close(n, 1.5, 1e-14));
        let singular = Matrix::new([[1.0, 2.0], [2.0, 4.0]]);
        assert_eq!(
            induced_norm(&a, NormBase::One, Some(&singular)),
            Err(Error::SingularWeight)
        );
    }

    #[test]
    fn eigenvalue_examples() {
        let e = symmetric_eigenvalues(&Matrix::diag(&[3.0, 2.0])).unwrap();
        assert_eq!(e, vec![2.0, 3.0]);
        let e = symmetric_eigenvalues(&Matrix::new([[-5.0, 2.0], [2.0, -2.0]])).unwrap();
        // lambda^2 + 7 lambda + 6 = (lambda + 6)(lambda + 1)
        assert!(close(e[0], -6.0, 1e-12) && close(e[1], -1.0, 1e-12));
        let e = symmetric_eigenvalues(&Matrix::zeros(4, 4)).unwrap();
        assert_eq!(e, vec![0.0; 4]);
    }

    #[test]
    fn eigenvalues_reject_asymmetric() {
        let a = Matrix::new([[1.0, 2.0], [0.0, 1.0]]);
        assert!(matches!(
            symmetric_eigenvalues(&a),
            Err(Error::Asymmetric { .. })
        ));
    }

    #[test]
    fn sigma_max_examples() {
        let a = Matrix::new([[-5.0, 2.0], [2.0, -2.0]]);
        let h = 2.0 / 7.0;
        assert!(close(sigma_max(&a.shifted_identity(h)), 5.0 / 7.0, 1e-12));
        assert!(close(sigma_max(&Matrix::diag(&[1.0, -3.0])), 3.0, 1e-12));
        assert!(close(sigma_max(&Matrix::new([[0.0, 1.0], [0.0, 0.0]])), 1.0, 1e-12));
    }

    #[test]
    fn invert_examples() {
        let d = Matrix::diag(&[2.0, 4.0, 0.5, -8.0]);
        let di = invert(&d).unwrap();
        assert_eq!(di, Matrix::diag(&[0.5, 0.25, 2.0, -0.125]));
        assert_eq!(invert(&Matrix::identity(3)).unwrap(), Matrix::identity(3));
        // adjugate / det with det = 1
        let p = Matrix::new([[2.0, 1.0], [1.0, 1.0]]);
        let pi = invert(&p).unwrap();
        let expected = Matrix::new([[1.0, -1.0], [-1.0, 2.0]]);
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(pi[(i, j)], expected[(i, j)], 1e-14));
            }
        }
    }

    #[test]
    fn invert_rejects_singular_and_nonsquare() {
        assert_eq!(invert(&Matrix::zeros(2, 2)), Err(Error::SingularWeight));
        let r = Matrix::from_rows(&[vec![1.0, 2.0, 3.0]]).unwrap();
        assert!(matches!(invert(&r), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn expm_matches_scalar_and_diagonal() {
        let e = expm(&Matrix::diag(&[-1.0, 2.0])).unwrap();
        assert!(close(e[(0, 0)], (-1.0f64).exp(), 1e-13));
        assert!(close(e[(1, 1)], 2.0f64.exp(), 1e-12));
        // nilpotent: exp(N) = I + N
        let e = expm(&Matrix::new([[0.0, 3.0], [0.0, 0.0]])).unwrap();
        assert!(close(e[(0, 1)], 3.0, 1e-13) && close(e[(0, 0)], 1.0, 1e-14));
    }

    #[test]
    fn matrix_json_is_nested_arrays() {
        let a = Matrix::new([[1.0, 2.0], [3.0, 4.0]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[1.0,2.0],[3.0,4.0]]");
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Matrix>("[[1.0],[2.0,3.0]]").is_err());
    }
}
