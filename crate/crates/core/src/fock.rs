//! Truncated Fock-space linear algebra.

use crate::error::{Error, Result};
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Highest retained number state and the admissible discarded mass.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FockCutoff {
    pub n_max: usize,
    pub tail_tol: f64,
}

impl FockCutoff {
    pub fn new(n_max: usize, tail_tol: f64) -> Result<Self> {
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::Parameter(format!(
                "tail_tol must lie in (0, 1), got {tail_tol}"
            )));
        }
        Ok(Self { n_max, tail_tol })
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

impl Default for FockCutoff {
    fn default() -> Self {
        Self {
            n_max: 200,
            tail_tol: 1e-12,
        }
    }
}

/// Truncated expansion `Σ_{n ≤ n_max} φ_n |n⟩` with a bound on the discarded mass.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FockVector {
    pub coeffs: Vec<Complex64>,
    pub tail_mass: f64,
}

impl FockVector {
    pub fn basis(n: usize, dim: usize) -> Self {
        let mut coeffs = vec![ZERO; dim];
        coeffs[n] = ONE;
        Self {
            coeffs,
            tail_mass: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }

    /// `Σ |φ_n|²` over the retained coefficients.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Largest elementwise modulus difference, padding the shorter vector by zeros.
    pub fn max_abs_diff(&self, other: &FockVector) -> f64 {
        let n = self.len().max(other.len());
        (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(ZERO);
                let b = other.coeffs.get(i).copied().unwrap_or(ZERO);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Dense complex operator on the truncated number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    matrix: Array2<Complex64>,
    hermitian: bool,
}

fn hermitian_within(m: &Array2<Complex64>, tol: f64) -> bool {
    let (r, c) = m.dim();
    if r != c {
        return false;
    }
    for i in 0..r {
        for j in i..c {
            if (m[[i, j]] - m[[j, i]].conj()).norm() > tol {
                return false;
            }
        }
    }
    true
}

impl FockOperator {
    /// Wraps a square matrix; the Hermitian flag is set when the matrix equals
    /// its conjugate transpose within `1e-12` elementwise.
    pub fn new(matrix: Array2<Complex64>) -> Result<Self> {
        let (r, c) = matrix.dim();
        if r != c || r == 0 {
            return Err(Error::Parameter(format!(
                "operator matrix must be square and nonempty, got {r}x{c}"
            )));
        }
        let hermitian = hermitian_within(&matrix, 1e-12);
        Ok(Self { matrix, hermitian })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            matrix: Array2::zeros((dim, dim)),
            hermitian: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: Array2::eye(dim),
            hermitian: true,
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Array2::zeros((values.len(), values.len()));
        for (i, v) in values.iter().enumerate() {
            m[[i, i]] = Complex64::new(*v, 0.0);
        }
        Self {
            matrix: m,
            hermitian: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Array2<Complex64> {
        self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[[i, j]]
    }

    pub fn adjoint(&self) -> Self {
        let m = self.matrix.t().mapv(|z| z.conj());
        Self {
            matrix: m,
            hermitian: self.hermitian,
        }
    }

    pub fn dot(&self, other: &FockOperator) -> Self {
        Self::from_matrix(self.matrix.dot(&other.matrix))
    }

    pub fn add(&self, other: &FockOperator) -> Self {
        Self::from_matrix(&self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &FockOperator) -> Self {
        Self::from_matrix(&self.matrix - &other.matrix)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self::from_matrix(self.matrix.mapv(|v| v * z))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let x = Array1::from(v.to_vec());
        self.matrix.dot(&x).to_vec()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        one_norm(&self.matrix)
    }

    /// `⟨v|A|v⟩`.
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        let av = self.apply(v);
        v.iter().zip(av.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    /// Infallible constructor for square matrices produced internally.
    pub(crate) fn from_matrix(matrix: Array2<Complex64>) -> Self {
        let hermitian = hermitian_within(&matrix, 1e-12);
        Self { matrix, hermitian }
    }

    /// JSON object `{ "shape": [rows, cols], "data": [[re, im], …] }`, row-major.
    pub fn to_json(&self) -> serde_json::Value {
        let (r, c) = self.matrix.dim();
        let data: Vec<[f64; 2]> = self.matrix.iter().map(|z| [z.re, z.im]).collect();
        serde_json::json!({ "shape": [r, c], "data": data })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            shape: [usize; 2],
            data: Vec<[f64; 2]>,
        }
        let raw: Raw = serde_json::from_value(value.clone())?;
        if raw.shape[0] * raw.shape[1] != raw.data.len() {
            return Err(Error::Parameter(
                "operator JSON: shape does not match data length".into(),
            ));
        }
        let entries = raw
            .data
            .iter()
            .map(|p| Complex64::new(p[0], p[1]))
            .collect();
        let m = Array2::from_shape_vec((raw.shape[0], raw.shape[1]), entries)
            .map_err(|e| Error::Parameter(e.to_string()))?;
        Self::new(m)
    }
}

fn one_norm(m: &Array2<Complex64>) -> f64 {
    m.columns()
        .into_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Lowering and raising matrices with `a_{n-1,n} = √n`.
pub fn ladder_matrices(cutoff: &FockCutoff) -> (FockOperator, FockOperator) {
    let d = cutoff.dim();
    let mut a = Array2::zeros((d, d));
    for n in 1..d {
        a[[n - 1, n]] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let a = FockOperator {
        matrix: a,
        hermitian: d == 1,
    };
    let ad = a.adjoint();
    (a, ad)
}

/// `diag(0, 1, …, n_max)`.
pub fn number_operator(cutoff: &FockCutoff) -> FockOperator {
    let v: Vec<f64> = (0..cutoff.dim()).map(|n| n as f64).collect();
    FockOperator::diagonal(&v)
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &FockOperator, b: &FockOperator) -> FockOperator {
    a.dot(b).sub(&b.dot(a))
}

/// Largest 1-norm accepted by [`matrix_exponential`].
pub const EXPM_NORM_LIMIT: f64 = 4096.0;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371_920_351_148_152;

/// `exp(A)` by degree-13 Padé approximation with scaling and squaring.
pub fn matrix_exponential(op: &FockOperator) -> Result<FockOperator> {
    let a = op.matrix();
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Parameter(
            "matrix exponential of a non-finite matrix".into(),
        ));
    }
    let norm = one_norm(a);
    if norm > EXPM_NORM_LIMIT {
        return Err(Error::ExponentialRange {
            norm,
            limit: EXPM_NORM_LIMIT,
        });
    }
    let d = op.dim();
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let scale = Complex64::new(2f64.powi(-s), 0.0);
    let a = a.mapv(|z| z * scale);
    let b = PADE13.map(|c| Complex64::new(c, 0.0));
    let ident: Array2<Complex64> = Array2::eye(d);
    let a2 = a.dot(&a);
    let a4 = a2.dot(&a2);
    let a6 = a4.dot(&a2);
    let inner_u = &a6 * b[13] + &a4 * b[11] + &a2 * b[9];
    let u = a.dot(&(a6.dot(&inner_u) + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + &ident * b[1]));
    let inner_v = &a6 * b[12] + &a4 * b[10] + &a2 * b[8];
    let v = a6.dot(&inner_v) + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + &ident * b[0];
    let p = &v + &u;
    let q = &v - &u;
    let mut r = solve(q, p)?;
    for _ in 0..s {
        r = r.dot(&r);
    }
    Ok(FockOperator::from_matrix(r))
}

/// Solves `A X = B` by LU with partial pivoting.
fn solve(mut a: Array2<Complex64>, mut b: Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = a.nrows();
    for k in 0..n {
        let (piv, pmax) = (k..n)
            .map(|i| (i, a[[i, k]].norm()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pmax == 0.0 {
            return Err(Error::Parameter("singular Padé denominator".into()));
        }
        if piv != k {
            for j in 0..n {
                a.swap([k, j], [piv, j]);
            }
            for j in 0..b.ncols() {
                b.swap([k, j], [piv, j]);
            }
        }
        let inv = ONE / a[[k, k]];
        for i in k + 1..n {
            let f = a[[i, k]] * inv;
            if f == ZERO {
                continue;
            }
            a[[i, k]] = f;
            for j in k + 1..n {
                let t = a[[k, j]];
                a[[i, j]] -= f * t;
            }
            for j in 0..b.ncols() {
                let t = b[[k, j]];
                b[[i, j]] -= f * t;
            }
        }
    }
    for j in 0..b.ncols() {
        for i in (0..n).rev() {
            let mut acc = b[[i, j]];
            for k in i + 1..n {
                acc -= a[[i, k]] * b[[k, j]];
            }
            b[[i, j]] = acc / a[[i, i]];
        }
    }
    Ok(b)
}
