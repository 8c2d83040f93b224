//! Dense complex matrix kernel.
//!
//! Row-major storage, generic over the real scalar (`f32`/`f64` through
//! [`Scalar`]); everything above this module uses the `f64` aliases exported
//! from the crate root. Operations are pure and values immutable, so the
//! whole module is trivially thread-safe.

use std::fmt;
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};

use crate::error::{arg_err, shape_err, Error, Result};

/// Real scalar the kernel is generic over.
pub trait Scalar:
    Float + FloatConst + NumAssign + Sum + fmt::Debug + fmt::Display + Default + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + NumAssign
        + Sum
        + fmt::Debug
        + fmt::Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Cast an `f64` tolerance/constant into the working scalar.
pub(crate) fn cast<T: Scalar>(x: f64) -> T {
    T::from(x).expect("constant representable in scalar type")
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> Matrix<T> {
    /// Build from row-major data, checking length and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return shape_err(format!(
                "matrix data length {} != {}x{}",
                data.len(),
                rows,
                cols
            ));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return arg_err("matrix entries must be finite");
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_parts(rows, cols, vec![Complex::new(T::zero(), T::zero()); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_parts(rows, cols, data)
    }

    /// Real matrix from an `f64`-valued generator.
    pub fn from_real_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Self::from_fn(rows, cols, |i, j| Complex::new(f(i, j), T::zero()))
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

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return shape_err("add: shape mismatch");
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_parts(self.rows, self.cols, data))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return shape_err("sub: shape mismatch");
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_parts(self.rows, self.cols, data))
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Self::from_parts(self.rows, self.cols, self.data.iter().map(|a| a * k).collect())
    }

    pub fn scale_re(&self, k: T) -> Self {
        self.scale(Complex::new(k, T::zero()))
    }

    /// Standard matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return shape_err(format!(
                "matmul: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut data = vec![Complex::new(T::zero(), T::zero()); m * n];
        for i in 0..m {
            for l in 0..k {
                let a = self.data[i * k + l];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] = data[i * n + j] + a * other.data[l * n + j];
                }
            }
        }
        Ok(Self::from_parts(m, n, data))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        Self::from_parts(self.rows, self.cols, self.data.iter().map(|z| z.conj()).collect())
    }

    /// Kronecker product, block convention
    /// `(a⊗b)[(i·b.rows+k),(j·b.cols+l)] = a[i,j]·b[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![Complex::new(T::zero(), T::zero()); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        data[(i * other.rows + k) * cols + (j * other.cols + l)] =
                            a * other.get(k, l);
                    }
                }
            }
        }
        Self::from_parts(rows, cols, data)
    }

    /// Block-diagonal assembly; zeros elsewhere. Rectangular blocks allowed.
    pub fn direct_sum(blocks: &[Self]) -> Result<Self> {
        if blocks.is_empty() {
            return arg_err("direct_sum: empty block list");
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut ro, mut co) = (0usize, 0usize);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j));
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        Ok(out)
    }

    /// Entry-wise (Schur/Hadamard) product.
    pub fn schur_product(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return shape_err("schur_product: shape mismatch");
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self::from_parts(self.rows, self.cols, data))
    }

    pub fn trace(&self) -> Result<Complex<T>> {
        if !self.is_square() {
            return shape_err("trace: non-square matrix");
        }
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..self.rows {
            t = t + self.get(i, i);
        }
        Ok(t)
    }

    pub fn fro_norm(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), |a, b| a.max(b))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), |a, b| a.max(b))
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Hilbert–Schmidt inner product `Tr(A†B)`.
    pub fn hs_inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.rows != other.rows || self.cols != other.cols {
            return shape_err("hs_inner: shape mismatch");
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for (a, b) in self.data.iter().zip(&other.data) {
            acc = acc + a.conj() * b;
        }
        Ok(acc)
    }

    /// Matrix-vector action on a complex column vector.
    pub fn matvec(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.cols {
            return shape_err("matvec: length mismatch");
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 0..self.cols {
                acc = acc + self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvector `k` is column `k` of `eigenvectors`.
#[derive(Clone, Debug)]
pub struct EigDecomposition<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: Matrix<T>,
}

impl<T: Scalar> EigDecomposition<T> {
    /// `V·diag(λ)·V†`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let n = self.eigenvalues.len();
        Matrix::from_fn(n, n, |i, j| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                acc = acc
                    + self.eigenvectors.get(i, k)
                        * self.eigenvectors.get(j, k).conj()
                        * Complex::new(self.eigenvalues[k], T::zero());
            }
            acc
        })
    }

    /// Eigenvector `k` as a column vector.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.eigenvalues.len())
            .map(|i| self.eigenvectors.get(i, k))
            .collect()
    }
}

/// Hermitian eigensolver: cyclic Jacobi with complex plane rotations.
///
/// The input is symmetrized as `(h + h†)/2` after a Hermiticity check at
/// tolerance `1e-10`. Off-diagonal entries below `1e-14` (relative to the
/// matrix norm) are left alone; at most 100 sweeps.
pub fn hermitian_eigh<T: Scalar>(h: &Matrix<T>) -> Result<EigDecomposition<T>> {
    if !h.is_square() {
        return shape_err("hermitian_eigh: non-square matrix");
    }
    let n = h.rows();
    let herm_tol: T = cast(1e-10);
    for i in 0..n {
        for j in i..n {
            if (h.get(i, j) - h.get(j, i).conj()).norm() > herm_tol {
                return arg_err("hermitian_eigh: matrix is not Hermitian within 1e-10");
            }
        }
    }
    // Symmetrize to kill rounding-level asymmetry.
    let half = Complex::new(cast::<T>(0.5), T::zero());
    let mut a = h.add(&h.dagger())?.scale(half);
    let mut v = Matrix::<T>::identity(n);

    if n == 0 {
        return Ok(EigDecomposition {
            eigenvalues: vec![],
            eigenvectors: v,
        });
    }

    let scale = T::one().max(a.max_abs());
    let thresh = scale * cast::<T>(1e-14).max(T::epsilon());

    let mut converged = false;
    for _sweep in 0..100 {
        let mut changed = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a.get(p, q);
                let absg = g.norm();
                if absg <= thresh {
                    continue;
                }
                changed = true;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let phase = g / Complex::new(absg, T::zero());
                let tau = (aqq - app) / (cast::<T>(2.0) * absg);
                // Smaller-magnitude root of t² − 2τt − 1 = 0.
                let t = if tau >= T::zero() {
                    -T::one() / (tau + (tau * tau + T::one()).sqrt())
                } else {
                    T::one() / (-tau + (tau * tau + T::one()).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let cs = Complex::new(c, T::zero());
                let sp = phase * Complex::new(s, T::zero()); // s·e^{iφ}
                let spc = sp.conj(); // s·e^{−iφ}

                // A ← A·U with U = [[c, −s·e^{iφ}], [s·e^{−iφ}, c]] on (p,q).
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * cs + aiq * spc);
                    a.set(i, q, aiq * cs - aip * sp);
                }
                // A ← U†·A.
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * cs + aqj * sp);
                    a.set(q, j, aqj * cs - apj * spc);
                }
                // V ← V·U.
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * cs + viq * spc);
                    v.set(i, q, viq * cs - vip * sp);
                }
            }
        }
        if !changed {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Internal(
            "hermitian_eigh: Jacobi did not converge in 100 sweeps".into(),
        ));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let eigenvalues: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = Matrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    Ok(EigDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Clamp an eigenvalue spectrum for entropy use: values in `[-1e-10, 0)` are
/// set to 0, anything below `-1e-10` is rejected.
pub fn clamp_spectrum<T: Scalar>(eigenvalues: &[T]) -> Result<Vec<T>> {
    let floor: T = cast(-1e-10);
    let mut out = Vec::with_capacity(eigenvalues.len());
    for &l in eigenvalues {
        if l < floor {
            return arg_err(format!("negative eigenvalue {l} below -1e-10"));
        }
        out.push(if l < T::zero() { T::zero() } else { l });
    }
    Ok(out)
}

/// Permute the tensor legs of a square matrix living on a tensor-product
/// space. `dims` are the factor dimensions of the current index ordering and
/// `perm[k]` names which old axis lands at new position `k`; the same
/// permutation is applied to row and column indices.
pub fn reorder_tensor_legs<T: Scalar>(
    m: &Matrix<T>,
    dims: &[usize],
    perm: &[usize],
) -> Result<Matrix<T>> {
    let total: usize = dims.iter().product();
    if m.rows() != total || m.cols() != total {
        return shape_err("reorder_tensor_legs: dims do not match matrix size");
    }
    if perm.len() != dims.len() {
        return shape_err("reorder_tensor_legs: perm length mismatch");
    }
    let k = dims.len();
    let new_dims: Vec<usize> = perm.iter().map(|&a| dims[a]).collect();
    // Map an old flat index to the new flat index.
    let map = |old: usize| -> usize {
        let mut digits = vec![0usize; k];
        let mut rem = old;
        for a in (0..k).rev() {
            digits[a] = rem % dims[a];
            rem /= dims[a];
        }
        let mut out = 0usize;
        for (pos, &axis) in perm.iter().enumerate() {
            out = out * new_dims[pos] + digits[axis];
        }
        out
    };
    let mut out = Matrix::zeros(total, total);
    for i in 0..total {
        let ni = map(i);
        for j in 0..total {
            out.set(ni, map(j), m.get(i, j));
        }
    }
    Ok(out)
}
