//! Classical entropies: probability vectors, column-stochastic matrices,
//! weighted/relative entropies, and the χ-quantity.
//!
//! All logarithms are base 2. The stochastic convention is COLUMN-stochastic
//! throughout: columns are the probability vectors, and a matrix acts on
//! column distributions as `T·p`. Entries below the support threshold
//! `1e-12` count as zero probability.

use std::fmt;

use crate::error::{arg_err, shape_err, Error, Result};
use crate::linalg::{cast, Scalar};

/// "Zero probability" threshold.
pub const SUPPORT_EPS: f64 = 1e-12;

/// A relative entropy is either a finite value or the distinguished +∞
/// arising from a support violation. Kept as a tagged value rather than a
/// raw float: infinity here is a semantic outcome, not an overflow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RelEntropy<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> RelEntropy<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, RelEntropy::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RelEntropy::Infinite)
    }

    pub fn finite(&self) -> Option<T> {
        match self {
            RelEntropy::Finite(v) => Some(*v),
            RelEntropy::Infinite => None,
        }
    }

    /// Finite value, or an `Internal` error where finiteness is guaranteed.
    pub fn expect_finite(&self, what: &str) -> Result<T> {
        self.finite()
            .ok_or_else(|| Error::Internal(format!("{what}: unexpected infinite relative entropy")))
    }

    /// Collapse to a float, mapping the infinite tag to `T::infinity()`.
    pub fn to_float(&self) -> T {
        match self {
            RelEntropy::Finite(v) => *v,
            RelEntropy::Infinite => T::infinity(),
        }
    }
}

impl<T: Scalar> fmt::Display for RelEntropy<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelEntropy::Finite(v) => write!(f, "{v}"),
            RelEntropy::Infinite => write!(f, "inf"),
        }
    }
}

/// Probability vector: nonnegative entries, renormalized exactly to sum 1 on
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbVec<T> {
    p: Vec<T>,
}

impl<T: Scalar> ProbVec<T> {
    /// Validating constructor: entries in `[-1e-12, 0)` are clamped to 0,
    /// more negative entries are rejected, and the sum must be within
    /// `1e-10` of 1 before exact renormalization.
    pub fn new(vals: &[T]) -> Result<Self> {
        let sum: T = vals.iter().copied().fold(T::zero(), |a, b| a + b);
        if (sum - T::one()).abs() > cast(1e-10) {
            return arg_err(format!("probability vector sums to {sum}, not 1"));
        }
        Self::from_unnormalized(vals)
    }

    /// Nonnegativity check plus exact renormalization; for sampler output
    /// whose sum is only approximately 1.
    pub fn from_unnormalized(vals: &[T]) -> Result<Self> {
        if vals.is_empty() {
            return arg_err("empty probability vector");
        }
        let neg_tol: T = cast(-1e-12);
        let mut p = Vec::with_capacity(vals.len());
        for &v in vals {
            if !v.is_finite() || v < neg_tol {
                return arg_err(format!("invalid probability entry {v}"));
            }
            p.push(if v < T::zero() { T::zero() } else { v });
        }
        let sum: T = p.iter().copied().fold(T::zero(), |a, b| a + b);
        if sum <= T::zero() {
            return arg_err("probability vector sums to zero");
        }
        for v in &mut p {
            *v /= sum;
        }
        Ok(Self { p })
    }

    pub fn uniform(n: usize) -> Self {
        let v = T::one() / cast::<T>(n as f64);
        Self { p: vec![v; n] }
    }

    /// Deterministic unit vector e_i.
    pub fn point_mass(n: usize, i: usize) -> Self {
        let mut p = vec![T::zero(); n];
        p[i] = T::one();
        Self { p }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.p
    }

    pub fn get(&self, i: usize) -> T {
        self.p[i]
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.p.iter().all(|&v| v > cast(SUPPORT_EPS))
    }

    /// Tensor (Kronecker) product of distributions.
    pub fn kron(&self, other: &Self) -> Self {
        let mut p = Vec::with_capacity(self.len() * other.len());
        for &a in &self.p {
            for &b in &other.p {
                p.push(a * b);
            }
        }
        Self { p }
    }
}

/// Column-stochastic square matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct StochMat<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> StochMat<T> {
    /// Validating constructor from row-major data: entries ≥ 0 (tiny
    /// negatives clamped), every column sum within `1e-10` of 1; columns are
    /// then renormalized exactly.
    pub fn new(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return shape_err(format!("stochastic matrix data length {} != {n}²", data.len()));
        }
        let neg_tol: T = cast(-1e-12);
        let mut d = data;
        for v in &mut d {
            if !v.is_finite() || *v < neg_tol {
                return arg_err(format!("invalid stochastic matrix entry {v}"));
            }
            if *v < T::zero() {
                *v = T::zero();
            }
        }
        for j in 0..n {
            let sum: T = (0..n).map(|i| d[i * n + j]).fold(T::zero(), |a, b| a + b);
            if (sum - T::one()).abs() > cast(1e-10) {
                return arg_err(format!("column {j} sums to {sum}, not 1"));
            }
            for i in 0..n {
                d[i * n + j] /= sum;
            }
        }
        Ok(Self { n, data: d })
    }

    pub fn from_cols(cols: &[ProbVec<T>]) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return shape_err("from_cols: columns must have length n");
        }
        let mut data = vec![T::zero(); n * n];
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                data[i * n + j] = c.get(i);
            }
        }
        Ok(Self { n, data })
    }

    /// Internal constructor that skips validation/renormalization; used where
    /// exact arithmetic identities must not be disturbed (e.g. the Kraus
    /// matrix of a channel, convex mixtures).
    pub(crate) fn from_raw_unchecked(n: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Self { n, data }
    }

    /// All entries 1/n.
    pub fn flat(n: usize) -> Self {
        let v = T::one() / cast::<T>(n as f64);
        Self { n, data: vec![v; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn col(&self, j: usize) -> ProbVec<T> {
        ProbVec {
            p: (0..self.n).map(|i| self.get(i, j)).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return shape_err("matmul: dimension mismatch");
        }
        let n = self.n;
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(Self { n, data })
    }

    /// Action on a column distribution, `T·p`.
    pub fn matvec(&self, p: &ProbVec<T>) -> Result<ProbVec<T>> {
        if p.len() != self.n {
            return shape_err("matvec: length mismatch");
        }
        let n = self.n;
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            for j in 0..n {
                out[i] += self.data[i * n + j] * p.get(j);
            }
        }
        Ok(ProbVec { p: out })
    }

    pub fn kron(&self, other: &Self) -> Self {
        let n = self.n * other.n;
        let mut data = vec![T::zero(); n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                for k in 0..other.n {
                    for l in 0..other.n {
                        data[(i * other.n + k) * n + (j * other.n + l)] = a * other.get(k, l);
                    }
                }
            }
        }
        Self { n, data }
    }

    pub fn direct_sum(blocks: &[Self]) -> Result<Self> {
        if blocks.is_empty() {
            return arg_err("direct_sum: empty block list");
        }
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut data = vec![T::zero(); n * n];
        let mut off = 0usize;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    data[(off + i) * n + (off + j)] = b.get(i, j);
                }
            }
            off += b.n;
        }
        Ok(Self { n, data })
    }

    /// Convex combination Σ wᵢ·Bᵢ; weights need not be pre-normalized.
    pub fn mix(weights: &[T], mats: &[Self]) -> Result<Self> {
        if weights.len() != mats.len() || mats.is_empty() {
            return arg_err("mix: weights/matrices mismatch");
        }
        let n = mats[0].n;
        if mats.iter().any(|m| m.n != n) {
            return shape_err("mix: dimension mismatch");
        }
        let wsum: T = weights.iter().copied().fold(T::zero(), |a, b| a + b);
        let mut data = vec![T::zero(); n * n];
        for (w, m) in weights.iter().zip(mats) {
            let w = *w / wsum;
            for (d, v) in data.iter_mut().zip(&m.data) {
                *d += w * *v;
            }
        }
        Ok(Self { n, data })
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        debug_assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), |a, b| a.max(b))
    }
}

/// Stochasticity classification flags. The implications
/// permutation ⇒ bistochastic ⇒ stochastic always hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StochClass {
    pub is_stochastic: bool,
    pub is_bistochastic: bool,
    pub is_permutation: bool,
}

/// Classify a square real matrix at tolerance `1e-10`.
pub fn classify<T: Scalar>(rows: usize, cols: usize, data: &[T]) -> Result<StochClass> {
    if rows != cols {
        return shape_err("classify: non-square matrix");
    }
    if data.len() != rows * cols {
        return shape_err("classify: data length mismatch");
    }
    let n = rows;
    let tol: T = cast(1e-10);
    let nonneg = data.iter().all(|&v| v >= -tol);
    let mut col_ok = true;
    let mut row_ok = true;
    for k in 0..n {
        let cs: T = (0..n).map(|i| data[i * n + k]).fold(T::zero(), |a, b| a + b);
        let rs: T = (0..n).map(|j| data[k * n + j]).fold(T::zero(), |a, b| a + b);
        col_ok = col_ok && (cs - T::one()).abs() <= tol;
        row_ok = row_ok && (rs - T::one()).abs() <= tol;
    }
    let is_stochastic = nonneg && col_ok;
    let is_bistochastic = is_stochastic && row_ok;
    let zero_one = data
        .iter()
        .all(|&v| v.abs() <= tol || (v - T::one()).abs() <= tol);
    let is_permutation = is_bistochastic && zero_one;
    Ok(StochClass {
        is_stochastic,
        is_bistochastic,
        is_permutation,
    })
}

impl<T: Scalar> StochMat<T> {
    pub fn classify(&self) -> StochClass {
        classify(self.n, self.n, &self.data).expect("square by construction")
    }
}

fn xlog2x<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        x * x.log2()
    } else {
        T::zero()
    }
}

/// Shannon entropy in bits, with 0·log₂0 = 0.
pub fn shannon_entropy<T: Scalar>(p: &ProbVec<T>) -> T {
    -p.as_slice().iter().map(|&x| xlog2x(x)).fold(T::zero(), |a, b| a + b)
}

/// Relative entropy H(p‖q) in bits; +∞ unless supp(p) ⊆ supp(q).
pub fn relative_entropy_vec<T: Scalar>(p: &ProbVec<T>, q: &ProbVec<T>) -> Result<RelEntropy<T>> {
    if p.len() != q.len() {
        return shape_err("relative_entropy_vec: length mismatch");
    }
    let eps: T = cast(SUPPORT_EPS);
    let mut acc = T::zero();
    for (&pi, &qi) in p.as_slice().iter().zip(q.as_slice()) {
        if pi > eps {
            if qi <= eps {
                return Ok(RelEntropy::Infinite);
            }
            acc += pi * (pi / qi).log2();
        }
    }
    Ok(RelEntropy::Finite(acc))
}

/// Weighted entropy H_p(T) = Σ_ν p_ν H(t_ν).
pub fn weighted_entropy<T: Scalar>(t: &StochMat<T>, p: &ProbVec<T>) -> Result<T> {
    if p.len() != t.dim() {
        return shape_err("weighted_entropy: dimension mismatch");
    }
    let mut acc = T::zero();
    for j in 0..t.dim() {
        let w = p.get(j);
        if w > T::zero() {
            acc += w * shannon_entropy(&t.col(j));
        }
    }
    Ok(acc)
}

/// Uniform-weight entropy H(T) = (1/N) Σ_ν H(t_ν).
pub fn matrix_entropy<T: Scalar>(t: &StochMat<T>) -> T {
    weighted_entropy(t, &ProbVec::uniform(t.dim())).expect("uniform weights conform")
}

/// Relative entropy of stochastic matrices, H_p(A‖B) = Σ_ν p_ν H(a_ν‖b_ν).
pub fn relative_entropy_stoch<T: Scalar>(
    a: &StochMat<T>,
    b: &StochMat<T>,
    p: &ProbVec<T>,
) -> Result<RelEntropy<T>> {
    if a.dim() != b.dim() || p.len() != a.dim() {
        return shape_err("relative_entropy_stoch: dimension mismatch");
    }
    let mut acc = T::zero();
    for j in 0..a.dim() {
        let w = p.get(j);
        if w > T::zero() {
            match relative_entropy_vec(&a.col(j), &b.col(j))? {
                RelEntropy::Finite(h) => acc += w * h,
                RelEntropy::Infinite => return Ok(RelEntropy::Infinite),
            }
        }
    }
    Ok(RelEntropy::Finite(acc))
}

/// χ-quantity χ_p({λᵢ, B⁽ⁱ⁾}) = Σᵢ λᵢ H_p(B⁽ⁱ⁾ ‖ B̄), B̄ = Σᵢ λᵢ B⁽ⁱ⁾.
/// Always finite: the support of B̄ contains each B⁽ⁱ⁾'s support where λᵢ > 0.
pub fn chi_quantity<T: Scalar>(
    weights: &ProbVec<T>,
    mats: &[StochMat<T>],
    p: &ProbVec<T>,
) -> Result<T> {
    if weights.len() != mats.len() || mats.is_empty() {
        return shape_err("chi_quantity: weights/matrix count mismatch");
    }
    let n = mats[0].dim();
    if mats.iter().any(|m| m.dim() != n) || p.len() != n {
        return shape_err("chi_quantity: dimension mismatch");
    }
    let avg = StochMat::mix(weights.as_slice(), mats)?;
    let eps: T = cast(SUPPORT_EPS);
    let mut acc = T::zero();
    for (i, m) in mats.iter().enumerate() {
        let w = weights.get(i);
        if w > eps {
            acc += w * relative_entropy_stoch(m, &avg, p)?.expect_finite("chi_quantity")?;
        }
    }
    Ok(acc)
}

/// Majorization of sorted partial sums with slack `tol`; totals are the
/// caller's business.
pub(crate) fn majorizes_slices<T: Scalar>(p: &[T], q: &[T], tol: T) -> bool {
    let mut ps: Vec<T> = p.to_vec();
    let mut qs: Vec<T> = q.to_vec();
    ps.sort_by(|a, b| b.partial_cmp(a).unwrap());
    qs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut sp = T::zero();
    let mut sq = T::zero();
    for (a, b) in ps.iter().zip(&qs) {
        sp += *a;
        sq += *b;
        if sp > sq + tol {
            return false;
        }
    }
    true
}

/// p ≺ q: descending partial sums of p dominated by those of q (within
/// `1e-10`), totals equal by normalization.
pub fn vector_majorizes<T: Scalar>(p: &ProbVec<T>, q: &ProbVec<T>) -> Result<bool> {
    if p.len() != q.len() {
        return shape_err("vector_majorizes: length mismatch");
    }
    Ok(majorizes_slices(p.as_slice(), q.as_slice(), cast(1e-10)))
}
