//! Density matrices, Kraus-form channels, Jamiołkowski operators, the
//! quantum entropies, the Kraus matrix of a channel, and spectral
//! majorization. Everything here is pinned to `f64`.

use num_complex::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::entropy::{majorizes_slices, ProbVec, RelEntropy, StochMat};
use crate::error::{arg_err, shape_err, Result};
use crate::linalg::{clamp_spectrum, hermitian_eigh, Matrix};
use crate::rng::rng_from;

type CM = Matrix<f64>;
type C = Complex<f64>;

const HERM_TOL: f64 = 1e-10;
const SUPP_TOL: f64 = 1e-10;
const KRAUS_ZERO_TOL: f64 = 1e-12;
const COMPLETENESS_TOL: f64 = 1e-9;

fn cx(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

/// Positive semi-definite unit-trace operator.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: CM,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-10), unit trace (1e-10), and positivity
    /// (eigenvalues ≥ −1e-10).
    pub fn new(mat: CM) -> Result<Self> {
        if !mat.is_square() {
            return shape_err("density matrix must be square");
        }
        if !mat.is_hermitian(HERM_TOL) {
            return arg_err("density matrix is not Hermitian within 1e-10");
        }
        let tr = mat.trace()?;
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return arg_err(format!("density matrix trace {} != 1", tr.re));
        }
        let eig = hermitian_eigh(&mat)?;
        clamp_spectrum(&eig.eigenvalues)
            .map_err(|_| crate::error::Error::Argument("density matrix is not PSD".into()))?;
        Ok(Self { mat })
    }

    /// Trusted constructor for operators PSD by construction (channel
    /// outputs on states, normalized Jamiołkowski operators, `GG†/Tr`);
    /// skips the validating eigendecomposition.
    pub(crate) fn from_psd_unchecked(mat: CM) -> Self {
        debug_assert!(mat.is_hermitian(HERM_TOL));
        Self { mat }
    }

    /// Diagonal state from a classical distribution.
    pub fn from_diag(p: &ProbVec<f64>) -> Self {
        let n = p.len();
        Self {
            mat: CM::from_real_fn(n, n, |i, j| if i == j { p.get(i) } else { 0.0 }),
        }
    }

    /// Pure state |v⟩⟨v| from an (unnormalized) state vector.
    pub fn pure_state(v: &[C]) -> Result<Self> {
        let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return arg_err("pure_state: zero vector");
        }
        let n = v.len();
        Ok(Self {
            mat: CM::from_fn(n, n, |i, j| v[i] * v[j].conj() / norm2),
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &CM {
        &self.mat
    }

    /// Clamped spectrum, ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        clamp_spectrum(&hermitian_eigh(&self.mat)?.eigenvalues)
    }
}

/// Completely positive map in Kraus form, `Φ(X) = Σ_j M_j X M_j†`.
///
/// Kraus blocks are `out_dim × in_dim`; operators of Frobenius norm below
/// `1e-12` are dropped on construction (they contribute nothing to the map,
/// its Jamiołkowski operator, or its Kraus matrix).
#[derive(Clone, Debug)]
pub struct KrausChannel {
    kraus: Vec<CM>,
    in_dim: usize,
    out_dim: usize,
}

impl KrausChannel {
    pub fn new(kraus: Vec<CM>) -> Result<Self> {
        if kraus.is_empty() {
            return arg_err("channel needs at least one Kraus operator");
        }
        let out_dim = kraus[0].rows();
        let in_dim = kraus[0].cols();
        if kraus.iter().any(|m| m.rows() != out_dim || m.cols() != in_dim) {
            return shape_err("all Kraus operators must share one shape");
        }
        let kept: Vec<CM> = kraus
            .into_iter()
            .filter(|m| m.fro_norm() >= KRAUS_ZERO_TOL)
            .collect();
        if kept.is_empty() {
            return arg_err("channel has only zero Kraus operators");
        }
        Ok(Self {
            kraus: kept,
            in_dim,
            out_dim,
        })
    }

    pub fn kraus(&self) -> &[CM] {
        &self.kraus
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn is_square(&self) -> bool {
        self.in_dim == self.out_dim
    }

    /// `Σ M†M` (the completeness sum).
    fn completeness_sum(&self) -> CM {
        let mut acc = CM::zeros(self.in_dim, self.in_dim);
        for m in &self.kraus {
            acc = acc.add(&m.dagger().matmul(m).unwrap()).unwrap();
        }
        acc
    }

    /// Trace-preserving: `Σ M†M = I` within 1e-9.
    pub fn is_stochastic(&self) -> bool {
        self.completeness_sum()
            .max_abs_diff(&CM::identity(self.in_dim))
            <= COMPLETENESS_TOL
    }

    /// Trace-preserving and unital: additionally `Σ MM† = I` within 1e-9.
    pub fn is_bistochastic(&self) -> bool {
        if !self.is_stochastic() || self.in_dim != self.out_dim {
            return false;
        }
        let mut acc = CM::zeros(self.out_dim, self.out_dim);
        for m in &self.kraus {
            acc = acc.add(&m.matmul(&m.dagger()).unwrap()).unwrap();
        }
        acc.max_abs_diff(&CM::identity(self.out_dim)) <= COMPLETENESS_TOL
    }

    /// `Φ(X) = Σ M_j X M_j†`.
    pub fn apply(&self, x: &CM) -> Result<CM> {
        if x.rows() != self.in_dim || x.cols() != self.in_dim {
            return shape_err("apply: operator must be in_dim × in_dim");
        }
        let mut acc = CM::zeros(self.out_dim, self.out_dim);
        for m in &self.kraus {
            acc = acc.add(&m.matmul(x)?.matmul(&m.dagger())?)?;
        }
        Ok(acc)
    }

    /// Channel action on a state; the output of a stochastic CP map on a
    /// state is a state by construction.
    pub fn apply_density(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if !self.is_stochastic() {
            return arg_err("apply_density: channel is not trace-preserving");
        }
        Ok(DensityMatrix::from_psd_unchecked(self.apply(rho.mat())?))
    }

    /// `Φ∘Ψ`, Kraus list `{M_i N_j}`.
    pub fn compose(&self, psi: &KrausChannel) -> Result<KrausChannel> {
        if psi.out_dim != self.in_dim {
            return shape_err("compose: inner dimensions do not match");
        }
        let mut kraus = Vec::with_capacity(self.kraus.len() * psi.kraus.len());
        for m in &self.kraus {
            for n in &psi.kraus {
                kraus.push(m.matmul(n)?);
            }
        }
        KrausChannel::new(kraus)
    }

    /// `Φ⊗Ψ`, Kraus list `{M_i ⊗ N_j}`.
    pub fn tensor(&self, psi: &KrausChannel) -> KrausChannel {
        let kraus = self
            .kraus
            .iter()
            .flat_map(|m| psi.kraus.iter().map(move |n| m.kron(n)))
            .collect();
        KrausChannel::new(kraus).expect("tensor of nonempty channels is nonempty")
    }

    /// Kraus list `{M_jᵗ}` (plain transpose, no conjugation).
    pub fn transpose_channel(&self) -> KrausChannel {
        KrausChannel::new(self.kraus.iter().map(|m| m.transpose()).collect())
            .expect("transpose preserves norms")
    }

    /// Hilbert–Schmidt adjoint, Kraus list `{M_j†}`:
    /// `⟨Φ†(X), Y⟩ = ⟨X, Φ(Y)⟩`.
    pub fn adjoint_channel(&self) -> KrausChannel {
        KrausChannel::new(self.kraus.iter().map(|m| m.dagger()).collect())
            .expect("adjoint preserves norms")
    }

    /// Rewrite the Kraus list through an `m×m` unitary after zero-padding it
    /// to length `m`: `N_i = Σ_j u_{ij} M_j`. The represented map is
    /// unchanged.
    pub fn remix(&self, u: &CM) -> Result<KrausChannel> {
        let m = u.rows();
        if !u.is_square() || m < self.kraus.len() {
            return arg_err("remix: unitary must be square with size >= Kraus count");
        }
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let mut acc = CM::zeros(self.out_dim, self.in_dim);
            for (j, mj) in self.kraus.iter().enumerate() {
                acc = acc.add(&mj.scale(u.get(i, j)))?;
            }
            out.push(acc);
        }
        KrausChannel::new(out)
    }

    /// Identity channel on dimension `n`.
    pub fn identity(n: usize) -> KrausChannel {
        KrausChannel::new(vec![CM::identity(n)]).expect("identity is nonzero")
    }

    /// Single-Kraus channel `X ↦ UXU†`.
    pub fn unitary(u: &CM) -> Result<KrausChannel> {
        if !u.is_square() {
            return shape_err("unitary channel: matrix must be square");
        }
        let n = u.rows();
        if u.dagger().matmul(u)?.max_abs_diff(&CM::identity(n)) > COMPLETENESS_TOL {
            return arg_err("unitary channel: matrix is not unitary within 1e-9");
        }
        KrausChannel::new(vec![u.clone()])
    }

    /// Dephasing channel, Kraus list `{|i⟩⟨i|}`; kills off-diagonals.
    pub fn dephasing(n: usize) -> KrausChannel {
        let kraus = (0..n)
            .map(|i| CM::from_real_fn(n, n, |r, c| if r == i && c == i { 1.0 } else { 0.0 }))
            .collect();
        KrausChannel::new(kraus).expect("projectors are nonzero")
    }

    /// Fully depolarizing channel, Kraus list `{n^{-1/2}|m⟩⟨μ|}`;
    /// sends every state to `I/n`.
    pub fn depolarizing(n: usize) -> KrausChannel {
        let s = 1.0 / (n as f64).sqrt();
        let mut kraus = Vec::with_capacity(n * n);
        for m in 0..n {
            for mu in 0..n {
                kraus.push(CM::from_real_fn(n, n, |r, c| {
                    if r == m && c == mu {
                        s
                    } else {
                        0.0
                    }
                }));
            }
        }
        KrausChannel::new(kraus).expect("depolarizing Kraus list is nonzero")
    }
}

/// Convex mixture `Σ λ_k Φ_k` realized by scaling each Kraus list by `√λ_k`
/// and concatenating.
pub fn mix_channels(weights: &[f64], channels: &[KrausChannel]) -> Result<KrausChannel> {
    if weights.len() != channels.len() || channels.is_empty() {
        return arg_err("mix_channels: weights/channel count mismatch");
    }
    let (din, dout) = (channels[0].in_dim, channels[0].out_dim);
    if channels.iter().any(|c| c.in_dim != din || c.out_dim != dout) {
        return shape_err("mix_channels: dimension mismatch");
    }
    if weights.iter().any(|&w| w < 0.0) {
        return arg_err("mix_channels: negative weight");
    }
    let mut kraus = Vec::new();
    for (w, ch) in weights.iter().zip(channels) {
        let s = cx(w.sqrt(), 0.0);
        for m in &ch.kraus {
            kraus.push(m.scale(s));
        }
    }
    KrausChannel::new(kraus)
}

/// Jamiołkowski operator `J(Φ) = (Φ⊗id)(Σ_{ij}|ii⟩⟨jj|)` with leg order
/// (output system, ancilla); equals `Σ_j vec(M_j)vec(M_j)†` where `vec`
/// flattens row-major.
#[derive(Clone, Debug)]
pub struct JamiolkowskiOperator {
    mat: CM,
    dim: usize,
}

impl JamiolkowskiOperator {
    pub fn mat(&self) -> &CM {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The channel state `ρ(Φ) = J(Φ)/N` (valid for stochastic channels).
    /// The operator is PSD by construction; only the trace is revalidated.
    pub fn state(&self) -> Result<DensityMatrix> {
        let mat = self.mat.scale_re(1.0 / self.dim as f64);
        let tr = mat.trace()?.re;
        if (tr - 1.0).abs() > 1e-9 {
            return arg_err(format!(
                "channel state: J/N has trace {tr}; channel is not trace-preserving"
            ));
        }
        Ok(DensityMatrix::from_psd_unchecked(mat))
    }
}

fn vec_row_major(m: &CM) -> Vec<C> {
    m.data().to_vec()
}

pub fn jamiolkowski(phi: &KrausChannel) -> Result<JamiolkowskiOperator> {
    if !phi.is_square() {
        return arg_err("jamiolkowski: channel must be square");
    }
    let n = phi.in_dim;
    let nn = n * n;
    let mut mat = CM::zeros(nn, nn);
    for m in &phi.kraus {
        let v = vec_row_major(m);
        for a in 0..nn {
            for b in 0..nn {
                mat.set(a, b, mat.get(a, b) + v[a] * v[b].conj());
            }
        }
    }
    Ok(JamiolkowskiOperator { mat, dim: n })
}

/// `−Σ λ log₂ λ` over the clamped spectrum.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spec = rho.spectrum()?;
    Ok(-spec
        .iter()
        .map(|&l| if l > 0.0 { l * l.log2() } else { 0.0 })
        .sum::<f64>())
}

/// `S(ρ‖σ) = Tr ρ(log₂ρ − log₂σ)`; +∞ unless supp(ρ) ⊆ supp(σ)
/// (eigenvalue support threshold 1e-10).
pub fn quantum_relative_entropy(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<RelEntropy<f64>> {
    if rho.dim() != sigma.dim() {
        return shape_err("quantum_relative_entropy: dimension mismatch");
    }
    let n = rho.dim();
    let spec_rho = rho.spectrum()?;
    let tr_rho_log_rho: f64 = spec_rho
        .iter()
        .map(|&l| if l > SUPP_TOL { l * l.log2() } else { 0.0 })
        .sum();

    let eig_sigma = hermitian_eigh(sigma.mat())?;
    let spec_sigma = clamp_spectrum(&eig_sigma.eigenvalues)?;
    let mut tr_rho_log_sigma = 0.0;
    let mut escaped_mass = 0.0;
    for j in 0..n {
        let v = eig_sigma.eigenvector(j);
        let rv = rho.mat().matvec(&v)?;
        let w: f64 = v.iter().zip(&rv).map(|(a, b)| (a.conj() * b).re).sum();
        let w = w.max(0.0);
        if spec_sigma[j] > SUPP_TOL {
            tr_rho_log_sigma += w * spec_sigma[j].log2();
        } else {
            escaped_mass += w;
        }
    }
    if escaped_mass > SUPP_TOL {
        return Ok(RelEntropy::Infinite);
    }
    Ok(RelEntropy::Finite(tr_rho_log_rho - tr_rho_log_sigma))
}

/// `S^map(Φ) = S(J(Φ)/N)`, in `[0, 2log₂N]`.
pub fn map_entropy(phi: &KrausChannel) -> Result<f64> {
    if !phi.is_square() || !phi.is_stochastic() {
        return arg_err("map_entropy: channel must be square and stochastic");
    }
    von_neumann_entropy(&jamiolkowski(phi)?.state()?)
}

/// `S(Φ‖Ψ) = S(ρ(Φ)‖ρ(Ψ))` on the normalized Jamiołkowski states.
pub fn channel_relative_entropy(
    phi: &KrausChannel,
    psi: &KrausChannel,
) -> Result<RelEntropy<f64>> {
    if !phi.is_square() || !psi.is_square() || !phi.is_stochastic() || !psi.is_stochastic() {
        return arg_err("channel_relative_entropy: both channels must be square and stochastic");
    }
    if phi.in_dim != psi.in_dim {
        return shape_err("channel_relative_entropy: dimension mismatch");
    }
    quantum_relative_entropy(&jamiolkowski(phi)?.state()?, &jamiolkowski(psi)?.state()?)
}

/// Kraus matrix `B(Φ) = Σ_μ M_μ • M_μ*`, entries `b_{ij} = Σ_μ |m^μ_{ij}|²`.
/// Column-stochastic when `Φ` is stochastic, bistochastic when `Φ` is.
pub fn kraus_matrix(phi: &KrausChannel) -> Result<StochMat<f64>> {
    if !phi.is_square() {
        return shape_err("kraus_matrix: channel must be square");
    }
    let n = phi.in_dim;
    let mut data = vec![0.0; n * n];
    for m in &phi.kraus {
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] += m.get(i, j).norm_sqr();
            }
        }
    }
    Ok(StochMat::from_raw_unchecked(n, data))
}

/// Lift a stochastic matrix `b` to the channel with Kraus list
/// `{√b_{mi} |m⟩⟨i|}`; its Jamiołkowski operator is diagonal with entries
/// `b_{mi}` and `kraus_matrix` recovers `b` exactly.
pub fn channel_from_stochastic_matrix(b: &StochMat<f64>) -> Result<KrausChannel> {
    if !b.classify().is_stochastic {
        return arg_err("channel_from_stochastic_matrix: matrix is not stochastic");
    }
    let n = b.dim();
    let mut kraus = Vec::new();
    for m in 0..n {
        for i in 0..n {
            let v = b.get(m, i);
            if v > 0.0 {
                let s = v.sqrt();
                kraus.push(CM::from_real_fn(n, n, |r, c| {
                    if r == m && c == i {
                        s
                    } else {
                        0.0
                    }
                }));
            }
        }
    }
    KrausChannel::new(kraus)
}

/// Spectral majorization `x ≺ y`: eigenvalues of `x` dominated by those of
/// `y` in sorted partial sums (slack 1e-8 on the spectral path). Traces must
/// agree within 1e-9.
pub fn spectral_majorizes(x: &CM, y: &CM) -> Result<bool> {
    if x.rows() != y.rows() || !x.is_square() || !y.is_square() {
        return shape_err("spectral_majorizes: need square matrices of equal dimension");
    }
    if !x.is_hermitian(HERM_TOL) || !y.is_hermitian(HERM_TOL) {
        return arg_err("spectral_majorizes: inputs must be Hermitian");
    }
    let tx = x.trace()?.re;
    let ty = y.trace()?.re;
    if (tx - ty).abs() > 1e-9 {
        return arg_err(format!("spectral_majorizes: traces differ ({tx} vs {ty})"));
    }
    let sx = hermitian_eigh(x)?.eigenvalues;
    let sy = hermitian_eigh(y)?.eigenvalues;
    Ok(majorizes_slices(&sx, &sy, 1e-8))
}

// ---------------------------------------------------------------------------
// Samplers.
// ---------------------------------------------------------------------------

fn sample_gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CM {
    CM::from_fn(rows, cols, |_, _| {
        cx(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Orthonormalize the columns of a tall matrix (modified Gram–Schmidt with
/// one re-orthogonalization pass).
fn orthonormalize_columns(g: &CM) -> CM {
    let (rows, cols) = (g.rows(), g.cols());
    let mut v: Vec<Vec<C>> = (0..cols)
        .map(|j| (0..rows).map(|i| g.get(i, j)).collect())
        .collect();
    for j in 0..cols {
        for _pass in 0..2 {
            for k in 0..j {
                let proj: C = v[k]
                    .iter()
                    .zip(&v[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for i in 0..rows {
                    let correction = proj * v[k][i];
                    v[j][i] -= correction;
                }
            }
        }
        let norm: f64 = v[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v[j] {
            *z /= norm;
        }
    }
    CM::from_fn(rows, cols, |i, j| v[j][i])
}

/// Random stochastic channel: orthonormalize a `(k·n)×n` Gaussian matrix
/// into an isometry and slice it into `k` Kraus blocks.
pub fn sample_channel(n: usize, kraus_count: usize, rng: &mut ChaCha8Rng) -> KrausChannel {
    let iso = orthonormalize_columns(&sample_gaussian_matrix(kraus_count * n, n, rng));
    let kraus: Vec<CM> = (0..kraus_count)
        .map(|b| CM::from_fn(n, n, |i, j| iso.get(b * n + i, j)))
        .collect();
    KrausChannel::new(kraus).expect("isometry blocks are nonzero")
}

pub fn random_channel(n: usize, kraus_count: usize, seed: u64) -> Result<KrausChannel> {
    if n == 0 || kraus_count == 0 {
        return arg_err("random_channel: n and kraus_count must be >= 1");
    }
    Ok(sample_channel(n, kraus_count, &mut rng_from(seed, &[0x4348]))) // "CH"
}

/// Haar-ish random unitary (orthonormalized square Gaussian).
pub fn sample_unitary(n: usize, rng: &mut ChaCha8Rng) -> CM {
    orthonormalize_columns(&sample_gaussian_matrix(n, n, rng))
}

/// Random bistochastic channel: convex mixture of `terms` unitary
/// conjugations (Kraus list `{√λ_i U_i}`).
pub fn sample_mixed_unitary_channel(n: usize, terms: usize, rng: &mut ChaCha8Rng) -> KrausChannel {
    let raw: Vec<f64> = (0..terms)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            z * z + 0.05
        })
        .collect();
    let total: f64 = raw.iter().sum();
    let kraus: Vec<CM> = raw
        .iter()
        .map(|w| sample_unitary(n, rng).scale_re((w / total).sqrt()))
        .collect();
    KrausChannel::new(kraus).expect("scaled unitaries are nonzero")
}

/// Random full-rank density matrix `GG†/Tr(GG†)`.
pub fn sample_density(n: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let g = sample_gaussian_matrix(n, n, rng);
    let gg = g.matmul(&g.dagger()).expect("square product");
    let tr = gg.trace().expect("square").re;
    DensityMatrix::from_psd_unchecked(gg.scale_re(1.0 / tr))
}

pub fn random_density(n: usize, seed: u64) -> Result<DensityMatrix> {
    if n == 0 {
        return arg_err("random_density: n must be >= 1");
    }
    Ok(sample_density(n, &mut rng_from(seed, &[0x4445]))) // "DE"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::relative_entropy_vec;
    use crate::linalg::reorder_tensor_legs;
    use crate::structure::{sample_prob, sample_stochastic};

    fn pauli_x() -> CM {
        CM::from_real_fn(2, 2, |i, j| if i != j { 1.0 } else { 0.0 })
    }

    #[test]
    fn apply_anchor_channels() {
        let mut rng = rng_from(31, &[0]);
        let rho = sample_density(3, &mut rng);

        let id = KrausChannel::identity(3);
        assert!(id.apply(rho.mat()).unwrap().max_abs_diff(rho.mat()) <= 1e-14);

        let deph = KrausChannel::dephasing(3);
        let out = deph.apply(rho.mat()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { rho.mat().get(i, i) } else { cx(0.0, 0.0) };
                assert!((out.get(i, j) - expect).norm() <= 1e-14);
            }
        }

        let dep = KrausChannel::depolarizing(3);
        let out = dep.apply(rho.mat()).unwrap();
        assert!(out.max_abs_diff(&CM::identity(3).scale_re(1.0 / 3.0)) <= 1e-12);
    }

    #[test]
    fn channel_flags() {
        assert!(KrausChannel::identity(2).is_bistochastic());
        assert!(KrausChannel::dephasing(3).is_bistochastic());
        assert!(KrausChannel::depolarizing(4).is_bistochastic());
        // Non-trace-preserving: single projector.
        let p = KrausChannel::new(vec![CM::from_real_fn(2, 2, |i, j| {
            if i == 0 && j == 0 {
                1.0
            } else {
                0.0
            }
        })])
        .unwrap();
        assert!(!p.is_stochastic());
    }

    #[test]
    fn compose_matches_two_stage_application() {
        let mut rng = rng_from(32, &[0]);
        let phi = sample_channel(3, 2, &mut rng);
        let psi = sample_channel(3, 4, &mut rng);
        let rho = sample_density(3, &mut rng);
        let lhs = phi.compose(&psi).unwrap().apply(rho.mat()).unwrap();
        let rhs = phi.apply(&psi.apply(rho.mat()).unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12);

        let with_id = phi.compose(&KrausChannel::identity(3)).unwrap();
        let a = with_id.apply(rho.mat()).unwrap();
        let b = phi.apply(rho.mat()).unwrap();
        assert!(a.max_abs_diff(&b) <= 1e-12);
    }

    #[test]
    fn compose_unitaries() {
        let mut rng = rng_from(33, &[0]);
        let u = sample_unitary(2, &mut rng);
        let v = sample_unitary(2, &mut rng);
        let cu = KrausChannel::unitary(&u).unwrap();
        let cv = KrausChannel::unitary(&v).unwrap();
        let uv = KrausChannel::unitary(&u.matmul(&v).unwrap()).unwrap();
        let rho = sample_density(2, &mut rng);
        let a = cu.compose(&cv).unwrap().apply(rho.mat()).unwrap();
        let b = uv.apply(rho.mat()).unwrap();
        assert!(a.max_abs_diff(&b) <= 1e-12);
    }

    #[test]
    fn tensor_factorizes_on_product_states() {
        let mut rng = rng_from(34, &[0]);
        let phi = sample_channel(2, 2, &mut rng);
        let psi = sample_channel(3, 2, &mut rng);
        let rho = sample_density(2, &mut rng);
        let sig = sample_density(3, &mut rng);
        let lhs = phi
            .tensor(&psi)
            .apply(&rho.mat().kron(sig.mat()))
            .unwrap();
        let rhs = phi
            .apply(rho.mat())
            .unwrap()
            .kron(&psi.apply(sig.mat()).unwrap());
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12);

        let id = KrausChannel::identity(2).tensor(&KrausChannel::identity(3));
        let x = sample_density(6, &mut rng);
        assert!(id.apply(x.mat()).unwrap().max_abs_diff(x.mat()) <= 1e-13);
    }

    #[test]
    fn adjoint_duality_and_anchors() {
        let mut rng = rng_from(35, &[0]);
        let phi = sample_channel(3, 3, &mut rng);
        let adj = phi.adjoint_channel();
        for _ in 0..5 {
            let x = sample_density(3, &mut rng);
            let y = sample_density(3, &mut rng);
            let lhs = adj.apply(x.mat()).unwrap().hs_inner(y.mat()).unwrap();
            let rhs = x.mat().hs_inner(&phi.apply(y.mat()).unwrap()).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12);
        }

        // Unitary adjoint inverts the unitary action.
        let u = sample_unitary(2, &mut rng);
        let cu = KrausChannel::unitary(&u).unwrap();
        let rho = sample_density(2, &mut rng);
        let back = cu.adjoint_channel().apply(&cu.apply(rho.mat()).unwrap()).unwrap();
        assert!(back.max_abs_diff(rho.mat()) <= 1e-12);

        // Dephasing is self-adjoint.
        let deph = KrausChannel::dephasing(3);
        let x = sample_density(3, &mut rng);
        let l = deph.adjoint_channel().apply(x.mat()).unwrap();
        let r = deph.apply(x.mat()).unwrap();
        assert!(l.max_abs_diff(&r) <= 1e-14);
    }

    #[test]
    fn transpose_channel_transposes_kraus() {
        let mut rng = rng_from(36, &[0]);
        let phi = sample_channel(3, 2, &mut rng);
        let t = phi.transpose_channel();
        for (m, mt) in phi.kraus().iter().zip(t.kraus()) {
            assert!(mt.max_abs_diff(&m.transpose()) == 0.0);
        }
        // B(Ψᵗ) = B(Ψ)ᵗ entry-wise.
        let b = kraus_matrix(&phi).unwrap();
        let bt = kraus_matrix(&t).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((bt.get(i, j) - b.get(j, i)).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn jamiolkowski_anchors() {
        // Identity channel: Σ|ii⟩⟨jj|, trace N.
        let j = jamiolkowski(&KrausChannel::identity(2)).unwrap();
        let expect = CM::from_real_fn(4, 4, |a, b| {
            let (a1, a2) = (a / 2, a % 2);
            let (b1, b2) = (b / 2, b % 2);
            if a1 == a2 && b1 == b2 {
                1.0
            } else {
                0.0
            }
        });
        assert!(j.mat().max_abs_diff(&expect) <= 1e-14);
        assert!((j.mat().trace().unwrap().re - 2.0).abs() <= 1e-12);

        // Depolarizing: J = I/N.
        let j = jamiolkowski(&KrausChannel::depolarizing(3)).unwrap();
        assert!(j.mat().max_abs_diff(&CM::identity(9).scale_re(1.0 / 3.0)) <= 1e-12);

        // Random stochastic channel: PSD with trace N.
        let mut rng = rng_from(37, &[0]);
        let phi = sample_channel(3, 4, &mut rng);
        let j = jamiolkowski(&phi).unwrap();
        assert!((j.mat().trace().unwrap().re - 3.0).abs() <= 1e-9);
        let eig = hermitian_eigh(j.mat()).unwrap();
        assert!(eig.eigenvalues[0] >= -1e-10);
    }

    #[test]
    fn von_neumann_entropy_anchors() {
        let pure = DensityMatrix::pure_state(&[cx(1.0, 0.0), cx(0.0, 0.0)]).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap().abs() <= 1e-12);

        let max_mixed = DensityMatrix::from_diag(&ProbVec::uniform(4));
        assert!((von_neumann_entropy(&max_mixed).unwrap() - 2.0).abs() <= 1e-12);

        let d = DensityMatrix::from_diag(&ProbVec::new(&[0.5, 0.25, 0.25]).unwrap());
        assert!((von_neumann_entropy(&d).unwrap() - 1.5).abs() <= 1e-12);
    }

    #[test]
    fn quantum_relative_entropy_cases() {
        let mut rng = rng_from(38, &[0]);
        let rho = sample_density(3, &mut rng);
        assert!(
            quantum_relative_entropy(&rho, &rho)
                .unwrap()
                .finite()
                .unwrap()
                .abs()
                <= 1e-9
        );

        let e0 = DensityMatrix::pure_state(&[cx(1.0, 0.0), cx(0.0, 0.0)]).unwrap();
        let e1 = DensityMatrix::pure_state(&[cx(0.0, 0.0), cx(1.0, 0.0)]).unwrap();
        assert!(quantum_relative_entropy(&e0, &e1).unwrap().is_infinite());

        // Commuting diagonal case reduces to the classical value.
        let p = sample_prob(4, &mut rng);
        let q = sample_prob(4, &mut rng);
        let dq = quantum_relative_entropy(
            &DensityMatrix::from_diag(&p),
            &DensityMatrix::from_diag(&q),
        )
        .unwrap();
        let cl = relative_entropy_vec(&p, &q).unwrap();
        match (dq, cl) {
            (RelEntropy::Finite(a), RelEntropy::Finite(b)) => assert!((a - b).abs() <= 1e-10),
            (a, b) => assert_eq!(a.is_infinite(), b.is_infinite()),
        }
    }

    #[test]
    fn map_entropy_anchors() {
        let mut rng = rng_from(39, &[0]);
        let u = sample_unitary(3, &mut rng);
        let cu = KrausChannel::unitary(&u).unwrap();
        assert!(map_entropy(&cu).unwrap().abs() <= 1e-10);

        for n in 2..=4 {
            let s = map_entropy(&KrausChannel::depolarizing(n)).unwrap();
            assert!((s - 2.0 * (n as f64).log2()).abs() <= 1e-9);
        }

        assert!((map_entropy(&KrausChannel::dephasing(2)).unwrap() - 1.0).abs() <= 1e-10);

        // Non-stochastic channel rejected.
        let bad = KrausChannel::new(vec![CM::identity(2).scale_re(0.5)]).unwrap();
        assert!(map_entropy(&bad).is_err());
    }

    #[test]
    fn channel_relative_entropy_cases() {
        let mut rng = rng_from(40, &[0]);
        let phi = sample_channel(2, 2, &mut rng);
        assert!(
            channel_relative_entropy(&phi, &phi)
                .unwrap()
                .finite()
                .unwrap()
                .abs()
                <= 1e-9
        );

        // Identity vs Pauli-X conjugation: orthogonal Jamiołkowski supports.
        let id = KrausChannel::identity(2);
        let x = KrausChannel::unitary(&pauli_x()).unwrap();
        assert!(channel_relative_entropy(&id, &x).unwrap().is_infinite());

        // Anything vs depolarizing is finite (full-support reference).
        let dep = KrausChannel::depolarizing(2);
        assert!(channel_relative_entropy(&phi, &dep).unwrap().is_finite());
    }

    #[test]
    fn kraus_matrix_anchors() {
        let id = kraus_matrix(&KrausChannel::identity(3)).unwrap();
        assert!(id.max_abs_diff(&StochMat::identity(3)) <= 1e-14);

        let deph = kraus_matrix(&KrausChannel::dephasing(3)).unwrap();
        assert!(deph.max_abs_diff(&StochMat::identity(3)) <= 1e-14);

        let dep = kraus_matrix(&KrausChannel::depolarizing(3)).unwrap();
        assert!(dep.max_abs_diff(&StochMat::flat(3)) <= 1e-13);

        // b_{ij} = ⟨ij|J(Φ)|ij⟩.
        let mut rng = rng_from(41, &[0]);
        let phi = sample_channel(3, 2, &mut rng);
        let b = kraus_matrix(&phi).unwrap();
        assert!(b.classify().is_stochastic);
        let j = jamiolkowski(&phi).unwrap();
        for i in 0..3 {
            for jj in 0..3 {
                let idx = i * 3 + jj;
                assert!((b.get(i, jj) - j.mat().get(idx, idx).re).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn kraus_matrix_of_bistochastic_channel_is_bistochastic() {
        let mut rng = rng_from(42, &[0]);
        let u = sample_unitary(4, &mut rng);
        let cu = KrausChannel::unitary(&u).unwrap();
        assert!(kraus_matrix(&cu).unwrap().classify().is_bistochastic);
    }

    #[test]
    fn channel_from_stochastic_matrix_cases() {
        // b = I lifts to the dephasing channel.
        let phi = channel_from_stochastic_matrix(&StochMat::identity(2)).unwrap();
        let mut rng = rng_from(43, &[0]);
        let rho = sample_density(2, &mut rng);
        let out = phi.apply(rho.mat()).unwrap();
        let deph = KrausChannel::dephasing(2).apply(rho.mat()).unwrap();
        assert!(out.max_abs_diff(&deph) <= 1e-14);

        // Random lift: diagonal J, exact kraus_matrix round-trip, diagonal
        // action rho=diag(p) -> diag(Bp).
        let b = sample_stochastic(3, &mut rng);
        let phi = channel_from_stochastic_matrix(&b).unwrap();
        assert!(phi.is_stochastic());
        let j = jamiolkowski(&phi).unwrap();
        for a in 0..9 {
            for c in 0..9 {
                if a != c {
                    assert!(j.mat().get(a, c).norm() <= 1e-14);
                }
            }
        }
        let back = kraus_matrix(&phi).unwrap();
        assert!(back.max_abs_diff(&b) <= 1e-15);

        let p = sample_prob(3, &mut rng);
        let out = phi.apply(DensityMatrix::from_diag(&p).mat()).unwrap();
        let bp = b.matvec(&p).unwrap();
        for i in 0..3 {
            assert!((out.get(i, i).re - bp.get(i)).abs() <= 1e-12);
        }

        // Permutation lift has map entropy log₂N.
        let perm = crate::structure::perm_matrix(&[1, 2, 0]).unwrap();
        let phi = channel_from_stochastic_matrix(&perm).unwrap();
        assert!((map_entropy(&phi).unwrap() - 3f64.log2()).abs() <= 1e-10);

        // Non-stochastic input rejected.
        let half = StochMat::identity(2);
        let mut bad = half.data().to_vec();
        bad[0] = 0.5;
        let raw = StochMat::from_raw_unchecked(2, bad);
        assert!(channel_from_stochastic_matrix(&raw).is_err());
    }

    #[test]
    fn spectral_majorization_cases() {
        let mut rng = rng_from(44, &[0]);
        let x = {
            let g = sample_gaussian_matrix(4, 4, &mut rng);
            g.add(&g.dagger()).unwrap().scale_re(0.5)
        };
        // Schur: Diag(X) ≺ X.
        let diag = CM::from_fn(4, 4, |i, j| if i == j { x.get(i, i) } else { cx(0.0, 0.0) });
        assert!(spectral_majorizes(&diag, &x).unwrap());
        assert!(spectral_majorizes(&x, &x).unwrap());

        let rho = sample_density(4, &mut rng);
        let max_mixed = CM::identity(4).scale_re(0.25);
        assert!(spectral_majorizes(&max_mixed, rho.mat()).unwrap());

        assert!(spectral_majorizes(&x, &max_mixed).is_err()); // trace mismatch
    }

    #[test]
    fn random_channel_properties() {
        for seed in 0..20 {
            let phi = random_channel(3, 4, seed).unwrap();
            assert!(
                phi.completeness_sum().max_abs_diff(&CM::identity(3)) <= 1e-10
            );
        }
        // Single Kraus block of an isometry is a unitary.
        let phi = random_channel(3, 1, 9).unwrap();
        assert!(phi.is_bistochastic());
        assert!(map_entropy(&phi).unwrap().abs() <= 1e-10);

        // Determinism.
        let a = random_channel(2, 3, 5).unwrap();
        let b = random_channel(2, 3, 5).unwrap();
        for (x, y) in a.kraus().iter().zip(b.kraus()) {
            assert!(x.max_abs_diff(y) == 0.0);
        }
    }

    #[test]
    fn random_density_properties() {
        for seed in 0..20 {
            let rho = random_density(3, seed).unwrap();
            assert!((rho.mat().trace().unwrap().re - 1.0).abs() <= 1e-12);
            let spec = hermitian_eigh(rho.mat()).unwrap().eigenvalues;
            assert!(spec[0] >= -1e-12);
        }
    }

    #[test]
    fn remix_preserves_kraus_matrix_and_action() {
        let mut rng = rng_from(45, &[0]);
        let phi = sample_channel(3, 2, &mut rng);
        let u = sample_unitary(4, &mut rng); // pads the 2-element list to 4
        let remixed = phi.remix(&u).unwrap();
        let rho = sample_density(3, &mut rng);
        assert!(
            remixed
                .apply(rho.mat())
                .unwrap()
                .max_abs_diff(&phi.apply(rho.mat()).unwrap())
                <= 1e-12
        );
        assert!(
            kraus_matrix(&remixed)
                .unwrap()
                .max_abs_diff(&kraus_matrix(&phi).unwrap())
                <= 1e-12
        );
    }

    #[test]
    fn mixture_affinity_of_kraus_matrix() {
        let mut rng = rng_from(46, &[0]);
        let phi1 = sample_channel(3, 2, &mut rng);
        let phi2 = sample_channel(3, 3, &mut rng);
        let t = 0.3;
        let mixed = mix_channels(&[t, 1.0 - t], &[phi1.clone(), phi2.clone()]).unwrap();
        let b_mixed = kraus_matrix(&mixed).unwrap();
        let b1 = kraus_matrix(&phi1).unwrap();
        let b2 = kraus_matrix(&phi2).unwrap();
        let expect = StochMat::mix(&[t, 1.0 - t], &[b1, b2]).unwrap();
        assert!(b_mixed.max_abs_diff(&expect) <= 1e-12);
    }

    #[test]
    fn tensor_jamiolkowski_up_to_leg_reorder() {
        let mut rng = rng_from(47, &[0]);
        let phi = sample_channel(2, 2, &mut rng);
        let psi = sample_channel(2, 3, &mut rng);
        let j12 = jamiolkowski(&phi.tensor(&psi)).unwrap();
        let jj = jamiolkowski(&phi)
            .unwrap()
            .mat()
            .kron(jamiolkowski(&psi).unwrap().mat());
        // J(Φ)⊗J(Ψ) lives on H₁⊗H₁'⊗H₂⊗H₂'; move to (H₁⊗H₂)⊗(H₁'⊗H₂').
        let reordered = reorder_tensor_legs(&jj, &[2, 2, 2, 2], &[0, 2, 1, 3]).unwrap();
        assert!(j12.mat().max_abs_diff(&reordered) <= 1e-12);
    }

    #[test]
    fn zero_kraus_operators_are_dropped() {
        let ch = KrausChannel::new(vec![CM::identity(2), CM::zeros(2, 2)]).unwrap();
        assert_eq!(ch.kraus().len(), 1);
        assert!(KrausChannel::new(vec![CM::zeros(2, 2)]).is_err());
        assert!(KrausChannel::new(vec![]).is_err());
    }
}
