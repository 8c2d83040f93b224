//! Structure algorithms for stochastic matrices: Birkhoff–von Neumann
//! decomposition, stationary vectors, seeded samplers, and the exact
//! saturation constructors for the monotonicity and additivity statements.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::entropy::{
    relative_entropy_stoch, relative_entropy_vec, weighted_entropy, ProbVec, RelEntropy, StochMat,
};
use crate::error::{arg_err, shape_err, Error, Result};
use crate::rng::rng_from;

type P = ProbVec<f64>;
type S = StochMat<f64>;

/// A permutation of `{0..n-1}`: `perm[j]` is the row carrying the 1 in
/// column `j` of the corresponding permutation matrix.
pub type Permutation = Vec<usize>;

pub fn is_valid_permutation(perm: &[usize]) -> bool {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &i in perm {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

/// Permutation matrix with `P[perm[j], j] = 1`.
pub fn perm_matrix(perm: &[usize]) -> Result<S> {
    if !is_valid_permutation(perm) {
        return arg_err("invalid permutation");
    }
    let n = perm.len();
    let mut data = vec![0.0; n * n];
    for (j, &i) in perm.iter().enumerate() {
        data[i * n + j] = 1.0;
    }
    Ok(S::from_raw_unchecked(n, data))
}

/// Birkhoff decomposition: convex weights and permutations whose mix
/// reconstructs the input.
#[derive(Clone, Debug)]
pub struct BirkhoffDecomposition {
    pub terms: Vec<(f64, Permutation)>,
}

impl BirkhoffDecomposition {
    pub fn reconstruct(&self, n: usize) -> Result<S> {
        let mut data = vec![0.0; n * n];
        for (w, perm) in &self.terms {
            if perm.len() != n {
                return shape_err("reconstruct: permutation length mismatch");
            }
            for (j, &i) in perm.iter().enumerate() {
                data[i * n + j] += w;
            }
        }
        Ok(S::from_raw_unchecked(n, data))
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|(w, _)| w).sum()
    }
}

/// Hopcroft–Karp maximum bipartite matching. `adj[j]` lists the rows
/// reachable from column `j`; returns a perfect column→row matching if one
/// exists.
fn hopcroft_karp(n: usize, adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    const NIL: usize = usize::MAX;
    let mut match_col = vec![NIL; n]; // column -> row
    let mut match_row = vec![NIL; n]; // row -> column
    let mut dist = vec![0usize; n];

    loop {
        // BFS layering over free columns.
        let mut queue = std::collections::VecDeque::new();
        let mut found_augmenting = false;
        for j in 0..n {
            if match_col[j] == NIL {
                dist[j] = 0;
                queue.push_back(j);
            } else {
                dist[j] = usize::MAX;
            }
        }
        while let Some(j) = queue.pop_front() {
            for &r in &adj[j] {
                let nxt = match_row[r];
                if nxt == NIL {
                    found_augmenting = true;
                } else if dist[nxt] == usize::MAX {
                    dist[nxt] = dist[j] + 1;
                    queue.push_back(nxt);
                }
            }
        }
        if !found_augmenting {
            break;
        }
        // DFS along the layering.
        fn try_augment(
            j: usize,
            adj: &[Vec<usize>],
            match_col: &mut [usize],
            match_row: &mut [usize],
            dist: &mut [usize],
        ) -> bool {
            for &r in &adj[j] {
                let nxt = match_row[r];
                if nxt == NIL
                    || (dist[nxt] == dist[j] + 1
                        && try_augment(nxt, adj, match_col, match_row, dist))
                {
                    match_col[j] = r;
                    match_row[r] = j;
                    return true;
                }
            }
            dist[j] = usize::MAX;
            false
        }
        for j in 0..n {
            if match_col[j] == NIL {
                try_augment(j, adj, &mut match_col, &mut match_row, &mut dist);
            }
        }
    }

    if match_col.iter().all(|&r| r != NIL) {
        Some(match_col)
    } else {
        None
    }
}

/// Birkhoff–von Neumann decomposition of a bistochastic matrix via repeated
/// perfect matchings on the positive support (entries > 1e-12); each step
/// extracts the minimum matched entry, so at least one entry is zeroed and
/// the term count stays within N²−2N+2.
pub fn birkhoff_decompose(b: &S) -> Result<BirkhoffDecomposition> {
    if !b.classify().is_bistochastic {
        return arg_err("birkhoff_decompose: matrix is not bistochastic");
    }
    let n = b.dim();
    let mut rem: Vec<f64> = b.data().to_vec();
    let mut terms = Vec::new();
    let mut total = 0.0;
    let max_terms = n * n; // safety cap above the theoretical bound
    while total < 1.0 - 1e-12 && terms.len() < max_terms {
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|j| (0..n).filter(|&i| rem[i * n + j] > 1e-12).collect())
            .collect();
        let matching = hopcroft_karp(n, &adj).ok_or_else(|| {
            Error::Internal("birkhoff_decompose: no perfect matching on positive support".into())
        })?;
        let w = matching
            .iter()
            .enumerate()
            .map(|(j, &i)| rem[i * n + j])
            .fold(f64::INFINITY, f64::min);
        for (j, &i) in matching.iter().enumerate() {
            rem[i * n + j] -= w;
        }
        total += w;
        terms.push((w, matching));
    }
    Ok(BirkhoffDecomposition { terms })
}

/// Stationary distribution of a stochastic matrix: power iteration on
/// `(T + I)/2` from the uniform start, so periodic chains still converge;
/// ties among multiple stationary vectors resolve to the iteration's limit.
pub fn stationary_vector(t: &S) -> Result<P> {
    let n = t.dim();
    let mut p = P::uniform(n);
    for _ in 0..10_000 {
        let tp = t.matvec(&p)?;
        let resid: f64 = tp
            .as_slice()
            .iter()
            .zip(p.as_slice())
            .map(|(a, b)| (a - b).abs())
            .sum();
        if resid <= 1e-13 {
            return Ok(p);
        }
        let mixed: Vec<f64> = tp
            .as_slice()
            .iter()
            .zip(p.as_slice())
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        p = P::from_unnormalized(&mixed)?;
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Samplers. Seed-taking entry points wrap rng-taking internals so the
// verifier can drive many draws from one derived stream.
// ---------------------------------------------------------------------------

/// Random probability vector: normalized squared standard normals
/// (flat-ish Dirichlet).
pub fn sample_prob(n: usize, rng: &mut ChaCha8Rng) -> P {
    let v: Vec<f64> = (0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            z * z
        })
        .collect();
    P::from_unnormalized(&v).expect("squared normals are nonnegative")
}

/// Strictly positive probability vector (entries bounded away from the
/// support threshold); used where saturation identities must stay finite.
pub fn sample_positive_prob(n: usize, rng: &mut ChaCha8Rng) -> P {
    let v: Vec<f64> = (0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            z * z + 0.02
        })
        .collect();
    P::from_unnormalized(&v).expect("entries positive")
}

pub fn sample_stochastic(n: usize, rng: &mut ChaCha8Rng) -> S {
    let cols: Vec<P> = (0..n).map(|_| sample_prob(n, rng)).collect();
    S::from_cols(&cols).expect("columns conform")
}

/// Stochastic matrix with strictly positive entries.
pub fn sample_positive_stochastic(n: usize, rng: &mut ChaCha8Rng) -> S {
    let cols: Vec<P> = (0..n).map(|_| sample_positive_prob(n, rng)).collect();
    S::from_cols(&cols).expect("columns conform")
}

pub fn sample_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut perm: Vec<usize> = (0..n).collect();
    // Fisher-Yates
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

pub fn sample_simplex(k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    sample_prob(k, rng).as_slice().to_vec()
}

/// Strictly positive simplex weights.
pub fn sample_positive_simplex(k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    sample_positive_prob(k, rng).as_slice().to_vec()
}

pub fn sample_bistochastic(n: usize, terms: usize, rng: &mut ChaCha8Rng) -> S {
    let weights = sample_simplex(terms, rng);
    let mut data = vec![0.0; n * n];
    for w in weights {
        let perm = sample_permutation(n, rng);
        for (j, &i) in perm.iter().enumerate() {
            data[i * n + j] += w;
        }
    }
    S::from_raw_unchecked(n, data)
}

/// Random stochastic matrix, deterministic in the seed.
pub fn random_stochastic(n: usize, seed: u64) -> Result<S> {
    if n == 0 {
        return arg_err("random_stochastic: n must be >= 1");
    }
    Ok(sample_stochastic(n, &mut rng_from(seed, &[0x5354]))) // "ST"
}

/// Random convex mix of `terms` permutation matrices, deterministic in the
/// seed.
pub fn random_bistochastic(n: usize, terms: usize, seed: u64) -> Result<S> {
    if n == 0 || terms == 0 {
        return arg_err("random_bistochastic: n and terms must be >= 1");
    }
    Ok(sample_bistochastic(n, terms, &mut rng_from(seed, &[0x4253]))) // "BS"
}

/// Sinkhorn-scale a positive matrix to a coupling with both marginals `p`,
/// then divide out the column marginal: the result is stochastic with
/// `T·p = p`.
pub fn sample_invariant_stochastic(p: &P, rng: &mut ChaCha8Rng) -> Result<S> {
    if !p.is_strictly_positive() {
        return arg_err("sample_invariant_stochastic: p must be strictly positive");
    }
    let n = p.len();
    let mut k: Vec<f64> = (0..n * n).map(|_| rng.gen_range(0.1..1.1)).collect();
    let mut converged = false;
    for _ in 0..10_000 {
        // Rows to marginal p.
        for i in 0..n {
            let rs: f64 = (0..n).map(|j| k[i * n + j]).sum();
            let f = p.get(i) / rs;
            for j in 0..n {
                k[i * n + j] *= f;
            }
        }
        // Columns to marginal p.
        let mut err = 0.0;
        for j in 0..n {
            let cs: f64 = (0..n).map(|i| k[i * n + j]).sum();
            err += (cs - p.get(j)).abs();
            let f = p.get(j) / cs;
            for i in 0..n {
                k[i * n + j] *= f;
            }
        }
        // Row marginal error after the column pass.
        for i in 0..n {
            let rs: f64 = (0..n).map(|j| k[i * n + j]).sum();
            err += (rs - p.get(i)).abs();
        }
        if err <= 1e-12 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Internal(
            "sample_invariant_stochastic: Sinkhorn did not converge in 10^4 iterations".into(),
        ));
    }
    // T = K·diag(p)⁻¹, columns renormalized exactly.
    let mut data = vec![0.0; n * n];
    for j in 0..n {
        let cs: f64 = (0..n).map(|i| k[i * n + j]).sum();
        for i in 0..n {
            data[i * n + j] = k[i * n + j] / cs;
        }
    }
    Ok(S::from_raw_unchecked(n, data))
}

/// Seeded wrapper over [`sample_invariant_stochastic`].
pub fn random_invariant_stochastic(p: &P, seed: u64) -> Result<S> {
    sample_invariant_stochastic(p, &mut rng_from(seed, &[0x494E])) // "IN"
}

// ---------------------------------------------------------------------------
// Saturation constructors.
// ---------------------------------------------------------------------------

/// One block of a relative-entropy saturation instance: weights `mu`/`nu`,
/// left factors `p`/`q` (length m), shared right factor `r` (length n),
/// a permutation on the left slot, and a stochastic matrix on the right.
#[derive(Clone, Debug)]
pub struct Theorem1Block {
    pub mu: f64,
    pub nu: f64,
    pub p: P,
    pub q: P,
    pub r: P,
    pub perm: Permutation,
    pub t: S,
}

#[derive(Clone, Debug)]
pub struct Theorem1Spec {
    pub blocks: Vec<Theorem1Block>,
}

impl Theorem1Spec {
    pub fn validate(&self) -> Result<()> {
        if self.blocks.is_empty() {
            return arg_err("theorem1 spec: no blocks");
        }
        let mu_sum: f64 = self.blocks.iter().map(|b| b.mu).sum();
        let nu_sum: f64 = self.blocks.iter().map(|b| b.nu).sum();
        if (mu_sum - 1.0).abs() > 1e-10 || (nu_sum - 1.0).abs() > 1e-10 {
            return arg_err(format!(
                "theorem1 spec: weights must sum to 1 (mu: {mu_sum}, nu: {nu_sum})"
            ));
        }
        for (k, b) in self.blocks.iter().enumerate() {
            if b.mu < 0.0 || b.nu < 0.0 {
                return arg_err(format!("theorem1 spec: negative weight in block {k}"));
            }
            let m = b.perm.len();
            if !is_valid_permutation(&b.perm) {
                return arg_err(format!("theorem1 spec: invalid permutation in block {k}"));
            }
            if b.p.len() != m || b.q.len() != m {
                return arg_err(format!("theorem1 spec: p/q length != {m} in block {k}"));
            }
            if b.r.len() != b.t.dim() {
                return arg_err(format!("theorem1 spec: r length != dim(T) in block {k}"));
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.perm.len() * b.r.len()).sum()
    }
}

/// Build `T = ⊕ P(π_k)⊗T_k`, `p = ⊕ μ_k (p_k⊗r_k)`, `q = ⊕ ν_k (q_k⊗r_k)`.
/// The construction guarantees `H(Tp‖Tq) = H(p‖q)`.
pub fn construct_theorem1(spec: &Theorem1Spec) -> Result<(S, P, P)> {
    spec.validate()?;
    let mut t_blocks = Vec::new();
    let mut pv: Vec<f64> = Vec::new();
    let mut qv: Vec<f64> = Vec::new();
    for b in &spec.blocks {
        t_blocks.push(perm_matrix(&b.perm)?.kron(&b.t));
        let pk = b.p.kron(&b.r);
        let qk = b.q.kron(&b.r);
        pv.extend(pk.as_slice().iter().map(|x| b.mu * x));
        qv.extend(qk.as_slice().iter().map(|x| b.nu * x));
    }
    let t = S::direct_sum(&t_blocks)?;
    let p = P::from_unnormalized(&pv)?;
    let q = P::from_unnormalized(&qv)?;
    Ok((t, p, q))
}

/// One block of a matrix-level saturation instance. `left[j]`/`right[j]`
/// are the per-column left factors (length m) and `mu[j]`/`nu[j]` the
/// per-column block weights; `r`, `perm`, `t` are shared across columns.
#[derive(Clone, Debug)]
pub struct Theorem2Block {
    pub r: P,
    pub perm: Permutation,
    pub t: S,
    pub left: Vec<P>,
    pub right: Vec<P>,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct Theorem2Spec {
    pub blocks: Vec<Theorem2Block>,
}

impl Theorem2Spec {
    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.perm.len() * b.r.len()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.blocks.is_empty() {
            return arg_err("theorem2 spec: no blocks");
        }
        let n = self.total_dim();
        for (k, b) in self.blocks.iter().enumerate() {
            let m = b.perm.len();
            if !is_valid_permutation(&b.perm) {
                return arg_err(format!("theorem2 spec: invalid permutation in block {k}"));
            }
            if b.r.len() != b.t.dim() {
                return arg_err(format!("theorem2 spec: r length != dim(T) in block {k}"));
            }
            if b.left.len() != n || b.right.len() != n || b.mu.len() != n || b.nu.len() != n {
                return arg_err(format!(
                    "theorem2 spec: block {k} must carry data for all {n} columns"
                ));
            }
            if b.left.iter().any(|c| c.len() != m) || b.right.iter().any(|c| c.len() != m) {
                return arg_err(format!("theorem2 spec: column factor length != {m} in block {k}"));
            }
            if b.mu.iter().chain(&b.nu).any(|&w| w < 0.0) {
                return arg_err(format!("theorem2 spec: negative weight in block {k}"));
            }
        }
        // Σ_k E^{(k)} = Σ_k F^{(k)} = 1, column by column.
        for j in 0..n {
            let mu_sum: f64 = self.blocks.iter().map(|b| b.mu[j]).sum();
            let nu_sum: f64 = self.blocks.iter().map(|b| b.nu[j]).sum();
            if (mu_sum - 1.0).abs() > 1e-10 || (nu_sum - 1.0).abs() > 1e-10 {
                return arg_err(format!(
                    "theorem2 spec: column {j} weights must sum to 1 (mu: {mu_sum}, nu: {nu_sum})"
                ));
            }
        }
        Ok(())
    }
}

/// Build `T = ⊕ P(π_k)⊗T_k` and the column-wise saturating pair
/// `a_j = ⊕_k μ_k^{(j)} p_k^{(j)}⊗r_k`, `b_j = ⊕_k ν_k^{(j)} q_k^{(j)}⊗r_k`.
/// Guarantees `H_p(TA‖TB) = H_p(A‖B)` for every strictly positive `p`.
pub fn construct_theorem2(spec: &Theorem2Spec) -> Result<(S, S, S)> {
    spec.validate()?;
    let n = spec.total_dim();
    let mut t_blocks = Vec::new();
    let mut a = vec![0.0; n * n];
    let mut b = vec![0.0; n * n];
    let mut row_off = 0usize;
    for blk in &spec.blocks {
        t_blocks.push(perm_matrix(&blk.perm)?.kron(&blk.t));
        let (m, nk) = (blk.perm.len(), blk.r.len());
        for j in 0..n {
            for i in 0..m {
                for s in 0..nk {
                    let row = row_off + i * nk + s;
                    a[row * n + j] = blk.mu[j] * blk.left[j].get(i) * blk.r.get(s);
                    b[row * n + j] = blk.nu[j] * blk.right[j].get(i) * blk.r.get(s);
                }
            }
        }
        row_off += m * nk;
    }
    let t = S::direct_sum(&t_blocks)?;
    Ok((t, S::new(n, a)?, S::new(n, b)?))
}

/// Entropy-additivity pair `X = X_L⊗P(π_R)`, `Y = P(π_L)⊗Y_R`;
/// guarantees `H(XY) = H(X) + H(Y)` for the uniform-weight entropy.
pub fn construct_additivity(
    xl: &S,
    pi_l: &[usize],
    yr: &S,
    pi_r: &[usize],
) -> Result<(S, S)> {
    if pi_l.len() != xl.dim() || pi_r.len() != yr.dim() {
        return arg_err("construct_additivity: permutation sizes must match factors");
    }
    let x = xl.kron(&perm_matrix(pi_r)?);
    let y = perm_matrix(pi_l)?.kron(yr);
    Ok((x, y))
}

/// One block of a strong-additivity instance.
#[derive(Clone, Debug)]
pub struct StrongAdditivityBlock {
    pub xl: S,
    pub yl: S,
    pub yr: S,
    pub zr: S,
    pub pi_l: Permutation,
    pub pi_r: Permutation,
}

/// `X = ⊕ X_k^L⊗P(π_k^R)`, `Y = ⊕ Y_k^L⊗Y_k^R`, `Z = ⊕ P(π_k^L)⊗Z_k^R`;
/// guarantees `H(XYZ) + H(Y) = H(XY) + H(YZ)`.
pub fn construct_strong_additivity(blocks: &[StrongAdditivityBlock]) -> Result<(S, S, S)> {
    if blocks.is_empty() {
        return arg_err("construct_strong_additivity: no blocks");
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut zs = Vec::new();
    for b in blocks {
        let m = b.xl.dim();
        let n = b.yr.dim();
        if b.yl.dim() != m || b.pi_l.len() != m || b.zr.dim() != n || b.pi_r.len() != n {
            return shape_err("construct_strong_additivity: block dimension mismatch");
        }
        xs.push(b.xl.kron(&perm_matrix(&b.pi_r)?));
        ys.push(b.yl.kron(&b.yr));
        zs.push(perm_matrix(&b.pi_l)?.kron(&b.zr));
    }
    Ok((S::direct_sum(&xs)?, S::direct_sum(&ys)?, S::direct_sum(&zs)?))
}

/// Saturation test for `H_p(TA) = H_p(A)` with bistochastic `T`: returns
/// `(equality_holds, condition_holds)` where the condition is `TᵗTA = A`.
/// The two booleans agree exactly when the saturation criterion is right.
pub fn check_entropy_saturation(t: &S, a: &S, p: &P) -> Result<(bool, bool)> {
    if !t.classify().is_bistochastic {
        return arg_err("check_entropy_saturation: T must be bistochastic");
    }
    let n = t.dim();
    if a.dim() != n || p.len() != n {
        return shape_err("check_entropy_saturation: dimension mismatch");
    }
    let ta = t.matmul(a)?;
    let h_ta = weighted_entropy(&ta, p)?;
    let h_a = weighted_entropy(a, p)?;
    let equality_holds = (h_ta - h_a).abs() <= 1e-9;

    // TᵗTA entry-wise: (TᵗTA)[i][j] = Σ_k T[k][i]·(TA)[k][j].
    let mut max_dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += t.get(k, i) * ta.get(k, j);
            }
            max_dev = max_dev.max((acc - a.get(i, j)).abs());
        }
    }
    let condition_holds = max_dev <= 1e-9;
    Ok((equality_holds, condition_holds))
}

// ---------------------------------------------------------------------------
// Random spec generators (shared by the verifier and the acceptance suite).
// ---------------------------------------------------------------------------

/// Random saturating instance with K ≤ `max_blocks`, block dims ≤ `max_dim`.
pub fn sample_theorem1_spec(
    max_blocks: usize,
    max_dim: usize,
    rng: &mut ChaCha8Rng,
) -> Theorem1Spec {
    let k = rng.gen_range(1..=max_blocks);
    let mu = sample_positive_simplex(k, rng);
    let nu = sample_positive_simplex(k, rng);
    let blocks = (0..k)
        .map(|idx| {
            let m = rng.gen_range(1..=max_dim);
            let n = rng.gen_range(1..=max_dim);
            Theorem1Block {
                mu: mu[idx],
                nu: nu[idx],
                p: sample_positive_prob(m, rng),
                q: sample_positive_prob(m, rng),
                r: sample_positive_prob(n, rng),
                perm: sample_permutation(m, rng),
                t: sample_positive_stochastic(n, rng),
            }
        })
        .collect();
    Theorem1Spec { blocks }
}

pub fn sample_theorem2_spec(
    max_blocks: usize,
    max_dim: usize,
    rng: &mut ChaCha8Rng,
) -> Theorem2Spec {
    let k = rng.gen_range(1..=max_blocks);
    let dims: Vec<(usize, usize)> = (0..k)
        .map(|_| (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim)))
        .collect();
    let n: usize = dims.iter().map(|(m, nk)| m * nk).sum();
    // Per-column simplex weights across blocks.
    let mut mu = vec![vec![0.0; n]; k];
    let mut nu = vec![vec![0.0; n]; k];
    for j in 0..n {
        let wm = sample_positive_simplex(k, rng);
        let wn = sample_positive_simplex(k, rng);
        for i in 0..k {
            mu[i][j] = wm[i];
            nu[i][j] = wn[i];
        }
    }
    let blocks = dims
        .iter()
        .enumerate()
        .map(|(idx, &(m, nk))| Theorem2Block {
            r: sample_positive_prob(nk, rng),
            perm: sample_permutation(m, rng),
            t: sample_positive_stochastic(nk, rng),
            left: (0..n).map(|_| sample_positive_prob(m, rng)).collect(),
            right: (0..n).map(|_| sample_positive_prob(m, rng)).collect(),
            mu: mu[idx].clone(),
            nu: nu[idx].clone(),
        })
        .collect();
    Theorem2Spec { blocks }
}

/// Evaluate both sides of the theorem-1 equality for a spec.
pub fn theorem1_equality_sides(spec: &Theorem1Spec) -> Result<(RelEntropy<f64>, RelEntropy<f64>)> {
    let (t, p, q) = construct_theorem1(spec)?;
    let lhs = relative_entropy_vec(&t.matvec(&p)?, &t.matvec(&q)?)?;
    let rhs = relative_entropy_vec(&p, &q)?;
    Ok((lhs, rhs))
}

/// Evaluate both sides of the theorem-2 equality for a spec and weight `p`.
pub fn theorem2_equality_sides(
    spec: &Theorem2Spec,
    p: &P,
) -> Result<(RelEntropy<f64>, RelEntropy<f64>)> {
    let (t, a, b) = construct_theorem2(spec)?;
    let lhs = relative_entropy_stoch(&t.matmul(&a)?, &t.matmul(&b)?, p)?;
    let rhs = relative_entropy_stoch(&a, &b, p)?;
    Ok((lhs, rhs))
}
