//! JSON file formats for the command-line surface: matrices, probability
//! vectors, channels, and constructor specs. Serialization uses
//! shortest-round-trip float formatting, so write-then-read is exact for
//! doubles.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::entropy::{ProbVec, StochMat};
use crate::error::{arg_err, shape_err, Result};
use crate::linalg::Matrix;
use crate::quantum::KrausChannel;
use crate::structure::{
    StrongAdditivityBlock, Theorem1Block, Theorem1Spec, Theorem2Block, Theorem2Spec,
};

type CM = Matrix<f64>;
type P = ProbVec<f64>;
type S = StochMat<f64>;

/// One matrix entry: a bare number when `complex: false`, a `[re, im]` pair
/// when `complex: true`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Pair([f64; 2]),
}

/// Row-major matrix document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub complex: bool,
    pub data: Vec<Entry>,
}

impl MatrixFile {
    fn validate(&self) -> Result<()> {
        if self.data.len() != self.rows * self.cols {
            return shape_err(format!(
                "matrix file: data length {} != {}x{}",
                self.data.len(),
                self.rows,
                self.cols
            ));
        }
        for (i, e) in self.data.iter().enumerate() {
            match (self.complex, e) {
                (false, Entry::Real(v)) if v.is_finite() => {}
                (true, Entry::Pair([re, im])) if re.is_finite() && im.is_finite() => {}
                (false, Entry::Pair(_)) => {
                    return arg_err(format!(
                        "matrix file: entry {i} is a pair but complex=false"
                    ))
                }
                (true, Entry::Real(_)) => {
                    return arg_err(format!(
                        "matrix file: entry {i} is a bare number but complex=true"
                    ))
                }
                _ => return arg_err(format!("matrix file: entry {i} is not finite")),
            }
        }
        Ok(())
    }

    pub fn from_complex_matrix(m: &CM) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            complex: true,
            data: m.data().iter().map(|z| Entry::Pair([z.re, z.im])).collect(),
        }
    }

    pub fn from_real_data(rows: usize, cols: usize, data: &[f64]) -> Self {
        Self {
            rows,
            cols,
            complex: false,
            data: data.iter().map(|&v| Entry::Real(v)).collect(),
        }
    }

    pub fn from_stochastic(s: &S) -> Self {
        Self::from_real_data(s.dim(), s.dim(), s.data())
    }

    /// Probability vector as an N×1 column.
    pub fn from_prob(p: &P) -> Self {
        Self::from_real_data(p.len(), 1, p.as_slice())
    }

    pub fn to_complex_matrix(&self) -> Result<CM> {
        self.validate()?;
        let data = self
            .data
            .iter()
            .map(|e| match e {
                Entry::Real(v) => Complex::new(*v, 0.0),
                Entry::Pair([re, im]) => Complex::new(*re, *im),
            })
            .collect();
        CM::new(self.rows, self.cols, data)
    }

    pub fn to_real_data(&self) -> Result<Vec<f64>> {
        self.validate()?;
        if self.complex {
            return arg_err("expected a real matrix file (complex=false)");
        }
        Ok(self
            .data
            .iter()
            .map(|e| match e {
                Entry::Real(v) => *v,
                Entry::Pair(_) => unreachable!("validated real"),
            })
            .collect())
    }

    /// Accepts an N×1 column or 1×N row.
    pub fn to_prob_vector(&self) -> Result<P> {
        let data = self.to_real_data()?;
        if self.rows != 1 && self.cols != 1 {
            return shape_err("probability vector file must be a single row or column");
        }
        P::new(&data)
    }

    pub fn to_stochastic(&self) -> Result<S> {
        let data = self.to_real_data()?;
        if self.rows != self.cols {
            return shape_err("stochastic matrix file must be square");
        }
        S::new(self.rows, data)
    }
}

/// Channel document: a list of `out_dim × in_dim` Kraus blocks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelFile {
    pub in_dim: usize,
    pub out_dim: usize,
    pub kraus: Vec<MatrixFile>,
}

impl ChannelFile {
    pub fn from_channel(ch: &KrausChannel) -> Self {
        Self {
            in_dim: ch.in_dim(),
            out_dim: ch.out_dim(),
            kraus: ch.kraus().iter().map(MatrixFile::from_complex_matrix).collect(),
        }
    }

    pub fn to_channel(&self) -> Result<KrausChannel> {
        let mut ops = Vec::with_capacity(self.kraus.len());
        for (i, mf) in self.kraus.iter().enumerate() {
            if mf.rows != self.out_dim || mf.cols != self.in_dim {
                return shape_err(format!(
                    "channel file: Kraus block {i} is {}x{}, expected {}x{}",
                    mf.rows, mf.cols, self.out_dim, self.in_dim
                ));
            }
            ops.push(mf.to_complex_matrix()?);
        }
        KrausChannel::new(ops)
    }
}

// ---------------------------------------------------------------------------
// Constructor spec documents. Stochastic blocks are row-major real arrays;
// dimensions are implied by the companion vectors.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Thm1BlockFile {
    pub mu: f64,
    pub nu: f64,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub r: Vec<f64>,
    pub perm: Vec<usize>,
    /// Row-major `r.len() × r.len()` stochastic matrix.
    pub t: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Thm1SpecFile {
    pub blocks: Vec<Thm1BlockFile>,
}

impl Thm1SpecFile {
    pub fn to_spec(&self) -> Result<Theorem1Spec> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                Ok(Theorem1Block {
                    mu: b.mu,
                    nu: b.nu,
                    p: P::new(&b.p)?,
                    q: P::new(&b.q)?,
                    r: P::new(&b.r)?,
                    perm: b.perm.clone(),
                    t: S::new(b.r.len(), b.t.clone())?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = Theorem1Spec { blocks };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Thm2BlockFile {
    pub r: Vec<f64>,
    pub perm: Vec<usize>,
    /// Row-major `r.len() × r.len()` stochastic matrix.
    pub t: Vec<f64>,
    /// Per-column left factors, each of length `perm.len()`.
    pub left: Vec<Vec<f64>>,
    pub right: Vec<Vec<f64>>,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Thm2SpecFile {
    pub blocks: Vec<Thm2BlockFile>,
}

impl Thm2SpecFile {
    pub fn to_spec(&self) -> Result<Theorem2Spec> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                Ok(Theorem2Block {
                    r: P::new(&b.r)?,
                    perm: b.perm.clone(),
                    t: S::new(b.r.len(), b.t.clone())?,
                    left: b.left.iter().map(|c| P::new(c)).collect::<Result<_>>()?,
                    right: b.right.iter().map(|c| P::new(c)).collect::<Result<_>>()?,
                    mu: b.mu.clone(),
                    nu: b.nu.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = Theorem2Spec { blocks };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdditivitySpecFile {
    /// Row-major `pi_l.len()²` stochastic matrix.
    pub xl: Vec<f64>,
    pub pi_l: Vec<usize>,
    /// Row-major `pi_r.len()²` stochastic matrix.
    pub yr: Vec<f64>,
    pub pi_r: Vec<usize>,
}

impl AdditivitySpecFile {
    pub fn to_parts(&self) -> Result<(S, Vec<usize>, S, Vec<usize>)> {
        Ok((
            S::new(self.pi_l.len(), self.xl.clone())?,
            self.pi_l.clone(),
            S::new(self.pi_r.len(), self.yr.clone())?,
            self.pi_r.clone(),
        ))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrongBlockFile {
    pub xl: Vec<f64>,
    pub yl: Vec<f64>,
    pub yr: Vec<f64>,
    pub zr: Vec<f64>,
    pub pi_l: Vec<usize>,
    pub pi_r: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrongSpecFile {
    pub blocks: Vec<StrongBlockFile>,
}

impl StrongSpecFile {
    pub fn to_blocks(&self) -> Result<Vec<StrongAdditivityBlock>> {
        self.blocks
            .iter()
            .map(|b| {
                let m = b.pi_l.len();
                let n = b.pi_r.len();
                Ok(StrongAdditivityBlock {
                    xl: S::new(m, b.xl.clone())?,
                    yl: S::new(m, b.yl.clone())?,
                    yr: S::new(n, b.yr.clone())?,
                    zr: S::new(n, b.zr.clone())?,
                    pi_l: b.pi_l.clone(),
                    pi_r: b.pi_r.clone(),
                })
            })
            .collect()
    }
}
