//! Block-wise factorizations. The tensor is first rearranged to
//! `(p; q)`, each coupled-charge block is factorized independently, and the
//! new leg is a single graded space whose degeneracy for charge `c` is the
//! number of columns kept in block `c`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SymError};
use crate::flops::{record, svd_cost};
use crate::linalg::{self, Matrix};
use crate::sector::{Label, SectorDescriptor, C64};
use crate::spaces::{GradedSpace, HomSpace, ProductSpace};
use crate::tensor::{parallel_enabled, TensorMap};
use crate::zoo::SectorKind;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TruncationScheme {
    None,
    /// Keep the largest values while `Σ_kept d_c ≤ D`.
    MaxTotalDim(f64),
    /// Drop the largest tail with `√(Σ_dropped d_c σ²) ≤ ε · norm`.
    RelError(f64),
    /// Keep values `σ ≥ σ_min`.
    Threshold(f64),
}

/// Kept values per charge (descending for SVD) and the weighted norm of the
/// discarded ones.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub kind: SectorKind,
    pub spectrum: Vec<(Label, Vec<f64>)>,
    pub truncation_error: f64,
}

#[derive(Serialize, Deserialize)]
struct SpectrumEntry {
    charge: String,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRecord {
    format_version: u32,
    sector_kind: String,
    spectrum: Vec<SpectrumEntry>,
    truncation_error: f64,
}

impl SpectrumReport {
    pub fn to_json(&self) -> String {
        let rec = SpectrumRecord {
            format_version: crate::tensor::FORMAT_VERSION,
            sector_kind: self.kind.name(),
            spectrum: self
                .spectrum
                .iter()
                .map(|(c, v)| SpectrumEntry { charge: self.kind.format_label(c), values: v.clone() })
                .collect(),
            truncation_error: self.truncation_error,
        };
        serde_json::to_string(&rec).expect("spectrum serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: SpectrumRecord = serde_json::from_str(s).map_err(|e| SymError::Format(e.to_string()))?;
        let kind: SectorKind = rec.sector_kind.parse()?;
        let spectrum = rec
            .spectrum
            .into_iter()
            .map(|e| Ok((kind.parse_label(&e.charge)?, e.values)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectrumReport { kind, spectrum, truncation_error: rec.truncation_error })
    }

    /// Number of kept values weighted by quantum dimension.
    pub fn total_dim(&self) -> f64 {
        self.spectrum.iter().map(|(c, v)| self.kind.qdim(c) * v.len() as f64).sum()
    }
}

/// Per-block work, optionally on the rayon pool; results stay in charge
/// order.
fn per_block<T: Send>(t: &TensorMap, f: impl Fn(&Matrix) -> T + Sync) -> Vec<(Label, T)> {
    let blocks: Vec<(&Label, &Matrix)> = t.blocks().collect();
    let out: Vec<T> =
        if parallel_enabled() { blocks.par_iter().map(|(_, b)| f(b)).collect() } else { blocks.iter().map(|(_, b)| f(b)).collect() };
    blocks.into_iter().map(|(c, _)| c.clone()).zip(out).collect()
}

fn single(kind: &SectorKind, v: GradedSpace) -> ProductSpace {
    ProductSpace::new(kind.clone(), vec![v]).expect("same kind")
}

/// Graded space with degeneracy `dims[c]` for each charge.
fn bond_space(kind: &SectorKind, dims: impl IntoIterator<Item = (Label, usize)>) -> GradedSpace {
    GradedSpace::new(kind.clone(), dims).expect("labels come from blocks")
}

fn assemble(space: HomSpace, blocks: Vec<(Label, Matrix)>) -> TensorMap {
    let keep: Vec<(Label, Matrix)> = blocks.into_iter().filter(|(_, m)| !m.is_empty()).collect();
    TensorMap::from_blocks(space, keep).expect("factor blocks match their space")
}

/// Chooses how many values to keep in each block. `values` are the
/// per-block descending spectra in charge order.
fn truncate(kind: &SectorKind, values: &[(Label, Vec<f64>)], norm: f64, trunc: TruncationScheme) -> (Vec<usize>, f64) {
    // global order: σ descending, then charge order, then block index
    let mut all: Vec<(f64, usize, usize)> = Vec::new();
    for (b, (_, v)) in values.iter().enumerate() {
        all.extend(v.iter().enumerate().map(|(i, &s)| (s, b, i)));
    }
    all.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let weight = |b: usize| kind.qdim(&values[b].0);
    let n_keep = match trunc {
        TruncationScheme::None => all.len(),
        TruncationScheme::MaxTotalDim(d) => {
            let mut total = 0.0;
            let mut n = 0;
            for &(_, b, _) in &all {
                total += weight(b);
                if total > d + 1e-9 {
                    break;
                }
                n += 1;
            }
            n
        }
        TruncationScheme::RelError(eps) => {
            let budget = (eps * norm).powi(2);
            let mut dropped = 0.0;
            let mut n = all.len();
            while n > 0 {
                let (s, b, _) = all[n - 1];
                let next = dropped + weight(b) * s * s;
                if next > budget {
                    break;
                }
                dropped = next;
                n -= 1;
            }
            n
        }
        TruncationScheme::Threshold(min) => all.iter().take_while(|x| x.0 >= min).count(),
    };
    let mut keep = vec![0; values.len()];
    for &(_, b, _) in &all[..n_keep] {
        keep[b] += 1;
    }
    let err: f64 = all[n_keep..].iter().map(|&(s, b, _)| weight(b) * s * s).sum();
    (keep, err.sqrt())
}

impl TensorMap {
    /// `A ≈ U ∘ S ∘ Vh` after rearranging to `(p; q)`.
    pub fn svd(&self, p: &[usize], q: &[usize], trunc: TruncationScheme) -> Result<(TensorMap, TensorMap, TensorMap, SpectrumReport)> {
        let a = self.rearrange(p, q)?;
        let kind = a.kind().clone();
        let facts = per_block(&a, linalg::svd);
        let block_cost = a.blocks().map(|(_, b)| svd_cost(b.rows(), b.cols())).sum();
        record(block_cost, svd_cost(a.codomain().dim().round() as usize, a.domain().dim().round() as usize));
        let values: Vec<(Label, Vec<f64>)> = facts.iter().map(|(c, (_, s, _))| (c.clone(), s.clone())).collect();
        let (keep, err) = truncate(&kind, &values, a.norm(), trunc);
        let z = bond_space(&kind, facts.iter().zip(&keep).map(|((c, _), &k)| (c.clone(), k)));
        let zs = single(&kind, z);
        let mut ub = Vec::new();
        let mut sb = Vec::new();
        let mut vb = Vec::new();
        let mut spectrum = Vec::new();
        for ((c, (u, s, vh)), &k) in facts.into_iter().zip(&keep) {
            if k == 0 {
                continue;
            }
            ub.push((c.clone(), u.sub_matrix(0, u.rows(), 0, k)));
            sb.push((c.clone(), Matrix::diagonal(&s[..k].iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())));
            vb.push((c.clone(), vh.sub_matrix(0, k, 0, vh.cols())));
            spectrum.push((c, s[..k].to_vec()));
        }
        let u = assemble(HomSpace::new(a.codomain().clone(), zs.clone())?, ub);
        let s = assemble(HomSpace::new(zs.clone(), zs.clone())?, sb);
        let vh = assemble(HomSpace::new(zs, a.domain().clone())?, vb);
        Ok((u, s, vh, SpectrumReport { kind, spectrum, truncation_error: err }))
    }

    /// `A = Q ∘ R` with `Q` isometric and `R` upper triangular per block.
    pub fn qr(&self, p: &[usize], q: &[usize]) -> Result<(TensorMap, TensorMap)> {
        let a = self.rearrange(p, q)?;
        let kind = a.kind().clone();
        let facts = per_block(&a, linalg::qr);
        let z = single(&kind, bond_space(&kind, facts.iter().map(|(c, (q, _))| (c.clone(), q.cols()))));
        let (qb, rb): (Vec<_>, Vec<_>) = facts.into_iter().map(|(c, (q, r))| ((c.clone(), q), (c, r))).unzip();
        Ok((assemble(HomSpace::new(a.codomain().clone(), z.clone())?, qb), assemble(HomSpace::new(z, a.domain().clone())?, rb)))
    }

    /// `A = L ∘ Q` with `Q` co-isometric (`Q Q† = 1`) per block.
    pub fn lq(&self, p: &[usize], q: &[usize]) -> Result<(TensorMap, TensorMap)> {
        let a = self.rearrange(p, q)?;
        let kind = a.kind().clone();
        let facts = per_block(&a, linalg::lq);
        let z = single(&kind, bond_space(&kind, facts.iter().map(|(c, (l, _))| (c.clone(), l.cols()))));
        let (lb, qb): (Vec<_>, Vec<_>) = facts.into_iter().map(|(c, (l, q))| ((c.clone(), l), (c, q))).unzip();
        Ok((assemble(HomSpace::new(a.codomain().clone(), z.clone())?, lb), assemble(HomSpace::new(z, a.domain().clone())?, qb)))
    }

    fn square(&self, p: &[usize], q: &[usize]) -> Result<TensorMap> {
        let a = self.rearrange(p, q)?;
        if a.codomain() != a.domain() {
            return Err(SymError::NotSquare(a.space().to_string()));
        }
        Ok(a)
    }

    fn eigen_factors(a: &TensorMap, facts: Vec<(Label, (Vec<C64>, Matrix))>) -> Result<(TensorMap, TensorMap)> {
        let kind = a.kind().clone();
        let z = single(&kind, bond_space(&kind, facts.iter().map(|(c, (v, _))| (c.clone(), v.len()))));
        let (vb, lb): (Vec<_>, Vec<_>) = facts.into_iter().map(|(c, (vals, v))| ((c.clone(), v), (c, Matrix::diagonal(&vals)))).unzip();
        Ok((assemble(HomSpace::new(a.codomain().clone(), z.clone())?, vb), assemble(HomSpace::new(z.clone(), z)?, lb)))
    }

    /// `A ∘ V = V ∘ Λ` for maps whose blocks are normal matrices.
    pub fn eig(&self, p: &[usize], q: &[usize]) -> Result<(TensorMap, TensorMap)> {
        let a = self.square(p, q)?;
        let facts = per_block(&a, linalg::eig_normal).into_iter().map(|(c, r)| r.map(|x| (c, x))).collect::<Result<Vec<_>>>()?;
        TensorMap::eigen_factors(&a, facts)
    }

    /// Hermitian eigendecomposition with real ascending eigenvalues per
    /// block and unitary `V`.
    pub fn eigh(&self, p: &[usize], q: &[usize]) -> Result<(TensorMap, TensorMap)> {
        let a = self.square(p, q)?;
        let dev = a.blocks().map(|(_, b)| b.max_abs_diff(&b.adjoint())).fold(0.0, f64::max);
        let scale = a.blocks().map(|(_, b)| b.data().iter().map(|x| x.norm()).fold(0.0, f64::max)).fold(1.0, f64::max);
        if dev > 1e-12 * scale {
            return Err(SymError::NotHermitian(dev));
        }
        let facts = per_block(&a, |b| {
            let (vals, v) = linalg::eigh(b);
            (vals.into_iter().map(|x| C64::new(x, 0.0)).collect(), v)
        });
        TensorMap::eigen_factors(&a, facts)
    }

    /// Left: `A = W ∘ P` with `P ≥ 0` on the domain. Right: `A = P ∘ W`
    /// with `P ≥ 0` on the codomain. `W` is isometric in either case.
    pub fn polar(&self, p: &[usize], q: &[usize], side: PolarSide) -> Result<(TensorMap, TensorMap)> {
        let a = self.rearrange(p, q)?;
        let facts = per_block(&a, |b| {
            let (u, s, vh) = linalg::svd(b);
            let sd = Matrix::diagonal(&s.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>());
            let w = u.matmul(&vh);
            let pos = match side {
                PolarSide::Left => vh.adjoint().matmul(&sd).matmul(&vh),
                PolarSide::Right => u.matmul(&sd).matmul(&u.adjoint()),
            };
            (w, pos)
        });
        let (wb, pb): (Vec<_>, Vec<_>) = facts.into_iter().map(|(c, (w, p))| ((c.clone(), w), (c, p))).unzip();
        let w = assemble(a.space().clone(), wb);
        let pspace = match side {
            PolarSide::Left => HomSpace::new(a.domain().clone(), a.domain().clone())?,
            PolarSide::Right => HomSpace::new(a.codomain().clone(), a.codomain().clone())?,
        };
        Ok((w, assemble(pspace, pb)))
    }

    /// The eigenvector (or singular vector) column `i` of charge `c` of a
    /// factor `V : codomain ← Z`, as a map from the single-charge space
    /// `V^{(c)}`.
    pub fn column_map(&self, c: &Label, i: usize) -> Result<TensorMap> {
        let kind = self.kind().clone();
        let b = self.block(c).filter(|b| i < b.cols()).ok_or_else(|| SymError::ChargeMismatch(format!("no column {i} in block {c:?}")))?;
        let aux = single(&kind, bond_space(&kind, [(c.clone(), 1)]));
        let m = b.sub_matrix(0, b.rows(), i, 1);
        TensorMap::from_blocks(HomSpace::new(self.codomain().clone(), aux)?, [(c.clone(), m)])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolarSide {
    Left,
    Right,
}
