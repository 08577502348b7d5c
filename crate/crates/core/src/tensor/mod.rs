//! Tensor maps `codomain ← domain` stored as one dense matrix per coupled
//! charge.
//!
//! Rows of the block for charge `c` enumerate (splitting tree, outer index)
//! pairs of the codomain, columns the (fusion tree, outer index) pairs of
//! the domain. Within one tree's rows the outer indices of its legs are laid
//! out column-major, so the sub-block of a tree pair is the reduced tensor
//! reshaped to `(codomain degeneracies..., domain degeneracies...)`.

mod contract;
mod dense;
mod io;
mod structure;
mod transform;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Result, SymError};
use crate::fusion_trees::FusionTree;
use crate::linalg::Matrix;
use crate::sector::{Label, SectorDescriptor, C64};
use crate::spaces::{HomSpace, ProductSpace};
use crate::zoo::SectorKind;

pub use contract::ncon;
pub use dense::{dense_dim, irrep_dim, splitting_tensor, z_matrix, DenseTensor};
pub use io::{BlockRecord, TensorRecord, FORMAT_VERSION};
pub use structure::{block_structure, BlockStructure, SideStructure, TreeSlot};

static PARALLEL: AtomicBool = AtomicBool::new(false);

/// Enables dispatching independent blocks to the rayon pool. Results do not
/// depend on this setting.
pub fn set_parallel(on: bool) {
    PARALLEL.store(on, Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    PARALLEL.load(Ordering::Relaxed)
}

#[derive(Clone)]
pub struct TensorMap {
    space: HomSpace,
    structure: Arc<BlockStructure>,
    blocks: Vec<Matrix>,
}

impl std::fmt::Debug for TensorMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "TensorMap {}", self.space)?;
        for (c, b) in self.blocks() {
            write!(f, "block {}: {:?}", self.kind().format_label(c), b)?;
        }
        Ok(())
    }
}

impl TensorMap {
    pub fn zeros(space: HomSpace) -> Self {
        let structure = block_structure(&space);
        let blocks = structure.shapes.iter().map(|&(r, c)| Matrix::zeros(r, c)).collect();
        TensorMap { space, structure, blocks }
    }

    /// Entries are independent standard complex normals (real and imaginary
    /// parts each of variance 1/2), drawn block by block in charge order.
    pub fn random(space: HomSpace, seed: u64) -> Self {
        let mut t = TensorMap::zeros(space);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).unwrap();
        for b in &mut t.blocks {
            for x in b.data_mut() {
                *x = C64::new(normal.sample(&mut rng), normal.sample(&mut rng));
            }
        }
        t
    }

    /// Identity on a product space.
    pub fn identity(space: ProductSpace) -> Self {
        let mut t = TensorMap::zeros(HomSpace { codomain: space.clone(), domain: space });
        for b in &mut t.blocks {
            *b = Matrix::identity(b.rows());
        }
        t
    }

    /// Tensor with given blocks; missing charges are zero.
    pub fn from_blocks(space: HomSpace, blocks: impl IntoIterator<Item = (Label, Matrix)>) -> Result<Self> {
        let mut t = TensorMap::zeros(space);
        for (c, m) in blocks {
            let i = t.structure.position(&c).ok_or_else(|| SymError::ChargeMismatch(format!("no block for {c:?}")))?;
            if (m.rows(), m.cols()) != t.structure.shapes[i] {
                return Err(SymError::SpaceMismatch(format!(
                    "block {c:?} has shape {}x{}, expected {:?}",
                    m.rows(),
                    m.cols(),
                    t.structure.shapes[i]
                )));
            }
            t.blocks[i] = m;
        }
        Ok(t)
    }

    pub(crate) fn from_parts(space: HomSpace, structure: Arc<BlockStructure>, blocks: Vec<Matrix>) -> Self {
        TensorMap { space, structure, blocks }
    }

    pub fn space(&self) -> &HomSpace {
        &self.space
    }

    pub fn kind(&self) -> &SectorKind {
        self.space.kind()
    }

    pub fn codomain(&self) -> &ProductSpace {
        &self.space.codomain
    }

    pub fn domain(&self) -> &ProductSpace {
        &self.space.domain
    }

    pub fn num_out(&self) -> usize {
        self.space.num_out()
    }

    pub fn num_in(&self) -> usize {
        self.space.num_in()
    }

    pub fn num_legs(&self) -> usize {
        self.space.num_legs()
    }

    pub fn structure(&self) -> &BlockStructure {
        &self.structure
    }

    pub fn sectors(&self) -> &[Label] {
        &self.structure.sectors
    }

    pub fn block(&self, c: &Label) -> Option<&Matrix> {
        self.structure.position(c).map(|i| &self.blocks[i])
    }

    pub fn block_mut(&mut self, c: &Label) -> Option<&mut Matrix> {
        self.structure.position(c).map(|i| &mut self.blocks[i])
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Label, &Matrix)> {
        self.structure.sectors.iter().zip(&self.blocks)
    }

    /// Reduced tensor of a (splitting, fusion) pair as a matrix of shape
    /// (product of codomain degeneracies, product of domain degeneracies).
    pub fn sub_block(&self, s: &FusionTree, f: &FusionTree) -> Option<Matrix> {
        let (rs, cs) = self.slots(s, f)?;
        let b = self.block(&s.coupled)?;
        Some(b.sub_matrix(rs.offset, rs.extent, cs.offset, cs.extent))
    }

    pub fn set_sub_block(&mut self, s: &FusionTree, f: &FusionTree, m: &Matrix) -> Result<()> {
        let (ro, co, re, ce) = {
            let (rs, cs) = self.slots(s, f).ok_or_else(|| SymError::InadmissibleTree("tree pair not in this space".into()))?;
            (rs.offset, cs.offset, rs.extent, cs.extent)
        };
        if (m.rows(), m.cols()) != (re, ce) {
            return Err(SymError::SpaceMismatch("sub-block shape".into()));
        }
        self.block_mut(&s.coupled).unwrap().set_sub_matrix(ro, co, m);
        Ok(())
    }

    fn slots(&self, s: &FusionTree, f: &FusionTree) -> Option<(&TreeSlot, &TreeSlot)> {
        if s.coupled != f.coupled {
            return None;
        }
        Some((self.structure.rows.slot(s)?, self.structure.cols.slot(f)?))
    }

    /// All (splitting, fusion) pairs, grouped by coupled charge.
    pub fn tree_pairs(&self) -> Vec<(FusionTree, FusionTree)> {
        let mut out = Vec::new();
        for c in &self.structure.sectors {
            for r in &self.structure.rows.charges[c] {
                for col in &self.structure.cols.charges[c] {
                    out.push((r.tree.clone(), col.tree.clone()));
                }
            }
        }
        out
    }

    fn check_same_space(&self, other: &TensorMap) -> Result<()> {
        if self.space != other.space {
            return Err(SymError::SpaceMismatch(format!("{} vs {}", self.space, other.space)));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorMap) -> Result<TensorMap> {
        self.axpby(C64::new(1.0, 0.0), other, C64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &TensorMap) -> Result<TensorMap> {
        self.axpby(C64::new(1.0, 0.0), other, C64::new(-1.0, 0.0))
    }

    /// `a * self + b * other`.
    pub fn axpby(&self, a: C64, other: &TensorMap, b: C64) -> Result<TensorMap> {
        self.check_same_space(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| {
                let mut z = x.scale(a);
                z.axpy(b, y);
                z
            })
            .collect();
        Ok(TensorMap { space: self.space.clone(), structure: self.structure.clone(), blocks })
    }

    pub fn scale(&self, s: C64) -> TensorMap {
        TensorMap { space: self.space.clone(), structure: self.structure.clone(), blocks: self.blocks.iter().map(|b| b.scale(s)).collect() }
    }

    pub fn adjoint(&self) -> TensorMap {
        let space = self.space.adjoint();
        let structure = block_structure(&space);
        let blocks = self.blocks.iter().map(Matrix::adjoint).collect();
        TensorMap { space, structure, blocks }
    }

    /// `Σ_c d_c tr(A_c† B_c)`.
    pub fn inner(&self, other: &TensorMap) -> Result<C64> {
        self.check_same_space(other)?;
        let kind = self.kind();
        Ok(self
            .blocks()
            .zip(&other.blocks)
            .map(|((c, a), b)| crate::linalg::dot(a.data(), b.data()) * kind.qdim(c))
            .sum())
    }

    pub fn norm(&self) -> f64 {
        let kind = self.kind();
        self.blocks().map(|(c, b)| kind.qdim(c) * b.data().iter().map(|x| x.norm_sqr()).sum::<f64>()).sum::<f64>().sqrt()
    }

    /// Largest entrywise difference of the block data.
    pub fn max_abs_diff(&self, other: &TensorMap) -> Result<f64> {
        self.check_same_space(other)?;
        Ok(self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max))
    }

    /// `Σ_c d_c tr(A_c)` for maps with equal codomain and domain.
    pub fn trace(&self) -> Result<C64> {
        if self.space.codomain != self.space.domain {
            return Err(SymError::NotSquare(self.space.to_string()));
        }
        let kind = self.kind();
        Ok(self.blocks().map(|(c, b)| b.trace() * kind.qdim(c)).sum())
    }

    /// Checks block shapes against the structure of the hom space.
    pub fn audit(&self) -> Result<()> {
        let fresh = block_structure(&self.space);
        if fresh.sectors != self.structure.sectors || self.blocks.len() != fresh.sectors.len() {
            return Err(SymError::SpaceMismatch("block charges do not match the hom space".into()));
        }
        for (b, &(r, c)) in self.blocks.iter().zip(&fresh.shapes) {
            if (b.rows(), b.cols()) != (r, c) {
                return Err(SymError::SpaceMismatch("block shape does not match the hom space".into()));
            }
        }
        Ok(())
    }
}
