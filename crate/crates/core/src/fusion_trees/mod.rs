//! Splitting/fusion trees and the linear maps induced on them by
//! recoupling (F), braiding (R), bending and tracing.
//!
//! A tree with uncoupled charges `u_0, ..., u_{N-1}` fuses them left to
//! right: line `L_0 = u_0`, `L_k ∈ L_{k-1} ⊗ u_k`, and `L_{N-1}` is the
//! coupled charge. The `inner` field stores `L_1, ..., L_{N-2}` and vertex
//! `k` (joining `L_k`, `u_{k+1}` into `L_{k+1}`) carries the multiplicity
//! index `vertices[k]`. `isdual[i]` marks legs belonging to a dual space.
//!
//! Pair operations act on a splitting tree (codomain) and a fusion tree
//! (domain) with equal coupled charge. Legs are numbered codomain first,
//! then domain; the "linear" order used for cyclic permutations reads the
//! codomain left to right and then the domain right to left.

mod cache;
mod composite;
mod elementary;

use std::collections::BTreeMap;

pub use cache::{clear_cache, set_cache_enabled, cache_enabled, cache_len};
pub use composite::{braid_pair, braid_tree, permute_pair, planar_trace_pair, repartition, trace_pair, transpose_pair};
pub(crate) use composite::{check_permutation, is_cyclic, linearize};
pub use elementary::{artin_braid, bend_left, bend_right, f_move, insert_at, split, unbend_left, unbend_right};

use crate::error::{Result, SymError};
use crate::sector::{Label, SectorDescriptor, C64};
use crate::zoo::SectorKind;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FusionTree {
    pub uncoupled: Vec<Label>,
    pub coupled: Label,
    pub isdual: Vec<bool>,
    pub inner: Vec<Label>,
    pub vertices: Vec<usize>,
}

/// Linear combination of trees.
pub type TreeCoefficientMap = BTreeMap<FusionTree, C64>;
/// Linear combination of (splitting, fusion) tree pairs.
pub type PairCoefficientMap = BTreeMap<(FusionTree, FusionTree), C64>;

/// Coefficients below this fraction of the largest one are dropped.
pub const PRUNE_RELATIVE: f64 = 1e-15;

impl FusionTree {
    /// Builds a tree and checks that every vertex is admissible.
    pub fn new(
        kind: &SectorKind,
        uncoupled: Vec<Label>,
        coupled: Label,
        isdual: Vec<bool>,
        inner: Vec<Label>,
        vertices: Vec<usize>,
    ) -> Result<Self> {
        let t = FusionTree { uncoupled, coupled, isdual, inner, vertices };
        t.check(kind)?;
        Ok(t)
    }

    /// Tree without inner lines or multiplicities (one or two legs, or
    /// unique fusion where the lines are implied).
    pub fn simple(kind: &SectorKind, uncoupled: Vec<Label>, coupled: Label, isdual: Vec<bool>) -> Result<Self> {
        let n = uncoupled.len();
        let mut inner = Vec::new();
        if n > 2 {
            let mut line = uncoupled[0].clone();
            for u in &uncoupled[1..n - 1] {
                let outs = kind.fusion_outputs(&line, u);
                if outs.len() != 1 {
                    return Err(SymError::InadmissibleTree("inner lines are not implied".into()));
                }
                line = outs[0].clone();
                inner.push(line.clone());
            }
        }
        let vertices = vec![0; n.saturating_sub(1)];
        FusionTree::new(kind, uncoupled, coupled, isdual, inner, vertices)
    }

    pub(crate) fn raw(uncoupled: Vec<Label>, coupled: Label, isdual: Vec<bool>, inner: Vec<Label>, vertices: Vec<usize>) -> Self {
        FusionTree { uncoupled, coupled, isdual, inner, vertices }
    }

    /// The empty tree with unit coupled charge.
    pub fn empty(kind: &SectorKind) -> Self {
        FusionTree::raw(Vec::new(), kind.unit(), Vec::new(), Vec::new(), Vec::new())
    }

    pub fn len(&self) -> usize {
        self.uncoupled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.uncoupled.is_empty()
    }

    /// `L_k` in the notation of the module documentation; `L_{-1}` is not
    /// defined, and for an empty tree only the coupled charge exists.
    pub fn line(&self, k: usize) -> &Label {
        let n = self.len();
        if k == 0 && n > 0 {
            &self.uncoupled[0]
        } else if k + 1 == n || n == 0 {
            &self.coupled
        } else {
            &self.inner[k - 1]
        }
    }

    pub fn check(&self, kind: &SectorKind) -> Result<()> {
        let n = self.len();
        let bad = |m: &str| Err(SymError::InadmissibleTree(m.to_string()));
        if self.isdual.len() != n {
            return bad("isdual length");
        }
        if self.inner.len() != n.saturating_sub(2) || self.vertices.len() != n.saturating_sub(1) {
            return bad("inner/vertex count");
        }
        for l in self.uncoupled.iter().chain(&self.inner).chain(std::iter::once(&self.coupled)) {
            if !kind.contains(l) {
                return bad("unknown label");
            }
        }
        match n {
            0 => {
                if !kind.is_unit(&self.coupled) {
                    return bad("empty tree must couple to the unit");
                }
            }
            1 => {
                if self.uncoupled[0] != self.coupled {
                    return bad("single leg must equal the coupled charge");
                }
            }
            _ => {
                for k in 1..n {
                    let m = kind.nsymbol(self.line(k - 1), &self.uncoupled[k], self.line(k));
                    if self.vertices[k - 1] >= m {
                        return bad("vertex not admissible");
                    }
                }
            }
        }
        Ok(())
    }
}

/// All trees with the given uncoupled charges, duality flags and coupled
/// charge, ordered lexicographically by inner lines and vertex labels.
pub fn enumerate_trees(kind: &SectorKind, uncoupled: &[Label], isdual: &[bool], coupled: &Label) -> Vec<FusionTree> {
    let n = uncoupled.len();
    assert_eq!(n, isdual.len());
    let mut out = Vec::new();
    match n {
        0 => {
            if kind.is_unit(coupled) {
                out.push(FusionTree::empty(kind));
            }
        }
        1 => {
            if uncoupled[0] == *coupled {
                out.push(FusionTree::raw(uncoupled.to_vec(), coupled.clone(), isdual.to_vec(), vec![], vec![]));
            }
        }
        _ => {
            let mut inner = Vec::new();
            let mut verts = Vec::new();
            enumerate_rec(kind, uncoupled, isdual, coupled, 1, uncoupled[0].clone(), &mut inner, &mut verts, &mut out);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    kind: &SectorKind,
    u: &[Label],
    isdual: &[bool],
    coupled: &Label,
    k: usize,
    line: Label,
    inner: &mut Vec<Label>,
    verts: &mut Vec<usize>,
    out: &mut Vec<FusionTree>,
) {
    let n = u.len();
    if k == n - 1 {
        let m = kind.nsymbol(&line, &u[k], coupled);
        for mu in 0..m {
            verts.push(mu);
            out.push(FusionTree::raw(u.to_vec(), coupled.clone(), isdual.to_vec(), inner.clone(), verts.clone()));
            verts.pop();
        }
        return;
    }
    for e in kind.fusion_outputs(&line, &u[k]) {
        let m = kind.nsymbol(&line, &u[k], &e);
        for mu in 0..m {
            inner.push(e.clone());
            verts.push(mu);
            enumerate_rec(kind, u, isdual, coupled, k + 1, e.clone(), inner, verts, out);
            verts.pop();
            inner.pop();
        }
    }
}

pub(crate) fn add_to<K: Ord>(map: &mut BTreeMap<K, C64>, key: K, c: C64) {
    *map.entry(key).or_insert(C64::new(0.0, 0.0)) += c;
}

/// Drops exact zeros and coefficients below [`PRUNE_RELATIVE`] of the
/// largest magnitude in the map.
pub(crate) fn prune<K: Ord>(mut map: BTreeMap<K, C64>) -> BTreeMap<K, C64> {
    let max = map.values().map(|c| c.norm()).fold(0.0, f64::max);
    map.retain(|_, c| c.norm() > PRUNE_RELATIVE * max && *c != C64::new(0.0, 0.0));
    map
}
