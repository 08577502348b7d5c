use std::sync::Arc;

use rayon::prelude::*;

use super::{block_structure, parallel_enabled, TensorMap};
use crate::error::{Result, SymError};
use crate::fusion_trees::{
    braid_pair, check_permutation, is_cyclic, linearize, permute_pair, trace_pair, transpose_pair, FusionTree, PairCoefficientMap,
};
use crate::linalg::{strided_axpy, Matrix, StridedView};
use crate::sector::{SectorDescriptor, C64};

/// One term of a transformation: `dst[j] += coeff * P(src[i])` on the given
/// sub-blocks.
struct Term {
    src_block: usize,
    src_offset: (usize, usize),
    src_dims: Vec<usize>,
    dst_offset: (usize, usize),
    coeff: C64,
}

impl TensorMap {
    /// Moves leg `p1[k]` to codomain position `k` and `p2[k]` to domain
    /// position `k` (legs numbered codomain first). Requires a symmetric
    /// braiding.
    pub fn permute(&self, p1: &[usize], p2: &[usize]) -> Result<TensorMap> {
        let kind = self.kind().clone();
        if !kind.braiding_style().is_symmetric() {
            return Err(SymError::BraidingUnavailable(format!(
                "{} has no symmetric braiding; use transpose or braid",
                kind.name()
            )));
        }
        self.transform(p1, p2, &[], &[], |s, f| permute_pair(&kind, s, f, p1, p2))
    }

    /// Planar re-arrangement: `(p1, reverse(p2))` must be a cyclic rotation
    /// of the legs read codomain left to right, then domain right to left.
    pub fn transpose(&self, p1: &[usize], p2: &[usize]) -> Result<TensorMap> {
        let (n1, n2) = (self.num_out(), self.num_in());
        check_permutation(p1, p2, n1 + n2)?;
        if !is_cyclic(&linearize(p1, p2, n1, n2)) {
            return Err(SymError::NotCyclic(format!("{p1:?} {p2:?}")));
        }
        let kind = self.kind().clone();
        self.transform(p1, p2, &[], &[], |s, f| transpose_pair(&kind, s, f, p1, p2))
    }

    /// General braid: when two legs cross, the one with the higher level
    /// passes over.
    pub fn braid(&self, levels: &[usize], p1: &[usize], p2: &[usize]) -> Result<TensorMap> {
        let n1 = self.num_out();
        if levels.len() != self.num_legs() {
            return Err(SymError::InvalidPermutation("one level per leg required".into()));
        }
        let kind = self.kind().clone();
        let (l1, l2) = levels.split_at(n1);
        self.transform(p1, p2, &[], &[], |s, f| braid_pair(&kind, s, f, l1, l2, p1, p2))
    }

    /// Contracts leg `q1[i]` with leg `q2[i]`; the remaining legs form the
    /// codomain `p1` and domain `p2`.
    pub fn partial_trace(&self, p1: &[usize], p2: &[usize], q1: &[usize], q2: &[usize]) -> Result<TensorMap> {
        if q1.len() != q2.len() {
            return Err(SymError::NonMatchingTracePair("trace lists differ in length".into()));
        }
        for (&a, &b) in q1.iter().zip(q2) {
            let n = self.num_legs();
            if a >= n || b >= n {
                return Err(SymError::InvalidPermutation(format!("trace leg out of range: {a}, {b}")));
            }
            if self.space.leg_space(a) != self.space.leg_space(b).dual() {
                return Err(SymError::NonMatchingTracePair(format!("legs {a} and {b} are not dual to each other")));
            }
        }
        let kind = self.kind().clone();
        self.transform(p1, p2, q1, q2, |s, f| trace_pair(&kind, s, f, p1, p2, q1, q2))
    }

    /// Rearrangement used by contractions: a permutation for symmetric
    /// braidings, a planar transpose otherwise.
    pub(crate) fn rearrange(&self, p1: &[usize], p2: &[usize]) -> Result<TensorMap> {
        let (n1, n) = (self.num_out(), self.num_legs());
        if p1.len() == n1 && p1.iter().copied().eq(0..n1) && p2.iter().copied().eq(n1..n) {
            return Ok(self.clone());
        }
        if self.kind().braiding_style().is_symmetric() {
            return self.permute(p1, p2);
        }
        check_permutation(p1, p2, n)?;
        if is_cyclic(&linearize(p1, p2, n1, n - n1)) {
            return self.transpose(p1, p2);
        }
        Err(SymError::BraidingUnavailable(format!(
            "{} needs a non-planar rearrangement {p1:?} {p2:?}",
            self.kind().name()
        )))
    }

    fn transform(
        &self,
        p1: &[usize],
        p2: &[usize],
        q1: &[usize],
        q2: &[usize],
        coeffs: impl Fn(&FusionTree, &FusionTree) -> Result<Arc<PairCoefficientMap>>,
    ) -> Result<TensorMap> {
        let n = self.num_legs();
        let all1: Vec<usize> = p1.iter().chain(q1).copied().collect();
        let all2: Vec<usize> = p2.iter().chain(q2).copied().collect();
        check_permutation(&all1, &all2, n)?;
        let space = self.space.select(p1, p2);
        let structure = block_structure(&space);
        let src = &self.structure;

        let mut terms: Vec<Vec<Term>> = (0..structure.sectors.len()).map(|_| Vec::new()).collect();
        for (bi, c) in src.sectors.iter().enumerate() {
            let (rows, cols) = (&src.rows.charges[c], &src.cols.charges[c]);
            for rs in rows {
                for cs in cols {
                    let map = coeffs(&rs.tree, &cs.tree)?;
                    for ((s2, f2), &x) in map.iter() {
                        let j = structure
                            .position(&s2.coupled)
                            .ok_or_else(|| SymError::ChargeMismatch("transformed pair outside the target space".into()))?;
                        let r2 = structure.rows.slot(s2).expect("target splitting tree");
                        let c2 = structure.cols.slot(f2).expect("target fusion tree");
                        terms[j].push(Term {
                            src_block: bi,
                            src_offset: (rs.offset, cs.offset),
                            src_dims: rs.dims.iter().chain(&cs.dims).copied().collect(),
                            dst_offset: (r2.offset, c2.offset),
                            coeff: x,
                        });
                    }
                }
            }
        }

        let n1 = self.num_out();
        let out_legs: Vec<usize> = p1.iter().chain(p2).copied().collect();
        let fill = |j: usize, list: &Vec<Term>| {
            let (r, c) = structure.shapes[j];
            let mut m = Matrix::zeros(r, c);
            let ld_dst = r;
            for t in list {
                let sb = &self.blocks[t.src_block];
                let ld_src = sb.rows();
                let sview = StridedView::in_matrix(t.src_offset.0 + t.src_offset.1 * ld_src, &t.src_dims, n1, ld_src);
                let mut shape: Vec<usize> = out_legs.iter().map(|&k| t.src_dims[k]).collect();
                let mut sstr: Vec<usize> = out_legs.iter().map(|&k| sview.strides[k]).collect();
                let dview = StridedView::in_matrix(t.dst_offset.0 + t.dst_offset.1 * ld_dst, &shape, p1.len(), ld_dst);
                let mut dstr = dview.strides.clone();
                for (&a, &b) in q1.iter().zip(q2) {
                    shape.push(t.src_dims[a]);
                    sstr.push(sview.strides[a] + sview.strides[b]);
                    dstr.push(0);
                }
                strided_axpy(
                    &shape,
                    t.coeff,
                    sb.data(),
                    &StridedView::new(sview.offset, sstr),
                    m.data_mut(),
                    &StridedView::new(dview.offset, dstr),
                );
            }
            m
        };
        let blocks: Vec<Matrix> = if parallel_enabled() {
            terms.par_iter().enumerate().map(|(j, l)| fill(j, l)).collect()
        } else {
            terms.iter().enumerate().map(|(j, l)| fill(j, l)).collect()
        };
        Ok(TensorMap::from_parts(space, structure, blocks))
    }
}
