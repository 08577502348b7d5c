use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{block_structure, parallel_enabled, TensorMap};
use crate::error::{Result, SymError};
use crate::flops::{gemm_cost, record};
use crate::linalg::{gemm, Matrix};
use crate::sector::{SectorDescriptor, C64};
use crate::spaces::HomSpace;

impl TensorMap {
    /// `self ∘ other`, block by block. Charges of the result that do not
    /// appear in the shared space give zero blocks.
    pub fn compose(&self, other: &TensorMap) -> Result<TensorMap> {
        if self.space.domain != other.space.codomain {
            return Err(SymError::SpaceMismatch(format!(
                "cannot compose {} with {}",
                self.space, other.space
            )));
        }
        let space = HomSpace { codomain: self.space.codomain.clone(), domain: other.space.domain.clone() };
        let structure = block_structure(&space);
        let mut block_flops = 0u128;
        let jobs: Vec<(usize, Option<(usize, usize)>)> = structure
            .sectors
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let pair = self.structure.position(c).zip(other.structure.position(c));
                if let Some((a, b)) = pair {
                    let (m, k) = (self.blocks[a].rows(), self.blocks[a].cols());
                    block_flops += gemm_cost(m, k, other.blocks[b].cols());
                }
                (j, pair)
            })
            .collect();
        let run = |&(j, pair): &(usize, Option<(usize, usize)>)| {
            let (r, c) = structure.shapes[j];
            let mut out = Matrix::zeros(r, c);
            if let Some((a, b)) = pair {
                gemm(C64::new(1.0, 0.0), &self.blocks[a], &other.blocks[b], C64::new(0.0, 0.0), &mut out);
            }
            out
        };
        let blocks: Vec<Matrix> =
            if parallel_enabled() { jobs.par_iter().map(run).collect() } else { jobs.iter().map(run).collect() };
        let dense = gemm_cost(
            self.space.codomain.dim().round() as usize,
            self.space.domain.dim().round() as usize,
            other.space.domain.dim().round() as usize,
        );
        record(block_flops, dense);
        Ok(TensorMap::from_parts(space, structure, blocks))
    }

    /// Pairwise contraction: `A` is rearranged to `(p_a; q_a)`, `B` to
    /// `(p_b; q_b)`, the two are composed over the legs `q_a` ≅ `p_b`, and
    /// the result (open legs of `A`, then of `B`) is rearranged to
    /// `(p_ab; q_ab)`.
    #[allow(clippy::too_many_arguments)]
    pub fn contract(
        &self,
        p_a: &[usize],
        q_a: &[usize],
        other: &TensorMap,
        p_b: &[usize],
        q_b: &[usize],
        p_ab: &[usize],
        q_ab: &[usize],
    ) -> Result<TensorMap> {
        let a = self.rearrange(p_a, q_a)?;
        let b = other.rearrange(p_b, q_b)?;
        a.compose(&b)?.rearrange(p_ab, q_ab)
    }

    /// Tensor product `A ⊗ B : A.cod ⊗ B.cod ← A.dom ⊗ B.dom`, computed as a
    /// contraction over no legs. The domain legs of `A` pass in front of the
    /// codomain legs of `B` where they cross.
    pub fn outer_product(&self, other: &TensorMap) -> Result<TensorMap> {
        if self.kind() != other.kind() {
            return Err(SymError::SectorMismatch(self.kind().name(), other.kind().name()));
        }
        let (n1, n2) = (self.num_out(), self.num_in());
        let (m1, m2) = (other.num_out(), other.num_in());
        let a_up: Vec<usize> = (0..n1).chain((n1..n1 + n2).rev()).collect();
        let b_down: Vec<usize> = (m1..m1 + m2).chain((0..m1).rev()).collect();
        let a = self.rearrange(&a_up, &[])?;
        let b = other.rearrange(&[], &b_down)?;
        let ab = a.compose(&b)?;
        let top = n1 + n2;
        let p1: Vec<usize> = (0..n1).chain((0..m1).map(|k| top + m2 + m1 - 1 - k)).collect();
        let p2: Vec<usize> = (0..n2).map(|k| top - 1 - k).chain((0..m2).map(|k| top + k)).collect();
        let levels: Vec<usize> = (0..top).map(|_| 1).chain((0..m1 + m2).map(|_| 0)).collect();
        ab.braid(&levels, &p1, &p2)
    }

    /// The value of a tensor with empty codomain and domain.
    pub fn scalar(&self) -> Result<C64> {
        if self.num_legs() != 0 {
            return Err(SymError::SpaceMismatch("not a scalar".into()));
        }
        Ok(self.blocks.first().map_or(C64::new(0.0, 0.0), |b| if b.is_empty() { C64::new(0.0, 0.0) } else { b[(0, 0)] }))
    }
}

/// Evaluates a network in NCON notation: positive labels are contracted
/// (each appears exactly twice), negative labels stay open, and `order`
/// lists every positive label once. The open legs of the result are sorted
/// as -1, -2, ... with the first `n_codomain` forming the codomain.
pub fn ncon(tensors: &[&TensorMap], labels: &[Vec<i32>], order: &[i32], n_codomain: usize) -> Result<TensorMap> {
    let bad = |m: String| Err(SymError::MalformedNetwork(m));
    if tensors.is_empty() || tensors.len() != labels.len() {
        return bad("one label list per tensor required".into());
    }
    let mut count: BTreeMap<i32, usize> = BTreeMap::new();
    for (t, l) in tensors.iter().zip(labels) {
        if t.num_legs() != l.len() {
            return bad(format!("tensor with {} legs has {} labels", t.num_legs(), l.len()));
        }
        for &x in l {
            if x == 0 {
                return bad("label 0 is not allowed".into());
            }
            *count.entry(x).or_default() += 1;
        }
    }
    for (&x, &n) in &count {
        if (x > 0 && n != 2) || (x < 0 && n != 1) {
            return bad(format!("label {x} appears {n} times"));
        }
    }
    let positive: Vec<i32> = count.keys().copied().filter(|&x| x > 0).collect();
    let mut sorted_order = order.to_vec();
    sorted_order.sort();
    if sorted_order != positive {
        return bad(format!("order {order:?} must list each contracted label once"));
    }
    let open: Vec<i32> = count.keys().copied().filter(|&x| x < 0).collect();
    if n_codomain > open.len() {
        return bad(format!("{n_codomain} codomain legs requested but only {} open", open.len()));
    }

    let mut work: Vec<(TensorMap, Vec<i32>)> = Vec::new();
    for (t, l) in tensors.iter().zip(labels) {
        work.push(self_trace((*t).clone(), l.clone())?);
    }
    for &x in order {
        let holders: Vec<usize> = (0..work.len()).filter(|&i| work[i].1.contains(&x)).collect();
        match holders.as_slice() {
            [] => continue, // contracted together with an earlier label
            [i] => {
                let (t, l) = work.remove(*i);
                work.insert(*i, self_trace(t, l)?);
            }
            [i, j] => {
                let (tb, lb) = work.remove(*j);
                let (ta, la) = work.remove(*i);
                let shared: Vec<i32> = la.iter().copied().filter(|y| lb.contains(y)).collect();
                let q_a: Vec<usize> = shared.iter().map(|y| la.iter().position(|z| z == y).unwrap()).collect();
                let p_b: Vec<usize> = shared.iter().map(|y| lb.iter().position(|z| z == y).unwrap()).collect();
                let p_a: Vec<usize> = (0..la.len()).filter(|k| !q_a.contains(k)).collect();
                let q_b: Vec<usize> = (0..lb.len()).filter(|k| !p_b.contains(k)).collect();
                let n_out = p_a.len();
                let n_all = n_out + q_b.len();
                let p_ab: Vec<usize> = (0..n_out).collect();
                let q_ab: Vec<usize> = (n_out..n_all).collect();
                let c = ta.contract(&p_a, &q_a, &tb, &p_b, &q_b, &p_ab, &q_ab)?;
                let lc: Vec<i32> = p_a.iter().map(|&k| la[k]).chain(q_b.iter().map(|&k| lb[k])).collect();
                work.insert(*i, (c, lc));
            }
            _ => return bad(format!("label {x} is shared by more than two tensors")),
        }
    }
    let (mut result, mut lr) = work.remove(0);
    for (t, l) in work {
        result = result.outer_product(&t)?;
        lr.extend(l);
    }
    // open labels -1, -2, ... in that order
    let mut want = open.clone();
    want.sort_by(|a, b| b.cmp(a));
    let perm: Vec<usize> = want.iter().map(|y| lr.iter().position(|z| z == y).unwrap()).collect();
    let (p1, p2) = perm.split_at(n_codomain);
    result.rearrange(p1, p2)
}

/// Traces out labels that appear twice on the same tensor.
fn self_trace(t: TensorMap, labels: Vec<i32>) -> Result<(TensorMap, Vec<i32>)> {
    let mut q1 = Vec::new();
    let mut q2 = Vec::new();
    for (i, &x) in labels.iter().enumerate() {
        if let Some(j) = labels[i + 1..].iter().position(|&y| y == x) {
            q1.push(i);
            q2.push(i + 1 + j);
        }
    }
    if q1.is_empty() {
        return Ok((t, labels));
    }
    let n1 = t.num_out();
    let traced: Vec<usize> = q1.iter().chain(&q2).copied().collect();
    let p1: Vec<usize> = (0..n1).filter(|k| !traced.contains(k)).collect();
    let p2: Vec<usize> = (n1..labels.len()).filter(|k| !traced.contains(k)).collect();
    let rest: Vec<i32> = p1.iter().chain(&p2).map(|&k| labels[k]).collect();
    Ok((t.partial_trace(&p1, &p2, &q1, &q2)?, rest))
}
