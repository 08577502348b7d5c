//! Composite transformations of tree pairs, built from the elementary
//! moves and memoized.

use std::sync::Arc;

use super::cache::{memoize, Key, Op};
use super::elementary::{artin_braid, bend_left_raw, bend_right_raw, unbend_left_raw, unbend_right_raw};
use super::{add_to, prune, FusionTree, PairCoefficientMap, TreeCoefficientMap};
use crate::error::{Result, SymError};
use crate::sector::{Label, SectorDescriptor, C64};
use crate::zoo::SectorKind;

const ONE: C64 = C64::new(1.0, 0.0);

fn unit_map(s: &FusionTree, f: &FusionTree) -> PairCoefficientMap {
    let mut m = PairCoefficientMap::new();
    m.insert((s.clone(), f.clone()), ONE);
    m
}

fn check_coupled(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> Result<()> {
    if s.coupled != f.coupled {
        return Err(SymError::ChargeMismatch(format!(
            "coupled charges {} and {} differ",
            kind.format_label(&s.coupled),
            kind.format_label(&f.coupled)
        )));
    }
    Ok(())
}

fn apply(
    input: &PairCoefficientMap,
    mut step: impl FnMut(&FusionTree, &FusionTree) -> Result<Arc<PairCoefficientMap>>,
) -> Result<PairCoefficientMap> {
    let mut out = PairCoefficientMap::new();
    for ((s, f), c) in input {
        for (k, c2) in step(s, f)?.iter() {
            add_to(&mut out, k.clone(), c * c2);
        }
    }
    Ok(out)
}

fn lift(m: PairCoefficientMap) -> Result<Arc<PairCoefficientMap>> {
    Ok(Arc::new(m))
}

/// Re-partitions the legs so that the codomain holds the first `n` legs in
/// linear order, bending legs across the right end.
pub fn repartition(kind: &SectorKind, s: &FusionTree, f: &FusionTree, n: usize) -> Result<Arc<PairCoefficientMap>> {
    check_coupled(kind, s, f)?;
    let total = s.len() + f.len();
    if n > total {
        return Err(SymError::InvalidPermutation(format!("cannot place {n} of {total} legs in the codomain")));
    }
    let key = Key { op: Op::Repartition, kind: kind.clone(), s: s.clone(), f: f.clone(), params: vec![n] };
    memoize(key, || {
        let mut cur = unit_map(s, f);
        let mut n1 = s.len();
        while n1 > n {
            cur = apply(&cur, |a, b| lift(bend_right_raw(kind, a, b)))?;
            n1 -= 1;
        }
        while n1 < n {
            cur = apply(&cur, |a, b| lift(unbend_right_raw(kind, a, b)))?;
            n1 += 1;
        }
        Ok(prune(cur))
    })
}

pub(crate) fn check_permutation(p1: &[usize], p2: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if p1.len() + p2.len() != n {
        return Err(SymError::InvalidPermutation(format!("{p1:?} {p2:?} do not cover {n} legs")));
    }
    for &i in p1.iter().chain(p2) {
        if i >= n || seen[i] {
            return Err(SymError::InvalidPermutation(format!("{p1:?} {p2:?} is not a permutation of 0..{n}")));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Position of leg `j` in the linear order of a pair with `n1` codomain and
/// `n2` domain legs.
pub(crate) fn linear_position(j: usize, n1: usize, n2: usize) -> usize {
    if j < n1 {
        j
    } else {
        2 * n1 + n2 - 1 - j
    }
}

/// The permutation `(p1, p2)` expressed on linear positions.
pub(crate) fn linearize(p1: &[usize], p2: &[usize], n1: usize, n2: usize) -> Vec<usize> {
    p1.iter().chain(p2.iter().rev()).map(|&j| linear_position(j, n1, n2)).collect()
}

pub(crate) fn is_cyclic(p: &[usize]) -> bool {
    let n = p.len();
    (1..n).all(|k| p[k] == (p[k - 1] + 1) % n)
}

fn cycle_clockwise(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> Result<PairCoefficientMap> {
    let first = if !s.is_empty() { unbend_left_raw(kind, s, f) } else { unbend_right_raw(kind, s, f) };
    if !s.is_empty() {
        apply(&first, |a, b| lift(unbend_right_raw(kind, a, b)))
    } else {
        apply(&first, |a, b| lift(unbend_left_raw(kind, a, b)))
    }
}

fn cycle_anticlockwise(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> Result<PairCoefficientMap> {
    if !f.is_empty() {
        let first = bend_left_raw(kind, s, f);
        apply(&first, |a, b| lift(bend_right_raw(kind, a, b)))
    } else {
        let first = bend_right_raw(kind, s, f);
        apply(&first, |a, b| lift(bend_left_raw(kind, a, b)))
    }
}

/// Planar (cyclic) reordering of legs: the result has codomain legs `p1`
/// and domain legs `p2` (indices into the input legs, codomain first), where
/// `(p1, reverse(p2))` must be a rotation of the linear order.
pub fn transpose_pair(
    kind: &SectorKind,
    s: &FusionTree,
    f: &FusionTree,
    p1: &[usize],
    p2: &[usize],
) -> Result<Arc<PairCoefficientMap>> {
    check_coupled(kind, s, f)?;
    let (n1, n2) = (s.len(), f.len());
    let n = n1 + n2;
    check_permutation(p1, p2, n)?;
    let p = linearize(p1, p2, n1, n2);
    if !is_cyclic(&p) {
        return Err(SymError::NotCyclic(format!("{p1:?} {p2:?}")));
    }
    let mut params = p1.to_vec();
    params.push(usize::MAX);
    params.extend_from_slice(p2);
    let key = Key { op: Op::Transpose, kind: kind.clone(), s: s.clone(), f: f.clone(), params };
    memoize(key, || {
        let mut cur = (*repartition(kind, s, f, p1.len())?).clone();
        if n == 0 {
            return Ok(cur);
        }
        // 1-based position of the original leg 0
        let mut i1 = p.iter().position(|&x| x == 0).unwrap() + 1;
        let half = n / 2;
        while 1 < i1 && i1 <= half {
            cur = apply(&cur, |a, b| lift(cycle_anticlockwise(kind, a, b)?))?;
            i1 -= 1;
        }
        while i1 != 1 && half < i1 {
            cur = apply(&cur, |a, b| lift(cycle_clockwise(kind, a, b)?))?;
            i1 = if i1 == n { 1 } else { i1 + 1 };
        }
        Ok(prune(cur))
    })
}

/// Braids the legs of a single tree so that new leg `k` is old leg `p[k]`.
/// Adjacent exchanges go over or under according to `levels`: the leg with
/// the higher level passes in front.
pub fn braid_tree(kind: &SectorKind, t: &FusionTree, levels: &[usize], p: &[usize]) -> Result<TreeCoefficientMap> {
    let n = t.len();
    check_permutation(p, &[], n)?;
    let mut cur: Vec<usize> = (0..n).collect();
    let mut lev: Vec<usize> = levels.to_vec();
    let mut trees = TreeCoefficientMap::new();
    trees.insert(t.clone(), ONE);
    for k in 0..n {
        let mut j = cur.iter().position(|&x| x == p[k]).unwrap();
        while j > k {
            let sidx = j - 1;
            let inverse = lev[sidx] > lev[sidx + 1];
            let mut next = TreeCoefficientMap::new();
            for (tr, c) in &trees {
                for (tr2, c2) in artin_braid(kind, tr, sidx, inverse)? {
                    add_to(&mut next, tr2, c * c2);
                }
            }
            trees = next;
            cur.swap(sidx, sidx + 1);
            lev.swap(sidx, sidx + 1);
            j -= 1;
        }
    }
    Ok(prune(trees))
}

/// General braiding of a tree pair into codomain legs `p1` and domain legs
/// `p2`, with crossing order fixed by `levels1` (codomain) and `levels2`
/// (domain).
pub fn braid_pair(
    kind: &SectorKind,
    s: &FusionTree,
    f: &FusionTree,
    levels1: &[usize],
    levels2: &[usize],
    p1: &[usize],
    p2: &[usize],
) -> Result<Arc<PairCoefficientMap>> {
    check_coupled(kind, s, f)?;
    let (n1, n2) = (s.len(), f.len());
    check_permutation(p1, p2, n1 + n2)?;
    if levels1.len() != n1 || levels2.len() != n2 {
        return Err(SymError::InvalidPermutation("levels do not match tree lengths".into()));
    }
    if kind.braiding_style() == crate::sector::BraidingStyle::NoBraiding {
        return Err(SymError::BraidingUnavailable(kind.name()));
    }
    let mut params = p1.to_vec();
    params.push(usize::MAX);
    params.extend_from_slice(p2);
    params.push(usize::MAX);
    params.extend_from_slice(levels1);
    params.push(usize::MAX);
    params.extend_from_slice(levels2);
    let key = Key { op: Op::Braid, kind: kind.clone(), s: s.clone(), f: f.clone(), params };
    memoize(key, || {
        let p = linearize(p1, p2, n1, n2);
        let levels: Vec<usize> = levels1.iter().chain(levels2.iter().rev()).copied().collect();
        let mut out = PairCoefficientMap::new();
        for ((t, f0), c1) in repartition(kind, s, f, n1 + n2)?.iter() {
            for (t2, c2) in braid_tree(kind, t, &levels, &p)? {
                for (k, c3) in repartition(kind, &t2, f0, p1.len())?.iter() {
                    add_to(&mut out, k.clone(), c1 * c2 * c3);
                }
            }
        }
        Ok(prune(out))
    })
}

/// Permutation of legs for symmetric (bosonic or fermionic) braidings.
pub fn permute_pair(
    kind: &SectorKind,
    s: &FusionTree,
    f: &FusionTree,
    p1: &[usize],
    p2: &[usize],
) -> Result<Arc<PairCoefficientMap>> {
    if !kind.braiding_style().is_symmetric() {
        return Err(SymError::BraidingUnavailable(format!(
            "permutation requires a symmetric braiding; {} is {:?}",
            kind.name(),
            kind.braiding_style()
        )));
    }
    let l1: Vec<usize> = (0..s.len()).collect();
    let l2: Vec<usize> = (s.len()..s.len() + f.len()).collect();
    braid_pair(kind, s, f, &l1, &l2, p1, p2)
}

/// Contracts adjacent legs `k`, `k + 1` of a tree; zero if they do not
/// carry dual charges on a line that closes.
fn elementary_trace(kind: &SectorKind, t: &FusionTree, k: usize) -> Result<Option<(FusionTree, C64)>> {
    let n = t.len();
    let b = &t.uncoupled[k];
    let bp = &t.uncoupled[k + 1];
    if t.isdual[k] == t.isdual[k + 1] {
        return Err(SymError::NonMatchingTracePair("traced legs must pair a space with its dual".into()));
    }
    if *bp != kind.dual(b) {
        return Ok(None);
    }
    let one = kind.unit();
    let a = if k == 0 { one.clone() } else { t.line(k - 1).clone() };
    let d = t.line(k + 1);
    if a != *d {
        return Ok(None);
    }
    let mut u = t.uncoupled.clone();
    u.drain(k..k + 2);
    let mut isd = t.isdual.clone();
    isd.drain(k..k + 2);
    let lines: Vec<Label> = (0..n).map(|j| t.line(j).clone()).collect();
    let mut new_lines: Vec<Label> = if k == 0 { lines[2..].to_vec() } else { [&lines[..k], &lines[k + 2..]].concat() };
    let mut verts = t.vertices.clone();
    if k == 0 {
        verts.drain(0..verts.len().min(2));
    } else {
        verts.drain(k - 1..k + 1);
    }
    let m = u.len();
    if m == 0 {
        new_lines.clear();
    }
    let inner = if m > 2 { new_lines[1..m - 1].to_vec() } else { vec![] };
    let out = FusionTree::raw(u, t.coupled.clone(), isd, inner, verts);
    let mut coeff = C64::new(kind.qdim(b).sqrt(), 0.0);
    if k > 0 {
        let c = t.line(k);
        let fa = kind.fsymbol(&a, b, bp, &a, c, &one);
        coeff *= fa.get(t.vertices[k - 1], t.vertices[k], 0, 0);
    }
    if t.isdual[k] {
        coeff *= kind.frobenius_schur(b);
    }
    Ok(Some((out, coeff)))
}

/// Planar partial trace: legs `q1[i]` and `q2[i]` are contracted, the
/// remaining legs form codomain `p1` and domain `p2`. The contraction lines
/// must not cross each other or enclose open legs, and the open legs must
/// keep their cyclic order.
pub fn planar_trace_pair(
    kind: &SectorKind,
    s: &FusionTree,
    f: &FusionTree,
    p1: &[usize],
    p2: &[usize],
    q1: &[usize],
    q2: &[usize],
) -> Result<Arc<PairCoefficientMap>> {
    check_coupled(kind, s, f)?;
    let (n1, n2) = (s.len(), f.len());
    let n = n1 + n2;
    if q1.len() != q2.len() {
        return Err(SymError::NonMatchingTracePair("trace index lists differ in length".into()));
    }
    let all: Vec<usize> = p1.iter().chain(q1).copied().collect();
    let all2: Vec<usize> = p2.iter().chain(q2).copied().collect();
    check_permutation(&all, &all2, n)?;
    let params: Vec<usize> = [p1, &[usize::MAX], p2, &[usize::MAX], q1, &[usize::MAX], q2].concat();
    let key = Key { op: Op::PlanarTrace, kind: kind.clone(), s: s.clone(), f: f.clone(), params };
    memoize(key, || {
        // rotate so that linear order starts at the first output leg
        let inv_lin = |x: usize| if x < n1 { x } else { 2 * n1 + n2 - 1 - x };
        let start = if let Some(&j) = p1.first() {
            linear_position(j, n1, n2)
        } else if let Some(&j) = p2.last() {
            linear_position(j, n1, n2)
        } else {
            0
        };
        let seq: Vec<usize> = (0..n).map(|k| inv_lin((start + k) % n.max(1))).collect();
        let rotated = transpose_pair(kind, s, f, &seq, &[])?;
        let partner = |j: usize| -> Option<usize> {
            q1.iter().position(|&x| x == j).map(|i| q2[i]).or_else(|| q2.iter().position(|&x| x == j).map(|i| q1[i]))
        };
        let mut out = PairCoefficientMap::new();
        for ((t, f0), c0) in rotated.iter() {
            let mut cur = seq.clone();
            let mut tree = t.clone();
            let mut coeff = *c0;
            let mut alive = true;
            while alive && cur.iter().any(|&j| partner(j).is_some()) {
                let k = (0..cur.len().saturating_sub(1)).find(|&k| partner(cur[k]) == Some(cur[k + 1]));
                let Some(k) = k else {
                    return Err(SymError::NotCyclic("trace is not planar".into()));
                };
                match elementary_trace(kind, &tree, k)? {
                    Some((t2, c)) => {
                        tree = t2;
                        coeff *= c;
                        cur.drain(k..k + 2);
                    }
                    None => alive = false,
                }
            }
            if !alive {
                continue;
            }
            let pos = |j: usize| cur.iter().position(|&x| x == j).unwrap();
            let r1: Vec<usize> = p1.iter().map(|&j| pos(j)).collect();
            let r2: Vec<usize> = p2.iter().map(|&j| pos(j)).collect();
            for (k, c) in transpose_pair(kind, &tree, f0, &r1, &r2)?.iter() {
                add_to(&mut out, k.clone(), coeff * c);
            }
        }
        Ok(prune(out))
    })
}

/// Partial trace of a tree pair. Symmetric braidings first permute the
/// traced legs next to each other; other braidings require a planar trace.
pub fn trace_pair(
    kind: &SectorKind,
    s: &FusionTree,
    f: &FusionTree,
    p1: &[usize],
    p2: &[usize],
    q1: &[usize],
    q2: &[usize],
) -> Result<Arc<PairCoefficientMap>> {
    if !kind.braiding_style().is_symmetric() {
        return planar_trace_pair(kind, s, f, p1, p2, q1, q2);
    }
    check_coupled(kind, s, f)?;
    let params: Vec<usize> = [p1, &[usize::MAX], p2, &[usize::MAX], q1, &[usize::MAX], q2].concat();
    let key = Key { op: Op::Trace, kind: kind.clone(), s: s.clone(), f: f.clone(), params };
    memoize(key, || {
        let c1: Vec<usize> = p1.iter().chain(q1).copied().collect();
        let c2: Vec<usize> = p2.iter().chain(q2).copied().collect();
        let m = q1.len();
        let np1 = p1.len();
        let np2 = p2.len();
        let nq1: Vec<usize> = (np1..np1 + m).collect();
        let nq2: Vec<usize> = (np1 + m + np2..np1 + m + np2 + m).collect();
        let o1: Vec<usize> = (0..np1).collect();
        let o2: Vec<usize> = (np1 + m..np1 + m + np2).collect();
        let mut out = PairCoefficientMap::new();
        for ((a, b), c) in permute_pair(kind, s, f, &c1, &c2)?.iter() {
            for (k, c2) in planar_trace_pair(kind, a, b, &o1, &o2, &nq1, &nq2)?.iter() {
                add_to(&mut out, k.clone(), c * c2);
            }
        }
        Ok(prune(out))
    })
}
