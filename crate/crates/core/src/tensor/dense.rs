//! Dense reference representation for group-like sectors.
//!
//! A leg over the graded space `V = ⊕_a C^{n_a} ⊗ V_a` is expanded with
//! basis index `offset_a + i + n_a * m`, where `i` counts the degeneracy and
//! `m` the state inside the irrep (for SU(2), `m = -j, ..., j` in
//! increasing order). Splitting trees become products of Clebsch–Gordan
//! coefficients, and a dual leg is mapped to its conjugate irrep with the
//! isomorphism `Z_{m', m} = (-1)^{j - m} δ_{m', -m}`.

use super::TensorMap;
use crate::error::{Result, SymError};
use crate::fusion_trees::FusionTree;
use crate::linalg::Matrix;
use crate::sector::{Label, SectorDescriptor, C64};
use crate::spaces::GradedSpace;
use crate::zoo::{clebsch_gordan, SectorKind};

/// Column-major dense array; tensor maps use codomain legs first.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor {
    pub shape: Vec<usize>,
    pub data: Vec<C64>,
}

impl DenseTensor {
    pub fn zeros(shape: Vec<usize>) -> Self {
        let n = shape.iter().product();
        DenseTensor { shape, data: vec![C64::new(0.0, 0.0); n] }
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = Vec::with_capacity(self.shape.len());
        let mut acc = 1;
        for &d in &self.shape {
            s.push(acc);
            acc *= d;
        }
        s
    }

    pub fn linear(&self, idx: &[usize]) -> usize {
        idx.iter().zip(self.strides()).map(|(i, s)| i * s).sum()
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.data[self.linear(idx)]
    }

    fn unravel(&self, mut lin: usize) -> Vec<usize> {
        self.shape
            .iter()
            .map(|&d| {
                let i = lin % d;
                lin /= d;
                i
            })
            .collect()
    }

    /// Result leg `k` is input leg `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> DenseTensor {
        let shape: Vec<usize> = perm.iter().map(|&k| self.shape[k]).collect();
        let mut out = DenseTensor::zeros(shape);
        let st = self.strides();
        for lin in 0..out.data.len() {
            let idx = out.unravel(lin);
            let src: usize = idx.iter().zip(perm).map(|(i, &k)| i * st[k]).sum();
            out.data[lin] = self.data[src];
        }
        out
    }

    /// Sums over the diagonal of each leg pair; remaining legs keep their
    /// order.
    pub fn trace(&self, pairs: &[(usize, usize)]) -> DenseTensor {
        let traced: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let keep: Vec<usize> = (0..self.rank()).filter(|k| !traced.contains(k)).collect();
        let mut out = DenseTensor::zeros(keep.iter().map(|&k| self.shape[k]).collect());
        for lin in 0..self.data.len() {
            let idx = self.unravel(lin);
            if pairs.iter().all(|&(a, b)| idx[a] == idx[b]) {
                let o: Vec<usize> = keep.iter().map(|&k| idx[k]).collect();
                let ol = out.linear(&o);
                out.data[ol] += self.data[lin];
            }
        }
        out
    }

    /// Contracts legs `ax_self[i]` with `ax_other[i]`; result legs are the
    /// open legs of `self` followed by those of `other`.
    pub fn contract(&self, ax_self: &[usize], other: &DenseTensor, ax_other: &[usize]) -> DenseTensor {
        let open_a: Vec<usize> = (0..self.rank()).filter(|k| !ax_self.contains(k)).collect();
        let open_b: Vec<usize> = (0..other.rank()).filter(|k| !ax_other.contains(k)).collect();
        let a = self.permute(&[open_a.clone(), ax_self.to_vec()].concat());
        let b = other.permute(&[ax_other.to_vec(), open_b.clone()].concat());
        let m: usize = open_a.iter().map(|&k| self.shape[k]).product();
        let kk: usize = ax_self.iter().map(|&k| self.shape[k]).product();
        let n: usize = open_b.iter().map(|&k| other.shape[k]).product();
        let mut data = vec![C64::new(0.0, 0.0); m * n];
        for j in 0..n {
            for l in 0..kk {
                let y = b.data[l + kk * j];
                if y == C64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..m {
                    data[i + m * j] += a.data[i + m * l] * y;
                }
            }
        }
        let shape = open_a.iter().map(|&k| self.shape[k]).chain(open_b.iter().map(|&k| other.shape[k])).collect();
        DenseTensor { shape, data }
    }

    pub fn outer(&self, other: &DenseTensor) -> DenseTensor {
        self.contract(&[], other, &[])
    }

    pub fn conj(&self) -> DenseTensor {
        DenseTensor { shape: self.shape.clone(), data: self.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn scale(&self, s: C64) -> DenseTensor {
        DenseTensor { shape: self.shape.clone(), data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &DenseTensor) -> f64 {
        assert_eq!(self.shape, other.shape, "dense shapes differ");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Matrix with the first `n_rows` legs as rows.
    pub fn to_matrix(&self, n_rows: usize) -> Matrix {
        let r = self.shape[..n_rows].iter().product();
        let c = self.shape[n_rows..].iter().product();
        Matrix::from_col_major(r, c, self.data.clone())
    }

    pub fn from_matrix(m: &Matrix, shape: Vec<usize>) -> DenseTensor {
        assert_eq!(shape.iter().product::<usize>(), m.rows() * m.cols());
        DenseTensor { shape, data: m.data().to_vec() }
    }
}

/// Dimension of the irrep `a`.
pub fn irrep_dim(kind: &SectorKind, a: &Label) -> usize {
    match kind {
        SectorKind::SU2(_) => a.parts()[0] as usize + 1,
        SectorKind::Product(p) => p.components().iter().enumerate().map(|(i, k)| irrep_dim(k, &a.component(i))).product(),
        _ => 1,
    }
}

/// Clebsch–Gordan array `⟨a m_a; b m_b | c m_c⟩` of shape (d_a, d_b, d_c).
fn cg_array(kind: &SectorKind, a: &Label, b: &Label, c: &Label) -> Vec<C64> {
    match kind {
        SectorKind::SU2(_) => {
            let (ta, tb, tc) = (a.parts()[0], b.parts()[0], c.parts()[0]);
            let (da, db, dc) = (ta as usize + 1, tb as usize + 1, tc as usize + 1);
            let mut out = vec![C64::new(0.0, 0.0); da * db * dc];
            for ia in 0..da {
                for ib in 0..db {
                    let (ma, mb) = (-ta + 2 * ia as i32, -tb + 2 * ib as i32);
                    let mc = ma + mb;
                    if mc.abs() > tc {
                        continue;
                    }
                    let ic = ((mc + tc) / 2) as usize;
                    let v = clebsch_gordan(ta as u32, ma, tb as u32, mb, tc as u32, mc);
                    out[ia + da * (ib + db * ic)] = C64::new(v, 0.0);
                }
            }
            out
        }
        SectorKind::Product(p) => {
            let mut acc = vec![C64::new(1.0, 0.0)];
            let mut dims = (1, 1, 1);
            for (i, k) in p.components().iter().enumerate() {
                let (ai, bi, ci) = (a.component(i), b.component(i), c.component(i));
                let part = cg_array(k, &ai, &bi, &ci);
                let (da, db, dc) = (irrep_dim(k, &ai), irrep_dim(k, &bi), irrep_dim(k, &ci));
                acc = kron3(&acc, dims, &part, (da, db, dc));
                dims = (dims.0 * da, dims.1 * db, dims.2 * dc);
            }
            acc
        }
        _ => vec![C64::new(1.0, 0.0)],
    }
}

/// Combines two 3-index arrays with the first factor's indices fastest.
fn kron3(x: &[C64], (xa, xb, xc): (usize, usize, usize), y: &[C64], (ya, yb, yc): (usize, usize, usize)) -> Vec<C64> {
    let (da, db) = (xa * ya, xb * yb);
    let mut out = vec![C64::new(0.0, 0.0); da * db * xc * yc];
    for kc in 0..yc {
        for kb in 0..yb {
            for ka in 0..ya {
                let yv = y[ka + ya * (kb + yb * kc)];
                if yv == C64::new(0.0, 0.0) {
                    continue;
                }
                for jc in 0..xc {
                    for jb in 0..xb {
                        for ja in 0..xa {
                            let xv = x[ja + xa * (jb + xb * jc)];
                            let (ia, ib, ic) = (ja + xa * ka, jb + xb * kb, jc + xc * kc);
                            out[ia + da * (ib + db * ic)] = xv * yv;
                        }
                    }
                }
            }
        }
    }
    out
}

/// The isomorphism from the dual of irrep `a` onto irrep `ā`.
pub fn z_matrix(kind: &SectorKind, a: &Label) -> Matrix {
    match kind {
        SectorKind::SU2(_) => {
            let tj = a.parts()[0];
            let d = tj as usize + 1;
            let mut z = Matrix::zeros(d, d);
            for k in 0..d {
                let tm = -tj + 2 * k as i32;
                let kp = ((-tm + tj) / 2) as usize;
                let sign = if ((tj - tm) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                z[(kp, k)] = C64::new(sign, 0.0);
            }
            z
        }
        SectorKind::Product(p) => {
            let mut acc = Matrix::identity(1);
            for (i, k) in p.components().iter().enumerate() {
                let part = z_matrix(k, &a.component(i));
                let (r1, r2) = (acc.rows(), part.rows());
                acc = Matrix::from_fn(r1 * r2, r1 * r2, |x, y| acc[(x % r1, y % r1)] * part[(x / r1, y / r1)]);
            }
            acc
        }
        _ => Matrix::identity(1),
    }
}

/// Dense splitting tensor of a tree as a matrix (states of the legs, with
/// the first leg fastest) × (states of the coupled irrep).
pub fn splitting_tensor(kind: &SectorKind, tree: &FusionTree) -> Matrix {
    let n = tree.len();
    if n == 0 {
        return Matrix::identity(1);
    }
    let mut x = Matrix::identity(irrep_dim(kind, &tree.uncoupled[0]));
    for k in 1..n {
        let (l, u, l2) = (tree.line(k - 1), &tree.uncoupled[k], tree.line(k));
        let (dl, du, dl2) = (irrep_dim(kind, l), irrep_dim(kind, u), irrep_dim(kind, l2));
        let cg = Matrix::from_col_major(dl, du * dl2, cg_array(kind, l, u, l2));
        let p = x.rows();
        let y = x.matmul(&cg);
        x = Matrix::from_col_major(p * du, dl2, y.into_data());
    }
    // move dual legs back to the dual basis: apply Z† on those legs
    let dims: Vec<usize> = tree.uncoupled.iter().map(|a| irrep_dim(kind, a)).collect();
    for k in 0..n {
        if tree.isdual[k] {
            let zd = z_matrix(kind, &kind.dual(&tree.uncoupled[k])).adjoint();
            x = apply_on_leg(&x, &dims, k, &zd);
        }
    }
    x
}

/// Applies `m` (acting on the states of leg `k`) to the rows of `x`.
fn apply_on_leg(x: &Matrix, dims: &[usize], k: usize, m: &Matrix) -> Matrix {
    let inner: usize = dims[..k].iter().product();
    let dk = dims[k];
    let outer = x.rows() / (inner * dk);
    let mut out = Matrix::zeros(x.rows(), x.cols());
    for c in 0..x.cols() {
        for o in 0..outer {
            for a in 0..dk {
                for b in 0..dk {
                    let mv = m[(a, b)];
                    if mv == C64::new(0.0, 0.0) {
                        continue;
                    }
                    for i in 0..inner {
                        out[(i + inner * (a + dk * o), c)] += mv * x[(i + inner * (b + dk * o), c)];
                    }
                }
            }
        }
    }
    out
}

/// Start of each sector's states in the dense basis of a leg, indexed by
/// the tree label used on that leg.
fn leg_offsets(kind: &SectorKind, v: &GradedSpace) -> Vec<(Label, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for (a, n) in v.degeneracies() {
        let tree_label = if v.is_dual() { kind.dual(a) } else { a.clone() };
        out.push((tree_label, off, *n));
        off += n * irrep_dim(kind, a);
    }
    out
}

pub fn dense_dim(kind: &SectorKind, v: &GradedSpace) -> usize {
    v.degeneracies().iter().map(|(a, n)| n * irrep_dim(kind, a)).sum()
}

impl TensorMap {
    /// Dense array of the map, codomain legs first. Only group-like sectors
    /// have one.
    pub fn to_dense(&self) -> Result<DenseTensor> {
        let kind = self.kind().clone();
        if !kind.is_group_like() {
            return Err(SymError::NoDenseRepresentation(kind.name()));
        }
        let (n1, n) = (self.num_out(), self.num_legs());
        let spaces: Vec<GradedSpace> = self.codomain().spaces().iter().chain(self.domain().spaces()).cloned().collect();
        let shape: Vec<usize> = spaces.iter().map(|v| dense_dim(&kind, v)).collect();
        let offsets: Vec<Vec<(Label, usize, usize)>> = spaces.iter().map(|v| leg_offsets(&kind, v)).collect();
        let mut out = DenseTensor::zeros(shape);
        let st = out.strides();
        for (c, block) in self.blocks() {
            for rs in &self.structure.rows.charges[c] {
                let xs = splitting_tensor(&kind, &rs.tree);
                for cs in &self.structure.cols.charges[c] {
                    let xf = splitting_tensor(&kind, &cs.tree);
                    let k = xs.matmul(&xf.adjoint());
                    let trees = [&rs.tree, &cs.tree];
                    // per leg: (offset of its sector, degeneracy, irrep dim)
                    let legs: Vec<(usize, usize, usize)> = (0..n)
                        .map(|l| {
                            let (t, i) = if l < n1 { (trees[0], l) } else { (trees[1], l - n1) };
                            let lab = &t.uncoupled[i];
                            let (_, off, deg) = offsets[l].iter().find(|(x, _, _)| x == lab).expect("leg sector");
                            (*off, *deg, irrep_dim(&kind, lab))
                        })
                        .collect();
                    let sdim = |range: std::ops::Range<usize>| -> usize { range.map(|l| legs[l].2).product() };
                    let (ms_total, mf_total) = (sdim(0..n1), sdim(n1..n));
                    for mf in 0..mf_total {
                        for ms in 0..ms_total {
                            let kv = k[(ms, mf)];
                            if kv.norm() < 1e-300 {
                                continue;
                            }
                            let mut base = 0;
                            let (mut r1, mut r2) = (ms, mf);
                            let mut m_idx = vec![0; n];
                            for l in 0..n {
                                let d = legs[l].2;
                                if l < n1 {
                                    m_idx[l] = r1 % d;
                                    r1 /= d;
                                } else {
                                    m_idx[l] = r2 % d;
                                    r2 /= d;
                                }
                                base += (legs[l].0 + legs[l].1 * m_idx[l]) * st[l];
                            }
                            for jf in 0..cs.extent {
                                for js in 0..rs.extent {
                                    let v = block[(rs.offset + js, cs.offset + jf)];
                                    let (mut a, mut b) = (js, jf);
                                    let mut pos = base;
                                    for l in 0..n {
                                        let deg = legs[l].1;
                                        let i = if l < n1 {
                                            let i = a % deg;
                                            a /= deg;
                                            i
                                        } else {
                                            let i = b % deg;
                                            b /= deg;
                                            i
                                        };
                                        pos += i * st[l];
                                    }
                                    out.data[pos] += kv * v;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}
