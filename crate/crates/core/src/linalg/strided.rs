use crate::sector::C64;

/// Offset and per-dimension strides into a flat buffer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StridedView {
    pub offset: usize,
    pub strides: Vec<usize>,
}

impl StridedView {
    pub fn new(offset: usize, strides: Vec<usize>) -> Self {
        StridedView { offset, strides }
    }

    /// Column-major strides for `shape` inside a column-major matrix with
    /// leading dimension `ld`: the first `nrow` dimensions index rows, the
    /// rest index columns.
    pub fn in_matrix(offset: usize, shape: &[usize], nrow: usize, ld: usize) -> Self {
        let mut strides = Vec::with_capacity(shape.len());
        let mut s = 1;
        for &d in &shape[..nrow] {
            strides.push(s);
            s *= d;
        }
        let mut s = ld;
        for &d in &shape[nrow..] {
            strides.push(s);
            s *= d;
        }
        StridedView { offset, strides }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        StridedView { offset: self.offset, strides: perm.iter().map(|&k| self.strides[k]).collect() }
    }
}

const TILE: usize = 16;

/// `dst[i] += alpha * src[i]` over the index box `shape`. A zero stride in
/// `dst` sums over that dimension, which is how traces are expressed.
pub fn strided_axpy(shape: &[usize], alpha: C64, src: &[C64], s: &StridedView, dst: &mut [C64], d: &StridedView) {
    assert_eq!(shape.len(), s.strides.len());
    assert_eq!(shape.len(), d.strides.len());
    if shape.contains(&0) {
        return;
    }
    let dims: Vec<(usize, usize, usize)> =
        (0..shape.len()).filter(|&k| shape[k] > 1).map(|k| (shape[k], s.strides[k], d.strides[k])).collect();
    if dims.is_empty() {
        dst[d.offset] += alpha * src[s.offset];
        return;
    }
    // innermost: contiguous in dst if possible; second: contiguous in src
    let a = (0..dims.len())
        .filter(|&k| dims[k].2 > 0)
        .min_by_key(|&k| dims[k].2)
        .unwrap_or_else(|| (0..dims.len()).min_by_key(|&k| dims[k].1).unwrap());
    let b = (0..dims.len()).filter(|&k| k != a).min_by_key(|&k| dims[k].1);
    let outer: Vec<usize> = (0..dims.len()).filter(|&k| k != a && Some(k) != b).collect();
    let (na, sa, da) = dims[a];
    let (nb, sb, db) = b.map(|k| dims[k]).unwrap_or((1, 0, 0));
    let tile = sb < sa && nb > TILE && na > TILE;

    let mut idx = vec![0usize; outer.len()];
    let (mut so, mut dof) = (s.offset, d.offset);
    loop {
        if tile {
            for jb0 in (0..nb).step_by(TILE) {
                for ia0 in (0..na).step_by(TILE) {
                    for jb in jb0..(jb0 + TILE).min(nb) {
                        for ia in ia0..(ia0 + TILE).min(na) {
                            dst[dof + ia * da + jb * db] += alpha * src[so + ia * sa + jb * sb];
                        }
                    }
                }
            }
        } else {
            for jb in 0..nb {
                let (s0, d0) = (so + jb * sb, dof + jb * db);
                if da == 1 && sa == 1 {
                    let (dd, ss) = (&mut dst[d0..d0 + na], &src[s0..s0 + na]);
                    for (x, y) in dd.iter_mut().zip(ss) {
                        *x += alpha * y;
                    }
                } else {
                    for ia in 0..na {
                        dst[d0 + ia * da] += alpha * src[s0 + ia * sa];
                    }
                }
            }
        }
        // odometer over the remaining dimensions
        let mut k = 0;
        loop {
            if k == outer.len() {
                return;
            }
            let (n, ss, ds) = dims[outer[k]];
            idx[k] += 1;
            so += ss;
            dof += ds;
            if idx[k] < n {
                break;
            }
            so -= ss * n;
            dof -= ds * n;
            idx[k] = 0;
            k += 1;
        }
    }
}
