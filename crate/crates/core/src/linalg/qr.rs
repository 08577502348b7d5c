use super::{norm2, Matrix};
use crate::sector::C64;

/// Thin Householder QR: `a = q r` with `q` m×k isometric, `r` k×n upper
/// triangular and a real non-negative diagonal, k = min(m, n).
pub fn qr(a: &Matrix) -> (Matrix, Matrix) {
    let (m, n) = (a.rows(), a.cols());
    let k = m.min(n);
    let mut r = a.clone();
    let mut reflectors: Vec<Vec<C64>> = Vec::with_capacity(k);
    let mut diag_phase = vec![C64::new(1.0, 0.0); k];
    for j in 0..k {
        let x: Vec<C64> = r.col(j)[j..].to_vec();
        let nx = norm2(&x);
        if nx == 0.0 {
            reflectors.push(Vec::new());
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
        let alpha = -phase * nx;
        let mut v = x;
        v[0] -= alpha;
        let nv = norm2(&v);
        for y in v.iter_mut() {
            *y /= nv;
        }
        // apply (1 - 2 v v†) to the trailing columns
        for c in j..n {
            let col = &mut r.col_mut(c)[j..];
            let s: C64 = v.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum::<C64>() * 2.0;
            for (y, vi) in col.iter_mut().zip(&v) {
                *y -= s * vi;
            }
        }
        for i in j + 1..m {
            r[(i, j)] = C64::new(0.0, 0.0);
        }
        diag_phase[j] = -phase;
        reflectors.push(v);
    }
    let mut q = Matrix::zeros(m, k);
    for i in 0..k {
        q[(i, i)] = C64::new(1.0, 0.0);
    }
    for j in (0..k).rev() {
        let v = &reflectors[j];
        if v.is_empty() {
            continue;
        }
        for c in 0..k {
            let col = &mut q.col_mut(c)[j..];
            let s: C64 = v.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum::<C64>() * 2.0;
            for (y, vi) in col.iter_mut().zip(v) {
                *y -= s * vi;
            }
        }
    }
    // make the diagonal of r real and non-negative
    let mut r_thin = Matrix::zeros(k, n);
    for c in 0..n {
        for i in 0..k.min(c + 1) {
            r_thin[(i, c)] = r[(i, c)];
        }
    }
    for j in 0..k {
        let p = diag_phase[j];
        for c in j..n {
            r_thin[(j, c)] *= p.conj();
        }
        for y in q.col_mut(j) {
            *y *= p;
        }
        r_thin[(j, j)] = C64::new(r_thin[(j, j)].re.max(0.0), 0.0);
    }
    (q, r_thin)
}

/// Thin LQ: `a = l q` with `q` k×n co-isometric and `l` lower triangular.
pub fn lq(a: &Matrix) -> (Matrix, Matrix) {
    let (q, r) = qr(&a.adjoint());
    (r.adjoint(), q.adjoint())
}
