use super::{complete_basis, dot, norm2, qr, Matrix};
use crate::sector::C64;

const MAX_SWEEPS: usize = 80;

/// Thin SVD `a = u diag(s) vh` by one-sided Jacobi, with a QR pre-reduction
/// for rectangular input. Singular values come out non-increasing; columns
/// of `u` for (numerically) vanishing values are completed to an
/// orthonormal set.
pub fn svd(a: &Matrix) -> (Matrix, Vec<f64>, Matrix) {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        let k = m.min(n);
        return (Matrix::zeros(m, k), Vec::new(), Matrix::zeros(k, n));
    }
    if m < n {
        let (u, s, vh) = svd(&a.adjoint());
        return (vh.adjoint(), s, u.adjoint());
    }
    if m > n {
        let (q, r) = qr(a);
        let (u, s, vh) = jacobi_square(&r);
        return (q.matmul(&u), s, vh);
    }
    jacobi_square(a)
}

fn jacobi_square(a: &Matrix) -> (Matrix, Vec<f64>, Matrix) {
    let n = a.cols();
    let mut w = a.clone();
    let mut v = Matrix::identity(n);
    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm2(w.col(p)).powi(2);
                let beta = norm2(w.col(q)).powi(2);
                let gamma = dot(w.col(p), w.col(q));
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                jacobi_rotate(&mut w, p, q, c, s, phase);
                jacobi_rotate(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<(f64, usize)> = (0..n).map(|j| (norm2(w.col(j)), j)).collect();
    sv.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    let smax = sv[0].0;
    let mut u = Matrix::zeros(n, n);
    let mut vh = Matrix::zeros(n, n);
    let mut s = Vec::with_capacity(n);
    let mut degenerate = Vec::new();
    for (k, &(sk, j)) in sv.iter().enumerate() {
        s.push(sk);
        if sk > smax * 1e-13 && sk > f64::MIN_POSITIVE {
            for (x, y) in u.col_mut(k).iter_mut().zip(w.col(j)) {
                *x = y / sk;
            }
        } else {
            degenerate.push(k);
        }
        for i in 0..n {
            vh[(k, i)] = v[(i, j)].conj();
        }
    }
    if !degenerate.is_empty() {
        complete_basis(&mut u, &degenerate);
    }
    (u, s, vh)
}

/// Right-multiplies columns p, q by [[c, s e^{iφ}], [-s e^{-iφ}, c]].
pub(crate) fn jacobi_rotate(m: &mut Matrix, p: usize, q: usize, c: f64, s: f64, phase: C64) {
    let rows = m.rows();
    let data = m.data_mut();
    let (sp, sq) = (s * phase, s * phase.conj());
    for i in 0..rows {
        let x = data[i + p * rows];
        let y = data[i + q * rows];
        data[i + p * rows] = x * c - sq * y;
        data[i + q * rows] = sp * x + y * c;
    }
}
