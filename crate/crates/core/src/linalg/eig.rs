use super::svd::jacobi_rotate;
use super::Matrix;
use crate::error::{Result, SymError};
use crate::sector::C64;

const MAX_SWEEPS: usize = 80;

/// Hermitian eigendecomposition by cyclic Jacobi: `a = v diag(w) v†` with
/// `w` ascending. Only the Hermitian part of `a` is used.
pub fn eigh(a: &Matrix) -> (Vec<f64>, Matrix) {
    let n = a.rows();
    assert_eq!(n, a.cols(), "eigh needs a square matrix");
    let mut h = Matrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = Matrix::identity(n);
    let scale = h.norm();
    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let gamma = h[(p, q)];
                let g = gamma.norm();
                let (alpha, beta) = (h[(p, p)].re, h[(q, q)].re);
                if g <= 1e-300 || g <= 1e-18 * scale || g <= eps * (alpha.abs() * beta.abs()).sqrt() * 0.5 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta == 0.0 { 1.0 } else { zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt()) };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                jacobi_rotate(&mut h, p, q, c, s, phase);
                rotate_rows(&mut h, p, q, c, s, phase);
                h[(p, q)] = C64::new(0.0, 0.0);
                h[(q, p)] = C64::new(0.0, 0.0);
                let (hp, hq) = (h[(p, p)].re, h[(q, q)].re);
                h[(p, p)] = C64::new(hp, 0.0);
                h[(q, q)] = C64::new(hq, 0.0);
                jacobi_rotate(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h[(i, i)].re.total_cmp(&h[(j, j)].re).then(i.cmp(&j)));
    let w = order.iter().map(|&i| h[(i, i)].re).collect();
    let vs = Matrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    (w, vs)
}

/// Left-multiplies rows p, q by the adjoint of the rotation used in
/// `jacobi_rotate`.
fn rotate_rows(m: &mut Matrix, p: usize, q: usize, c: f64, s: f64, phase: C64) {
    for j in 0..m.cols() {
        let x = m[(p, j)];
        let y = m[(q, j)];
        m[(p, j)] = x * c - s * phase * y;
        m[(q, j)] = s * phase.conj() * x + y * c;
    }
}

/// Eigendecomposition of a normal matrix, `a = v diag(w) v†` with unitary
/// `v`, via joint diagonalization of its Hermitian and anti-Hermitian parts.
/// Non-normal input is rejected.
pub fn eig_normal(a: &Matrix) -> Result<(Vec<C64>, Matrix)> {
    let n = a.rows();
    if n != a.cols() {
        return Err(SymError::NotSquare(format!("{}x{}", a.rows(), a.cols())));
    }
    let scale = a.norm().max(f64::MIN_POSITIVE);
    let ah = a.adjoint();
    let comm = a.matmul(&ah).max_abs_diff(&ah.matmul(a)) / (scale * scale);
    if comm > 1e-10 {
        return Err(SymError::NotNormal(comm));
    }
    let h = Matrix::from_fn(n, n, |i, j| (a[(i, j)] + ah[(i, j)]) * 0.5);
    let k = Matrix::from_fn(n, n, |i, j| (a[(i, j)] - ah[(i, j)]) * C64::new(0.0, -0.5));
    let mut best: Option<(f64, Vec<C64>, Matrix)> = None;
    // irrational mixing weights make accidental degeneracies of h + αk
    // that are not degeneracies of a vanishingly unlikely; retry otherwise
    for alpha in [crate::zoo::PHI - 1.0, std::f64::consts::SQRT_2, std::f64::consts::FRAC_1_PI] {
        let mut m = h.clone();
        m.axpy(C64::new(alpha, 0.0), &k);
        let (_, v) = eigh(&m);
        let av = a.matmul(&v);
        let w: Vec<C64> = (0..n).map(|i| super::dot(v.col(i), av.col(i))).collect();
        let vw = Matrix::from_fn(n, n, |i, j| v[(i, j)] * w[j]);
        let res = av.max_abs_diff(&vw) / scale;
        let better = best.as_ref().is_none_or(|b| res < b.0);
        if better {
            best = Some((res, w, v));
        }
        if res < 1e-12 {
            break;
        }
    }
    let (_, w, v) = best.unwrap();
    Ok((w, v))
}
