use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symtensor::linalg::*;
use symtensor::C64;

fn random(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(rows, cols, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn naive_matmul(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows(), b.cols(), |i, j| (0..a.cols()).map(|k| a[(i, k)] * b[(k, j)]).sum())
}

/// Rank-r matrix with some exactly repeated columns.
fn low_rank(rows: usize, cols: usize, r: usize, seed: u64) -> Matrix {
    random(rows, r, seed).matmul(&random(r, cols, seed + 1))
}

const SHAPES: [(usize, usize); 7] = [(1, 1), (4, 4), (7, 3), (3, 7), (12, 12), (20, 9), (1, 6)];

#[test]
fn gemm_matches_naive() {
    for (i, &(m, n)) in SHAPES.iter().enumerate() {
        let a = random(m, n, i as u64);
        let b = random(n, m + 2, 100 + i as u64);
        assert!(a.matmul(&b).max_abs_diff(&naive_matmul(&a, &b)) < 1e-13);
    }
    // k = 0 gives zeros
    let c = Matrix::zeros(3, 0).matmul(&Matrix::zeros(0, 2));
    assert_eq!(c, Matrix::zeros(3, 2));
}

#[test]
fn qr_contract() {
    for (i, &(m, n)) in SHAPES.iter().enumerate() {
        for a in [random(m, n, i as u64), low_rank(m, n, 1, 7 + i as u64)] {
            let (q, r) = qr(&a);
            let k = m.min(n);
            assert_eq!((q.rows(), q.cols(), r.rows(), r.cols()), (m, k, k, n));
            assert!(q.isometry_error() < 1e-13, "{m}x{n}");
            assert!(q.matmul(&r).max_abs_diff(&a) < 1e-13);
            for j in 0..n {
                for ii in j + 1..k {
                    assert_eq!(r[(ii, j)], C64::new(0.0, 0.0));
                }
            }
            for ii in 0..k {
                assert!(r[(ii, ii)].im == 0.0 && r[(ii, ii)].re >= 0.0);
            }
        }
    }
}

#[test]
fn lq_contract() {
    for (i, &(m, n)) in SHAPES.iter().enumerate() {
        let a = random(m, n, 50 + i as u64);
        let (l, q) = lq(&a);
        assert!(q.adjoint().isometry_error() < 1e-13);
        assert!(l.matmul(&q).max_abs_diff(&a) < 1e-13);
        for j in 0..l.cols() {
            for ii in 0..j {
                assert_eq!(l[(ii, j)], C64::new(0.0, 0.0));
            }
        }
    }
}

fn check_svd(a: &Matrix) {
    let (u, s, vh) = svd(a);
    let k = a.rows().min(a.cols());
    assert_eq!((u.cols(), s.len(), vh.rows()), (k, k, k));
    assert!(u.isometry_error() < 1e-12, "U {}x{}", a.rows(), a.cols());
    assert!(vh.adjoint().isometry_error() < 1e-12);
    assert!(s.windows(2).all(|w| w[0] >= w[1]));
    assert!(s.iter().all(|&x| x >= 0.0));
    let us = Matrix::from_fn(u.rows(), k, |i, j| u[(i, j)] * s[j]);
    assert!(us.matmul(&vh).max_abs_diff(a) < 1e-12 * a.norm().max(1.0));
}

#[test]
fn svd_contract() {
    for (i, &(m, n)) in SHAPES.iter().enumerate() {
        check_svd(&random(m, n, 200 + i as u64));
        check_svd(&low_rank(m, n, 1, 300 + i as u64));
        check_svd(&Matrix::zeros(m, n));
    }
    check_svd(&Matrix::identity(5));
    check_svd(&Matrix::zeros(0, 3));
}

#[test]
fn svd_values_match_eigh_of_gram() {
    let a = random(9, 6, 11);
    let (_, s, _) = svd(&a);
    let (w, _) = eigh(&a.adjoint().matmul(&a));
    for (x, y) in s.iter().rev().zip(&w) {
        assert!((x * x - y).abs() < 1e-12);
    }
}

#[test]
fn eigh_contract() {
    for n in [1, 2, 5, 16] {
        let b = random(n, n, n as u64);
        let h = Matrix::from_fn(n, n, |i, j| b[(i, j)] + b[(j, i)].conj());
        let (w, v) = eigh(&h);
        assert!(v.isometry_error() < 1e-12);
        assert!(w.windows(2).all(|x| x[0] <= x[1]));
        let vw = Matrix::from_fn(n, n, |i, j| v[(i, j)] * w[j]);
        assert!(h.matmul(&v).max_abs_diff(&vw) < 1e-12 * h.norm());
    }
    // degenerate spectrum
    let p = low_rank(6, 2, 2, 3);
    let proj = p.matmul(&p.adjoint());
    let (w, v) = eigh(&proj);
    assert!(w[..4].iter().all(|x| x.abs() < 1e-12));
    assert!(v.isometry_error() < 1e-12);
}

#[test]
fn eig_normal_contract() {
    // a unitary matrix with a complex spectrum
    let (q, _) = qr(&random(7, 7, 5));
    let (w, v) = eig_normal(&q).unwrap();
    assert!(v.isometry_error() < 1e-12);
    for x in &w {
        assert!((x.norm() - 1.0).abs() < 1e-12);
    }
    let vw = Matrix::from_fn(7, 7, |i, j| v[(i, j)] * w[j]);
    assert!(q.matmul(&v).max_abs_diff(&vw) < 1e-12);

    let mut n = Matrix::zeros(2, 2);
    n[(0, 1)] = C64::new(1.0, 0.0);
    assert!(eig_normal(&n).is_err());
    assert!(eig_normal(&Matrix::zeros(2, 3)).is_err());
}

fn naive_permute(data: &[C64], shape: &[usize], perm: &[usize]) -> Vec<C64> {
    let out_shape: Vec<usize> = perm.iter().map(|&k| shape[k]).collect();
    let total: usize = shape.iter().product();
    let mut out = vec![C64::new(0.0, 0.0); total];
    for lin in 0..total {
        let mut idx = vec![0; shape.len()];
        let mut r = lin;
        for (k, &d) in out_shape.iter().enumerate() {
            idx[k] = r % d;
            r /= d;
        }
        let mut src_idx = vec![0; shape.len()];
        for k in 0..shape.len() {
            src_idx[perm[k]] = idx[k];
        }
        let mut s = 0;
        let mut st = 1;
        for k in 0..shape.len() {
            s += src_idx[k] * st;
            st *= shape[k];
        }
        out[lin] = data[s];
    }
    out
}

fn col_major_strides(shape: &[usize]) -> Vec<usize> {
    let mut st = Vec::new();
    let mut s = 1;
    for &d in shape {
        st.push(s);
        s *= d;
    }
    st
}

proptest! {
    #[test]
    fn strided_permute_matches_naive(shape in prop::collection::vec(1usize..6, 1..5), seed in 0u64..1000, big in any::<bool>()) {
        let mut shape = shape;
        if big { shape[0] = 40; if shape.len() > 1 { shape[1] = 33; } }
        let n = shape.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let total: usize = shape.iter().product();
        let src: Vec<C64> = (0..total).map(|_| C64::new(rng.gen(), rng.gen())).collect();
        let out_shape: Vec<usize> = perm.iter().map(|&k| shape[k]).collect();
        let sv = StridedView::new(0, col_major_strides(&shape)).permuted(&perm);
        let dv = StridedView::new(0, col_major_strides(&out_shape));
        let mut dst = vec![C64::new(0.0, 0.0); total];
        strided_axpy(&out_shape, C64::new(1.0, 0.0), &src, &sv, &mut dst, &dv);
        prop_assert_eq!(dst, naive_permute(&src, &shape, &perm));
    }
}

#[test]
fn strided_trace() {
    // out[i] = Σ_k a[i, k, k] for a of shape (3, 4, 4)
    let shape = [3, 4, 4];
    let total = 48;
    let src: Vec<C64> = (0..total).map(|x| C64::new(x as f64, -(x as f64))).collect();
    let st = col_major_strides(&shape);
    let sv = StridedView::new(0, vec![st[0], st[1] + st[2]]);
    let dv = StridedView::new(0, vec![1, 0]);
    let mut dst = vec![C64::new(0.0, 0.0); 3];
    strided_axpy(&[3, 4], C64::new(2.0, 0.0), &src, &sv, &mut dst, &dv);
    for i in 0..3 {
        let want: C64 = (0..4).map(|k| src[i + 3 * k + 12 * k]).sum::<C64>() * 2.0;
        assert_eq!(dst[i], want);
    }
}

#[test]
fn sub_matrix_views() {
    let a = random(6, 5, 9);
    let v = StridedView::in_matrix(a.rows() + 2, &[2, 2], 1, a.rows());
    assert_eq!(v.strides, vec![1, 6]);
    let b = a.sub_matrix(2, 2, 1, 3);
    let mut c = Matrix::zeros(6, 5);
    c.set_sub_matrix(2, 1, &b);
    assert_eq!(c.sub_matrix(2, 2, 1, 3), b);
}
