use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symtensor::tensor::set_parallel;
use symtensor::*;

const TOL: f64 = 1e-12;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn gs(kind: &SectorKind, degs: &[(&str, usize)]) -> GradedSpace {
    GradedSpace::from_labels(kind.clone(), degs).unwrap()
}

fn prod(kind: &SectorKind, spaces: &[GradedSpace]) -> ProductSpace {
    ProductSpace::new(kind.clone(), spaces.to_vec()).unwrap()
}

fn hom(kind: &SectorKind, cod: &[GradedSpace], dom: &[GradedSpace]) -> HomSpace {
    HomSpace::new(prod(kind, cod), prod(kind, dom)).unwrap()
}

fn dense_close(a: &DenseTensor, b: &DenseTensor, tol: f64) {
    assert_eq!(a.shape, b.shape);
    let d = a.max_abs_diff(b);
    assert!(d < tol * (1.0 + a.norm()), "dense mismatch {d:e}");
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Random graded space with small degeneracies; `dual` picks the orientation.
fn random_space(kind: &SectorKind, rng: &mut ChaCha8Rng) -> GradedSpace {
    let pool: Vec<&str> = match kind.name().as_str() {
        "Z2" => vec!["0", "1"],
        "Z3" => vec!["0", "1", "2"],
        "U1" => vec!["-1", "0", "1"],
        "SU2" => vec!["0", "1/2", "1"],
        "fZ2" => vec!["I", "J"],
        _ => panic!("no pool"),
    };
    let mut degs = Vec::new();
    for s in &pool {
        if rng.gen_bool(0.7) {
            degs.push((*s, rng.gen_range(1..=2)));
        }
    }
    if degs.is_empty() {
        degs.push((pool[0], 1));
    }
    let v = gs(kind, &degs);
    if rng.gen_bool(0.4) {
        v.dual()
    } else {
        v
    }
}

/// Random tensor whose block set is not empty.
fn random_tensor(kind: &SectorKind, n1: usize, n2: usize, rng: &mut ChaCha8Rng) -> TensorMap {
    loop {
        let cod: Vec<GradedSpace> = (0..n1).map(|_| random_space(kind, rng)).collect();
        let dom: Vec<GradedSpace> = (0..n2).map(|_| random_space(kind, rng)).collect();
        let h = hom(kind, &cod, &dom);
        if !h.block_sectors().is_empty() {
            return TensorMap::random(h, rng.gen());
        }
    }
}

fn group_kinds() -> Vec<SectorKind> {
    vec![SectorKind::zn(2), SectorKind::zn(3), SectorKind::u1(), SectorKind::su2()]
}

fn random_split(rng: &mut ChaCha8Rng, n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let k = rng.gen_range(0..=n);
    (perm[..k].to_vec(), perm[k..].to_vec())
}

// ----------------------------------------------------------- basics

#[test]
fn zeros_random_and_arithmetic() {
    let kind = SectorKind::su2();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random_tensor(&kind, 2, 2, &mut rng);
    let z = TensorMap::zeros(a.space().clone());
    assert_eq!(z.norm(), 0.0);
    assert_eq!(a.add(&z).unwrap().max_abs_diff(&a).unwrap(), 0.0);
    let twice = a.scale(c(2.0));
    for ((_, x), (_, y)) in twice.blocks().zip(a.blocks()) {
        assert_eq!(x.data(), y.scale(c(2.0)).data());
    }
    let lambda = C64::new(-0.3, 1.7);
    assert!((a.scale(lambda).norm() - lambda.norm() * a.norm()).abs() < TOL * a.norm());
    let again = TensorMap::random(a.space().clone(), 99);
    assert_eq!(again.max_abs_diff(&TensorMap::random(a.space().clone(), 99)).unwrap(), 0.0);
    let other = TensorMap::zeros(hom(&kind, &[gs(&kind, &[("0", 1)])], &[]));
    assert!(matches!(a.add(&other), Err(SymError::SpaceMismatch(_))));
}

#[test]
fn missing_charge_gives_no_block() {
    // codomain reaches 0 and 1, domain only 0 and 1/2: the block set is {0}
    let kind = SectorKind::su2();
    let h = hom(&kind, &[gs(&kind, &[("1/2", 1)]), gs(&kind, &[("1/2", 2)])], &[gs(&kind, &[("0", 3), ("1/2", 1)])]);
    let t = TensorMap::zeros(h);
    assert_eq!(t.sectors(), &[kind.label("0").unwrap()]);
    assert_eq!(t.block(&kind.label("0").unwrap()).map(|b| (b.rows(), b.cols())), Some((2, 3)));
}

#[test]
fn su2_norm_weights_blocks_by_dimension() {
    let kind = SectorKind::su2();
    let h = hom(&kind, &[gs(&kind, &[("1/2", 1)])], &[gs(&kind, &[("1/2", 1)])]);
    let t = TensorMap::from_blocks(h, [(kind.label("1/2").unwrap(), linalg::Matrix::identity(1))]).unwrap();
    assert!((t.norm().powi(2) - 2.0).abs() < TOL);
}

#[test]
fn full_trace_of_identity_counts_states() {
    let kind = SectorKind::su2();
    let v = gs(&kind, &[("0", 1), ("1/2", 1)]);
    let id = TensorMap::identity(prod(&kind, &[v]));
    assert!((id.trace().unwrap() - c(3.0)).norm() < TOL);
    let as_partial = id.partial_trace(&[], &[], &[0], &[1]).unwrap();
    assert!((as_partial.scalar().unwrap() - c(3.0)).norm() < TOL);
}

#[test]
fn adjoint_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for kind in group_kinds().into_iter().chain([SectorKind::fib()]) {
        let a = if kind.name() == "Fib" {
            let v = gs(&kind, &[("I", 1), ("τ", 2)]);
            TensorMap::random(hom(&kind, &[v.clone(), v.clone()], &[v.clone()]), 5)
        } else {
            random_tensor(&kind, 2, 1, &mut rng)
        };
        assert_eq!(a.adjoint().adjoint().max_abs_diff(&a).unwrap(), 0.0);
        let b = TensorMap::random(HomSpace::new(a.domain().clone(), prod(&kind, &a.codomain().spaces()[..1])).unwrap(), 7);
        let lhs = a.compose(&b).unwrap().adjoint();
        let rhs = b.adjoint().compose(&a.adjoint()).unwrap();
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-13 * (1.0 + lhs.norm()));
        a.adjoint().audit().unwrap();
    }
}

#[test]
fn compose_fills_unreachable_charges_with_zeros() {
    // A: V ← W, B: W ← U where W carries only charge 0, so the 1 block of
    // A∘B has no partner
    let kind = SectorKind::zn(2);
    let v = gs(&kind, &[("0", 2), ("1", 1)]);
    let w = gs(&kind, &[("0", 2)]);
    let a = TensorMap::random(hom(&kind, &[v.clone()], &[w.clone()]), 1);
    let b = TensorMap::random(hom(&kind, &[w], &[v.clone()]), 2);
    let ab = a.compose(&b).unwrap();
    let one = kind.label("1").unwrap();
    let blk = ab.block(&one).unwrap();
    assert_eq!((blk.rows(), blk.cols()), (1, 1));
    assert_eq!(blk.norm(), 0.0);
    ab.audit().unwrap();
    assert!(matches!(b.compose(&b), Err(SymError::SpaceMismatch(_))));
}

// ----------------------------------------------------------- dense oracle

#[test]
fn dense_oracle_abelian_embedding() {
    let kind = SectorKind::u1();
    let v = gs(&kind, &[("-1", 1), ("0", 2), ("1", 1)]);
    let t = TensorMap::random(hom(&kind, &[v.clone(), v.clone()], &[v.clone()]), 3);
    let d = t.to_dense().unwrap();
    assert_eq!(d.shape, vec![4, 4, 4]);
    let charge = |i: usize| [-1, 0, 0, 1][i];
    let mut nonzero = 0;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let x = d.get(&[i, j, k]);
                if charge(i) + charge(j) != charge(k) {
                    assert_eq!(x, C64::new(0.0, 0.0));
                } else {
                    nonzero += 1;
                }
            }
        }
    }
    let reduced: usize = t.blocks().map(|(_, b)| b.rows() * b.cols()).sum();
    assert_eq!(nonzero, reduced);
    assert!((d.norm() - t.norm()).abs() < TOL * t.norm());
}

#[test]
fn dense_norm_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for kind in group_kinds() {
        for _ in 0..5 {
            let t = random_tensor(&kind, 2, 2, &mut rng);
            let d = t.to_dense().unwrap();
            assert!((d.norm() - t.norm()).abs() < TOL * (1.0 + t.norm()), "{}", kind.name());
        }
    }
}

#[test]
fn to_dense_rejects_anyons_and_fermions() {
    for kind in [SectorKind::fib(), SectorKind::ising(), SectorKind::fz2()] {
        let v = GradedSpace::unit(kind.clone());
        let t = TensorMap::identity(prod(&kind, &[v]));
        assert!(matches!(t.to_dense(), Err(SymError::NoDenseRepresentation(_))));
    }
}

fn dense_permute_reference(t: &TensorMap, p1: &[usize], p2: &[usize]) -> DenseTensor {
    let perm: Vec<usize> = p1.iter().chain(p2).copied().collect();
    t.to_dense().unwrap().permute(&perm)
}

#[test]
fn permute_matches_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for kind in group_kinds() {
        for _ in 0..12 {
            let (n1, n2) = (rng.gen_range(0..=3), rng.gen_range(0..=2));
            let t = random_tensor(&kind, n1, n2, &mut rng);
            let (p1, p2) = random_split(&mut rng, n1 + n2);
            let s = t.permute(&p1, &p2).unwrap();
            s.audit().unwrap();
            dense_close(&s.to_dense().unwrap(), &dense_permute_reference(&t, &p1, &p2), TOL);
        }
    }
}

#[test]
fn transpose_matches_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for kind in group_kinds() {
        for _ in 0..12 {
            let (n1, n2) = (rng.gen_range(0..=3), rng.gen_range(0..=2));
            let n = n1 + n2;
            let t = random_tensor(&kind, n1, n2, &mut rng);
            // legs in cyclic order: codomain left to right, domain right to left
            let ring: Vec<usize> = (0..n1).chain((n1..n).rev()).collect();
            let shift = if n == 0 { 0 } else { rng.gen_range(0..n) };
            let k = rng.gen_range(0..=n);
            let rotated: Vec<usize> = (0..n).map(|i| ring[(i + shift) % n]).collect();
            let p1 = rotated[..k].to_vec();
            let p2: Vec<usize> = rotated[k..].iter().rev().copied().collect();
            let s = t.transpose(&p1, &p2).unwrap();
            s.audit().unwrap();
            dense_close(&s.to_dense().unwrap(), &dense_permute_reference(&t, &p1, &p2), TOL);
        }
    }
}

#[test]
fn partial_trace_matches_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for kind in group_kinds() {
        for _ in 0..8 {
            // legs 0 and 2 of A ⊗ B ← C ⊗ A, traced over the two A legs
            let a = random_space(&kind, &mut rng);
            let b = random_space(&kind, &mut rng);
            let cc = random_space(&kind, &mut rng);
            let h = hom(&kind, &[a.clone(), b], &[cc, a]);
            if h.block_sectors().is_empty() {
                continue;
            }
            let t = TensorMap::random(h, rng.gen());
            let s = t.partial_trace(&[1], &[2], &[0], &[3]).unwrap();
            let want = t.to_dense().unwrap().trace(&[(0, 3)]);
            dense_close(&s.to_dense().unwrap(), &want, TOL);
            // a pair inside the codomain, after bending
            let u = t.permute(&[0, 3, 1], &[2]).unwrap();
            let s2 = u.partial_trace(&[2], &[3], &[0], &[1]).unwrap();
            dense_close(&s2.to_dense().unwrap(), &want, TOL);
        }
    }
}

#[test]
fn partial_trace_rejects_non_dual_legs() {
    let kind = SectorKind::u1();
    let v = gs(&kind, &[("1", 1)]);
    let t = TensorMap::zeros(hom(&kind, &[v.clone(), v.clone()], &[]));
    assert!(matches!(t.partial_trace(&[], &[], &[0], &[1]), Err(SymError::NonMatchingTracePair(_))));
}

#[test]
fn compose_and_contract_match_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for kind in group_kinds() {
        for _ in 0..6 {
            let a = random_tensor(&kind, 2, 2, &mut rng);
            let u = random_space(&kind, &mut rng);
            let b = TensorMap::random(HomSpace::new(a.domain().clone(), prod(&kind, &[u])).unwrap(), rng.gen());
            let ab = a.compose(&b).unwrap();
            let want = a.to_dense().unwrap().contract(&[2, 3], &b.to_dense().unwrap(), &[0, 1]);
            dense_close(&ab.to_dense().unwrap(), &want, TOL);

            // contract leg 1 of A with leg 2 of B via rearrangements
            let w = random_space(&kind, &mut rng);
            let shared = a.space().leg_space(1);
            let hb = hom(&kind, &[w.clone()], &[random_space(&kind, &mut rng), shared]);
            if hb.block_sectors().is_empty() {
                continue;
            }
            let bb = TensorMap::random(hb, rng.gen());
            let got = a.contract(&[0, 2, 3], &[1], &bb, &[2], &[0, 1], &[0, 3], &[1, 2, 4]).unwrap();
            let da = a.to_dense().unwrap().permute(&[0, 2, 3, 1]);
            let db = bb.to_dense().unwrap().permute(&[2, 0, 1]);
            let want = da.contract(&[3], &db, &[0]).permute(&[0, 3, 1, 2, 4]);
            dense_close(&got.to_dense().unwrap(), &want, TOL);
        }
    }
}

#[test]
fn outer_product_matches_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for kind in group_kinds() {
        for _ in 0..4 {
            let a = random_tensor(&kind, 1, 1, &mut rng);
            let b = random_tensor(&kind, 2, 1, &mut rng);
            let ab = a.outer_product(&b).unwrap();
            assert_eq!((ab.num_out(), ab.num_in()), (3, 2));
            // dense legs: a.cod a.dom b.cod0 b.cod1 b.dom
            let want = a.to_dense().unwrap().outer(&b.to_dense().unwrap()).permute(&[0, 2, 3, 1, 4]);
            dense_close(&ab.to_dense().unwrap(), &want, TOL);
        }
    }
}

#[test]
fn ncon_transfer_matrix_matches_dense() {
    // E[a,c,b,d] = Σ A[a,s,b] M[t,s] A2[c,t,d]; the codomain leg s of A
    // meets the domain leg of M
    let kind = SectorKind::zn(2);
    let p = gs(&kind, &[("0", 1), ("1", 1)]);
    let v = gs(&kind, &[("0", 2), ("1", 2)]);
    let a = TensorMap::random(hom(&kind, &[v.clone(), p.clone()], &[v.clone()]), 11);
    let m = TensorMap::random(hom(&kind, &[p.clone()], &[p.clone()]), 12);
    let a2 = TensorMap::random(hom(&kind, &[v.clone()], &[p.clone(), v.clone()]), 13);
    let got = ncon(&[&a, &m, &a2], &[vec![-1, 1, -3], vec![2, 1], vec![-2, 2, -4]], &[1, 2], 2).unwrap();
    let (da, dm, db) = (a.to_dense().unwrap(), m.to_dense().unwrap(), a2.to_dense().unwrap());
    let mut want = DenseTensor::zeros(vec![4, 4, 4, 4]);
    for i1 in 0..4 {
        for i2 in 0..4 {
            for i3 in 0..4 {
                for i4 in 0..4 {
                    let mut acc = C64::new(0.0, 0.0);
                    for s in 0..2 {
                        for t in 0..2 {
                            acc += da.get(&[i1, s, i3]) * dm.get(&[t, s]) * db.get(&[i2, t, i4]);
                        }
                    }
                    let l = want.linear(&[i1, i2, i3, i4]);
                    want.data[l] = acc;
                }
            }
        }
    }
    dense_close(&got.to_dense().unwrap(), &want, TOL);
}

#[test]
fn ncon_traces_and_validation() {
    let kind = SectorKind::u1();
    let v = gs(&kind, &[("0", 2), ("1", 1)]);
    let t = TensorMap::random(hom(&kind, &[v.clone(), v.clone()], &[v.clone(), v.clone()]), 21);
    let got = ncon(&[&t], &[vec![-1, 1, -2, 1]], &[1], 1).unwrap();
    let want = t.to_dense().unwrap().trace(&[(1, 3)]);
    dense_close(&got.to_dense().unwrap(), &want, TOL);
    let full = ncon(&[&t], &[vec![1, 2, 1, 2]], &[1, 2], 0).unwrap();
    assert!((full.scalar().unwrap() - t.trace().unwrap()).norm() < TOL * t.norm());
    for (labels, order) in [
        (vec![vec![-1, 1, -2, 3]], vec![1, 3]),
        (vec![vec![-1, 1, -2, 1]], vec![]),
        (vec![vec![-1, 0, -2, -3]], vec![]),
        (vec![vec![-1, -1, 1, 1]], vec![1]),
    ] {
        assert!(matches!(ncon(&[&t], &labels, &order, 1), Err(SymError::MalformedNetwork(_))));
    }
}

#[test]
fn parallel_dispatch_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let kind = SectorKind::su2();
    let a = random_tensor(&kind, 2, 2, &mut rng);
    let b = TensorMap::random(HomSpace::new(a.domain().clone(), a.codomain().clone()).unwrap(), 3);
    let serial = (a.compose(&b).unwrap(), a.permute(&[3, 0], &[2, 1]).unwrap());
    set_parallel(true);
    let par = (a.compose(&b).unwrap(), a.permute(&[3, 0], &[2, 1]).unwrap());
    set_parallel(false);
    assert_eq!(serial.0.max_abs_diff(&par.0).unwrap(), 0.0);
    assert_eq!(serial.1.max_abs_diff(&par.1).unwrap(), 0.0);
}

// ----------------------------------------------------------- equivariance

fn fact(n: i32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Wigner D-matrix D^j(α, β, γ) with rows and columns ordered by m ascending.
fn wigner_d(tj: i32, (alpha, beta, gamma): (f64, f64, f64)) -> linalg::Matrix {
    let d = (tj + 1) as usize;
    linalg::Matrix::from_fn(d, d, |r, col| {
        // doubled quantum numbers
        let (tmp, tm) = (-tj + 2 * r as i32, -tj + 2 * col as i32);
        let (jp, jm, mp_p, mp_m, m_p, m_m) = ((tj + tmp) / 2, (tj - tmp) / 2, (tj + tmp) / 2, (tj - tmp) / 2, (tj + tm) / 2, (tj - tm) / 2);
        let _ = (jp, jm);
        let pref = (fact(mp_p) * fact(mp_m) * fact(m_p) * fact(m_m)).sqrt();
        let (cb, sb) = ((beta / 2.0).cos(), (beta / 2.0).sin());
        let mut small = 0.0;
        for k in 0..=tj {
            let (a1, a2, a3, a4) = (m_p - k, k, mp_m - k, k - (tm - tmp) / 2);
            if a1 < 0 || a3 < 0 || a4 < 0 {
                continue;
            }
            let sign = if (k - (tm - tmp) / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            small += sign * pref / (fact(a1) * fact(a2) * fact(a3) * fact(a4))
                * cb.powi(tj + (tm - tmp) / 2 - 2 * k)
                * sb.powi(2 * k - (tm - tmp) / 2);
        }
        let phase = -(f64::from(tmp) * alpha + f64::from(tm) * gamma) / 2.0;
        C64::from_polar(small, phase)
    })
}

/// Representation matrix of a whole leg in the dense basis.
fn leg_rep(v: &GradedSpace, angles: (f64, f64, f64)) -> linalg::Matrix {
    let n: usize = v.degeneracies().iter().map(|(a, n)| n * (a.parts()[0] as usize + 1)).sum();
    let mut r = linalg::Matrix::zeros(n, n);
    let mut off = 0;
    for (a, deg) in v.degeneracies() {
        let dm = wigner_d(a.parts()[0], angles);
        for m1 in 0..dm.rows() {
            for m2 in 0..dm.cols() {
                for i in 0..*deg {
                    let x = dm[(m1, m2)];
                    r.data_mut()[(off + i + deg * m1) + n * (off + i + deg * m2)] = if v.is_dual() { x.conj() } else { x };
                }
            }
        }
        off += deg * dm.rows();
    }
    r
}

#[test]
fn wigner_d_is_a_representation() {
    let g1 = (0.3, 1.1, -0.7);
    for tj in 0..4 {
        let d = wigner_d(tj, g1);
        assert!(d.isometry_error() < 1e-12, "unitary for 2j = {tj}");
        // D^{1/2}(0, β, 0) is the rotation [[cos, sin], [-sin, cos]](β/2) in m ascending order
        if tj == 1 {
            let r = wigner_d(1, (0.0, 0.8, 0.0));
            assert!((r[(0, 0)] - c(0.4f64.cos())).norm() < 1e-14);
            assert!((r[(1, 0)] + c(0.4f64.sin())).norm() < 1e-14 || (r[(1, 0)] - c(0.4f64.sin())).norm() < 1e-14);
        }
    }
}

#[test]
fn su2_dense_tensors_are_equivariant() {
    let kind = SectorKind::su2();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..6 {
        let t = random_tensor(&kind, 2, 2, &mut rng);
        let g = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
        let mut d = t.to_dense().unwrap();
        let n1 = t.num_out();
        for l in 0..t.num_legs() {
            let v = if l < n1 { &t.codomain().spaces()[l] } else { &t.domain().spaces()[l - n1] };
            let r = leg_rep(v, g);
            // codomain legs transform with R, domain legs with conj(R)
            let m = if l < n1 { r } else { linalg::Matrix::from_fn(r.rows(), r.cols(), |i, j| r[(i, j)].conj()) };
            let md = DenseTensor::from_matrix(&m, vec![m.rows(), m.cols()]);
            let moved = md.contract(&[1], &d, &[l]);
            let mut perm: Vec<usize> = (1..t.num_legs()).collect();
            perm.insert(l, 0);
            d = moved.permute(&invert(&invert(&perm)));
        }
        dense_close(&d, &t.to_dense().unwrap(), 1e-10);
    }
}

// ----------------------------------------------------------- worked SU(2) example

struct Worked {
    kind: SectorKind,
    t: TensorMap,
    /// t(s, f) keyed by the trees (1) (0,0)→0, (2) (½,½)→0, (3) (½,0)→½,
    /// (4) (0,½)→½, (5) (½,½)→1.
    vals: std::collections::HashMap<(usize, usize), C64>,
}

fn worked_tree(kind: &SectorKind, i: usize, dual: [bool; 2]) -> fusion_trees::FusionTree {
    let (a, b, cc) = [("0", "0", "0"), ("1/2", "1/2", "0"), ("1/2", "0", "1/2"), ("0", "1/2", "1/2"), ("1/2", "1/2", "1")][i - 1];
    let l = |s: &str| kind.label(s).unwrap();
    fusion_trees::FusionTree::simple(kind, vec![l(a), l(b)], l(cc), dual.to_vec()).unwrap()
}

impl Worked {
    fn new() -> Self {
        let kind = SectorKind::su2();
        let v = gs(&kind, &[("0", 1), ("1/2", 1)]);
        let mut t = TensorMap::zeros(hom(&kind, &[v.clone(), v.clone()], &[v.clone(), v]));
        let mut vals = std::collections::HashMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for (s, f) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 3), (3, 4), (4, 3), (4, 4), (5, 5)] {
            let x = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let m = linalg::Matrix::from_col_major(1, 1, vec![x]);
            t.set_sub_block(&worked_tree(&kind, s, [false; 2]), &worked_tree(&kind, f, [false; 2]), &m).unwrap();
            vals.insert((s, f), x);
        }
        Worked { kind, t, vals }
    }

    fn v(&self, s: usize, f: usize) -> C64 {
        self.vals[&(s, f)]
    }

    fn entry(&self, t: &TensorMap, s: (usize, [bool; 2]), f: (usize, [bool; 2])) -> C64 {
        t.sub_block(&worked_tree(&self.kind, s.0, s.1), &worked_tree(&self.kind, f.0, f.1)).unwrap()[(0, 0)]
    }
}

fn assert_c(got: C64, want: C64) {
    assert!((got - want).norm() < TOL, "{got} vs {want}");
}

#[test]
fn worked_example_block_shapes() {
    let w = Worked::new();
    let shapes: Vec<(usize, usize)> = w.t.blocks().map(|(_, b)| (b.rows(), b.cols())).collect();
    assert_eq!(shapes, vec![(2, 2), (2, 2), (1, 1)]);
}

#[test]
fn worked_example_permuted_blocks() {
    let w = Worked::new();
    let s = w.t.permute(&[1, 0], &[3, 2]).unwrap();
    let n = [false; 2];
    assert_c(w.entry(&s, (1, n), (1, n)), w.v(1, 1));
    assert_c(w.entry(&s, (1, n), (2, n)), -w.v(1, 2));
    assert_c(w.entry(&s, (2, n), (1, n)), -w.v(2, 1));
    assert_c(w.entry(&s, (2, n), (2, n)), w.v(2, 2));
    assert_c(w.entry(&s, (3, n), (3, n)), w.v(4, 4));
    assert_c(w.entry(&s, (3, n), (4, n)), w.v(4, 3));
    assert_c(w.entry(&s, (4, n), (3, n)), w.v(3, 4));
    assert_c(w.entry(&s, (4, n), (4, n)), w.v(3, 3));
    assert_c(w.entry(&s, (5, n), (5, n)), w.v(5, 5));
}

#[test]
fn worked_example_transposed_blocks() {
    let w = Worked::new();
    // clockwise cycle: V ⊗ V* ← V* ⊗ V
    let s = w.t.transpose(&[1, 3], &[0, 2]).unwrap();
    let (cod, dom) = ([false, true], [true, false]);
    let r2 = 2f64.sqrt();
    assert_c(w.entry(&s, (1, cod), (1, dom)), w.v(1, 1));
    assert_c(w.entry(&s, (1, cod), (2, dom)), -r2 * w.v(3, 3));
    assert_c(w.entry(&s, (2, cod), (1, dom)), r2 * w.v(4, 4));
    assert_c(w.entry(&s, (2, cod), (2, dom)), -0.5 * w.v(2, 2) - 1.5 * w.v(5, 5));
    assert_c(w.entry(&s, (5, cod), (5, dom)), -0.5 * w.v(2, 2) + 0.5 * w.v(5, 5));
}

#[test]
fn worked_example_partial_trace() {
    let w = Worked::new();
    let s = w.t.partial_trace(&[0], &[2], &[1], &[3]).unwrap();
    let blk = |l: &str| s.block(&w.kind.label(l).unwrap()).unwrap()[(0, 0)];
    assert_c(blk("0"), w.v(1, 1) + 2.0 * w.v(4, 4));
    assert_c(blk("1/2"), 0.5 * w.v(2, 2) + w.v(3, 3) + 1.5 * w.v(5, 5));
}

#[test]
fn full_rotation_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for kind in [SectorKind::su2(), SectorKind::fib(), SectorKind::ising()] {
        let t = if kind.name() == "SU2" {
            random_tensor(&kind, 2, 2, &mut rng)
        } else {
            let v = match kind.name().as_str() {
                "Fib" => gs(&kind, &[("I", 1), ("τ", 1)]),
                _ => gs(&kind, &[("σ", 1), ("ψ", 1)]),
            };
            TensorMap::random(hom(&kind, &[v.clone(), v.clone()], &[v.clone(), v]), rng.gen())
        };
        let mut s = t.clone();
        for _ in 0..4 {
            s = s.transpose(&[1, 3], &[0, 2]).unwrap();
        }
        assert!(s.max_abs_diff(&t).unwrap() < TOL * (1.0 + t.norm()), "{}", kind.name());
    }
}

#[test]
fn anyons_refuse_permute_and_non_planar_contractions() {
    let kind = SectorKind::fib();
    let v = gs(&kind, &[("τ", 1)]);
    let t = TensorMap::random(hom(&kind, &[v.clone(), v.clone()], &[v.clone()]), 1);
    assert!(matches!(t.permute(&[1, 0], &[2]), Err(SymError::BraidingUnavailable(_))));
    assert!(matches!(t.transpose(&[1, 0], &[2]), Err(SymError::NotCyclic(_))));
    // braiding with levels works and is undone by the inverse braid
    let b = t.braid(&[0, 1, 2], &[1, 0], &[2]).unwrap();
    let back = b.braid(&[1, 0, 2], &[1, 0], &[2]).unwrap();
    assert!(back.max_abs_diff(&t).unwrap() < TOL);
    // planar contraction: (t ∘ t†) traced is |t|² with the quantum-dimension weight
    let tt = t.compose(&t.adjoint()).unwrap();
    assert!((tt.trace().unwrap() - c(t.norm().powi(2))).norm() < 1e-10);
}

#[test]
fn fermionic_swap_negates_odd_pairs() {
    let kind = SectorKind::fz2();
    let odd = gs(&kind, &[("J", 2)]);
    let even = gs(&kind, &[("I", 1)]);
    let t = TensorMap::random(hom(&kind, &[odd.clone(), odd.clone()], &[even.clone()]), 4);
    let s = t.permute(&[1, 0], &[2]).unwrap();
    let zero = kind.label("I").unwrap();
    let (a, b) = (t.block(&zero).unwrap(), s.block(&zero).unwrap());
    // the 2x2 reduced array of the pair is transposed and negated
    for i in 0..2 {
        for j in 0..2 {
            assert_c(b[(i + 2 * j, 0)], -a[(j + 2 * i, 0)]);
        }
    }
    // an even leg passing an odd one carries no sign
    let u = TensorMap::random(hom(&kind, &[odd.clone(), even.clone()], &[odd]), 5);
    let w = u.permute(&[1, 0], &[2]).unwrap();
    let jj = kind.label("J").unwrap();
    assert_eq!(w.block(&jj).unwrap().data(), u.block(&jj).unwrap().data());
}

// ----------------------------------------------------------- serialization

#[test]
fn serialization_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let kinds = [
        SectorKind::zn(3),
        SectorKind::u1(),
        SectorKind::su2(),
        SectorKind::fz2(),
        SectorKind::fib(),
        SectorKind::product(vec![SectorKind::fz2(), SectorKind::su2()]),
    ];
    for kind in kinds {
        let v = match kind.name().as_str() {
            "Fib" => gs(&kind, &[("I", 1), ("τ", 2)]),
            "fZ2 x SU2" => gs(&kind, &[("(I,0)", 1), ("(J,1/2)", 2)]),
            _ => random_space(&kind, &mut rng),
        };
        let t = TensorMap::random(hom(&kind, &[v.clone(), v.clone()], &[v.dual()]), rng.gen());
        let bin = TensorMap::from_binary(&t.to_binary()).unwrap();
        assert_eq!(bin.space(), t.space());
        assert_eq!(bin.max_abs_diff(&t).unwrap(), 0.0);
        let txt = TensorMap::from_json(&t.to_json()).unwrap();
        assert!(txt.max_abs_diff(&t).unwrap() <= 1e-15);
    }
    let t = TensorMap::identity(prod(&SectorKind::u1(), &[gs(&SectorKind::u1(), &[("1", 1)])]));
    let mut bytes = t.to_binary();
    bytes[0] = b'X';
    assert!(matches!(TensorMap::from_binary(&bytes), Err(SymError::Format(_))));
    let truncated = &t.to_binary()[..10];
    assert!(matches!(TensorMap::from_binary(truncated), Err(SymError::Format(_))));
    assert!(TensorMap::from_json("{\"format_version\": 1}").is_err());
}

// ----------------------------------------------------------- properties

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn z3_permutations_match_dense(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = SectorKind::zn(3);
        let (n1, n2) = (rng.gen_range(1..=3), rng.gen_range(0..=2));
        let t = random_tensor(&kind, n1, n2, &mut rng);
        let (p1, p2) = random_split(&mut rng, n1 + n2);
        let s = t.permute(&p1, &p2).unwrap();
        let d = s.to_dense().unwrap().max_abs_diff(&dense_permute_reference(&t, &p1, &p2));
        prop_assert!(d < TOL);
        // the inverse permutation restores the tensor
        let perm: Vec<usize> = p1.iter().chain(&p2).copied().collect();
        let inv = invert(&perm);
        let back = s.permute(&inv[..n1], &inv[n1..]).unwrap();
        prop_assert!(back.max_abs_diff(&t).unwrap() < TOL);
    }

    #[test]
    fn su2_inner_product_is_dense_inner_product(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = SectorKind::su2();
        let a = random_tensor(&kind, 2, 1, &mut rng);
        let b = TensorMap::random(a.space().clone(), rng.gen());
        let (da, db) = (a.to_dense().unwrap(), b.to_dense().unwrap());
        let dense: C64 = da.data.iter().zip(&db.data).map(|(x, y)| x.conj() * y).sum();
        prop_assert!((a.inner(&b).unwrap() - dense).norm() < 1e-11 * (1.0 + a.norm() * b.norm()));
    }
}
