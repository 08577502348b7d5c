//! Randomized comparisons of block-sparse operations against the dense
//! reference implementation, plus the rotation-equivariance check for SU(2).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symtensor::linalg::{svd, Matrix};
use symtensor::tensor::DenseTensor;
use symtensor::{GradedSpace, HomSpace, ProductSpace, Result, SectorDescriptor, SectorKind, TensorMap, TruncationScheme, C64};

pub const OPS: [&str; 8] = ["permute", "transpose", "partial_trace", "contract", "compose", "outer", "adjoint", "svd"];

/// Outcome of one randomized case: operation name and the largest deviation
/// from the dense reference, relative to `1 + |reference|`.
#[derive(Clone, Debug)]
pub struct OracleCase {
    pub kind: String,
    pub op: &'static str,
    pub deviation: f64,
}

fn pool(kind: &SectorKind) -> Vec<&'static str> {
    match kind.name().as_str() {
        "Z2" => vec!["0", "1"],
        "Z3" => vec!["0", "1", "2"],
        "U1" => vec!["-1", "0", "1"],
        "SU2" => vec!["0", "1/2", "1"],
        _ => vec![],
    }
}

pub fn random_space(kind: &SectorKind, rng: &mut ChaCha8Rng) -> GradedSpace {
    let labels = pool(kind);
    let mut degs: Vec<(&str, usize)> = Vec::new();
    for s in &labels {
        if rng.gen_bool(0.6) {
            degs.push((s, rng.gen_range(1..=2)));
        }
    }
    if degs.is_empty() {
        degs.push((labels[rng.gen_range(0..labels.len())], 1));
    }
    let v = GradedSpace::from_labels(kind.clone(), &degs).expect("pool labels parse");
    if rng.gen_bool(0.4) {
        v.dual()
    } else {
        v
    }
}

fn hom(kind: &SectorKind, cod: Vec<GradedSpace>, dom: Vec<GradedSpace>) -> HomSpace {
    HomSpace::new(ProductSpace::new(kind.clone(), cod).unwrap(), ProductSpace::new(kind.clone(), dom).unwrap()).unwrap()
}

/// Random tensor with a non-empty block set and total dense dimension at
/// most `max_dim`.
pub fn random_tensor(kind: &SectorKind, n1: usize, n2: usize, max_dim: f64, rng: &mut ChaCha8Rng) -> TensorMap {
    loop {
        let cod: Vec<GradedSpace> = (0..n1).map(|_| random_space(kind, rng)).collect();
        let dom: Vec<GradedSpace> = (0..n2).map(|_| random_space(kind, rng)).collect();
        let h = hom(kind, cod, dom);
        if h.dim() <= max_dim + 0.5 && !h.block_sectors().is_empty() {
            return TensorMap::random(h, rng.gen());
        }
    }
}

fn random_split(rng: &mut ChaCha8Rng, n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let k = rng.gen_range(0..=n);
    (perm[..k].to_vec(), perm[k..].to_vec())
}

fn dev(got: &DenseTensor, want: &DenseTensor) -> f64 {
    if got.shape != want.shape {
        return f64::INFINITY;
    }
    got.max_abs_diff(want) / (1.0 + want.norm())
}

/// Runs operation `op` on random inputs and compares with the dense result.
pub fn run_case(kind: &SectorKind, op: &'static str, max_dim: f64, rng: &mut ChaCha8Rng) -> Result<OracleCase> {
    let deviation = match op {
        "permute" => {
            let (n1, n2) = (rng.gen_range(1..=3), rng.gen_range(0..=2));
            let t = random_tensor(kind, n1, n2, max_dim, rng);
            let (p1, p2) = random_split(rng, n1 + n2);
            let perm: Vec<usize> = p1.iter().chain(&p2).copied().collect();
            dev(&t.permute(&p1, &p2)?.to_dense()?, &t.to_dense()?.permute(&perm))
        }
        "transpose" => {
            let (n1, n2) = (rng.gen_range(1..=3), rng.gen_range(0..=2));
            let n = n1 + n2;
            let t = random_tensor(kind, n1, n2, max_dim, rng);
            let ring: Vec<usize> = (0..n1).chain((n1..n).rev()).collect();
            let shift = rng.gen_range(0..n);
            let k = rng.gen_range(0..=n);
            let rotated: Vec<usize> = (0..n).map(|i| ring[(i + shift) % n]).collect();
            let p1 = rotated[..k].to_vec();
            let p2: Vec<usize> = rotated[k..].iter().rev().copied().collect();
            let perm: Vec<usize> = p1.iter().chain(&p2).copied().collect();
            dev(&t.transpose(&p1, &p2)?.to_dense()?, &t.to_dense()?.permute(&perm))
        }
        "partial_trace" => {
            // A ⊗ B ← C ⊗ A, tracing the two A legs
            let t = loop {
                let a = random_space(kind, rng);
                let h = hom(kind, vec![a.clone(), random_space(kind, rng)], vec![random_space(kind, rng), a]);
                if h.dim() <= max_dim + 0.5 && !h.block_sectors().is_empty() {
                    break TensorMap::random(h, rng.gen());
                }
            };
            dev(&t.partial_trace(&[1], &[2], &[0], &[3])?.to_dense()?, &t.to_dense()?.trace(&[(0, 3)]))
        }
        "contract" => {
            let a = random_tensor(kind, 2, 1, max_dim, rng);
            let b = loop {
                let h = hom(kind, vec![random_space(kind, rng)], vec![random_space(kind, rng), a.space().leg_space(1)]);
                if h.dim() <= max_dim + 0.5 && !h.block_sectors().is_empty() {
                    break TensorMap::random(h, rng.gen());
                }
            };
            // leg 1 of A against leg 2 of B
            let got = a.contract(&[0, 2], &[1], &b, &[2], &[0, 1], &[0, 2], &[1, 3])?;
            let want = a.to_dense()?.permute(&[0, 2, 1]).contract(&[2], &b.to_dense()?.permute(&[2, 0, 1]), &[0]).permute(&[0, 2, 1, 3]);
            dev(&got.to_dense()?, &want)
        }
        "compose" => {
            let a = random_tensor(kind, 2, 1, max_dim, rng);
            let b = loop {
                let h = HomSpace::new(a.domain().clone(), ProductSpace::new(kind.clone(), vec![random_space(kind, rng)])?)?;
                if h.dim() <= max_dim + 0.5 && !h.block_sectors().is_empty() {
                    break TensorMap::random(h, rng.gen());
                }
            };
            dev(&a.compose(&b)?.to_dense()?, &a.to_dense()?.contract(&[2], &b.to_dense()?, &[0]))
        }
        "outer" => {
            let a = random_tensor(kind, 1, 1, max_dim.sqrt(), rng);
            let b = random_tensor(kind, 1, 1, max_dim.sqrt(), rng);
            let want = a.to_dense()?.outer(&b.to_dense()?).permute(&[0, 2, 1, 3]);
            dev(&a.outer_product(&b)?.to_dense()?, &want)
        }
        "adjoint" => {
            let (n1, n2) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let t = random_tensor(kind, n1, n2, max_dim, rng);
            let perm: Vec<usize> = (n1..n1 + n2).chain(0..n1).collect();
            dev(&t.adjoint().to_dense()?, &t.to_dense()?.permute(&perm).conj())
        }
        "svd" => {
            let t = random_tensor(kind, 2, 1, max_dim, rng);
            let (u, s, vh, _) = t.svd(&[0, 1], &[2], TruncationScheme::None)?;
            let rebuilt = u.compose(&s)?.compose(&vh)?;
            let d = t.to_dense()?;
            // singular values of the dense matrix: each block value repeated d_c times
            let mut block_values: Vec<f64> = Vec::new();
            for (c, m) in s.blocks() {
                let dc = kind.qdim(c).round() as usize;
                for i in 0..m.rows() {
                    block_values.extend(std::iter::repeat_n(m[(i, i)].re, dc));
                }
            }
            let (_, mut dense_values, _) = svd(&d.to_matrix(2));
            dense_values.retain(|&x| x > 1e-12);
            block_values.retain(|&x| x > 1e-12);
            block_values.sort_by(|a, b| b.total_cmp(a));
            let spectrum = if dense_values.len() == block_values.len() {
                dense_values.iter().zip(&block_values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / (1.0 + d.norm())
            } else {
                f64::INFINITY
            };
            dev(&rebuilt.to_dense()?, &d).max(spectrum)
        }
        other => unreachable!("unknown oracle op {other}"),
    };
    Ok(OracleCase { kind: kind.name(), op, deviation })
}

/// The `n` abelian cases, cycling through Z2, Z3, U1 and all operations.
pub fn abelian_suite(n: usize, seed: u64) -> Result<Vec<OracleCase>> {
    let kinds = [SectorKind::zn(2), SectorKind::zn(3), SectorKind::u1()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|i| run_case(&kinds[i % 3], OPS[(i / 3) % OPS.len()], 64.0, &mut rng)).collect()
}

fn fact(n: i32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Wigner D-matrix of spin `tj/2` for Euler angles (z-y-z), rows and columns
/// by `m` ascending.
pub fn wigner_d(tj: i32, (alpha, beta, gamma): (f64, f64, f64)) -> Matrix {
    let d = (tj + 1) as usize;
    let (cb, sb) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    Matrix::from_fn(d, d, |r, c| {
        let (tmp, tm) = (-tj + 2 * r as i32, -tj + 2 * c as i32);
        let (jmp, jpp, jm, jpm) = ((tj - tmp) / 2, (tj + tmp) / 2, (tj - tm) / 2, (tj + tm) / 2);
        let pref = (fact(jpp) * fact(jmp) * fact(jpm) * fact(jm)).sqrt();
        let delta = (tm - tmp) / 2;
        let mut small = 0.0;
        for k in 0..=tj {
            let (a1, a3, a4) = (jpm - k, jmp - k, k - delta);
            if a1 < 0 || a3 < 0 || a4 < 0 {
                continue;
            }
            let sign = if a4 % 2 == 0 { 1.0 } else { -1.0 };
            small += sign * pref / (fact(a1) * fact(k) * fact(a3) * fact(a4)) * cb.powi(tj + delta - 2 * k) * sb.powi(2 * k - delta);
        }
        C64::from_polar(small, -(f64::from(tmp) * alpha + f64::from(tm) * gamma) / 2.0)
    })
}

/// Rotation acting on one leg in the dense basis (degeneracy index fastest).
fn leg_rep(v: &GradedSpace, g: (f64, f64, f64)) -> Matrix {
    let n: usize = v.degeneracies().iter().map(|(a, n)| n * (a.parts()[0] as usize + 1)).sum();
    let mut r = Matrix::zeros(n, n);
    let mut off = 0;
    for (a, deg) in v.degeneracies() {
        let dm = wigner_d(a.parts()[0], g);
        for m1 in 0..dm.rows() {
            for m2 in 0..dm.cols() {
                let x = if v.is_dual() { dm[(m1, m2)].conj() } else { dm[(m1, m2)] };
                for i in 0..*deg {
                    r.data_mut()[(off + i + deg * m1) + n * (off + i + deg * m2)] = x;
                }
            }
        }
        off += deg * dm.rows();
    }
    r
}

/// Largest deviation of `ρ(g) · to_dense(t)` from `to_dense(t)` over `rotations`
/// random rotations; codomain legs carry ρ, domain legs its conjugate.
pub fn equivariance_deviation(t: &TensorMap, rotations: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let d0 = t.to_dense()?;
    let n1 = t.num_out();
    let mut worst: f64 = 0.0;
    for _ in 0..rotations {
        let g = (rng.gen_range(0.0..std::f64::consts::TAU), rng.gen_range(0.0..std::f64::consts::PI), rng.gen_range(0.0..std::f64::consts::TAU));
        let mut d = d0.clone();
        for l in 0..t.num_legs() {
            let v = if l < n1 { &t.codomain().spaces()[l] } else { &t.domain().spaces()[l - n1] };
            let r = leg_rep(v, g);
            let m = if l < n1 { r } else { Matrix::from_fn(r.rows(), r.cols(), |i, j| r[(i, j)].conj()) };
            let moved = DenseTensor::from_matrix(&m, vec![m.rows(), m.cols()]).contract(&[1], &d, &[l]);
            // the new leg sits in front; move it back to position l
            let perm: Vec<usize> = (1..=l).chain([0]).chain(l + 1..t.num_legs()).collect();
            d = moved.permute(&perm);
        }
        worst = worst.max(dev(&d, &d0));
    }
    Ok(worst)
}

/// SU(2) cases at spins up to 1: operation deviation and the equivariance
/// deviation of a random tensor under `rotations` rotations.
pub fn su2_suite(n: usize, rotations: usize, seed: u64) -> Result<Vec<(OracleCase, f64)>> {
    let kind = SectorKind::su2();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let case = run_case(&kind, OPS[i % OPS.len()], 256.0, &mut rng)?;
        let t = random_tensor(&kind, 2, 2, 256.0, &mut rng);
        out.push((case, equivariance_deviation(&t, rotations, &mut rng)?));
    }
    Ok(out)
}
