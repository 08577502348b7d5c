//! Numerical checks of the coherence equations and derivations of
//! Frobenius–Schur indicators and twists from F and R.

use super::{BraidingStyle, FArray, Label, RMatrix, SectorDescriptor, C64};
use crate::error::{Result, SymError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckedEquation {
    Triangle,
    Pentagon,
    Hexagon,
    Unitarity,
    Dimensions,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport {
    pub checked_equation: CheckedEquation,
    pub max_residual: f64,
    /// The worst offending label tuple, present only when the residual
    /// exceeds the tolerance.
    pub failing_tuple: Option<Vec<Label>>,
    pub tuples_checked: usize,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failing_tuple.is_none()
    }
}

/// Default tolerance: SU2 6j arithmetic loses a few digits to cancellation.
pub fn default_tolerance<S: SectorDescriptor + ?Sized>(sector: &S) -> f64 {
    if sector.name().contains("SU2") {
        1e-10
    } else {
        1e-12
    }
}

struct Tracker {
    eq: CheckedEquation,
    tol: f64,
    worst: f64,
    worst_tuple: Vec<Label>,
    count: usize,
}

impl Tracker {
    fn new(eq: CheckedEquation, tol: f64) -> Self {
        Tracker { eq, tol, worst: 0.0, worst_tuple: Vec::new(), count: 0 }
    }

    fn record(&mut self, residual: f64, tuple: &[&Label]) {
        self.count += 1;
        if residual > self.worst || residual.is_nan() {
            self.worst = if residual.is_nan() { f64::INFINITY } else { residual };
            self.worst_tuple = tuple.iter().map(|l| (*l).clone()).collect();
        }
    }

    fn finish(self) -> ConsistencyReport {
        ConsistencyReport {
            checked_equation: self.eq,
            max_residual: self.worst,
            failing_tuple: (self.worst > self.tol).then_some(self.worst_tuple),
            tuples_checked: self.count,
        }
    }
}

fn check_labels<S: SectorDescriptor + ?Sized>(sector: &S, labels: &[Label]) -> Result<()> {
    for a in labels {
        if !sector.contains(a) {
            return Err(SymError::UnknownLabel(format!("{:?} in {}", a.parts(), sector.name())));
        }
    }
    Ok(())
}

fn outputs_both<S: SectorDescriptor + ?Sized>(s: &S, a: &Label, b: &Label, c: &Label, d: &Label) -> Vec<Label> {
    let other = s.fusion_outputs(c, d);
    s.fusion_outputs(a, b).into_iter().filter(|x| other.contains(x)).collect()
}

/// Triangle equations: F with a unit label in any of the three upper slots
/// is the identity.
pub fn validate_triangle<S: SectorDescriptor + ?Sized>(sector: &S, labels: &[Label], tol: f64) -> Result<ConsistencyReport> {
    check_labels(sector, labels)?;
    let one = sector.unit();
    let mut t = Tracker::new(CheckedEquation::Triangle, tol);
    for a in labels {
        for b in labels {
            for c in sector.fusion_outputs(a, b) {
                let n = sector.nsymbol(a, b, &c);
                let f1 = sector.fsymbol(&one, a, b, &c, a, &c);
                let f2 = sector.fsymbol(a, &one, b, &c, a, b);
                let f3 = sector.fsymbol(a, b, &one, &c, &c, b);
                let mut r: f64 = 0.0;
                for mu in 0..n {
                    for nu in 0..n {
                        let id = if mu == nu { 1.0 } else { 0.0 };
                        r = r.max((f1.get(0, mu, nu, 0) - id).norm());
                        r = r.max((f2.get(0, mu, 0, nu) - id).norm());
                        r = r.max((f3.get(mu, 0, 0, nu) - id).norm());
                    }
                }
                t.record(r, &[a, b, &c]);
            }
        }
    }
    Ok(t.finish())
}

/// Pentagon equation for all `a, b, c, d` in `labels`; intermediate labels
/// range over all fusion channels.
pub fn validate_pentagon<S: SectorDescriptor + ?Sized>(sector: &S, labels: &[Label], tol: f64) -> Result<ConsistencyReport> {
    check_labels(sector, labels)?;
    let s = sector;
    let mut t = Tracker::new(CheckedEquation::Pentagon, tol);
    for a in labels {
        for b in labels {
            for c in labels {
                for d in labels {
                    let mut r: f64 = 0.0;
                    for f in s.fusion_outputs(a, b) {
                        for h in s.fusion_outputs(c, d) {
                            for g in s.fusion_outputs(&f, c) {
                                for i in s.fusion_outputs(b, &h) {
                                    for e in outputs_both(s, &g, d, a, &i) {
                                        r = r.max(pentagon_residual(s, a, b, c, d, &e, &f, &g, &h, &i));
                                    }
                                }
                            }
                        }
                    }
                    t.record(r, &[a, b, c, d]);
                }
            }
        }
    }
    Ok(t.finish())
}

#[allow(clippy::too_many_arguments)]
fn pentagon_residual<S: SectorDescriptor + ?Sized>(
    s: &S,
    a: &Label,
    b: &Label,
    c: &Label,
    d: &Label,
    e: &Label,
    f: &Label,
    g: &Label,
    h: &Label,
    i: &Label,
) -> f64 {
    let f1 = s.fsymbol(f, c, d, e, g, h);
    let f2 = s.fsymbol(a, b, h, e, f, i);
    let [nl, nm, nn, nt] = f1.dims();
    let [nk, _, nr, ns] = f2.dims();
    let js: Vec<(Label, FArray, FArray, FArray)> = s
        .fusion_outputs(b, c)
        .into_iter()
        .map(|j| {
            let x = s.fsymbol(a, b, c, g, f, &j);
            let y = s.fsymbol(a, &j, d, e, g, i);
            let z = s.fsymbol(b, c, d, i, &j, h);
            (j, x, y, z)
        })
        .collect();
    let mut r: f64 = 0.0;
    for l in 0..nl {
        for m in 0..nm {
            for n in 0..nn {
                for k in 0..nk {
                    for rho in 0..nr {
                        for sg in 0..ns {
                            let mut p1 = C64::new(0.0, 0.0);
                            for tau in 0..nt {
                                p1 += f1.get(l, m, n, tau) * f2.get(k, tau, rho, sg);
                            }
                            let mut p2 = C64::new(0.0, 0.0);
                            for (_, x, y, z) in &js {
                                if x.is_empty() || y.is_empty() || z.is_empty() {
                                    continue;
                                }
                                let [_, _, na, nb] = x.dims();
                                let nt2 = y.dims()[2];
                                for al in 0..na {
                                    for be in 0..nb {
                                        for t2 in 0..nt2 {
                                            p2 += x.get(k, l, al, be) * y.get(be, m, t2, sg) * z.get(al, t2, n, rho);
                                        }
                                    }
                                }
                            }
                            r = r.max((p1 - p2).norm());
                        }
                    }
                }
            }
        }
    }
    r
}

fn adjoint_r(r: &RMatrix) -> RMatrix {
    let [m, n] = r.dims();
    let mut out = RMatrix::zeros([n, m]);
    for i in 0..m {
        for j in 0..n {
            out.set(j, i, r.get(i, j).conj());
        }
    }
    out
}

/// Both hexagon equations (for the braiding and its inverse) for all
/// `a, b, c` in `labels`.
pub fn validate_hexagon<S: SectorDescriptor + ?Sized>(sector: &S, labels: &[Label], tol: f64) -> Result<ConsistencyReport> {
    if sector.braiding_style() == BraidingStyle::NoBraiding {
        return Err(SymError::NoBraidingDefined(sector.name()));
    }
    check_labels(sector, labels)?;
    let s = sector;
    let mut t = Tracker::new(CheckedEquation::Hexagon, tol);
    let inverse = |x: &Label, y: &Label, z: &Label| adjoint_r(&s.rsymbol(y, x, z));
    let forward = |x: &Label, y: &Label, z: &Label| s.rsymbol(x, y, z);
    for a in labels {
        for b in labels {
            for c in labels {
                let mut r: f64 = 0.0;
                for e in s.fusion_outputs(c, a) {
                    for g in s.fusion_outputs(c, b) {
                        for d in outputs_both(s, &e, b, a, &g) {
                            r = r.max(hexagon_residual(s, &forward, a, b, c, &d, &e, &g));
                            r = r.max(hexagon_residual(s, &inverse, a, b, c, &d, &e, &g));
                        }
                    }
                }
                t.record(r, &[a, b, c]);
            }
        }
    }
    Ok(t.finish())
}

#[allow(clippy::too_many_arguments)]
fn hexagon_residual<S: SectorDescriptor + ?Sized, R: Fn(&Label, &Label, &Label) -> RMatrix>(
    s: &S,
    rsym: &R,
    a: &Label,
    b: &Label,
    c: &Label,
    d: &Label,
    e: &Label,
    g: &Label,
) -> f64 {
    let r1 = rsym(c, a, e);
    let f1 = s.fsymbol(a, c, b, d, e, g);
    let r2 = rsym(b, c, g);
    let [na, nl] = r1.dims();
    let [_, nb, ng, nn] = f1.dims();
    let nm = r2.dims()[1];
    let fs: Vec<(FArray, RMatrix, FArray)> = s
        .fusion_outputs(a, b)
        .into_iter()
        .map(|f| (s.fsymbol(c, a, b, d, e, &f), rsym(&f, c, d), s.fsymbol(a, b, c, d, &f, g)))
        .filter(|(x, y, z)| !x.is_empty() && !y.is_empty() && !z.is_empty())
        .collect();
    let mut r: f64 = 0.0;
    for al in 0..na {
        for be in 0..nb {
            for mu in 0..nm {
                for nu in 0..nn {
                    let mut p1 = C64::new(0.0, 0.0);
                    for la in 0..nl {
                        for ga in 0..ng {
                            p1 += r1.get(al, la) * f1.get(la, be, ga, nu) * r2.get(ga, mu);
                        }
                    }
                    let mut p2 = C64::new(0.0, 0.0);
                    for (x, y, z) in &fs {
                        let [_, _, nd, ns] = x.dims();
                        let np = y.dims()[1];
                        for de in 0..nd {
                            for sg in 0..ns {
                                for ps in 0..np {
                                    p2 += x.get(al, be, de, sg) * y.get(sg, ps) * z.get(de, ps, mu, nu);
                                }
                            }
                        }
                    }
                    r = r.max((p1 - p2).norm());
                }
            }
        }
    }
    r
}

/// Unitarity of every F-move (as a matrix between the two fusion bases of
/// `a ⊗ b ⊗ c → d`) and, if braided, of every R-move.
pub fn validate_unitarity<S: SectorDescriptor + ?Sized>(sector: &S, labels: &[Label], tol: f64) -> Result<ConsistencyReport> {
    check_labels(sector, labels)?;
    let s = sector;
    let mut t = Tracker::new(CheckedEquation::Unitarity, tol);
    for a in labels {
        for b in labels {
            for c in labels {
                let mut ds: Vec<Label> = Vec::new();
                for e in s.fusion_outputs(a, b) {
                    for d in s.fusion_outputs(&e, c) {
                        if !ds.contains(&d) {
                            ds.push(d);
                        }
                    }
                }
                for d in &ds {
                    // rows: (e, mu, nu); columns: (f, kappa, lambda)
                    let es: Vec<Label> = s.fusion_outputs(a, b).into_iter().filter(|e| s.nsymbol(e, c, d) > 0).collect();
                    let fs: Vec<Label> = s.fusion_outputs(b, c).into_iter().filter(|f| s.nsymbol(a, f, d) > 0).collect();
                    let mut rows: Vec<Vec<C64>> = Vec::new();
                    for e in &es {
                        let n1 = s.nsymbol(a, b, e) * s.nsymbol(e, c, d);
                        for idx in 0..n1 {
                            let mut row = Vec::new();
                            for f in &fs {
                                let fa = s.fsymbol(a, b, c, d, e, f);
                                let [d0, d1, d2, d3] = fa.dims();
                                let (mu, nu) = (idx % d0, idx / d0);
                                debug_assert!(nu < d1);
                                for l in 0..d3 {
                                    for k in 0..d2 {
                                        row.push(fa.get(mu, nu, k, l));
                                    }
                                }
                            }
                            rows.push(row);
                        }
                    }
                    let r = unitarity_residual(&rows);
                    t.record(r, &[a, b, c, d]);
                }
            }
            if s.braiding_style() != BraidingStyle::NoBraiding {
                for c in s.fusion_outputs(a, b) {
                    let rm = s.rsymbol(a, b, &c);
                    let [m, n] = rm.dims();
                    let rows: Vec<Vec<C64>> = (0..m).map(|i| (0..n).map(|j| rm.get(i, j)).collect()).collect();
                    t.record(unitarity_residual(&rows), &[a, b, &c]);
                }
            }
        }
    }
    Ok(t.finish())
}

/// max |(M M†)_{ij} - δ_ij| and max |(M† M)_{ij} - δ_ij| for a square matrix
/// given by rows; a non-square matrix has residual infinity.
fn unitarity_residual(rows: &[Vec<C64>]) -> f64 {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return f64::INFINITY;
    }
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { 1.0 } else { 0.0 };
            let mut x = C64::new(0.0, 0.0);
            let mut y = C64::new(0.0, 0.0);
            for k in 0..n {
                x += rows[i][k] * rows[j][k].conj();
                y += rows[k][i].conj() * rows[k][j];
            }
            r = r.max((x - id).norm()).max((y - id).norm());
        }
    }
    r
}

/// `d_a d_b = Σ_c N^{ab}_c d_c`, relative residual.
pub fn validate_dimensions<S: SectorDescriptor + ?Sized>(sector: &S, labels: &[Label], tol: f64) -> Result<ConsistencyReport> {
    check_labels(sector, labels)?;
    let s = sector;
    let mut t = Tracker::new(CheckedEquation::Dimensions, tol);
    for a in labels {
        for b in labels {
            let lhs = s.qdim(a) * s.qdim(b);
            let rhs: f64 = s.fusion_outputs(a, b).iter().map(|c| s.nsymbol(a, b, c) as f64 * s.qdim(c)).sum();
            t.record((lhs - rhs).abs() / lhs, &[a, b]);
        }
    }
    Ok(t.finish())
}

/// Frobenius–Schur indicator read off from `F^{a ā a}_a[I, I]`.
pub fn derive_frobenius_schur<S: SectorDescriptor + ?Sized>(sector: &S, a: &Label) -> Result<C64> {
    check_labels(sector, std::slice::from_ref(a))?;
    let one = sector.unit();
    let abar = sector.dual(a);
    let f = sector.fsymbol(a, &abar, a, a, &one, &one);
    let x = f.get(0, 0, 0, 0);
    Ok(x / x.norm())
}

/// Twist from the R-symbols: `θ_a = Σ_b (d_b / d_a) tr R^{aa}_b`.
pub fn derive_twist<S: SectorDescriptor + ?Sized>(sector: &S, a: &Label) -> Result<C64> {
    if sector.braiding_style() == BraidingStyle::NoBraiding {
        return Err(SymError::NoBraidingDefined(sector.name()));
    }
    check_labels(sector, std::slice::from_ref(a))?;
    let da = sector.qdim(a);
    let mut theta = C64::new(0.0, 0.0);
    for b in sector.fusion_outputs(a, a) {
        let r = sector.rsymbol(a, a, &b);
        let n = r.dims()[0].min(r.dims()[1]);
        for mu in 0..n {
            theta += r.get(mu, mu) * (sector.qdim(&b) / da);
        }
    }
    Ok(theta)
}
