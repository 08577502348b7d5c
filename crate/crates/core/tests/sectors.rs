use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use symtensor::sector::validate::{
    default_tolerance, derive_frobenius_schur, derive_twist, validate_dimensions, validate_hexagon, validate_pentagon,
    validate_triangle, validate_unitarity, CheckedEquation,
};
use symtensor::zoo::{clebsch_gordan, su2_fsymbol, su2_wigner6j, PHI};
use symtensor::{BraidingStyle, Label, SectorDescriptor, SectorKind, SymError};

fn kinds_with_bounds() -> Vec<(SectorKind, f64)> {
    let mut v: Vec<(SectorKind, f64)> = (2..=5).map(|n| (SectorKind::zn(n), 0.0)).collect();
    v.push((SectorKind::u1(), 3.0));
    v.push((SectorKind::su2(), 2.0));
    v.push((SectorKind::fz2(), 0.0));
    v.push((SectorKind::fib(), 0.0));
    v.push((SectorKind::ising(), 0.0));
    v.push((SectorKind::product(vec![SectorKind::fz2(), SectorKind::su2()]), 1.0));
    v
}

#[test]
fn coherence_equations_hold_on_validation_ranges() {
    for (kind, bound) in kinds_with_bounds() {
        let labels = kind.labels_up_to(bound);
        let tol = default_tolerance(&kind);
        for report in [
            validate_triangle(&kind, &labels, tol).unwrap(),
            validate_pentagon(&kind, &labels, tol).unwrap(),
            validate_hexagon(&kind, &labels, tol).unwrap(),
            validate_unitarity(&kind, &labels, 1e-12).unwrap(),
            validate_dimensions(&kind, &labels, 1e-12).unwrap(),
        ] {
            assert!(report.passed(), "{kind}: {report:?}");
            assert!(report.tuples_checked > 0);
        }
    }
}

#[test]
fn label_ranges_have_expected_sizes() {
    assert_eq!(SectorKind::su2().labels_up_to(2.0).len(), 5);
    assert_eq!(SectorKind::u1().labels_up_to(3.0).len(), 7);
    assert_eq!(SectorKind::zn(5).labels_up_to(0.0).len(), 5);
    assert_eq!(SectorKind::ising().labels_up_to(0.0).len(), 3);
    let p = SectorKind::product(vec![SectorKind::fz2(), SectorKind::su2()]);
    assert_eq!(p.labels_up_to(1.0).len(), 6);
}

#[test]
fn exact_residuals_for_abelian_cases() {
    let z2 = SectorKind::zn(2);
    let r = validate_pentagon(&z2, &z2.labels_up_to(0.0), 1e-12).unwrap();
    assert_eq!(r.max_residual, 0.0);
    let z3 = SectorKind::zn(3);
    assert_eq!(validate_hexagon(&z3, &z3.labels_up_to(0.0), 1e-12).unwrap().max_residual, 0.0);
    let f = SectorKind::fz2();
    let r = validate_hexagon(&f, &f.labels_up_to(0.0), 1e-12).unwrap();
    assert_eq!(r.max_residual, 0.0);
    assert_eq!(r.checked_equation, CheckedEquation::Hexagon);
}

#[test]
fn broken_data_is_reported_with_tuple() {
    // a deliberately tampered descriptor: Fibonacci with a sign flipped in F
    struct Broken;
    impl SectorDescriptor for Broken {
        fn name(&self) -> String {
            "Broken".into()
        }
        fn contains(&self, a: &Label) -> bool {
            SectorKind::fib().contains(a)
        }
        fn unit(&self) -> Label {
            SectorKind::fib().unit()
        }
        fn dual(&self, a: &Label) -> Label {
            a.clone()
        }
        fn fusion_outputs(&self, a: &Label, b: &Label) -> Vec<Label> {
            SectorKind::fib().fusion_outputs(a, b)
        }
        fn nsymbol(&self, a: &Label, b: &Label, c: &Label) -> usize {
            SectorKind::fib().nsymbol(a, b, c)
        }
        fn fsymbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> symtensor::FArray {
            let mut x = SectorKind::fib().fsymbol(a, b, c, d, e, f);
            if [a, b, c, d, e, f].iter().all(|l| l.parts()[0] == 1) {
                x.set(0, 0, 0, 0, -x.get(0, 0, 0, 0));
            }
            x
        }
        fn rsymbol(&self, a: &Label, b: &Label, c: &Label) -> symtensor::RMatrix {
            SectorKind::fib().rsymbol(a, b, c)
        }
        fn qdim(&self, a: &Label) -> f64 {
            SectorKind::fib().qdim(a)
        }
        fn frobenius_schur(&self, a: &Label) -> C64 {
            SectorKind::fib().frobenius_schur(a)
        }
        fn twist(&self, a: &Label) -> C64 {
            SectorKind::fib().twist(a)
        }
        fn fusion_style(&self) -> symtensor::FusionStyle {
            SectorKind::fib().fusion_style()
        }
        fn braiding_style(&self) -> BraidingStyle {
            BraidingStyle::NoBraiding
        }
        fn format_label(&self, a: &Label) -> String {
            SectorKind::fib().format_label(a)
        }
        fn parse_label(&self, s: &str) -> symtensor::Result<Label> {
            SectorKind::fib().parse_label(s)
        }
        fn label_magnitude(&self, _a: &Label) -> f64 {
            0.0
        }
        fn generators(&self) -> Vec<Label> {
            SectorKind::fib().generators()
        }
    }
    let labels = SectorKind::fib().labels_up_to(0.0);
    let r = validate_pentagon(&Broken, &labels, 1e-12).unwrap();
    assert!(r.max_residual > 1e-3);
    assert!(r.failing_tuple.is_some());
    assert!(matches!(validate_hexagon(&Broken, &labels, 1e-12), Err(SymError::NoBraidingDefined(_))));
    assert!(matches!(derive_twist(&Broken, &labels[1]), Err(SymError::NoBraidingDefined(_))));
}

#[test]
fn unknown_labels_are_rejected() {
    let z3 = SectorKind::zn(3);
    let err = validate_pentagon(&z3, &[Label::simple(5)], 1e-12);
    assert!(matches!(err, Err(SymError::UnknownLabel(_))));
    assert!(SectorKind::fib().parse_label("σ").is_err());
}

#[test]
fn frobenius_schur_derivation() {
    let su2 = SectorKind::su2();
    let half = su2.parse_label("1/2").unwrap();
    assert!((derive_frobenius_schur(&su2, &half).unwrap() - C64::new(-1.0, 0.0)).norm() < 1e-12);
    let z5 = SectorKind::zn(5);
    assert!((derive_frobenius_schur(&z5, &Label::simple(2)).unwrap() - 1.0).norm() < 1e-12);
    let sigma = SectorKind::ising().parse_label("σ").unwrap();
    assert!((derive_frobenius_schur(&SectorKind::ising(), &sigma).unwrap() - 1.0).norm() < 1e-12);
    for (kind, bound) in kinds_with_bounds() {
        for a in kind.labels_up_to(bound) {
            let d = derive_frobenius_schur(&kind, &a).unwrap();
            assert!((d - kind.frobenius_schur(&a)).norm() < 1e-12, "{kind} {a:?}");
        }
    }
}

#[test]
fn twist_derivation() {
    let f = SectorKind::fz2();
    assert!((derive_twist(&f, &Label::simple(1)).unwrap() + 1.0).norm() < 1e-15);
    let su2 = SectorKind::su2();
    for a in su2.labels_up_to(2.0) {
        assert!((derive_twist(&su2, &a).unwrap() - 1.0).norm() < 1e-12);
    }
    let tau = Label::simple(1);
    let expected = C64::from_polar(1.0 / PHI, 4.0 * PI / 5.0) + C64::from_polar(1.0, -3.0 * PI / 5.0);
    assert!((derive_twist(&SectorKind::fib(), &tau).unwrap() - expected).norm() < 1e-12);
    for (kind, bound) in kinds_with_bounds() {
        for a in kind.labels_up_to(bound) {
            let d = derive_twist(&kind, &a).unwrap();
            assert!((d - kind.twist(&a)).norm() < 1e-12, "{kind} {a:?}");
        }
    }
}

#[test]
fn anyonic_braidings_are_not_symmetric() {
    for kind in [SectorKind::fib(), SectorKind::ising()] {
        assert_eq!(kind.braiding_style(), BraidingStyle::Anyonic);
    }
    let r = SectorKind::fib().rsymbol(&Label::simple(1), &Label::simple(1), &Label::simple(0)).get(0, 0);
    assert!((r * r - 1.0).norm() > 0.1);
}

#[test]
fn su2_fusion_outputs_are_ordered() {
    let su2 = SectorKind::su2();
    for a in 0..6 {
        for b in 0..6 {
            let out = su2.fusion_outputs(&Label::simple(a), &Label::simple(b));
            // 2 min(j_a, j_b) + 1 channels
            assert_eq!(out.len() as i32, a.min(b) + 1);
            assert!(out.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn label_formatting_round_trips() {
    let cases: Vec<(SectorKind, Vec<&str>)> = vec![
        (SectorKind::su2(), vec!["0", "1/2", "1", "3/2", "2"]),
        (SectorKind::u1(), vec!["-3", "0", "2"]),
        (SectorKind::zn(4), vec!["0", "3"]),
        (SectorKind::fz2(), vec!["I", "J"]),
        (SectorKind::fib(), vec!["I", "τ"]),
        (SectorKind::ising(), vec!["I", "σ", "ψ"]),
        ("fZ2 x SU2 x SU2".parse().unwrap(), vec!["(J,1/2,0)", "(I,0,1)"]),
    ];
    for (kind, labels) in cases {
        assert_eq!(kind.name().parse::<SectorKind>().unwrap(), kind);
        for s in labels {
            let l = kind.parse_label(s).unwrap();
            assert_eq!(kind.format_label(&l), s);
        }
    }
    let p: SectorKind = "fZ2 x SU2".parse().unwrap();
    assert!(matches!(p.parse_label("(J,1/2,0)"), Err(SymError::ArityMismatch { expected: 2, got: 3 })));
}

#[test]
fn product_data_factorizes() {
    let p: SectorKind = "fZ2 x SU2".parse().unwrap();
    let a = p.parse_label("(J,1/2)").unwrap();
    assert!((p.qdim(&a) - 2.0).abs() < 1e-15);
    assert_eq!(p.frobenius_schur(&a), C64::new(-1.0, 0.0));
    assert_eq!(p.twist(&a), C64::new(-1.0, 0.0));
    assert_eq!(p.braiding_style(), BraidingStyle::Fermionic);
    let outs = p.fusion_outputs(&a, &a);
    assert_eq!(outs.len(), 2);
}

// --- SU(2) oracles -------------------------------------------------------

/// Clebsch–Gordan coefficients from the lowering-operator construction:
/// start at |J=j1+j2, M=J> = |j1 j1>|j2 j2>, lower with J_-, and build each
/// lower J by orthogonalizing against higher multiplets with the
/// Condon–Shortley phase choice `<j1 j1; j2 J-j1 | J J> > 0`.
fn cg_by_lowering(tj1: i32, tj2: i32) -> std::collections::HashMap<(i32, i32, i32, i32), f64> {
    let d1 = (tj1 + 1) as usize;
    let d2 = (tj2 + 1) as usize;
    let idx = |tm1: i32, tm2: i32| ((tj1 - tm1) / 2) as usize + d1 * ((tj2 - tm2) / 2) as usize;
    let lower = |v: &Vec<f64>| {
        let mut out = vec![0.0; d1 * d2];
        for a in 0..d1 {
            for b in 0..d2 {
                let tm1 = tj1 - 2 * a as i32;
                let tm2 = tj2 - 2 * b as i32;
                let x = v[a + d1 * b];
                if x == 0.0 {
                    continue;
                }
                if tm1 > -tj1 {
                    let c = (((tj1 + tm1) * (tj1 - tm1 + 2)) as f64).sqrt() / 2.0;
                    out[idx(tm1 - 2, tm2)] += c * x;
                }
                if tm2 > -tj2 {
                    let c = (((tj2 + tm2) * (tj2 - tm2 + 2)) as f64).sqrt() / 2.0;
                    out[idx(tm1, tm2 - 2)] += c * x;
                }
            }
        }
        let n: f64 = out.iter().map(|x| x * x).sum::<f64>().sqrt();
        out.iter().map(|x| x / n).collect::<Vec<_>>()
    };
    let mut states: std::collections::HashMap<(i32, i32), Vec<f64>> = Default::default();
    let mut tjj = tj1 + tj2;
    while tjj >= (tj1 - tj2).abs() {
        // highest weight of this multiplet: orthogonal to all states with M = J
        let mut v = vec![0.0; d1 * d2];
        let tm = tjj;
        let mut basis = Vec::new();
        for tm1 in (-tj1..=tj1).step_by(2) {
            let tm2 = tm - tm1;
            if tm2.abs() <= tj2 && (tj2 - tm2) % 2 == 0 {
                basis.push(idx(tm1, tm2));
            }
        }
        // Gram–Schmidt on unit vectors in the M = J subspace
        for &b in &basis {
            let mut w = vec![0.0; d1 * d2];
            w[b] = 1.0;
            for ((_, m), s) in states.iter() {
                if *m == tm {
                    let ov: f64 = s.iter().zip(&w).map(|(x, y)| x * y).sum();
                    for (wi, si) in w.iter_mut().zip(s) {
                        *wi -= ov * si;
                    }
                }
            }
            let n: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-8 {
                v = w.iter().map(|x| x / n).collect();
                break;
            }
        }
        if v[idx(tj1, tjj - tj1)] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let mut cur = v;
        let mut m = tjj;
        loop {
            states.insert((tjj, m), cur.clone());
            if m == -tjj {
                break;
            }
            cur = lower(&cur);
            m -= 2;
        }
        tjj -= 2;
    }
    let mut out = std::collections::HashMap::new();
    for ((tjj, tm), v) in states {
        for tm1 in (-tj1..=tj1).step_by(2) {
            let tm2 = tm - tm1;
            if tm2.abs() <= tj2 && (tj2 - tm2) % 2 == 0 {
                out.insert((tm1, tm2, tjj, tm), v[idx(tm1, tm2)]);
            }
        }
    }
    out
}

#[test]
fn clebsch_gordan_matches_lowering_construction() {
    assert!((clebsch_gordan(1, 1, 1, -1, 0, 0) - 1.0 / 2f64.sqrt()).abs() < 1e-14);
    for tj1 in 0..=4 {
        for tj2 in 0..=4 {
            for ((tm1, tm2, tjj, tm), v) in cg_by_lowering(tj1, tj2) {
                let c = clebsch_gordan(tj1 as u32, tm1, tj2 as u32, tm2, tjj as u32, tm);
                assert!((c - v).abs() < 1e-12, "{tj1} {tm1} {tj2} {tm2} | {tjj} {tm}: {c} vs {v}");
            }
        }
    }
}

#[test]
fn clebsch_gordan_orthogonality() {
    for tj1 in 0..=3u32 {
        for tj2 in 0..=3u32 {
            let js: Vec<u32> = (tj1.abs_diff(tj2)..=tj1 + tj2).step_by(2).collect();
            for &ja in &js {
                for &jb in &js {
                    for tm in (-(ja.min(jb) as i32)..=ja.min(jb) as i32).step_by(2) {
                        let mut s = 0.0;
                        for tm1 in (-(tj1 as i32)..=tj1 as i32).step_by(2) {
                            let tm2 = tm - tm1;
                            s += clebsch_gordan(tj1, tm1, tj2, tm2, ja, tm) * clebsch_gordan(tj1, tm1, tj2, tm2, jb, tm);
                        }
                        let e = if ja == jb { 1.0 } else { 0.0 };
                        assert!((s - e).abs() < 1e-12);
                    }
                }
            }
        }
    }
}

fn three_j(tj: [i32; 3], tm: [i32; 3]) -> f64 {
    // (j1 j2 j3; m1 m2 m3) = (-1)^{j1-j2-m3} / sqrt(2 j3 + 1) <j1 m1 j2 m2 | j3 -m3>
    let ph = (tj[0] - tj[1] - tm[2]) / 2;
    let sign = if ph.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign / ((tj[2] + 1) as f64).sqrt() * clebsch_gordan(tj[0] as u32, tm[0], tj[1] as u32, tm[1], tj[2] as u32, -tm[2])
}

fn six_j_from_three_j(t: [i32; 6]) -> f64 {
    let [j1, j2, j3, j4, j5, j6] = t;
    let ms = |j: i32| (-j..=j).step_by(2).collect::<Vec<_>>();
    let mut s = 0.0;
    for &m1 in &ms(j1) {
        for &m2 in &ms(j2) {
            for &m3 in &ms(j3) {
                for &m4 in &ms(j4) {
                    for &m5 in &ms(j5) {
                        for &m6 in &ms(j6) {
                            let a = three_j([j1, j2, j3], [-m1, -m2, -m3]);
                            if a == 0.0 {
                                continue;
                            }
                            let b = three_j([j1, j5, j6], [m1, -m5, m6]);
                            let c = three_j([j4, j2, j6], [m4, m2, -m6]);
                            let d = three_j([j4, j5, j3], [-m4, m5, m3]);
                            let ph = (j1 - m1 + j2 - m2 + j3 - m3 + j4 - m4 + j5 - m5 + j6 - m6) / 2;
                            let sign = if ph.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                            s += sign * a * b * c * d;
                        }
                    }
                }
            }
        }
    }
    s
}

#[test]
fn wigner6j_matches_clebsch_gordan_sum() {
    let mut checked = 0;
    for j1 in 0..=3 {
        for j2 in 0..=3 {
            for j3 in 0..=3 {
                for j4 in 0..=2 {
                    for j5 in 0..=2 {
                        for j6 in 0..=3 {
                            let t = [j1, j2, j3, j4, j5, j6];
                            let r = su2_wigner6j(t.map(|x| x as u32));
                            let o = six_j_from_three_j(t);
                            assert!((r - o).abs() < 1e-12, "{t:?}: {r} vs {o}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
    // inadmissible triads give exactly zero
    assert_eq!(su2_wigner6j([1, 1, 1, 1, 1, 1]), 0.0);
}

#[test]
fn su2_fsymbol_spin_half_matrix() {
    // F^{1/2 1/2 1/2}_{1/2}: basis {0, 1} is a real orthogonal 2x2 matrix
    let f = |e: u32, g: u32| su2_fsymbol([1, 1, 1, 1, e, g]);
    let m = [[f(0, 0), f(0, 2)], [f(2, 0), f(2, 2)]];
    assert!((m[0][0].abs() - 0.5).abs() < 1e-14);
    assert!((m[0][1].abs() - 3f64.sqrt() / 2.0).abs() < 1e-14);
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    assert!((det.abs() - 1.0).abs() < 1e-14);
}

#[test]
fn large_spin_six_j_is_finite() {
    let x = su2_wigner6j([128, 128, 128, 128, 128, 128]);
    assert!(x.is_finite() && x.abs() < 1.0);
}
