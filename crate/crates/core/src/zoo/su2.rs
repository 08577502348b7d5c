//! SU(2) irreps labelled by `2j`, with Racah-formula 6j symbols and
//! Condon–Shortley Clebsch–Gordan coefficients.

use std::sync::LazyLock;

use crate::error::{Result, SymError};
use crate::sector::{fsymbol_dims, BraidingStyle, FArray, FusionStyle, Label, RMatrix, SectorDescriptor, C64};

/// Largest `2j` for which the factorial table is sized.
pub const MAX_TWO_J: u32 = 128;

static LOG_FACTORIAL: LazyLock<Vec<f64>> = LazyLock::new(|| {
    let n = 4 * MAX_TWO_J as usize + 16;
    let mut t = Vec::with_capacity(n);
    let mut acc = 0.0f64;
    t.push(0.0);
    for k in 1..n {
        acc += (k as f64).ln();
        t.push(acc);
    }
    t
});

fn lf(n: i32) -> f64 {
    LOG_FACTORIAL[n as usize]
}

/// `|a - b| <= c <= a + b` with `a + b + c` even, all in units of `1/2`.
pub fn su2_triangle(ta: u32, tb: u32, tc: u32) -> bool {
    let (a, b, c) = (ta as i32, tb as i32, tc as i32);
    (a - b).abs() <= c && c <= a + b && (a + b + c) % 2 == 0
}

fn log_delta(a: i32, b: i32, c: i32) -> f64 {
    0.5 * (lf((a + b - c) / 2) + lf((a - b + c) / 2) + lf((-a + b + c) / 2) - lf((a + b + c) / 2 + 1))
}

fn check_range(tj: &[u32]) {
    assert!(tj.iter().all(|&x| x <= MAX_TWO_J), "2j exceeds supported maximum {MAX_TWO_J}");
}

/// Wigner 6j symbol `{j1 j2 j3; j4 j5 j6}`; arguments are `2j`.
/// Returns 0 when any of the four triads is inadmissible.
pub fn su2_wigner6j(tj: [u32; 6]) -> f64 {
    check_range(&tj);
    let [j1, j2, j3, j4, j5, j6] = tj.map(|x| x as i32);
    let triads = [(j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3)];
    if !triads.iter().all(|&(a, b, c)| su2_triangle(a as u32, b as u32, c as u32)) {
        return 0.0;
    }
    let pre: f64 = triads.iter().map(|&(a, b, c)| log_delta(a, b, c)).sum();
    let alphas = triads.map(|(a, b, c)| (a + b + c) / 2);
    let betas = [(j1 + j2 + j4 + j5) / 2, (j2 + j3 + j5 + j6) / 2, (j3 + j1 + j6 + j4) / 2];
    let tmin = *alphas.iter().max().unwrap();
    let tmax = *betas.iter().min().unwrap();
    let mut sum = 0.0;
    for t in tmin..=tmax {
        let mut l = pre + lf(t + 1);
        for a in alphas {
            l -= lf(t - a);
        }
        for b in betas {
            l -= lf(b - t);
        }
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * l.exp();
    }
    sum
}

/// `F^{j1 j2 j3}_{j4}[j5, j6] = √(d5 d6) (-1)^{j1+j2+j3+j4} {j1 j2 j5; j3 j4 j6}`.
pub fn su2_fsymbol(tj: [u32; 6]) -> f64 {
    let [a, b, c, d, e, f] = tj;
    if !(su2_triangle(a, b, e) && su2_triangle(e, c, d) && su2_triangle(b, c, f) && su2_triangle(a, f, d)) {
        return 0.0;
    }
    let sign = if ((a + b + c + d) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    sign * (((e + 1) * (f + 1)) as f64).sqrt() * su2_wigner6j([a, b, e, c, d, f])
}

/// `R^{j1 j2}_{j3} = (-1)^{j1 + j2 - j3}`.
pub fn su2_rsymbol(ta: u32, tb: u32, tc: u32) -> f64 {
    if !su2_triangle(ta, tb, tc) {
        return 0.0;
    }
    if ((ta + tb - tc) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Clebsch–Gordan coefficient `<j1 m1; j2 m2 | J M>` in the Condon–Shortley
/// phase convention. All arguments are doubled (`2j`, `2m`).
pub fn clebsch_gordan(tj1: u32, tm1: i32, tj2: u32, tm2: i32, tjj: u32, tmm: i32) -> f64 {
    let (j1, j2, jj) = (tj1 as i32, tj2 as i32, tjj as i32);
    let valid_m = |j: i32, m: i32| m.abs() <= j && (j - m) % 2 == 0;
    if tm1 + tm2 != tmm || !valid_m(j1, tm1) || !valid_m(j2, tm2) || !valid_m(jj, tmm) {
        return 0.0;
    }
    if !su2_triangle(tj1, tj2, tjj) {
        return 0.0;
    }
    check_range(&[tj1, tj2, tjj]);
    let h = |x: i32| x / 2;
    let pre = 0.5
        * (((jj + 1) as f64).ln() + lf(h(jj + j1 - j2)) + lf(h(jj - j1 + j2)) + lf(h(j1 + j2 - jj))
            - lf(h(j1 + j2 + jj) + 1)
            + lf(h(jj + tmm))
            + lf(h(jj - tmm))
            + lf(h(j1 - tm1))
            + lf(h(j1 + tm1))
            + lf(h(j2 - tm2))
            + lf(h(j2 + tm2)));
    let args = |k: i32| [k, h(j1 + j2 - jj) - k, h(j1 - tm1) - k, h(j2 + tm2) - k, h(jj - j2 + tm1) + k, h(jj - j1 - tm2) + k];
    let mut sum = 0.0;
    let mut k = 0;
    loop {
        let a = args(k);
        if a[1] < 0 || a[2] < 0 || a[3] < 0 {
            break;
        }
        if a.iter().all(|&x| x >= 0) {
            let l: f64 = pre - a.iter().map(|&x| lf(x)).sum::<f64>();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * l.exp();
        }
        k += 1;
    }
    sum
}

/// Format `2j` as `"0"`, `"1/2"`, `"1"`, ...
pub fn format_spin(tj: i32) -> String {
    if tj % 2 == 0 {
        (tj / 2).to_string()
    } else {
        format!("{tj}/2")
    }
}

/// Parse `"3/2"`, `"1"`, or `"1.5"` into `2j`.
pub fn parse_spin(s: &str) -> Result<i32> {
    let s = s.trim();
    let err = || SymError::UnknownLabel(format!("{s} is not a spin"));
    let tj = if let Some((num, den)) = s.split_once('/') {
        if den.trim() != "2" {
            return Err(err());
        }
        let n: i32 = num.trim().parse().map_err(|_| err())?;
        if n % 2 == 0 {
            return Err(err());
        }
        n
    } else if let Ok(n) = s.parse::<i32>() {
        2 * n
    } else {
        let x: f64 = s.parse().map_err(|_| err())?;
        let t = (2.0 * x).round();
        if (2.0 * x - t).abs() > 1e-12 {
            return Err(err());
        }
        t as i32
    };
    if tj < 0 {
        return Err(err());
    }
    Ok(tj)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SU2;

fn tj(a: &Label) -> u32 {
    a.first() as u32
}

impl SectorDescriptor for SU2 {
    fn name(&self) -> String {
        "SU2".into()
    }
    fn contains(&self, a: &Label) -> bool {
        a.arity() == 1 && (0..=MAX_TWO_J as i32).contains(&a.first())
    }
    fn unit(&self) -> Label {
        Label::simple(0)
    }
    fn dual(&self, a: &Label) -> Label {
        a.clone()
    }
    fn fusion_outputs(&self, a: &Label, b: &Label) -> Vec<Label> {
        let (x, y) = (a.first(), b.first());
        ((x - y).abs()..=x + y).step_by(2).map(Label::simple).collect()
    }
    fn nsymbol(&self, a: &Label, b: &Label, c: &Label) -> usize {
        usize::from(su2_triangle(tj(a), tj(b), tj(c)))
    }
    fn fsymbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FArray {
        let dims = fsymbol_dims(self, a, b, c, d, e, f);
        if dims.contains(&0) {
            return FArray::zeros(dims);
        }
        FArray::scalar(C64::new(su2_fsymbol([tj(a), tj(b), tj(c), tj(d), tj(e), tj(f)]), 0.0))
    }
    fn rsymbol(&self, a: &Label, b: &Label, c: &Label) -> RMatrix {
        if self.nsymbol(a, b, c) == 0 {
            return RMatrix::zeros([0, 0]);
        }
        RMatrix::scalar(C64::new(su2_rsymbol(tj(a), tj(b), tj(c)), 0.0))
    }
    fn qdim(&self, a: &Label) -> f64 {
        (a.first() + 1) as f64
    }
    fn frobenius_schur(&self, a: &Label) -> C64 {
        C64::new(if a.first() % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
    }
    fn twist(&self, _a: &Label) -> C64 {
        C64::new(1.0, 0.0)
    }
    fn fusion_style(&self) -> FusionStyle {
        FusionStyle::MultiplicityFreeFusion
    }
    fn braiding_style(&self) -> BraidingStyle {
        BraidingStyle::Bosonic
    }
    fn format_label(&self, a: &Label) -> String {
        format_spin(a.first())
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        let t = parse_spin(s)?;
        if t as u32 > MAX_TWO_J {
            return Err(SymError::UnknownLabel(format!("spin {s} exceeds supported range")));
        }
        Ok(Label::simple(t))
    }
    fn label_magnitude(&self, a: &Label) -> f64 {
        a.first() as f64 / 2.0
    }
    fn generators(&self) -> Vec<Label> {
        vec![Label::simple(1)]
    }
}
