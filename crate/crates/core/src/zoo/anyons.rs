//! Fibonacci and Ising anyons.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::error::{Result, SymError};
use crate::sector::{fsymbol_dims, BraidingStyle, FArray, FusionStyle, Label, RMatrix, SectorDescriptor, C64};

const ONE: C64 = C64::new(1.0, 0.0);

fn cis(x: f64) -> C64 {
    C64::from_polar(1.0, x)
}

fn fixed_f(dims: [usize; 4], value: f64) -> FArray {
    if dims.contains(&0) {
        FArray::zeros(dims)
    } else {
        FArray::scalar(C64::new(value, 0.0))
    }
}

/// Golden ratio.
pub const PHI: f64 = 1.618_033_988_749_895;

/// Fibonacci anyons: `I` (encoded 0) and `τ` (encoded 1), `τ ⊗ τ = I ⊕ τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fibonacci;

impl SectorDescriptor for Fibonacci {
    fn name(&self) -> String {
        "Fib".into()
    }
    fn contains(&self, a: &Label) -> bool {
        a.arity() == 1 && matches!(a.first(), 0 | 1)
    }
    fn unit(&self) -> Label {
        Label::simple(0)
    }
    fn dual(&self, a: &Label) -> Label {
        a.clone()
    }
    fn fusion_outputs(&self, a: &Label, b: &Label) -> Vec<Label> {
        match (a.first(), b.first()) {
            (1, 1) => vec![Label::simple(0), Label::simple(1)],
            (x, y) => vec![Label::simple(x + y)],
        }
    }
    fn nsymbol(&self, a: &Label, b: &Label, c: &Label) -> usize {
        match (a.first(), b.first(), c.first()) {
            (1, 1, _) => 1,
            (x, y, z) => usize::from(x + y == z),
        }
    }
    fn fsymbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FArray {
        let dims = fsymbol_dims(self, a, b, c, d, e, f);
        let all_tau = [a, b, c, d].iter().all(|l| l.first() == 1);
        if !all_tau || dims.contains(&0) {
            return fixed_f(dims, 1.0);
        }
        let value = match (e.first(), f.first()) {
            (0, 0) => 1.0 / PHI,
            (1, 1) => -1.0 / PHI,
            _ => 1.0 / PHI.sqrt(),
        };
        FArray::scalar(C64::new(value, 0.0))
    }
    fn rsymbol(&self, a: &Label, b: &Label, c: &Label) -> RMatrix {
        if self.nsymbol(a, b, c) == 0 {
            return RMatrix::zeros([0, 0]);
        }
        let r = match (a.first(), b.first(), c.first()) {
            (1, 1, 0) => cis(4.0 * PI / 5.0),
            (1, 1, 1) => cis(-3.0 * PI / 5.0),
            _ => ONE,
        };
        RMatrix::scalar(r)
    }
    fn qdim(&self, a: &Label) -> f64 {
        if a.first() == 1 {
            PHI
        } else {
            1.0
        }
    }
    fn frobenius_schur(&self, _a: &Label) -> C64 {
        ONE
    }
    fn twist(&self, a: &Label) -> C64 {
        if a.first() == 1 {
            cis(-4.0 * PI / 5.0)
        } else {
            ONE
        }
    }
    fn fusion_style(&self) -> FusionStyle {
        FusionStyle::MultiplicityFreeFusion
    }
    fn braiding_style(&self) -> BraidingStyle {
        BraidingStyle::Anyonic
    }
    fn format_label(&self, a: &Label) -> String {
        if a.first() == 1 { "τ" } else { "I" }.into()
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        match s.trim() {
            "I" | "1" => Ok(Label::simple(0)),
            "τ" | "tau" => Ok(Label::simple(1)),
            other => Err(SymError::UnknownLabel(other.to_string())),
        }
    }
    fn label_magnitude(&self, _a: &Label) -> f64 {
        0.0
    }
    fn generators(&self) -> Vec<Label> {
        vec![Label::simple(1)]
    }
}

/// Ising anyons: `I` (0), `σ` (1), `ψ` (2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ising;

const SIGMA: i32 = 1;
const PSI: i32 = 2;

impl SectorDescriptor for Ising {
    fn name(&self) -> String {
        "Ising".into()
    }
    fn contains(&self, a: &Label) -> bool {
        a.arity() == 1 && (0..=2).contains(&a.first())
    }
    fn unit(&self) -> Label {
        Label::simple(0)
    }
    fn dual(&self, a: &Label) -> Label {
        a.clone()
    }
    fn fusion_outputs(&self, a: &Label, b: &Label) -> Vec<Label> {
        let out = match (a.first(), b.first()) {
            (0, x) | (x, 0) => vec![x],
            (SIGMA, SIGMA) => vec![0, PSI],
            (SIGMA, PSI) | (PSI, SIGMA) => vec![SIGMA],
            _ => vec![0],
        };
        out.into_iter().map(Label::simple).collect()
    }
    fn nsymbol(&self, a: &Label, b: &Label, c: &Label) -> usize {
        usize::from(self.fusion_outputs(a, b).contains(c))
    }
    fn fsymbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FArray {
        let dims = fsymbol_dims(self, a, b, c, d, e, f);
        if dims.contains(&0) {
            return FArray::zeros(dims);
        }
        let value = match (a.first(), b.first(), c.first(), d.first()) {
            (SIGMA, SIGMA, SIGMA, SIGMA) => {
                if e.first() == PSI && f.first() == PSI {
                    -FRAC_1_SQRT_2
                } else {
                    FRAC_1_SQRT_2
                }
            }
            (SIGMA, PSI, SIGMA, PSI) | (PSI, SIGMA, PSI, SIGMA) => -1.0,
            _ => 1.0,
        };
        FArray::scalar(C64::new(value, 0.0))
    }
    fn rsymbol(&self, a: &Label, b: &Label, c: &Label) -> RMatrix {
        if self.nsymbol(a, b, c) == 0 {
            return RMatrix::zeros([0, 0]);
        }
        let r = match (a.first(), b.first(), c.first()) {
            (SIGMA, SIGMA, 0) => cis(-PI / 8.0),
            (SIGMA, SIGMA, PSI) => cis(3.0 * PI / 8.0),
            (PSI, PSI, 0) => C64::new(-1.0, 0.0),
            (SIGMA, PSI, SIGMA) | (PSI, SIGMA, SIGMA) => C64::new(0.0, -1.0),
            _ => ONE,
        };
        RMatrix::scalar(r)
    }
    fn qdim(&self, a: &Label) -> f64 {
        if a.first() == SIGMA {
            SQRT_2
        } else {
            1.0
        }
    }
    fn frobenius_schur(&self, _a: &Label) -> C64 {
        ONE
    }
    fn twist(&self, a: &Label) -> C64 {
        match a.first() {
            SIGMA => cis(PI / 8.0),
            PSI => C64::new(-1.0, 0.0),
            _ => ONE,
        }
    }
    fn fusion_style(&self) -> FusionStyle {
        FusionStyle::MultiplicityFreeFusion
    }
    fn braiding_style(&self) -> BraidingStyle {
        BraidingStyle::Anyonic
    }
    fn format_label(&self, a: &Label) -> String {
        match a.first() {
            SIGMA => "σ",
            PSI => "ψ",
            _ => "I",
        }
        .into()
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        match s.trim() {
            "I" | "1" => Ok(Label::simple(0)),
            "σ" | "sigma" => Ok(Label::simple(SIGMA)),
            "ψ" | "psi" => Ok(Label::simple(PSI)),
            other => Err(SymError::UnknownLabel(other.to_string())),
        }
    }
    fn label_magnitude(&self, _a: &Label) -> f64 {
        0.0
    }
    fn generators(&self) -> Vec<Label> {
        vec![Label::simple(SIGMA)]
    }
}
