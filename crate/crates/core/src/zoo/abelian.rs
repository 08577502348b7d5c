//! Group-like sectors with one-dimensional irreps: the trivial sector, Z_N,
//! U(1) and fermion parity.

use crate::error::{Result, SymError};
use crate::sector::{fsymbol_dims, BraidingStyle, FArray, FusionStyle, Label, RMatrix, SectorDescriptor, C64};

const ONE: C64 = C64::new(1.0, 0.0);

fn scalar_f<S: SectorDescriptor>(s: &S, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FArray {
    let dims = fsymbol_dims(s, a, b, c, d, e, f);
    if dims.iter().all(|&n| n == 1) {
        FArray::scalar(ONE)
    } else {
        FArray::zeros(dims)
    }
}

fn parse_int(s: &str) -> Result<i32> {
    s.trim().parse::<i32>().map_err(|_| SymError::UnknownLabel(s.to_string()))
}

fn single(a: &Label) -> Option<i32> {
    (a.arity() == 1).then(|| a.first())
}

/// The trivial sector with the single label `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Trivial;

impl SectorDescriptor for Trivial {
    fn name(&self) -> String {
        "Trivial".into()
    }
    fn contains(&self, a: &Label) -> bool {
        single(a) == Some(0)
    }
    fn unit(&self) -> Label {
        Label::simple(0)
    }
    fn dual(&self, a: &Label) -> Label {
        a.clone()
    }
    fn fusion_outputs(&self, _a: &Label, _b: &Label) -> Vec<Label> {
        vec![Label::simple(0)]
    }
    fn nsymbol(&self, _a: &Label, _b: &Label, _c: &Label) -> usize {
        1
    }
    fn fsymbol(&self, _a: &Label, _b: &Label, _c: &Label, _d: &Label, _e: &Label, _f: &Label) -> FArray {
        FArray::scalar(ONE)
    }
    fn rsymbol(&self, _a: &Label, _b: &Label, _c: &Label) -> RMatrix {
        RMatrix::scalar(ONE)
    }
    fn qdim(&self, _a: &Label) -> f64 {
        1.0
    }
    fn frobenius_schur(&self, _a: &Label) -> C64 {
        ONE
    }
    fn twist(&self, _a: &Label) -> C64 {
        ONE
    }
    fn fusion_style(&self) -> FusionStyle {
        FusionStyle::UniqueFusion
    }
    fn braiding_style(&self) -> BraidingStyle {
        BraidingStyle::Bosonic
    }
    fn format_label(&self, _a: &Label) -> String {
        "I".into()
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        match s.trim() {
            "I" | "0" => Ok(Label::simple(0)),
            other => Err(SymError::UnknownLabel(other.to_string())),
        }
    }
    fn label_magnitude(&self, _a: &Label) -> f64 {
        0.0
    }
    fn generators(&self) -> Vec<Label> {
        vec![Label::simple(0)]
    }
}

/// Cyclic group Z_N, charges `0..N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZN(pub u32);

impl SectorDescriptor for ZN {
    fn name(&self) -> String {
        format!("Z{}", self.0)
    }
    fn contains(&self, a: &Label) -> bool {
        matches!(single(a), Some(q) if q >= 0 && (q as u32) < self.0)
    }
    fn unit(&self) -> Label {
        Label::simple(0)
    }
    fn dual(&self, a: &Label) -> Label {
        let n = self.0 as i32;
        Label::simple((n - a.first()) % n)
    }
    fn fusion_outputs(&self, a: &Label, b: &Label) -> Vec<Label> {
        vec![Label::simple((a.first() + b.first()) % self.0 as i32)]
    }
    fn nsymbol(&self, a: &Label, b: &Label, c: &Label) -> usize {
        usize::from((a.first() + b.first()) % self.0 as i32 == c.first())
    }
    fn fsymbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FArray {
        scalar_f(self, a, b, c, d, e, f)
    }
    fn rsymbol(&self, a: &Label, b: &Label, c: &Label) -> RMatrix {
        let n = self.nsymbol(a, b, c);
        if n == 1 {
            RMatrix::scalar(ONE)
        } else {
            RMatrix::zeros([0, 0])
        }
    }
    fn qdim(&self, _a: &Label) -> f64 {
        1.0
    }
    fn frobenius_schur(&self, _a: &Label) -> C64 {
        ONE
    }
    fn twist(&self, _a: &Label) -> C64 {
        ONE
    }
    fn fusion_style(&self) -> FusionStyle {
        FusionStyle::UniqueFusion
    }
    fn braiding_style(&self) -> BraidingStyle {
        BraidingStyle::Bosonic
    }
    fn format_label(&self, a: &Label) -> String {
        a.first().to_string()
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        let l = Label::simple(parse_int(s)?);
        if self.contains(&l) {
            Ok(l)
        } else {
            Err(SymError::UnknownLabel(format!("{} in Z{}", s.trim(), self.0)))
        }
    }
    fn label_magnitude(&self, _a: &Label) -> f64 {
        0.0
    }
    fn generators(&self) -> Vec<Label> {
        vec![Label::simple(1)]
    }
}

/// U(1) with integer charges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct U1;

impl SectorDescriptor for U1 {
    fn name(&self) -> String {
        "U1".into()
    }
    fn contains(&self, a: &Label) -> bool {
        single(a).is_some()
    }
    fn unit(&self) -> Label {
        Label::simple(0)
    }
    fn dual(&self, a: &Label) -> Label {
        Label::simple(-a.first())
    }
    fn fusion_outputs(&self, a: &Label, b: &Label) -> Vec<Label> {
        vec![Label::simple(a.first() + b.first())]
    }
    fn nsymbol(&self, a: &Label, b: &Label, c: &Label) -> usize {
        usize::from(a.first() + b.first() == c.first())
    }
    fn fsymbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FArray {
        scalar_f(self, a, b, c, d, e, f)
    }
    fn rsymbol(&self, a: &Label, b: &Label, c: &Label) -> RMatrix {
        if self.nsymbol(a, b, c) == 1 {
            RMatrix::scalar(ONE)
        } else {
            RMatrix::zeros([0, 0])
        }
    }
    fn qdim(&self, _a: &Label) -> f64 {
        1.0
    }
    fn frobenius_schur(&self, _a: &Label) -> C64 {
        ONE
    }
    fn twist(&self, _a: &Label) -> C64 {
        ONE
    }
    fn fusion_style(&self) -> FusionStyle {
        FusionStyle::UniqueFusion
    }
    fn braiding_style(&self) -> BraidingStyle {
        BraidingStyle::Bosonic
    }
    fn format_label(&self, a: &Label) -> String {
        a.first().to_string()
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        Ok(Label::simple(parse_int(s)?))
    }
    fn label_magnitude(&self, a: &Label) -> f64 {
        a.first().abs() as f64
    }
    fn generators(&self) -> Vec<Label> {
        vec![Label::simple(1), Label::simple(-1)]
    }
}

/// Fermion parity: labels `I` (even) and `J` (odd), with `R^{JJ}_I = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FermionParity;

impl SectorDescriptor for FermionParity {
    fn name(&self) -> String {
        "fZ2".into()
    }
    fn contains(&self, a: &Label) -> bool {
        matches!(single(a), Some(0 | 1))
    }
    fn unit(&self) -> Label {
        Label::simple(0)
    }
    fn dual(&self, a: &Label) -> Label {
        a.clone()
    }
    fn fusion_outputs(&self, a: &Label, b: &Label) -> Vec<Label> {
        vec![Label::simple(a.first() ^ b.first())]
    }
    fn nsymbol(&self, a: &Label, b: &Label, c: &Label) -> usize {
        usize::from(a.first() ^ b.first() == c.first())
    }
    fn fsymbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FArray {
        scalar_f(self, a, b, c, d, e, f)
    }
    fn rsymbol(&self, a: &Label, b: &Label, c: &Label) -> RMatrix {
        if self.nsymbol(a, b, c) == 0 {
            return RMatrix::zeros([0, 0]);
        }
        let sign = if a.first() == 1 && b.first() == 1 { -1.0 } else { 1.0 };
        RMatrix::scalar(C64::new(sign, 0.0))
    }
    fn qdim(&self, _a: &Label) -> f64 {
        1.0
    }
    fn frobenius_schur(&self, _a: &Label) -> C64 {
        ONE
    }
    fn twist(&self, a: &Label) -> C64 {
        C64::new(if a.first() == 1 { -1.0 } else { 1.0 }, 0.0)
    }
    fn fusion_style(&self) -> FusionStyle {
        FusionStyle::UniqueFusion
    }
    fn braiding_style(&self) -> BraidingStyle {
        BraidingStyle::Fermionic
    }
    fn format_label(&self, a: &Label) -> String {
        if a.first() == 1 { "J" } else { "I" }.into()
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        match s.trim() {
            "I" | "0" => Ok(Label::simple(0)),
            "J" | "1" => Ok(Label::simple(1)),
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
