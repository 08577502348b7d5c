//! The sector contract: labels, fusion rules and the topological data
//! (N, F, R symbols, quantum dimensions, Frobenius–Schur indicators, twists)
//! that every concrete sector must supply.
//!
//! F- and R-symbols are returned as dense arrays with explicit multiplicity
//! axes. An inadmissible combination of labels yields an array with a zero
//! extent instead of an error.

pub mod validate;

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::error::Result;

pub type C64 = Complex64;

/// A sector label in its canonical integer encoding.
///
/// Elementary sectors use a single integer (charge, parity, `2j`, anyon
/// index). Labels of product sectors concatenate the component encodings, so
/// the derived lexicographic order is the canonical total order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Label(SmallVec<[i32; 4]>);

impl Label {
    pub fn simple(x: i32) -> Self {
        Label(SmallVec::from_slice(&[x]))
    }

    pub fn from_parts(parts: &[i32]) -> Self {
        Label(SmallVec::from_slice(parts))
    }

    pub fn parts(&self) -> &[i32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// The component label of a product label.
    pub fn component(&self, i: usize) -> Label {
        Label::simple(self.0[i])
    }

    pub(crate) fn first(&self) -> i32 {
        self.0[0]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FusionStyle {
    UniqueFusion,
    MultiplicityFreeFusion,
    GenericFusion,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BraidingStyle {
    Bosonic,
    Fermionic,
    Anyonic,
    NoBraiding,
}

impl BraidingStyle {
    /// Bosonic and fermionic braidings square to the identity.
    pub fn is_symmetric(self) -> bool {
        matches!(self, BraidingStyle::Bosonic | BraidingStyle::Fermionic)
    }
}

/// F-symbol `F^{abc}_d[e,f]` with multiplicity axes
/// `[N^{ab}_e, N^{ec}_d, N^{bc}_f, N^{af}_d]`, stored column-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FArray {
    dims: [usize; 4],
    data: SmallVec<[C64; 1]>,
}

impl FArray {
    pub fn zeros(dims: [usize; 4]) -> Self {
        let n = dims.iter().product();
        FArray { dims, data: SmallVec::from_elem(C64::new(0.0, 0.0), n) }
    }

    pub fn scalar(x: C64) -> Self {
        FArray { dims: [1; 4], data: SmallVec::from_elem(x, 1) }
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn offset(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        let [d0, d1, d2, _] = self.dims;
        i + d0 * (j + d1 * (k + d2 * l))
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.data[self.offset(i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, x: C64) {
        let o = self.offset(i, j, k, l);
        self.data[o] = x;
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }
}

/// R-symbol `R^{ab}_c` with axes `[N^{ab}_c, N^{ba}_c]`, column-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    dims: [usize; 2],
    data: SmallVec<[C64; 1]>,
}

impl RMatrix {
    pub fn zeros(dims: [usize; 2]) -> Self {
        RMatrix { dims, data: SmallVec::from_elem(C64::new(0.0, 0.0), dims[0] * dims[1]) }
    }

    pub fn scalar(x: C64) -> Self {
        RMatrix { dims: [1, 1], data: SmallVec::from_elem(x, 1) }
    }

    pub fn dims(&self) -> [usize; 2] {
        self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i + self.dims[0] * j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: C64) {
        self.data[i + self.dims[0] * j] = x;
    }
}

/// Topological data of a fusion category with a distinguished label set.
///
/// Implementations must be pure and safe to share between threads.
pub trait SectorDescriptor: Send + Sync {
    /// Canonical name, e.g. `"SU2"` or `"fZ2 x SU2"`.
    fn name(&self) -> String;
    /// Whether `a` is a label of this sector.
    fn contains(&self, a: &Label) -> bool;
    fn unit(&self) -> Label;
    fn dual(&self, a: &Label) -> Label;
    /// Fusion channels of `a ⊗ b` in canonical order, without repetition.
    fn fusion_outputs(&self, a: &Label, b: &Label) -> Vec<Label>;
    fn nsymbol(&self, a: &Label, b: &Label, c: &Label) -> usize;
    fn fsymbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FArray;
    /// Only meaningful when `braiding_style()` is not `NoBraiding`.
    fn rsymbol(&self, a: &Label, b: &Label, c: &Label) -> RMatrix;
    fn qdim(&self, a: &Label) -> f64;
    fn frobenius_schur(&self, a: &Label) -> C64;
    fn twist(&self, a: &Label) -> C64;
    fn fusion_style(&self) -> FusionStyle;
    fn braiding_style(&self) -> BraidingStyle;
    fn format_label(&self, a: &Label) -> String;
    fn parse_label(&self, s: &str) -> Result<Label>;
    /// Size measure used to bound generated label sets: `j` for SU2, `|q|`
    /// for U1 and 0 for finite sectors.
    fn label_magnitude(&self, a: &Label) -> f64;
    /// Labels that generate all others under fusion and duality.
    fn generators(&self) -> Vec<Label>;

    fn is_unit(&self, a: &Label) -> bool {
        *a == self.unit()
    }
}

/// Closure of `seeds` under fusion and duality, restricted to labels with
/// `label_magnitude <= bound`. Returned in canonical order.
pub fn generate_labels<S: SectorDescriptor + ?Sized>(sector: &S, seeds: &[Label], bound: f64) -> Vec<Label> {
    use std::collections::BTreeSet;
    let keep = |a: &Label| sector.label_magnitude(a) <= bound + 1e-9;
    let mut set: BTreeSet<Label> = BTreeSet::new();
    let mut frontier: Vec<Label> = Vec::new();
    for a in seeds.iter().chain(std::iter::once(&sector.unit())) {
        if keep(a) && set.insert(a.clone()) {
            frontier.push(a.clone());
        }
    }
    while let Some(a) = frontier.pop() {
        let mut new = vec![sector.dual(&a)];
        let current: Vec<Label> = set.iter().cloned().collect();
        for b in &current {
            new.extend(sector.fusion_outputs(&a, b));
            new.extend(sector.fusion_outputs(b, &a));
        }
        for c in new {
            if keep(&c) && set.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    set.into_iter().collect()
}

/// Multiplicity extents of `F^{abc}_d[e,f]`.
pub(crate) fn fsymbol_dims<S: SectorDescriptor + ?Sized>(
    s: &S,
    a: &Label,
    b: &Label,
    c: &Label,
    d: &Label,
    e: &Label,
    f: &Label,
) -> [usize; 4] {
    [s.nsymbol(a, b, e), s.nsymbol(e, c, d), s.nsymbol(b, c, f), s.nsymbol(a, f, d)]
}
