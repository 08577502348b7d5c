//! Concrete sectors and the runtime-selectable [`SectorKind`].

mod abelian;
mod anyons;
mod product;
mod su2;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use abelian::{FermionParity, Trivial, U1, ZN};
pub use anyons::{Fibonacci, Ising, PHI};
pub use product::ProductSector;
pub use su2::{
    clebsch_gordan, format_spin, parse_spin, su2_fsymbol, su2_rsymbol, su2_triangle, su2_wigner6j, MAX_TWO_J, SU2,
};

use crate::error::{Result, SymError};
use crate::sector::{BraidingStyle, FArray, FusionStyle, Label, RMatrix, SectorDescriptor, C64};

/// A sector kind chosen at runtime, addressed by its canonical name
/// (`"Trivial"`, `"Z3"`, `"U1"`, `"fZ2"`, `"SU2"`, `"Fib"`, `"Ising"`, or
/// products such as `"fZ2 x SU2 x SU2"`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SectorKind {
    Trivial(Trivial),
    Zn(ZN),
    U1(U1),
    FermionParity(FermionParity),
    SU2(SU2),
    Fibonacci(Fibonacci),
    Ising(Ising),
    Product(ProductSector),
}

impl SectorKind {
    pub fn trivial() -> Self {
        SectorKind::Trivial(Trivial)
    }

    pub fn u1() -> Self {
        SectorKind::U1(U1)
    }

    pub fn fz2() -> Self {
        SectorKind::FermionParity(FermionParity)
    }

    pub fn su2() -> Self {
        SectorKind::SU2(SU2)
    }

    pub fn fib() -> Self {
        SectorKind::Fibonacci(Fibonacci)
    }

    pub fn ising() -> Self {
        SectorKind::Ising(Ising)
    }

    pub fn zn(n: u32) -> Self {
        assert!(n >= 2, "Z_N needs N >= 2");
        SectorKind::Zn(ZN(n))
    }

    /// Deligne product; nested products are flattened and a single factor
    /// is returned unchanged.
    pub fn product(factors: Vec<SectorKind>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                SectorKind::Product(p) => flat.extend(p.components().iter().cloned()),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        SectorKind::Product(ProductSector(Arc::from(flat)))
    }

    pub fn descriptor(&self) -> &dyn SectorDescriptor {
        match self {
            SectorKind::Trivial(x) => x,
            SectorKind::Zn(x) => x,
            SectorKind::U1(x) => x,
            SectorKind::FermionParity(x) => x,
            SectorKind::SU2(x) => x,
            SectorKind::Fibonacci(x) => x,
            SectorKind::Ising(x) => x,
            SectorKind::Product(x) => x,
        }
    }

    /// Sectors whose labels are irreps of a group (so that tensors have a
    /// dense representation in terms of Clebsch–Gordan coefficients).
    pub fn is_group_like(&self) -> bool {
        match self {
            SectorKind::Trivial(_) | SectorKind::Zn(_) | SectorKind::U1(_) | SectorKind::SU2(_) => true,
            SectorKind::Product(p) => p.components().iter().all(|k| k.is_group_like()),
            _ => false,
        }
    }

    /// All labels reachable from the generators with magnitude at most `bound`.
    pub fn labels_up_to(&self, bound: f64) -> Vec<Label> {
        crate::sector::generate_labels(self, &self.generators(), bound)
    }

    /// Parse a label, reporting unknown labels uniformly.
    pub fn label(&self, s: &str) -> Result<Label> {
        self.parse_label(s)
    }
}

impl SectorDescriptor for SectorKind {
    fn name(&self) -> String {
        self.descriptor().name()
    }
    fn contains(&self, a: &Label) -> bool {
        self.descriptor().contains(a)
    }
    fn unit(&self) -> Label {
        self.descriptor().unit()
    }
    fn dual(&self, a: &Label) -> Label {
        self.descriptor().dual(a)
    }
    fn fusion_outputs(&self, a: &Label, b: &Label) -> Vec<Label> {
        self.descriptor().fusion_outputs(a, b)
    }
    fn nsymbol(&self, a: &Label, b: &Label, c: &Label) -> usize {
        self.descriptor().nsymbol(a, b, c)
    }
    fn fsymbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FArray {
        self.descriptor().fsymbol(a, b, c, d, e, f)
    }
    fn rsymbol(&self, a: &Label, b: &Label, c: &Label) -> RMatrix {
        self.descriptor().rsymbol(a, b, c)
    }
    fn qdim(&self, a: &Label) -> f64 {
        self.descriptor().qdim(a)
    }
    fn frobenius_schur(&self, a: &Label) -> C64 {
        self.descriptor().frobenius_schur(a)
    }
    fn twist(&self, a: &Label) -> C64 {
        self.descriptor().twist(a)
    }
    fn fusion_style(&self) -> FusionStyle {
        self.descriptor().fusion_style()
    }
    fn braiding_style(&self) -> BraidingStyle {
        self.descriptor().braiding_style()
    }
    fn format_label(&self, a: &Label) -> String {
        self.descriptor().format_label(a)
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        self.descriptor().parse_label(s)
    }
    fn label_magnitude(&self, a: &Label) -> f64 {
        self.descriptor().label_magnitude(a)
    }
    fn generators(&self) -> Vec<Label> {
        self.descriptor().generators()
    }
}

impl fmt::Display for SectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for SectorKind {
    type Err = SymError;

    fn from_str(s: &str) -> Result<Self> {
        let factors: Vec<&str> = s.split(['x', '⊠']).map(str::trim).collect();
        if factors.len() > 1 {
            let parsed = factors.into_iter().map(parse_elementary).collect::<Result<Vec<_>>>()?;
            return Ok(SectorKind::product(parsed));
        }
        parse_elementary(s.trim())
    }
}

fn parse_elementary(s: &str) -> Result<SectorKind> {
    Ok(match s {
        "Trivial" => SectorKind::trivial(),
        "U1" => SectorKind::u1(),
        "fZ2" => SectorKind::fz2(),
        "SU2" => SectorKind::su2(),
        "Fib" => SectorKind::fib(),
        "Ising" => SectorKind::ising(),
        _ => match s.strip_prefix('Z').and_then(|n| n.parse::<u32>().ok()) {
            Some(n) if n >= 2 => SectorKind::zn(n),
            _ => return Err(SymError::Parse(format!("unknown sector kind `{s}`"))),
        },
    })
}
