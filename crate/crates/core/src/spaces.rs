//! Graded vector spaces `V = ⊕_a C^{n_a} ⊗ V_a`, their tensor products and
//! spaces of maps between them.
//!
//! Text grammar: `SU2[0:1, 1/2:2]` is a space with one copy of spin 0 and
//! two copies of spin 1/2; a trailing `'` marks the dual space. Products are
//! joined with `⊗`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Result, SymError};
use crate::sector::{Label, SectorDescriptor};
use crate::zoo::SectorKind;

/// A graded space. Degeneracies are keyed by the label of the underlying
/// (non-dual) space; a dual space carries the dual charges in fusion trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    kind: SectorKind,
    sectors: Vec<(Label, usize)>,
    dual: bool,
}

impl GradedSpace {
    /// Labels are validated, zero degeneracies dropped, repeated labels
    /// accumulated, and the result sorted in canonical label order.
    pub fn new(kind: SectorKind, degeneracies: impl IntoIterator<Item = (Label, usize)>) -> Result<Self> {
        let mut map: BTreeMap<Label, usize> = BTreeMap::new();
        for (a, n) in degeneracies {
            if !kind.contains(&a) {
                return Err(SymError::UnknownLabel(format!("{:?} in {}", a.parts(), kind.name())));
            }
            *map.entry(a).or_default() += n;
        }
        let sectors = map.into_iter().filter(|&(_, n)| n > 0).collect();
        Ok(GradedSpace { kind, sectors, dual: false })
    }

    /// Convenience constructor from label strings.
    pub fn from_labels(kind: SectorKind, degeneracies: &[(&str, usize)]) -> Result<Self> {
        let parsed = degeneracies.iter().map(|(s, n)| Ok((kind.parse_label(s)?, *n))).collect::<Result<Vec<_>>>()?;
        GradedSpace::new(kind, parsed)
    }

    /// The one-dimensional space carrying the unit label.
    pub fn unit(kind: SectorKind) -> Self {
        let one = kind.unit();
        GradedSpace { kind, sectors: vec![(one, 1)], dual: false }
    }

    pub fn kind(&self) -> &SectorKind {
        &self.kind
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn dual(&self) -> Self {
        GradedSpace { kind: self.kind.clone(), sectors: self.sectors.clone(), dual: !self.dual }
    }

    /// `Σ_a n_a d_a`.
    pub fn dim(&self) -> f64 {
        self.sectors.iter().map(|(a, n)| *n as f64 * self.kind.qdim(a)).sum()
    }

    /// `Σ_a n_a`.
    pub fn total_degeneracy(&self) -> usize {
        self.sectors.iter().map(|(_, n)| n).sum()
    }

    /// Labels of the underlying non-dual space, in canonical order.
    pub fn sectors(&self) -> impl Iterator<Item = &Label> {
        self.sectors.iter().map(|(a, _)| a)
    }

    pub fn degeneracies(&self) -> &[(Label, usize)] {
        &self.sectors
    }

    /// Degeneracy of `a`, queried with the non-dual label; 0 if absent.
    pub fn degeneracy(&self, a: &Label) -> usize {
        self.sectors.binary_search_by(|(x, _)| x.cmp(a)).map(|i| self.sectors[i].1).unwrap_or(0)
    }

    /// Charges as they enter fusion trees (dualized for a dual space),
    /// paired with their degeneracies.
    pub fn tree_charges(&self) -> Vec<(Label, usize)> {
        self.sectors
            .iter()
            .map(|(a, n)| (if self.dual { self.kind.dual(a) } else { a.clone() }, *n))
            .collect()
    }

    /// Degeneracy of a tree charge (the inverse of [`Self::tree_charges`]).
    pub fn charge_degeneracy(&self, charge: &Label) -> usize {
        if self.dual {
            self.degeneracy(&self.kind.dual(charge))
        } else {
            self.degeneracy(charge)
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, dual) = match s.strip_suffix('\'') {
            Some(b) => (b.trim_end(), true),
            None => (s, false),
        };
        let open = body.find('[').ok_or_else(|| SymError::Parse(format!("missing `[` in `{s}`")))?;
        let inner = body[open + 1..]
            .trim_end()
            .strip_suffix(']')
            .ok_or_else(|| SymError::Parse(format!("missing `]` in `{s}`")))?;
        let kind: SectorKind = body[..open].trim().parse()?;
        let mut degs = Vec::new();
        for entry in split_top_level(inner) {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (label, n) =
                entry.rsplit_once(':').ok_or_else(|| SymError::Parse(format!("entry `{entry}` lacks `:`")))?;
            let n: usize = n.trim().parse().map_err(|_| SymError::Parse(format!("bad degeneracy in `{entry}`")))?;
            degs.push((kind.parse_label(label.trim())?, n));
        }
        let mut v = GradedSpace::new(kind, degs)?;
        v.dual = dual;
        Ok(v)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> =
            self.sectors.iter().map(|(a, n)| format!("{}:{}", self.kind.format_label(a), n)).collect();
        write!(f, "{}[{}]{}", self.kind.name(), entries.join(", "), if self.dual { "'" } else { "" })
    }
}

/// An ordered tensor product of graded spaces; the empty product is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductSpace {
    kind: SectorKind,
    spaces: Vec<GradedSpace>,
}

impl ProductSpace {
    pub fn new(kind: SectorKind, spaces: Vec<GradedSpace>) -> Result<Self> {
        for v in &spaces {
            if *v.kind() != kind {
                return Err(SymError::SectorMismatch(kind.name(), v.kind().name()));
            }
        }
        Ok(ProductSpace { kind, spaces })
    }

    pub fn empty(kind: SectorKind) -> Self {
        ProductSpace { kind, spaces: Vec::new() }
    }

    /// Product of at least one space; the sector kind is taken from the first.
    pub fn from_spaces(spaces: Vec<GradedSpace>) -> Result<Self> {
        let kind = spaces.first().ok_or_else(|| SymError::SpaceMismatch("empty product needs a sector kind".into()))?.kind().clone();
        ProductSpace::new(kind, spaces)
    }

    pub fn kind(&self) -> &SectorKind {
        &self.kind
    }

    pub fn spaces(&self) -> &[GradedSpace] {
        &self.spaces
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    /// Reverses the order and dualizes every factor.
    pub fn dual(&self) -> Self {
        ProductSpace { kind: self.kind.clone(), spaces: self.spaces.iter().rev().map(GradedSpace::dual).collect() }
    }

    pub fn dim(&self) -> f64 {
        self.spaces.iter().map(GradedSpace::dim).product()
    }

    /// The fused space of the product.
    pub fn fuse(&self) -> GradedSpace {
        fuse(&self.kind, &self.spaces)
    }

    pub fn parse(kind: &SectorKind, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "one" {
            return Ok(ProductSpace::empty(kind.clone()));
        }
        let spaces = s.split('⊗').map(GradedSpace::parse).collect::<Result<Vec<_>>>()?;
        ProductSpace::new(kind.clone(), spaces)
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spaces.is_empty() {
            return f.write_str("one");
        }
        let parts: Vec<String> = self.spaces.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" ⊗ "))
    }
}

/// Fused space of an ordered product: `N_c = Σ` over uncoupled charges of
/// the number of fusion trees to `c`, weighted by degeneracies.
pub fn fuse(kind: &SectorKind, spaces: &[GradedSpace]) -> GradedSpace {
    let mut acc: BTreeMap<Label, usize> = BTreeMap::new();
    acc.insert(kind.unit(), 1);
    for v in spaces {
        let mut next: BTreeMap<Label, usize> = BTreeMap::new();
        for (a, na) in &acc {
            for (b, nb) in v.tree_charges() {
                for c in kind.fusion_outputs(a, &b) {
                    *next.entry(c.clone()).or_default() += na * nb * kind.nsymbol(a, &b, &c);
                }
            }
        }
        acc = next;
    }
    GradedSpace::new(kind.clone(), acc).expect("fusion outputs are valid labels")
}

/// Checked variant of [`fuse`] for spaces that may mix sector kinds.
pub fn fuse_checked(spaces: &[GradedSpace]) -> Result<GradedSpace> {
    let p = ProductSpace::from_spaces(spaces.to_vec())?;
    Ok(p.fuse())
}

/// The space of maps `domain → codomain`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomSpace {
    pub codomain: ProductSpace,
    pub domain: ProductSpace,
}

impl HomSpace {
    pub fn new(codomain: ProductSpace, domain: ProductSpace) -> Result<Self> {
        if codomain.kind() != domain.kind() {
            return Err(SymError::SectorMismatch(codomain.kind().name(), domain.kind().name()));
        }
        Ok(HomSpace { codomain, domain })
    }

    pub fn kind(&self) -> &SectorKind {
        self.codomain.kind()
    }

    pub fn num_out(&self) -> usize {
        self.codomain.len()
    }

    pub fn num_in(&self) -> usize {
        self.domain.len()
    }

    pub fn num_legs(&self) -> usize {
        self.num_out() + self.num_in()
    }

    /// Space of leg `i` when all legs are viewed as outgoing: codomain
    /// factors as is, domain factors dualized.
    pub fn leg_space(&self, i: usize) -> GradedSpace {
        let n = self.num_out();
        if i < n {
            self.codomain.spaces()[i].clone()
        } else {
            self.domain.spaces()[i - n].dual()
        }
    }

    /// Coupled charges carried by both codomain and domain.
    pub fn block_sectors(&self) -> Vec<Label> {
        let c = self.codomain.fuse();
        let d = self.domain.fuse();
        c.sectors().filter(|a| d.degeneracy(a) > 0).cloned().collect()
    }

    pub fn adjoint(&self) -> Self {
        HomSpace { codomain: self.domain.clone(), domain: self.codomain.clone() }
    }

    /// Codomain and domain assembled from legs `p1` and `p2` (in the
    /// all-outgoing numbering).
    pub fn select(&self, p1: &[usize], p2: &[usize]) -> HomSpace {
        let kind = self.kind().clone();
        let cod = p1.iter().map(|&i| self.leg_space(i)).collect();
        let dom = p2.iter().map(|&i| self.leg_space(i).dual()).collect();
        HomSpace { codomain: ProductSpace { kind: kind.clone(), spaces: cod }, domain: ProductSpace { kind, spaces: dom } }
    }

    pub fn dim(&self) -> f64 {
        self.codomain.dim() * self.domain.dim()
    }
}

impl fmt::Display for HomSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ← {}", self.codomain, self.domain)
    }
}
