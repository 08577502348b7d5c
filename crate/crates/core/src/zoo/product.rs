//! Deligne products of elementary sectors. Every piece of topological data
//! factorizes: labels are tuples, N multiplies, F and R are Kronecker
//! products with the first component's multiplicity index running fastest.

use std::sync::Arc;

use super::SectorKind;
use crate::error::{Result, SymError};
use crate::sector::{BraidingStyle, FArray, FusionStyle, Label, RMatrix, SectorDescriptor, C64};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductSector(pub(crate) Arc<[SectorKind]>);

impl ProductSector {
    pub fn components(&self) -> &[SectorKind] {
        &self.0
    }

    fn arity(&self) -> usize {
        self.0.len()
    }

    fn each<'a>(&'a self, labels: &'a [&'a Label]) -> impl Iterator<Item = (&'a SectorKind, Vec<Label>)> + 'a {
        self.0.iter().enumerate().map(move |(i, k)| (k, labels.iter().map(|l| l.component(i)).collect()))
    }
}

fn kron_index(idx: &[usize], dims: &[usize]) -> usize {
    let mut off = 0;
    let mut stride = 1;
    for (i, d) in idx.iter().zip(dims) {
        off += i * stride;
        stride *= d;
    }
    off
}

impl SectorDescriptor for ProductSector {
    fn name(&self) -> String {
        self.0.iter().map(|k| k.name()).collect::<Vec<_>>().join(" x ")
    }
    fn contains(&self, a: &Label) -> bool {
        a.arity() == self.arity() && self.0.iter().enumerate().all(|(i, k)| k.contains(&a.component(i)))
    }
    fn unit(&self) -> Label {
        let parts: Vec<i32> = self.0.iter().map(|k| k.unit().first()).collect();
        Label::from_parts(&parts)
    }
    fn dual(&self, a: &Label) -> Label {
        let parts: Vec<i32> = self.0.iter().enumerate().map(|(i, k)| k.dual(&a.component(i)).first()).collect();
        Label::from_parts(&parts)
    }
    fn fusion_outputs(&self, a: &Label, b: &Label) -> Vec<Label> {
        let mut acc: Vec<Vec<i32>> = vec![Vec::new()];
        for (i, k) in self.0.iter().enumerate() {
            let outs = k.fusion_outputs(&a.component(i), &b.component(i));
            let mut next = Vec::with_capacity(acc.len() * outs.len());
            for prefix in &acc {
                for o in &outs {
                    let mut p = prefix.clone();
                    p.push(o.first());
                    next.push(p);
                }
            }
            acc = next;
        }
        let mut out: Vec<Label> = acc.iter().map(|p| Label::from_parts(p)).collect();
        out.sort();
        out
    }
    fn nsymbol(&self, a: &Label, b: &Label, c: &Label) -> usize {
        self.each(&[a, b, c]).map(|(k, l)| k.nsymbol(&l[0], &l[1], &l[2])).product()
    }
    fn fsymbol(&self, a: &Label, b: &Label, c: &Label, d: &Label, e: &Label, f: &Label) -> FArray {
        let parts: Vec<FArray> = self.each(&[a, b, c, d, e, f]).map(|(k, l)| k.fsymbol(&l[0], &l[1], &l[2], &l[3], &l[4], &l[5])).collect();
        let mut dims = [1usize; 4];
        for p in &parts {
            for (x, y) in dims.iter_mut().zip(p.dims()) {
                *x *= y;
            }
        }
        let mut out = FArray::zeros(dims);
        if out.is_empty() {
            return out;
        }
        let axis_dims: Vec<Vec<usize>> = (0..4).map(|ax| parts.iter().map(|p| p.dims()[ax]).collect()).collect();
        // iterate over all component index combinations
        let n = parts.len();
        let mut idx = vec![[0usize; 4]; n];
        loop {
            let mut v = C64::new(1.0, 0.0);
            for (p, i) in parts.iter().zip(&idx) {
                v *= p.get(i[0], i[1], i[2], i[3]);
            }
            let g: Vec<usize> = (0..4)
                .map(|ax| kron_index(&idx.iter().map(|i| i[ax]).collect::<Vec<_>>(), &axis_dims[ax]))
                .collect();
            out.set(g[0], g[1], g[2], g[3], v);
            // advance odometer
            let mut carry = true;
            'outer: for (c, p) in idx.iter_mut().zip(&parts) {
                for ax in 0..4 {
                    c[ax] += 1;
                    if c[ax] < p.dims()[ax] {
                        carry = false;
                        break 'outer;
                    }
                    c[ax] = 0;
                }
            }
            if carry {
                break;
            }
        }
        out
    }
    fn rsymbol(&self, a: &Label, b: &Label, c: &Label) -> RMatrix {
        let parts: Vec<RMatrix> = self.each(&[a, b, c]).map(|(k, l)| k.rsymbol(&l[0], &l[1], &l[2])).collect();
        let mut dims = [1usize; 2];
        for p in &parts {
            dims[0] *= p.dims()[0];
            dims[1] *= p.dims()[1];
        }
        let mut out = RMatrix::zeros(dims);
        if out.is_empty() {
            return out;
        }
        let rd: Vec<usize> = parts.iter().map(|p| p.dims()[0]).collect();
        let cd: Vec<usize> = parts.iter().map(|p| p.dims()[1]).collect();
        let n = parts.len();
        let mut idx = vec![[0usize; 2]; n];
        loop {
            let mut v = C64::new(1.0, 0.0);
            for (p, i) in parts.iter().zip(&idx) {
                v *= p.get(i[0], i[1]);
            }
            let r = kron_index(&idx.iter().map(|i| i[0]).collect::<Vec<_>>(), &rd);
            let c = kron_index(&idx.iter().map(|i| i[1]).collect::<Vec<_>>(), &cd);
            out.set(r, c, v);
            let mut carry = true;
            'outer: for (c, p) in idx.iter_mut().zip(&parts) {
                for ax in 0..2 {
                    c[ax] += 1;
                    if c[ax] < p.dims()[ax] {
                        carry = false;
                        break 'outer;
                    }
                    c[ax] = 0;
                }
            }
            if carry {
                break;
            }
        }
        out
    }
    fn qdim(&self, a: &Label) -> f64 {
        self.each(&[a]).map(|(k, l)| k.qdim(&l[0])).product()
    }
    fn frobenius_schur(&self, a: &Label) -> C64 {
        self.each(&[a]).map(|(k, l)| k.frobenius_schur(&l[0])).product()
    }
    fn twist(&self, a: &Label) -> C64 {
        self.each(&[a]).map(|(k, l)| k.twist(&l[0])).product()
    }
    fn fusion_style(&self) -> FusionStyle {
        self.0.iter().map(|k| k.fusion_style()).max().unwrap_or(FusionStyle::UniqueFusion)
    }
    fn braiding_style(&self) -> BraidingStyle {
        self.0.iter().map(|k| k.braiding_style()).max().unwrap_or(BraidingStyle::Bosonic)
    }
    fn format_label(&self, a: &Label) -> String {
        let parts: Vec<String> = self.each(&[a]).map(|(k, l)| k.format_label(&l[0])).collect();
        format!("({})", parts.join(","))
    }
    fn parse_label(&self, s: &str) -> Result<Label> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| SymError::UnknownLabel(format!("product label `{t}` must be parenthesized")))?;
        let items: Vec<&str> = inner.split(',').collect();
        if items.len() != self.arity() {
            return Err(SymError::ArityMismatch { expected: self.arity(), got: items.len() });
        }
        let mut parts = Vec::with_capacity(items.len());
        for (k, item) in self.0.iter().zip(items) {
            parts.push(k.parse_label(item)?.first());
        }
        Ok(Label::from_parts(&parts))
    }
    fn label_magnitude(&self, a: &Label) -> f64 {
        self.each(&[a]).map(|(k, l)| k.label_magnitude(&l[0])).fold(0.0, f64::max)
    }
    fn generators(&self) -> Vec<Label> {
        let units: Vec<i32> = self.0.iter().map(|k| k.unit().first()).collect();
        let mut out = Vec::new();
        for (i, k) in self.0.iter().enumerate() {
            for g in k.generators() {
                let mut p = units.clone();
                p[i] = g.first();
                out.push(Label::from_parts(&p));
            }
        }
        out
    }
}
