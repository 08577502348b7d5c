//! Elementary tree moves: F-moves, insertion of one tree into a leg of
//! another, Artin braid generators and the four bends between codomain and
//! domain.

use super::{add_to, prune, FusionTree, PairCoefficientMap, TreeCoefficientMap};
use crate::error::{Result, SymError};
use crate::sector::{BraidingStyle, Label, SectorDescriptor, C64};
use crate::zoo::SectorKind;

const ONE: C64 = C64::new(1.0, 0.0);

fn single(t: FusionTree, c: C64) -> TreeCoefficientMap {
    let mut m = TreeCoefficientMap::new();
    m.insert(t, c);
    m
}

/// Recouples legs `pos` and `pos + 1` (`1 <= pos <= N - 2`): the left
/// associated pair of vertices `(L ⊗ u_pos → e) ⊗ u_{pos+1} → d` is
/// expanded as `Σ_f F^{L u_pos u_{pos+1}}_d[e, f]` over the right associated
/// pair `L ⊗ (u_pos ⊗ u_{pos+1} → f) → d`.
///
/// Keys of the result describe the right associated trees: `inner[pos - 1]`
/// holds `f`, `vertices[pos - 1]` the multiplicity of `u_pos ⊗ u_{pos+1} → f`
/// and `vertices[pos]` that of `L ⊗ f → d`. [`insert_at`] of the pair tree
/// maps such a tree back onto the canonical basis.
pub fn f_move(kind: &SectorKind, tree: &FusionTree, pos: usize) -> Result<TreeCoefficientMap> {
    let n = tree.len();
    if pos == 0 || pos + 2 > n {
        return Err(SymError::InadmissibleTree(format!("no vertex pair at position {pos} in a tree with {n} legs")));
    }
    let a = tree.line(pos - 1);
    let b = &tree.uncoupled[pos];
    let c = &tree.uncoupled[pos + 1];
    let e = tree.line(pos);
    let d = tree.line(pos + 1);
    let (mu, nu) = (tree.vertices[pos - 1], tree.vertices[pos]);
    let mut out = TreeCoefficientMap::new();
    for f in kind.fusion_outputs(b, c) {
        let fa = kind.fsymbol(a, b, c, d, e, &f);
        if fa.is_empty() {
            continue;
        }
        let [_, _, nk, nl] = fa.dims();
        for k in 0..nk {
            for l in 0..nl {
                let mut t = tree.clone();
                t.inner[pos - 1] = f.clone();
                t.vertices[pos - 1] = k;
                t.vertices[pos] = l;
                add_to(&mut out, t, fa.get(mu, nu, k, l));
            }
        }
    }
    Ok(prune(out))
}

/// Splits a tree after its first `m` legs (`1 <= m < N`): the first part
/// fuses legs `0..m` to `L_{m-1}`, the second fuses `L_{m-1}` with the rest.
pub fn split(tree: &FusionTree, m: usize) -> (FusionTree, FusionTree) {
    let n = tree.len();
    assert!(m >= 1 && m < n, "split position out of range");
    let mid = tree.line(m - 1).clone();
    let f1 = FusionTree::raw(
        tree.uncoupled[..m].to_vec(),
        mid.clone(),
        tree.isdual[..m].to_vec(),
        if m >= 2 { tree.inner[..m - 2].to_vec() } else { vec![] },
        tree.vertices[..m - 1].to_vec(),
    );
    let mut u2 = vec![mid];
    u2.extend_from_slice(&tree.uncoupled[m..]);
    let mut d2 = vec![false];
    d2.extend_from_slice(&tree.isdual[m..]);
    let f2 = FusionTree::raw(
        u2,
        tree.coupled.clone(),
        d2,
        if n >= 2 && m <= n - 2 { tree.inner[m - 1..].to_vec() } else { vec![] },
        tree.vertices[m - 1..].to_vec(),
    );
    (f1, f2)
}

/// Replaces leg `i` of `host` (which must be a non-dual leg carrying the
/// coupled charge of `guest`) by the tree `guest`, expanded in the canonical
/// basis.
pub fn insert_at(kind: &SectorKind, host: &FusionTree, i: usize, guest: &FusionTree) -> Result<TreeCoefficientMap> {
    if i >= host.len() {
        return Err(SymError::InadmissibleTree(format!("leg {i} out of range")));
    }
    if host.uncoupled[i] != guest.coupled {
        return Err(SymError::ChargeMismatch(format!(
            "cannot attach tree with coupled charge {} to leg carrying {}",
            kind.format_label(&guest.coupled),
            kind.format_label(&host.uncoupled[i])
        )));
    }
    if host.isdual[i] {
        return Err(SymError::ChargeMismatch("cannot attach a tree to a dual leg".into()));
    }
    Ok(prune(insert_raw(kind, host, i, guest)))
}

pub(crate) fn insert_raw(kind: &SectorKind, host: &FusionTree, i: usize, guest: &FusionTree) -> TreeCoefficientMap {
    let n1 = host.len();
    let n2 = guest.len();
    if n1 == 1 {
        return single(guest.clone(), ONE);
    }
    match n2 {
        0 => single(remove_unit_leg(host, i), ONE),
        1 => {
            let mut t = host.clone();
            t.isdual[i] = guest.isdual[0];
            single(t, ONE)
        }
        2 => insert_pair(kind, host, i, guest),
        _ => {
            let (g1, g2) = split(guest, n2 - 1);
            let mut out = TreeCoefficientMap::new();
            for (t, c1) in insert_pair(kind, host, i, &g2) {
                for (t2, c2) in insert_raw(kind, &t, i, &g1) {
                    add_to(&mut out, t2, c1 * c2);
                }
            }
            out
        }
    }
}

/// Removes a leg carrying the unit charge.
fn remove_unit_leg(t: &FusionTree, i: usize) -> FusionTree {
    let n = t.len();
    let mut lines: Vec<Label> = (0..n).map(|k| t.line(k).clone()).collect();
    let mut verts = t.vertices.clone();
    if i == 0 {
        lines.remove(0);
        if !verts.is_empty() {
            verts.remove(0);
        }
    } else {
        lines.remove(i);
        verts.remove(i - 1);
    }
    let mut u = t.uncoupled.clone();
    u.remove(i);
    let mut d = t.isdual.clone();
    d.remove(i);
    let m = u.len();
    let inner = if m > 2 { lines[1..m - 1].to_vec() } else { vec![] };
    FusionTree::raw(u, t.coupled.clone(), d, inner, verts)
}

fn insert_pair(kind: &SectorKind, host: &FusionTree, i: usize, guest: &FusionTree) -> TreeCoefficientMap {
    let (a, b) = (&guest.uncoupled[0], &guest.uncoupled[1]);
    let c = &guest.coupled;
    let mut uncoupled = host.uncoupled.clone();
    uncoupled.splice(i..=i, [a.clone(), b.clone()]);
    let mut isdual = host.isdual.clone();
    isdual.splice(i..=i, [guest.isdual[0], guest.isdual[1]]);
    if i == 0 {
        let mut inner = vec![c.clone()];
        inner.extend_from_slice(&host.inner);
        let mut verts = vec![guest.vertices[0]];
        verts.extend_from_slice(&host.vertices);
        return single(FusionTree::raw(uncoupled, host.coupled.clone(), isdual, inner, verts), ONE);
    }
    let e = host.line(i - 1);
    let d = host.line(i);
    let kappa = guest.vertices[0];
    let lambda = host.vertices[i - 1];
    let mut out = TreeCoefficientMap::new();
    for ep in kind.fusion_outputs(e, a) {
        let fa = kind.fsymbol(e, a, b, d, &ep, c);
        if fa.is_empty() {
            continue;
        }
        let [nm, nn, _, _] = fa.dims();
        for mu in 0..nm {
            for nu in 0..nn {
                let mut inner = host.inner.clone();
                inner.insert(i - 1, ep.clone());
                let mut verts = host.vertices.clone();
                verts.splice(i - 1..i, [mu, nu]);
                let t = FusionTree::raw(uncoupled.clone(), host.coupled.clone(), isdual.clone(), inner, verts);
                add_to(&mut out, t, fa.get(mu, nu, kappa, lambda).conj());
            }
        }
    }
    out
}

/// Exchanges legs `i` and `i + 1`. With `inverse = false` leg `i` passes
/// over leg `i + 1` and the first vertex picks up `R^{u_i u_{i+1}}`.
pub fn artin_braid(kind: &SectorKind, tree: &FusionTree, i: usize, inverse: bool) -> Result<TreeCoefficientMap> {
    let n = tree.len();
    if i + 1 >= n {
        return Err(SymError::InvalidPermutation(format!("cannot braid legs {i}, {} of a {n}-leg tree", i + 1)));
    }
    let mut u2 = tree.uncoupled.clone();
    u2.swap(i, i + 1);
    let mut d2 = tree.isdual.clone();
    d2.swap(i, i + 1);
    let a = &tree.uncoupled[i];
    let b = &tree.uncoupled[i + 1];
    if kind.is_unit(a) || kind.is_unit(b) {
        let mut inner = tree.inner.clone();
        let mut verts = tree.vertices.clone();
        if i > 0 {
            let newline = if kind.is_unit(a) { tree.line(i + 1) } else { tree.line(i - 1) };
            inner[i - 1] = newline.clone();
            verts.swap(i - 1, i);
        }
        return Ok(single(FusionTree::raw(u2, tree.coupled.clone(), d2, inner, verts), ONE));
    }
    if kind.braiding_style() == BraidingStyle::NoBraiding {
        return Err(SymError::BraidingUnavailable(format!("sector {} has no braiding", kind.name())));
    }
    let mut out = TreeCoefficientMap::new();
    if i == 0 {
        let c = tree.line(1);
        let mu = tree.vertices[0];
        let r = if inverse { kind.rsymbol(b, a, c) } else { kind.rsymbol(a, b, c) };
        // inverse braiding uses the adjoint of R^{ba}_c
        let ncols = if inverse { r.dims()[0] } else { r.dims()[1] };
        for nu in 0..ncols {
            let coeff = if inverse { r.get(nu, mu).conj() } else { r.get(mu, nu) };
            let mut verts = tree.vertices.clone();
            verts[0] = nu;
            add_to(&mut out, FusionTree::raw(u2.clone(), tree.coupled.clone(), d2.clone(), tree.inner.clone(), verts), coeff);
        }
        return Ok(prune(out));
    }
    // legs i > 0: a -(b)-> c -(d)-> e becomes a -(d)-> c' -(b)-> e
    let b = &tree.uncoupled[i];
    let d = &tree.uncoupled[i + 1];
    let a = tree.line(i - 1);
    let c = tree.line(i);
    let e = tree.line(i + 1);
    let (mu, nu) = (tree.vertices[i - 1], tree.vertices[i]);
    let bbar = kind.dual(b);
    let ebar_outs = kind.fusion_outputs(e, &bbar);
    for cp in kind.fusion_outputs(a, d) {
        if !ebar_outs.contains(&cp) {
            continue;
        }
        let fm = kind.fsymbol(d, a, b, e, &cp, c);
        if fm.is_empty() {
            continue;
        }
        // r1[ν, ρ] and r2[σ, κ], adjoints of the reversed symbols when inverse
        let r1 = |x: usize, y: usize| if inverse { kind.rsymbol(d, c, e).get(y, x).conj() } else { kind.rsymbol(c, d, e).get(x, y) };
        let r2 = |x: usize, y: usize| if inverse { kind.rsymbol(d, a, &cp).get(y, x).conj() } else { kind.rsymbol(a, d, &cp).get(x, y) };
        let [nk, nl, _, nr] = fm.dims();
        let ns = kind.nsymbol(a, d, &cp);
        for sigma in 0..ns {
            for lambda in 0..nl {
                let mut coeff = C64::new(0.0, 0.0);
                for rho in 0..nr {
                    for kappa in 0..nk {
                        coeff += r1(nu, rho) * fm.get(kappa, lambda, mu, rho).conj() * r2(sigma, kappa).conj();
                    }
                }
                let mut inner = tree.inner.clone();
                inner[i - 1] = cp.clone();
                let mut verts = tree.vertices.clone();
                verts[i - 1] = sigma;
                verts[i] = lambda;
                add_to(&mut out, FusionTree::raw(u2.clone(), tree.coupled.clone(), d2.clone(), inner, verts), coeff);
            }
        }
    }
    Ok(prune(out))
}

fn check_pair(s: &FusionTree, f: &FusionTree) -> Result<()> {
    if s.coupled != f.coupled {
        return Err(SymError::ChargeMismatch("splitting and fusion trees have different coupled charges".into()));
    }
    Ok(())
}

fn swap_conj(m: PairCoefficientMap) -> PairCoefficientMap {
    m.into_iter().map(|((a, b), c)| ((b, a), c.conj())).collect()
}

/// Moves the last codomain leg to the end of the domain.
pub fn bend_right(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> Result<PairCoefficientMap> {
    check_pair(s, f)?;
    if s.is_empty() {
        return Err(SymError::InadmissibleTree("codomain tree has no leg to bend".into()));
    }
    Ok(prune(bend_right_raw(kind, s, f)))
}

pub(crate) fn bend_right_raw(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> PairCoefficientMap {
    let n1 = s.len();
    let n2 = f.len();
    let c = &s.coupled;
    let a = if n1 == 1 { kind.unit() } else { s.line(n1 - 2).clone() };
    let b = &s.uncoupled[n1 - 1];
    let s2 = FusionTree::raw(
        s.uncoupled[..n1 - 1].to_vec(),
        a.clone(),
        s.isdual[..n1 - 1].to_vec(),
        if n1 > 2 { s.inner[..n1 - 3].to_vec() } else { vec![] },
        if n1 > 1 { s.vertices[..n1 - 2].to_vec() } else { vec![] },
    );
    let bbar = kind.dual(b);
    let mut u2 = f.uncoupled.clone();
    u2.push(bbar.clone());
    let mut d2 = f.isdual.clone();
    d2.push(!s.isdual[n1 - 1]);
    let inner2 = if n2 > 1 {
        let mut v = f.inner.clone();
        v.push(c.clone());
        v
    } else {
        vec![]
    };
    let mut coeff0 = C64::new((kind.qdim(c) / kind.qdim(&a)).sqrt(), 0.0);
    if s.isdual[n1 - 1] {
        coeff0 *= kind.frobenius_schur(&bbar).conj();
    }
    let one = kind.unit();
    let bsym = kind.fsymbol(&a, b, &bbar, &a, c, &one);
    let bfac = (kind.qdim(&a) * kind.qdim(b) / kind.qdim(c)).sqrt();
    let mu = if n1 > 1 { s.vertices[n1 - 2] } else { 0 };
    let mut out = PairCoefficientMap::new();
    for nu in 0..bsym.dims()[1] {
        let verts2 = if n2 > 0 {
            let mut v = f.vertices.clone();
            v.push(nu);
            v
        } else {
            vec![]
        };
        let f2 = FusionTree::raw(u2.clone(), a.clone(), d2.clone(), inner2.clone(), verts2);
        add_to(&mut out, (s2.clone(), f2), coeff0 * bfac * bsym.get(mu, nu, 0, 0));
    }
    out
}

/// Moves the last domain leg to the end of the codomain (inverse of
/// [`bend_right`]).
pub fn unbend_right(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> Result<PairCoefficientMap> {
    check_pair(s, f)?;
    if f.is_empty() {
        return Err(SymError::InadmissibleTree("domain tree has no leg to bend".into()));
    }
    Ok(prune(unbend_right_raw(kind, s, f)))
}

pub(crate) fn unbend_right_raw(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> PairCoefficientMap {
    swap_conj(bend_right_raw(kind, f, s))
}

/// Moves the first codomain leg to the front of the domain.
pub fn unbend_left(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> Result<PairCoefficientMap> {
    check_pair(s, f)?;
    if s.is_empty() {
        return Err(SymError::InadmissibleTree("codomain tree has no leg to bend".into()));
    }
    Ok(prune(unbend_left_raw(kind, s, f)))
}

pub(crate) fn unbend_left_raw(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> PairCoefficientMap {
    let n1 = s.len();
    let a = &s.uncoupled[0];
    let isduala = s.isdual[0];
    let mut factor = C64::new(kind.qdim(a).sqrt(), 0.0);
    if !isduala {
        factor *= kind.frobenius_schur(a).conj();
    }
    let c1 = kind.dual(a);
    let c2 = s.coupled.clone();
    let mut out = PairCoefficientMap::new();
    let cset = if n1 == 1 { vec![kind.unit()] } else { kind.fusion_outputs(&c1, &c2) };
    for c in cset {
        for mu in 0..kind.nsymbol(&c1, &c2, &c) {
            let fc = FusionTree::raw(vec![c1.clone(), c2.clone()], c.clone(), vec![!isduala, false], vec![], vec![mu]);
            for (fl, coeff1) in insert_raw(kind, &fc, 1, s) {
                if n1 > 1 && !kind.is_unit(&fl.inner[0]) {
                    continue;
                }
                // drop the tadpole formed by the first two legs
                let nl = fl.len();
                let left = FusionTree::raw(
                    fl.uncoupled[2..].to_vec(),
                    fl.coupled.clone(),
                    fl.isdual[2..].to_vec(),
                    if nl > 4 { fl.inner[2..].to_vec() } else { vec![] },
                    if nl > 3 { fl.vertices[2..].to_vec() } else { vec![] },
                );
                for (fr, coeff2) in insert_raw(kind, &fc, 1, f) {
                    add_to(&mut out, (left.clone(), fr), factor * coeff1 * coeff2.conj());
                }
            }
        }
    }
    out
}

/// Moves the first domain leg to the front of the codomain (inverse of
/// [`unbend_left`]).
pub fn bend_left(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> Result<PairCoefficientMap> {
    check_pair(s, f)?;
    if f.is_empty() {
        return Err(SymError::InadmissibleTree("domain tree has no leg to bend".into()));
    }
    Ok(prune(bend_left_raw(kind, s, f)))
}

pub(crate) fn bend_left_raw(kind: &SectorKind, s: &FusionTree, f: &FusionTree) -> PairCoefficientMap {
    swap_conj(unbend_left_raw(kind, f, s))
}
