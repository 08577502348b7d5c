//! Benchmark spaces. The virtual-space degeneracies follow a truncated
//! Gaussian profile over charges chosen here so that the total dimension
//! hits the requested value exactly; they are not ground-state data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use symtensor::spaces::GradedSpace;
use symtensor::{Result, SectorKind, SymError};

/// Physical, virtual and MPO-bond spaces of one benchmark configuration.
#[derive(Clone, Debug)]
pub struct ModelSpaces {
    pub kind: SectorKind,
    pub physical: GradedSpace,
    pub virtual_space: GradedSpace,
    pub mpo: GradedSpace,
}

/// Fixture file: one virtual space per sector name, all of total dimension
/// `dim`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Fixture {
    pub description: String,
    pub dim: usize,
    pub virtual_spaces: BTreeMap<String, String>,
}

/// Spin multiplicities `(2j, d_j)` over half-integer spins with
/// `Σ d_j (2j + 1) = dim`. Weights are `exp(-k²/2σ²)` for spin `k + 1/2`,
/// cut off below 5% of the peak; rounding leftovers go to spin 1/2.
pub fn half_integer_profile(dim: usize) -> Result<Vec<(i32, usize)>> {
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(SymError::Parse(format!("total dimension {dim} must be positive and even for half-integer spins")));
    }
    let sigma = (dim as f64).cbrt() / 3.0;
    let sigma = sigma.max(0.75);
    let weights: Vec<f64> = (0..).map(|k: i32| (-(k * k) as f64 / (2.0 * sigma * sigma)).exp()).take_while(|&w| w >= 0.05).collect();
    let norm: f64 = weights.iter().enumerate().map(|(k, w)| w * (2 * k + 2) as f64).sum();
    let mut degs: Vec<usize> = weights.iter().map(|w| (w * dim as f64 / norm).floor() as usize).collect();
    let used: usize = degs.iter().enumerate().map(|(k, d)| d * (2 * k + 2)).sum();
    degs[0] += (dim - used) / 2;
    Ok(degs.into_iter().enumerate().filter(|&(_, d)| d > 0).map(|(k, d)| (2 * k as i32 + 1, d)).collect())
}

fn space(kind: &SectorKind, entries: &[(String, usize)]) -> Result<GradedSpace> {
    let refs: Vec<(&str, usize)> = entries.iter().map(|(s, n)| (s.as_str(), *n)).collect();
    GradedSpace::from_labels(kind.clone(), &refs)
}

/// Spin multiplets restricted to U(1): spin `j` with multiplicity `d`
/// contributes `d` states to each charge `2m`, `m = -j..j`.
fn restrict_to_u1(multiplets: &[(i32, usize)]) -> Vec<(String, usize)> {
    let mut charges: BTreeMap<i32, usize> = BTreeMap::new();
    for &(tj, d) in multiplets {
        for k in 0..=tj {
            *charges.entry(-tj + 2 * k).or_default() += d;
        }
    }
    charges.into_iter().map(|(q, d)| (q.to_string(), d)).collect()
}

fn spin_label(tj: i32) -> String {
    if tj % 2 == 0 {
        (tj / 2).to_string()
    } else {
        format!("{tj}/2")
    }
}

/// Spin-1 Heisenberg chain spaces: `P` one triplet, `W = 2·(0) ⊕ (1)`, and a
/// virtual space over half-integer spins of total dimension `dim`, imposed
/// as SU2, its U1 subgroup (charge `2 S_z`), or no symmetry.
pub fn heisenberg(sector: &str, dim: usize) -> Result<ModelSpaces> {
    let profile = half_integer_profile(dim)?;
    let physical = [(2, 1)];
    let mpo = [(0, 2), (2, 1)];
    let kind: SectorKind = sector.parse()?;
    let (p, v, w) = match sector {
        "SU2" => {
            let conv = |m: &[(i32, usize)]| m.iter().map(|&(tj, d)| (spin_label(tj), d)).collect::<Vec<_>>();
            (conv(&physical), conv(&profile), conv(&mpo))
        }
        "U1" => (restrict_to_u1(&physical), restrict_to_u1(&profile), restrict_to_u1(&mpo)),
        "Trivial" => {
            let total = |m: &[(i32, usize)]| vec![("I".to_string(), m.iter().map(|&(tj, d)| d * (tj as usize + 1)).sum())];
            (total(&physical), total(&profile), total(&mpo))
        }
        other => return Err(SymError::Parse(format!("no Heisenberg fixture for sector {other}"))),
    };
    Ok(ModelSpaces { physical: space(&kind, &p)?, virtual_space: space(&kind, &v)?, mpo: space(&kind, &w)?, kind })
}

/// Hubbard-like spaces with fermion parity, charge SU2 and spin SU2. The
/// site holds a charge doublet (empty/doubly occupied) and a spin doublet
/// (singly occupied); the MPO bond carries the identity channels and one
/// hopping channel; the virtual space repeats small multiplets.
pub fn hubbard(scale: usize) -> Result<ModelSpaces> {
    let kind: SectorKind = "fZ2 x SU2 x SU2".parse()?;
    let n = scale.max(1);
    let physical = space(&kind, &[("(I,1/2,0)".into(), 1), ("(J,0,1/2)".into(), 1)])?;
    let mpo = space(&kind, &[("(I,0,0)".into(), 2), ("(J,1/2,1/2)".into(), 1)])?;
    let virtual_space = space(
        &kind,
        &[
            ("(I,0,0)".into(), n),
            ("(J,1/2,1/2)".into(), n),
            ("(I,1/2,0)".into(), n),
            ("(I,0,1/2)".into(), n),
            ("(J,1/2,0)".into(), n),
            ("(J,0,1/2)".into(), n),
        ],
    )?;
    Ok(ModelSpaces { kind, physical, virtual_space, mpo })
}

/// Heisenberg fixture with the three symmetry levels at one total dimension.
pub fn heisenberg_fixture(dim: usize) -> Result<Fixture> {
    let mut virtual_spaces = BTreeMap::new();
    for sector in ["Trivial", "U1", "SU2"] {
        virtual_spaces.insert(sector.to_string(), heisenberg(sector, dim)?.virtual_space.to_string());
    }
    Ok(Fixture {
        description: format!("spin-1 Heisenberg virtual space, D = {dim}, truncated-Gaussian spin profile (artifact-chosen)"),
        dim,
        virtual_spaces,
    })
}

impl Fixture {
    pub fn load(path: &str) -> std::result::Result<Fixture, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        serde_json::from_str(&text).map_err(|e| format!("bad fixture {path}: {e}"))
    }

    pub fn virtual_for(&self, sector: &str) -> std::result::Result<&str, String> {
        self.virtual_spaces.get(sector).map(String::as_str).ok_or_else(|| format!("fixture has no virtual space for sector {sector}"))
    }
}
