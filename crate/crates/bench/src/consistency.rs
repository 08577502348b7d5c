use serde::Serialize;
use symtensor::sector::validate::{
    default_tolerance, derive_twist, validate_dimensions, validate_hexagon, validate_pentagon, validate_triangle,
    validate_unitarity, ConsistencyReport,
};
use symtensor::{BraidingStyle, Result, SectorDescriptor, SectorKind};

use crate::oracle;

/// One named check with its worst residual against a tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub check: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub passed: bool,
}

impl CheckLine {
    fn from_report(name: &str, r: &ConsistencyReport, tol: f64) -> Self {
        CheckLine { check: name.into(), max_residual: r.max_residual, tolerance: tol, cases: r.tuples_checked, passed: r.passed() }
    }

    fn from_residual(name: &str, residual: f64, tol: f64, cases: usize) -> Self {
        CheckLine { check: name.into(), max_residual: residual, tolerance: tol, cases, passed: residual < tol }
    }
}

/// Coherence suites on all labels of magnitude at most `max_label`.
pub fn sector_suite(kind: &SectorKind, max_label: f64) -> Result<Vec<CheckLine>> {
    let labels = kind.labels_up_to(max_label);
    let tol = default_tolerance(kind);
    let mut out = vec![
        CheckLine::from_report("triangle", &validate_triangle(kind, &labels, tol)?, tol),
        CheckLine::from_report("pentagon", &validate_pentagon(kind, &labels, tol)?, tol),
    ];
    if kind.braiding_style() != BraidingStyle::NoBraiding {
        out.push(CheckLine::from_report("hexagon", &validate_hexagon(kind, &labels, tol)?, tol));
    }
    out.push(CheckLine::from_report("unitarity", &validate_unitarity(kind, &labels, 1e-12)?, 1e-12));
    out.push(CheckLine::from_report("dimensions", &validate_dimensions(kind, &labels, 1e-12)?, 1e-12));
    // derived twists must agree with the tabulated ones
    if kind.braiding_style() != BraidingStyle::NoBraiding {
        let mut worst: f64 = 0.0;
        for a in &labels {
            worst = worst.max((derive_twist(kind, a)? - kind.twist(a)).norm());
        }
        out.push(CheckLine::from_residual("twist", worst, 1e-10, labels.len()));
    }
    Ok(out)
}

/// Sector suites and, for group-like sectors with a dense oracle, a few
/// randomized operation comparisons at small dimensions.
pub fn run_consistency(kind: &SectorKind, max_label: f64, seed: u64) -> Result<Vec<CheckLine>> {
    let mut out = sector_suite(kind, max_label)?;
    if matches!(kind.name().as_str(), "Z2" | "Z3" | "U1" | "SU2") {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        for op in oracle::OPS {
            let mut worst: f64 = 0.0;
            for _ in 0..4 {
                worst = worst.max(oracle::run_case(kind, op, 64.0, &mut rng)?.deviation);
            }
            out.push(CheckLine::from_residual(&format!("dense {op}"), worst, 1e-10, 4));
        }
    }
    Ok(out)
}
