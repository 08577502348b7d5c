use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use symtensor::flops::{self, FlopCount};
use symtensor::spaces::GradedSpace;
use symtensor::tensor::{parallel_enabled, set_parallel};
use symtensor::{ncon, HomSpace, ProductSpace, SectorKind, SpectrumReport, TensorMap, TruncationScheme, C64};

use crate::consistency::{run_consistency, CheckLine};
use crate::fixtures::Fixture;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Workload {
    SingleSite,
    TwoSite,
    SvdOnly,
    Consistency,
}

impl FromStr for Workload {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "single_site" => Ok(Workload::SingleSite),
            "two_site" => Ok(Workload::TwoSite),
            "svd_only" => Ok(Workload::SvdOnly),
            "consistency" => Ok(Workload::Consistency),
            _ => Err(format!("unknown workload `{s}` (single_site, two_site, svd_only, consistency)")),
        }
    }
}

impl fmt::Display for Workload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Workload::SingleSite => "single_site",
            Workload::TwoSite => "two_site",
            Workload::SvdOnly => "svd_only",
            Workload::Consistency => "consistency",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchConfig {
    pub sector: String,
    pub physical: String,
    /// Space string, or `@path` to a fixture file keyed by sector name.
    pub virtual_space: String,
    pub mpo: String,
    pub repetitions: usize,
    pub seed: u64,
    pub workload: Workload,
    #[serde(default)]
    pub parallel: bool,
    /// Label bound for the consistency workload.
    #[serde(default = "default_max_label")]
    pub max_label: f64,
}

fn default_max_label() -> f64 {
    1.0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchResult {
    pub config: BenchConfig,
    pub workload: Workload,
    /// Wall time of each timed repetition; the warm-up run is excluded.
    pub times_s: Vec<f64>,
    pub median_s: f64,
    /// FLOPs of one repetition, as multiplied block by block.
    pub flops_block: u64,
    /// FLOPs the same repetition would take on dense arrays.
    pub flops_dense: u64,
    pub dim_total: f64,
    pub version: String,
    pub parallel: bool,
    /// Norm of the final output tensor, for determinism checks.
    pub checksum: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub truncation_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checks: Option<Vec<serde_json::Value>>,
}

impl BenchResult {
    pub fn passed(&self) -> bool {
        self.checks.as_ref().is_none_or(|c| c.iter().all(|l| l["passed"] == serde_json::Value::Bool(true)))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("repetition,time_s\n");
        for (i, t) in self.times_s.iter().enumerate() {
            s.push_str(&format!("{i},{t}\n"));
        }
        s
    }
}

#[derive(Debug)]
pub enum BenchError {
    /// Malformed spaces, sector names or options.
    Config(String),
    /// An operation failed or a built-in cross-check did not hold.
    Correctness(String),
}

impl BenchError {
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Correctness(_) => 1,
            BenchError::Config(_) => 2,
        }
    }
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::Config(m) => write!(f, "configuration error: {m}"),
            BenchError::Correctness(m) => write!(f, "correctness failure: {m}"),
        }
    }
}

impl std::error::Error for BenchError {}

fn wrong(e: symtensor::SymError) -> BenchError {
    BenchError::Correctness(e.to_string())
}

/// Parses a space argument; `@path` reads the entry for `sector` from a
/// fixture file.
pub fn resolve_space(arg: &str, sector: &SectorKind) -> Result<GradedSpace, BenchError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => Fixture::load(path).and_then(|f| f.virtual_for(&sector.to_string()).map(str::to_string)).map_err(BenchError::Config)?,
        None => arg.to_string(),
    };
    let v = GradedSpace::parse(&text).map_err(|e| BenchError::Config(e.to_string()))?;
    if v.kind() != sector {
        return Err(BenchError::Config(format!("space `{text}` is not over sector {sector}")));
    }
    Ok(v)
}

/// Seeded random inputs of the DMRG kernels.
pub struct Operands {
    pub kind: SectorKind,
    pub p: GradedSpace,
    pub v: GradedSpace,
    pub w: GradedSpace,
}

impl Operands {
    pub fn from_config(cfg: &BenchConfig) -> Result<Operands, BenchError> {
        if cfg.repetitions == 0 {
            return Err(BenchError::Config("repetitions must be at least 1".into()));
        }
        let kind: SectorKind = cfg.sector.parse().map_err(|e: symtensor::SymError| BenchError::Config(e.to_string()))?;
        Ok(Operands {
            p: resolve_space(&cfg.physical, &kind)?,
            v: resolve_space(&cfg.virtual_space, &kind)?,
            w: resolve_space(&cfg.mpo, &kind)?,
            kind,
        })
    }

    fn hom(&self, cod: &[&GradedSpace], dom: &[&GradedSpace]) -> Result<HomSpace, BenchError> {
        let p = |s: &[&GradedSpace]| ProductSpace::new(self.kind.clone(), s.iter().map(|&x| x.clone()).collect());
        HomSpace::new(p(cod).map_err(wrong)?, p(dom).map_err(wrong)?).map_err(wrong)
    }

    fn random(&self, cod: &[&GradedSpace], dom: &[&GradedSpace], seed: u64) -> Result<TensorMap, BenchError> {
        let h = self.hom(cod, dom)?;
        if h.block_sectors().is_empty() {
            return Err(BenchError::Config(format!("{h} admits no symmetric tensors")));
        }
        Ok(TensorMap::random(h, seed))
    }

    /// `A: V⊗P ← V`.
    pub fn mps(&self, seed: u64) -> Result<TensorMap, BenchError> {
        self.random(&[&self.v, &self.p], &[&self.v], seed)
    }

    /// `O: W⊗P ← P⊗W`.
    pub fn mpo(&self, seed: u64) -> Result<TensorMap, BenchError> {
        self.random(&[&self.w, &self.p], &[&self.p, &self.w], seed)
    }

    /// `FL: V ← V⊗W`.
    pub fn left_env(&self, seed: u64) -> Result<TensorMap, BenchError> {
        self.random(&[&self.v], &[&self.v, &self.w], seed)
    }

    /// `FR: W⊗V* ← V*`.
    pub fn right_env(&self, seed: u64) -> Result<TensorMap, BenchError> {
        let vd = self.v.dual();
        self.random(&[&self.w, &vd], &[&vd], seed)
    }
}

/// Effective single-site Hamiltonian applied to `a`, contracting FL, then
/// O, then FR.
pub fn apply_single(fl: &TensorMap, o: &TensorMap, fr: &TensorMap, a: &TensorMap) -> symtensor::Result<TensorMap> {
    ncon(&[fl, a, o, fr], &[vec![-1, 1, 2], vec![1, 3, 4], vec![2, -2, 3, 5], vec![5, -3, 4]], &[1, 2, 3, 4, 5], 2)
}

/// Two-site block `V⊗P ← V⊗P*` from two site tensors.
pub fn two_site_block(a: &TensorMap, b: &TensorMap) -> symtensor::Result<TensorMap> {
    ncon(&[a, b], &[vec![-1, -2, 1], vec![1, -4, -3]], &[1], 2)
}

/// Effective two-site Hamiltonian applied to `ac2`.
pub fn apply_two(fl: &TensorMap, o: &TensorMap, fr: &TensorMap, ac2: &TensorMap) -> symtensor::Result<TensorMap> {
    ncon(
        &[fl, ac2, o, o, fr],
        &[vec![-1, 1, 2], vec![1, 3, 4, 5], vec![2, -2, 3, 6], vec![6, -4, 5, 7], vec![7, -3, 4]],
        &[1, 2, 3, 6, 5, 7, 4],
        2,
    )
}

fn normalized(t: TensorMap) -> TensorMap {
    let n = t.norm();
    if n > 0.0 {
        t.scale(C64::new(1.0 / n, 0.0))
    } else {
        t
    }
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Runs `step` once untimed while counting FLOPs, then `reps` timed times.
fn measure<T>(reps: usize, mut state: T, mut step: impl FnMut(T) -> Result<T, BenchError>) -> Result<(FlopCount, Vec<f64>, T), BenchError> {
    flops::reset();
    state = step(state)?;
    let count = flops::snapshot();
    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t0 = Instant::now();
        state = step(state)?;
        times.push(t0.elapsed().as_secs_f64());
    }
    Ok((count, times, state))
}

fn truncated_svd(ac2: &TensorMap, dim: f64) -> symtensor::Result<(TensorMap, TensorMap, TensorMap, SpectrumReport)> {
    ac2.svd(&[0, 1], &[2, 3], TruncationScheme::MaxTotalDim(dim))
}

pub fn run(cfg: &BenchConfig) -> Result<BenchResult, BenchError> {
    let ops = Operands::from_config(cfg)?;
    let was_parallel = parallel_enabled();
    set_parallel(cfg.parallel);
    let out = run_inner(cfg, &ops);
    set_parallel(was_parallel);
    out
}

fn run_inner(cfg: &BenchConfig, ops: &Operands) -> Result<BenchResult, BenchError> {
    let s = cfg.seed;
    let mut truncation_error = None;
    let mut checks = None;
    let (count, times, checksum) = match cfg.workload {
        Workload::SingleSite => {
            let (fl, o, fr) = (ops.left_env(s + 1)?, ops.mpo(s + 2)?, ops.right_env(s + 3)?);
            let (count, times, a) = measure(cfg.repetitions, ops.mps(s)?, |a| apply_single(&fl, &o, &fr, &a).map(normalized).map_err(wrong))?;
            (count, times, a.norm())
        }
        Workload::TwoSite => {
            let (fl, o, fr) = (ops.left_env(s + 1)?, ops.mpo(s + 2)?, ops.right_env(s + 3)?);
            let ac2 = two_site_block(&ops.mps(s)?, &ops.mps(s + 4)?).map_err(wrong)?;
            let dim = ops.v.dim();
            // one repetition: apply the two-site Hamiltonian, then split the
            // result back into single-site shape with a truncated SVD
            let step = |x: TensorMap| -> Result<TensorMap, BenchError> {
                let y = normalized(apply_two(&fl, &o, &fr, &x).map_err(wrong)?);
                truncated_svd(&y, dim).map_err(wrong)?;
                Ok(y)
            };
            let (count, times, last) = measure(cfg.repetitions, ac2, step)?;
            let (u, sv, vh, report) = truncated_svd(&last, dim).map_err(wrong)?;
            let err = last.sub(&u.compose(&sv).and_then(|x| x.compose(&vh)).map_err(wrong)?).map_err(wrong)?.norm();
            if err > report.truncation_error + 1e-10 * (1.0 + last.norm()) {
                return Err(BenchError::Correctness(format!(
                    "SVD reconstruction error {err:e} exceeds reported truncation error {:e}",
                    report.truncation_error
                )));
            }
            truncation_error = Some(report.truncation_error);
            (count, times, sv.norm())
        }
        Workload::SvdOnly => {
            let ac2 = ops.random(&[&ops.v, &ops.p], &[&ops.v, &ops.p.dual()], s)?;
            let dim = ops.v.dim();
            let (count, times, _) = measure(cfg.repetitions, (), |_| truncated_svd(&ac2, dim).map(|_| ()).map_err(wrong))?;
            let (_, sv, _, report) = truncated_svd(&ac2, dim).map_err(wrong)?;
            truncation_error = Some(report.truncation_error);
            (count, times, sv.norm())
        }
        Workload::Consistency => {
            let t0 = Instant::now();
            let lines: Vec<CheckLine> = run_consistency(&ops.kind, cfg.max_label, s).map_err(wrong)?;
            let times = vec![t0.elapsed().as_secs_f64()];
            checks = Some(lines.iter().map(|l| serde_json::to_value(l).expect("check line serializes")).collect());
            (FlopCount::default(), times, 0.0)
        }
    };
    Ok(BenchResult {
        config: cfg.clone(),
        workload: cfg.workload,
        median_s: median(&times),
        times_s: times,
        flops_block: count.block as u64,
        flops_dense: count.dense as u64,
        dim_total: ops.v.dim(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        parallel: cfg.parallel,
        checksum,
        truncation_error,
        checks,
    })
}
