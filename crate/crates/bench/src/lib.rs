//! DMRG-style benchmark kernels and correctness suites on top of `symtensor`.

pub mod consistency;
pub mod fixtures;
pub mod oracle;
pub mod workloads;

pub use consistency::{run_consistency, sector_suite, CheckLine};
pub use fixtures::{heisenberg, heisenberg_fixture, hubbard, Fixture, ModelSpaces};
pub use workloads::{run, BenchConfig, BenchError, BenchResult, Workload};
