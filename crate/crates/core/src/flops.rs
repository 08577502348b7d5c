//! Per-thread FLOP accounting for matrix products and decompositions.
//!
//! A complex multiply-add is counted as 8 real operations, so an m×k by k×n
//! product costs `8 m k n`; a thin SVD of an m×n matrix is charged as the
//! product `8 m n min(m, n)`. "Block" counts what the block-sparse code
//! actually multiplies; "dense" counts what the same contraction would cost
//! on unstructured arrays of the full space dimensions.

use std::cell::Cell;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FlopCount {
    pub block: u128,
    pub dense: u128,
}

thread_local! {
    static LEDGER: Cell<FlopCount> = const { Cell::new(FlopCount { block: 0, dense: 0 }) };
}

pub fn reset() {
    LEDGER.with(|l| l.set(FlopCount::default()));
}

pub fn snapshot() -> FlopCount {
    LEDGER.with(|l| l.get())
}

pub fn gemm_cost(m: usize, k: usize, n: usize) -> u128 {
    8 * m as u128 * k as u128 * n as u128
}

pub fn svd_cost(m: usize, n: usize) -> u128 {
    gemm_cost(m, n, m.min(n))
}

pub(crate) fn record(block: u128, dense: u128) {
    LEDGER.with(|l| {
        let mut c = l.get();
        c.block += block;
        c.dense += dense;
        l.set(c);
    });
}
