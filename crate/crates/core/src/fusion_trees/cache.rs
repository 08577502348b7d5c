//! Process-wide memoization of composite tree transformations.
//!
//! Entries are keyed by operation, sector kind, input trees and integer
//! parameters. The cache is unbounded; [`clear_cache`] empties it and
//! [`set_cache_enabled`] bypasses it (results are identical either way).

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, LazyLock, RwLock};

use super::{FusionTree, PairCoefficientMap};
use crate::error::Result;
use crate::zoo::SectorKind;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Op {
    Repartition,
    Transpose,
    Braid,
    PlanarTrace,
    Trace,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Key {
    pub op: Op,
    pub kind: SectorKind,
    pub s: FusionTree,
    pub f: FusionTree,
    pub params: Vec<usize>,
}

static ENABLED: AtomicBool = AtomicBool::new(true);
static CACHE: LazyLock<RwLock<HashMap<Key, Arc<PairCoefficientMap>>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

pub fn set_cache_enabled(on: bool) {
    ENABLED.store(on, Ordering::SeqCst);
}

pub fn cache_enabled() -> bool {
    ENABLED.load(Ordering::SeqCst)
}

pub fn clear_cache() {
    CACHE.write().unwrap().clear();
}

pub fn cache_len() -> usize {
    CACHE.read().unwrap().len()
}

pub(crate) fn memoize(key: Key, compute: impl FnOnce() -> Result<PairCoefficientMap>) -> Result<Arc<PairCoefficientMap>> {
    if !cache_enabled() {
        return compute().map(Arc::new);
    }
    if let Some(v) = CACHE.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(compute()?);
    CACHE.write().unwrap().entry(key).or_insert_with(|| v.clone());
    Ok(v)
}
