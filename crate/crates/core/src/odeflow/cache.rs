use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::linalg::CMat;

/// Content address of a table of flow values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub tau: Vec<usize>,
    pub kappa_bits: u64,
    pub grid: String,
}

impl CacheKey {
    pub fn new(tau: &[usize], kappa: f64, grid: impl Into<String>) -> Self {
        CacheKey { tau: tau.to_vec(), kappa_bits: kappa.to_bits(), grid: grid.into() }
    }
}

/// Memo of matrix tables, safe for concurrent insert-or-read.
#[derive(Default)]
pub struct FlowCache {
    tables: RwLock<HashMap<CacheKey, Arc<Vec<CMat>>>>,
}

impl FlowCache {
    pub fn get(&self, key: &CacheKey) -> Option<Arc<Vec<CMat>>> {
        self.tables.read().expect("cache lock").get(key).cloned()
    }

    /// Returns the cached table, computing and inserting it when absent.
    pub fn get_or_try_insert<E>(
        &self,
        key: CacheKey,
        build: impl FnOnce() -> Result<Vec<CMat>, E>,
    ) -> Result<Arc<Vec<CMat>>, E> {
        if let Some(t) = self.get(&key) {
            return Ok(t);
        }
        let table = Arc::new(build()?);
        let mut w = self.tables.write().expect("cache lock");
        Ok(w.entry(key).or_insert(table).clone())
    }

    pub fn clear(&self) {
        self.tables.write().expect("cache lock").clear();
    }

    pub fn len(&self) -> usize {
        self.tables.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn global_cache() -> &'static FlowCache {
    static CACHE: OnceLock<FlowCache> = OnceLock::new();
    CACHE.get_or_init(FlowCache::default)
}
