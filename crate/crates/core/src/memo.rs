use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

/// Ground sets up to this size get a dense table indexed by bit mask.
const DENSE_LIMIT: usize = 20;
const EMPTY: u64 = u64::MAX;

/// A memo table from subsets (as bit masks) to `u64` values.
///
/// Concurrent writers may race on the same key; every writer stores the same
/// value because the cached functions are pure.
pub(crate) enum Memo {
    Dense(Vec<AtomicU64>),
    Sparse(RwLock<HashMap<u32, u64>>),
}

impl Memo {
    pub(crate) fn new(n: usize) -> Self {
        if n <= DENSE_LIMIT {
            Memo::Dense((0..1usize << n).map(|_| AtomicU64::new(EMPTY)).collect())
        } else {
            Memo::Sparse(RwLock::new(HashMap::new()))
        }
    }

    pub(crate) fn get_or_insert_with(&self, key: u32, f: impl FnOnce() -> u64) -> u64 {
        match self {
            Memo::Dense(table) => {
                let slot = &table[key as usize];
                let v = slot.load(Ordering::Relaxed);
                if v != EMPTY {
                    return v;
                }
                let v = f();
                slot.store(v, Ordering::Relaxed);
                v
            }
            Memo::Sparse(map) => {
                if let Some(&v) = map.read().expect("memo lock").get(&key) {
                    return v;
                }
                let v = f();
                map.write().expect("memo lock").insert(key, v);
                v
            }
        }
    }
}

impl std::fmt::Debug for Memo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Memo::Dense(t) => write!(f, "Memo::Dense({} slots)", t.len()),
            Memo::Sparse(_) => write!(f, "Memo::Sparse"),
        }
    }
}
