//! A Bernoulli table shared between worker threads.

use std::sync::Mutex;

use derivimage_core::bernoulli::BernoulliCache;

/// Extends under a lock and hands out owned copies.
///
/// Entries are fixed by their index, so a snapshot taken by one worker agrees
/// with every later snapshot on the common prefix.
#[derive(Debug, Default)]
pub struct SharedBernoulliCache {
    inner: Mutex<BernoulliCache>,
}

impl SharedBernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// A copy holding at least `B_0..=B_n` and `D_0..=D_d`.
    pub fn snapshot(&self, n: usize, d: usize) -> BernoulliCache {
        let mut cache = self.inner.lock().unwrap_or_else(|e| e.into_inner());
        cache.numbers(n);
        cache.d_poly(d);
        cache.clone()
    }

    pub fn with<T>(&self, f: impl FnOnce(&mut BernoulliCache) -> T) -> T {
        let mut cache = self.inner.lock().unwrap_or_else(|e| e.into_inner());
        f(&mut cache)
    }
}
