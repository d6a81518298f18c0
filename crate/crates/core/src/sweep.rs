//! Partitioned sweeps over index ranges.
//!
//! A sweep splits `0..len` into contiguous ranges, processes each range
//! independently and returns the partial results in range order. Callers merge
//! the partials with order-insensitive operations (bitwise or, sums, minima),
//! so the outcome is the same for every thread count.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::galois::DEFAULT_SWEEP_BOUND;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    /// Largest domain an exhaustive check will visit.
    pub max_order: u64,
    /// Worker threads; 1 runs inline on the calling thread.
    pub threads: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_order: DEFAULT_SWEEP_BOUND,
            threads: 1,
        }
    }
}

/// Splits `0..len` into at most `parts` contiguous, nearly equal ranges.
pub fn partition(len: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts.max(1) as u64).min(len.max(1));
    let base = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = 0;
    for i in 0..parts {
        let size = base + u64::from(i < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}

impl SweepConfig {
    pub fn sequential() -> Self {
        Self::default()
    }

    pub fn with_threads(threads: usize) -> Self {
        SweepConfig {
            threads: threads.max(1),
            ..Self::default()
        }
    }

    pub fn with_max_order(mut self, max_order: u64) -> Self {
        self.max_order = max_order;
        self
    }

    /// Threads actually used: always 1 without the `parallel` feature.
    pub fn effective_threads(&self) -> usize {
        if cfg!(feature = "parallel") {
            self.threads.max(1)
        } else {
            1
        }
    }

    pub fn check_order(&self, order: u64) -> Result<()> {
        if order > self.max_order {
            Err(Error::TooLarge {
                order,
                bound: self.max_order,
            })
        } else {
            Ok(())
        }
    }

    /// Applies `f` to each partition of `0..len`, results in partition order.
    pub fn map_ranges<T, F>(&self, len: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<u64>) -> T + Sync + Send,
    {
        let ranges = partition(len, self.effective_threads());
        self.map_vec(ranges, f)
    }

    /// Applies `f` to every index in `0..count`, results in index order.
    pub fn map_indices<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.map_vec((0..count).collect(), f)
    }

    #[cfg(feature = "parallel")]
    fn map_vec<I, T, F>(&self, items: Vec<I>, f: F) -> Vec<T>
    where
        I: Send,
        T: Send,
        F: Fn(I) -> T + Sync + Send,
    {
        use rayon::prelude::*;
        let threads = self.effective_threads();
        if threads <= 1 || items.len() <= 1 {
            return items.into_iter().map(f).collect();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| items.into_par_iter().map(&f).collect()),
            // no pool available: the sequential path gives the same answer
            Err(_) => items.into_iter().map(f).collect(),
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn map_vec<I, T, F>(&self, items: Vec<I>, f: F) -> Vec<T>
    where
        I: Send,
        T: Send,
        F: Fn(I) -> T + Sync + Send,
    {
        items.into_iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_cover_exactly() {
        for len in [0u64, 1, 7, 100, 1 << 12] {
            for parts in [1usize, 2, 3, 8, 200] {
                let ranges = partition(len, parts);
                let mut next = 0;
                for r in &ranges {
                    assert_eq!(r.start, next);
                    next = r.end;
                }
                assert_eq!(next, len);
                let sizes: Vec<u64> = ranges.iter().map(|r| r.end - r.start).collect();
                let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
                assert!(hi - lo <= 1);
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let sum = |cfg: SweepConfig| -> u64 {
            cfg.map_ranges(10_000, |r| r.map(|i| i * i % 97).sum::<u64>())
                .into_iter()
                .sum()
        };
        let serial = sum(SweepConfig::sequential());
        for t in [2, 3, 8] {
            assert_eq!(sum(SweepConfig::with_threads(t)), serial);
        }
        let items = SweepConfig::with_threads(4).map_indices(50, |i| i * 3);
        assert_eq!(items, (0..50).map(|i| i * 3).collect::<Vec<_>>());
    }

    #[test]
    fn bound_is_enforced() {
        let cfg = SweepConfig::default().with_max_order(1 << 10);
        assert!(cfg.check_order(1 << 10).is_ok());
        assert!(matches!(cfg.check_order(1 << 11), Err(Error::TooLarge { .. })));
    }
}
