//! Counting configuration shared by the pipeline and the CLI.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Knobs for point counting, interpolation, sampling and persistence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingConfig {
    /// Ascending primes used for counting; extended on demand when a stratum
    /// needs more interpolation points than the list provides.
    pub primes: Vec<u64>,
    /// Extra primes used to validate each interpolated class.
    pub holdout_count: usize,
    /// Maximum number of assignments enumerated per (stratum, prime).
    pub budget: u64,
    /// Worker threads; 0 means the library default.
    pub workers: usize,
    /// Presentation flag: report interpolated results as classes rather than
    /// as counting polynomials.
    pub assume_polynomial: bool,
    pub cache_path: Option<PathBuf>,
    /// Seed for point sampling in the verification oracle.
    pub seed: u64,
}

impl Default for CountingConfig {
    fn default() -> Self {
        CountingConfig {
            primes: first_primes(16),
            holdout_count: 2,
            budget: 200_000_000,
            workers: 0,
            assume_polynomial: false,
            cache_path: None,
            seed: 0,
        }
    }
}

impl CountingConfig {
    /// The first `k` counting primes, extending past the configured list when
    /// necessary.
    pub fn primes_for(&self, k: usize) -> Vec<u64> {
        let mut primes = self.primes.clone();
        extend_primes(&mut primes, k);
        primes.truncate(k);
        primes
    }

    /// Hash of the fields that determine computed values (the prime schedule
    /// and the holdout policy). Cache entries written under a different
    /// fingerprint are ignored, never silently reused.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(b"v2;primes=");
        for p in &self.primes {
            hasher.update(p.to_le_bytes());
        }
        hasher.update(b";holdout=");
        hasher.update((self.holdout_count as u64).to_le_bytes());
        let digest = hasher.finalize();
        digest[..8].iter().map(|b| format!("{:02x}", b)).collect()
    }
}

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Extends an ascending prime list to at least `k` entries.
pub fn extend_primes(primes: &mut Vec<u64>, k: usize) {
    let mut candidate = primes.last().copied().unwrap_or(1) + 1;
    while primes.len() < k {
        if is_prime(candidate) {
            primes.push(candidate);
        }
        candidate += 1;
    }
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(k);
    extend_primes(&mut primes, k);
    primes
}

/// Runs `f` on a dedicated thread pool when a worker count is requested.
pub fn run_with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    if workers == 0 {
        f()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool")
            .install(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_generation() {
        assert_eq!(first_primes(8), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        let cfg = CountingConfig::default();
        let p = cfg.primes_for(20);
        assert_eq!(p.len(), 20);
        assert_eq!(p[19], 71);
    }

    #[test]
    fn fingerprint_tracks_result_fields_only() {
        let a = CountingConfig::default();
        let mut b = a.clone();
        b.workers = 7;
        b.assume_polynomial = true;
        b.budget = 10;
        b.seed = 99;
        assert_eq!(a.fingerprint(), b.fingerprint());
        let mut c = a.clone();
        c.holdout_count = 3;
        assert_ne!(a.fingerprint(), c.fingerprint());
    }
}
