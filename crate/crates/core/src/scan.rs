//! Data-parallel scans over index ranges, with a sequential fallback.
//!
//! The verifiers and acceptance sweeps are embarrassingly parallel: every
//! case is independent and the per-case results merge by an associative,
//! commutative fold. With the `parallel` feature (on by default) the scan
//! runs on rayon; without it, or when `ScanMode::Sequential` is requested,
//! it runs as a plain loop. Output is identical either way — merged results
//! carry case indices so callers can sort before reporting.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How to execute a box scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// Use rayon when the `parallel` feature is enabled, else sequential.
    #[default]
    Auto,
    Sequential,
    /// Force the rayon path; falls back to sequential without the feature.
    Parallel,
}

impl ScanMode {
    fn parallel(self) -> bool {
        match self {
            ScanMode::Sequential => false,
            ScanMode::Parallel | ScanMode::Auto => cfg!(feature = "parallel"),
        }
    }
}

/// Map every index in `0..len` and fold the results with `merge`.
///
/// `merge` must be associative and commutative with `identity` as its unit;
/// the parallel path reduces in an unspecified order.
pub fn map_reduce<T, F, M, I>(len: usize, mode: ScanMode, map: F, identity: I, merge: M) -> T
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
    I: Fn() -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.parallel() {
        return (0..len)
            .into_par_iter()
            .map(&map)
            .reduce(&identity, &merge);
    }
    let _ = mode;
    (0..len).map(map).fold(identity(), merge)
}
