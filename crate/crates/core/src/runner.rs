//! Execution strategy for independent Monte Carlo trials.

use alloc::vec::Vec;

/// Maps a trial function over `0..trials` and returns the results in trial
/// order. Implementations may run trials concurrently; since every trial
/// derives its own random stream, the output must not depend on scheduling.
pub trait TrialRunner: Sync {
    fn map<T, F>(&self, trials: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send;
}

/// Runs trials one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl TrialRunner for Sequential {
    fn map<T, F>(&self, trials: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        (0..trials).map(f).collect()
    }
}
