use cutset_core::runner::TrialRunner;
use rayon::prelude::*;

/// Runs trials on the rayon pool; results come back in trial order.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rayon;

impl TrialRunner for Rayon {
    fn map<T, F>(&self, trials: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        (0..trials).into_par_iter().map(f).collect()
    }
}
