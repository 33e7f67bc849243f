//! Progress checkpoints on standard error for long counting loops.
//!
//! Silent unless switched on with [`set_enabled`].

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

static ENABLED: AtomicBool = AtomicBool::new(false);

/// Iterations between checkpoints.
pub const CHECKPOINT_EVERY: u64 = 1 << 20;

pub fn set_enabled(on: bool) {
    ENABLED.store(on, Ordering::Relaxed);
}

pub fn enabled() -> bool {
    ENABLED.load(Ordering::Relaxed)
}

/// A shared outer-loop counter. Safe to tick from worker threads.
pub struct Progress {
    label: String,
    total: Option<u64>,
    done: AtomicU64,
    start: Instant,
}

impl Progress {
    pub fn new(label: &str, total: Option<u64>) -> Self {
        Progress {
            label: label.to_string(),
            total,
            done: AtomicU64::new(0),
            start: Instant::now(),
        }
    }

    /// Records `k` finished iterations, printing whenever a multiple of
    /// [`CHECKPOINT_EVERY`] is crossed.
    pub fn tick(&self, k: u64) {
        let before = self.done.fetch_add(k, Ordering::Relaxed);
        let after = before + k;
        if enabled() && before / CHECKPOINT_EVERY != after / CHECKPOINT_EVERY {
            self.report(after);
        }
    }

    fn report(&self, done: u64) {
        let secs = self.start.elapsed().as_secs_f64();
        match self.total {
            Some(t) if t > 0 => eprintln!(
                "[{}] {done}/{t} ({:.1}%) after {secs:.1}s",
                self.label,
                100.0 * done as f64 / t as f64
            ),
            _ => eprintln!("[{}] {done} after {secs:.1}s", self.label),
        }
    }

    pub fn note(&self, msg: &str) {
        if enabled() {
            eprintln!(
                "[{}] {msg} after {:.1}s",
                self.label,
                self.start.elapsed().as_secs_f64()
            );
        }
    }
}
