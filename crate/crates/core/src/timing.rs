use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Time spent on all shift entropies of one block length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimingRecord {
    pub n: usize,
    /// Sum of per-task wall-clock durations.
    pub wall_seconds: f64,
    /// Sum of per-task thread CPU time.
    pub cpu_seconds: f64,
}

/// CPU time consumed by the calling thread.
#[cfg(unix)]
pub fn thread_cpu_time() -> Duration {
    let mut ts = libc::timespec {
        tv_sec: 0,
        tv_nsec: 0,
    };
    // SAFETY: `ts` is a valid, writable timespec.
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_THREAD_CPUTIME_ID, &mut ts) };
    if rc != 0 {
        return Duration::ZERO;
    }
    Duration::new(ts.tv_sec as u64, ts.tv_nsec as u32)
}

#[cfg(not(unix))]
pub fn thread_cpu_time() -> Duration {
    Duration::ZERO
}

/// Runs `f`, returning its value with (wall, cpu) durations.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, Duration, Duration) {
    let cpu0 = thread_cpu_time();
    let wall0 = Instant::now();
    let out = f();
    let wall = wall0.elapsed();
    let cpu = thread_cpu_time().saturating_sub(cpu0);
    (out, wall, cpu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn busy_loop_consumes_cpu() {
        let (sum, wall, cpu) =
            measure(|| (0..2_000_000u64).fold(0u64, |a, b| a.wrapping_add(b * b)));
        assert!(sum > 0);
        assert!(wall > Duration::ZERO);
        if cfg!(unix) {
            assert!(cpu > Duration::ZERO);
        }
    }
}
