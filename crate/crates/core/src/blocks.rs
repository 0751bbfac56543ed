//! Non-overlapping block counting and shift-averaged block entropy.
//!
//! For block length `n` the text is cut into consecutive disjoint n-blocks
//! starting at each offset `shift` in `0..n`; the trailing remainder shorter
//! than `n` is dropped. Each partition yields a plug-in entropy in bits per
//! block, and `H_n` is the mean over the `n` shifts.
//!
//! Every `(n, shift)` task is independent. Tasks run on the current rayon
//! pool and results are reassembled in `(n, shift)` order, so the output does
//! not depend on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::Sample;
use crate::error::{Error, Result};
use crate::hashing::BlockIndex;
use crate::timing::{measure, TimingRecord};

/// Exact block frequencies of one `(n, shift)` partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDistribution {
    pub n: usize,
    pub shift: usize,
    pub block_total: usize,
    pub table: BTreeMap<String, u64>,
}

/// Average and per-shift entropies for one block length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockEntropy {
    pub n: usize,
    pub mean: f64,
    pub shifts: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockEntropyProfile {
    pub n_max: usize,
    /// Entry `i` holds block length `i + 1`.
    pub levels: Vec<BlockEntropy>,
    pub timings: Vec<TimingRecord>,
}

impl BlockEntropyProfile {
    pub fn h(&self, n: usize) -> Option<f64> {
        n.checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .map(|level| level.mean)
    }

    /// `H_1 ..= H_n_max`.
    pub fn means(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.mean).collect()
    }

    /// Truncated copy holding block lengths `1..=n_max`.
    pub fn truncated(&self, n_max: usize) -> BlockEntropyProfile {
        let n_max = n_max.min(self.n_max);
        BlockEntropyProfile {
            n_max,
            levels: self.levels[..n_max].to_vec(),
            timings: self.timings[..n_max.min(self.timings.len())].to_vec(),
        }
    }
}

fn check_partition(len: usize, n: usize, shift: usize) -> Result<()> {
    if n == 0 || shift >= n {
        return Err(Error::InvalidBlock { n, shift });
    }
    if len.saturating_sub(shift) / n == 0 {
        return Err(Error::EmptyPartition { n, shift, len });
    }
    Ok(())
}

/// Plug-in entropy, in bits, of a frequency table with the given total.
///
/// Computed as `log2(B) - (1/B) * sum(c * log2 c)`. Terms are added in
/// ascending count order with Neumaier compensation so the result does not
/// depend on table iteration order.
pub fn entropy_from_counts(counts: &mut [u64], block_total: u64) -> f64 {
    if counts.len() <= 1 {
        return 0.0;
    }
    counts.sort_unstable();
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &c in counts.iter() {
        if c <= 1 {
            continue;
        }
        let term = c as f64 * (c as f64).log2();
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    let b = block_total as f64;
    (b.log2() - (sum + comp) / b).max(0.0)
}

pub fn count_blocks(sample: &Sample, n: usize, shift: usize) -> Result<BlockDistribution> {
    check_partition(sample.len(), n, shift)?;
    let index = BlockIndex::new(&sample.chars);
    let pc = index.partition_counts(n, shift);
    let table = pc
        .first_positions
        .iter()
        .zip(&pc.counts)
        .map(|(&pos, &count)| (sample.chars[pos..pos + n].iter().collect(), count))
        .collect();
    Ok(BlockDistribution {
        n,
        shift,
        block_total: pc.block_total,
        table,
    })
}

pub fn shift_entropy(dist: &BlockDistribution) -> f64 {
    let mut counts: Vec<u64> = dist.table.values().copied().collect();
    entropy_from_counts(&mut counts, dist.block_total as u64)
}

fn partition_entropy(index: &BlockIndex<'_>, n: usize, shift: usize) -> f64 {
    let mut pc = index.partition_counts(n, shift);
    entropy_from_counts(&mut pc.counts, pc.block_total as u64)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub fn block_entropy(sample: &Sample, n: usize) -> Result<BlockEntropy> {
    let index = BlockIndex::new(&sample.chars);
    let mut out = block_entropies(&index, &[n])?;
    Ok(out.remove(0).0)
}

/// Shift-averaged entropies for each requested block length, with timings.
pub fn block_entropies(
    index: &BlockIndex<'_>,
    lengths: &[usize],
) -> Result<Vec<(BlockEntropy, TimingRecord)>> {
    for &n in lengths {
        if n == 0 {
            return Err(Error::InvalidBlock { n, shift: 0 });
        }
        check_partition(index.len(), n, n - 1)?;
    }
    let tasks: Vec<(usize, usize)> = lengths
        .iter()
        .flat_map(|&n| (0..n).map(move |s| (n, s)))
        .collect();
    let results: Vec<(f64, f64, f64)> = tasks
        .par_iter()
        .map(|&(n, s)| {
            let (h, wall, cpu) = measure(|| partition_entropy(index, n, s));
            (h, wall.as_secs_f64(), cpu.as_secs_f64())
        })
        .collect();

    let mut out = Vec::with_capacity(lengths.len());
    let mut cursor = 0;
    for &n in lengths {
        let chunk = &results[cursor..cursor + n];
        cursor += n;
        let shifts: Vec<f64> = chunk.iter().map(|r| r.0).collect();
        let entropy = BlockEntropy {
            n,
            mean: mean(&shifts),
            shifts,
        };
        let timing = TimingRecord {
            n,
            wall_seconds: chunk.iter().map(|r| r.1).sum(),
            cpu_seconds: chunk.iter().map(|r| r.2).sum(),
        };
        out.push((entropy, timing));
    }
    Ok(out)
}

pub fn entropy_profile(sample: &Sample, n_max: usize) -> Result<BlockEntropyProfile> {
    if n_max == 0 {
        return Err(Error::Config("n_max must be at least 1".into()));
    }
    let index = BlockIndex::new(&sample.chars);
    let lengths: Vec<usize> = (1..=n_max).collect();
    let (levels, timings) = block_entropies(&index, &lengths)?.into_iter().unzip();
    Ok(BlockEntropyProfile {
        n_max,
        levels,
        timings,
    })
}
