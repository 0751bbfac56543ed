//! Equiprobability distance.
//!
//! A partition is equiprobable when every one of its blocks occurs exactly
//! once, so its plug-in entropy is `log2(block_total)`. The equiprobability
//! distance `n_aep` is the smallest block length from which every length up
//! to the ceiling is equiprobable at every shift.
//!
//! A duplicate block of length `n` is a substring of length `n` occurring
//! twice, so no length above the longest repeated substring can fail. The
//! search therefore starts just above that bound and walks down until the
//! first failing length.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::Sample;
use crate::error::{Error, Result};
use crate::hashing::BlockIndex;
use crate::suffix::longest_repeat;

pub const DEFAULT_AEP_CEILING: usize = 500;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquiprobResult {
    /// `None` when the ceiling itself is not equiprobable.
    pub n_aep: Option<usize>,
    /// Largest block length examined: the requested ceiling, capped at half
    /// the text length (longer blocks cannot appear twice in a partition).
    pub n_max_checked: usize,
    pub longest_repeat: usize,
    pub word_distance: Option<WordDistance>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordDistance {
    pub d_aep: f64,
    pub log2_typical: f64,
    pub typical_decimal: String,
}

fn check_params(sample: &Sample, n: usize, shift: usize) -> Result<()> {
    if n == 0 || shift >= n {
        return Err(Error::InvalidBlock { n, shift });
    }
    if sample.len().saturating_sub(shift) / n == 0 {
        return Err(Error::EmptyPartition {
            n,
            shift,
            len: sample.len(),
        });
    }
    Ok(())
}

pub fn is_equiprobable(sample: &Sample, n: usize, shift: usize) -> Result<bool> {
    check_params(sample, n, shift)?;
    Ok(!BlockIndex::new(&sample.chars).has_duplicate(n, shift))
}

pub fn longest_repeated_block_bound(sample: &Sample) -> usize {
    longest_repeat(&sample.chars)
}

fn length_is_equiprobable(index: &BlockIndex<'_>, n: usize) -> bool {
    !(0..n)
        .into_par_iter()
        .any(|shift| index.has_duplicate(n, shift))
}

pub fn find_n_aep(sample: &Sample, n_max: usize) -> Result<EquiprobResult> {
    if n_max == 0 {
        return Err(Error::Config(
            "equiprobability ceiling must be at least 1".into(),
        ));
    }
    let ceiling = n_max.min(sample.len() / 2).max(1);
    let bound = longest_repeated_block_bound(sample);
    let index = BlockIndex::new(&sample.chars);
    let start = ceiling.min(bound + 1);

    let first_failure = (1..=start)
        .rev()
        .find(|&n| !length_is_equiprobable(&index, n));
    let n_aep = match first_failure {
        Some(n) if n == ceiling => None,
        Some(n) => Some(n + 1),
        None => Some(1),
    };
    Ok(EquiprobResult {
        n_aep,
        n_max_checked: ceiling,
        longest_repeat: bound,
        word_distance: None,
    })
}

/// Renders `10^log10_value` as `m.mmE+xx`.
pub fn scientific_from_log10(log10_value: f64) -> String {
    let mut exponent = log10_value.floor();
    let mut mantissa = (10f64.powf(log10_value - exponent) * 100.0).round() / 100.0;
    if mantissa >= 10.0 {
        mantissa /= 10.0;
        exponent += 1.0;
    }
    let sign = if exponent < 0.0 { '-' } else { '+' };
    format!("{mantissa:.2}E{sign}{:02}", exponent.abs() as i64)
}

pub fn word_distance(n_aep: Option<usize>, alpha: f64, h_l: f64) -> Result<WordDistance> {
    let n_aep = n_aep.ok_or(Error::AbsentEquiprobability)?;
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let log2_typical = n_aep as f64 * h_l;
    Ok(WordDistance {
        d_aep: n_aep as f64 / (alpha + 1.0),
        log2_typical,
        typical_decimal: scientific_from_log10(log2_typical * std::f64::consts::LOG10_2),
    })
}

impl EquiprobResult {
    /// Fills in the word distance when `n_aep` is present.
    pub fn with_word_distance(mut self, alpha: f64, h_l: f64) -> Result<Self> {
        self.word_distance = match self.n_aep {
            Some(_) => Some(word_distance(self.n_aep, alpha, h_l)?),
            None => None,
        };
        Ok(self)
    }
}
