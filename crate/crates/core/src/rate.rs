//! Conditional entropies, zero crossing, entropy rate and redundancy.
//!
//! `F_N = H_N - H_{N-1}` is the extra information carried by the N-th
//! character given the previous `N - 1`. The knots `F_1 ..= F_Nmax` are
//! interpolated with local cubics and the first positive-to-negative
//! crossing `N_Z` is located with Brent's method. The entropy rate is then
//! `H(N_Z) / N_Z`, where `H` is the block entropy interpolated the same way.

use serde::{Deserialize, Serialize};

use crate::blocks::BlockEntropyProfile;
use crate::corpus::SampleStats;
use crate::error::{Error, Result};
use crate::interp::{brent_root, PiecewiseCubic};

pub const DEFAULT_CONDITIONAL_MAX: usize = 30;

const ROOT_X_TOL: f64 = 1e-9;
const ROOT_F_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalProfile {
    /// `log2` of the alphabet size.
    pub f0: f64,
    /// `F_1 ..= F_Nmax`; entry `i` holds order `i + 1`.
    pub values: Vec<f64>,
}

impl ConditionalProfile {
    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    pub fn f(&self, order: usize) -> Option<f64> {
        match order {
            0 => Some(self.f0),
            n => self.values.get(n - 1).copied(),
        }
    }

    pub fn interpolant(&self) -> Result<PiecewiseCubic> {
        PiecewiseCubic::from_unit_knots(1, &self.values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub n_z: f64,
    pub h_nz: f64,
    pub h_l: f64,
    pub redundancy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusAggregate {
    pub sample_count: usize,
    pub total_chars: usize,
    pub weighted_h_l: f64,
    pub weighted_alphabet_size: f64,
    pub weighted_alpha: f64,
    pub corpus_redundancy: f64,
}

pub fn conditional_profile(
    profile: &BlockEntropyProfile,
    alphabet_size: usize,
) -> Result<ConditionalProfile> {
    if profile.levels.len() < 2 {
        return Err(Error::ProfileTooShort {
            need: 2,
            have: profile.levels.len(),
        });
    }
    let h = profile.means();
    let mut values = Vec::with_capacity(h.len());
    values.push(h[0]);
    values.extend(h.windows(2).map(|w| w[1] - w[0]));
    Ok(ConditionalProfile {
        f0: (alphabet_size as f64).log2(),
        values,
    })
}

/// First `k` (1-based order) with `F_k > 0 >= F_{k+1}`.
fn first_crossing(values: &[f64]) -> Option<usize> {
    values
        .windows(2)
        .position(|w| w[0] > 0.0 && w[1] <= 0.0)
        .map(|i| i + 1)
}

pub fn find_root(cond: &ConditionalProfile) -> Result<f64> {
    let no_crossing = Error::NoCrossing {
        n_max: cond.n_max(),
    };
    let k = first_crossing(&cond.values).ok_or(no_crossing)?;
    if cond.values[k] == 0.0 {
        return Ok((k + 1) as f64);
    }
    let curve = cond.interpolant()?;
    brent_root(
        |x| curve.eval(x),
        k as f64,
        (k + 1) as f64,
        ROOT_X_TOL,
        ROOT_F_TOL,
    )
    .ok_or(Error::NoCrossing {
        n_max: cond.n_max(),
    })
}

pub fn rate_estimate(
    profile: &BlockEntropyProfile,
    cond: &ConditionalProfile,
    alphabet_size: usize,
) -> Result<RateEstimate> {
    let n_z = find_root(cond)?;
    let knots = cond.n_max().min(profile.levels.len());
    let h_curve = PiecewiseCubic::from_unit_knots(1, &profile.means()[..knots])?;
    let h_nz = h_curve.eval(n_z);
    let h_l = h_nz / n_z;
    let h_max = (alphabet_size as f64).log2();
    Ok(RateEstimate {
        n_z,
        h_nz,
        h_l,
        redundancy: 1.0 - h_l / h_max,
    })
}

/// Conditional profile over orders `1..=cond_max` and the rate estimate.
pub fn estimate(
    profile: &BlockEntropyProfile,
    alphabet_size: usize,
    cond_max: usize,
) -> Result<(ConditionalProfile, RateEstimate)> {
    if profile.n_max < cond_max {
        return Err(Error::ProfileTooShort {
            need: cond_max,
            have: profile.n_max,
        });
    }
    let cond = conditional_profile(&profile.truncated(cond_max), alphabet_size)?;
    let rate = rate_estimate(profile, &cond, alphabet_size)?;
    Ok((cond, rate))
}

/// Character-count weighted corpus averages.
pub fn aggregate(samples: &[(SampleStats, RateEstimate)]) -> Result<CorpusAggregate> {
    if samples.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let total_chars: usize = samples.iter().map(|(s, _)| s.char_count).sum();
    let weight = |s: &SampleStats| s.char_count as f64 / total_chars as f64;
    let weighted = |value: &dyn Fn(&SampleStats, &RateEstimate) -> f64| -> f64 {
        samples.iter().map(|(s, r)| weight(s) * value(s, r)).sum()
    };
    let weighted_h_l = weighted(&|_, r| r.h_l);
    let weighted_alphabet_size = weighted(&|s, _| s.alphabet_size as f64);
    let weighted_alpha = weighted(&|s, _| s.alpha);
    Ok(CorpusAggregate {
        sample_count: samples.len(),
        total_chars,
        weighted_h_l,
        weighted_alphabet_size,
        weighted_alpha,
        corpus_redundancy: 1.0 - weighted_h_l / weighted_alphabet_size.log2(),
    })
}
