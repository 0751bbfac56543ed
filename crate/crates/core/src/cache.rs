//! On-disk cache of per-shift block entropies.
//!
//! One JSON file per sample holds the per-shift entropy lists for block
//! lengths `1..=k`, tagged with the SHA-256 of the normalized text. An entry
//! is only used when its format version, sample id and digest all match and
//! its contents are structurally sound; anything else is recomputed and
//! overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::blocks::{block_entropies, BlockEntropy, BlockEntropyProfile};
use crate::corpus::{file_stem, Sample};
use crate::error::{Error, Result};
use crate::hashing::BlockIndex;
use crate::timing::TimingRecord;

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    sample_id: String,
    digest: String,
    levels: Vec<BlockEntropy>,
    timings: Vec<TimingRecord>,
}

#[derive(Debug, Clone)]
pub struct BlockCache {
    dir: PathBuf,
}

/// How many block lengths came from the cache and how many were computed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CacheOutcome {
    pub reused: usize,
    pub computed: usize,
}

impl CacheFile {
    /// Longest valid prefix of levels.
    fn usable_levels(&self) -> usize {
        self.levels
            .iter()
            .zip(&self.timings)
            .enumerate()
            .take_while(|(i, (level, timing))| {
                let n = i + 1;
                level.n == n
                    && timing.n == n
                    && level.shifts.len() == n
                    && level.shifts.iter().all(|h| h.is_finite() && *h >= 0.0)
                    && level.mean == level.shifts.iter().sum::<f64>() / n as f64
            })
            .count()
    }
}

impl BlockCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<BlockCache> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(BlockCache { dir })
    }

    pub fn path_for(&self, sample_id: &str) -> PathBuf {
        self.dir
            .join(format!("{}.blocks.json", file_stem(sample_id)))
    }

    /// Cached levels `1..=k` for this sample, or an empty list on any
    /// mismatch or corruption.
    pub fn load(&self, sample_id: &str, digest: &str) -> Vec<(BlockEntropy, TimingRecord)> {
        let Ok(raw) = fs::read(self.path_for(sample_id)) else {
            return Vec::new();
        };
        let Ok(file) = serde_json::from_slice::<CacheFile>(&raw) else {
            return Vec::new();
        };
        if file.format_version != CACHE_FORMAT_VERSION
            || file.sample_id != sample_id
            || file.digest != digest
        {
            return Vec::new();
        }
        let k = file.usable_levels();
        file.levels.into_iter().zip(file.timings).take(k).collect()
    }

    pub fn store(
        &self,
        sample_id: &str,
        digest: &str,
        entries: &[(BlockEntropy, TimingRecord)],
    ) -> Result<()> {
        let file = CacheFile {
            format_version: CACHE_FORMAT_VERSION,
            sample_id: sample_id.to_string(),
            digest: digest.to_string(),
            levels: entries.iter().map(|e| e.0.clone()).collect(),
            timings: entries.iter().map(|e| e.1).collect(),
        };
        let path = self.path_for(sample_id);
        let tmp = path.with_extension("json.tmp");
        let body = serde_json::to_vec(&file)?;
        fs::write(&tmp, body).map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| Error::io(&path, e))?;
        Ok(())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

/// Block entropy profile up to `n_max`, reusing and extending the cache when
/// one is given.
pub fn cached_profile(
    cache: Option<&BlockCache>,
    sample: &Sample,
    n_max: usize,
) -> Result<(BlockEntropyProfile, CacheOutcome)> {
    if n_max == 0 {
        return Err(Error::Config("n_max must be at least 1".into()));
    }
    let digest = cache.map(|_| sample.digest());
    let mut entries = match (cache, &digest) {
        (Some(c), Some(d)) => c.load(&sample.id, d),
        _ => Vec::new(),
    };
    let reused = entries.len().min(n_max);
    let mut computed = 0;
    if entries.len() < n_max {
        let index = BlockIndex::new(&sample.chars);
        let missing: Vec<usize> = (entries.len() + 1..=n_max).collect();
        computed = missing.len();
        entries.extend(block_entropies(&index, &missing)?);
        if let (Some(c), Some(d)) = (cache, &digest) {
            c.store(&sample.id, d, &entries)?;
        }
    }
    entries.truncate(n_max);
    let (levels, timings) = entries.into_iter().unzip();
    Ok((
        BlockEntropyProfile {
            n_max,
            levels,
            timings,
        },
        CacheOutcome { reused, computed },
    ))
}
