//! Corpus runs: load a manifest, analyze every sample, write the report.
//!
//! Samples are spread over `parallel_jobs` workers with largest-first bin
//! packing on character count. A failing sample is recorded with its id and
//! left out of the report; the other samples are unaffected.

use std::path::PathBuf;

use rayon::prelude::*;

use crate::cache::{cached_profile, BlockCache};
use crate::corpus::{compute_stats, read_manifest, Sample};
use crate::equiprob::find_n_aep;
use crate::error::{Error, Result};
use crate::rate::{aggregate, estimate};
use crate::report::{emit_plot_series, emit_tables, Format, ReportBundle, SampleReport, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Stats,
    Entropy,
    Rate,
    Aep,
    Report,
    All,
}

impl Stage {
    pub fn tables(self) -> &'static [Table] {
        match self {
            Stage::Stats => &[Table::Stats],
            Stage::Entropy => &[Table::BlockEntropy, Table::Timing],
            Stage::Rate => &[Table::Conditional, Table::Rate, Table::Aggregate],
            Stage::Aep => &[Table::Equiprob],
            Stage::Report => &[],
            Stage::All => &Table::ALL,
        }
    }

    fn plots(self) -> bool {
        matches!(self, Stage::Report | Stage::All)
    }

    fn needs_stats(self) -> bool {
        !matches!(self, Stage::Entropy)
    }

    fn needs_rate(self) -> bool {
        matches!(self, Stage::Rate | Stage::Aep | Stage::Report | Stage::All)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub manifest_path: PathBuf,
    pub n_max_blocks: usize,
    pub n_max_conditional: usize,
    pub n_aep_ceiling: usize,
    pub output_dir: PathBuf,
    pub cache_dir: Option<PathBuf>,
    pub parallel_jobs: usize,
    pub format: Format,
}

impl RunConfig {
    pub fn new(manifest_path: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> RunConfig {
        RunConfig {
            manifest_path: manifest_path.into(),
            n_max_blocks: 500,
            n_max_conditional: crate::rate::DEFAULT_CONDITIONAL_MAX,
            n_aep_ceiling: crate::equiprob::DEFAULT_AEP_CEILING,
            output_dir: output_dir.into(),
            cache_dir: None,
            parallel_jobs: default_jobs(),
            format: Format::Both,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max_conditional < 1 || self.n_max_conditional > self.n_max_blocks {
            return Err(Error::Config(format!(
                "conditional ceiling {} must lie in [1, {}]",
                self.n_max_conditional, self.n_max_blocks
            )));
        }
        if self.n_aep_ceiling < 1 || self.n_aep_ceiling > self.n_max_blocks {
            return Err(Error::Config(format!(
                "equiprobability ceiling {} must lie in [1, {}]",
                self.n_aep_ceiling, self.n_max_blocks
            )));
        }
        if self.parallel_jobs == 0 {
            return Err(Error::Config("at least one job is required".into()));
        }
        Ok(())
    }
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleFailure {
    pub id: String,
    pub message: String,
}

#[derive(Debug)]
pub struct RunOutcome {
    pub bundle: ReportBundle,
    pub failures: Vec<SampleFailure>,
    pub written: Vec<PathBuf>,
    /// Block lengths taken from the cache, summed over samples.
    pub cache_reused: usize,
    /// Block lengths computed, summed over samples.
    pub computed: usize,
}

/// Largest-first assignment of weighted items to `workers` bins. Returns
/// item indices per bin; ties go to the lowest-numbered bin.
pub fn schedule(weights: &[usize], workers: usize) -> Vec<Vec<usize>> {
    let workers = workers.max(1);
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    let mut bins = vec![Vec::new(); workers];
    let mut loads = vec![0usize; workers];
    for i in order {
        let (bin, _) = loads
            .iter()
            .enumerate()
            .min_by_key(|&(k, &load)| (load, k))
            .expect("at least one bin");
        loads[bin] += weights[i];
        bins[bin].push(i);
    }
    bins
}

struct Analyzed {
    report: SampleReport,
    reused: usize,
    computed: usize,
}

fn analyze(
    sample: &Sample,
    stage: Stage,
    config: &RunConfig,
    cache: Option<&BlockCache>,
) -> Result<Analyzed> {
    let mut report = SampleReport {
        id: sample.id.clone(),
        title: sample.title.clone(),
        author: sample.author.clone(),
        ..SampleReport::default()
    };
    if stage.needs_stats() {
        report.stats = Some(compute_stats(sample)?);
    }
    if stage == Stage::Stats {
        return Ok(Analyzed {
            report,
            reused: 0,
            computed: 0,
        });
    }

    let profile_len = match stage {
        Stage::Rate | Stage::Aep => config.n_max_conditional,
        _ => config.n_max_blocks,
    };
    let (profile, outcome) = cached_profile(cache, sample, profile_len)?;

    if stage.needs_rate() {
        let stats = report.stats.expect("stats computed");
        let (cond, rate) = estimate(&profile, stats.alphabet_size, config.n_max_conditional)?;
        report.conditional = Some(cond);
        report.rate = Some(rate);
    }
    if matches!(stage, Stage::Aep | Stage::All) {
        let stats = report.stats.expect("stats computed");
        let h_l = report.rate.expect("rate computed").h_l;
        report.equiprob =
            Some(find_n_aep(sample, config.n_aep_ceiling)?.with_word_distance(stats.alpha, h_l)?);
    }
    report.profile = Some(profile);
    Ok(Analyzed {
        report,
        reused: outcome.reused,
        computed: outcome.computed,
    })
}

/// Runs `stage` over the manifest. Configuration and manifest problems are
/// returned as errors; per-sample problems land in `failures`.
pub fn run(config: &RunConfig, stage: Stage) -> Result<RunOutcome> {
    config.validate()?;
    let entries = read_manifest(&config.manifest_path)?;
    let cache = config.cache_dir.as_ref().map(BlockCache::new).transpose()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallel_jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;

    let (loaded, results) = pool.install(|| {
        let loaded: Vec<Result<Sample>> = entries.par_iter().map(|e| e.load()).collect();
        let weights: Vec<usize> = loaded
            .iter()
            .map(|s| s.as_ref().map_or(0, |s| s.len()))
            .collect();
        let bins = schedule(&weights, config.parallel_jobs);
        let per_bin: Vec<Vec<(usize, Result<Analyzed>)>> = bins
            .par_iter()
            .map(|bin| {
                bin.iter()
                    .filter_map(|&i| {
                        let sample = loaded[i].as_ref().ok()?;
                        Some((i, analyze(sample, stage, config, cache.as_ref())))
                    })
                    .collect()
            })
            .collect();
        (loaded, per_bin)
    });

    let mut slots: Vec<Option<Result<Analyzed>>> = entries.iter().map(|_| None).collect();
    for (i, r) in results.into_iter().flatten() {
        slots[i] = Some(r);
    }

    let mut samples = Vec::new();
    let mut failures = Vec::new();
    let mut cache_reused = 0;
    let mut computed = 0;
    for ((entry, load), slot) in entries.iter().zip(loaded).zip(slots) {
        let result = match load {
            Err(e) => Err(e),
            Ok(_) => slot.expect("every loaded sample is analyzed"),
        };
        match result {
            Ok(a) => {
                cache_reused += a.reused;
                computed += a.computed;
                samples.push(a.report);
            }
            Err(e) => failures.push(SampleFailure {
                id: entry.id.clone(),
                message: e.to_string(),
            }),
        }
    }
    samples.sort_by(|a, b| a.id.cmp(&b.id));
    failures.sort_by(|a, b| a.id.cmp(&b.id));

    let tables = stage.tables();
    let aggregate = if tables.contains(&Table::Aggregate) && !samples.is_empty() {
        let rows: Vec<_> = samples
            .iter()
            .map(|s| (s.stats.expect("stats"), s.rate.expect("rate")))
            .collect();
        Some(aggregate(&rows)?)
    } else {
        None
    };
    let bundle = ReportBundle { samples, aggregate };

    let mut written = emit_tables(&bundle, tables, config.format, &config.output_dir)?;
    if stage.plots() {
        written.extend(emit_plot_series(&bundle, &config.output_dir)?);
    }
    Ok(RunOutcome {
        bundle,
        failures,
        written,
        cache_reused,
        computed,
    })
}
