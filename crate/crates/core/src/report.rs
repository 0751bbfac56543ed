//! Table and plot-series output.
//!
//! Each table is written as `<dest>/<table>.json` (full precision, the
//! authoritative form) and/or `<dest>/<table>.csv` (display rounding). Rows
//! are ordered by sample id, then by block length. Plot series go under
//! `<dest>/plots/<sample_id>/` as two-column `x,y` CSV files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::blocks::BlockEntropyProfile;
use crate::corpus::{file_stem, SampleStats};
use crate::equiprob::EquiprobResult;
use crate::error::{Error, Result};
use crate::rate::{ConditionalProfile, CorpusAggregate, RateEstimate};

/// Everything computed for one sample. Stages that were not run stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub id: String,
    pub title: String,
    pub author: String,
    pub stats: Option<SampleStats>,
    pub profile: Option<BlockEntropyProfile>,
    pub conditional: Option<ConditionalProfile>,
    pub rate: Option<RateEstimate>,
    pub equiprob: Option<EquiprobResult>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub samples: Vec<SampleReport>,
    pub aggregate: Option<CorpusAggregate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Table {
    Stats,
    BlockEntropy,
    Conditional,
    Rate,
    Equiprob,
    Timing,
    Aggregate,
}

impl Table {
    pub const ALL: [Table; 7] = [
        Table::Stats,
        Table::BlockEntropy,
        Table::Conditional,
        Table::Rate,
        Table::Equiprob,
        Table::Timing,
        Table::Aggregate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Table::Stats => "stats",
            Table::BlockEntropy => "block_entropy",
            Table::Conditional => "conditional",
            Table::Rate => "rate",
            Table::Equiprob => "equiprob",
            Table::Timing => "timing",
            Table::Aggregate => "aggregate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }
    fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub id: String,
    pub title: String,
    pub author: String,
    pub char_count: usize,
    pub alphabet_size: usize,
    pub word_count: usize,
    pub distinct_word_count: usize,
    pub wdr: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockEntropyRow {
    pub id: String,
    pub n: usize,
    pub h_n: f64,
    pub shifts: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalRow {
    pub id: String,
    pub order: usize,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub id: String,
    pub n_z: f64,
    pub h_nz: f64,
    pub h_l: f64,
    pub redundancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquiprobRow {
    pub id: String,
    pub n_aep: Option<usize>,
    pub n_max_checked: usize,
    pub longest_repeat: usize,
    pub d_aep: Option<f64>,
    pub log2_typical: Option<f64>,
    pub typical: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub id: String,
    /// `None` on the per-sample total row.
    pub n: Option<usize>,
    pub wall_seconds: f64,
    pub cpu_seconds: f64,
}

/// Fixed-point rendering without a negative zero.
fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn sorted(bundle: &ReportBundle) -> Vec<&SampleReport> {
    let mut samples: Vec<&SampleReport> = bundle.samples.iter().collect();
    samples.sort_by(|a, b| a.id.cmp(&b.id));
    samples
}

fn missing(bundle: &ReportBundle, tables: &[Table]) -> Vec<String> {
    let mut out = Vec::new();
    for s in sorted(bundle) {
        for &t in tables {
            let absent = match t {
                Table::Stats => s.stats.is_none(),
                Table::BlockEntropy | Table::Timing => s.profile.is_none(),
                Table::Conditional => s.conditional.is_none(),
                Table::Rate => s.rate.is_none(),
                Table::Equiprob => s.equiprob.is_none(),
                Table::Aggregate => false,
            };
            if absent {
                out.push(format!("{}: {}", s.id, t.name()));
            }
        }
    }
    if tables.contains(&Table::Aggregate)
        && !bundle.samples.is_empty()
        && bundle.aggregate.is_none()
    {
        out.push("corpus: aggregate".to_string());
    }
    out
}

struct Rendered {
    header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
    json: serde_json::Value,
}

fn render(bundle: &ReportBundle, table: Table) -> Result<Rendered> {
    let samples = sorted(bundle);
    let rendered = match table {
        Table::Stats => {
            let rows: Vec<StatsRow> = samples
                .iter()
                .map(|s| {
                    let st = s.stats.expect("checked");
                    StatsRow {
                        id: s.id.clone(),
                        title: s.title.clone(),
                        author: s.author.clone(),
                        char_count: st.char_count,
                        alphabet_size: st.alphabet_size,
                        word_count: st.word_count,
                        distinct_word_count: st.distinct_word_count,
                        wdr: st.wdr,
                        alpha: st.alpha,
                    }
                })
                .collect();
            Rendered {
                header: vec![
                    "id",
                    "title",
                    "author",
                    "char_count",
                    "alphabet_size",
                    "word_count",
                    "distinct_word_count",
                    "wdr_percent",
                    "alpha",
                ],
                csv_rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.id.clone(),
                            r.title.clone(),
                            r.author.clone(),
                            r.char_count.to_string(),
                            r.alphabet_size.to_string(),
                            r.word_count.to_string(),
                            r.distinct_word_count.to_string(),
                            fixed(r.wdr * 100.0, 2),
                            fixed(r.alpha, 2),
                        ]
                    })
                    .collect(),
                json: serde_json::to_value(&rows)?,
            }
        }
        Table::BlockEntropy => {
            let rows: Vec<BlockEntropyRow> = samples
                .iter()
                .flat_map(|s| {
                    let p = s.profile.as_ref().expect("checked");
                    p.levels.iter().map(|l| BlockEntropyRow {
                        id: s.id.clone(),
                        n: l.n,
                        h_n: l.mean,
                        shifts: l.shifts.clone(),
                    })
                })
                .collect();
            Rendered {
                header: vec!["id", "n", "h_n"],
                csv_rows: rows
                    .iter()
                    .map(|r| vec![r.id.clone(), r.n.to_string(), fixed(r.h_n, 2)])
                    .collect(),
                json: serde_json::to_value(&rows)?,
            }
        }
        Table::Conditional => {
            let rows: Vec<ConditionalRow> = samples
                .iter()
                .flat_map(|s| {
                    let c = s.conditional.as_ref().expect("checked");
                    std::iter::once(c.f0)
                        .chain(c.values.iter().copied())
                        .enumerate()
                        .map(|(order, f)| ConditionalRow {
                            id: s.id.clone(),
                            order,
                            f,
                        })
                })
                .collect();
            Rendered {
                header: vec!["id", "order", "f"],
                csv_rows: rows
                    .iter()
                    .map(|r| vec![r.id.clone(), r.order.to_string(), fixed(r.f, 3)])
                    .collect(),
                json: serde_json::to_value(&rows)?,
            }
        }
        Table::Rate => {
            let rows: Vec<RateRow> = samples
                .iter()
                .map(|s| {
                    let r = s.rate.expect("checked");
                    RateRow {
                        id: s.id.clone(),
                        n_z: r.n_z,
                        h_nz: r.h_nz,
                        h_l: r.h_l,
                        redundancy: r.redundancy,
                    }
                })
                .collect();
            Rendered {
                header: vec!["id", "n_z", "h_nz", "h_l", "r_percent"],
                csv_rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.id.clone(),
                            fixed(r.n_z, 2),
                            fixed(r.h_nz, 2),
                            fixed(r.h_l, 2),
                            fixed(r.redundancy * 100.0, 2),
                        ]
                    })
                    .collect(),
                json: serde_json::to_value(&rows)?,
            }
        }
        Table::Equiprob => {
            let rows: Vec<EquiprobRow> = samples
                .iter()
                .map(|s| {
                    let e = s.equiprob.as_ref().expect("checked");
                    let w = e.word_distance.as_ref();
                    EquiprobRow {
                        id: s.id.clone(),
                        n_aep: e.n_aep,
                        n_max_checked: e.n_max_checked,
                        longest_repeat: e.longest_repeat,
                        d_aep: w.map(|w| w.d_aep),
                        log2_typical: w.map(|w| w.log2_typical),
                        typical: w.map(|w| w.typical_decimal.clone()),
                    }
                })
                .collect();
            Rendered {
                header: vec![
                    "id",
                    "n_aep",
                    "n_max_checked",
                    "longest_repeat",
                    "d_aep",
                    "log2_typical",
                    "typical",
                ],
                csv_rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.id.clone(),
                            r.n_aep.map_or("absent".to_string(), |n| n.to_string()),
                            r.n_max_checked.to_string(),
                            r.longest_repeat.to_string(),
                            r.d_aep.map_or(String::new(), |d| fixed(d, 2)),
                            r.log2_typical.map_or(String::new(), |v| fixed(v, 2)),
                            r.typical.clone().unwrap_or_default(),
                        ]
                    })
                    .collect(),
                json: serde_json::to_value(&rows)?,
            }
        }
        Table::Timing => {
            let mut rows: Vec<TimingRow> = Vec::new();
            for s in &samples {
                let p = s.profile.as_ref().expect("checked");
                let mut wall = 0.0;
                let mut cpu = 0.0;
                for t in &p.timings {
                    wall += t.wall_seconds;
                    cpu += t.cpu_seconds;
                    rows.push(TimingRow {
                        id: s.id.clone(),
                        n: Some(t.n),
                        wall_seconds: t.wall_seconds,
                        cpu_seconds: t.cpu_seconds,
                    });
                }
                rows.push(TimingRow {
                    id: s.id.clone(),
                    n: None,
                    wall_seconds: wall,
                    cpu_seconds: cpu,
                });
            }
            Rendered {
                header: vec!["id", "n", "wall_seconds", "cpu_seconds"],
                csv_rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.id.clone(),
                            r.n.map_or("total".to_string(), |n| n.to_string()),
                            fixed(r.wall_seconds, 6),
                            fixed(r.cpu_seconds, 6),
                        ]
                    })
                    .collect(),
                json: serde_json::to_value(&rows)?,
            }
        }
        Table::Aggregate => {
            let rows: Vec<CorpusAggregate> = bundle.aggregate.iter().copied().collect();
            Rendered {
                header: vec![
                    "sample_count",
                    "total_chars",
                    "weighted_h_l",
                    "weighted_alphabet_size",
                    "weighted_alpha",
                    "r_percent",
                ],
                csv_rows: rows
                    .iter()
                    .map(|a| {
                        vec![
                            a.sample_count.to_string(),
                            a.total_chars.to_string(),
                            fixed(a.weighted_h_l, 2),
                            fixed(a.weighted_alphabet_size, 2),
                            fixed(a.weighted_alpha, 2),
                            fixed(a.corpus_redundancy * 100.0, 2),
                        ]
                    })
                    .collect(),
                json: serde_json::to_value(&rows)?,
            }
        }
    };
    Ok(rendered)
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner()
        .map_err(|e| Error::io("<csv buffer>", e.into_error()))
}

fn json_bytes(value: &serde_json::Value) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// Writes the requested tables; returns the files written in order.
pub fn emit_tables(
    bundle: &ReportBundle,
    tables: &[Table],
    format: Format,
    dest: &Path,
) -> Result<Vec<PathBuf>> {
    let gaps = missing(bundle, tables);
    if !gaps.is_empty() {
        return Err(Error::IncompleteBundle { missing: gaps });
    }
    create_dir(dest)?;
    let mut written = Vec::new();
    for &table in tables {
        let rendered = render(bundle, table)?;
        if format.csv() {
            let path = dest.join(format!("{}.csv", table.name()));
            write_file(&path, &csv_bytes(&rendered.header, &rendered.csv_rows)?)?;
            written.push(path);
        }
        if format.json() {
            let path = dest.join(format!("{}.json", table.name()));
            write_file(&path, &json_bytes(&rendered.json)?)?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Reads back the rows of a JSON table.
pub fn read_json_table<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let raw = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_slice(&raw)?)
}

pub const PLOT_BLOCK_ENTROPY_MAX: usize = 100;
const PLOT_STEPS_PER_UNIT: usize = 100;

fn xy_bytes(points: impl Iterator<Item = (String, f64)>) -> Result<Vec<u8>> {
    let rows: Vec<Vec<String>> = points.map(|(x, y)| vec![x, y.to_string()]).collect();
    csv_bytes(&["x", "y"], &rows)
}

/// Writes per-sample plot series: the block entropy curve, the interpolated
/// conditional entropy curve and its zero crossing.
pub fn emit_plot_series(bundle: &ReportBundle, dest: &Path) -> Result<Vec<PathBuf>> {
    let gaps = missing(bundle, &[Table::BlockEntropy]);
    if !gaps.is_empty() {
        return Err(Error::IncompleteBundle { missing: gaps });
    }
    let mut written = Vec::new();
    for s in sorted(bundle) {
        let dir = dest.join("plots").join(file_stem(&s.id));
        create_dir(&dir)?;
        let profile = s.profile.as_ref().expect("checked");

        let path = dir.join("block_entropy.csv");
        let upto = profile.levels.len().min(PLOT_BLOCK_ENTROPY_MAX);
        let series = profile.levels[..upto]
            .iter()
            .map(|l| (l.n.to_string(), l.mean));
        write_file(&path, &xy_bytes(series)?)?;
        written.push(path);

        if let Some(cond) = &s.conditional {
            if cond.n_max() >= 4 {
                let curve = cond.interpolant()?;
                let steps = (cond.n_max() - 1) * PLOT_STEPS_PER_UNIT;
                let series = (0..=steps).map(|i| {
                    let x = 1.0 + i as f64 / PLOT_STEPS_PER_UNIT as f64;
                    (fixed(x, 2), curve.eval(x))
                });
                let path = dir.join("conditional.csv");
                write_file(&path, &xy_bytes(series)?)?;
                written.push(path);

                if let Some(rate) = &s.rate {
                    let path = dir.join("crossing.csv");
                    let point = std::iter::once((rate.n_z.to_string(), curve.eval(rate.n_z)));
                    write_file(&path, &xy_bytes(point)?)?;
                    written.push(path);
                }
            }
        }
    }
    Ok(written)
}
