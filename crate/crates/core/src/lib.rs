//! Entropy rate and redundancy of written text from first principles.
//!
//! The pipeline normalizes a text to its printable characters, computes
//! shift-averaged non-overlapping block entropies `H_n`, differences them
//! into conditional entropies `F_N`, interpolates `F_N` with local cubics to
//! find its first zero crossing `N_Z`, and reports the entropy rate
//! `H(N_Z) / N_Z` together with the redundancy `1 - H_L / log2(A_S)`. It also
//! finds the equiprobability distance: the block length from which every
//! non-overlapping partition consists of distinct blocks.

pub mod blocks;
pub mod cache;
pub mod corpus;
pub mod equiprob;
pub mod error;
mod hashing;
pub mod interp;
pub mod pipeline;
pub mod rate;
pub mod report;
pub mod suffix;
pub mod timing;

pub use blocks::{
    block_entropy, count_blocks, entropy_profile, shift_entropy, BlockDistribution, BlockEntropy,
    BlockEntropyProfile,
};
pub use corpus::{compute_stats, load_sample, tokenize_words, Sample, SampleStats};
pub use equiprob::{
    find_n_aep, is_equiprobable, longest_repeated_block_bound, word_distance, EquiprobResult,
    WordDistance,
};
pub use error::{Error, Result};
pub use interp::{interpolate_cubic, PiecewiseCubic};
pub use rate::{
    aggregate, conditional_profile, find_root, rate_estimate, ConditionalProfile, CorpusAggregate,
    RateEstimate,
};
pub use report::{emit_plot_series, emit_tables, Format, ReportBundle, SampleReport, Table};
