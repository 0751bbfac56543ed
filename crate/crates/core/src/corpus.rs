//! Sample ingestion, character normalization and word statistics.
//!
//! A sample's character stream keeps every printable Unicode scalar value:
//! letters of both cases, digits, punctuation and the space character. Only
//! characters in general categories `Cc` (control) and `Cf` (format) are
//! removed, which drops line breaks, tabs, byte-order marks and zero-width
//! joiners.
//!
//! Words are counted on the text *before* that removal, so a line break
//! between two words keeps them apart. A word is a maximal run of `\p{L}`
//! characters; distinctness is judged on the lowercased form while lengths
//! are measured on the run as written.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

static NON_PRINTABLE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"[\p{Cc}\p{Cf}]+").expect("static regex"));
static LETTER_RUN: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\p{L}+").expect("static regex"));

/// One word occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordToken {
    /// Lowercased form, used for distinct-word counting.
    pub folded: String,
    /// Length in characters of the run as it appeared in the text.
    pub char_len: usize,
}

/// A normalized text plus identity metadata.
#[derive(Debug, Clone)]
pub struct Sample {
    pub id: String,
    pub title: String,
    pub author: String,
    pub chars: Vec<char>,
    pub raw_word_tokens: Vec<WordToken>,
}

/// One row of the per-sample statistics table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub char_count: usize,
    pub alphabet_size: usize,
    pub word_count: usize,
    pub distinct_word_count: usize,
    pub wdr: f64,
    pub alpha: f64,
}

/// Removes every `Cc` and `Cf` character.
pub fn normalize(text: &str) -> String {
    NON_PRINTABLE.replace_all(text, "").into_owned()
}

/// Splits text into maximal runs of letters.
pub fn tokenize_words(raw_text: &str) -> Vec<WordToken> {
    LETTER_RUN
        .find_iter(raw_text)
        .map(|m| {
            let run = m.as_str();
            WordToken {
                folded: run.to_lowercase(),
                char_len: run.chars().count(),
            }
        })
        .collect()
}

/// Decodes, normalizes and tokenizes a sample.
pub fn load_sample(bytes: &[u8], id: &str) -> Result<Sample> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Decode {
        id: id.to_string(),
        offset: e.valid_up_to(),
    })?;
    Sample::from_text(id, text)
}

impl Sample {
    pub fn from_text(id: &str, text: &str) -> Result<Sample> {
        let raw_word_tokens = tokenize_words(text);
        let chars: Vec<char> = normalize(text).chars().collect();
        if chars.is_empty() {
            return Err(Error::EmptySample { id: id.to_string() });
        }
        Ok(Sample {
            id: id.to_string(),
            title: String::new(),
            author: String::new(),
            chars,
            raw_word_tokens,
        })
    }

    pub fn with_metadata(mut self, title: &str, author: &str) -> Sample {
        self.title = title.to_string();
        self.author = author.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn text(&self) -> String {
        self.chars.iter().collect()
    }

    /// Hex SHA-256 of the normalized text encoded as UTF-8.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        let mut buf = [0u8; 4];
        for c in &self.chars {
            hasher.update(c.encode_utf8(&mut buf).as_bytes());
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

pub fn compute_stats(sample: &Sample) -> Result<SampleStats> {
    let word_count = sample.raw_word_tokens.len();
    if word_count == 0 {
        return Err(Error::DegenerateStats);
    }
    let alphabet_size = sample.chars.iter().collect::<HashSet<_>>().len();
    let distinct_word_count = sample
        .raw_word_tokens
        .iter()
        .map(|w| w.folded.as_str())
        .collect::<HashSet<_>>()
        .len();
    let letters: usize = sample.raw_word_tokens.iter().map(|w| w.char_len).sum();
    Ok(SampleStats {
        char_count: sample.chars.len(),
        alphabet_size,
        word_count,
        distinct_word_count,
        wdr: distinct_word_count as f64 / word_count as f64,
        alpha: letters as f64 / word_count as f64,
    })
}

/// Sample id reduced to characters that are safe in a file name.
pub(crate) fn file_stem(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// One entry of a corpus manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub title: String,
    pub author: String,
    pub path: PathBuf,
}

/// Reads a JSON manifest. Relative sample paths are resolved against the
/// manifest's directory.
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let raw = fs::read(path).map_err(|e| Error::io(path, e))?;
    let mut entries: Vec<ManifestEntry> =
        serde_json::from_slice(&raw).map_err(|e| Error::Manifest {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
    let base = path.parent().unwrap_or_else(|| Path::new(""));
    let mut seen = HashSet::new();
    for entry in &mut entries {
        if entry.id.is_empty() {
            return Err(Error::Manifest {
                path: path.to_path_buf(),
                message: "sample with empty id".into(),
            });
        }
        if !seen.insert(entry.id.clone()) {
            return Err(Error::Manifest {
                path: path.to_path_buf(),
                message: format!("duplicate sample id `{}`", entry.id),
            });
        }
        if entry.path.is_relative() {
            entry.path = base.join(&entry.path);
        }
    }
    Ok(entries)
}

impl ManifestEntry {
    pub fn load(&self) -> Result<Sample> {
        let bytes = fs::read(&self.path).map_err(|e| Error::io(&self.path, e))?;
        Ok(load_sample(&bytes, &self.id)?.with_metadata(&self.title, &self.author))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Sample {
        Sample::from_text("t", text).unwrap()
    }

    #[test]
    fn crlf_is_removed() {
        let sample = load_sample(b"a\r\nb", "x").unwrap();
        assert_eq!(sample.text(), "ab");
        assert_eq!(sample.len(), 2);
    }

    #[test]
    fn space_is_kept() {
        let sample = s("Hello world");
        assert_eq!(sample.text(), "Hello world");
        assert_eq!(sample.len(), 11);
    }

    #[test]
    fn format_characters_are_removed() {
        // BOM, zero-width joiner and soft hyphen are all Cf.
        let sample = s("\u{feff}a\u{200d}b\u{ad}c\u{7}");
        assert_eq!(sample.text(), "abc");
    }

    #[test]
    fn decode_error_reports_offset() {
        let err = load_sample(b"abc\xffdef", "bad").unwrap_err();
        match err {
            Error::Decode { id, offset } => {
                assert_eq!(id, "bad");
                assert_eq!(offset, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_after_normalization() {
        assert!(matches!(
            load_sample(b"\r\n\t", "e"),
            Err(Error::EmptySample { .. })
        ));
        assert!(matches!(
            load_sample(b"", "e"),
            Err(Error::EmptySample { .. })
        ));
    }

    #[test]
    fn tokenizer_folds_case_and_splits_punctuation() {
        let words = tokenize_words("Hello, world! hello");
        let folded: Vec<_> = words.iter().map(|w| w.folded.as_str()).collect();
        assert_eq!(folded, ["hello", "world", "hello"]);
        let stats = compute_stats(&s("Hello, world! hello")).unwrap();
        assert_eq!(stats.distinct_word_count, 2);
    }

    #[test]
    fn apostrophe_splits() {
        let folded: Vec<_> = tokenize_words("it's")
            .into_iter()
            .map(|w| w.folded)
            .collect();
        assert_eq!(folded, ["it", "s"]);
        assert!(tokenize_words("").is_empty());
        assert!(tokenize_words("12 -- !!").is_empty());
    }

    #[test]
    fn words_tokenized_before_newline_removal() {
        let sample = s("end\nstart");
        assert_eq!(sample.text(), "endstart");
        assert_eq!(sample.raw_word_tokens.len(), 2);
    }

    #[test]
    fn token_length_uses_unfolded_run() {
        // U+0130 lowercases to two scalar values.
        let words = tokenize_words("\u{130}x");
        assert_eq!(words[0].char_len, 2);
        assert_eq!(words[0].folded.chars().count(), 3);
    }

    #[test]
    fn stats_hand_counted() {
        let stats = compute_stats(&s("aabb ccc aabb")).unwrap();
        assert_eq!(stats.word_count, 3);
        assert_eq!(stats.distinct_word_count, 2);
        assert!((stats.wdr - 2.0 / 3.0).abs() < 1e-15);
        assert!((stats.alpha - 11.0 / 3.0).abs() < 1e-15);
        assert_eq!(stats.char_count, 13);
        assert_eq!(stats.alphabet_size, 4);
    }

    #[test]
    fn stats_single_repeated_word() {
        let stats = compute_stats(&s("dog dog dog")).unwrap();
        assert!((stats.wdr - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(stats.alpha, 3.0);
    }

    #[test]
    fn stats_alpha_equals_probability_weighted_form() {
        let sample = s("the cat and the hat and the bat sat");
        let stats = compute_stats(&sample).unwrap();
        let mut counts = std::collections::HashMap::new();
        for w in &sample.raw_word_tokens {
            *counts.entry(w.folded.clone()).or_insert(0usize) += 1;
        }
        let total = sample.raw_word_tokens.len() as f64;
        let weighted: f64 = counts
            .iter()
            .map(|(w, c)| w.chars().count() as f64 * *c as f64 / total)
            .sum();
        assert!((stats.alpha - weighted).abs() < 1e-12);
    }

    #[test]
    fn stats_without_words_is_degenerate() {
        assert!(matches!(
            compute_stats(&s("123 456 !!")),
            Err(Error::DegenerateStats)
        ));
    }

    #[test]
    fn digest_depends_on_normalized_text() {
        assert_eq!(s("ab").digest(), s("a\nb").digest());
        assert_ne!(s("ab").digest(), s("ba").digest());
        assert_eq!(s("ab").digest().len(), 64);
    }

    #[test]
    fn manifest_resolves_relative_paths() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("one.txt"), "one two").unwrap();
        let manifest = dir.path().join("m.json");
        fs::write(
            &manifest,
            r#"[{"id":"one","title":"One","author":"A","path":"one.txt"}]"#,
        )
        .unwrap();
        let entries = read_manifest(&manifest).unwrap();
        assert_eq!(entries[0].path, dir.path().join("one.txt"));
        let sample = entries[0].load().unwrap();
        assert_eq!(sample.title, "One");
        assert_eq!(sample.len(), 7);
    }

    #[test]
    fn manifest_rejects_duplicates_and_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = dir.path().join("m.json");
        fs::write(
            &manifest,
            r#"[{"id":"a","title":"","author":"","path":"x"},
                {"id":"a","title":"","author":"","path":"y"}]"#,
        )
        .unwrap();
        assert!(matches!(
            read_manifest(&manifest),
            Err(Error::Manifest { .. })
        ));
        fs::write(&manifest, "{not json").unwrap();
        assert!(matches!(
            read_manifest(&manifest),
            Err(Error::Manifest { .. })
        ));
    }
}
