use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS: &[&str] = &[
    "the", "of", "and", "to", "in", "a", "is", "that", "he", "was", "it", "for", "on", "with",
    "as", "his", "at", "by", "be", "this", "had", "not", "are", "but", "from", "or", "have", "an",
    "they", "which", "one", "you", "were", "her", "all", "she", "there", "would", "their", "we",
    "him", "been", "has", "when", "who", "will", "more", "no", "if", "out", "sea", "whale", "ship",
    "captain", "water", "long", "voyage", "harbour", "storm", "sail",
];

fn prose(seed: u64, words: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    for i in 0..words {
        if i > 0 {
            out.push(if rng.random_range(0..12) == 0 {
                '\n'
            } else {
                ' '
            });
        }
        out.push_str(WORDS[rng.random_range(0..WORDS.len())]);
    }
    out.push_str(".\n");
    out
}

fn corpus(dir: &Path, texts: &[(&str, String)]) -> PathBuf {
    let mut entries = Vec::new();
    for (id, text) in texts {
        let file = format!("{id}.txt");
        fs::write(dir.join(&file), text).unwrap();
        entries.push(serde_json::json!({
            "id": id, "title": format!("Title {id}"), "author": "Anon", "path": file
        }));
    }
    let manifest = dir.join("manifest.json");
    fs::write(&manifest, serde_json::to_vec(&entries).unwrap()).unwrap();
    manifest
}

fn blockent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockent"))
        .args(args)
        .output()
        .expect("run blockent")
}

fn files(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p.strip_prefix(dir).unwrap().to_path_buf());
            }
        }
    }
    out.sort();
    out
}

fn small_corpus(dir: &Path) -> PathBuf {
    corpus(
        dir,
        &[
            ("beta", prose(1, 700)),
            ("alpha", prose(2, 900)),
            ("gamma", prose(3, 500)),
        ],
    )
}

#[test]
fn all_stage_writes_every_table() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = small_corpus(tmp.path());
    let out = tmp.path().join("out");
    let o = blockent(&[
        "all",
        "--manifest",
        manifest.to_str().unwrap(),
        "--n-max",
        "10",
        "--out",
        out.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for table in [
        "stats",
        "block_entropy",
        "conditional",
        "rate",
        "equiprob",
        "timing",
        "aggregate",
    ] {
        for ext in ["csv", "json"] {
            assert!(
                out.join(format!("{table}.{ext}")).is_file(),
                "{table}.{ext}"
            );
        }
    }
    for id in ["alpha", "beta", "gamma"] {
        for series in ["block_entropy", "conditional", "crossing"] {
            assert!(out
                .join("plots")
                .join(id)
                .join(format!("{series}.csv"))
                .is_file());
        }
    }
    let rate = fs::read_to_string(out.join("rate.csv")).unwrap();
    let ids: Vec<&str> = rate
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ids, ["alpha", "beta", "gamma"]);
    let block = fs::read_to_string(out.join("block_entropy.csv")).unwrap();
    assert_eq!(block.lines().count(), 1 + 3 * 10);
}

#[test]
fn warm_cache_rerun_is_byte_identical_and_skips_work() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = small_corpus(tmp.path());
    let cache = tmp.path().join("cache");
    let run = |name: &str| {
        let out = tmp.path().join(name);
        let o = blockent(&[
            "all",
            "--manifest",
            manifest.to_str().unwrap(),
            "--n-max",
            "10",
            "--out",
            out.to_str().unwrap(),
            "--cache",
            cache.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        (out, String::from_utf8_lossy(&o.stderr).into_owned())
    };
    let (cold, cold_log) = run("cold");
    let (warm, warm_log) = run("warm");
    assert!(cold_log.contains("computed 30, from cache 0"), "{cold_log}");
    assert!(warm_log.contains("computed 0, from cache 30"), "{warm_log}");
    let names = files(&cold);
    assert_eq!(names, files(&warm));
    for name in names {
        assert_eq!(
            fs::read(cold.join(&name)).unwrap(),
            fs::read(warm.join(&name)).unwrap(),
            "{}",
            name.display()
        );
    }
}

#[test]
fn job_count_does_not_change_results() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = small_corpus(tmp.path());
    let run = |jobs: &str| {
        let out = tmp.path().join(format!("out{jobs}"));
        let o = blockent(&[
            "all",
            "--manifest",
            manifest.to_str().unwrap(),
            "--n-max",
            "10",
            "--out",
            out.to_str().unwrap(),
            "--jobs",
            jobs,
        ]);
        assert!(o.status.success());
        out
    };
    let one = run("1");
    let four = run("4");
    for name in files(&one) {
        if name.to_string_lossy().starts_with("timing.") {
            continue;
        }
        assert_eq!(
            fs::read(one.join(&name)).unwrap(),
            fs::read(four.join(&name)).unwrap(),
            "{}",
            name.display()
        );
    }
}

#[test]
fn planted_long_repeat_beyond_ceiling_is_absent() {
    let tmp = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let chars: Vec<char> = "abcdefghijklmnopqrstuvwxyz".chars().collect();
    let mut text: Vec<char> = (0..3000).map(|_| chars[rng.random_range(0..26)]).collect();
    let copy: Vec<char> = text[200..350].to_vec();
    text.splice(2000..2150, copy);
    let text: String = text.into_iter().collect();
    let manifest = corpus(tmp.path(), &[("planted", text)]);
    let out = tmp.path().join("out");
    let o = blockent(&[
        "aep",
        "--manifest",
        manifest.to_str().unwrap(),
        "--n-max",
        "100",
        "--cond-max",
        "15",
        "--aep-max",
        "100",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("equiprob.csv")).unwrap();
    let row = csv.lines().nth(1).unwrap();
    assert!(row.starts_with("planted,absent,100,150,"), "{row}");
}

#[test]
fn stats_stage_only_writes_stats() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = corpus(tmp.path(), &[("doc", "aabb ccc aabb".to_string())]);
    let out = tmp.path().join("out");
    let o = blockent(&[
        "stats",
        "--manifest",
        manifest.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    assert_eq!(files(&out), vec![PathBuf::from("stats.csv")]);
    let csv = fs::read_to_string(out.join("stats.csv")).unwrap();
    assert_eq!(
        csv,
        "id,title,author,char_count,alphabet_size,word_count,distinct_word_count,wdr_percent,alpha\n\
         doc,Title doc,Anon,13,4,3,2,66.67,3.67\n"
    );
}

#[test]
fn configuration_errors_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = small_corpus(tmp.path());
    let o = blockent(&[
        "rate",
        "--manifest",
        manifest.to_str().unwrap(),
        "--n-max",
        "10",
        "--cond-max",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("conditional ceiling"));

    let missing = tmp.path().join("missing.json");
    let o = blockent(&["stats", "--manifest", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let bad = tmp.path().join("bad.json");
    fs::write(&bad, "[{\"id\": \"x\"}]").unwrap();
    let o = blockent(&["stats", "--manifest", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_sample_is_reported_and_others_still_written() {
    let tmp = tempfile::tempdir().unwrap();
    let manifest = corpus(
        tmp.path(),
        &[
            ("good", prose(5, 400)),
            ("empty", "\r\n\u{200b}".to_string()),
        ],
    );
    let out = tmp.path().join("out");
    let o = blockent(&[
        "stats",
        "--manifest",
        manifest.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`empty`"));
    let csv = fs::read_to_string(out.join("stats.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.contains("\ngood,"));
}
