use std::collections::HashMap;

use blockent::blocks::{block_entropy, count_blocks, entropy_profile, shift_entropy};
use blockent::corpus::Sample;
use blockent::equiprob::{find_n_aep, is_equiprobable};
use blockent::rate::conditional_profile;
use proptest::prelude::*;

fn naive_entropy(chars: &[char], n: usize, shift: usize) -> f64 {
    let mut table: HashMap<&[char], u64> = HashMap::new();
    let blocks = (chars.len() - shift) / n;
    for b in 0..blocks {
        *table
            .entry(&chars[shift + b * n..shift + (b + 1) * n])
            .or_default() += 1;
    }
    let total = blocks as f64;
    -table
        .values()
        .map(|&c| {
            let p = c as f64 / total;
            p * p.log2()
        })
        .sum::<f64>()
}

fn naive_distinct(chars: &[char], n: usize, shift: usize) -> bool {
    let blocks: Vec<&[char]> = chars[shift..].chunks_exact(n).collect();
    (0..blocks.len()).all(|i| (i + 1..blocks.len()).all(|j| blocks[i] != blocks[j]))
}

fn text(alphabet: usize, max_len: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(0..alphabet as u8, 1..=max_len)
        .prop_map(|v| v.into_iter().map(|b| (b'a' + b) as char).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn shift_entropy_matches_dictionary_count(s in text(5, 60), n in 1usize..8) {
        let sample = Sample::from_text("p", &s).unwrap();
        for shift in 0..n {
            if (s.len() - shift.min(s.len())) / n == 0 {
                prop_assert!(count_blocks(&sample, n, shift).is_err());
                continue;
            }
            let dist = count_blocks(&sample, n, shift).unwrap();
            prop_assert_eq!(dist.table.values().sum::<u64>() as usize, dist.block_total);
            let got = shift_entropy(&dist);
            let want = naive_entropy(&sample.chars, n, shift);
            prop_assert!((got - want).abs() < 1e-12, "{} vs {}", got, want);
            prop_assert!(got <= (dist.block_total as f64).log2() + 1e-12);
        }
    }

    #[test]
    fn mean_is_average_of_shifts(s in text(3, 80), n in 1usize..6) {
        prop_assume!(s.len() >= 2 * n - 1);
        let sample = Sample::from_text("p", &s).unwrap();
        let h = block_entropy(&sample, n).unwrap();
        prop_assert_eq!(h.shifts.len(), n);
        prop_assert_eq!(h.mean, h.shifts.iter().sum::<f64>() / n as f64);
    }

    #[test]
    fn conditional_entropies_telescope(s in text(4, 120)) {
        prop_assume!(s.len() >= 3);
        let sample = Sample::from_text("p", &s).unwrap();
        let n_max = s.len().div_ceil(2).min(10);
        let profile = entropy_profile(&sample, n_max).unwrap();
        let cond = conditional_profile(&profile, 4).unwrap();
        let mut acc = 0.0;
        for k in 1..=n_max {
            acc += cond.f(k).unwrap();
            prop_assert!((acc - profile.h(k).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn equiprobability_matches_brute_force(s in text(3, 200), ceiling in 1usize..40) {
        prop_assume!(s.len() >= 2);
        let sample = Sample::from_text("p", &s).unwrap();
        let chars = &sample.chars;
        let limit = ceiling.min(chars.len() / 2).max(1);
        let ok = |n: usize| (0..n).all(|shift| naive_distinct(chars, n, shift));
        let want = match (1..=limit).rev().find(|&n| !ok(n)) {
            Some(n) if n == limit => None,
            Some(n) => Some(n + 1),
            None => Some(1),
        };
        let got = find_n_aep(&sample, ceiling).unwrap();
        prop_assert_eq!(got.n_aep, want);
        prop_assert_eq!(got.n_max_checked, limit);
        for n in 1..=limit {
            for shift in 0..n {
                if (chars.len() - shift) / n > 0 {
                    prop_assert_eq!(
                        is_equiprobable(&sample, n, shift).unwrap(),
                        naive_distinct(chars, n, shift)
                    );
                }
            }
        }
    }
}
