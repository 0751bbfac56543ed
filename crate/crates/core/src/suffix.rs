//! Suffix array (prefix doubling with radix sort) and Kasai LCP.

/// Suffix array of `text`: `sa[r]` is the start of the r-th smallest suffix.
pub fn suffix_array(text: &[char]) -> Vec<usize> {
    let len = text.len();
    if len == 0 {
        return Vec::new();
    }
    // Dense initial ranks starting at 1; 0 marks "past the end".
    let mut alphabet: Vec<char> = text.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    let mut rank: Vec<usize> = text
        .iter()
        .map(|c| alphabet.binary_search(c).expect("char in alphabet") + 1)
        .collect();
    let mut max_rank = alphabet.len();

    let mut sa: Vec<usize> = (0..len).collect();
    let mut tmp = vec![0usize; len];
    let mut next_rank = vec![0usize; len];
    let mut k = 1;
    loop {
        let second = |i: usize| if i + k < len { rank[i + k] } else { 0 };
        counting_sort(&(0..len).collect::<Vec<_>>(), &mut tmp, max_rank, second);
        counting_sort(&tmp, &mut sa, max_rank, |i| rank[i]);

        next_rank[sa[0]] = 1;
        let mut r = 1;
        for w in 1..len {
            let (prev, cur) = (sa[w - 1], sa[w]);
            if rank[prev] != rank[cur] || second(prev) != second(cur) {
                r += 1;
            }
            next_rank[cur] = r;
        }
        std::mem::swap(&mut rank, &mut next_rank);
        max_rank = r;
        if max_rank == len {
            break;
        }
        k *= 2;
    }
    sa
}

/// Stable counting sort of `input` by `key`, keys in `0..=max_key`.
fn counting_sort<F>(input: &[usize], output: &mut [usize], max_key: usize, key: F)
where
    F: Fn(usize) -> usize,
{
    let mut buckets = vec![0usize; max_key + 2];
    for &i in input {
        buckets[key(i) + 1] += 1;
    }
    for b in 1..buckets.len() {
        buckets[b] += buckets[b - 1];
    }
    for &i in input {
        let slot = &mut buckets[key(i)];
        output[*slot] = i;
        *slot += 1;
    }
}

/// `lcp[r]` is the longest common prefix of suffixes `sa[r - 1]` and
/// `sa[r]`; `lcp[0] = 0`.
pub fn lcp_array(text: &[char], sa: &[usize]) -> Vec<usize> {
    let len = text.len();
    let mut rank = vec![0usize; len];
    for (r, &i) in sa.iter().enumerate() {
        rank[i] = r;
    }
    let mut lcp = vec![0usize; len];
    let mut h = 0usize;
    for i in 0..len {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < len && j + h < len && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Length of the longest substring that occurs at least twice.
pub fn longest_repeat(text: &[char]) -> usize {
    let sa = suffix_array(text);
    lcp_array(text, &sa).into_iter().max().unwrap_or(0)
}
