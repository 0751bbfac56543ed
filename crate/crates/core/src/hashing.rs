//! Polynomial rolling hash over a character sequence.
//!
//! Hashes are taken modulo the Mersenne prime 2^61 - 1, so the hash of any
//! substring is available in O(1) from a prefix table. Every hash hit is
//! verified against the characters themselves; a collision only costs a
//! comparison, it never merges two different blocks.

use rustc_hash::FxHashMap;

const MODULUS: u64 = (1 << 61) - 1;
const BASE: u64 = 0x0a3b_5c7d_9e1f_2468 % MODULUS;
const NIL: u32 = u32::MAX;

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    let wide = a as u128 * b as u128;
    let folded = (wide & MODULUS as u128) as u64 + (wide >> 61) as u64;
    if folded >= MODULUS {
        folded - MODULUS
    } else {
        folded
    }
}

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

fn pow_mod(mut base: u64, mut exp: usize) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Prefix hashes of a character sequence.
pub struct BlockIndex<'a> {
    chars: &'a [char],
    prefix: Vec<u64>,
}

struct Slot {
    pos: usize,
    count: u64,
    next: u32,
}

/// Occurrence counts of one non-overlapping partition, keyed by the start
/// offset of the first occurrence of each distinct block.
pub struct PartitionCounts {
    pub block_total: usize,
    pub first_positions: Vec<usize>,
    pub counts: Vec<u64>,
}

impl<'a> BlockIndex<'a> {
    pub fn new(chars: &'a [char]) -> Self {
        let mut prefix = Vec::with_capacity(chars.len() + 1);
        let mut h = 0u64;
        prefix.push(h);
        for &c in chars {
            h = add_mod(mul_mod(h, BASE), c as u64 + 1);
            prefix.push(h);
        }
        BlockIndex { chars, prefix }
    }

    pub fn chars(&self) -> &'a [char] {
        self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// Number of complete n-blocks starting at `shift`.
    pub fn block_total(&self, n: usize, shift: usize) -> usize {
        self.chars.len().saturating_sub(shift) / n
    }

    #[inline]
    fn hash(&self, pos: usize, n: usize, base_pow: u64) -> u64 {
        let hi = self.prefix[pos + n];
        let lo = mul_mod(self.prefix[pos], base_pow);
        add_mod(hi, MODULUS - lo)
    }

    #[inline]
    fn same_block(&self, a: usize, b: usize, n: usize) -> bool {
        self.chars[a..a + n] == self.chars[b..b + n]
    }

    /// Walks the partition and calls `on_block(slot_index, is_new)` for each
    /// block; stops early when the callback returns false.
    fn scan<F>(&self, n: usize, shift: usize, mut on_block: F) -> Vec<Slot>
    where
        F: FnMut(&[Slot], usize, bool) -> bool,
    {
        let total = self.block_total(n, shift);
        let base_pow = pow_mod(BASE, n);
        let mut heads: FxHashMap<u64, u32> =
            FxHashMap::with_capacity_and_hasher(total.min(1 << 20), Default::default());
        let mut slots: Vec<Slot> = Vec::new();
        for k in 0..total {
            let pos = shift + k * n;
            let h = self.hash(pos, n, base_pow);
            let head = heads.entry(h).or_insert(NIL);
            let mut cursor = *head;
            let mut found = None;
            while cursor != NIL {
                let slot = &slots[cursor as usize];
                if self.same_block(slot.pos, pos, n) {
                    found = Some(cursor as usize);
                    break;
                }
                cursor = slot.next;
            }
            let (idx, is_new) = match found {
                Some(idx) => {
                    slots[idx].count += 1;
                    (idx, false)
                }
                None => {
                    let idx = slots.len();
                    slots.push(Slot {
                        pos,
                        count: 1,
                        next: *head,
                    });
                    *head = idx as u32;
                    (idx, true)
                }
            };
            if !on_block(&slots, idx, is_new) {
                break;
            }
        }
        slots
    }

    /// Exact block counts of the (n, shift) partition.
    pub fn partition_counts(&self, n: usize, shift: usize) -> PartitionCounts {
        let slots = self.scan(n, shift, |_, _, _| true);
        let (first_positions, counts) = slots.into_iter().map(|s| (s.pos, s.count)).unzip();
        PartitionCounts {
            block_total: self.block_total(n, shift),
            first_positions,
            counts,
        }
    }

    /// True when some block of the (n, shift) partition occurs twice.
    pub fn has_duplicate(&self, n: usize, shift: usize) -> bool {
        let mut dup = false;
        self.scan(n, shift, |_, _, is_new| {
            dup = !is_new;
            is_new
        });
        dup
    }
}
