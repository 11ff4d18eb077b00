//! Canonical enumeration of subtraction sets and work partitioning.
//!
//! Triples `(s1, s2, s3)` with `s_min <= s1 < s2 < s3 <= s_max` are ordered
//! lexicographically. Enumeration order is the file format of the sweep: a
//! verification run's output lists records in exactly this order, and
//! resuming relies on being able to jump to the i-th triple without walking
//! there ([`triple_at`]).

use std::ops::Range;

/// Number of triples `s_min <= s1 < s2 < s3 <= s_max`, i.e. `C(m, 3)` for
/// `m = s_max - s_min + 1`. Zero when the range holds fewer than 3 values.
pub fn triple_count(s_min: u32, s_max: u32) -> u64 {
    if s_max < s_min {
        return 0;
    }
    let m = u64::from(s_max - s_min) + 1;
    if m < 3 {
        0
    } else {
        m * (m - 1) * (m - 2) / 6
    }
}

/// The `index`-th triple in lexicographic order, if it exists.
///
/// Inverse of enumeration: `triples(a, b).nth(i) == triple_at(a, b, i)`.
pub fn triple_at(s_min: u32, s_max: u32, index: u64) -> Option<(u32, u32, u32)> {
    if index >= triple_count(s_min, s_max) {
        return None;
    }
    let mut index = index;
    // Peel off s1: there are C(s_max - s1, 2) triples with this first entry.
    let mut s1 = s_min;
    loop {
        let rest = u64::from(s_max - s1);
        let with_s1 = rest * (rest - 1) / 2;
        if index < with_s1 {
            break;
        }
        index -= with_s1;
        s1 += 1;
    }
    let mut s2 = s1 + 1;
    loop {
        let with_s2 = u64::from(s_max - s2);
        if index < with_s2 {
            break;
        }
        index -= with_s2;
        s2 += 1;
    }
    let s3 = s2 + 1 + index as u32;
    Some((s1, s2, s3))
}

/// Lexicographic iterator over triples in `[s_min, s_max]`.
#[derive(Clone, Debug)]
pub struct Triples {
    s_max: u32,
    next: Option<(u32, u32, u32)>,
    remaining: u64,
}

impl Iterator for Triples {
    type Item = (u32, u32, u32);

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next?;
        let (a, b, c) = current;
        self.remaining -= 1;
        self.next = if self.remaining == 0 {
            None
        } else if c < self.s_max {
            Some((a, b, c + 1))
        } else if b + 1 < self.s_max {
            Some((a, b + 1, b + 2))
        } else if a + 3 <= self.s_max {
            Some((a + 1, a + 2, a + 3))
        } else {
            None
        };
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).ok();
        (n.unwrap_or(usize::MAX), n)
    }
}

impl ExactSizeIterator for Triples {}

/// All triples `s_min <= s1 < s2 < s3 <= s_max`, lexicographically.
///
/// ```
/// use nimperiod::triples;
///
/// let all: Vec<_> = triples(1, 4).collect();
/// assert_eq!(all, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]);
/// ```
pub fn triples(s_min: u32, s_max: u32) -> Triples {
    let remaining = triple_count(s_min, s_max);
    Triples {
        s_max,
        next: (remaining > 0).then_some((s_min, s_min + 1, s_min + 2)),
        remaining,
    }
}

/// `len` triples starting at position `start` of the enumeration.
pub fn triples_slice(s_min: u32, s_max: u32, start: u64, len: u64) -> Triples {
    let total = triple_count(s_min, s_max);
    let end = start.saturating_add(len).min(total);
    let remaining = end.saturating_sub(start);
    Triples {
        s_max,
        next: (remaining > 0).then(|| triple_at(s_min, s_max, start).unwrap()),
        remaining,
    }
}

/// Splits `0..total` into `workers` contiguous blocks, sizes differing by at
/// most one, larger blocks first. Empty ranges pad out short totals so every
/// worker index gets a block.
pub fn partition(total: u64, workers: usize) -> Vec<Range<u64>> {
    assert!(workers > 0, "need at least one worker");
    let w = workers as u64;
    let base = total / w;
    let extra = total % w;
    let mut blocks = Vec::with_capacity(workers);
    let mut start = 0;
    for i in 0..w {
        let size = base + u64::from(i < extra);
        blocks.push(start..start + size);
        start += size;
    }
    blocks
}
