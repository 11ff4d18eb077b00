//! Nim (Grundy) sequences of subtraction games.
//!
//! Every nim value of a three-element subtraction game fits in two bits: a
//! position has at most three options, so the minimal excludant never
//! exceeds 3. [`NimSequence`] exploits that by packing 32 values into each
//! `u64`, which turns the window comparisons behind period certification
//! into word compares plus two edge masks.

use std::fmt;

use crate::game::SubtractionSet;

/// Default cap on requested sequence lengths, in values.
pub const DEFAULT_SEQUENCE_CAP: usize = 1 << 24;

/// Least non-negative integer absent from `seen`.
///
/// ```
/// use nimperiod::mex;
///
/// assert_eq!(mex(&[]), 0);
/// assert_eq!(mex(&[0, 1, 2]), 3);
/// assert_eq!(mex(&[1, 2]), 0);
/// ```
pub fn mex(seen: &[u32]) -> u32 {
    // mex(seen) <= seen.len(), so a bitmap of that size suffices.
    let n = seen.len();
    let mut present = vec![false; n];
    for &v in seen {
        if (v as usize) < n {
            present[v as usize] = true;
        }
    }
    match present.iter().position(|&p| !p) {
        Some(i) => i as u32,
        None => n as u32,
    }
}

/// A finite prefix of a nim sequence, packed two bits per value.
///
/// Value `h` lives at bits `2*(h % 32)` of word `h / 32`, lowest position
/// first. Unused bits of the final word stay zero.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct NimSequence {
    words: Vec<u64>,
    len: usize,
}

impl NimSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(values: usize) -> Self {
        Self {
            words: Vec::with_capacity(values.div_ceil(32)),
            len: 0,
        }
    }

    pub fn from_values(values: &[u8]) -> Self {
        let mut seq = Self::with_capacity(values.len());
        for &v in values {
            seq.push(v);
        }
        seq
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Value at heap size `h`.
    ///
    /// Panics when `h` is out of range.
    #[inline]
    pub fn get(&self, h: usize) -> u8 {
        assert!(
            h < self.len,
            "heap size {h} beyond computed prefix {}",
            self.len
        );
        ((self.words[h >> 5] >> ((h & 31) << 1)) & 3) as u8
    }

    /// Appends a value in `0..=3`.
    #[inline]
    pub fn push(&mut self, value: u8) {
        debug_assert!(value <= 3, "nim value {value} does not fit two bits");
        if self.len & 31 == 0 {
            self.words.push(0);
        }
        self.words[self.len >> 5] |= u64::from(value & 3) << ((self.len & 31) << 1);
        self.len += 1;
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = u8> + '_ {
        (0..self.len).map(move |h| self.get(h))
    }

    pub fn to_vec(&self) -> Vec<u8> {
        self.iter().collect()
    }

    /// 64 packed bits starting at bit offset `bit`, zero-padded past the end.
    #[inline]
    fn bits_from(&self, bit: usize) -> u64 {
        let w = bit >> 6;
        let o = bit & 63;
        let lo = self.words.get(w).copied().unwrap_or(0);
        if o == 0 {
            lo
        } else {
            let hi = self.words.get(w + 1).copied().unwrap_or(0);
            (lo >> o) | (hi << (64 - o))
        }
    }

    /// Entrywise equality of `self[a..a+len]` and `self[b..b+len]`.
    ///
    /// Runs over whole words, 32 values at a time; an empty range is
    /// vacuously equal. Panics when either range is out of bounds.
    pub fn ranges_equal(&self, a: usize, b: usize, len: usize) -> bool {
        assert!(
            a.max(b) + len <= self.len,
            "range compare [{a}..{a}+{len}) vs [{b}..{b}+{len}) beyond length {}",
            self.len
        );
        let mut pa = a << 1;
        let mut pb = b << 1;
        let mut bits = len << 1;
        while bits >= 64 {
            if self.bits_from(pa) != self.bits_from(pb) {
                return false;
            }
            pa += 64;
            pb += 64;
            bits -= 64;
        }
        bits == 0 || (self.bits_from(pa) ^ self.bits_from(pb)) & ((1u64 << bits) - 1) == 0
    }
}

impl fmt::Debug for NimSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NimSequence(len={}", self.len)?;
        if self.len <= 64 {
            write!(f, ", values={:?}", self.to_vec())?;
        }
        write!(f, ")")
    }
}

impl FromIterator<u8> for NimSequence {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut seq = Self::new();
        for v in iter {
            seq.push(v);
        }
        seq
    }
}

/// Rejected sequence requests.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("sequence must contain at least one value")]
    EmptyRequest,
    #[error("requested {requested} values but the sequence-length cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

fn check_request(count: usize, cap: usize) -> Result<(), SequenceError> {
    if count == 0 {
        Err(SequenceError::EmptyRequest)
    } else if count > cap {
        Err(SequenceError::CapExceeded {
            requested: count,
            cap,
        })
    } else {
        Ok(())
    }
}

/// First `count` nim values of `game`, by the plain mex recurrence.
///
/// This is the reference implementation: one byte per value, a seen-set per
/// heap size, no packing tricks. [`nim_sequence_packed`] must agree with it
/// entrywise on every input.
///
/// ```
/// use nimperiod::{nim_sequence, SubtractionSet};
///
/// let game = SubtractionSet::new(1, 2, 3)?;
/// assert_eq!(nim_sequence(&game, 8)?.to_vec(), [0, 1, 2, 3, 0, 1, 2, 3]);
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn nim_sequence(game: &SubtractionSet, count: usize) -> Result<NimSequence, SequenceError> {
    nim_sequence_with_cap(game, count, DEFAULT_SEQUENCE_CAP)
}

/// [`nim_sequence`] with a caller-chosen length cap.
pub fn nim_sequence_with_cap(
    game: &SubtractionSet,
    count: usize,
    cap: usize,
) -> Result<NimSequence, SequenceError> {
    check_request(count, cap)?;
    let subs = game.parts().map(|s| s as usize);
    let mut values = vec![0u8; count];
    for h in 0..count {
        let mut seen = [false; 4];
        for s in subs {
            if s <= h {
                seen[values[h - s] as usize] = true;
            }
        }
        let mut v = 0u8;
        while seen[v as usize] {
            v += 1;
        }
        values[h] = v;
    }
    Ok(NimSequence::from_values(&values))
}

/// First `count` nim values of `game`, computed directly in packed form.
///
/// Output is entrywise identical to [`nim_sequence`]; only the working
/// representation differs.
pub fn nim_sequence_packed(
    game: &SubtractionSet,
    count: usize,
) -> Result<NimSequence, SequenceError> {
    nim_sequence_packed_with_cap(game, count, DEFAULT_SEQUENCE_CAP)
}

/// [`nim_sequence_packed`] with a caller-chosen length cap.
pub fn nim_sequence_packed_with_cap(
    game: &SubtractionSet,
    count: usize,
    cap: usize,
) -> Result<NimSequence, SequenceError> {
    check_request(count, cap)?;
    let mut builder = SequenceBuilder::new(*game);
    builder.extend_to(count);
    Ok(builder.into_sequence())
}

/// Incremental packed-sequence engine.
///
/// Each value depends only on the values `s1`, `s2`, and `s3` positions
/// back, so the sequence extends in place; period detection grows the same
/// prefix instead of recomputing it.
#[derive(Clone, Debug)]
pub struct SequenceBuilder {
    game: SubtractionSet,
    seq: NimSequence,
}

impl SequenceBuilder {
    pub fn new(game: SubtractionSet) -> Self {
        Self {
            game,
            seq: NimSequence::new(),
        }
    }

    #[inline]
    pub fn game(&self) -> &SubtractionSet {
        &self.game
    }

    #[inline]
    pub fn sequence(&self) -> &NimSequence {
        &self.seq
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Grows the sequence to `target` values; no-op if already there.
    pub fn extend_to(&mut self, target: usize) {
        let [s1, s2, s3] = self.game.parts().map(|s| s as usize);
        // Ramp: below s3 not every subtrahend is playable yet.
        for h in self.seq.len()..target.min(s3) {
            let mut seen = 0u8;
            if s1 <= h {
                seen |= 1 << self.seq.get(h - s1);
            }
            if s2 <= h {
                seen |= 1 << self.seq.get(h - s2);
            }
            self.seq.push(seen.trailing_ones() as u8);
        }
        for h in self.seq.len()..target {
            let seen = (1 << self.seq.get(h - s1))
                | (1 << self.seq.get(h - s2))
                | (1u8 << self.seq.get(h - s3));
            self.seq.push(seen.trailing_ones() as u8);
        }
    }

    pub fn into_sequence(self) -> NimSequence {
        self.seq
    }
}
