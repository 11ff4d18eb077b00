//! Three-element subtraction games.

use std::fmt;

/// Largest subtrahend accepted by [`SubtractionSet::new`].
///
/// Keeps certification windows (whose length equals `s3`) comfortably
/// addressable. [`SubtractionSet::with_max`] raises or lowers the bound.
pub const DEFAULT_MAX_SUBTRAHEND: u32 = 65_535;

/// The ordered triple `(s1, s2, s3)` of legal removal amounts.
///
/// A move in the game removes exactly `s1`, `s2`, or `s3` beans from the
/// heap. The constructor enforces `1 <= s1 < s2 < s3`.
///
/// ```
/// use nimperiod::SubtractionSet;
///
/// let game = SubtractionSet::new(2, 3, 5)?;
/// assert_eq!(game.parts(), [2, 3, 5]);
/// assert!(SubtractionSet::new(3, 3, 5).is_err());
/// # Ok::<(), nimperiod::GameError>(())
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubtractionSet {
    s1: u32,
    s2: u32,
    s3: u32,
}

/// Rejected subtraction-set triples.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("subtraction set must satisfy 1 <= s1 < s2 < s3, got ({0}, {1}, {2})")]
    NotStrictlyOrdered(u32, u32, u32),
    #[error("s3 = {s3} exceeds the maximum subtrahend {max}")]
    TooLarge { s3: u32, max: u32 },
}

impl SubtractionSet {
    /// Builds the game `S(s1, s2, s3)`, rejecting triples that are not
    /// strictly increasing, contain zero, or exceed
    /// [`DEFAULT_MAX_SUBTRAHEND`].
    pub fn new(s1: u32, s2: u32, s3: u32) -> Result<Self, GameError> {
        Self::with_max(s1, s2, s3, DEFAULT_MAX_SUBTRAHEND)
    }

    /// Like [`SubtractionSet::new`] with a caller-chosen bound on `s3`.
    pub fn with_max(s1: u32, s2: u32, s3: u32, max: u32) -> Result<Self, GameError> {
        if s1 == 0 || s1 >= s2 || s2 >= s3 {
            return Err(GameError::NotStrictlyOrdered(s1, s2, s3));
        }
        if s3 > max {
            return Err(GameError::TooLarge { s3, max });
        }
        Ok(Self { s1, s2, s3 })
    }

    #[inline]
    pub fn s1(&self) -> u32 {
        self.s1
    }

    #[inline]
    pub fn s2(&self) -> u32 {
        self.s2
    }

    #[inline]
    pub fn s3(&self) -> u32 {
        self.s3
    }

    /// The triple as an array, smallest first.
    #[inline]
    pub fn parts(&self) -> [u32; 3] {
        [self.s1, self.s2, self.s3]
    }

    /// `s1 + s2 + s3`.
    #[inline]
    pub fn sum(&self) -> u64 {
        u64::from(self.s1) + u64::from(self.s2) + u64::from(self.s3)
    }
}

impl fmt::Display for SubtractionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({}, {}, {})", self.s1, self.s2, self.s3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_strictly_increasing_triples() {
        let game = SubtractionSet::new(1, 2, 3).unwrap();
        assert_eq!((game.s1(), game.s2(), game.s3()), (1, 2, 3));
        assert_eq!(game.sum(), 6);
        assert_eq!(game.to_string(), "S(1, 2, 3)");
    }

    #[test]
    fn rejects_unordered_or_zero_triples() {
        for (a, b, c) in [(0, 1, 2), (1, 1, 2), (2, 1, 3), (1, 3, 3), (5, 4, 6)] {
            assert_eq!(
                SubtractionSet::new(a, b, c),
                Err(GameError::NotStrictlyOrdered(a, b, c)),
                "({a}, {b}, {c})"
            );
        }
    }

    #[test]
    fn enforces_subtrahend_bound() {
        assert_eq!(
            SubtractionSet::new(1, 2, 65_536),
            Err(GameError::TooLarge {
                s3: 65_536,
                max: DEFAULT_MAX_SUBTRAHEND
            })
        );
        assert!(SubtractionSet::with_max(1, 2, 65_536, 1 << 20).is_ok());
        assert!(SubtractionSet::with_max(1, 2, 10, 8).is_err());
    }
}
