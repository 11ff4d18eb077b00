//! Certified detection of eventual periods.
//!
//! Nim values of a subtraction game satisfy a recurrence of depth `s3`: the
//! value at heap size `h` is determined by the values at `h - s1`, `h - s2`,
//! and `h - s3`. So if the sequence agrees with itself at lag `p` over `s3`
//! consecutive positions, induction pushes that agreement forward forever.
//! A window match is therefore a finite certificate of eventual periodicity,
//! not a heuristic.

use crate::game::SubtractionSet;
use crate::sequence::{NimSequence, SequenceBuilder, DEFAULT_SEQUENCE_CAP};

/// Controls for [`find_period`] prefix growth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetectionConfig {
    /// Starting prefix length; `None` picks a game-dependent default.
    pub initial_len: Option<usize>,
    /// Hard cap on the prefix length; detection fails beyond this.
    pub max_len: usize,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            initial_len: None,
            max_len: DEFAULT_SEQUENCE_CAP,
        }
    }
}

impl DetectionConfig {
    pub fn with_max_len(max_len: usize) -> Self {
        Self {
            initial_len: None,
            max_len,
        }
    }

    /// First prefix length to try for `game`.
    ///
    /// Observed periods are close to `s1 + s2 + s3`, so four multiples of
    /// the sum plus one certification window catches almost every game on
    /// the first pass; the rest double from here.
    /// The floor of `s3 + 1` wins over `max_len`: the lag scan needs one
    /// full window, and an over-tight cap then fails cleanly instead of
    /// underflowing.
    pub fn initial_for(&self, game: &SubtractionSet) -> usize {
        let sum = game.sum() as usize;
        let s3 = game.s3() as usize;
        let len = self.initial_len.unwrap_or((4 * sum).max(4 * s3) + s3);
        len.min(self.max_len).max(s3 + 1)
    }
}

/// A checked claim that a game's nim sequence is eventually periodic.
///
/// `witness_start` is the start of the matched window inside the prefix of
/// `sequence_length_used` values that the detector examined: positions
/// `witness_start..witness_start + s3` agreed with the positions `period`
/// later. `preperiod` is minimal and `period` is the minimal eventual
/// period (every eventual period is one of its multiples).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodCertificate {
    pub game: SubtractionSet,
    pub preperiod: usize,
    pub period: usize,
    pub witness_start: usize,
    pub sequence_length_used: usize,
}

impl PeriodCertificate {
    /// Re-validates this certificate against a computed prefix.
    ///
    /// Checks the `s3`-wide window agreement at `witness_start` and, when
    /// `preperiod > 0`, that the value just before the preperiod breaks the
    /// pattern (otherwise the preperiod would not be minimal). Returns
    /// `false` if `seq` is too short to contain the witness.
    pub fn check(&self, seq: &NimSequence) -> bool {
        let s3 = self.game.s3() as usize;
        if self.period == 0 || self.witness_start != self.preperiod {
            return false;
        }
        if self.witness_start + self.period + s3 > seq.len() {
            return false;
        }
        if !seq.ranges_equal(self.witness_start, self.witness_start + self.period, s3) {
            return false;
        }
        if self.preperiod > 0 {
            let h = self.preperiod - 1;
            if seq.get(h) == seq.get(h + self.period) {
                return false;
            }
        }
        true
    }
}

/// The requested comparison would read past the end of the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("window [{start}..{start}+{window}) at lag {lag} needs {needed} values but only {available} are computed")]
pub struct WindowOutOfRange {
    pub start: usize,
    pub lag: usize,
    pub window: usize,
    pub needed: usize,
    pub available: usize,
}

/// Does `seq` agree with itself at `lag` over `window` positions from `start`?
///
/// `Ok(true)` with `window >= s3` is exactly the certificate condition: the
/// agreement then propagates to every later position.
pub fn certify_window(
    seq: &NimSequence,
    start: usize,
    lag: usize,
    window: usize,
) -> Result<bool, WindowOutOfRange> {
    let needed = start + lag + window;
    if needed > seq.len() {
        return Err(WindowOutOfRange {
            start,
            lag,
            window,
            needed,
            available: seq.len(),
        });
    }
    Ok(seq.ranges_equal(start, start + lag, window))
}

/// Detection gave up before finding a certifiable period.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DetectionError {
    #[error(
        "no period of {game} certified within {max_len} values \
         (searched lags up to {last_lag} in a {prefix_len}-value prefix)"
    )]
    CapExceeded {
        game: SubtractionSet,
        max_len: usize,
        prefix_len: usize,
        last_lag: usize,
    },
}

/// Finds the minimal eventual period and preperiod of `game`'s nim sequence.
///
/// Computes a prefix, scans lags in increasing order, and accepts the first
/// lag `p` whose final `s3`-wide window matches the window `p` earlier; the
/// preperiod is then found by walking the agreement backward. On failure the
/// prefix doubles, reusing the values already computed, up to
/// `config.max_len`.
///
/// Checking only the latest window is what makes the ascending scan sound:
/// a lag can look periodic early and break later, but a match ending at the
/// prefix tail extends forward forever, and among true eventual periods the
/// minimal one appears first.
///
/// ```
/// use nimperiod::{find_period, DetectionConfig, SubtractionSet};
///
/// let game = SubtractionSet::new(2, 3, 5)?;
/// let cert = find_period(&game, &DetectionConfig::default())?;
/// assert_eq!((cert.preperiod, cert.period), (0, 7));
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn find_period(
    game: &SubtractionSet,
    config: &DetectionConfig,
) -> Result<PeriodCertificate, DetectionError> {
    let s3 = game.s3() as usize;
    let mut builder = SequenceBuilder::new(*game);
    let mut target = config.initial_for(game);
    loop {
        builder.extend_to(target);
        let seq = builder.sequence();
        let len = seq.len();
        let tail = len - s3;
        let mut last_lag = 0;
        for lag in 1..=tail {
            last_lag = lag;
            if !seq.ranges_equal(tail - lag, tail, s3) {
                continue;
            }
            // Certified: agreement over an s3-window at the prefix tail.
            // Walk it backward to the minimal preperiod.
            let mut n0 = tail - lag;
            while n0 > 0 && seq.get(n0 - 1) == seq.get(n0 - 1 + lag) {
                n0 -= 1;
            }
            return Ok(PeriodCertificate {
                game: *game,
                preperiod: n0,
                period: lag,
                witness_start: n0,
                sequence_length_used: len,
            });
        }
        if len >= config.max_len {
            return Err(DetectionError::CapExceeded {
                game: *game,
                max_len: config.max_len,
                prefix_len: len,
                last_lag,
            });
        }
        target = len.saturating_mul(2).min(config.max_len);
    }
}
