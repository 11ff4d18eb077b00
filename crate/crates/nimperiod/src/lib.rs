//! Nim-value sequences of three-element subtraction games, certified
//! eventual periods, and a characterization of the period from the
//! subtraction set alone.
//!
//! A subtraction game `S(s1, s2, s3)` is played on a heap: a move removes
//! `s1`, `s2`, or `s3` tokens, and the player who cannot move loses. Each
//! heap size has a nim value in `{0, 1, 2, 3}` given by the mex recurrence,
//! and the resulting sequence is always eventually periodic. This crate
//!
//! * computes nim sequences ([`nim_sequence`], packed form
//!   [`nim_sequence_packed`]),
//! * finds the minimal preperiod and period with a finite certificate
//!   ([`find_period`], [`PeriodCertificate`]),
//! * predicts the period from `(s1, s2, s3)` alone ([`predict`]): a closed
//!   form when `s3 = s1 + s2`, a gcd-derived candidate set otherwise, and
//! * checks the prediction against measurement, one game at a time
//!   ([`verify_one`]) or in checkpointed parallel sweeps over whole ranges
//!   ([`sweep`], [`resume`]).
//!
//! ```
//! use nimperiod::{find_period, predict, DetectionConfig, Prediction, SubtractionSet};
//!
//! let game = SubtractionSet::new(1, 2, 4)?;
//! let cert = find_period(&game, &DetectionConfig::default())?;
//! assert_eq!((cert.preperiod, cert.period), (0, 3));
//!
//! // The period was predictable without computing any nim values.
//! match predict(&game) {
//!     Prediction::CaseII { candidates } => assert!(candidates.contains(&3)),
//!     Prediction::CaseI { .. } => unreachable!("4 != 1 + 2"),
//! }
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod conjecture;
pub mod enumerate;
pub mod game;
pub mod num;
pub mod period;
pub mod sequence;
pub mod sweep;
pub mod verify;

pub use conjecture::{
    case1_period, case2_candidates, case2_check, classify, predict, Branch, CaseIParams,
    ConjectureError, GameCase, PairSums, Prediction,
};
pub use enumerate::{partition, triple_at, triple_count, triples, triples_slice, Triples};
pub use game::{GameError, SubtractionSet, DEFAULT_MAX_SUBTRAHEND};
pub use num::{gcd, gcd_all};
pub use period::{
    certify_window, find_period, DetectionConfig, DetectionError, PeriodCertificate,
    WindowOutOfRange,
};
pub use sequence::{
    mex, nim_sequence, nim_sequence_packed, nim_sequence_packed_with_cap, nim_sequence_with_cap,
    NimSequence, SequenceBuilder, SequenceError, DEFAULT_SEQUENCE_CAP,
};
pub use sweep::{resume, sweep, SweepConfig, SweepError, SweepOutcome, SweepSummary};
pub use verify::{read_records, verify_one, RecordError, VerificationRecord, VerifyResult};
