//! Checking measured periods against predictions, one game at a time.
//!
//! [`verify_one`] is the unit of work of the verification sweep: measure a
//! game's period, predict it from the subtraction set, compare, and emit a
//! [`VerificationRecord`]. Records serialize to single JSON lines with a
//! fixed field order, so sweep output is byte-stable and diffable.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use crate::conjecture::{case2_check, classify, predict, GameCase, Prediction};
use crate::game::{GameError, SubtractionSet};
use crate::period::{find_period, DetectionConfig, DetectionError};

/// Outcome of verifying one game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyResult {
    /// The period was measured and compared against the prediction.
    Measured {
        preperiod: u64,
        period: u64,
        predicted: Prediction,
        /// Measured period is consistent with the prediction.
        ok: bool,
        /// The matched candidate, for successful candidate-set games.
        matched_candidate: Option<u64>,
        /// Prefix length the detector ended on.
        seq_len: u64,
    },
    /// No period certified within the sequence-length cap.
    DetectionFailed {
        /// Prefix length at which detection gave up.
        seq_len: u64,
    },
}

/// One game's verification outcome, as stored in sweep output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRecord {
    pub game: SubtractionSet,
    pub case: GameCase,
    pub result: VerifyResult,
}

impl VerificationRecord {
    /// Measured and consistent with the prediction.
    pub fn is_ok(&self) -> bool {
        matches!(self.result, VerifyResult::Measured { ok: true, .. })
    }

    /// Measured but inconsistent with the prediction: a counterexample.
    pub fn is_mismatch(&self) -> bool {
        matches!(self.result, VerifyResult::Measured { ok: false, .. })
    }

    /// Detection gave up before certifying a period.
    pub fn is_detection_failure(&self) -> bool {
        matches!(self.result, VerifyResult::DetectionFailed { .. })
    }
}

/// Measures `game`'s period and checks it against the prediction.
///
/// Closed-form games pass when the measured period equals the predicted
/// one; candidate-set games pass when the measured period satisfies
/// [`case2_check`]. A detection failure is recorded, not propagated: sweeps
/// over large ranges must keep going.
///
/// ```
/// use nimperiod::{verify_one, DetectionConfig, SubtractionSet};
///
/// let game = SubtractionSet::new(2, 3, 5)?;
/// let record = verify_one(&game, &DetectionConfig::default());
/// assert!(record.is_ok());
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn verify_one(game: &SubtractionSet, config: &DetectionConfig) -> VerificationRecord {
    let case = classify(game);
    let result = match find_period(game, config) {
        Ok(cert) => {
            let predicted = predict(game);
            let period = cert.period as u64;
            let ok = match &predicted {
                Prediction::CaseI { period: p } => *p == period,
                Prediction::CaseII { .. } => {
                    case2_check(game, period).expect("classify() said the candidate arm applies")
                }
            };
            debug_assert_eq!(ok, predicted.admits(period));
            let matched_candidate = match predicted {
                Prediction::CaseII { .. } if ok => Some(period),
                _ => None,
            };
            VerifyResult::Measured {
                preperiod: cert.preperiod as u64,
                period,
                predicted,
                ok,
                matched_candidate,
                seq_len: cert.sequence_length_used as u64,
            }
        }
        Err(DetectionError::CapExceeded { prefix_len, .. }) => VerifyResult::DetectionFailed {
            seq_len: prefix_len as u64,
        },
    };
    VerificationRecord {
        game: *game,
        case,
        result,
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
enum PredictedWire {
    Exact(u64),
    Candidates(Vec<u64>),
}

/// Field order here is the wire format; serialization follows declaration
/// order, so reordering these fields changes sweep output bytes.
#[derive(serde::Serialize, serde::Deserialize)]
struct Line {
    s1: u32,
    s2: u32,
    s3: u32,
    case: GameCase,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    preperiod: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    predicted: Option<PredictedWire>,
    ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matched_candidate: Option<u64>,
    seq_len: u64,
}

const DETECTION_FAILED: &str = "detection-failed";

/// A record line that could not be parsed or fails its own invariants.
#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error("record is not a valid JSON object: {0}")]
    Json(#[from] serde_json::Error),
    #[error("record names an invalid subtraction set: {0}")]
    InvalidGame(#[from] GameError),
    #[error("inconsistent record: {reason}")]
    Inconsistent { reason: String },
    #[error("cannot read records from {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<RecordError>,
    },
}

fn inconsistent(reason: impl Into<String>) -> RecordError {
    RecordError::Inconsistent {
        reason: reason.into(),
    }
}

impl VerificationRecord {
    /// Serializes to one JSON line (no trailing newline).
    pub fn to_json_line(&self) -> String {
        let (s1, s2, s3) = (self.game.s1(), self.game.s2(), self.game.s3());
        let line = match &self.result {
            VerifyResult::Measured {
                preperiod,
                period,
                predicted,
                ok,
                matched_candidate,
                seq_len,
            } => Line {
                s1,
                s2,
                s3,
                case: self.case,
                status: None,
                preperiod: Some(*preperiod),
                period: Some(*period),
                predicted: Some(match predicted {
                    Prediction::CaseI { period } => PredictedWire::Exact(*period),
                    Prediction::CaseII { candidates } => {
                        PredictedWire::Candidates(candidates.clone())
                    }
                }),
                ok: *ok,
                matched_candidate: *matched_candidate,
                seq_len: *seq_len,
            },
            VerifyResult::DetectionFailed { seq_len } => Line {
                s1,
                s2,
                s3,
                case: self.case,
                status: Some(DETECTION_FAILED.to_owned()),
                preperiod: None,
                period: None,
                predicted: None,
                ok: false,
                matched_candidate: None,
                seq_len: *seq_len,
            },
        };
        serde_json::to_string(&line).expect("record serialization cannot fail")
    }

    /// Parses one JSON line, re-validating the record's internal invariants.
    pub fn parse_json_line(text: &str) -> Result<Self, RecordError> {
        let line: Line = serde_json::from_str(text)?;
        let game = SubtractionSet::new(line.s1, line.s2, line.s3)?;
        if classify(&game) != line.case {
            return Err(inconsistent(format!(
                "case {} does not match the triple {game}",
                line.case
            )));
        }
        let result = match line.status.as_deref() {
            Some(DETECTION_FAILED) => {
                if line.ok {
                    return Err(inconsistent("detection failure marked ok"));
                }
                if line.preperiod.is_some()
                    || line.period.is_some()
                    || line.predicted.is_some()
                    || line.matched_candidate.is_some()
                {
                    return Err(inconsistent("detection failure carries measurement fields"));
                }
                VerifyResult::DetectionFailed {
                    seq_len: line.seq_len,
                }
            }
            Some(other) => return Err(inconsistent(format!("unknown status {other:?}"))),
            None => {
                let (preperiod, period, predicted) =
                    match (line.preperiod, line.period, line.predicted) {
                        (Some(n0), Some(p), Some(pred)) => (n0, p, pred),
                        _ => {
                            return Err(inconsistent(
                                "measured record is missing preperiod, period, or predicted",
                            ))
                        }
                    };
                let predicted = match (line.case, predicted) {
                    (GameCase::CaseI, PredictedWire::Exact(p)) => Prediction::CaseI { period: p },
                    (GameCase::CaseII, PredictedWire::Candidates(candidates)) => {
                        Prediction::CaseII { candidates }
                    }
                    _ => {
                        return Err(inconsistent(
                            "predicted value shape does not match the case",
                        ))
                    }
                };
                let admits = match &predicted {
                    Prediction::CaseI { period: p } => *p == period,
                    Prediction::CaseII { candidates } => candidates.contains(&period),
                };
                if line.ok != admits {
                    return Err(inconsistent(format!(
                        "ok={} disagrees with period {period} vs prediction",
                        line.ok
                    )));
                }
                let expected_match = match predicted {
                    Prediction::CaseII { .. } if line.ok => Some(period),
                    _ => None,
                };
                if line.matched_candidate != expected_match {
                    return Err(inconsistent(format!(
                        "matched_candidate={:?}, expected {expected_match:?}",
                        line.matched_candidate
                    )));
                }
                VerifyResult::Measured {
                    preperiod,
                    period,
                    predicted,
                    ok: line.ok,
                    matched_candidate: line.matched_candidate,
                    seq_len: line.seq_len,
                }
            }
        };
        Ok(Self {
            game,
            case: line.case,
            result,
        })
    }
}

/// Reads a whole record file, one JSON record per line.
pub fn read_records(path: &Path) -> Result<Vec<VerificationRecord>, RecordError> {
    let file = File::open(path).map_err(|source| RecordError::Io {
        path: path.to_owned(),
        source,
    })?;
    let mut records = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| RecordError::Io {
            path: path.to_owned(),
            source,
        })?;
        let record =
            VerificationRecord::parse_json_line(&line).map_err(|source| RecordError::AtLine {
                line: i + 1,
                source: Box::new(source),
            })?;
        records.push(record);
    }
    Ok(records)
}
