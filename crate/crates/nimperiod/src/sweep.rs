//! Parallel verification sweeps with durable checkpoints.
//!
//! A sweep verifies every triple in a range and writes one record per line
//! to an output file, in enumeration order, byte-identical for any worker
//! count. Each worker owns a contiguous block of the enumeration and
//! appends to its own shard file; shards are concatenated in worker order
//! at the end, which is exactly enumeration order because blocks are
//! contiguous and sorted.
//!
//! Progress is durable: workers flush their shard and rewrite a checkpoint
//! file (atomically, via a temp file and rename) every
//! `checkpoint_interval` records. [`resume`] picks up a killed sweep from
//! the last checkpoint, discarding any shard bytes written after it.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::conjecture::GameCase;
use crate::enumerate::{partition, triple_count, triples_slice};
use crate::game::{SubtractionSet, DEFAULT_MAX_SUBTRAHEND};
use crate::period::DetectionConfig;
use crate::verify::{verify_one, RecordError, VerificationRecord};

/// Settings for [`sweep`] and [`resume`].
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Smallest subtrahend value, at least 1.
    pub s_min: u32,
    /// Largest subtrahend value, at most [`DEFAULT_MAX_SUBTRAHEND`].
    pub s_max: u32,
    /// Worker thread count.
    pub workers: usize,
    /// Merged output path; sibling state files derive from it.
    pub output_path: PathBuf,
    /// Records each worker writes between checkpoints.
    pub checkpoint_interval: u64,
    /// Period-detection settings applied to every game.
    pub detection: DetectionConfig,
    /// Stop each worker after this many records in this run, leaving a
    /// resumable checkpoint. A testing hook for interruption handling.
    pub record_limit_per_worker: Option<u64>,
}

impl SweepConfig {
    pub fn new(s_min: u32, s_max: u32, output_path: impl Into<PathBuf>) -> Self {
        Self {
            s_min,
            s_max,
            workers: 1,
            output_path: output_path.into(),
            checkpoint_interval: 1024,
            detection: DetectionConfig::default(),
            record_limit_per_worker: None,
        }
    }

    fn validate(&self) -> Result<(), SweepError> {
        let reason = if self.s_min < 1 {
            Some("s_min must be at least 1".to_owned())
        } else if self.s_max <= self.s_min {
            Some(format!(
                "s_max ({}) must exceed s_min ({})",
                self.s_max, self.s_min
            ))
        } else if self.s_max > DEFAULT_MAX_SUBTRAHEND {
            Some(format!(
                "s_max ({}) exceeds the subtrahend bound {DEFAULT_MAX_SUBTRAHEND}",
                self.s_max
            ))
        } else if self.workers == 0 {
            Some("worker count must be at least 1".to_owned())
        } else if self.checkpoint_interval == 0 {
            Some("checkpoint interval must be at least 1".to_owned())
        } else {
            None
        };
        match reason {
            Some(reason) => Err(SweepError::InvalidConfig { reason }),
            None => Ok(()),
        }
    }

    pub fn checkpoint_path(&self) -> PathBuf {
        sibling(&self.output_path, ".checkpoint")
    }

    pub fn mismatch_path(&self) -> PathBuf {
        sibling(&self.output_path, ".mismatches")
    }

    fn shard_path(&self, worker: usize) -> PathBuf {
        sibling(&self.output_path, &format!(".shard{worker}"))
    }

    fn header(&self) -> String {
        format!(
            "nimperiod-checkpoint v1 s_min={} s_max={} workers={}",
            self.s_min, self.s_max, self.workers
        )
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut os = path.as_os_str().to_os_string();
    os.push(suffix);
    PathBuf::from(os)
}

/// A sweep that could not run or complete.
#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {reason}")]
    InvalidConfig { reason: String },
    #[error("nothing to resume: no checkpoint at {}", path.display())]
    NoCheckpoint { path: PathBuf },
    #[error("checkpoint at {} belongs to a different sweep: {reason}", path.display())]
    CheckpointMismatch { path: PathBuf, reason: String },
    #[error("sweep state at {} is corrupt: {reason}", path.display())]
    CorruptState { path: PathBuf, reason: String },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("bad record in sweep state: {0}")]
    Record(#[from] RecordError),
    #[error("merged {merged} records but the range holds {expected} games")]
    CountMismatch { merged: u64, expected: u64 },
}

fn io_ctx(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> SweepError {
    let context = context.into();
    move |source| SweepError::Io { context, source }
}

fn corrupt(path: &Path, reason: impl Into<String>) -> SweepError {
    SweepError::CorruptState {
        path: path.to_owned(),
        reason: reason.into(),
    }
}

/// Tallies from a completed sweep.
#[derive(Clone, Debug)]
pub struct SweepSummary {
    /// Games verified, equal to the triple count of the range.
    pub total: u64,
    /// Games with `s3 = s1 + s2`.
    pub case_i: u64,
    /// Games with `s3 != s1 + s2`.
    pub case_ii: u64,
    /// Measured periods inconsistent with their prediction.
    pub mismatches: u64,
    /// Games whose period was not certified within the length cap.
    pub failures: u64,
    /// Wall time of the run that finished the sweep.
    pub wall: Duration,
}

/// What a sweep run ended as.
#[derive(Clone, Debug)]
pub enum SweepOutcome {
    /// Every game verified and the output merged.
    Complete(SweepSummary),
    /// Stopped at the per-worker record limit; state is resumable.
    Paused { completed: u64, total: u64 },
}

/// Per-worker progress, rewritten atomically after every durable batch.
///
/// Entries hold the last enumeration index each worker has safely written
/// to its shard; `None` means no records yet.
struct Checkpoint {
    path: PathBuf,
    header: String,
    entries: Mutex<Vec<Option<u64>>>,
}

impl Checkpoint {
    fn record(&self, worker: usize, last_index: u64) -> Result<(), SweepError> {
        let mut entries = self.entries.lock().expect("checkpoint lock poisoned");
        entries[worker] = Some(last_index);
        let mut text = String::with_capacity(64 + entries.len() * 24);
        text.push_str(&self.header);
        text.push('\n');
        for (w, entry) in entries.iter().enumerate() {
            match entry {
                Some(idx) => text.push_str(&format!("{w} {idx}\n")),
                None => text.push_str(&format!("{w} -\n")),
            }
        }
        let tmp = sibling(&self.path, ".tmp");
        let mut file = File::create(&tmp).map_err(io_ctx(format!("creating {}", tmp.display())))?;
        file.write_all(text.as_bytes())
            .and_then(|()| file.sync_all())
            .map_err(io_ctx(format!("writing {}", tmp.display())))?;
        fs::rename(&tmp, &self.path).map_err(io_ctx(format!("publishing {}", self.path.display())))
    }
}

fn load_checkpoint(
    path: &Path,
    expected_header: &str,
    blocks: &[Range<u64>],
) -> Result<Vec<Option<u64>>, SweepError> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == ErrorKind::NotFound => {
            return Err(SweepError::NoCheckpoint {
                path: path.to_owned(),
            })
        }
        Err(source) => return Err(io_ctx(format!("reading {}", path.display()))(source)),
    };
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != expected_header {
        return Err(if header.starts_with("nimperiod-checkpoint") {
            SweepError::CheckpointMismatch {
                path: path.to_owned(),
                reason: format!("found \"{header}\", expected \"{expected_header}\""),
            }
        } else {
            corrupt(path, "missing checkpoint header")
        });
    }
    let mut entries = vec![None; blocks.len()];
    let mut seen = 0usize;
    for line in lines {
        let mut parts = line.split_whitespace();
        let (w, idx) = match (parts.next(), parts.next(), parts.next()) {
            (Some(w), Some(idx), None) => (w, idx),
            _ => return Err(corrupt(path, format!("malformed progress line \"{line}\""))),
        };
        if w != seen.to_string() {
            return Err(corrupt(
                path,
                format!("expected worker {seen}, found \"{w}\""),
            ));
        }
        if seen >= blocks.len() {
            return Err(corrupt(path, "more progress lines than workers"));
        }
        if idx != "-" {
            let idx: u64 = idx
                .parse()
                .map_err(|_| corrupt(path, format!("bad index \"{idx}\"")))?;
            if !blocks[seen].contains(&idx) {
                return Err(corrupt(
                    path,
                    format!(
                        "worker {seen} index {idx} outside its block {:?}",
                        blocks[seen]
                    ),
                ));
            }
            entries[seen] = Some(idx);
        }
        seen += 1;
    }
    if seen != blocks.len() {
        return Err(corrupt(
            path,
            format!("{seen} progress lines for {} workers", blocks.len()),
        ));
    }
    Ok(entries)
}

fn remove_if_exists(path: &Path) -> Result<(), SweepError> {
    match fs::remove_file(path) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == ErrorKind::NotFound => Ok(()),
        Err(source) => Err(io_ctx(format!("removing {}", path.display()))(source)),
    }
}

/// Cuts a shard back to its first `keep` records.
fn truncate_shard(path: &Path, keep: u64) -> Result<(), SweepError> {
    let file = match File::open(path) {
        Ok(file) => file,
        Err(e) if e.kind() == ErrorKind::NotFound && keep == 0 => return Ok(()),
        Err(e) if e.kind() == ErrorKind::NotFound => {
            return Err(corrupt(
                path,
                format!("checkpoint claims {keep} records but the shard is missing"),
            ))
        }
        Err(source) => return Err(io_ctx(format!("opening {}", path.display()))(source)),
    };
    let mut reader = BufReader::new(file);
    let mut buf = Vec::new();
    let mut bytes = 0u64;
    for i in 0..keep {
        buf.clear();
        let n = reader
            .read_until(b'\n', &mut buf)
            .map_err(io_ctx(format!("scanning {}", path.display())))?;
        if n == 0 || buf.last() != Some(&b'\n') {
            return Err(corrupt(
                path,
                format!("checkpoint claims {keep} records but the shard holds {i} complete lines"),
            ));
        }
        bytes += n as u64;
    }
    drop(reader);
    OpenOptions::new()
        .write(true)
        .open(path)
        .and_then(|f| f.set_len(bytes))
        .map_err(io_ctx(format!("truncating {}", path.display())))
}

/// Verifies every triple in the configured range, starting fresh.
///
/// Any state left by a previous sweep at the same output path is
/// discarded first.
pub fn sweep(config: &SweepConfig) -> Result<SweepOutcome, SweepError> {
    run(config, false)
}

/// Picks up an interrupted sweep from its checkpoint.
///
/// The configuration must match the one checkpointed (same range and
/// worker count). Records already durable are not recomputed; shard bytes
/// past the checkpoint are discarded.
pub fn resume(config: &SweepConfig) -> Result<SweepOutcome, SweepError> {
    run(config, true)
}

fn run(config: &SweepConfig, resuming: bool) -> Result<SweepOutcome, SweepError> {
    config.validate()?;
    let started = Instant::now();
    let total = triple_count(config.s_min, config.s_max);
    let blocks = partition(total, config.workers);
    let checkpoint_path = config.checkpoint_path();

    let entries = if resuming {
        load_checkpoint(&checkpoint_path, &config.header(), &blocks)?
    } else {
        remove_if_exists(&checkpoint_path)?;
        remove_if_exists(&config.mismatch_path())?;
        for w in 0..config.workers {
            remove_if_exists(&config.shard_path(w))?;
        }
        vec![None; config.workers]
    };

    // Records per worker already durable from previous runs.
    let done: Vec<u64> = entries
        .iter()
        .zip(&blocks)
        .map(|(entry, block)| entry.map_or(0, |idx| idx + 1 - block.start))
        .collect();
    if resuming {
        for (w, &durable) in done.iter().enumerate() {
            truncate_shard(&config.shard_path(w), durable)?;
        }
    }

    let checkpoint = Checkpoint {
        path: checkpoint_path,
        header: config.header(),
        entries: Mutex::new(entries),
    };
    let paused = AtomicBool::new(false);

    let results: Vec<Result<u64, SweepError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..config.workers)
            .map(|w| {
                let block = blocks[w].clone();
                let already = done[w];
                let checkpoint = &checkpoint;
                let paused = &paused;
                scope.spawn(move || worker_run(config, w, block, already, checkpoint, paused))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut completed = 0u64;
    for result in results {
        completed += result?;
    }

    if paused.load(Ordering::Relaxed) {
        return Ok(SweepOutcome::Paused { completed, total });
    }
    merge(config, total, started.elapsed())
}

fn worker_run(
    config: &SweepConfig,
    worker: usize,
    block: Range<u64>,
    already: u64,
    checkpoint: &Checkpoint,
    paused: &AtomicBool,
) -> Result<u64, SweepError> {
    let shard_path = config.shard_path(worker);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&shard_path)
        .map_err(io_ctx(format!("opening {}", shard_path.display())))?;
    let mut out = std::io::BufWriter::new(file);
    let flush = |out: &mut std::io::BufWriter<File>| {
        out.flush()
            .and_then(|()| out.get_ref().sync_data())
            .map_err(io_ctx(format!("flushing {}", shard_path.display())))
    };

    let start = block.start + already;
    let mut produced = 0u64;
    let mut since_checkpoint = 0u64;
    for (offset, (s1, s2, s3)) in triples_slice(
        config.s_min,
        config.s_max,
        start,
        block.end.saturating_sub(start),
    )
    .enumerate()
    {
        if config
            .record_limit_per_worker
            .is_some_and(|lim| produced >= lim)
        {
            paused.store(true, Ordering::Relaxed);
            break;
        }
        let game = SubtractionSet::new(s1, s2, s3).expect("enumerated triples are valid games");
        let record = verify_one(&game, &config.detection);
        out.write_all(record.to_json_line().as_bytes())
            .and_then(|()| out.write_all(b"\n"))
            .map_err(io_ctx(format!("writing {}", shard_path.display())))?;
        produced += 1;
        since_checkpoint += 1;
        if since_checkpoint >= config.checkpoint_interval {
            flush(&mut out)?;
            checkpoint.record(worker, start + offset as u64)?;
            since_checkpoint = 0;
        }
    }
    if produced > 0 {
        flush(&mut out)?;
        checkpoint.record(worker, start + produced - 1)?;
    }
    Ok(already + produced)
}

fn merge(config: &SweepConfig, expected: u64, wall: Duration) -> Result<SweepOutcome, SweepError> {
    let tmp = sibling(&config.output_path, ".tmp");
    let file = File::create(&tmp).map_err(io_ctx(format!("creating {}", tmp.display())))?;
    let mut out = std::io::BufWriter::new(file);
    let mut summary = SweepSummary {
        total: 0,
        case_i: 0,
        case_ii: 0,
        mismatches: 0,
        failures: 0,
        wall,
    };
    let mut mismatch_lines = Vec::new();
    for w in 0..config.workers {
        let shard = config.shard_path(w);
        let reader = File::open(&shard).map_err(io_ctx(format!("opening {}", shard.display())))?;
        for line in BufReader::new(reader).lines() {
            let line = line.map_err(io_ctx(format!("reading {}", shard.display())))?;
            let record = VerificationRecord::parse_json_line(&line)?;
            summary.total += 1;
            match record.case {
                GameCase::CaseI => summary.case_i += 1,
                GameCase::CaseII => summary.case_ii += 1,
            }
            if record.is_mismatch() {
                summary.mismatches += 1;
                mismatch_lines.push(line.clone());
            }
            if record.is_detection_failure() {
                summary.failures += 1;
            }
            out.write_all(line.as_bytes())
                .and_then(|()| out.write_all(b"\n"))
                .map_err(io_ctx(format!("writing {}", tmp.display())))?;
        }
    }
    if summary.total != expected {
        return Err(SweepError::CountMismatch {
            merged: summary.total,
            expected,
        });
    }
    out.flush()
        .and_then(|()| out.get_ref().sync_all())
        .map_err(io_ctx(format!("flushing {}", tmp.display())))?;
    fs::rename(&tmp, &config.output_path).map_err(io_ctx(format!(
        "publishing {}",
        config.output_path.display()
    )))?;

    let mismatch_path = config.mismatch_path();
    if mismatch_lines.is_empty() {
        remove_if_exists(&mismatch_path)?;
    } else {
        let mut text = mismatch_lines.join("\n");
        text.push('\n');
        fs::write(&mismatch_path, text)
            .map_err(io_ctx(format!("writing {}", mismatch_path.display())))?;
    }
    for w in 0..config.workers {
        remove_if_exists(&config.shard_path(w))?;
    }
    remove_if_exists(&config.checkpoint_path())?;
    Ok(SweepOutcome::Complete(summary))
}
