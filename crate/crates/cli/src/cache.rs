//! On-disk Bell-number cache.
//!
//! Format: the first line is exactly `BELLCACHE v1`; line `k + 2` holds
//! `B_k` in decimal without sign, padding or leading zeros. Every line ends
//! with a newline.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use stirling_core::combinatorics::BellSequence;

pub const HEADER: &str = "BELLCACHE v1";

/// Indices checked against the binomial recurrence when loading.
const RECURRENCE_SAMPLES: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}, line {line}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl CacheError {
    /// 1-based line number of a format violation.
    pub fn line(&self) -> Option<usize> {
        match self {
            Self::Format { line, .. } => Some(*line),
            Self::Io { .. } => None,
        }
    }
}

fn format_error(path: &Path, line: usize, message: impl Into<String>) -> CacheError {
    CacheError::Format {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Parses cache text. A header-only file yields the sequence holding just
/// `B_0`.
pub fn parse_bell_cache(path: &Path, text: &str) -> Result<BellSequence, CacheError> {
    let Some(body) = text.strip_suffix('\n') else {
        let line = text.split('\n').count();
        return Err(format_error(path, line, "missing final newline"));
    };
    let mut lines = body.split('\n');
    if lines.next() != Some(HEADER) {
        return Err(format_error(path, 1, format!("expected header `{HEADER}`")));
    }
    let mut values = Vec::new();
    for (index, raw) in lines.enumerate() {
        let line = index + 2;
        let canonical = !raw.is_empty()
            && raw.bytes().all(|b| b.is_ascii_digit())
            && (raw == "0" || !raw.starts_with('0'));
        if !canonical {
            return Err(format_error(path, line, format!("not a canonical decimal integer: {raw:?}")));
        }
        values.push(raw.parse::<BigUint>().expect("digits checked above"));
    }
    for (k, v) in values.iter().take(2).enumerate() {
        if *v != BigUint::from(1u8) {
            return Err(format_error(path, k + 2, format!("B_{k} must be 1")));
        }
    }
    let seq = BellSequence::from_values(values);
    let len = seq.len();
    let stride = (len / RECURRENCE_SAMPLES).max(1);
    let mut samples: Vec<usize> = (0..len).step_by(stride).collect();
    samples.push(len.saturating_sub(2));
    if let Some(k) = seq.check_recurrence(samples) {
        return Err(format_error(path, k + 2, format!("B_{k} violates the Bell recurrence")));
    }
    Ok(seq)
}

pub fn load_bell_cache(path: &Path) -> Result<BellSequence, CacheError> {
    let text = fs::read_to_string(path).map_err(|source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_bell_cache(path, &text)
}

pub fn render_bell_cache(seq: &BellSequence) -> String {
    let mut out = String::with_capacity(HEADER.len() + 1 + seq.len() * 8);
    out.push_str(HEADER);
    out.push('\n');
    for v in seq.values() {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

/// Writes through a sibling temporary file and renames it into place, so an
/// interrupted save never leaves a truncated cache behind.
pub fn save_bell_cache(path: &Path, seq: &BellSequence) -> Result<(), CacheError> {
    let io_error = |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp_name = path.as_os_str().to_owned();
    tmp_name.push(".tmp");
    let tmp = PathBuf::from(tmp_name);
    let mut file = fs::File::create(&tmp).map_err(io_error)?;
    file.write_all(render_bell_cache(seq).as_bytes()).map_err(io_error)?;
    file.sync_all().map_err(io_error)?;
    fs::rename(&tmp, path).map_err(io_error)
}
