//! Config-file handling and flag/file/default precedence.

use serde::Deserialize;

use qap_vdss::SearchBudget;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Unreadable files, malformed instances or CSVs.
    Data,
    /// Inconsistent or invalid settings.
    Config,
    /// Experiments that never reached their target, empty reports.
    Unreached,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn data(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Data, message: message.into() }
    }
    pub fn config(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Config, message: message.into() }
    }
    pub fn unreached(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Unreached, message: message.into() }
    }
}

/// Optional JSON config file; any field may be omitted. Flags win over
/// these values, which win over the built-in defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub solver: Option<String>,
    pub seed: Option<u64>,
    pub runs: Option<u64>,
    pub target: Option<i64>,
    pub normalizer: Option<i64>,
    pub depths: Option<Vec<usize>>,
    pub move_limit: Option<u64>,
    pub rts_iterations: Option<u64>,
    pub workers: Option<usize>,
    pub max_attempts: Option<u64>,
    pub format: Option<String>,
}

impl FileConfig {
    pub fn load(path: Option<&std::path::Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::config(format!("cannot read config {}: {e}", p.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::config(format!("invalid config {}: {e}", p.display())))
            }
        }
    }
}

/// Resolved solver settings after applying precedence.
pub struct Settings {
    pub seed: u64,
    /// Whether the seed was drawn rather than supplied; drawn seeds are
    /// recorded in every output so results stay re-derivable.
    pub seed_was_drawn: bool,
    pub rts_iterations: Option<u64>,
    pub budget: SearchBudget,
    pub workers: usize,
}

pub fn resolve_settings(
    common: &crate::CommonArgs,
    file: &FileConfig,
) -> Result<Settings, CliError> {
    let (seed, seed_was_drawn) = match common.seed.or(file.seed) {
        Some(s) => (s, false),
        None => (entropy_seed(), true),
    };
    let depths = common
        .depths
        .clone()
        .or_else(|| file.depths.clone())
        .unwrap_or_else(|| vec![2, 5]);
    let move_limit = common.move_limit.or(file.move_limit).unwrap_or(100_000);
    let budget = SearchBudget::new(depths, move_limit)
        .map_err(|e| CliError::config(format!("invalid search budget: {e}")))?;
    let workers = match common.workers.or(file.workers) {
        Some(w) if w >= 1 => w,
        Some(w) => return Err(CliError::config(format!("workers must be at least 1, got {w}"))),
        None => env_workers()?,
    };
    Ok(Settings {
        seed,
        seed_was_drawn,
        rts_iterations: common.rts_iterations.or(file.rts_iterations),
        budget,
        workers,
    })
}

fn env_workers() -> Result<usize, CliError> {
    match std::env::var("QAPVDSS_WORKERS") {
        Err(_) => Ok(1),
        Ok(raw) => raw
            .parse::<usize>()
            .ok()
            .filter(|&w| w >= 1)
            .ok_or_else(|| CliError::config(format!("QAPVDSS_WORKERS must be a positive integer, got {raw:?}"))),
    }
}

fn entropy_seed() -> u64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0);
    qap_core::derive_seed(nanos, std::process::id() as u64)
}
