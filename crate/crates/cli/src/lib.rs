//! Command-line plumbing for `cayley-ic`: job execution with an optional
//! result cache, output rendering and the verification harness.

pub mod cache;
pub mod record;
pub mod render;
pub mod verify;

use std::time::Instant;

use cayley_ic::cayley::{compute, Method};
use cayley_ic::pipeline::WeilMode;
use cayley_ic::ComponentSpec;
use thiserror::Error;

use crate::cache::Cache;
use crate::record::{JobKey, ResultRecord};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const INCONSISTENCY: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Inconsistency(String),
    #[error("{0} verification check(s) failed")]
    VerifyFailed(usize),
    #[error(transparent)]
    Cache(#[from] cache::CacheError),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => exit::INVALID,
            CliError::Inconsistency(_) => exit::INCONSISTENCY,
            CliError::VerifyFailed(_) | CliError::Cache(_) | CliError::Other(_) => exit::FAILURE,
        }
    }
}

impl From<cayley_ic::Error> for CliError {
    fn from(e: cayley_ic::Error) -> CliError {
        match e {
            cayley_ic::Error::InvalidParameter(_) | cayley_ic::Error::Precondition(_) => {
                CliError::Invalid(e.to_string())
            }
            cayley_ic::Error::Inconsistency(_) => CliError::Inconsistency(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

/// Computes `spec`, consulting and filling `cache` when given. Cache write
/// failures are logged and never change the result.
pub fn run_job(
    spec: &ComponentSpec,
    method: Method,
    mode: WeilMode,
    cache: Option<&Cache>,
) -> Result<ResultRecord, CliError> {
    let spec = ComponentSpec::new(spec.group, spec.rank, spec.genus, spec.twist)?;
    let key = JobKey::new(&spec, method, mode);
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        log::debug!("cache hit for {}", key.canonical());
        return Ok(hit);
    }
    let start = Instant::now();
    let invariant = compute(&spec, method, mode)?;
    let record = ResultRecord::from_invariant(key, &invariant, start.elapsed());
    if let Some(cache) = cache {
        if let Err(e) = cache.put(&record) {
            log::warn!("{e}");
        }
    }
    Ok(record)
}
