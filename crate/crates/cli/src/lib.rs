//! Batch front end over the curvature crates.  Three commands: `verify`
//! samples a metric spec and checks the quadratic curvature condition,
//! `construct` builds a family member and writes chart/trajectory/report
//! files, `sweep` runs a parameter grid into one flat table.
//!
//! All float output is serialized with 17 significant digits, so identical
//! inputs produce byte-identical reports.

use std::io::Write as IoWrite;

use thiserror::Error;

pub mod construct;
pub mod spec;
pub mod sweep;
pub mod verify;

/// Process-level failure carrying its exit code: input errors exit 2,
/// numerical errors 3.  A failed verification is not an error; commands
/// report it as a flag and the binary exits 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("numerical error: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

pub fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn numeric_err(e: impl std::fmt::Display) -> CliError {
    CliError::Numeric(e.to_string())
}

/// Builds the global thread pool honoring the `WEL_THREADS` cap.  Call once
/// at startup; later calls are ignored.
pub fn init_threads() {
    if let Ok(v) = std::env::var("WEL_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

/// One float, 17 significant digits, lowercase exponent.  Used for every
/// number in reports and tables.
pub fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

struct Sig17;

impl serde_json::ser::Formatter for Sig17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + IoWrite,
    {
        write!(writer, "{}", fmt17(value))
    }
}

/// JSON with fixed-width float formatting; compact, deterministic.
pub fn to_json_17<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Numeric(format!("serialization failed: {e}")))?;
    String::from_utf8(buf).map_err(|e| CliError::Numeric(e.to_string()))
}

/// Writes `text` to `path`, or to stdout when no path is given.  File writes
/// go through a single thread; sampling may be parallel but output is not.
pub fn emit(out: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
