//! Command-line driver pieces: Monte-Carlo simulation, the criterion audit
//! and the attack walkthrough, with their renderers.

mod demo;
mod format;
mod mor_cmd;
mod simulate;

use std::io::Write;
use std::path::Path;

pub use demo::{attack_demo, AmplitudeEntry, AttackTrace, DemoStep};
pub use format::{real17, OutputFormat};
pub use mor_cmd::{mor_check_pair, MorCheckOutput};
pub use simulate::{simulate, ConfigEcho, SimulationConfig, SimulationReport};

use crate::error::Result;

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
