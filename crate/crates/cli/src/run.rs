use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use lq_core::{Env, Level, Rng};

use crate::session::{self, Settings};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Print the value.
    Eval,
    /// Print one observed outcome.
    Observe,
    /// Print the exact outcome distribution.
    Dist,
    /// Print a frequency table over repeated observations.
    Sample,
}

#[derive(Clone, Debug)]
pub struct RunRequest {
    /// Inline program text, or a path to a `.lq` file.
    pub source: String,
    pub level: Level,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub samples: u64,
    pub fuel: u64,
    pub trace: bool,
}

/// Reads `source` as a file if such a file exists, as program text otherwise.
pub fn program_text(source: &str) -> Result<String> {
    let path = Path::new(source);
    if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    } else {
        Ok(source.to_string())
    }
}

pub fn entropy_seed() -> u64 {
    use std::hash::{BuildHasher, Hasher};
    std::collections::hash_map::RandomState::new().build_hasher().finish()
}

pub fn run(req: &RunRequest, out: &mut dyn Write) -> Result<()> {
    if req.samples == 0 {
        bail!("--samples must be at least 1");
    }
    let text = program_text(&req.source)?;
    let mut env = Env::prelude();
    let main = env
        .load(&text, req.level)
        .map_err(lq_core::Error::from)?
        .context("the program has no main term to run")?;
    let settings = Settings {
        level: req.level,
        fuel: req.fuel.max(1),
        trace: req.trace,
    };
    match req.mode {
        Mode::Eval => {
            let v = session::value(&main, &settings, out)?;
            writeln!(out, "{}", session::show(&v))?;
        }
        Mode::Dist => session::dist(&main, &settings, out)?,
        Mode::Observe => {
            let seed = req.seed.unwrap_or_else(entropy_seed);
            writeln!(out, "# seed: {seed}")?;
            session::observe(&main, &settings, &mut Rng::new(seed), out)?;
        }
        Mode::Sample => {
            let seed = req.seed.unwrap_or_else(entropy_seed);
            writeln!(out, "# seed: {seed}")?;
            session::sample(&main, &settings, seed, req.samples, out)?;
        }
    }
    Ok(())
}
