//! Evaluation and observation actions shared by `run` and the REPL.

use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use lq_core::canon::alpha_canonical;
use lq_core::observe::observation_law;
use lq_core::prelude::{describe, readback};
use lq_core::rewrite::reduce;
use lq_core::{
    delta, evaluate, print, theta_sample, CanonicalTerm, Distribution, EvalConfig, Level, Rng, Strategy, Term,
};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub level: Level,
    pub fuel: u64,
    pub trace: bool,
}

impl Settings {
    pub fn eval_config(&self) -> EvalConfig {
        EvalConfig::new(self.level).with_fuel(self.fuel)
    }
}

/// Evaluates `t`, first printing the small-step trace when enabled.
pub fn value(t: &Term, settings: &Settings, out: &mut dyn Write) -> Result<Term> {
    if settings.trace {
        let mut failed = None;
        let _ = reduce(t, Strategy::CallByValue, settings.fuel, &mut |step| {
            if failed.is_none() {
                failed = writeln!(out, "{step}").err();
            }
        });
        if let Some(e) = failed {
            return Err(e.into());
        }
    }
    Ok(evaluate(t, &settings.eval_config()).map_err(lq_core::Error::from)?)
}

/// Normal-order readback of an observed λ-term, so that outcomes that denote
/// the same numeral are reported together. Terms without a normal form
/// within the readback budget are shown as they are.
pub fn read_back(c: &CanonicalTerm) -> CanonicalTerm {
    let t = c.to_term();
    match readback(&t) {
        Some(nf) => alpha_canonical(&nf),
        None => c.clone(),
    }
}

/// A printed term followed by its decoded meaning, when it has one.
pub fn show(t: &Term) -> String {
    let printed = print(t);
    match describe(t) {
        Some(d) => format!("{printed}  # {d}"),
        None => printed,
    }
}

pub fn show_canonical(c: &CanonicalTerm) -> String {
    show(&c.to_term())
}

fn observable(v: &Term, level: Level) -> Result<Term> {
    Ok(match level {
        Level::Quantum => delta(v).map_err(lq_core::Error::from)?,
        _ => v.clone(),
    })
}

pub fn observe(t: &Term, settings: &Settings, rng: &mut Rng, out: &mut dyn Write) -> Result<()> {
    let v = value(t, settings, out)?;
    let outcome = match settings.level {
        Level::Lambda => v,
        level => theta_sample(&observable(&v, level)?, rng),
    };
    writeln!(out, "{}", show_canonical(&read_back(&alpha_canonical(&outcome))))?;
    Ok(())
}

pub fn dist(t: &Term, settings: &Settings, out: &mut dyn Write) -> Result<()> {
    if settings.trace {
        value(t, settings, out)?;
    }
    let law = observation_law(t, &settings.eval_config()).map_err(lq_core::Error::from)?;
    let merged = Distribution::from_weights(law.iter().map(|(c, p)| (read_back(c), p.clone())));
    write!(out, "{}", merged.serialize())?;
    Ok(())
}

/// `n` independent observations; draw `i` uses stream `i` of `seed`.
pub fn sample(t: &Term, settings: &Settings, seed: u64, n: u64, out: &mut dyn Write) -> Result<()> {
    let v = value(t, settings, out)?;
    let source = observable(&v, settings.level)?;
    let draws: Vec<CanonicalTerm> = (0..n)
        .into_par_iter()
        .map(|i| match settings.level {
            Level::Lambda => alpha_canonical(&source),
            _ => alpha_canonical(&theta_sample(&source, &mut Rng::for_sample(seed, i))),
        })
        .collect();
    let mut raw: BTreeMap<CanonicalTerm, u64> = BTreeMap::new();
    for d in draws {
        *raw.entry(d).or_default() += 1;
    }
    let mut counts: BTreeMap<CanonicalTerm, u64> = BTreeMap::new();
    for (c, k) in raw {
        *counts.entry(read_back(&c)).or_default() += k;
    }
    writeln!(out, "# samples: {n}")?;
    for (c, k) in counts {
        writeln!(out, "{k}/{n} {}", show_canonical(&c))?;
    }
    Ok(())
}
