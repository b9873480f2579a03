use std::io::{BufRead, IsTerminal, Write};

use anyhow::{anyhow, bail, Context, Result};
use lq_core::{parse, Env, Level, Rng, Term};

use crate::run::program_text;
use crate::session::{self, Settings};

const HELP: &str = "\
  <term>              evaluate and print the value
  let NAME = TERM     add a definition
  :obs <term>         evaluate and observe once
  :dist <term>        exact outcome distribution
  :sample <n> <term>  frequency table of n observations
  :trace on|off       print reduction steps
  :seed <n>           restart the generator from seed n
  :fuel <n>           β-step budget
  :level [l|p|q]      show or set the calculus
  :load <file>        read definitions (and run the main term)
  :quit";

struct Repl {
    env: Env,
    settings: Settings,
    rng: Rng,
}

impl Repl {
    fn term(&self, text: &str) -> Result<Term> {
        let t = parse(text, self.settings.level).map_err(lq_core::Error::from)?;
        Ok(self.env.resolve(&t))
    }

    fn line(&mut self, line: &str, out: &mut dyn Write) -> Result<bool> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(true);
        }
        let Some(directive) = line.strip_prefix(':') else {
            if line.starts_with("let ") {
                let text = if line.ends_with(';') { line.to_string() } else { format!("{line};") };
                return self.load(&text, out).map(|_| true);
            }
            let v = session::value(&self.term(line)?, &self.settings, out)?;
            writeln!(out, "{}", session::show(&v))?;
            return Ok(true);
        };
        let (cmd, rest) = directive.split_once(char::is_whitespace).unwrap_or((directive, ""));
        let rest = rest.trim();
        match cmd {
            "q" | "quit" => return Ok(false),
            "help" => writeln!(out, "{HELP}")?,
            "obs" => session::observe(&self.term(rest)?, &self.settings, &mut self.rng, out)?,
            "dist" => session::dist(&self.term(rest)?, &self.settings, out)?,
            "sample" => {
                let (n, term) = rest.split_once(char::is_whitespace).context("usage: :sample <n> <term>")?;
                let n: u64 = n.parse().context("sample count")?;
                if n == 0 {
                    bail!("sample count must be at least 1");
                }
                let seed = self.rng.next_u64();
                session::sample(&self.term(term)?, &self.settings, seed, n, out)?;
            }
            "trace" => match rest {
                "on" => self.settings.trace = true,
                "off" => self.settings.trace = false,
                _ => bail!("usage: :trace on|off"),
            },
            "seed" => {
                let seed: u64 = rest.parse().context("usage: :seed <n>")?;
                self.rng = Rng::new(seed);
            }
            "fuel" => {
                let fuel: u64 = rest.parse().context("usage: :fuel <n>")?;
                self.settings.fuel = fuel.max(1);
            }
            "level" if rest.is_empty() => writeln!(out, "{}", self.settings.level.short_name())?,
            "level" => {
                self.settings.level =
                    Level::from_short_name(rest).ok_or_else(|| anyhow!("unknown level `{rest}`"))?;
            }
            "load" => {
                let text = program_text(rest)?;
                if text == rest {
                    bail!("no such file: {rest}");
                }
                self.load(&text, out)?;
            }
            other => bail!("unknown directive `:{other}` (try :help)"),
        }
        Ok(true)
    }

    fn load(&mut self, text: &str, out: &mut dyn Write) -> Result<()> {
        let main = self.env.load(text, self.settings.level).map_err(lq_core::Error::from)?;
        if let Some(t) = main {
            let v = session::value(&t, &self.settings, out)?;
            writeln!(out, "{}", session::show(&v))?;
        }
        Ok(())
    }
}

pub fn repl(level: Level, seed: u64, fuel: u64) -> Result<()> {
    let mut state = Repl {
        env: Env::prelude(),
        settings: Settings {
            level,
            fuel,
            trace: false,
        },
        rng: Rng::new(seed),
    };
    let stdin = std::io::stdin();
    let interactive = stdin.is_terminal();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "# seed: {seed}")?;
    let mut lines = stdin.lock().lines();
    loop {
        if interactive {
            write!(out, "lq> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        match state.line(&line?, &mut out) {
            Ok(true) => {}
            Ok(false) => break,
            Err(e) => writeln!(out, "error: {e:#}")?,
        }
        out.flush()?;
    }
    Ok(())
}
