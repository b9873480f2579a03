//! Observation: Θ samples one member of every collection, Δ cancels opposite
//! members and strips signs, Ξ = Θ ∘ Δ. Also the exact law of those samplers
//! as rational distributions over α-canonical λ-terms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::canon::{alpha_canonical, CanonicalTerm};
use crate::eval::{evaluate, EvalConfig, EvalError};
use crate::syntax::{parse, print, ParseError};
use crate::term::{mk_collection, Level, Sign, Term};

/// Seeded ChaCha8 generator.
///
/// Batch sampling gives draw `i` its own generator, [`Rng::for_sample`],
/// which keeps the seed and selects ChaCha stream `i`; results therefore do
/// not depend on the order in which draws run.
#[derive(Clone, Debug)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn for_sample(seed: u64, index: u64) -> Rng {
        let mut rng = Rng::new(seed);
        rng.inner.set_stream(index);
        rng
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `0..n` by rejection, so no residue is favoured.
    pub fn uniform_below(&mut self, n: usize) -> usize {
        assert!(n > 0, "uniform_below(0)");
        let n = n as u64;
        let limit = n * (u64::MAX / n);
        loop {
            let x = self.next_u64();
            if x < limit {
                return (x % n) as usize;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unobservable: `{offending}` cancels to an empty collection")]
pub struct ObservationFailure {
    pub offending: Term,
}

#[derive(Debug, Error)]
pub enum ObserveError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Observation(#[from] ObservationFailure),
}

/// How opposite members of a collection cancel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CancelMode {
    /// Opposites leave in pairs: `(x, x, ~x)` keeps one `x`.
    #[default]
    Pairwise,
    /// Every member that has an opposite anywhere is removed:
    /// `(x, x, ~x)` is empty.
    Literal,
}

pub fn delta(t: &Term) -> Result<Term, ObservationFailure> {
    delta_with(t, CancelMode::Pairwise)
}

/// Δ: at each collection, cancel opposite members first, then recurse into
/// the survivors; everywhere, drop signs. The result is a λᵖ-term.
pub fn delta_with(t: &Term, mode: CancelMode) -> Result<Term, ObservationFailure> {
    match t {
        Term::Var { name, .. } => Ok(Term::Var {
            name: name.clone(),
            sign: Sign::Pos,
        }),
        Term::Abs { binder, body, .. } => Ok(Term::Abs {
            binder: binder.clone(),
            body: delta_with(body, mode)?.into(),
            sign: Sign::Pos,
        }),
        Term::App(f, a) => Ok(Term::app(delta_with(f, mode)?, delta_with(a, mode)?)),
        Term::Negated(inner) => delta_with(inner, mode),
        Term::Coll(c) => {
            let survivors = cancel(c.members(), mode);
            if survivors.is_empty() {
                return Err(ObservationFailure { offending: t.clone() });
            }
            let members = survivors
                .into_iter()
                .map(|m| delta_with(m, mode))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(mk_collection(members).expect("non-empty"))
        }
    }
}

fn cancel(members: &[Term], mode: CancelMode) -> Vec<&Term> {
    let classes: Vec<CanonicalTerm> = members.iter().map(alpha_canonical).collect();
    let mut count: BTreeMap<&CanonicalTerm, usize> = BTreeMap::new();
    for c in &classes {
        *count.entry(c).or_default() += 1;
    }
    let mut to_remove: BTreeMap<CanonicalTerm, usize> = BTreeMap::new();
    for (c, &n) in &count {
        let Some(opp) = c.opposite() else { continue };
        let m = count.get(&opp).copied().unwrap_or(0);
        let k = match mode {
            CancelMode::Pairwise => n.min(m),
            CancelMode::Literal if m > 0 => n,
            CancelMode::Literal => 0,
        };
        if k > 0 {
            to_remove.insert((*c).clone(), k);
        }
    }
    members
        .iter()
        .zip(&classes)
        .filter(|(_, c)| match to_remove.get_mut(*c) {
            Some(k) if *k > 0 => {
                *k -= 1;
                false
            }
            _ => true,
        })
        .map(|(m, _)| m)
        .collect()
}

/// Θ: replaces every collection, under binders too, by one member drawn
/// uniformly. Draws happen in left-to-right pre-order.
pub fn theta_sample(t: &Term, rng: &mut Rng) -> Term {
    match t {
        Term::Var { .. } => t.clone(),
        Term::Abs { binder, body, sign } => Term::Abs {
            binder: binder.clone(),
            body: theta_sample(body, rng).into(),
            sign: *sign,
        },
        Term::App(f, a) => {
            let f = theta_sample(f, rng);
            Term::app(f, theta_sample(a, rng))
        }
        Term::Coll(c) => {
            let i = rng.uniform_below(c.len());
            theta_sample(&c.members()[i], rng)
        }
        Term::Negated(inner) => Term::Negated(theta_sample(inner, rng).into()),
    }
}

/// Ξ = Θ ∘ Δ.
pub fn xi_sample(t: &Term, rng: &mut Rng) -> Result<Term, ObservationFailure> {
    Ok(theta_sample(&delta(t)?, rng))
}

/// A finite probability measure on α-canonical terms with exact rational
/// weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    support: BTreeMap<CanonicalTerm, BigRational>,
}

fn ratio(p: usize, q: usize) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl Distribution {
    pub fn point(c: CanonicalTerm) -> Distribution {
        Distribution {
            support: BTreeMap::from([(c, BigRational::one())]),
        }
    }

    /// Sums the weights of repeated outcomes and drops zero weights.
    pub fn from_weights(weights: impl IntoIterator<Item = (CanonicalTerm, BigRational)>) -> Distribution {
        let mut support: BTreeMap<CanonicalTerm, BigRational> = BTreeMap::new();
        for (c, p) in weights {
            *support.entry(c).or_insert_with(BigRational::zero) += p;
        }
        support.retain(|_, p| !p.is_zero());
        Distribution { support }
    }

    pub fn probability(&self, t: &Term) -> BigRational {
        self.probability_of(&alpha_canonical(t))
    }

    pub fn probability_of(&self, c: &CanonicalTerm) -> BigRational {
        self.support.get(c).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalTerm, &BigRational)> {
        self.support.iter()
    }

    pub fn total(&self) -> BigRational {
        self.support.values().fold(BigRational::zero(), |a, b| a + b)
    }

    /// Image measure under `f`, e.g. decoding outcomes to integers.
    pub fn pushforward<K: Ord>(&self, mut f: impl FnMut(&CanonicalTerm) -> K) -> BTreeMap<K, BigRational> {
        let mut out: BTreeMap<K, BigRational> = BTreeMap::new();
        for (c, p) in &self.support {
            *out.entry(f(c)).or_insert_with(BigRational::zero) += p;
        }
        out
    }

    /// Serialized form: one `p/q term` line per outcome in canonical order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (c, p) in &self.support {
            out.push_str(&format!("{}/{} {}\n", p.numer(), p.denom(), print(&c.to_term())));
        }
        out
    }

    /// Reads the output of [`Distribution::serialize`]. Blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str) -> Result<Distribution, DistributionParseError> {
        let mut weights = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: String| DistributionParseError { line: i + 1, reason };
            let (p, term) = line.split_once(' ').ok_or_else(|| bad("expected `p/q term`".into()))?;
            let p = BigRational::from_str(p).map_err(|e| bad(format!("bad probability `{p}`: {e}")))?;
            let term = parse(term, Level::Quantum).map_err(|e: ParseError| bad(e.to_string()))?;
            weights.push((alpha_canonical(&term), p));
        }
        Ok(Distribution::from_weights(weights))
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct DistributionParseError {
    pub line: usize,
    pub reason: String,
}

/// Proportions of the top-level members of `t` (after Δ if `t` is signed),
/// each member compared as a whole.
pub fn member_distribution(t: &Term) -> Result<Distribution, ObservationFailure> {
    let t = if t.is_sign_free() { t.clone() } else { delta(t)? };
    let n = t.cardinality();
    Ok(Distribution::from_weights(
        t.members().iter().map(|m| (alpha_canonical(m), ratio(1, n))),
    ))
}

/// The exact law of [`xi_sample`] (of [`theta_sample`] on λᵖ input).
pub fn exact_distribution(t: &Term) -> Result<Distribution, ObservationFailure> {
    let observable = delta(t)?;
    Ok(Distribution {
        support: law(&alpha_canonical(&observable)),
    })
}

type Law = BTreeMap<CanonicalTerm, BigRational>;

// Outcomes contain no collections, so they are already canonical.
fn law(c: &CanonicalTerm) -> Law {
    match c {
        CanonicalTerm::Free { .. } | CanonicalTerm::Bound { .. } => BTreeMap::from([(c.clone(), BigRational::one())]),
        CanonicalTerm::Abs { sign, body } => law(body)
            .into_iter()
            .map(|(b, p)| {
                (
                    CanonicalTerm::Abs {
                        sign: *sign,
                        body: Box::new(b),
                    },
                    p,
                )
            })
            .collect(),
        CanonicalTerm::Negated(inner) => law(inner)
            .into_iter()
            .map(|(b, p)| (CanonicalTerm::Negated(Box::new(b)), p))
            .collect(),
        CanonicalTerm::App(f, a) => {
            let (lf, la) = (law(f), law(a));
            let mut out = Law::new();
            for (x, p) in &lf {
                for (y, q) in &la {
                    let key = CanonicalTerm::App(Box::new(x.clone()), Box::new(y.clone()));
                    *out.entry(key).or_insert_with(BigRational::zero) += p * q;
                }
            }
            out
        }
        CanonicalTerm::Coll(ms) => {
            let w = ratio(1, ms.len());
            let mut out = Law::new();
            for m in ms {
                for (x, p) in law(m) {
                    *out.entry(x).or_insert_with(BigRational::zero) += p * &w;
                }
            }
            out
        }
    }
}

/// Definition-3 indistinguishability: the two measures coincide.
pub fn statistically_indistinguishable(a: &Distribution, b: &Distribution) -> bool {
    a == b
}

/// Evaluate, then observe according to `cfg.level`: nothing for λ, Θ for
/// λᵖ, Ξ for λᑫ.
pub fn observe_program(t: &Term, cfg: &EvalConfig, rng: &mut Rng) -> Result<Term, ObserveError> {
    let v = evaluate(t, cfg)?;
    Ok(match cfg.level {
        Level::Lambda => v,
        Level::Probabilistic => theta_sample(&v, rng),
        Level::Quantum => xi_sample(&v, rng)?,
    })
}

/// Exact law of [`observe_program`].
pub fn observation_law(t: &Term, cfg: &EvalConfig) -> Result<Distribution, ObserveError> {
    let v = evaluate(t, cfg)?;
    Ok(match cfg.level {
        Level::Lambda => Distribution::point(alpha_canonical(&v)),
        _ => exact_distribution(&v)?,
    })
}
