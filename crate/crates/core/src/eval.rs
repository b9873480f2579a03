//! Big-step call-by-value evaluation for all three calculi.

use std::fmt;

use thiserror::Error;

use crate::rewrite::{gamma_normalize, has_gamma_redex, scale, substitute};
use crate::term::{mk_collection, Level, Sign, Term};

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Maximum number of β-contractions.
    pub fuel: u64,
    pub level: Level,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            fuel: DEFAULT_FUEL,
            level: Level::Quantum,
        }
    }
}

impl EvalConfig {
    pub fn new(level: Level) -> Self {
        EvalConfig {
            level,
            ..Default::default()
        }
    }

    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel.max(1);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalErrorKind {
    FuelExhausted,
    /// The operator evaluated to a variable.
    Stuck,
    LevelViolation,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub offending: Term,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EvalErrorKind::FuelExhausted => write!(f, "fuel exhausted while reducing {}", self.offending),
            EvalErrorKind::Stuck => write!(f, "evaluation is stuck at {}", self.offending),
            EvalErrorKind::LevelViolation => write!(
                f,
                "{} needs level {}",
                self.offending,
                self.offending.level().short_name()
            ),
        }
    }
}

/// A signed variable, a signed abstraction or a collection of those, with no
/// γ-redex anywhere.
pub fn is_value(t: &Term) -> bool {
    fn shape(t: &Term) -> bool {
        match t {
            Term::Var { .. } | Term::Abs { .. } => true,
            Term::Coll(c) => c.members().iter().all(shape),
            _ => false,
        }
    }
    shape(t) && !has_gamma_redex(t)
}

/// Evaluates `t` to a value.
///
/// Applications evaluate operator then operand. If either value is a
/// collection, the application is expanded into the collection of member
/// applications and each member is evaluated independently; otherwise a
/// signed abstraction `Sλx.P` applied to `v` continues with
/// `γ(S·P[v/x])`.
pub fn evaluate(t: &Term, cfg: &EvalConfig) -> Result<Term, EvalError> {
    if t.level() > cfg.level {
        return Err(EvalError {
            kind: EvalErrorKind::LevelViolation,
            offending: t.clone(),
        });
    }
    let mut ev = Evaluator { fuel: cfg.fuel };
    ev.eval(gamma_normalize(t))
}

struct Evaluator {
    fuel: u64,
}

impl Evaluator {
    /// `t` is γ-normal.
    fn eval(&mut self, mut t: Term) -> Result<Term, EvalError> {
        loop {
            match t {
                Term::Var { .. } | Term::Abs { .. } => return Ok(t),
                Term::Coll(c) => {
                    let members = c
                        .members()
                        .iter()
                        .map(|m| self.eval(m.clone()))
                        .collect::<Result<Vec<_>, _>>()?;
                    return Ok(mk_collection(members).expect("non-empty"));
                }
                Term::Negated(inner) => {
                    let v = self.eval((*inner).clone())?;
                    return Ok(scale(Sign::Neg, v));
                }
                Term::App(f, a) => {
                    let fv = self.eval((*f).clone())?;
                    let av = self.eval((*a).clone())?;
                    if fv.is_collection() || av.is_collection() {
                        let mut apps = Vec::with_capacity(fv.cardinality() * av.cardinality());
                        for fi in fv.members() {
                            for aj in av.members() {
                                apps.push(Term::app(fi.clone(), aj.clone()));
                            }
                        }
                        t = mk_collection(apps).expect("non-empty");
                        continue;
                    }
                    match &fv {
                        Term::Abs { binder, body, sign } => {
                            if self.fuel == 0 {
                                return Err(EvalError {
                                    kind: EvalErrorKind::FuelExhausted,
                                    offending: Term::app(fv.clone(), av),
                                });
                            }
                            self.fuel -= 1;
                            t = gamma_normalize(&scale(*sign, substitute(body, &av, binder)));
                        }
                        _ => {
                            return Err(EvalError {
                                kind: EvalErrorKind::Stuck,
                                offending: Term::app(fv, av),
                            })
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::term_equal;
    use crate::syntax::parse;

    fn q(s: &str) -> Term {
        parse(s, Level::Quantum).unwrap()
    }

    fn eval(s: &str) -> Result<Term, EvalError> {
        evaluate(&q(s), &EvalConfig::default())
    }

    #[test]
    fn value_examples() {
        assert!(is_value(&q(r"\x.x")));
        assert!(!is_value(&q(r"(\x.x) (\y.y)")));
        assert!(is_value(&q(r"\x.x, ~y")));
        assert!(!is_value(&q(r"\x.(a, b) c")));
    }

    #[test]
    fn values_evaluate_to_themselves() {
        for s in [r"\x.x", "y", r"\x.x, ~y", r"~\x.x x"] {
            assert_eq!(eval(s).unwrap(), q(s));
        }
    }

    #[test]
    fn body_of_an_abstraction_is_not_reduced() {
        assert_eq!(eval(r"\y.(\x.x) y").unwrap(), q(r"\y.(\x.x) y"));
    }

    #[test]
    fn collection_operator_is_expanded() {
        let t = eval(r"((\x.(x, ~x)) (\y.y)) (\z.z)").unwrap();
        assert!(term_equal(&t, &q(r"\z.z, ~\z.z")));
    }

    #[test]
    fn sign_of_the_operator_reaches_the_result() {
        assert_eq!(eval(r"(~\x.x) (\y.y)").unwrap(), q(r"~\y.y"));
        assert_eq!(eval(r"(~\x.x) ((\f.f) (\y.y))").unwrap(), q(r"~\y.y"));
    }

    #[test]
    fn negated_application_is_resolved() {
        // a negative abstraction whose body is an application
        let t = eval(r"(~\x.(\y.y) x) (\a.a)").unwrap();
        assert_eq!(t, q(r"~\a.a"));
    }

    #[test]
    fn fuel_exhaustion_on_divergence() {
        let err = evaluate(&q(r"(\x.x x) (\x.x x)"), &EvalConfig::default().with_fuel(100)).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::FuelExhausted);
    }

    #[test]
    fn free_operator_is_stuck() {
        let err = eval("f (\\x.x)").unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::Stuck);
        assert_eq!(err.offending, q(r"f \x.x"));
    }

    #[test]
    fn level_violation() {
        let err = evaluate(&q("a, b"), &EvalConfig::new(Level::Lambda)).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::LevelViolation);
        let err = evaluate(&q("~a"), &EvalConfig::new(Level::Probabilistic)).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::LevelViolation);
    }

    #[test]
    fn fuel_counts_beta_steps_only() {
        let t = q(r"(\x.x) ((\y.y) (a, b))");
        // γ splits the term into two members with two contractions each
        assert!(evaluate(&t, &EvalConfig::default().with_fuel(4)).is_ok());
        assert!(evaluate(&t, &EvalConfig::default().with_fuel(3)).is_err());
    }
}
