//! Satisfiability by superposition: every truth assignment is checked at
//! once, `REMOVE-F` turns each failing check into a cancelling pair, and the
//! identity `I` is added so that the unsatisfiable case is still observable.
//!
//! An assignment to `v1..vk` is the Church tuple `\f.f b1 ... bk`. The
//! collection of all of them is `TUPLE (T, F) ... (T, F)`, which γ-expands
//! with `v1` varying slowest.

use std::fmt;

use thiserror::Error;

use super::builtin;
use crate::eval::{evaluate, EvalConfig, EvalError};
use crate::observe::{delta, theta_sample, ObservationFailure, Rng};
use crate::term::{Level, Term};

pub const MAX_VARS: usize = 20;

/// A propositional formula over `v1, v2, ...` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoolFormula {
    Var(usize),
    Not(Box<BoolFormula>),
    And(Box<BoolFormula>, Box<BoolFormula>),
    Or(Box<BoolFormula>, Box<BoolFormula>),
}

impl BoolFormula {
    pub fn var(i: usize) -> BoolFormula {
        BoolFormula::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: BoolFormula) -> BoolFormula {
        BoolFormula::Not(Box::new(f))
    }

    pub fn and(a: BoolFormula, b: BoolFormula) -> BoolFormula {
        BoolFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BoolFormula, b: BoolFormula) -> BoolFormula {
        BoolFormula::Or(Box::new(a), Box::new(b))
    }

    /// Largest variable index used.
    pub fn num_vars(&self) -> usize {
        match self {
            BoolFormula::Var(i) => *i,
            BoolFormula::Not(f) => f.num_vars(),
            BoolFormula::And(a, b) | BoolFormula::Or(a, b) => a.num_vars().max(b.num_vars()),
        }
    }

    /// Truth value under `assignment[i - 1]` for `vi`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        match self {
            BoolFormula::Var(i) => assignment[*i - 1],
            BoolFormula::Not(f) => !f.eval(assignment),
            BoolFormula::And(a, b) => a.eval(assignment) && b.eval(assignment),
            BoolFormula::Or(a, b) => a.eval(assignment) || b.eval(assignment),
        }
    }

    /// All assignments to `v1..vk` in the order [`assignments`] produces
    /// them: binary counting with `v1` most significant and `T` before `F`.
    pub fn truth_table(&self, k: usize) -> Vec<bool> {
        (0..1usize << k)
            .map(|row| {
                let a: Vec<bool> = (0..k).map(|i| row >> (k - 1 - i) & 1 == 0).collect();
                self.eval(&a)
            })
            .collect()
    }

    pub fn is_satisfiable(&self) -> bool {
        self.truth_table(self.num_vars()).into_iter().any(|b| b)
    }
}

impl fmt::Display for BoolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolFormula::Var(i) => write!(f, "v{i}"),
            BoolFormula::Not(a) => write!(f, "!{a}"),
            BoolFormula::And(a, b) => write!(f, "({a} & {b})"),
            BoolFormula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("variable v{index} is outside v1..v{k}")]
    VariableOutOfRange { index: usize, k: usize },
    #[error("{0} variables is more than the supported {MAX_VARS}")]
    TooManyVariables(usize),
}

#[derive(Debug, Error)]
pub enum SatError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Observation(#[from] ObservationFailure),
}

fn check_range(f: &BoolFormula, k: usize) -> Result<(), FormulaError> {
    match f {
        BoolFormula::Var(i) if *i == 0 || *i > k => Err(FormulaError::VariableOutOfRange { index: *i, k }),
        BoolFormula::Var(_) => Ok(()),
        BoolFormula::Not(a) => check_range(a, k),
        BoolFormula::And(a, b) | BoolFormula::Or(a, b) => {
            check_range(a, k)?;
            check_range(b, k)
        }
    }
}

fn lambda(src: &str) -> Term {
    crate::syntax::parse(src, Level::Lambda).expect("well-formed connective")
}

fn formula_term(f: &BoolFormula) -> Term {
    match f {
        BoolFormula::Var(i) => Term::var(&format!("v{i}")),
        BoolFormula::Not(a) => Term::app(lambda(r"\p.p (\x.\y.y) (\x.\y.x)"), formula_term(a)),
        BoolFormula::And(a, b) => Term::apps(lambda(r"\p.\q.p q (\x.\y.y)"), [formula_term(a), formula_term(b)]),
        BoolFormula::Or(a, b) => Term::apps(lambda(r"\p.\q.p (\x.\y.x) q"), [formula_term(a), formula_term(b)]),
    }
}

/// The collection of all `2^k` assignment tuples.
pub fn assignments(k: usize) -> Result<Term, FormulaError> {
    if k == 0 || k > MAX_VARS {
        return Err(FormulaError::TooManyVariables(k));
    }
    let vars: Vec<String> = (1..=k).map(|i| format!("b{i}")).collect();
    let mut tuple = Term::apps(Term::var("f"), vars.iter().map(|v| Term::var(v)));
    tuple = Term::abs("f", tuple);
    for v in vars.iter().rev() {
        tuple = Term::abs(v, tuple);
    }
    let both = Term::coll([builtin("T").expect("T"), builtin("F").expect("F")]);
    Ok(Term::apps(tuple, std::iter::repeat_n(both, k)))
}

/// `CHECK_f = \a.a (\v1 ... \vk. f)` over `k = f.num_vars()` variables.
pub fn build_check(f: &BoolFormula) -> Result<Term, FormulaError> {
    build_check_with(f, f.num_vars())
}

pub fn build_check_with(f: &BoolFormula, k: usize) -> Result<Term, FormulaError> {
    if k > MAX_VARS {
        return Err(FormulaError::TooManyVariables(k));
    }
    check_range(f, k)?;
    let mut body = formula_term(f);
    for i in (1..=k).rev() {
        body = Term::abs(&format!("v{i}"), body);
    }
    Ok(Term::abs("a", Term::app(Term::var("a"), body)))
}

/// `CHECK_f` applied to every assignment; evaluates to `2^k` booleans.
pub fn check_all(f: &BoolFormula) -> Result<Term, FormulaError> {
    Ok(Term::app(build_check(f)?, assignments(f.num_vars())?))
}

/// `I, REMOVE-F (CHECK_f ASSIGNMENTS)`.
pub fn sat_term(f: &BoolFormula) -> Result<Term, FormulaError> {
    let removed = Term::app(builtin("REMOVE-F").expect("REMOVE-F"), check_all(f)?);
    Ok(Term::coll([builtin("I").expect("I"), removed]))
}

#[derive(Clone, Copy, Debug)]
pub struct SatConfig {
    pub eval: EvalConfig,
    /// Number of observations; a satisfiable formula is missed with
    /// probability at most `2^-trials`.
    pub trials: u32,
}

impl Default for SatConfig {
    fn default() -> Self {
        SatConfig {
            eval: EvalConfig::default(),
            trials: 20,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SatOutcome {
    /// `T` was observed, which only happens if some assignment satisfies f.
    Satisfiable,
    /// Every observation produced `I`.
    Inconclusive,
}

pub fn sat_observe(f: &BoolFormula, cfg: &SatConfig, rng: &mut Rng) -> Result<SatOutcome, SatError> {
    let eval_cfg = EvalConfig {
        level: Level::Quantum,
        ..cfg.eval
    };
    let value = evaluate(&sat_term(f)?, &eval_cfg)?;
    let observable = delta(&value)?;
    let t = builtin("T").expect("T");
    for _ in 0..cfg.trials.max(1) {
        if crate::canon::term_equal(&theta_sample(&observable, rng), &t) {
            return Ok(SatOutcome::Satisfiable);
        }
    }
    Ok(SatOutcome::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::term_equal;
    use crate::prelude::decode_bool;

    fn v(i: usize) -> BoolFormula {
        BoolFormula::var(i)
    }

    fn checked(f: &BoolFormula) -> Vec<bool> {
        let t = evaluate(&check_all(f).unwrap(), &EvalConfig::default()).unwrap();
        t.members().iter().map(|m| decode_bool(m).unwrap()).collect()
    }

    #[test]
    fn check_matches_truth_table() {
        let xor = BoolFormula::and(
            BoolFormula::or(v(1), v(2)),
            BoolFormula::or(BoolFormula::not(v(1)), BoolFormula::not(v(2))),
        );
        assert_eq!(checked(&xor), xor.truth_table(2));
        assert_eq!(checked(&xor), vec![false, true, true, false]);
        assert_eq!(checked(&v(1)), vec![true, false]);
        let implication = BoolFormula::or(BoolFormula::not(v(1)), v(3));
        assert_eq!(checked(&implication), implication.truth_table(3));
    }

    #[test]
    fn out_of_range_variables() {
        assert_eq!(
            build_check_with(&v(3), 2),
            Err(FormulaError::VariableOutOfRange { index: 3, k: 2 })
        );
        assert!(build_check(&v(0)).is_err());
        assert!(build_check(&v(21)).is_err());
    }

    #[test]
    fn contradiction_is_inconclusive() {
        let f = BoolFormula::and(v(1), BoolFormula::not(v(1)));
        let value = evaluate(&sat_term(&f).unwrap(), &EvalConfig::default()).unwrap();
        assert!(term_equal(&delta(&value).unwrap(), &builtin("I").unwrap()));
        let mut rng = Rng::new(7);
        let out = sat_observe(&f, &SatConfig::default(), &mut rng).unwrap();
        assert_eq!(out, SatOutcome::Inconclusive);
    }

    #[test]
    fn tautology_is_found() {
        let f = BoolFormula::or(v(1), BoolFormula::not(v(1)));
        let mut rng = Rng::new(7);
        assert_eq!(
            sat_observe(&f, &SatConfig::default(), &mut rng).unwrap(),
            SatOutcome::Satisfiable
        );
    }
}
