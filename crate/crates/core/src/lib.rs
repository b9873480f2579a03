//! Interpreter and analysis toolkit for the λ-calculus and its two
//! extensions: λᵖ (collections observed by uniform sampling) and λᑫ (signed
//! collections whose opposite members cancel before observation).
//!
//! The pipeline is `syntax::parse` → `env::Env::resolve` → `eval::evaluate`
//! → `observe::{theta_sample, xi_sample, exact_distribution}`.

pub mod canon;
pub mod env;
pub mod eval;
pub mod gen;
pub mod observe;
pub mod prelude;
pub mod rewrite;
pub mod syntax;
pub mod term;

pub use canon::{alpha_canonical, term_equal, CanonicalTerm};
pub use env::Env;
pub use eval::{evaluate, is_value, EvalConfig, EvalError, EvalErrorKind};
pub use observe::{
    delta, exact_distribution, member_distribution, observe_program, statistically_indistinguishable,
    theta_sample, xi_sample, CancelMode, Distribution, ObservationFailure, ObserveError, Rng,
};
pub use prelude::sat::{build_check, sat_observe, BoolFormula, SatOutcome};
pub use prelude::{builtin, church, decode_church, decode_int, int_term};
pub use rewrite::{
    beta_gamma_step, gamma_normalize, gamma_step, scale, sign_concat, substitute, RedexPath, RewriteError,
    Strategy,
};
pub use syntax::{parse, parse_program, print, ParseError, SourceProgram};
pub use term::{mk_collection, EmptyCollection, Level, Name, Sign, Term};

/// Any failure of the parse → evaluate → observe pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Observation(#[from] ObservationFailure),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

impl From<ObserveError> for Error {
    fn from(e: ObserveError) -> Error {
        match e {
            ObserveError::Eval(e) => Error::Eval(e),
            ObserveError::Observation(e) => Error::Observation(e),
        }
    }
}
