//! Reference terms: booleans, pairs, Church numerals, signed integers, the
//! fixed-point combinator, the random walk `W`, the generator `R` and
//! `REMOVE-F`, plus encoders and decoders between host values and terms.

pub mod sat;

use std::sync::OnceLock;

use crate::env::Env;
use crate::rewrite::normalize;
use crate::term::{Level, Name, Sign, Term};

/// The prelude source, compiled into the binary.
pub const PRELUDE_SOURCE: &str = include_str!("prelude.lq");

/// Normal-order step budget used when reading results back.
pub const READBACK_FUEL: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct PreludeEntry {
    pub name: Name,
    /// Closed: every prelude name it mentions has been substituted.
    pub term: Term,
    /// The least calculus the term belongs to.
    pub level: Level,
}

pub fn entries() -> &'static [PreludeEntry] {
    static ENTRIES: OnceLock<Vec<PreludeEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        let env = prelude_env();
        env.names()
            .map(|name| {
                let term = env.get(name).expect("defined").clone();
                PreludeEntry {
                    name: name.clone(),
                    level: term.level(),
                    term,
                }
            })
            .collect()
    })
}

pub(crate) fn prelude_env() -> &'static Env {
    static ENV: OnceLock<Env> = OnceLock::new();
    ENV.get_or_init(|| {
        let mut env = Env::new();
        env.load(PRELUDE_SOURCE, Level::Quantum)
            .unwrap_or_else(|e| panic!("prelude does not parse: {e}"));
        env
    })
}

/// A prelude term by name. `0?` is accepted as an alias of `ZERO?`.
pub fn builtin(name: &str) -> Option<Term> {
    let name = if name == "0?" { "ZERO?" } else { name };
    prelude_env().get(name).cloned()
}

/// The Church numeral `\x.\y.x (x (... y))` with `n` applications.
pub fn church(n: u64) -> Term {
    let mut body = Term::var("y");
    for _ in 0..n {
        body = Term::app(Term::var("x"), body);
    }
    Term::abs("x", Term::abs("y", body))
}

fn truth(b: bool) -> Term {
    if b {
        Term::abs("x", Term::abs("y", Term::var("x")))
    } else {
        Term::abs("x", Term::abs("y", Term::var("y")))
    }
}

/// Signed integer `z` as the normal form of `PAIR flag |z|`, where the flag
/// is `T` for `z >= 0`.
pub fn int_term(z: i64) -> Term {
    let pair = Term::apps(Term::var("f"), [truth(z >= 0), church(z.unsigned_abs())]);
    Term::abs("f", pair)
}

/// The β-normal form of a λ-term, if reached within [`READBACK_FUEL`] steps.
///
/// Call-by-value results such as `S 2` are abstractions whose bodies still
/// contain redexes; decoding compares normal forms.
pub fn readback(t: &Term) -> Option<Term> {
    if !t.is_sign_free() || t.contains_collection() {
        return None;
    }
    normalize(t, READBACK_FUEL).ok()
}

fn as_numeral(t: &Term) -> Option<u64> {
    let Term::Abs { binder: x, body, sign: Sign::Pos } = t else {
        return None;
    };
    let Term::Abs { binder: y, body, sign: Sign::Pos } = &**body else {
        return None;
    };
    if x == y {
        return None;
    }
    let mut n = 0;
    let mut cur: &Term = body;
    loop {
        match cur {
            Term::Var { name, sign: Sign::Pos } if name == y => return Some(n),
            Term::App(f, a) if matches!(&**f, Term::Var { name, sign: Sign::Pos } if name == x) => {
                n += 1;
                cur = a;
            }
            _ => return None,
        }
    }
}

fn as_bool(t: &Term) -> Option<bool> {
    let Term::Abs { binder: x, body, sign: Sign::Pos } = t else {
        return None;
    };
    let Term::Abs { binder: y, body, sign: Sign::Pos } = &**body else {
        return None;
    };
    match &**body {
        Term::Var { name, sign: Sign::Pos } if x != y && name == x => Some(true),
        Term::Var { name, sign: Sign::Pos } if x != y && name == y => Some(false),
        _ => None,
    }
}

pub fn decode_church(t: &Term) -> Option<u64> {
    as_numeral(&readback(t)?)
}

pub fn decode_bool(t: &Term) -> Option<bool> {
    as_bool(&readback(t)?)
}

/// Inverse of [`int_term`]. The non-canonical `(F, 0)` is rejected.
pub fn decode_int(t: &Term) -> Option<i64> {
    let nf = readback(t)?;
    let Term::Abs { binder: f, body, sign: Sign::Pos } = &nf else {
        return None;
    };
    let Term::App(head, magnitude) = &**body else {
        return None;
    };
    let Term::App(fv, flag) = &**head else {
        return None;
    };
    if !matches!(&**fv, Term::Var { name, sign: Sign::Pos } if name == f) {
        return None;
    }
    if flag.has_free_var(f) || magnitude.has_free_var(f) {
        return None;
    }
    let non_negative = as_bool(flag)?;
    let m = i64::try_from(as_numeral(magnitude)?).ok()?;
    match (non_negative, m) {
        (true, m) => Some(m),
        (false, 0) => None,
        (false, m) => Some(-m),
    }
}

/// A short human reading of a result: an integer, a numeral or the name of
/// a prelude term it equals.
pub fn describe(t: &Term) -> Option<String> {
    if let Some(z) = decode_int(t) {
        return Some(format!("int {z}"));
    }
    let nf = readback(t)?;
    match as_numeral(&nf) {
        Some(0) => return Some("0 = F".into()),
        Some(n) => return Some(n.to_string()),
        None => {}
    }
    let canonical = crate::canon::alpha_canonical(&nf);
    entries()
        .iter()
        .find(|e| crate::canon::alpha_canonical(&e.term) == canonical)
        .map(|e| e.name.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::term_equal;
    use crate::eval::{evaluate, EvalConfig};
    use crate::syntax::parse;

    fn run(src: &str) -> Term {
        let t = Env::prelude().resolve(&parse(src, Level::Quantum).unwrap());
        evaluate(&t, &EvalConfig::default()).unwrap()
    }

    #[test]
    fn numerals() {
        assert!(term_equal(&church(0), &parse(r"\x.\y.y", Level::Lambda).unwrap()));
        assert!(term_equal(&church(2), &parse(r"\x.\y.x (x y)", Level::Lambda).unwrap()));
        for n in 0..=50 {
            assert_eq!(decode_church(&church(n)), Some(n));
        }
        assert_eq!(decode_church(&parse(r"\x.x", Level::Lambda).unwrap()), None);
    }

    #[test]
    fn integers_round_trip() {
        for z in -20..=20 {
            assert_eq!(decode_int(&int_term(z)), Some(z));
        }
        assert_eq!(decode_int(&church(1)), None);
        let bad_zero = Term::abs("f", Term::apps(Term::var("f"), [truth(false), church(0)]));
        assert_eq!(decode_int(&bad_zero), None);
    }

    #[test]
    fn every_entry_is_closed() {
        for e in entries() {
            assert!(e.term.free_vars().is_empty(), "{} is open", e.name);
        }
        let level = |n: &str| entries().iter().find(|e| &*e.name == n).unwrap().level;
        assert_eq!(level("Y"), Level::Lambda);
        assert_eq!(level("W"), Level::Probabilistic);
        assert_eq!(level("REMOVE-F"), Level::Quantum);
    }

    #[test]
    fn conditionals() {
        assert_eq!(run("IF T a b"), Term::var("a"));
        assert_eq!(run("IF F a b"), Term::var("b"));
        assert_eq!(decode_bool(&run("ZERO? 0")), Some(true));
        assert_eq!(decode_bool(&run("ZERO? 1")), Some(false));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(decode_church(&run("S 2")), Some(3));
        assert_eq!(decode_church(&run("P 3")), Some(2));
        assert_eq!(decode_church(&run("P 0")), Some(0));
        assert_eq!(decode_int(&run("INT-P INT-ZERO")), Some(-1));
        assert_eq!(decode_int(&run("INT-S (INT-P INT-ZERO)")), Some(0));
        assert_eq!(decode_int(&run("INT-P (INT-P INT-ZERO)")), Some(-2));
        assert_eq!(decode_int(&run("INT-S -2")), Some(-1));
    }

    #[test]
    fn descriptions() {
        assert_eq!(describe(&run("S 2")).as_deref(), Some("3"));
        assert_eq!(describe(&run("INT-P INT-ZERO")).as_deref(), Some("int -1"));
        assert_eq!(describe(&run("IF T T F")).as_deref(), Some("T"));
        assert_eq!(describe(&Term::var("a")), None);
    }

    #[test]
    fn zero_alias() {
        assert_eq!(builtin("0?"), builtin("ZERO?"));
        assert!(builtin("nope").is_none());
    }
}
