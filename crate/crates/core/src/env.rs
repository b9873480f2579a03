//! Named definitions, resolved by substitution before evaluation.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::prelude::prelude_env;
use crate::rewrite::substitute;
use crate::syntax::{parse_program_with, ParseError};
use crate::term::{Level, Name, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("definition of `{name}` mentions undefined `{free}`")]
pub struct OpenDefinition {
    pub name: Name,
    pub free: Name,
}

/// Definitions in the order they were made. Every stored body is closed.
#[derive(Clone, Debug, Default)]
pub struct Env {
    defs: BTreeMap<Name, Term>,
    order: Vec<Name>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    /// A fresh copy of the standard prelude.
    pub fn prelude() -> Env {
        prelude_env().clone()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.defs.contains_key(name)
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.defs.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.order.iter()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Adds (or replaces) a definition. Its body is resolved against the
    /// current definitions and must then be closed.
    pub fn define(&mut self, name: Name, body: &Term) -> Result<(), OpenDefinition> {
        let body = self.resolve(body);
        if let Some(free) = body.free_vars().into_iter().next() {
            return Err(OpenDefinition { name, free });
        }
        if self.defs.insert(name.clone(), body).is_none() {
            self.order.push(name);
        }
        Ok(())
    }

    /// Substitutes every defined free name of `t`; other free names stay.
    pub fn resolve(&self, t: &Term) -> Term {
        let mut out = t.clone();
        for name in t.free_vars() {
            if let Some(def) = self.defs.get(&name) {
                out = substitute(&out, def, &name);
            }
        }
        out
    }

    /// Parses a program, adds its definitions and returns its resolved main
    /// term, if any.
    pub fn load(&mut self, text: &str, level: Level) -> Result<Option<Term>, ParseError> {
        let known = |n: &str| self.contains(n);
        let program = parse_program_with(text, level, &known)?;
        for def in program.definitions {
            // the parser has already rejected unknown names
            self.define(def.name, &def.body).expect("closed definition");
        }
        Ok(program.main.map(|m| self.resolve(&m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn definitions_are_substituted() {
        let mut env = Env::new();
        let main = env.load(r"let id = \x.x; let k = \a.\b.a; k id free", Level::Lambda).unwrap();
        let expected = parse(r"(\a.\b.a) (\x.x) free", Level::Lambda).unwrap();
        assert_eq!(main, Some(expected));
        assert_eq!(env.len(), 2);
    }

    #[test]
    fn open_definitions_are_refused() {
        let mut env = Env::new();
        let err = env.define("bad".into(), &Term::var("y")).unwrap_err();
        assert_eq!(&*err.free, "y");
        assert!(env.is_empty());
    }

    #[test]
    fn binders_shadow_definitions() {
        let env = Env::prelude();
        let t = env.resolve(&parse(r"\T.T", Level::Lambda).unwrap());
        assert_eq!(t, parse(r"\T.T", Level::Lambda).unwrap());
    }

    #[test]
    fn redefinition_replaces() {
        let mut env = Env::new();
        env.define("a".into(), &parse(r"\x.x", Level::Lambda).unwrap()).unwrap();
        env.define("a".into(), &parse(r"\y.\z.y", Level::Lambda).unwrap()).unwrap();
        assert_eq!(env.len(), 1);
        assert_eq!(env.get("a"), Some(&parse(r"\y.\z.y", Level::Lambda).unwrap()));
    }
}
