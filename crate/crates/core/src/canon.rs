//! α-canonical forms.
//!
//! Bound variables are replaced by de Bruijn indices and collection members
//! are sorted, so two terms share a canonical form exactly when they are
//! equal up to binder renaming and collection order/nesting.

use std::collections::BTreeSet;

use crate::term::{Name, Sign, Term};

/// Canonical representative of a term's equivalence class.
///
/// The derived `Ord` is the fixed total order on terms: constructor tag,
/// then sign, then name or index, then children lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CanonicalTerm {
    Free { sign: Sign, name: Name },
    Bound { sign: Sign, index: u32 },
    App(Box<CanonicalTerm>, Box<CanonicalTerm>),
    Abs { sign: Sign, body: Box<CanonicalTerm> },
    Coll(Vec<CanonicalTerm>),
    Negated(Box<CanonicalTerm>),
}

pub fn alpha_canonical(t: &Term) -> CanonicalTerm {
    let mut binders = Vec::new();
    canon(t, &mut binders)
}

/// Term identity modulo α-renaming and collection order/nesting.
pub fn term_equal(a: &Term, b: &Term) -> bool {
    a == b || alpha_canonical(a) == alpha_canonical(b)
}

fn canon(t: &Term, binders: &mut Vec<Name>) -> CanonicalTerm {
    match t {
        Term::Var { name, sign } => match binders.iter().rev().position(|b| b == name) {
            Some(index) => CanonicalTerm::Bound {
                sign: *sign,
                index: index as u32,
            },
            None => CanonicalTerm::Free {
                sign: *sign,
                name: name.clone(),
            },
        },
        Term::App(f, a) => CanonicalTerm::App(Box::new(canon(f, binders)), Box::new(canon(a, binders))),
        Term::Abs { binder, body, sign } => {
            binders.push(binder.clone());
            let body = canon(body, binders);
            binders.pop();
            CanonicalTerm::Abs {
                sign: *sign,
                body: Box::new(body),
            }
        }
        Term::Coll(c) => {
            let mut ms: Vec<_> = c.members().iter().map(|m| canon(m, binders)).collect();
            ms.sort();
            CanonicalTerm::Coll(ms)
        }
        Term::Negated(inner) => CanonicalTerm::Negated(Box::new(canon(inner, binders))),
    }
}

const BINDER_NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

impl CanonicalTerm {
    /// The canonical form with its top-level sign flipped, for variables and
    /// abstractions.
    pub fn opposite(&self) -> Option<CanonicalTerm> {
        match self {
            CanonicalTerm::Free { sign, name } => Some(CanonicalTerm::Free {
                sign: sign.flip(),
                name: name.clone(),
            }),
            CanonicalTerm::Bound { sign, index } => Some(CanonicalTerm::Bound {
                sign: sign.flip(),
                index: *index,
            }),
            CanonicalTerm::Abs { sign, body } => Some(CanonicalTerm::Abs {
                sign: sign.flip(),
                body: body.clone(),
            }),
            _ => None,
        }
    }

    /// A named term with deterministic binder names (chosen by binder depth
    /// and never clashing with a free variable).
    pub fn to_term(&self) -> Term {
        let mut free = BTreeSet::new();
        self.collect_free(&mut free);
        let mut names = Vec::new();
        self.build(&free, &mut names)
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            CanonicalTerm::Free { name, .. } => {
                out.insert(name.clone());
            }
            CanonicalTerm::Bound { .. } => {}
            CanonicalTerm::App(f, a) => {
                f.collect_free(out);
                a.collect_free(out);
            }
            CanonicalTerm::Abs { body, .. } => body.collect_free(out),
            CanonicalTerm::Coll(ms) => ms.iter().for_each(|m| m.collect_free(out)),
            CanonicalTerm::Negated(inner) => inner.collect_free(out),
        }
    }

    fn build(&self, free: &BTreeSet<Name>, names: &mut Vec<Name>) -> Term {
        match self {
            CanonicalTerm::Free { sign, name } => Term::Var {
                name: name.clone(),
                sign: *sign,
            },
            CanonicalTerm::Bound { sign, index } => Term::Var {
                name: names[names.len() - 1 - *index as usize].clone(),
                sign: *sign,
            },
            CanonicalTerm::App(f, a) => Term::app(f.build(free, names), a.build(free, names)),
            CanonicalTerm::Abs { sign, body } => {
                let binder = binder_name(names.len(), free);
                names.push(binder.clone());
                let body = body.build(free, names);
                names.pop();
                Term::Abs {
                    binder,
                    body: body.into(),
                    sign: *sign,
                }
            }
            CanonicalTerm::Coll(ms) => Term::coll(ms.iter().map(|m| m.build(free, names))),
            CanonicalTerm::Negated(inner) => Term::Negated(inner.build(free, names).into()),
        }
    }
}

fn binder_name(depth: usize, free: &BTreeSet<Name>) -> Name {
    let mut candidate = match BINDER_NAMES.get(depth) {
        Some(n) => (*n).to_string(),
        None => format!("x{depth}"),
    };
    while free.contains(candidate.as_str()) {
        candidate.push('\'');
    }
    candidate.into()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn alpha_renaming_is_invisible() {
        assert!(term_equal(&Term::abs("x", v("x")), &Term::abs("y", v("y"))));
        assert!(!term_equal(&Term::abs("x", v("y")), &Term::abs("y", v("y"))));
    }

    #[test]
    fn collection_order_is_invisible() {
        let a = Term::coll([v("x"), Term::abs("y", v("y"))]);
        let b = Term::coll([Term::abs("z", v("z")), v("x")]);
        assert_eq!(alpha_canonical(&a), alpha_canonical(&b));
    }

    #[test]
    fn beta_equal_terms_are_not_identified() {
        let id = Term::abs("x", v("x"));
        let redex = Term::abs("x", Term::app(Term::abs("y", v("y")), v("x")));
        assert!(!term_equal(&id, &redex));
    }

    #[test]
    fn sign_matters() {
        assert!(!term_equal(&Term::signed_var("x", Sign::Neg), &v("x")));
    }

    #[test]
    fn to_term_round_trips_and_avoids_free_names() {
        // \a. a x  with free x must not bind the free x
        let t = Term::abs("a", Term::app(v("a"), v("x")));
        let back = alpha_canonical(&t).to_term();
        assert!(term_equal(&t, &back));
        assert!(back.free_vars().contains("x"));
    }

    #[test]
    fn canonical_is_idempotent() {
        let t = Term::abs("q", Term::coll([Term::app(v("q"), v("r")), v("q")]));
        let c = alpha_canonical(&t);
        assert_eq!(alpha_canonical(&c.to_term()), c);
    }
}
