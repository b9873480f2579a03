//! Term representation shared by the λ, λᵖ and λᑫ calculi.
//!
//! A single AST covers all three calculi: λ-terms are the sign-free,
//! collection-free fragment and λᵖ-terms are the sign-free fragment.
//! Collections are stored flattened (a member is never itself a
//! collection) and always have at least two members, so the ordering and
//! nesting identities on collections hold by construction.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Identifier of a variable or binder.
pub type Name = Arc<str>;

/// Binary phase of a variable or abstraction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    #[default]
    Pos,
    Neg,
}

impl Sign {
    /// Sign concatenation: `++ = --= +`, `+- = -+ = -`.
    pub fn concat(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn flip(self) -> Sign {
        self.concat(Sign::Neg)
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Neg
    }
}

/// The three calculi, ordered by generality.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    /// Plain λ-calculus: no collections, no negative signs.
    Lambda,
    /// λᵖ: collections, no negative signs.
    Probabilistic,
    /// λᑫ: signed collections.
    #[default]
    Quantum,
}

impl Level {
    pub fn short_name(self) -> &'static str {
        match self {
            Level::Lambda => "l",
            Level::Probabilistic => "p",
            Level::Quantum => "q",
        }
    }

    pub fn from_short_name(s: &str) -> Option<Level> {
        match s {
            "l" => Some(Level::Lambda),
            "p" => Some(Level::Probabilistic),
            "q" => Some(Level::Quantum),
            _ => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Lambda => "lambda",
            Level::Probabilistic => "lambda-p",
            Level::Quantum => "lambda-q",
        })
    }
}

/// A flattened multiset of at least two non-collection terms.
///
/// Members keep their construction order; that order is only used to make
/// reduction traces deterministic; equality modulo reordering is provided by
/// [`crate::canon::term_equal`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Collection(Arc<[Term]>);

impl Collection {
    pub fn members(&self) -> &[Term] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var {
        name: Name,
        sign: Sign,
    },
    App(Arc<Term>, Arc<Term>),
    Abs {
        binder: Name,
        body: Arc<Term>,
        sign: Sign,
    },
    Coll(Collection),
    /// Negation of an application. Produced only by [`crate::rewrite::scale`],
    /// never by the parser; it always wraps an `App`.
    Negated(Arc<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("a collection needs at least one member")]
pub struct EmptyCollection;

/// Builds a collection, flattening nested collections.
///
/// A single member (after flattening) is returned as is.
pub fn mk_collection(members: impl IntoIterator<Item = Term>) -> Result<Term, EmptyCollection> {
    let mut flat = Vec::new();
    for m in members {
        match m {
            Term::Coll(c) => flat.extend(c.members().iter().cloned()),
            other => flat.push(other),
        }
    }
    match flat.len() {
        0 => Err(EmptyCollection),
        1 => Ok(flat.pop().expect("one member")),
        _ => Ok(Term::Coll(Collection(flat.into()))),
    }
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::signed_var(name, Sign::Pos)
    }

    pub fn signed_var(name: &str, sign: Sign) -> Term {
        Term::Var {
            name: name.into(),
            sign,
        }
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    /// Left-nested application `f a1 a2 ...`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn abs(binder: &str, body: Term) -> Term {
        Term::signed_abs(binder, body, Sign::Pos)
    }

    pub fn signed_abs(binder: &str, body: Term, sign: Sign) -> Term {
        Term::Abs {
            binder: binder.into(),
            body: Arc::new(body),
            sign,
        }
    }

    /// Collection of the given members. Panics on an empty iterator.
    pub fn coll(members: impl IntoIterator<Item = Term>) -> Term {
        mk_collection(members).expect("non-empty collection")
    }

    pub fn is_collection(&self) -> bool {
        matches!(self, Term::Coll(_))
    }

    /// Top-level members; a non-collection is its own single member.
    pub fn members(&self) -> &[Term] {
        match self {
            Term::Coll(c) => c.members(),
            other => std::slice::from_ref(other),
        }
    }

    /// Number of members of the maximal flattening, 1 for non-collections.
    pub fn cardinality(&self) -> usize {
        self.members().len()
    }

    /// Sign of a variable or abstraction.
    pub fn sign(&self) -> Option<Sign> {
        match self {
            Term::Var { sign, .. } | Term::Abs { sign, .. } => Some(*sign),
            _ => None,
        }
    }

    /// The same variable or abstraction with its sign flipped.
    ///
    /// Applications, collections and negated applications have no opposite.
    pub fn opposite(&self) -> Option<Term> {
        match self {
            Term::Var { name, sign } => Some(Term::Var {
                name: name.clone(),
                sign: sign.flip(),
            }),
            Term::Abs { binder, body, sign } => Some(Term::Abs {
                binder: binder.clone(),
                body: body.clone(),
                sign: sign.flip(),
            }),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    pub fn has_free_var(&self, x: &str) -> bool {
        match self {
            Term::Var { name, .. } => &**name == x,
            Term::App(f, a) => f.has_free_var(x) || a.has_free_var(x),
            Term::Abs { binder, body, .. } => &**binder != x && body.has_free_var(x),
            Term::Coll(c) => c.members().iter().any(|m| m.has_free_var(x)),
            Term::Negated(inner) => inner.has_free_var(x),
        }
    }

    /// Every identifier occurring in the term, bound or free.
    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| match t {
            Term::Var { name, .. } => {
                out.insert(name.clone());
            }
            Term::Abs { binder, .. } => {
                out.insert(binder.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal of every subterm.
    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::Var { .. } => {}
            Term::App(g, a) => {
                g.visit(f);
                a.visit(f);
            }
            Term::Abs { body, .. } => body.visit(f),
            Term::Coll(c) => c.members().iter().for_each(|m| m.visit(f)),
            Term::Negated(inner) => inner.visit(f),
        }
    }

    pub fn contains_collection(&self) -> bool {
        let mut found = false;
        self.visit(&mut |t| found |= t.is_collection());
        found
    }

    /// True if no variable or abstraction carries a negative sign and no
    /// negated application occurs.
    pub fn is_sign_free(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |t| match t {
            Term::Var { sign, .. } | Term::Abs { sign, .. } => ok &= !sign.is_negative(),
            Term::Negated(_) => ok = false,
            _ => {}
        });
        ok
    }

    /// The least calculus whose grammar contains this term.
    pub fn level(&self) -> Level {
        if !self.is_sign_free() {
            Level::Quantum
        } else if self.contains_collection() {
            Level::Probabilistic
        } else {
            Level::Lambda
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

fn collect_free(t: &Term, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match t {
        Term::Var { name, .. } => {
            if !bound.contains(name) {
                out.insert(name.clone());
            }
        }
        Term::App(f, a) => {
            collect_free(f, bound, out);
            collect_free(a, bound, out);
        }
        Term::Abs { binder, body, .. } => {
            bound.push(binder.clone());
            collect_free(body, bound, out);
            bound.pop();
        }
        Term::Coll(c) => {
            for m in c.members() {
                collect_free(m, bound, out);
            }
        }
        Term::Negated(inner) => collect_free(inner, bound, out),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::term_equal;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn singleton_collection_is_the_member() {
        assert_eq!(mk_collection([x()]).unwrap(), x());
        assert_eq!(mk_collection(Vec::new()), Err(EmptyCollection));
    }

    #[test]
    fn nested_collections_flatten() {
        let inner = Term::coll([Term::var("x"), Term::var("y")]);
        let t = Term::coll([inner, Term::var("z")]);
        assert_eq!(t.cardinality(), 3);
        assert!(t.members().iter().all(|m| !m.is_collection()));
    }

    #[test]
    fn nesting_and_order_are_irrelevant() {
        let (a, b, c, d) = (Term::var("A"), Term::var("B"), Term::var("C"), Term::var("D"));
        let left = Term::coll([a.clone(), Term::coll([b.clone(), c.clone()]), d.clone()]);
        let right = Term::coll([a, c, b, d]);
        assert!(term_equal(&left, &right));
    }

    #[test]
    fn cardinality_of_non_collections_is_one() {
        assert_eq!(x().cardinality(), 1);
        assert_eq!(Term::abs("x", Term::coll([x(), x()])).cardinality(), 1);
    }

    #[test]
    fn opposite_flips_variables_and_abstractions_only() {
        let neg_x = Term::signed_var("x", Sign::Neg);
        assert_eq!(x().opposite(), Some(neg_x.clone()));
        assert_eq!(neg_x.opposite(), Some(x()));
        let neg_id = Term::signed_abs("x", x(), Sign::Neg);
        assert_eq!(neg_id.opposite(), Some(Term::abs("x", x())));
        assert_eq!(Term::app(x(), Term::var("y")).opposite(), None);
        assert_eq!(Term::coll([x(), Term::var("y")]).opposite(), None);
    }

    #[test]
    fn free_vars_examples() {
        let t = Term::abs("x", Term::app(x(), Term::var("y")));
        assert_eq!(t.free_vars(), BTreeSet::from(["y".into()]));
        let c = Term::coll([x(), Term::abs("x", x())]);
        assert_eq!(c.free_vars(), BTreeSet::from(["x".into()]));
        let neg = Term::signed_var("x", Sign::Neg);
        assert_eq!(neg.free_vars(), BTreeSet::from(["x".into()]));
    }

    #[test]
    fn sign_concat_table() {
        use Sign::*;
        assert_eq!(Pos.concat(Pos), Pos);
        assert_eq!(Pos.concat(Neg), Neg);
        assert_eq!(Neg.concat(Pos), Neg);
        assert_eq!(Neg.concat(Neg), Pos);
    }

    #[test]
    fn level_of_terms() {
        assert_eq!(x().level(), Level::Lambda);
        assert_eq!(Term::coll([x(), x()]).level(), Level::Probabilistic);
        assert_eq!(Term::signed_var("x", Sign::Neg).level(), Level::Quantum);
    }
}
