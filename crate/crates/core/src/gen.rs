//! Seeded random terms, for property tests and benchmarks.

use crate::observe::Rng;
use crate::syntax::parse;
use crate::term::{mk_collection, Level, Sign, Term};

const FREE: [&str; 3] = ["a", "b", "c"];
const BINDERS: [&str; 4] = ["x", "y", "z", "a"];

/// Size limits for generated terms.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    /// Collections only from λᵖ up, negative signs only at λᑫ.
    pub level: Level,
    pub max_depth: usize,
    /// Largest collection generated directly (before flattening).
    pub max_width: usize,
    /// Rough bound on the number of constructors.
    pub max_nodes: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            level: Level::Quantum,
            max_depth: 5,
            max_width: 4,
            max_nodes: 24,
        }
    }
}

impl Shape {
    pub fn at(level: Level) -> Shape {
        Shape {
            level,
            ..Shape::default()
        }
    }
}

struct Builder<'a> {
    rng: &'a mut Rng,
    shape: Shape,
    nodes: usize,
    scope: Vec<&'static str>,
    /// Collections anywhere hold only values.
    value_members: bool,
}

impl Builder<'_> {
    fn chance(&mut self, num: usize, den: usize) -> bool {
        self.rng.uniform_below(den) < num
    }

    fn pick<T: Copy>(&mut self, xs: &[T]) -> T {
        xs[self.rng.uniform_below(xs.len())]
    }

    fn sign(&mut self) -> Sign {
        if self.shape.level == Level::Quantum && self.chance(1, 3) {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    fn exhausted(&self, depth: usize) -> bool {
        depth >= self.shape.max_depth || self.nodes >= self.shape.max_nodes
    }

    fn var(&mut self) -> Term {
        self.nodes += 1;
        let name = if !self.scope.is_empty() && self.chance(2, 3) {
            let scope = self.scope.clone();
            self.pick(&scope)
        } else {
            self.pick(&FREE)
        };
        Term::signed_var(name, self.sign())
    }

    fn abs(&mut self, depth: usize) -> Term {
        self.nodes += 1;
        let binder = self.pick(&BINDERS);
        self.scope.push(binder);
        let body = self.term(depth + 1);
        self.scope.pop();
        let sign = self.sign();
        Term::signed_abs(binder, body, sign)
    }

    fn width(&mut self) -> usize {
        2 + self.rng.uniform_below(self.shape.max_width.max(2) - 1)
    }

    fn term(&mut self, depth: usize) -> Term {
        if self.exhausted(depth) || self.chance(1, 4) {
            return self.var();
        }
        let collections = self.shape.level >= Level::Probabilistic;
        match self.rng.uniform_below(if collections { 4 } else { 3 }) {
            0 => self.var(),
            1 => {
                self.nodes += 1;
                let f = self.term(depth + 1);
                Term::app(f, self.term(depth + 1))
            }
            2 => self.abs(depth),
            _ => {
                self.nodes += 1;
                let n = self.width();
                let members: Vec<Term> = (0..n)
                    .map(|_| {
                        if self.value_members {
                            self.value(depth + 1)
                        } else {
                            self.term(depth + 1)
                        }
                    })
                    .collect();
                mk_collection(members).expect("non-empty")
            }
        }
    }

    fn value(&mut self, depth: usize) -> Term {
        let collections = self.shape.level >= Level::Probabilistic;
        if collections && !self.exhausted(depth) && self.chance(1, 3) {
            self.nodes += 1;
            let n = self.width();
            let members: Vec<Term> = (0..n).map(|_| self.value(depth + 1)).collect();
            return mk_collection(members).expect("non-empty");
        }
        if self.exhausted(depth) || self.chance(1, 4) {
            self.var()
        } else {
            self.abs(depth)
        }
    }

    fn affine(&mut self, depth: usize) -> Term {
        let collections = self.shape.level >= Level::Probabilistic;
        if self.exhausted(depth) || self.chance(1, 3) {
            self.nodes += 1;
            let atom = if self.chance(1, 3) {
                Term::var(self.pick(&FREE))
            } else {
                combinators()[self.rng.uniform_below(COMBINATORS.len())].clone()
            };
            return match self.sign() {
                Sign::Neg => atom.opposite().expect("atom"),
                Sign::Pos => atom,
            };
        }
        self.nodes += 1;
        if collections && self.chance(1, 4) {
            let n = self.width();
            let members: Vec<Term> = (0..n).map(|_| self.affine(depth + 1)).collect();
            return mk_collection(members).expect("non-empty");
        }
        let f = self.affine(depth + 1);
        Term::app(f, self.affine(depth + 1))
    }
}

const COMBINATORS: [&str; 5] = [
    r"\x.x",
    r"\x.\y.x",
    r"\x.\y.y",
    r"\f.\g.\x.f (g x)",
    r"\f.\x.\y.f y x",
];

fn combinators() -> Vec<Term> {
    COMBINATORS
        .iter()
        .map(|s| parse(s, Level::Lambda).expect("combinator"))
        .collect()
}

fn builder(rng: &mut Rng, shape: Shape) -> Builder<'_> {
    Builder {
        rng,
        shape,
        nodes: 0,
        scope: Vec::new(),
        value_members: false,
    }
}

/// An arbitrary term within `shape`.
pub fn term(rng: &mut Rng, shape: Shape) -> Term {
    builder(rng, shape).term(0)
}

/// A variable, an abstraction or a collection of those. Bodies may contain
/// redexes, but every collection anywhere in the term has only variables and
/// abstractions as members, so γ-reduction never changes a collection's
/// cardinality.
pub fn value(rng: &mut Rng, shape: Shape) -> Term {
    let mut b = builder(rng, shape);
    b.value_members = true;
    b.value(0)
}

/// An application tree over free variables and the affine combinators
/// `I, K, K*, B, C`. Every bound variable is used at most once, so these
/// terms are strongly normalizing.
pub fn affine(rng: &mut Rng, shape: Shape) -> Term {
    builder(rng, shape).affine(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn respects_level() {
        let mut rng = Rng::new(9);
        for _ in 0..200 {
            assert!(term(&mut rng, Shape::at(Level::Lambda)).level() == Level::Lambda);
            assert!(term(&mut rng, Shape::at(Level::Probabilistic)).is_sign_free());
            assert!(affine(&mut rng, Shape::at(Level::Probabilistic)).is_sign_free());
        }
    }

    #[test]
    fn deterministic() {
        let a = term(&mut Rng::new(5), Shape::default());
        let b = term(&mut Rng::new(5), Shape::default());
        assert_eq!(a, b);
    }
}
