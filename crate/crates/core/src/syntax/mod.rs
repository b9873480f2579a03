//! Concrete ASCII syntax.
//!
//! `\` is λ, `~` is the negative sign, `,` separates collection members and
//! `#` starts a comment. Application is left-associative, an abstraction
//! body extends as far right as possible (but stops at a comma), and the
//! comma has the lowest precedence. Integer literals expand to Church
//! numerals (`3`) or signed-integer pairs (`-2`).

mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::canon::alpha_canonical;
use crate::term::{Level, Name, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    /// A construct that the requested calculus does not have.
    Level { feature: &'static str, level: Level },
    DuplicateDefinition(String),
    UnknownIdentifier(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
    pub expected: Vec<String>,
}

impl ParseError {
    pub(crate) fn new(position: Position, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position,
            kind,
            expected: Vec::new(),
        }
    }

    fn expecting(mut self, expected: &[&str]) -> ParseError {
        self.expected = expected.iter().map(|s| s.to_string()).collect();
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => f.write_str(msg)?,
            ParseErrorKind::Level { feature, level } => write!(f, "{feature} is not allowed at level {level}")?,
            ParseErrorKind::DuplicateDefinition(name) => write!(f, "`{name}` is already defined")?,
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier `{name}`")?,
        }
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Definition {
    pub name: Name,
    pub body: Term,
    pub position: Position,
}

/// A `.lq` file: `let` definitions followed by an optional main term.
#[derive(Clone, Debug, Default)]
pub struct SourceProgram {
    pub definitions: Vec<Definition>,
    pub main: Option<Term>,
}

/// Parses a single term at the given level.
pub fn parse(text: &str, level: Level) -> Result<Term, ParseError> {
    parser::Parser::new(text, level)?.parse_single()
}

/// Parses a program whose definitions may only refer to earlier definitions.
pub fn parse_program(text: &str, level: Level) -> Result<SourceProgram, ParseError> {
    parse_program_with(text, level, &|_| false)
}

/// Like [`parse_program`], with extra names (e.g. the prelude) that
/// definitions may refer to.
pub fn parse_program_with(
    text: &str,
    level: Level,
    known: &dyn Fn(&str) -> bool,
) -> Result<SourceProgram, ParseError> {
    parser::Parser::new(text, level)?.parse_program(known)
}

/// Prints a term with minimal parentheses; collection members appear in
/// canonical order.
pub fn print(t: &Term) -> String {
    let mut out = String::new();
    print_term(t, &mut out);
    out
}

fn print_term(t: &Term, out: &mut String) {
    match t {
        Term::Coll(c) => {
            let mut members: Vec<_> = c.members().iter().map(|m| (alpha_canonical(m), m)).collect();
            members.sort_by(|a, b| a.0.cmp(&b.0));
            for (i, (_, m)) in members.into_iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                print_chain(m, true, out);
            }
        }
        other => print_chain(other, true, out),
    }
}

/// `tail` is true when nothing follows the term in its application chain.
fn print_chain(t: &Term, tail: bool, out: &mut String) {
    match t {
        Term::App(f, a) => {
            print_chain(f, false, out);
            out.push(' ');
            print_operand(a, tail, out);
        }
        other => print_operand(other, tail, out),
    }
}

fn print_operand(t: &Term, tail: bool, out: &mut String) {
    match t {
        Term::Var { name, sign } => {
            if sign.is_negative() {
                out.push('~');
            }
            out.push_str(name);
        }
        Term::Abs { binder, body, sign } => {
            if !tail {
                out.push('(');
            }
            if sign.is_negative() {
                out.push('~');
            }
            out.push('\\');
            out.push_str(binder);
            out.push('.');
            print_chain(body, true, out);
            if !tail {
                out.push(')');
            }
        }
        Term::App(..) => {
            out.push('(');
            print_chain(t, true, out);
            out.push(')');
        }
        Term::Coll(_) => {
            out.push('(');
            print_term(t, out);
            out.push(')');
        }
        Term::Negated(inner) => {
            out.push_str("~(");
            print_chain(inner, true, out);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::term_equal;
    use crate::prelude::church;
    use crate::term::Sign;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn abstraction_body_extends_right() {
        let t = parse(r"\x.x x", Level::Lambda).unwrap();
        assert_eq!(t, Term::abs("x", Term::app(v("x"), v("x"))));
    }

    #[test]
    fn application_is_left_associative() {
        let t = parse("M N P", Level::Lambda).unwrap();
        assert_eq!(t, Term::app(Term::app(v("M"), v("N")), v("P")));
    }

    #[test]
    fn comma_has_lowest_precedence() {
        let t = parse(r"\x.x, z, y", Level::Probabilistic).unwrap();
        assert_eq!(t.cardinality(), 3);
        assert!(term_equal(&t, &Term::coll([Term::abs("x", v("x")), v("z"), v("y")])));
    }

    #[test]
    fn negative_sign_inside_body() {
        let t = parse(r"\x.x ~x", Level::Quantum).unwrap();
        let expected = Term::abs("x", Term::app(v("x"), Term::signed_var("x", Sign::Neg)));
        assert_eq!(t, expected);
        assert_eq!(t.sign(), Some(Sign::Pos));
    }

    #[test]
    fn level_violations_are_reported_with_position() {
        let err = parse("x, y", Level::Lambda).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Level { .. }));
        assert_eq!(err.position, Position { line: 1, column: 2 });
        let err = parse("a ~x", Level::Probabilistic).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Level { .. }));
        assert_eq!(err.position.column, 3);
    }

    #[test]
    fn sign_only_on_variables_and_abstractions() {
        assert!(parse("~(x y)", Level::Quantum).is_err());
        assert_eq!(parse("~(\\x.x)", Level::Quantum).unwrap().sign(), Some(Sign::Neg));
    }

    #[test]
    fn integer_literals_expand() {
        assert_eq!(parse("2", Level::Lambda).unwrap(), church(2));
        assert!(parse("-2", Level::Lambda).unwrap().is_sign_free());
    }

    #[test]
    fn printing_examples() {
        assert_eq!(print(&Term::abs("x", v("x"))), r"\x.x");
        assert_eq!(print(&Term::coll([v("z"), v("x"), v("y")])), "x, y, z");
        assert_eq!(print(&Term::signed_var("x", Sign::Neg)), "~x");
        let t = Term::app(Term::app(v("f"), Term::abs("x", v("x"))), v("y"));
        assert_eq!(print(&t), r"f (\x.x) y");
        assert_eq!(print(&Term::app(v("f"), Term::abs("x", v("x")))), r"f \x.x");
        assert_eq!(print(&Term::app(v("f"), Term::app(v("g"), v("y")))), "f (g y)");
    }

    #[test]
    fn program_with_main() {
        let p = parse_program(r"let id = \x.x; id id", Level::Lambda).unwrap();
        assert_eq!(p.definitions.len(), 1);
        assert!(matches!(p.main, Some(Term::App(..))));
    }

    #[test]
    fn program_unknown_identifier() {
        let err = parse_program("let a = b;", Level::Lambda).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("b".into()));
        assert_eq!(err.position, Position { line: 1, column: 9 });
    }

    #[test]
    fn program_duplicate_definition() {
        let err = parse_program(r"let a = \x.x; let a = \y.y;", Level::Lambda).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateDefinition("a".into()));
    }

    #[test]
    fn errors_name_expected_tokens() {
        let err = parse(r"\x x", Level::Lambda).unwrap_err();
        assert_eq!(err.expected, vec!["`.`".to_string()]);
        assert!(err.to_string().starts_with("1:4:"));
    }
}
