use std::collections::BTreeSet;

use super::lexer::{tokenize, Tok, Token};
use super::{Definition, ParseError, ParseErrorKind, Position, SourceProgram};
use crate::prelude::{church, int_term};
use crate::term::{mk_collection, Level, Name, Term};

pub(crate) struct Parser {
    toks: Vec<Token>,
    i: usize,
    level: Level,
    occurrences: Vec<(Name, Position)>,
}

const TERM_START: [&str; 5] = ["identifier", "integer", "`\\`", "`(`", "`~`"];

impl Parser {
    pub(crate) fn new(text: &str, level: Level) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            i: 0,
            level,
            occurrences: Vec::new(),
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.i]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::new(t.pos, ParseErrorKind::Syntax(format!("unexpected {}", t.tok.describe())))
            .expecting(expected)
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[&tok.describe()]))
        }
    }

    fn expect_ident(&mut self) -> Result<(Name, Position), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let name: Name = s.as_str().into();
                let pos = self.bump().pos;
                Ok((name, pos))
            }
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn starts_term(&self) -> bool {
        matches!(
            self.peek().tok,
            Tok::Lambda | Tok::Tilde | Tok::Ident(_) | Tok::Int(_) | Tok::LParen
        )
    }

    /// Lowest precedence: comma-separated collection.
    pub(crate) fn parse_term(&mut self) -> Result<Term, ParseError> {
        let first = self.parse_app()?;
        if self.peek().tok != Tok::Comma {
            return Ok(first);
        }
        let mut members = vec![first];
        while self.peek().tok == Tok::Comma {
            let comma = self.bump();
            if self.level == Level::Lambda {
                return Err(ParseError::new(
                    comma.pos,
                    ParseErrorKind::Level {
                        feature: "collection",
                        level: self.level,
                    },
                ));
            }
            members.push(self.parse_app()?);
        }
        Ok(mk_collection(members).expect("at least two members"))
    }

    /// Left-associative application; an abstraction extends to the right as
    /// far as possible, so it ends the chain.
    fn parse_app(&mut self) -> Result<Term, ParseError> {
        if !self.starts_term() {
            return Err(self.unexpected(&TERM_START));
        }
        let mut head: Option<Term> = None;
        while self.starts_term() {
            let (operand, greedy) = self.parse_operand()?;
            head = Some(match head {
                None => operand,
                Some(f) => Term::app(f, operand),
            });
            if greedy {
                break;
            }
        }
        Ok(head.expect("at least one operand"))
    }

    /// Returns the operand and whether it consumed the rest of the chain.
    fn parse_operand(&mut self) -> Result<(Term, bool), ParseError> {
        let tok = self.bump();
        match tok.tok {
            Tok::Tilde => {
                if self.level < Level::Quantum {
                    return Err(ParseError::new(
                        tok.pos,
                        ParseErrorKind::Level {
                            feature: "negative sign",
                            level: self.level,
                        },
                    ));
                }
                if !self.starts_term() {
                    return Err(self.unexpected(&TERM_START));
                }
                let (inner, greedy) = self.parse_operand()?;
                match inner.opposite() {
                    Some(t) => Ok((t, greedy)),
                    None => Err(ParseError::new(
                        tok.pos,
                        ParseErrorKind::Syntax("`~` applies only to a variable or an abstraction".into()),
                    )),
                }
            }
            Tok::Lambda => {
                let (binder, _) = self.expect_ident()?;
                self.expect(Tok::Dot)?;
                let body = self.parse_app()?;
                Ok((
                    Term::Abs {
                        binder,
                        body: body.into(),
                        sign: Default::default(),
                    },
                    true,
                ))
            }
            Tok::Ident(name) => {
                let name: Name = name.as_str().into();
                self.occurrences.push((name.clone(), tok.pos));
                Ok((
                    Term::Var {
                        name,
                        sign: Default::default(),
                    },
                    false,
                ))
            }
            Tok::Int(n) => {
                let t = if n >= 0 { church(n as u64) } else { int_term(n) };
                Ok((t, false))
            }
            Tok::LParen => {
                let t = self.parse_term()?;
                self.expect(Tok::RParen)?;
                Ok((t, false))
            }
            _ => {
                self.i -= 1;
                Err(self.unexpected(&TERM_START))
            }
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected(&["end of input"]))
        }
    }

    pub(crate) fn parse_single(mut self) -> Result<Term, ParseError> {
        let t = self.parse_term()?;
        self.expect_end()?;
        Ok(t)
    }

    pub(crate) fn parse_program(mut self, known: &dyn Fn(&str) -> bool) -> Result<SourceProgram, ParseError> {
        let mut definitions: Vec<Definition> = Vec::new();
        let mut defined: BTreeSet<Name> = BTreeSet::new();
        while self.peek().tok == Tok::Let {
            self.bump();
            let (name, pos) = self.expect_ident()?;
            if defined.contains(&name) {
                return Err(ParseError::new(pos, ParseErrorKind::DuplicateDefinition(name.to_string())));
            }
            self.expect(Tok::Equals)?;
            self.occurrences.clear();
            let body = self.parse_term()?;
            self.expect(Tok::Semi)?;
            for free in body.free_vars() {
                if !defined.contains(&free) && !known(&free) {
                    let at = self
                        .occurrences
                        .iter()
                        .find(|(n, _)| *n == free)
                        .map(|(_, p)| *p)
                        .unwrap_or(pos);
                    return Err(ParseError::new(at, ParseErrorKind::UnknownIdentifier(free.to_string())));
                }
            }
            defined.insert(name.clone());
            definitions.push(Definition {
                name,
                body,
                position: pos,
            });
        }
        let main = if self.peek().tok == Tok::Eof {
            None
        } else {
            let t = self.parse_term()?;
            if self.peek().tok == Tok::Semi {
                self.bump();
            }
            Some(t)
        };
        self.expect_end()?;
        Ok(SourceProgram { definitions, main })
    }
}
