use super::{ParseError, ParseErrorKind, Position};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Lambda,
    Dot,
    Comma,
    LParen,
    RParen,
    Tilde,
    Semi,
    Equals,
    Let,
    Ident(String),
    Int(i64),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Lambda => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Let => "`let`".into(),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Position,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '-' | '?')
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line, column: col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        let simple = match c {
            '\\' => Some(Tok::Lambda),
            '.' => Some(Tok::Dot),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '~' => Some(Tok::Tilde),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = simple {
            bump!();
            out.push(Token { tok, pos });
            continue;
        }
        let negative = c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit());
        if c.is_ascii_digit() || negative {
            let start = i;
            bump!();
            while i < chars.len() && chars[i].is_ascii_digit() {
                bump!();
            }
            let lit: String = chars[start..i].iter().collect();
            if i < chars.len() && ident_continue(chars[i]) && !chars[i].is_ascii_digit() {
                return Err(ParseError::new(
                    Position { line, column: col },
                    ParseErrorKind::Syntax(format!("unexpected character `{}` after integer literal", chars[i])),
                ));
            }
            let n = lit.parse::<i64>().map_err(|_| {
                ParseError::new(pos, ParseErrorKind::Syntax(format!("integer literal `{lit}` out of range")))
            })?;
            out.push(Token { tok: Tok::Int(n), pos });
            continue;
        }
        if ident_start(c) {
            let start = i;
            while i < chars.len() && ident_continue(chars[i]) {
                bump!();
            }
            let word: String = chars[start..i].iter().collect();
            let tok = if word == "let" { Tok::Let } else { Tok::Ident(word) };
            out.push(Token { tok, pos });
            continue;
        }
        return Err(ParseError::new(
            pos,
            ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
        ));
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Position { line, column: col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn lexes_prelude_style_names() {
        assert_eq!(
            toks("PRIM-REC ZERO? x' -3 # comment"),
            vec![
                Tok::Ident("PRIM-REC".into()),
                Tok::Ident("ZERO?".into()),
                Tok::Ident("x'".into()),
                Tok::Int(-3),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn tracks_positions() {
        let t = tokenize("a\n  b").unwrap();
        assert_eq!(t[1].pos, Position { line: 2, column: 3 });
    }

    #[test]
    fn rejects_stray_characters() {
        let err = tokenize("x $").unwrap_err();
        assert_eq!(err.position, Position { line: 1, column: 3 });
    }
}
