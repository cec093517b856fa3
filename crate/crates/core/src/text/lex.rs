//! Whitespace-separated tokens with their positions. A token starting with
//! `#` starts a comment; `#` inside a name is kept.

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

impl Token<'_> {
    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.column, message: message.into() }
    }
}

/// One non-empty source line.
#[derive(Debug, Clone)]
pub struct Line<'a> {
    pub number: usize,
    /// Column just past the last character, for errors about missing tokens.
    pub end: usize,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    pub fn keyword(&self) -> &Token<'a> {
        &self.tokens[0]
    }

    pub fn at(&self, i: usize, what: &str) -> Result<&Token<'a>, Error> {
        self.tokens.get(i).ok_or_else(|| self.missing(what))
    }

    pub fn missing(&self, what: &str) -> Error {
        Error::Parse { line: self.number, column: self.end, message: format!("expected {what}") }
    }

    /// Checks that token `i` is exactly `sym`.
    pub fn expect(&self, i: usize, sym: &str) -> Result<(), Error> {
        let t = self.at(i, &format!("`{sym}`"))?;
        if t.text == sym {
            Ok(())
        } else {
            Err(t.error(format!("expected `{sym}`, found `{}`", t.text)))
        }
    }

    pub fn no_more(&self, i: usize) -> Result<(), Error> {
        match self.tokens.get(i) {
            Some(t) => Err(t.error(format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }

    /// Tokens from `i` on, at least one.
    pub fn rest(&self, i: usize, what: &str) -> Result<&[Token<'a>], Error> {
        if self.tokens.len() <= i {
            return Err(self.missing(what));
        }
        Ok(&self.tokens[i..])
    }
}

fn strip_comment(raw: &str) -> &str {
    let mut prev_space = true;
    for (i, ch) in raw.char_indices() {
        if ch == '#' && prev_space {
            return &raw[..i];
        }
        prev_space = ch.is_whitespace();
    }
    raw
}

/// Non-empty lines of `src`, numbered from `first_line`.
pub fn lines(src: &str, first_line: usize) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let body = strip_comment(raw);
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in body.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((byte, col)),
                (true, Some((b, c))) => {
                    tokens.push(Token { text: &body[b..byte], line: first_line + k, column: c + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((b, c)) = start {
            tokens.push(Token { text: &body[b..], line: first_line + k, column: c + 1 });
        }
        if !tokens.is_empty() {
            out.push(Line { number: first_line + k, end: body.chars().count() + 1, tokens });
        }
    }
    out
}

/// Names must survive a round trip through the token grammar.
pub fn check_name(name: &str) -> Result<(), Error> {
    if name.is_empty() || name.starts_with('#') || name.chars().any(|c| c.is_whitespace() || c == '{' || c == '}') {
        return Err(Error::Invalid(format!("name `{name}` cannot be written in the text format")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let ls = lines("# header\n\n  arrow f : a -> b  # trailing\n#\nobjects x#1 #y\n", 1);
        assert_eq!(ls.len(), 2);
        assert_eq!(ls[1].tokens.iter().map(|t| t.text).collect::<Vec<_>>(), ["objects", "x#1"]);
        let ls = &ls[..1];
        assert_eq!(ls.len(), 1);
        let l = &ls[0];
        assert_eq!(l.number, 3);
        let cols: Vec<_> = l.tokens.iter().map(|t| (t.text, t.column)).collect();
        assert_eq!(cols, [("arrow", 3), ("f", 9), (":", 11), ("a", 13), ("->", 15), ("b", 18)]);
    }
}
