//! Shared plumbing for the line-oriented text formats.

use std::fmt;
use std::str::FromStr;

/// A parse failure, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl fmt::Display) -> Self {
        ParseError {
            line,
            column,
            message: message.to_string(),
        }
    }
}

/// Whitespace-separated token together with its 1-based column.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

pub(crate) fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..pos],
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(pos);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

pub(crate) fn parse_token<T: FromStr>(tok: Token<'_>, line: usize, what: &str) -> Result<T, ParseError> {
    tok.text
        .parse()
        .map_err(|_| ParseError::new(line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

/// Lines of `input` with their 1-based numbers, skipping blank lines and `#` comments.
pub(crate) fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().map(|(idx, l)| (idx + 1, l)).filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    })
}

/// Reads the leading order line shared by the triangle and family formats.
pub(crate) fn parse_order<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<usize, ParseError> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing order line"))?;
    let toks = tokens(line);
    match toks.as_slice() {
        [tok] => parse_token(*tok, no, "order n"),
        [] => Err(ParseError::new(no, 1, "missing order")),
        [_, extra, ..] => Err(ParseError::new(no, extra.column, "unexpected token after order")),
    }
}
