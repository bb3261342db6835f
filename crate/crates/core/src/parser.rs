//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! imp   := or ( "->" imp )?
//! or    := and ( "|" and )*
//! and   := unary ( "&" unary )*
//! unary := "~" unary | "nh" "(" imp ")" | "(" imp ")" | atom | "true" | "false"
//! atom  := [a-z][a-zA-Z0-9_]*
//! ```

use std::sync::Arc;

use thiserror::Error;

use crate::formula::Formula;

/// A syntax error with the byte offset at which it was detected.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Tilde,
    Arrow,
    Bar,
    Amp,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("'{name}'"),
            Token::Tilde => "'~'".into(),
            Token::Arrow => "'->'".into(),
            Token::Bar => "'|'".into(),
            Token::Amp => "'&'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Token::Tilde,
            b'|' => Token::Bar,
            b'&' => Token::Amp,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push((i, Token::Arrow));
                    i += 2;
                    continue;
                }
                return Err(ParseError::new(i, "expected '->'"));
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(i, format!("unexpected character {ch:?}")));
            }
        };
        tokens.push((i, tok));
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Token) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {}", tok.describe())))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(self.offset(), format!("{what}, found {}", t.describe())),
            None => ParseError::new(self.offset(), format!("{what}, found end of input")),
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Token::Arrow) {
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.eat(&Token::Bar) {
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Token::Amp) {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Token::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.imp()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "true" => Ok(Formula::Verum),
                    "false" => Ok(Formula::Falsum),
                    "nh" => {
                        self.expect(Token::LParen)?;
                        let inner = self.imp()?;
                        self.expect(Token::RParen)?;
                        Ok(Formula::nh(inner))
                    }
                    _ => Ok(Formula::Atom(Arc::from(name.as_str()))),
                }
            }
            _ => Err(self.unexpected("expected a formula")),
        }
    }
}

/// Parses a formula from its textual form.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::new(0, "empty input"));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let f = parser.imp()?;
    if parser.peek().is_some() {
        return Err(parser.unexpected("expected end of input"));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
