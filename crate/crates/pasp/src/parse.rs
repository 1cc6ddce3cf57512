//! Parser for the `.pasp` surface syntax.
//!
//! ```text
//! program   := { statement }
//! statement := [ weight ":" ] head [ ":-" body ] "."
//! weight    := decimal in [0,1] with at most 6 fractional digits
//! body      := literal { "," literal }
//! literal   := atom | "not" atom
//! ```
//!
//! `%` starts a comment running to the end of the line. Whitespace between
//! tokens is insignificant. A statement without a weight prefix gets
//! weight 1, so every classical ASP program in this fragment is a valid
//! input.

use crate::error::{Error, ParseError};
use crate::syntax::{Atom, PossRule, Program, Rule};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(String),
    Colon,
    ColonDash,
    Comma,
    Dot,
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    src: &'a [u8],
    at: usize,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            at: 0,
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> u8 {
        let b = self.src[self.at];
        self.at += 1;
        if b == b'\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        b
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.at).copied()
    }

    fn peek2(&self) -> Option<u8> {
        self.src.get(self.at + 1).copied()
    }

    fn tokens(mut self) -> Result<Vec<(Token, Pos)>, ParseError> {
        let mut out = Vec::new();
        while let Some(b) = self.peek() {
            let pos = Pos {
                line: self.line,
                column: self.column,
            };
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'%' => {
                    while self.peek().is_some_and(|c| c != b'\n') {
                        self.bump();
                    }
                }
                b',' => {
                    self.bump();
                    out.push((Token::Comma, pos));
                }
                b'.' => {
                    self.bump();
                    out.push((Token::Dot, pos));
                }
                b':' => {
                    self.bump();
                    if self.peek() == Some(b'-') {
                        self.bump();
                        out.push((Token::ColonDash, pos));
                    } else {
                        out.push((Token::Colon, pos));
                    }
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let start = self.at;
                    while self
                        .peek()
                        .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                    {
                        self.bump();
                    }
                    let word = std::str::from_utf8(&self.src[start..self.at])
                        .expect("identifier bytes are ASCII")
                        .to_string();
                    out.push((Token::Ident(word), pos));
                }
                b'0'..=b'9' => {
                    let start = self.at;
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.bump();
                    }
                    // Consume a fractional part only when a digit follows the
                    // dot; otherwise the dot is the statement terminator.
                    if self.peek() == Some(b'.') && self.peek2().is_some_and(|c| c.is_ascii_digit())
                    {
                        self.bump();
                        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            self.bump();
                        }
                    }
                    let literal = std::str::from_utf8(&self.src[start..self.at])
                        .expect("number bytes are ASCII")
                        .to_string();
                    out.push((Token::Number(literal), pos));
                }
                _ => {
                    let rest = std::str::from_utf8(&self.src[self.at..])
                        .expect("input is valid UTF-8");
                    let c = rest.chars().next().expect("peeked byte exists");
                    return Err(ParseError::new(
                        pos.line,
                        pos.column,
                        format!("unexpected character `{c}`"),
                    ));
                }
            }
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.tokens.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Token, Pos)> {
        let item = self.tokens.get(self.at).cloned();
        self.at += 1;
        item
    }

    fn error(&self, pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError::new(pos.line, pos.column, message)
    }

    fn expect_atom(&mut self, what: &str) -> Result<Atom, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some((Token::Ident(name), _)) if name == "not" => {
                Err(self.error(pos, format!("`not` is a reserved word, expected {what}")))
            }
            Some((Token::Ident(name), pos)) => Atom::new(name.clone()).map_err(|_| {
                self.error(
                    pos,
                    format!("invalid atom name `{name}` (must start with a lowercase letter)"),
                )
            }),
            _ => Err(self.error(pos, format!("expected {what}"))),
        }
    }

    fn statement(&mut self) -> Result<PossRule, ParseError> {
        let weight = if let Some(Token::Number(_)) = self.peek() {
            let (token, pos) = self.next().expect("peeked");
            let literal = match token {
                Token::Number(l) => l,
                _ => unreachable!(),
            };
            let weight = Weight::parse_decimal(&literal)
                .map_err(|e| self.error(pos, e.to_string()))?;
            match self.next() {
                Some((Token::Colon, _)) => {}
                _ => return Err(self.error(pos, "expected `:` after rule weight")),
            }
            Some((weight, pos))
        } else {
            None
        };

        let head = self.expect_atom("rule head")?;

        let mut pos_body = Vec::new();
        let mut naf_body = Vec::new();
        if let Some(Token::ColonDash) = self.peek() {
            self.next();
            loop {
                let lit_pos = self.pos();
                let negated = matches!(self.peek(), Some(Token::Ident(n)) if n == "not");
                if negated {
                    self.next();
                }
                let atom = self.expect_atom("body atom")?;
                let part: &mut Vec<Atom> = if negated { &mut naf_body } else { &mut pos_body };
                if part.contains(&atom) {
                    let kind = if negated { "naf" } else { "positive" };
                    return Err(self.error(
                        lit_pos,
                        format!("duplicate atom `{atom}` in {kind} body part"),
                    ));
                }
                part.push(atom);
                match self.peek() {
                    Some(Token::Comma) => {
                        self.next();
                    }
                    _ => break,
                }
            }
        }

        let dot_pos = self.pos();
        match self.next() {
            Some((Token::Dot, _)) => {}
            _ => return Err(self.error(dot_pos, "expected `.` at end of statement")),
        }

        let rule = Rule::new(head, pos_body, naf_body);
        match weight {
            Some((w, pos)) => PossRule::new(rule, w).map_err(|e| self.error(pos, e.to_string())),
            None => Ok(PossRule::classical(rule)),
        }
    }
}

/// Parses a `.pasp` program. Rule order is preserved; unweighted
/// statements receive weight 1.
pub fn parse_program(text: &str) -> Result<Program, Error> {
    let lexer = Lexer::new(text);
    let end_line = text.lines().count().max(1);
    let end = Pos {
        line: end_line,
        column: text.lines().last().map_or(1, |l| l.len() + 1),
    };
    let tokens = lexer.tokens()?;
    let mut parser = Parser { tokens, at: 0, end };
    let mut rules = Vec::new();
    while parser.peek().is_some() {
        rules.push(parser.statement()?);
    }
    Ok(Program::new(rules))
}
