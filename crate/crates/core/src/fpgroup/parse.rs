//! Recursive-descent parser for the word notation.
//!
//! ```text
//! relation := word ( '=' word )?
//! word     := term*
//! term     := atom ( '^' integer )?
//! atom     := name | '(' word ')' | '[' word ',' word ']'
//! name     := letter+ digit*
//! ```

use super::{Letter, Word};
use crate::error::{Error, Result};

pub(super) fn parse_relation(input: &str) -> Result<Word> {
    let mut p = Parser {
        input,
        chars: input.chars().collect(),
        pos: 0,
    };
    let lhs = p.word()?;
    p.skip_ws();
    let relator = if p.eat('=') {
        let rhs = p.word()?;
        lhs.inverse().concat(&rhs)
    } else {
        lhs
    };
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(relator)
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: String) -> Error {
        Error::WordSyntax {
            input: self.input.to_string(),
            reason,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '(' || c == '[' => {
                    let t = self.term()?;
                    w = w.concat(&t);
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`".into()));
                }
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let x = self.word()?;
                if !self.eat(',') {
                    return Err(self.error("expected `,` in commutator".into()));
                }
                let y = self.word()?;
                if !self.eat(']') {
                    return Err(self.error("expected `]`".into()));
                }
                Ok(Word::commutator(&x, &y))
            }
            _ => self
                .name()
                .map(|n| Word::from_letters(vec![Letter::new(n, false)])),
        }
    }

    fn name(&mut self) -> Result<String> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a generator name".into()));
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| self.error(format!("bad exponent `{text}`")))
    }
}
