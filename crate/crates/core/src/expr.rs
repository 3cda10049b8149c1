//! Textual expressions over frame labels.
//!
//! ```text
//! expr   := term   (("|" | "∪") term)*
//! term   := factor (("&" | "∩") factor)*
//! factor := label | "(" expr ")" | "0" | "∅" | "{}"
//! ```
//!
//! `&` binds tighter than `|`.

use crate::error::{Error, Result};
use crate::lattice::{Element, Frame};

/// Parse an expression into an element of the frame's hyper-power set.
pub fn parse_element(frame: &Frame, text: &str) -> Result<Element> {
    let mut p = Parser {
        frame,
        chars: text.chars().collect(),
        pos: 0,
    };
    let x = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(x)
}

/// Parse `expr = 0` (or `expr = ∅`), returning the element forced empty.
pub fn parse_constraint(frame: &Frame, text: &str) -> Result<Element> {
    let Some((lhs, rhs)) = text.split_once('=') else {
        return Err(Error::Parse {
            column: text.chars().count() + 1,
            message: "expected `expr = 0`".into(),
        });
    };
    let rhs_trim = rhs.trim();
    if !matches!(rhs_trim, "0" | "∅" | "{}") {
        return Err(Error::Parse {
            column: lhs.chars().count() + 2,
            message: format!("constraint right-hand side must be 0, got {rhs_trim:?}"),
        });
    }
    parse_element(frame, lhs)
}

struct Parser<'a> {
    frame: &'a Frame,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: String) -> Error {
        Error::Parse {
            column: self.pos + 1,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some('|' | '∪')) {
            self.pos += 1;
            acc = acc | self.term()?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some('&' | '∩')) {
            self.pos += 1;
            acc = acc & self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        match self.peek() {
            None => Err(self.error("unexpected end of expression".into())),
            Some('(') => {
                self.pos += 1;
                let x = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`".into()));
                }
                self.pos += 1;
                Ok(x)
            }
            Some('∅') | Some('0') => {
                self.pos += 1;
                Ok(self.frame.empty())
            }
            Some('{') => {
                self.pos += 1;
                if self.peek() != Some('}') {
                    return Err(self.error("expected `}`".into()));
                }
                self.pos += 1;
                Ok(self.frame.empty())
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric()
                        || matches!(self.chars[self.pos], '_' | '\''))
                {
                    self.pos += 1;
                }
                let label: String = self.chars[start..self.pos].iter().collect();
                match self.frame.index_of(&label) {
                    Some(i) => self.frame.atom(i),
                    None => Err(Error::Parse {
                        column: start + 1,
                        message: format!("unknown label {label:?}"),
                    }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
        }
    }
}
