//! A minimal s-expression reader that remembers where every node starts.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            Sexp::List(..) => None,
        }
    }

    /// The head atom and the remaining items of a non-empty list.
    pub fn call(&self) -> Option<(&str, &[Sexp])> {
        match self {
            Sexp::List(items, _) => {
                let (head, rest) = items.split_first()?;
                Some((head.atom()?, rest))
            }
            Sexp::Atom(..) => None,
        }
    }
}

/// Reads every top-level expression of `text`. `;` starts a comment.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut reader = Reader {
        chars: text.chars().collect(),
        at: 0,
        pos: Pos { line: 1, col: 1 },
    };
    let mut out = Vec::new();
    loop {
        reader.skip_space();
        if reader.peek().is_none() {
            return Ok(out);
        }
        out.push(reader.read()?);
    }
}

struct Reader {
    chars: Vec<char>,
    at: usize,
    pos: Pos,
}

impl Reader {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += 1;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_space(&mut self) {
        while let Some(c) = self.peek() {
            if c == ';' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_space();
                    match self.peek() {
                        None => return Err(ParseError::new(start, "unclosed parenthesis")),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(items, start));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(')') => Err(ParseError::new(start, "unexpected `)`")),
            _ => {
                let mut atom = String::new();
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    atom.push(c);
                    self.bump();
                }
                Ok(Sexp::Atom(atom, start))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let xs = read_all("; header\n(a (b 1)\n  c)").unwrap();
        assert_eq!(xs.len(), 1);
        let Sexp::List(items, p) = &xs[0] else {
            panic!()
        };
        assert_eq!(*p, Pos { line: 2, col: 1 });
        assert_eq!(items[2].pos(), Pos { line: 3, col: 3 });
        assert_eq!(items[1].call().unwrap().0, "b");
    }

    #[test]
    fn unbalanced() {
        assert_eq!(read_all("(a (b)").unwrap_err().pos, Pos { line: 1, col: 1 });
        assert_eq!(read_all("a)").unwrap_err().pos, Pos { line: 1, col: 2 });
    }
}
