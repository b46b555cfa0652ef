//! Line-oriented tokenizer shared by the presentation and graph formats.

use super::{Pos, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Name(String),
    Int(String),
    Comma,
    Colon,
    Semi,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Newline,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name `{n}`"),
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Newline => "end of line".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            _ => "",
        }
    }
}

/// Tokens with positions. Comments run from `#` to the end of the line;
/// blank lines produce no tokens, and every nonblank line ends in `Newline`.
pub fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let code = line.split('#').next().unwrap_or("");
        let chars: Vec<(usize, char)> = code.char_indices().collect();
        let mut i = 0;
        let start_len = out.len();
        while i < chars.len() {
            let (_, c) = chars[i];
            let pos = Pos { line: line_no, col: i + 1 };
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let single = match c {
                ',' => Some(Tok::Comma),
                ':' => Some(Tok::Colon),
                ';' => Some(Tok::Semi),
                '[' => Some(Tok::LBrack),
                ']' => Some(Tok::RBrack),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                '+' => Some(Tok::Plus),
                '-' | '\u{2212}' => Some(Tok::Minus),
                '*' => Some(Tok::Star),
                '/' => Some(Tok::Slash),
                _ => None,
            };
            if let Some(t) = single {
                out.push((t, pos));
                i += 1;
            } else if c.is_ascii_digit() {
                let mut s = String::new();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    s.push(chars[i].1);
                    i += 1;
                }
                out.push((Tok::Int(s), pos));
            } else if c.is_alphabetic() || c == '_' {
                let mut s = String::new();
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                    s.push(chars[i].1);
                    i += 1;
                }
                out.push((Tok::Name(s), pos));
            } else {
                return Err(SyntaxError::new(pos, format!("unexpected character `{c}`")));
            }
        }
        if out.len() > start_len {
            let end = Pos { line: line_no, col: chars.len() + 1 };
            out.push((Tok::Newline, end));
        }
    }
    Ok(out)
}

/// A cursor over tokens with one-token lookahead.
pub struct Cursor {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Cursor {
    pub fn new(toks: Vec<(Tok, Pos)>, text: &str) -> Self {
        let lines = text.lines().count().max(1);
        let end = Pos { line: lines + 1, col: 1 };
        Cursor { toks, at: 0, end }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    pub fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    pub fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), Tok::describe)
    }

    pub fn expect(&mut self, want: Tok) -> Result<Pos, SyntaxError> {
        if self.peek() == Some(&want) {
            Ok(self.next().expect("peeked").1)
        } else {
            Err(SyntaxError::new(self.pos(), format!("expected {}, found {}", want.describe(), self.found())))
        }
    }

    pub fn name(&mut self) -> Result<(String, Pos), SyntaxError> {
        match self.peek() {
            Some(Tok::Name(_)) => match self.next() {
                Some((Tok::Name(n), p)) => Ok((n, p)),
                _ => unreachable!("peeked a name"),
            },
            _ => Err(SyntaxError::new(self.pos(), format!("expected a name, found {}", self.found()))),
        }
    }

    pub fn keyword(&mut self, kw: &str) -> Result<Pos, SyntaxError> {
        match self.peek() {
            Some(Tok::Name(n)) if n == kw => Ok(self.next().expect("peeked").1),
            _ => Err(SyntaxError::new(self.pos(), format!("expected `{kw}`, found {}", self.found()))),
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Name(n)) if n == kw)
    }

    pub fn int(&mut self) -> Result<(String, Pos), SyntaxError> {
        match self.peek() {
            Some(Tok::Int(_)) => match self.next() {
                Some((Tok::Int(n), p)) => Ok((n, p)),
                _ => unreachable!("peeked a number"),
            },
            _ => Err(SyntaxError::new(self.pos(), format!("expected a number, found {}", self.found()))),
        }
    }

    pub fn unexpected(&self) -> SyntaxError {
        SyntaxError::new(self.pos(), format!("unexpected {}", self.found()))
    }
}
