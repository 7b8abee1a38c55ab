use crate::error::{Error, Result};
use crate::model::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Section(String),
    Ident(String),
    Term(Term),
    Arrow,
    LParen,
    RParen,
    Comma,
    Equals,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Section(s) => format!("section [{s}]"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Term(t) => format!("term {t}"),
            Tok::Arrow => "\"->\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Comma => "\",\"".into(),
            Tok::Equals => "\"=\"".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

/// A token with its 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

impl Spanned {
    pub fn error(&self, source: Error) -> Error {
        Error::Located {
            line: self.line,
            column: self.column,
            source: Box::new(source),
        }
    }
}

pub const SECTIONS: [&str; 4] = ["schema", "dependencies", "instance", "query"];

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    at_line_start: bool,
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek2(&self) -> Option<char> {
        self.chars.get(self.pos + 1).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
            self.at_line_start = true;
        } else {
            self.column += 1;
            if !c.is_whitespace() {
                self.at_line_start = false;
            }
        }
        Some(c)
    }

    fn syntax(&self, line: usize, column: usize, msg: impl Into<String>) -> Error {
        Error::Located {
            line,
            column,
            source: Box::new(Error::Syntax(msg.into())),
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| f(*c)) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn next_token(&mut self) -> Result<Spanned> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('-') if self.at_line_start && self.peek2() == Some('-') => {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let (line, column) = (self.line, self.column);
        let spanned = |tok| Ok(Spanned { tok, line, column });
        let Some(c) = self.peek() else {
            return spanned(Tok::Eof);
        };
        match c {
            '(' | ')' | ',' | '=' => {
                self.bump();
                spanned(match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => Tok::Equals,
                })
            }
            '-' if self.peek2() == Some('>') => {
                self.bump();
                self.bump();
                spanned(Tok::Arrow)
            }
            '[' => {
                self.bump();
                let name = self.take_while(|c| c != ']' && c != '\n');
                if self.bump() != Some(']') || !SECTIONS.contains(&name.as_str()) {
                    return Err(self.syntax(line, column, format!("unknown section [{name}]")));
                }
                spanned(Tok::Section(name))
            }
            '\'' => {
                self.bump();
                let text = self.take_while(|c| c != '\'' && c != '\n');
                if self.bump() != Some('\'') {
                    return Err(self.syntax(line, column, "unterminated text constant"));
                }
                spanned(Tok::Term(Term::text(text)))
            }
            '-' | '0'..='9' => {
                let mut lit = String::new();
                if c == '-' {
                    lit.push('-');
                    self.bump();
                }
                lit.push_str(&self.take_while(|c| c.is_ascii_digit()));
                match lit.parse::<Term>() {
                    Ok(t)
                        if self
                            .peek()
                            .is_none_or(|c| !c.is_ascii_alphanumeric() && c != '_') =>
                    {
                        spanned(Tok::Term(t))
                    }
                    _ => Err(self.syntax(line, column, format!("malformed integer {lit:?}"))),
                }
            }
            '#' => {
                let lit = self.take_while(|c| c == '#' || c.is_ascii_alphanumeric() || c == '_');
                lit.parse::<Term>()
                    .map(Tok::Term)
                    .map(|tok| Spanned { tok, line, column })
                    .map_err(|_| self.syntax(line, column, format!("malformed term {lit:?}")))
            }
            c if c.is_ascii_alphabetic() => {
                let ident = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                spanned(Tok::Ident(ident))
            }
            other => Err(self.syntax(line, column, format!("unexpected character {other:?}"))),
        }
    }
}

/// Splits `src` into tokens, ending with [`Tok::Eof`].
pub fn tokenize(src: &str) -> Result<Vec<Spanned>> {
    let mut lx = Lexer {
        chars: src.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        at_line_start: true,
    };
    let mut out = Vec::new();
    loop {
        let t = lx.next_token()?;
        let eof = t.tok == Tok::Eof;
        out.push(t);
        if eof {
            return Ok(out);
        }
    }
}
