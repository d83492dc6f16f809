use num_bigint::BigInt;

use crate::error::{DslError, Location, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Str(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    DotDot,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::DotDot => "`..`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub at: Location,
}

/// On-demand tokenizer; `#` starts a comment that runs to the end of the line.
pub struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn location(&self) -> Location {
        Location {
            line: self.line,
            column: self.column,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == '#' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn error(at: Location, message: impl Into<String>) -> DslError {
        DslError::Syntax {
            at,
            message: message.into(),
        }
    }

    /// An identity id such as `dyson-1.1`: letters, digits, `.`, `-`, `_`.
    pub fn raw_id(&mut self) -> Result<Token> {
        self.skip_blank();
        let at = self.location();
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '_') {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(Self::error(at, "expected an identity id"));
        }
        Ok(Token { tok: Tok::Ident(s), at })
    }

    pub fn next_token(&mut self) -> Result<Token> {
        self.skip_blank();
        let at = self.location();
        let Some(c) = self.bump() else {
            return Ok(Token { tok: Tok::Eof, at });
        };
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '.' => {
                if self.chars.peek() == Some(&'.') {
                    self.bump();
                    Tok::DotDot
                } else {
                    return Err(Self::error(at, "expected `..`"));
                }
            }
            '"' => {
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => break,
                        Some('\n') | None => return Err(Self::error(at, "unterminated string")),
                        Some(c) => s.push(c),
                    }
                }
                Tok::Str(s)
            }
            c if c.is_ascii_digit() => {
                let mut s = String::from(c);
                while let Some(&d) = self.chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Int(s.parse().expect("digits"))
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::from(c);
                while let Some(&d) = self.chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => return Err(Self::error(at, format!("unexpected character `{other}`"))),
        };
        Ok(Token { tok, at })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        let mut lx = Lexer::new(src);
        let mut out = Vec::new();
        loop {
            let t = lx.next_token().unwrap().tok;
            if t == Tok::Eof {
                return out;
            }
            out.push(t);
        }
    }

    #[test]
    fn ranges_and_comments() {
        assert_eq!(
            toks("0..auto # trailing\n-q^2"),
            vec![
                Tok::Int(0.into()),
                Tok::DotDot,
                Tok::Ident("auto".into()),
                Tok::Minus,
                Tok::Ident("q".into()),
                Tok::Caret,
                Tok::Int(2.into())
            ]
        );
    }

    #[test]
    fn locations_count_lines_and_columns() {
        let mut lx = Lexer::new("a\n  bc");
        assert_eq!(lx.next_token().unwrap().at, Location { line: 1, column: 1 });
        assert_eq!(lx.next_token().unwrap().at, Location { line: 2, column: 3 });
        assert_eq!(lx.next_token().unwrap().at, Location { line: 2, column: 5 });
    }

    #[test]
    fn raw_ids_keep_dots_and_dashes() {
        let mut lx = Lexer::new("  multisum-4.5-k1 {");
        assert_eq!(lx.raw_id().unwrap().tok, Tok::Ident("multisum-4.5-k1".into()));
        assert_eq!(lx.next_token().unwrap().tok, Tok::LBrace);
    }

    #[test]
    fn stray_characters() {
        assert!(matches!(
            Lexer::new("  $").next_token(),
            Err(DslError::Syntax {
                at: Location { line: 1, column: 3 },
                ..
            })
        ));
    }
}
