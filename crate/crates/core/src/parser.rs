//! Parser for the Prolog-style ground program syntax.
//!
//! ```text
//! rule    := head "." | head ":-" body "." | ":-" body "."
//! body    := literal ("," literal)*
//! literal := "not" atom | atom
//! ```
//!
//! `%` starts a comment running to the end of the line. A terminating `.`
//! must be followed by whitespace, a comment, or end of input.

use thiserror::Error;

use crate::program::{Atom, BodyLiteral, Program};

/// Location of a token in the input. Lines and columns are 1-based, columns count chars.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub byte: usize,
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{} (byte {})", self.line, self.column, self.byte)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: Position, message: String },
    #[error("empty constraint `:- .` at {position}")]
    EmptyConstraint { position: Position },
}

impl ParseError {
    pub fn position(&self) -> Position {
        match self {
            ParseError::Syntax { position, .. } | ParseError::EmptyConstraint { position } => {
                *position
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Not,
    If,
    Comma,
    Dot,
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("atom `{name}`"),
            Token::Not => "`not`".into(),
            Token::If => "`:-`".into(),
            Token::Comma => "`,`".into(),
            Token::Dot => "`.`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    byte: usize,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            byte: 0,
            line: 1,
            column: 1,
        }
    }

    fn position(&self) -> Position {
        Position {
            byte: self.byte,
            line: self.line,
            column: self.column,
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.byte..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.byte += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn error(position: Position, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position,
            message: message.into(),
        }
    }

    fn next_token(&mut self) -> Result<(Token, Position), ParseError> {
        self.skip_trivia();
        let start = self.position();
        let Some(c) = self.bump() else {
            return Ok((Token::Eof, start));
        };
        let token = match c {
            ',' => Token::Comma,
            '.' => {
                match self.peek() {
                    None | Some('%') => {}
                    Some(n) if n.is_whitespace() => {}
                    Some(n) => {
                        return Err(Self::error(
                            self.position(),
                            format!("expected whitespace or end of input after `.`, found `{n}`"),
                        ))
                    }
                }
                Token::Dot
            }
            ':' => {
                if self.peek() == Some('-') {
                    self.bump();
                    Token::If
                } else {
                    return Err(Self::error(start, "expected `:-`"));
                }
            }
            c if c.is_ascii_lowercase() => {
                while matches!(self.peek(), Some(n) if n.is_ascii_alphanumeric() || n == '_') {
                    self.bump();
                }
                let text = &self.src[start.byte..self.byte];
                if text == "not" {
                    Token::Not
                } else {
                    Token::Ident(text.to_string())
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                return Err(Self::error(
                    start,
                    format!("unexpected `{c}`: atoms must start with a lowercase ASCII letter"),
                ))
            }
            c => return Err(Self::error(start, format!("unexpected character `{c}`"))),
        };
        Ok((token, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Token,
    current_pos: Position,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let (current, current_pos) = lexer.next_token()?;
        Ok(Parser {
            lexer,
            current,
            current_pos,
        })
    }

    fn advance(&mut self) -> Result<Token, ParseError> {
        let (next, pos) = self.lexer.next_token()?;
        self.current_pos = pos;
        Ok(std::mem::replace(&mut self.current, next))
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        Lexer::error(
            self.current_pos,
            format!("expected {expected}, found {}", self.current.describe()),
        )
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut program = Program::new();
        while self.current != Token::Eof {
            self.rule(&mut program)?;
        }
        Ok(program)
    }

    fn rule(&mut self, program: &mut Program) -> Result<(), ParseError> {
        let head = match &self.current {
            Token::Ident(_) => {
                let Token::Ident(name) = self.advance()? else {
                    unreachable!()
                };
                Some(Atom::new(name))
            }
            Token::If => None,
            _ => return Err(self.unexpected("an atom or `:-`")),
        };
        if head.is_some() && self.current == Token::Dot {
            self.advance()?;
            program.push(head, Vec::new());
            return Ok(());
        }
        if self.current != Token::If {
            return Err(self.unexpected("`.` or `:-`"));
        }
        let if_pos = self.current_pos;
        self.advance()?;
        if head.is_none() && self.current == Token::Dot {
            return Err(ParseError::EmptyConstraint { position: if_pos });
        }
        let mut body = vec![self.literal()?];
        while self.current == Token::Comma {
            self.advance()?;
            body.push(self.literal()?);
        }
        if self.current != Token::Dot {
            return Err(self.unexpected("`,` or `.`"));
        }
        self.advance()?;
        program.push(head, body);
        Ok(())
    }

    fn literal(&mut self) -> Result<BodyLiteral, ParseError> {
        let negated = if self.current == Token::Not {
            self.advance()?;
            true
        } else {
            false
        };
        match &self.current {
            Token::Ident(_) => {
                let Token::Ident(name) = self.advance()? else {
                    unreachable!()
                };
                Ok(BodyLiteral {
                    atom: Atom::new(name),
                    negated,
                })
            }
            _ => Err(self.unexpected("an atom")),
        }
    }
}

/// Parses program text. Rules keep their textual order; repeated body literals are dropped.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    Parser::new(text)?.program()
}
