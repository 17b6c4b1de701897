//! Tokenizer for the expression language.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TokenKind {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub kind: TokenKind,
    /// 1-based column in the source text.
    pub col: usize,
}

pub fn lex(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                tokens.push(Token { kind: TokenKind::Plus, col });
                i += 1;
            }
            '-' => {
                tokens.push(Token { kind: TokenKind::Minus, col });
                i += 1;
            }
            '*' => {
                tokens.push(Token { kind: TokenKind::Star, col });
                i += 1;
            }
            '/' => {
                tokens.push(Token { kind: TokenKind::Slash, col });
                i += 1;
            }
            '^' => {
                tokens.push(Token { kind: TokenKind::Caret, col });
                i += 1;
            }
            '(' => {
                tokens.push(Token { kind: TokenKind::LParen, col });
                i += 1;
            }
            ')' => {
                tokens.push(Token { kind: TokenKind::RParen, col });
                i += 1;
            }
            ',' => {
                tokens.push(Token { kind: TokenKind::Comma, col });
                i += 1;
            }
            ';' => {
                tokens.push(Token { kind: TokenKind::Semi, col });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let value: i64 = text.parse().map_err(|_| Error::Lex {
                    col,
                    msg: format!("integer literal `{}` out of range", text),
                })?;
                tokens.push(Token { kind: TokenKind::Int(value), col });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(src[start..i].to_string()),
                    col,
                });
            }
            other => {
                return Err(Error::Lex {
                    col,
                    msg: format!("unexpected character `{}`", other),
                });
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        col: bytes.len() + 1,
    });
    Ok(tokens)
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Int(n) => format!("integer `{}`", n),
            TokenKind::Ident(s) => format!("identifier `{}`", s),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}
