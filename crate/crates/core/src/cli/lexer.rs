//! Tokens of the declaration language.

use super::ast::SourceSpan;
use super::Diagnostic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Eq,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Arrow,
    SlashSlash,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Eq => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::SlashSlash => "`//`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

/// Splits the input into tokens. Comments run from `#` to the end of the line.
pub fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut line_start) = (0usize, 1usize, 0usize);
    let span = |start: usize, end: usize, line: usize, line_start: usize| SourceSpan {
        line,
        column: text[line_start..start].chars().count() + 1,
        start,
        end,
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'=' => Some(Tok::Eq),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            b':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            tokens.push(Token { tok, span: span(start, i, line, line_start) });
            continue;
        }
        match c {
            b'\n' => {
                i += 1;
                tokens.push(Token { tok: Tok::Newline, span: span(start, i, line, line_start) });
                line += 1;
                line_start = i;
            }
            b' ' | b'\t' | b'\r' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                tokens.push(Token { tok: Tok::Arrow, span: span(start, i, line, line_start) });
            }
            b'/' if bytes.get(i + 1) == Some(&b'/') => {
                i += 2;
                tokens.push(Token { tok: Tok::SlashSlash, span: span(start, i, line, line_start) });
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s = span(start, i, line, line_start);
                let n = text[start..i].parse::<u64>().map_err(|_| Diagnostic::new(s, "integer literal too large"))?;
                tokens.push(Token { tok: Tok::Int(n), span: s });
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'-') {
                    // a hyphen belongs to the word only when a letter follows (`main-claim`)
                    if bytes[i] == b'-' && !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphabetic()) {
                        break;
                    }
                    i += 1;
                }
                tokens.push(Token { tok: Tok::Ident(text[start..i].to_string()), span: span(start, i, line, line_start) });
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                let s = span(start, start + ch.len_utf8(), line, line_start);
                return Err(Diagnostic::new(s, format!("unexpected character `{ch}`")));
            }
        }
    }
    tokens.push(Token { tok: Tok::Eof, span: span(bytes.len(), bytes.len(), line, line_start) });
    Ok(tokens)
}
