//! Lexer and recursive-descent parser for the ASCII syntax
//!
//! ```text
//! T ::= Ident | T "->" T | "Pi" Ident "." T | "(" T ")"
//! M ::= Ident | "lam" Ident ":" T "." M | "Lam" Ident "." M
//!     | M M | M "{" T "}" | "(" M ")"
//! ```
//!
//! Identifiers bound by an enclosing binder become variables. An unbound
//! identifier resolves against the signature when one is supplied: declared
//! constants and sorts become `Const`/`Base`, anything else a free `Var`.
//! Without a signature every unbound identifier is read as a constant (in
//! terms) or a base sort (in types).

use thiserror::Error;

use super::syntax::{Name, Term, Type};
use crate::signature::Signature;

/// Namespace prefixes lexed as a single qualified identifier, e.g. `church:add`.
pub const QUALIFIED_PREFIXES: &[&str] = &["church"];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Lam,
    BigLam,
    Pi,
    Arrow,
    Dot,
    Colon,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Equals,
    Comma,
    At,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Lam => "`lam`".into(),
            Tok::BigLam => "`Lam`".into(),
            Tok::Pi => "`Pi`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Comma => "`,`".into(),
            Tok::At => "`@`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits `src` into tokens; `#` starts a comment running to end of line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let push = |tokens: &mut Vec<Token>, tok| {
            tokens.push(Token { tok, line: start_line, column: start_col })
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            push(&mut tokens, Tok::Arrow);
            i += 2;
            col += 2;
            continue;
        }
        let single = match c {
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '=' => Some(Tok::Equals),
            ',' => Some(Tok::Comma),
            '@' => Some(Tok::At),
            _ => None,
        };
        if let Some(tok) = single {
            push(&mut tokens, tok);
            i += 1;
            col += 1;
            continue;
        }
        if is_ident_char(c) && c != '\'' {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let mut word: String = chars[start..i].iter().collect();
            if QUALIFIED_PREFIXES.contains(&word.as_str())
                && chars.get(i) == Some(&':')
                && chars.get(i + 1).is_some_and(|c| is_ident_char(*c))
            {
                i += 1;
                let rest = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                word.push(':');
                word.extend(&chars[rest..i]);
            }
            col += i - start;
            let tok = match word.as_str() {
                "lam" => Tok::Lam,
                "Lam" => Tok::BigLam,
                "Pi" => Tok::Pi,
                _ => Tok::Ident(word),
            };
            push(&mut tokens, tok);
            continue;
        }
        return Err(ParseError {
            line,
            column: col,
            message: format!("unexpected character `{c}`"),
        });
    }
    tokens.push(Token { tok: Tok::Eof, line, column: col });
    Ok(tokens)
}

/// Cursor over a token stream with binder scopes, shared by every textual
/// format of the crate.
pub struct TokenStream<'s> {
    tokens: Vec<Token>,
    pos: usize,
    signature: Option<&'s Signature>,
    term_scope: Vec<Name>,
    type_scope: Vec<Name>,
}

impl<'s> TokenStream<'s> {
    pub fn new(src: &str, signature: Option<&'s Signature>) -> Result<Self, ParseError> {
        Ok(TokenStream {
            tokens: tokenize(src)?,
            pos: 0,
            signature,
            term_scope: Vec::new(),
            type_scope: Vec::new(),
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub fn peek_at(&self, offset: usize) -> &Tok {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].tok
    }

    pub fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub fn error_here(&self, message: impl Into<String>) -> ParseError {
        let tok = &self.tokens[self.pos];
        ParseError { line: tok.line, column: tok.column, message: message.into() }
    }

    pub fn expect(&mut self, want: Tok) -> Result<Token, ParseError> {
        if *self.peek() == want {
            Ok(self.advance())
        } else {
            Err(self.error_here(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    pub fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == want {
            self.advance();
            true
        } else {
            false
        }
    }

    pub fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok(s)
            }
            other => Err(self.error_here(format!("expected identifier, found {}", other.describe()))),
        }
    }

    pub fn expect_eof(&mut self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error_here(format!("unexpected {}", self.peek().describe())))
        }
    }

    fn resolve_type_name(&self, name: String) -> Type {
        if self.type_scope.contains(&name) {
            return Type::Var(name);
        }
        if is_qualified(&name) {
            return Type::Base(name);
        }
        match self.signature {
            None => Type::Base(name),
            Some(sig) if sig.has_sort(&name) => Type::Base(name),
            Some(_) => Type::Var(name),
        }
    }

    fn resolve_term_name(&self, name: String) -> Term {
        if self.term_scope.contains(&name) {
            return Term::Var(name);
        }
        if is_qualified(&name) {
            return Term::Const(name);
        }
        match self.signature {
            None => Term::Const(name),
            Some(sig) if sig.constant_type(&name).is_some() => Term::Const(name),
            Some(_) => Term::Var(name),
        }
    }

    pub fn parse_type(&mut self) -> Result<Type, ParseError> {
        if self.eat(&Tok::Pi) {
            let var = self.expect_ident()?;
            self.expect(Tok::Dot)?;
            self.type_scope.push(var.clone());
            let body = self.parse_type();
            self.type_scope.pop();
            return Ok(Type::pi(var, body?));
        }
        let lhs = self.parse_type_atom()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.parse_type()?;
            Ok(Type::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_type_atom(&mut self) -> Result<Type, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.advance();
                Ok(self.resolve_type_name(name))
            }
            Tok::LParen => {
                self.advance();
                let ty = self.parse_type()?;
                self.expect(Tok::RParen)?;
                Ok(ty)
            }
            other => Err(self.error_here(format!("expected a type, found {}", other.describe()))),
        }
    }

    pub fn parse_term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Lam | Tok::BigLam => self.parse_binder(),
            _ => self.parse_application(),
        }
    }

    fn parse_binder(&mut self) -> Result<Term, ParseError> {
        if self.eat(&Tok::Lam) {
            let var = self.expect_ident()?;
            self.expect(Tok::Colon)?;
            let annot = self.parse_type()?;
            self.expect(Tok::Dot)?;
            self.term_scope.push(var.clone());
            let body = self.parse_term();
            self.term_scope.pop();
            Ok(Term::lam(var, annot, body?))
        } else {
            self.expect(Tok::BigLam)?;
            let var = self.expect_ident()?;
            self.expect(Tok::Dot)?;
            self.type_scope.push(var.clone());
            let body = self.parse_term();
            self.type_scope.pop();
            Ok(Term::ty_lam(var, body?))
        }
    }

    fn parse_application(&mut self) -> Result<Term, ParseError> {
        let mut term = self.parse_term_atom()?;
        loop {
            match self.peek() {
                Tok::LBrace => {
                    self.advance();
                    let ty = self.parse_type()?;
                    self.expect(Tok::RBrace)?;
                    term = Term::ty_app(term, ty);
                }
                Tok::Ident(_) | Tok::LParen => {
                    let arg = self.parse_term_atom()?;
                    term = Term::app(term, arg);
                }
                Tok::Lam | Tok::BigLam => {
                    let arg = self.parse_binder()?;
                    return Ok(Term::app(term, arg));
                }
                _ => return Ok(term),
            }
        }
    }

    fn parse_term_atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.advance();
                Ok(self.resolve_term_name(name))
            }
            Tok::LParen => {
                self.advance();
                let t = self.parse_term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => Err(self.error_here(format!("expected a term, found {}", other.describe()))),
        }
    }
}

fn is_qualified(name: &str) -> bool {
    name.contains(':')
}

pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    parse_complete(src, None, TokenStream::parse_type)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_complete(src, None, TokenStream::parse_term)
}

/// Parses a type, resolving unbound names against `sig`.
pub fn parse_type_in(src: &str, sig: &Signature) -> Result<Type, ParseError> {
    parse_complete(src, Some(sig), TokenStream::parse_type)
}

/// Parses a term, resolving unbound names against `sig`.
pub fn parse_term_in(src: &str, sig: &Signature) -> Result<Term, ParseError> {
    parse_complete(src, Some(sig), TokenStream::parse_term)
}

fn parse_complete<'s, T>(
    src: &str,
    sig: Option<&'s Signature>,
    f: impl FnOnce(&mut TokenStream<'s>) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut ts = TokenStream::new(src, sig)?;
    let out = f(&mut ts)?;
    ts.expect_eof()?;
    Ok(out)
}
