//! Lexicons: words mapped to closed, well-typed terms, plus named coercions.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::kernel::parse::{ParseError, Tok, TokenStream};
use crate::kernel::syntax::{Name, Term, Type};
use crate::kernel::typing::{typecheck, Context, TypeError};
use crate::signature::Signature;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("`{0}` is defined twice")]
    Duplicate(Name),
    #[error("entry `{word}`: {error}")]
    IllTyped { word: Name, error: TypeError },
    #[error("coercion `{name}` has type {ty}, not an arrow between Pi-free types")]
    BadCoercion { name: Name, ty: Type },
}

/// A coercion term together with its source and target types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coercion {
    pub term: Term,
    pub from: Type,
    pub to: Type,
}

impl Coercion {
    pub fn ty(&self) -> Type {
        Type::arrow(self.from.clone(), self.to.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Word,
    Coercion,
}

/// Outcome of checking one lexicon statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryReport {
    pub kind: EntryKind,
    pub name: Name,
    pub term: Term,
    pub result: Result<Type, LexiconError>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexicon {
    signature: Signature,
    entries: BTreeMap<Name, (Term, Type)>,
    coercions: BTreeMap<Name, Coercion>,
}

impl Lexicon {
    pub fn new(signature: Signature) -> Self {
        Lexicon { signature, entries: BTreeMap::new(), coercions: BTreeMap::new() }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Adds a word after type checking its term in the empty context.
    pub fn add_entry(&mut self, word: impl Into<Name>, term: Term) -> Result<Type, LexiconError> {
        let word = word.into();
        if self.entries.contains_key(&word) {
            return Err(LexiconError::Duplicate(word));
        }
        let ty = check_entry(&self.signature, &word, &term)?;
        self.entries.insert(word, (term, ty.clone()));
        Ok(ty)
    }

    pub fn add_coercion(&mut self, name: impl Into<Name>, term: Term) -> Result<Type, LexiconError> {
        let name = name.into();
        if self.coercions.contains_key(&name) {
            return Err(LexiconError::Duplicate(name));
        }
        let coercion = check_coercion(&self.signature, &name, &term)?;
        let ty = coercion.ty();
        self.coercions.insert(name, coercion);
        Ok(ty)
    }

    pub fn entry(&self, word: &str) -> Option<(&Term, &Type)> {
        self.entries.get(word).map(|(t, ty)| (t, ty))
    }

    pub fn coercion(&self, name: &str) -> Option<&Coercion> {
        self.coercions.get(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Name, &Term, &Type)> {
        self.entries.iter().map(|(w, (t, ty))| (w, t, ty))
    }

    pub fn coercions(&self) -> impl Iterator<Item = (&Name, &Coercion)> {
        self.coercions.iter()
    }
}

fn check_entry(sig: &Signature, word: &str, term: &Term) -> Result<Type, LexiconError> {
    typecheck(&Context::new(sig), term)
        .map_err(|error| LexiconError::IllTyped { word: word.into(), error })
}

fn check_coercion(sig: &Signature, name: &str, term: &Term) -> Result<Coercion, LexiconError> {
    let ty = check_entry(sig, name, term)?;
    match &ty {
        Type::Arrow(a, b) if !a.contains_pi() && !b.contains_pi() => Ok(Coercion {
            term: term.clone(),
            from: (**a).clone(),
            to: (**b).clone(),
        }),
        _ => Err(LexiconError::BadCoercion { name: name.into(), ty }),
    }
}

fn parse_statements(
    sig: &Signature,
    src: &str,
) -> Result<Vec<(EntryKind, Name, Term)>, ParseError> {
    let mut ts = TokenStream::new(src, Some(sig))?;
    let mut out = Vec::new();
    while !ts.at_eof() {
        let kind = match (ts.peek(), ts.peek_at(1)) {
            (Tok::Ident(k), Tok::Ident(_)) if k == "coercion" => {
                ts.advance();
                EntryKind::Coercion
            }
            _ => EntryKind::Word,
        };
        let name = ts.expect_ident()?;
        ts.expect(Tok::Equals)?;
        let term = ts.parse_term()?;
        ts.expect(Tok::Dot)?;
        out.push((kind, name, term));
    }
    Ok(out)
}

/// Checks every statement of a lexicon file independently, in file order.
/// Only syntax errors abort the whole file.
pub fn check_lexicon(sig: &Signature, src: &str) -> Result<Vec<EntryReport>, ParseError> {
    let mut seen_words = Vec::new();
    let mut seen_coercions = Vec::new();
    let reports = parse_statements(sig, src)?
        .into_iter()
        .map(|(kind, name, term)| {
            let seen = match kind {
                EntryKind::Word => &mut seen_words,
                EntryKind::Coercion => &mut seen_coercions,
            };
            let result = if seen.contains(&name) {
                Err(LexiconError::Duplicate(name.clone()))
            } else {
                seen.push(name.clone());
                match kind {
                    EntryKind::Word => check_entry(sig, &name, &term),
                    EntryKind::Coercion => check_coercion(sig, &name, &term).map(|c| c.ty()),
                }
            };
            EntryReport { kind, name, term, result }
        })
        .collect();
    Ok(reports)
}

/// Reads a lexicon file of `word = TERM.` and `coercion NAME = TERM.`
/// statements. Every entry is type checked at load; the first failure is
/// returned.
pub fn load_lexicon(sig: &Signature, src: &str) -> Result<Lexicon, LexiconError> {
    let mut lex = Lexicon::new(sig.clone());
    for (kind, name, term) in parse_statements(sig, src)? {
        match kind {
            EntryKind::Word => lex.add_entry(name, term)?,
            EntryKind::Coercion => lex.add_coercion(name, term)?,
        };
    }
    Ok(lex)
}
