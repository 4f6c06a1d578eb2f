//! Sentence trees, written as s-expressions such as `((every{e} cat) sleeps)`.

use std::fmt;

use crate::kernel::parse::{ParseError, Tok, TokenStream};
use crate::kernel::syntax::{Name, Type};
use crate::signature::Signature;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SentenceTree {
    /// A word with explicit type instantiations, applied in order.
    Leaf(Name, Vec<Type>),
    /// A word seen through a named coercion.
    CoerceLeaf(Name, Name),
    /// Function applied to argument.
    Node(Box<SentenceTree>, Box<SentenceTree>),
}

impl SentenceTree {
    pub fn leaf(word: impl Into<Name>) -> SentenceTree {
        SentenceTree::Leaf(word.into(), Vec::new())
    }

    pub fn node(fun: SentenceTree, arg: SentenceTree) -> SentenceTree {
        SentenceTree::Node(Box::new(fun), Box::new(arg))
    }

    /// Words of the leaves, left to right.
    pub fn words(&self) -> Vec<&Name> {
        match self {
            SentenceTree::Leaf(w, _) | SentenceTree::CoerceLeaf(w, _) => vec![w],
            SentenceTree::Node(f, a) => {
                let mut out = f.words();
                out.extend(a.words());
                out
            }
        }
    }
}

impl fmt::Display for SentenceTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SentenceTree::Leaf(w, insts) => {
                f.write_str(w)?;
                if !insts.is_empty() {
                    let insts: Vec<String> = insts.iter().map(|t| t.to_string()).collect();
                    write!(f, "{{{}}}", insts.join(", "))?;
                }
                Ok(())
            }
            SentenceTree::CoerceLeaf(w, c) => write!(f, "{w}@{c}"),
            SentenceTree::Node(fun, arg) => write!(f, "({fun} {arg})"),
        }
    }
}

fn parse_node(ts: &mut TokenStream<'_>) -> Result<SentenceTree, ParseError> {
    if ts.eat(&Tok::LParen) {
        let mut tree = parse_node(ts)?;
        while !matches!(ts.peek(), Tok::RParen) {
            if ts.at_eof() {
                return Err(ts.error_here("unclosed `(`"));
            }
            tree = SentenceTree::node(tree, parse_node(ts)?);
        }
        ts.advance();
        return Ok(tree);
    }
    let word = ts.expect_ident()?;
    if ts.eat(&Tok::At) {
        return Ok(SentenceTree::CoerceLeaf(word, ts.expect_ident()?));
    }
    let mut insts = Vec::new();
    if ts.eat(&Tok::LBrace) {
        loop {
            insts.push(ts.parse_type()?);
            if !ts.eat(&Tok::Comma) {
                break;
            }
        }
        ts.expect(Tok::RBrace)?;
    }
    Ok(SentenceTree::Leaf(word, insts))
}

/// Parses a tree. `(a b c)` applies left to right, as `((a b) c)`.
/// Instantiation types are resolved against `sig` when given.
pub fn parse_tree(src: &str, sig: Option<&Signature>) -> Result<SentenceTree, ParseError> {
    let mut ts = TokenStream::new(src, sig)?;
    let tree = parse_node(&mut ts)?;
    ts.expect_eof()?;
    Ok(tree)
}
