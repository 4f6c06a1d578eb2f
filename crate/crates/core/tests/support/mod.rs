//! Shared helpers for the integration tests: corpus access and oracles that
//! do not share code with the implementation under test.

#![allow(dead_code)]

pub mod nameless;
pub mod reader;

use std::fs;
use std::path::PathBuf;

use fglue::glue::{load_lexicon, parse_tree, Lexicon, SentenceTree};
use fglue::kernel::reduce::contract;
use fglue::kernel::{Term, Type};
use fglue::signature::{load_signature, Signature};
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn read_corpus(name: &str) -> String {
    let path = corpus_dir().join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn demo_signature() -> Signature {
    load_signature(&read_corpus("demo.sig")).expect("demo signature loads")
}

pub fn demo_lexicon() -> Lexicon {
    load_lexicon(&demo_signature(), &read_corpus("demo.lex")).expect("demo lexicon loads")
}

/// A corpus sentence: its name, tree and golden file contents.
pub struct Sentence {
    pub name: String,
    pub tree: SentenceTree,
    pub golden: String,
}

fn sentence(sig: &Signature, rel: &str) -> Sentence {
    let tree_src = read_corpus(&format!("{rel}.tree"));
    Sentence {
        name: rel.to_string(),
        tree: parse_tree(tree_src.trim(), Some(sig)).expect("corpus tree parses"),
        golden: read_corpus(&format!("{rel}.golden")),
    }
}

/// The first-order sentences, in file-name order.
pub fn first_order_sentences(sig: &Signature) -> Vec<Sentence> {
    let mut names: Vec<String> = fs::read_dir(corpus_dir().join("sentences"))
        .unwrap()
        .filter_map(|e| {
            let name = e.unwrap().file_name().into_string().unwrap();
            name.strip_suffix(".tree").map(|n| format!("sentences/{n}"))
        })
        .collect();
    names.sort();
    names.iter().map(|n| sentence(sig, n)).collect()
}

pub fn higher_order_sentence(sig: &Signature) -> Sentence {
    sentence(sig, "every_property_holds_of_john")
}

pub fn traveller_sentence(sig: &Signature) -> Sentence {
    sentence(sig, "traveller")
}

pub fn all_sentences(sig: &Signature) -> Vec<Sentence> {
    let mut out = first_order_sentences(sig);
    out.push(higher_order_sentence(sig));
    out.push(traveller_sentence(sig));
    out
}

/// Positions of every redex, as paths of child indices.
pub fn redex_paths(term: &Term) -> Vec<Vec<usize>> {
    fn go(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if contract(t).is_some() {
            out.push(path.clone());
        }
        let children: Vec<&Term> = match t {
            Term::Var(_) | Term::Const(_) => vec![],
            Term::Lam(_, _, b) | Term::TyLam(_, b) | Term::TyApp(b, _) => vec![b],
            Term::App(f, a) => vec![f, a],
        };
        for (i, c) in children.into_iter().enumerate() {
            path.push(i);
            go(c, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(term, &mut Vec::new(), &mut out);
    out
}

/// Contracts the redex at `path`.
pub fn contract_at(term: &Term, path: &[usize]) -> Term {
    let Some((&i, rest)) = path.split_first() else {
        return contract(term).expect("redex at path").0;
    };
    match (term, i) {
        (Term::Lam(x, ty, b), 0) => Term::lam(x.clone(), ty.clone(), contract_at(b, rest)),
        (Term::TyLam(a, b), 0) => Term::ty_lam(a.clone(), contract_at(b, rest)),
        (Term::TyApp(b, ty), 0) => Term::ty_app(contract_at(b, rest), ty.clone()),
        (Term::App(f, a), 0) => Term::app(contract_at(f, rest), (**a).clone()),
        (Term::App(f, a), 1) => Term::app((**f).clone(), contract_at(a, rest)),
        _ => panic!("bad path"),
    }
}

/// A random closed type over `e` and `t`, with Pi binders.
pub fn random_type<R: Rng>(rng: &mut R, depth: usize, scope: &mut Vec<String>) -> Type {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        if !scope.is_empty() && rng.gen_bool(0.5) {
            return Type::var(scope[rng.gen_range(0..scope.len())].clone());
        }
        return Type::base(if rng.gen_bool(0.5) { "e" } else { "t" });
    }
    if rng.gen_bool(0.3) {
        let name = ["a", "b", "p"][rng.gen_range(0..3)].to_string();
        scope.push(name.clone());
        let body = random_type(rng, depth - 1, scope);
        scope.pop();
        Type::pi(name, body)
    } else {
        Type::arrow(random_type(rng, depth - 1, scope), random_type(rng, depth - 1, scope))
    }
}
