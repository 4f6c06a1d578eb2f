//! Composition of lexicon terms along a sentence tree.

use thiserror::Error;

use super::coercion::{apply_coercion, coercion_mode, CoercionError};
use super::lexicon::Lexicon;
use super::tree::SentenceTree;
use crate::kernel::alpha::alpha_eq_types;
use crate::kernel::subst::subst_type;
use crate::kernel::syntax::{Name, Term, Type};
use crate::kernel::typing::{typecheck, Context, TypeError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InstantiationError {
    #[error("{0} is not a polymorphic function type")]
    NotPolymorphic(Type),
    #[error("cannot match {pattern} against {found}")]
    NoMatch { pattern: Type, found: Type },
    #[error("type variable `{0}` is not determined by the argument")]
    Ambiguous(Name),
}

/// Solves `Pi a1 ... Pi ak. A -> B` against an argument type by structural
/// matching of `A`, returning the instantiations of `a1 ... ak` in order.
/// Matching never looks under a Pi: a Pi-type in `A` that mentions one of
/// the `ai` fails.
pub fn infer_instantiation(fun_type: &Type, arg_type: &Type) -> Result<Vec<Type>, InstantiationError> {
    let mut vars = Vec::new();
    let mut body = fun_type;
    while let Type::Pi(a, inner) = body {
        vars.push(a.clone());
        body = inner;
    }
    let Type::Arrow(dom, _) = body else {
        return Err(InstantiationError::NotPolymorphic(fun_type.clone()));
    };
    if vars.is_empty() {
        return Err(InstantiationError::NotPolymorphic(fun_type.clone()));
    }
    let mut solution: Vec<Option<Type>> = vec![None; vars.len()];
    match_type(&vars, &mut solution, dom, arg_type)?;
    vars.into_iter()
        .zip(solution)
        .map(|(v, s)| s.ok_or(InstantiationError::Ambiguous(v)))
        .collect()
}

fn match_type(
    vars: &[Name],
    solution: &mut [Option<Type>],
    pattern: &Type,
    found: &Type,
) -> Result<(), InstantiationError> {
    let no_match = || InstantiationError::NoMatch { pattern: pattern.clone(), found: found.clone() };
    match (pattern, found) {
        (Type::Var(v), _) if vars.contains(v) => {
            let i = vars.iter().rposition(|a| a == v).unwrap();
            match &solution[i] {
                Some(prev) if alpha_eq_types(prev, found) => Ok(()),
                Some(_) => Err(no_match()),
                None => {
                    solution[i] = Some(found.clone());
                    Ok(())
                }
            }
        }
        (Type::Arrow(a, b), Type::Arrow(c, d)) => {
            match_type(vars, solution, a, c)?;
            match_type(vars, solution, b, d)
        }
        (Type::Pi(..), _) => {
            let mentions_var = vars.iter().any(|v| pattern.has_free_var(v));
            if !mentions_var && alpha_eq_types(pattern, found) {
                Ok(())
            } else {
                Err(no_match())
            }
        }
        _ if alpha_eq_types(pattern, found) => Ok(()),
        _ => Err(no_match()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("at {path}: unknown word `{word}`")]
    UnknownWord { path: String, word: Name },
    #[error("at {path}: unknown coercion `{name}`")]
    UnknownCoercion { path: String, name: Name },
    #[error("at {path}: `{word}` has type {ty}, which takes no further type argument")]
    TooManyInstantiations { path: String, word: Name, ty: Type },
    #[error("at {path}: instantiation {ty} is not a closed type over declared sorts")]
    BadInstantiation { path: String, ty: Type },
    #[error("at {path}: missing instantiation for {fun_type}: {reason}")]
    MissingInstantiation { path: String, fun_type: Type, reason: InstantiationError },
    #[error("at {path}: {subtree} has type {ty}, which is not a function type")]
    NotAFunction { path: String, subtree: String, ty: Type },
    #[error("at {path}: {subtree} expects {expected}, got {found}")]
    Mismatch { path: String, subtree: String, expected: Type, found: Type },
    #[error("at {path}: `{word}` has type {ty}, which no mode of coercion {coercion} accepts")]
    NoCoercionMode { path: String, word: Name, ty: Type, coercion: Type },
    #[error("at {path}: {error}")]
    Coercion { path: String, error: CoercionError },
    #[error("composed term is ill-typed: {0}")]
    IllTyped(#[from] TypeError),
}

/// Builds the meaning of `tree` bottom-up and type checks the result.
///
/// Subtrees are addressed in errors by paths such as `root.fun.arg`. When a
/// polymorphic function meets its argument without explicit instantiations,
/// they are inferred with [`infer_instantiation`].
pub fn compose(lex: &Lexicon, tree: &SentenceTree) -> Result<Term, ComposeError> {
    let (term, ty) = build(lex, tree, "root")?;
    let checked = typecheck(&Context::new(lex.signature()), &term)?;
    debug_assert!(alpha_eq_types(&checked, &ty));
    Ok(term)
}

fn closed_over(lex: &Lexicon, ty: &Type) -> bool {
    ty.is_closed() && ty.base_sorts().iter().all(|s| lex.signature().has_sort(s))
}

fn instantiate(term: Term, ty: Type, inst: &Type) -> Option<(Term, Type)> {
    match ty {
        Type::Pi(a, body) => Some((Term::ty_app(term, inst.clone()), subst_type(&body, &a, inst))),
        _ => None,
    }
}

fn lookup(lex: &Lexicon, word: &Name, path: &str) -> Result<(Term, Type), ComposeError> {
    lex.entry(word)
        .map(|(t, ty)| (t.clone(), ty.clone()))
        .ok_or_else(|| ComposeError::UnknownWord { path: path.into(), word: word.clone() })
}

fn build(lex: &Lexicon, tree: &SentenceTree, path: &str) -> Result<(Term, Type), ComposeError> {
    match tree {
        SentenceTree::Leaf(word, insts) => {
            let (mut term, mut ty) = lookup(lex, word, path)?;
            for inst in insts {
                if !closed_over(lex, inst) {
                    return Err(ComposeError::BadInstantiation { path: path.into(), ty: inst.clone() });
                }
                let too_many = || ComposeError::TooManyInstantiations {
                    path: path.into(),
                    word: word.clone(),
                    ty: ty.clone(),
                };
                (term, ty) = instantiate(term.clone(), ty.clone(), inst).ok_or_else(too_many)?;
            }
            Ok((term, ty))
        }
        SentenceTree::CoerceLeaf(word, name) => {
            let (term, ty) = lookup(lex, word, path)?;
            let c = lex.coercion(name).ok_or_else(|| ComposeError::UnknownCoercion {
                path: path.into(),
                name: name.clone(),
            })?;
            let mode = coercion_mode(c, &ty).ok_or_else(|| ComposeError::NoCoercionMode {
                path: path.into(),
                word: word.clone(),
                ty: ty.clone(),
                coercion: c.ty(),
            })?;
            apply_coercion(c, &term, &ty, mode)
                .map_err(|error| ComposeError::Coercion { path: path.into(), error })
        }
        SentenceTree::Node(fun, arg) => {
            let (mut f, mut f_ty) = build(lex, fun, &format!("{path}.fun"))?;
            let (a, a_ty) = build(lex, arg, &format!("{path}.arg"))?;
            if let Type::Pi(..) = f_ty {
                let insts = infer_instantiation(&f_ty, &a_ty).map_err(|reason| {
                    ComposeError::MissingInstantiation {
                        path: path.into(),
                        fun_type: f_ty.clone(),
                        reason,
                    }
                })?;
                for inst in &insts {
                    (f, f_ty) = instantiate(f, f_ty, inst).expect("prenex Pi");
                }
            }
            match f_ty {
                Type::Arrow(dom, cod) if alpha_eq_types(&dom, &a_ty) => Ok((Term::app(f, a), *cod)),
                Type::Arrow(dom, _) => Err(ComposeError::Mismatch {
                    path: path.into(),
                    subtree: fun.to_string(),
                    expected: *dom,
                    found: a_ty,
                }),
                ty => Err(ComposeError::NotAFunction {
                    path: path.into(),
                    subtree: fun.to_string(),
                    ty,
                }),
            }
        }
    }
}

/// Composed term with its type; a convenience for callers that need both.
pub fn compose_typed(lex: &Lexicon, tree: &SentenceTree) -> Result<(Term, Type), ComposeError> {
    let term = compose(lex, tree)?;
    let ty = typecheck(&Context::new(lex.signature()), &term)?;
    Ok((term, ty))
}
