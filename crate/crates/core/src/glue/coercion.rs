//! Applying coercions, directly or through type raising.

use std::fmt;

use thiserror::Error;

use super::lexicon::Coercion;
use crate::kernel::alpha::alpha_eq_types;
use crate::kernel::syntax::{fresh_name, Name, Term, Type};
use crate::signature::prop;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoercionMode {
    /// `target : A` becomes `c target : B`.
    Direct,
    /// `target : B -> t` becomes `lam x:A. target (c x) : A -> t`.
    Argument,
    /// `target : (A -> t) -> t` becomes `lift_raising(c) target : (B -> t) -> t`.
    Raised,
}

impl fmt::Display for CoercionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoercionMode::Direct => "direct",
            CoercionMode::Argument => "argument",
            CoercionMode::Raised => "raised",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("cannot coerce a term of type {target} with {coercion} in {mode} mode")]
pub struct CoercionError {
    pub mode: CoercionMode,
    pub coercion: Type,
    pub target: Type,
}

fn raised(ty: &Type) -> Type {
    Type::arrow(Type::arrow(ty.clone(), prop()), prop())
}

fn fresh(base: &str, avoid: &[&Term]) -> Name {
    let taken = |n: &str| avoid.iter().any(|t| t.has_free_var(n));
    if taken(base) {
        fresh_name(base, taken)
    } else {
        base.to_string()
    }
}

/// `lam Q:(A -> t) -> t. lam k:B -> t. Q (lam x:A. k (c x))`, of type
/// `((A -> t) -> t) -> (B -> t) -> t`.
pub fn lift_raising(c: &Coercion) -> Term {
    let q = fresh("Q", &[&c.term]);
    let k = fresh("k", &[&c.term]);
    let x = fresh("x", &[&c.term]);
    let inner = Term::lam(
        x.clone(),
        c.from.clone(),
        Term::app(Term::var(k.clone()), Term::app(c.term.clone(), Term::var(x))),
    );
    Term::lam(
        q.clone(),
        raised(&c.from),
        Term::lam(
            k,
            Type::arrow(c.to.clone(), prop()),
            Term::app(Term::var(q), inner),
        ),
    )
}

/// The mode that fits a target of type `target`, if any.
pub fn coercion_mode(c: &Coercion, target: &Type) -> Option<CoercionMode> {
    [CoercionMode::Direct, CoercionMode::Argument, CoercionMode::Raised]
        .into_iter()
        .find(|m| alpha_eq_types(&expected_target(c, *m), target))
}

fn expected_target(c: &Coercion, mode: CoercionMode) -> Type {
    match mode {
        CoercionMode::Direct => c.from.clone(),
        CoercionMode::Argument => Type::arrow(c.to.clone(), prop()),
        CoercionMode::Raised => raised(&c.from),
    }
}

/// Coerces `target : target_ty`, returning the new term and its type.
pub fn apply_coercion(
    c: &Coercion,
    target: &Term,
    target_ty: &Type,
    mode: CoercionMode,
) -> Result<(Term, Type), CoercionError> {
    if !alpha_eq_types(&expected_target(c, mode), target_ty) {
        return Err(CoercionError { mode, coercion: c.ty(), target: target_ty.clone() });
    }
    Ok(match mode {
        CoercionMode::Direct => (Term::app(c.term.clone(), target.clone()), c.to.clone()),
        CoercionMode::Argument => {
            let x = fresh("x", &[&c.term, target]);
            let body = Term::app(target.clone(), Term::app(c.term.clone(), Term::var(x.clone())));
            (Term::lam(x, c.from.clone(), body), Type::arrow(c.from.clone(), prop()))
        }
        CoercionMode::Raised => (Term::app(lift_raising(c), target.clone()), raised(&c.to)),
    })
}
