//! Capture-avoiding substitution of terms for term variables and of types
//! for type variables.

use std::collections::BTreeSet;

use super::syntax::{fresh_name, Name, Term, Type};

/// `ty[var := replacement]`
pub fn subst_type(ty: &Type, var: &str, replacement: &Type) -> Type {
    let repl_free = replacement.free_vars();
    subst_type_with(ty, var, replacement, &repl_free)
}

fn subst_type_with(ty: &Type, var: &str, repl: &Type, repl_free: &BTreeSet<Name>) -> Type {
    match ty {
        Type::Base(_) => ty.clone(),
        Type::Var(v) if v == var => repl.clone(),
        Type::Var(_) => ty.clone(),
        Type::Arrow(a, b) => Type::arrow(
            subst_type_with(a, var, repl, repl_free),
            subst_type_with(b, var, repl, repl_free),
        ),
        Type::Pi(b, body) => {
            if b == var || !body.has_free_var(var) {
                return ty.clone();
            }
            if repl_free.contains(b) {
                let body_free = body.free_vars();
                let renamed = fresh_name(b, |n| {
                    n == var || repl_free.contains(n) || body_free.contains(n)
                });
                let body = subst_type(body, b, &Type::Var(renamed.clone()));
                Type::pi(renamed, subst_type_with(&body, var, repl, repl_free))
            } else {
                Type::pi(b.clone(), subst_type_with(body, var, repl, repl_free))
            }
        }
    }
}

/// `body[tyvar := replacement]` through annotations, type applications and
/// under type abstractions.
pub fn subst_type_in_term(body: &Term, tyvar: &str, replacement: &Type) -> Term {
    let repl_free = replacement.free_vars();
    subst_type_in_term_with(body, tyvar, replacement, &repl_free)
}

fn subst_type_in_term_with(
    term: &Term,
    tyvar: &str,
    repl: &Type,
    repl_free: &BTreeSet<Name>,
) -> Term {
    match term {
        Term::Var(_) | Term::Const(_) => term.clone(),
        Term::Lam(x, ty, body) => Term::lam(
            x.clone(),
            subst_type_with(ty, tyvar, repl, repl_free),
            subst_type_in_term_with(body, tyvar, repl, repl_free),
        ),
        Term::App(f, a) => Term::app(
            subst_type_in_term_with(f, tyvar, repl, repl_free),
            subst_type_in_term_with(a, tyvar, repl, repl_free),
        ),
        Term::TyApp(f, ty) => Term::ty_app(
            subst_type_in_term_with(f, tyvar, repl, repl_free),
            subst_type_with(ty, tyvar, repl, repl_free),
        ),
        Term::TyLam(a, inner) => {
            if a == tyvar || !inner.has_free_type_var(tyvar) {
                return term.clone();
            }
            if repl_free.contains(a) {
                let inner_free = inner.free_type_vars();
                let renamed = fresh_name(a, |n| {
                    n == tyvar || repl_free.contains(n) || inner_free.contains(n)
                });
                let inner = subst_type_in_term(inner, a, &Type::Var(renamed.clone()));
                Term::ty_lam(
                    renamed,
                    subst_type_in_term_with(&inner, tyvar, repl, repl_free),
                )
            } else {
                Term::ty_lam(
                    a.clone(),
                    subst_type_in_term_with(inner, tyvar, repl, repl_free),
                )
            }
        }
    }
}

/// `body[var := replacement]`; binders of `body` are renamed whenever they
/// would capture a free term or type variable of `replacement`.
pub fn subst_term(body: &Term, var: &str, replacement: &Term) -> Term {
    let ctx = ReplacementInfo {
        term: replacement,
        free: replacement.free_vars(),
        free_types: replacement.free_type_vars(),
    };
    subst_term_with(body, var, &ctx)
}

struct ReplacementInfo<'a> {
    term: &'a Term,
    free: BTreeSet<Name>,
    free_types: BTreeSet<Name>,
}

fn subst_term_with(term: &Term, var: &str, repl: &ReplacementInfo<'_>) -> Term {
    match term {
        Term::Var(v) if v == var => repl.term.clone(),
        Term::Var(_) | Term::Const(_) => term.clone(),
        Term::Lam(x, ty, body) => {
            if x == var || !body.has_free_var(var) {
                return term.clone();
            }
            if repl.free.contains(x) {
                let body_free = body.free_vars();
                let renamed =
                    fresh_name(x, |n| n == var || repl.free.contains(n) || body_free.contains(n));
                let body = subst_term(body, x, &Term::Var(renamed.clone()));
                Term::lam(renamed, ty.clone(), subst_term_with(&body, var, repl))
            } else {
                Term::lam(x.clone(), ty.clone(), subst_term_with(body, var, repl))
            }
        }
        Term::App(f, a) => Term::app(subst_term_with(f, var, repl), subst_term_with(a, var, repl)),
        Term::TyApp(f, ty) => Term::ty_app(subst_term_with(f, var, repl), ty.clone()),
        Term::TyLam(a, inner) => {
            if !inner.has_free_var(var) {
                return term.clone();
            }
            if repl.free_types.contains(a) {
                let inner_free = inner.free_type_vars();
                let renamed =
                    fresh_name(a, |n| repl.free_types.contains(n) || inner_free.contains(n));
                let inner = subst_type_in_term(inner, a, &Type::Var(renamed.clone()));
                Term::ty_lam(renamed, subst_term_with(&inner, var, repl))
            } else {
                Term::ty_lam(a.clone(), subst_term_with(inner, var, repl))
            }
        }
    }
}
