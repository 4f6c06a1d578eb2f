//! De Bruijn terms and a rightmost-innermost normalizer over them.
//!
//! Shares nothing with the named kernel beyond the input syntax, so it can
//! serve as an oracle for substitution, alpha-equivalence and normal forms.

use fglue::kernel::{Term, Type};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DTy {
    Base(String),
    Var(usize),
    Free(String),
    Arrow(Box<DTy>, Box<DTy>),
    Pi(Box<DTy>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DTm {
    Var(usize),
    Free(String),
    Const(String),
    Lam(DTy, Box<DTm>),
    App(Box<DTm>, Box<DTm>),
    TyLam(Box<DTm>),
    TyApp(Box<DTm>, DTy),
}

fn ty_of(ty: &Type, scope: &mut Vec<String>) -> DTy {
    match ty {
        Type::Base(b) => DTy::Base(b.clone()),
        Type::Var(v) => match scope.iter().rev().position(|s| s == v) {
            Some(i) => DTy::Var(i),
            None => DTy::Free(v.clone()),
        },
        Type::Arrow(a, b) => DTy::Arrow(Box::new(ty_of(a, scope)), Box::new(ty_of(b, scope))),
        Type::Pi(v, body) => {
            scope.push(v.clone());
            let body = ty_of(body, scope);
            scope.pop();
            DTy::Pi(Box::new(body))
        }
    }
}

pub fn from_type(ty: &Type) -> DTy {
    ty_of(ty, &mut Vec::new())
}

pub fn from_term(term: &Term) -> DTm {
    fn go(t: &Term, vars: &mut Vec<String>, tys: &mut Vec<String>) -> DTm {
        match t {
            Term::Var(x) => match vars.iter().rev().position(|s| s == x) {
                Some(i) => DTm::Var(i),
                None => DTm::Free(x.clone()),
            },
            Term::Const(c) => DTm::Const(c.clone()),
            Term::Lam(x, ty, body) => {
                let ty = ty_of(ty, tys);
                vars.push(x.clone());
                let body = go(body, vars, tys);
                vars.pop();
                DTm::Lam(ty, Box::new(body))
            }
            Term::App(f, a) => DTm::App(Box::new(go(f, vars, tys)), Box::new(go(a, vars, tys))),
            Term::TyLam(a, body) => {
                tys.push(a.clone());
                let body = go(body, vars, tys);
                tys.pop();
                DTm::TyLam(Box::new(body))
            }
            Term::TyApp(f, ty) => DTm::TyApp(Box::new(go(f, vars, tys)), ty_of(ty, tys)),
        }
    }
    go(term, &mut Vec::new(), &mut Vec::new())
}

fn shift_ty(ty: &DTy, d: isize, cutoff: usize) -> DTy {
    match ty {
        DTy::Var(i) if *i >= cutoff => DTy::Var((*i as isize + d) as usize),
        DTy::Base(_) | DTy::Var(_) | DTy::Free(_) => ty.clone(),
        DTy::Arrow(a, b) => DTy::Arrow(Box::new(shift_ty(a, d, cutoff)), Box::new(shift_ty(b, d, cutoff))),
        DTy::Pi(b) => DTy::Pi(Box::new(shift_ty(b, d, cutoff + 1))),
    }
}

fn subst_ty(ty: &DTy, j: usize, s: &DTy) -> DTy {
    match ty {
        DTy::Var(i) if *i == j => s.clone(),
        DTy::Base(_) | DTy::Var(_) | DTy::Free(_) => ty.clone(),
        DTy::Arrow(a, b) => DTy::Arrow(Box::new(subst_ty(a, j, s)), Box::new(subst_ty(b, j, s))),
        DTy::Pi(b) => DTy::Pi(Box::new(subst_ty(b, j + 1, &shift_ty(s, 1, 0)))),
    }
}

/// Shifts free term variables by `d` (at or above `cutoff`).
fn shift(t: &DTm, d: isize, cutoff: usize) -> DTm {
    match t {
        DTm::Var(i) if *i >= cutoff => DTm::Var((*i as isize + d) as usize),
        DTm::Var(_) | DTm::Free(_) | DTm::Const(_) => t.clone(),
        DTm::Lam(ty, b) => DTm::Lam(ty.clone(), Box::new(shift(b, d, cutoff + 1))),
        DTm::App(f, a) => DTm::App(Box::new(shift(f, d, cutoff)), Box::new(shift(a, d, cutoff))),
        DTm::TyLam(b) => DTm::TyLam(Box::new(shift(b, d, cutoff))),
        DTm::TyApp(f, ty) => DTm::TyApp(Box::new(shift(f, d, cutoff)), ty.clone()),
    }
}

/// Shifts free type variables occurring in a term.
fn shift_tys_in(t: &DTm, d: isize, cutoff: usize) -> DTm {
    match t {
        DTm::Var(_) | DTm::Free(_) | DTm::Const(_) => t.clone(),
        DTm::Lam(ty, b) => DTm::Lam(shift_ty(ty, d, cutoff), Box::new(shift_tys_in(b, d, cutoff))),
        DTm::App(f, a) => DTm::App(Box::new(shift_tys_in(f, d, cutoff)), Box::new(shift_tys_in(a, d, cutoff))),
        DTm::TyLam(b) => DTm::TyLam(Box::new(shift_tys_in(b, d, cutoff + 1))),
        DTm::TyApp(f, ty) => DTm::TyApp(Box::new(shift_tys_in(f, d, cutoff)), shift_ty(ty, d, cutoff)),
    }
}

fn subst(t: &DTm, j: usize, s: &DTm) -> DTm {
    match t {
        DTm::Var(i) if *i == j => s.clone(),
        DTm::Var(_) | DTm::Free(_) | DTm::Const(_) => t.clone(),
        DTm::Lam(ty, b) => DTm::Lam(ty.clone(), Box::new(subst(b, j + 1, &shift(s, 1, 0)))),
        DTm::App(f, a) => DTm::App(Box::new(subst(f, j, s)), Box::new(subst(a, j, s))),
        DTm::TyLam(b) => DTm::TyLam(Box::new(subst(b, j, &shift_tys_in(s, 1, 0)))),
        DTm::TyApp(f, ty) => DTm::TyApp(Box::new(subst(f, j, s)), ty.clone()),
    }
}

fn subst_ty_in(t: &DTm, j: usize, s: &DTy) -> DTm {
    match t {
        DTm::Var(_) | DTm::Free(_) | DTm::Const(_) => t.clone(),
        DTm::Lam(ty, b) => DTm::Lam(subst_ty(ty, j, s), Box::new(subst_ty_in(b, j, s))),
        DTm::App(f, a) => DTm::App(Box::new(subst_ty_in(f, j, s)), Box::new(subst_ty_in(a, j, s))),
        DTm::TyLam(b) => DTm::TyLam(Box::new(subst_ty_in(b, j + 1, &shift_ty(s, 1, 0)))),
        DTm::TyApp(f, ty) => DTm::TyApp(Box::new(subst_ty_in(f, j, s)), subst_ty(ty, j, s)),
    }
}

fn beta(body: &DTm, arg: &DTm) -> DTm {
    shift(&subst(body, 0, &shift(arg, 1, 0)), -1, 0)
}

fn beta_ty(body: &DTm, arg: &DTy) -> DTm {
    shift_tys_in(&subst_ty_in(body, 0, &shift_ty(arg, 1, 0)), -1, 0)
}

/// Rightmost-innermost normalization: arguments first, right to left, then
/// the enclosing redex. `None` when more than `fuel` contractions are needed.
pub fn normalize(t: &DTm, fuel: &mut u64) -> Option<DTm> {
    match t {
        DTm::Var(_) | DTm::Free(_) | DTm::Const(_) => Some(t.clone()),
        DTm::Lam(ty, b) => Some(DTm::Lam(ty.clone(), Box::new(normalize(b, fuel)?))),
        DTm::TyLam(b) => Some(DTm::TyLam(Box::new(normalize(b, fuel)?))),
        DTm::App(f, a) => {
            let a = normalize(a, fuel)?;
            let f = normalize(f, fuel)?;
            match f {
                DTm::Lam(_, body) => {
                    *fuel = fuel.checked_sub(1)?;
                    normalize(&beta(&body, &a), fuel)
                }
                f => Some(DTm::App(Box::new(f), Box::new(a))),
            }
        }
        DTm::TyApp(f, ty) => match normalize(f, fuel)? {
            DTm::TyLam(body) => {
                *fuel = fuel.checked_sub(1)?;
                normalize(&beta_ty(&body, ty), fuel)
            }
            f => Some(DTm::TyApp(Box::new(f), ty.clone())),
        },
    }
}
