//! Alpha-equivalence for types and terms.

use super::syntax::{Name, Term, Type};

/// Binder scopes of both sides, innermost last.
#[derive(Default)]
struct Scopes<'a> {
    left: Vec<&'a Name>,
    right: Vec<&'a Name>,
}

impl<'a> Scopes<'a> {
    fn push(&mut self, l: &'a Name, r: &'a Name) {
        self.left.push(l);
        self.right.push(r);
    }

    fn pop(&mut self) {
        self.left.pop();
        self.right.pop();
    }

    /// Bound occurrences must point at the same binder depth; free ones
    /// must carry the same name.
    fn same_var(&self, l: &Name, r: &Name) -> bool {
        let li = self.left.iter().rposition(|n| *n == l);
        let ri = self.right.iter().rposition(|n| *n == r);
        match (li, ri) {
            (Some(i), Some(j)) => i == j,
            (None, None) => l == r,
            _ => false,
        }
    }
}

pub fn alpha_eq_types(a: &Type, b: &Type) -> bool {
    types_eq(a, b, &mut Scopes::default())
}

fn types_eq<'a>(a: &'a Type, b: &'a Type, tys: &mut Scopes<'a>) -> bool {
    match (a, b) {
        (Type::Base(x), Type::Base(y)) => x == y,
        (Type::Var(x), Type::Var(y)) => tys.same_var(x, y),
        (Type::Arrow(a1, a2), Type::Arrow(b1, b2)) => {
            types_eq(a1, b1, tys) && types_eq(a2, b2, tys)
        }
        (Type::Pi(x, a_body), Type::Pi(y, b_body)) => {
            tys.push(x, y);
            let eq = types_eq(a_body, b_body, tys);
            tys.pop();
            eq
        }
        _ => false,
    }
}

pub fn alpha_eq_terms(a: &Term, b: &Term) -> bool {
    terms_eq(a, b, &mut Scopes::default(), &mut Scopes::default())
}

fn terms_eq<'a>(
    a: &'a Term,
    b: &'a Term,
    vars: &mut Scopes<'a>,
    tys: &mut Scopes<'a>,
) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => vars.same_var(x, y),
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::Lam(x, tx, bx), Term::Lam(y, ty, by)) => {
            if !types_eq(tx, ty, tys) {
                return false;
            }
            vars.push(x, y);
            let eq = terms_eq(bx, by, vars, tys);
            vars.pop();
            eq
        }
        (Term::App(f1, a1), Term::App(f2, a2)) => {
            terms_eq(f1, f2, vars, tys) && terms_eq(a1, a2, vars, tys)
        }
        (Term::TyLam(x, bx), Term::TyLam(y, by)) => {
            tys.push(x, y);
            let eq = terms_eq(bx, by, vars, tys);
            tys.pop();
            eq
        }
        (Term::TyApp(f1, t1), Term::TyApp(f2, t2)) => {
            types_eq(t1, t2, tys) && terms_eq(f1, f2, vars, tys)
        }
        _ => false,
    }
}

/// Alpha-equivalence over either syntactic category.
pub trait AlphaEq {
    fn alpha_eq(&self, other: &Self) -> bool;
}

impl AlphaEq for Type {
    fn alpha_eq(&self, other: &Self) -> bool {
        alpha_eq_types(self, other)
    }
}

impl AlphaEq for Term {
    fn alpha_eq(&self, other: &Self) -> bool {
        alpha_eq_terms(self, other)
    }
}

pub fn alpha_eq<T: AlphaEq>(a: &T, b: &T) -> bool {
    a.alpha_eq(b)
}
