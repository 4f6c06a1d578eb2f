//! Pretty printer emitting the same concrete syntax the parser reads.
//!
//! Output is minimally parenthesized: arrows associate to the right,
//! application to the left, binder bodies extend as far right as possible.
//! A binder whose name would be read back as a constant or base sort of
//! the same name is printed under a primed name.

use std::fmt::{self, Write};

use super::subst::{subst_term, subst_type, subst_type_in_term};
use super::syntax::{fresh_name, Term, Type};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum TyPrec {
    Top,
    ArrowLeft,
}

fn write_type(out: &mut String, ty: &Type, prec: TyPrec) {
    match ty {
        Type::Base(n) | Type::Var(n) => out.push_str(n),
        Type::Arrow(a, b) => {
            let parens = prec > TyPrec::Top;
            if parens {
                out.push('(');
            }
            write_type(out, a, TyPrec::ArrowLeft);
            out.push_str(" -> ");
            write_type(out, b, TyPrec::Top);
            if parens {
                out.push(')');
            }
        }
        Type::Pi(v, body) => {
            let parens = prec > TyPrec::Top;
            if parens {
                out.push('(');
            }
            if body.base_sorts().contains(v) {
                let renamed = fresh_name(v, |n| {
                    body.base_sorts().contains(n) || body.free_vars().contains(n)
                });
                let body = subst_type(body, v, &Type::Var(renamed.clone()));
                let _ = write!(out, "Pi {renamed}. ");
                write_type(out, &body, TyPrec::Top);
            } else {
                let _ = write!(out, "Pi {v}. ");
                write_type(out, body, TyPrec::Top);
            }
            if parens {
                out.push(')');
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum TmPrec {
    Top,
    Function,
    Argument,
}

fn write_annotation(out: &mut String, ty: &Type) {
    if matches!(ty, Type::Pi(..)) {
        write_type(out, ty, TyPrec::ArrowLeft);
    } else {
        write_type(out, ty, TyPrec::Top);
    }
}

fn write_term(out: &mut String, term: &Term, prec: TmPrec) {
    match term {
        Term::Var(n) | Term::Const(n) => out.push_str(n),
        Term::Lam(x, ty, body) => {
            let parens = prec > TmPrec::Top;
            if parens {
                out.push('(');
            }
            let (x, body) = if body.constants().contains(x) {
                let consts = body.constants();
                let free = body.free_vars();
                let renamed = fresh_name(x, |n| consts.contains(n) || free.contains(n));
                let body = subst_term(body, x, &Term::Var(renamed.clone()));
                (renamed, body)
            } else {
                (x.clone(), (**body).clone())
            };
            let _ = write!(out, "lam {x}:");
            write_annotation(out, ty);
            out.push_str(". ");
            write_term(out, &body, TmPrec::Top);
            if parens {
                out.push(')');
            }
        }
        Term::TyLam(a, body) => {
            let parens = prec > TmPrec::Top;
            if parens {
                out.push('(');
            }
            let sorts = body.base_sorts();
            let (a, body) = if sorts.contains(a) {
                let free = body.free_type_vars();
                let renamed = fresh_name(a, |n| sorts.contains(n) || free.contains(n));
                let body = subst_type_in_term(body, a, &Type::Var(renamed.clone()));
                (renamed, body)
            } else {
                (a.clone(), (**body).clone())
            };
            let _ = write!(out, "Lam {a}. ");
            write_term(out, &body, TmPrec::Top);
            if parens {
                out.push(')');
            }
        }
        Term::App(f, a) => {
            let parens = prec > TmPrec::Function;
            if parens {
                out.push('(');
            }
            write_term(out, f, TmPrec::Function);
            out.push(' ');
            write_term(out, a, TmPrec::Argument);
            if parens {
                out.push(')');
            }
        }
        Term::TyApp(f, ty) => {
            let parens = prec > TmPrec::Function;
            if parens {
                out.push('(');
            }
            write_term(out, f, TmPrec::Function);
            out.push('{');
            write_type(out, ty, TyPrec::Top);
            out.push('}');
            if parens {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_type(&mut out, self, TyPrec::Top);
        f.write_str(&out)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_term(&mut out, self, TmPrec::Top);
        f.write_str(&out)
    }
}
