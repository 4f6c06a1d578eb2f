//! Syntax-directed type checking of Church-style System F terms.

use thiserror::Error;

use super::alpha::alpha_eq_types;
use super::subst::{subst_type, subst_type_in_term};
use super::syntax::{fresh_name, Name, Term, Type};
use crate::signature::Signature;

/// Default reduction budget of a [`Context`].
pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(Name),
    #[error("unknown constant `{0}`")]
    UnknownConstant(Name),
    #[error("type mismatch in `{at}`: expected {expected}, found {found}")]
    TypeMismatch { expected: Type, found: Type, at: String },
    #[error("`{term}` has type {ty}, which is not a function type")]
    NotAFunction { term: String, ty: Type },
    #[error("`{term}` has type {ty}, which is not a Pi type")]
    NotAPiType { term: String, ty: Type },
    #[error("cannot abstract over `{tyvar}`: it is free in the type {var_type} of free variable `{var}`")]
    SideConditionViolation { tyvar: Name, var: Name, var_type: Type },
    #[error("undeclared sort `{0}`")]
    UndeclaredSort(Name),
    #[error("`{0}` is bound twice in the context")]
    DuplicateBinding(Name),
    #[error("fuel must be positive")]
    ZeroFuel,
}

/// Typing context: free term variables with their types, the signature of
/// constants and sorts, and a reduction budget.
#[derive(Clone, Debug)]
pub struct Context<'s> {
    signature: &'s Signature,
    bindings: Vec<(Name, Type)>,
    fuel: u64,
}

impl<'s> Context<'s> {
    pub fn new(signature: &'s Signature) -> Self {
        Context { signature, bindings: Vec::new(), fuel: DEFAULT_FUEL }
    }

    /// Adds a free variable; names are unique and sorts must be declared.
    pub fn bind(mut self, name: impl Into<Name>, ty: Type) -> Result<Self, TypeError> {
        let name = name.into();
        if self.bindings.iter().any(|(n, _)| *n == name) {
            return Err(TypeError::DuplicateBinding(name));
        }
        check_sorts(self.signature, &ty)?;
        self.bindings.push((name, ty));
        Ok(self)
    }

    pub fn with_fuel(mut self, fuel: u64) -> Result<Self, TypeError> {
        if fuel == 0 {
            return Err(TypeError::ZeroFuel);
        }
        self.fuel = fuel;
        Ok(self)
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    pub fn signature(&self) -> &'s Signature {
        self.signature
    }

    pub fn bindings(&self) -> &[(Name, Type)] {
        &self.bindings
    }

    pub fn lookup(&self, name: &str) -> Option<&Type> {
        self.bindings.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }
}

fn check_sorts(sig: &Signature, ty: &Type) -> Result<(), TypeError> {
    match ty.base_sorts().into_iter().find(|s| !sig.has_sort(s)) {
        Some(s) => Err(TypeError::UndeclaredSort(s)),
        None => Ok(()),
    }
}

/// Computes the type of `term` under `ctx`.
///
/// A type abstraction whose variable shadows an enclosing type abstraction
/// is checked under a fresh name, so terms are typed up to alpha-renaming.
/// The abstracted variable must not be free in the type of any term
/// variable occurring free in the body.
pub fn typecheck(ctx: &Context<'_>, term: &Term) -> Result<Type, TypeError> {
    let mut checker = Checker {
        sig: ctx.signature,
        env: ctx.bindings.clone(),
        ty_scope: Vec::new(),
    };
    checker.infer(term)
}

struct Checker<'s> {
    sig: &'s Signature,
    env: Vec<(Name, Type)>,
    ty_scope: Vec<Name>,
}

impl Checker<'_> {
    fn lookup(&self, name: &str) -> Option<&Type> {
        self.env.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    fn infer(&mut self, term: &Term) -> Result<Type, TypeError> {
        match term {
            Term::Var(x) => self
                .lookup(x)
                .cloned()
                .ok_or_else(|| TypeError::UnboundVariable(x.clone())),
            Term::Const(c) => self
                .sig
                .constant_type(c)
                .cloned()
                .ok_or_else(|| TypeError::UnknownConstant(c.clone())),
            Term::Lam(x, annot, body) => {
                check_sorts(self.sig, annot)?;
                self.env.push((x.clone(), annot.clone()));
                let body_ty = self.infer(body);
                self.env.pop();
                Ok(Type::arrow(annot.clone(), body_ty?))
            }
            Term::App(f, a) => {
                let f_ty = self.infer(f)?;
                match f_ty {
                    Type::Arrow(dom, cod) => {
                        let a_ty = self.infer(a)?;
                        if alpha_eq_types(&dom, &a_ty) {
                            Ok(*cod)
                        } else {
                            Err(TypeError::TypeMismatch {
                                expected: *dom,
                                found: a_ty,
                                at: term.to_string(),
                            })
                        }
                    }
                    other => Err(TypeError::NotAFunction { term: f.to_string(), ty: other }),
                }
            }
            Term::TyLam(a, body) => {
                if self.ty_scope.contains(a) {
                    let mut avoid = body.free_type_vars();
                    avoid.extend(self.ty_scope.iter().cloned());
                    for (_, ty) in &self.env {
                        avoid.extend(ty.free_vars());
                    }
                    let renamed = fresh_name(a, |n| avoid.contains(n));
                    let body = subst_type_in_term(body, a, &Type::Var(renamed.clone()));
                    return self.infer_ty_lam(&renamed, &body);
                }
                self.infer_ty_lam(a, body)
            }
            Term::TyApp(f, arg) => {
                check_sorts(self.sig, arg)?;
                match self.infer(f)? {
                    Type::Pi(a, body) => Ok(subst_type(&body, &a, arg)),
                    other => Err(TypeError::NotAPiType { term: f.to_string(), ty: other }),
                }
            }
        }
    }

    fn infer_ty_lam(&mut self, a: &Name, body: &Term) -> Result<Type, TypeError> {
        for var in body.free_vars() {
            if let Some(ty) = self.lookup(&var) {
                if ty.has_free_var(a) {
                    return Err(TypeError::SideConditionViolation {
                        tyvar: a.clone(),
                        var,
                        var_type: ty.clone(),
                    });
                }
            }
        }
        self.ty_scope.push(a.clone());
        let body_ty = self.infer(body);
        self.ty_scope.pop();
        Ok(Type::pi(a.clone(), body_ty?))
    }
}
