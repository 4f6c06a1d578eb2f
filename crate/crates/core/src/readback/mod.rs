//! Readback of normal terms of type `t` into logic formulas.
//!
//! When every constant of a normal term is a logical constant of the
//! signature, the term's structure already is a formula: the head of each
//! application spine decides what it becomes. Predicates give atoms,
//! connectives give connectives, a quantifier applied to a sort and a
//! property gives a quantified formula, and a choice operator gives a
//! choice term. Properties that are not written as abstractions are
//! eta-expanded on the fly.

pub mod formula;
pub mod order;

use thiserror::Error;

pub use formula::{print_formula, Formula, LogicTerm};
pub use order::{
    classify_order, classify_order_with_cap, type_order, Order, OrderError, OrderReport,
    DEFAULT_OMEGA_CAP,
};

use crate::kernel::alpha::alpha_eq_types;
use crate::kernel::reduce::is_normal;
use crate::kernel::subst::subst_term;
use crate::kernel::syntax::{fresh_name, Arg, Name, Term, Type};
use crate::kernel::typing::{typecheck, Context, TypeError};
use crate::signature::{prop, LogicalRole, Quantifier, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReadbackError {
    #[error("term is not in normal form")]
    NotNormal,
    #[error("term has type {0}, not t")]
    NotTypeT(Type),
    #[error("`{0}` is not a logical constant of the signature")]
    NonLogicalConstant(Name),
    #[error("ill-formed head in `{0}`")]
    IllFormedHead(String),
    #[error(transparent)]
    IllTyped(#[from] TypeError),
}

/// Translates a closed normal term of type `t` into a [`Formula`].
pub fn readback_formula(sig: &Signature, term: &Term) -> Result<Formula, ReadbackError> {
    if !is_normal(term) {
        return Err(ReadbackError::NotNormal);
    }
    if let Some(c) = term.constants().into_iter().find(|c| sig.role(c).is_none()) {
        return Err(ReadbackError::NonLogicalConstant(c));
    }
    let ty = typecheck(&Context::new(sig), term)?;
    if ty != prop() {
        return Err(ReadbackError::NotTypeT(ty));
    }
    Reader { sig, env: Vec::new() }.formula(term)
}

struct Reader<'s> {
    sig: &'s Signature,
    /// Types of the variables bound by enclosing quantifiers, choices and abstractions.
    env: Vec<(Name, Type)>,
}

fn ill_formed(term: &Term) -> ReadbackError {
    ReadbackError::IllFormedHead(term.to_string())
}

fn term_args(term: &Term, args: Vec<Arg>) -> Result<Vec<Term>, ReadbackError> {
    args.into_iter()
        .map(|a| match a {
            Arg::Term(t) => Ok(t),
            Arg::Type(_) => Err(ill_formed(term)),
        })
        .collect()
}

impl Reader<'_> {
    fn lookup(&self, name: &str) -> Option<&Type> {
        self.env.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    fn head_type(&self, head: &Term) -> Option<Type> {
        match head {
            Term::Var(x) => self.lookup(x).cloned(),
            Term::Const(c) => self.sig.constant_type(c).cloned(),
            _ => None,
        }
    }

    fn with_binding<T>(
        &mut self,
        var: &Name,
        ty: &Type,
        f: impl FnOnce(&mut Self) -> Result<T, ReadbackError>,
    ) -> Result<T, ReadbackError> {
        self.env.push((var.clone(), ty.clone()));
        let out = f(self);
        self.env.pop();
        out
    }

    /// Arguments paired with the types the head expects for them.
    fn typed_args(
        &self,
        term: &Term,
        head_ty: &Type,
        args: Vec<Term>,
    ) -> Result<Vec<(Term, Type)>, ReadbackError> {
        let (doms, _) = head_ty.uncurry();
        if doms.len() < args.len() {
            return Err(ill_formed(term));
        }
        Ok(args.into_iter().zip(doms.into_iter().cloned()).collect())
    }

    fn formula(&mut self, term: &Term) -> Result<Formula, ReadbackError> {
        let (head, args) = term.spine();
        match head {
            Term::Const(c) => match self.sig.role(c) {
                Some(LogicalRole::Predicate) => {
                    let head_ty = self.head_type(head).ok_or_else(|| ill_formed(term))?;
                    let args = self.typed_args(term, &head_ty, term_args(term, args)?)?;
                    let args = args
                        .iter()
                        .map(|(a, ty)| self.logic_term(a, ty))
                        .collect::<Result<_, _>>()?;
                    Ok(Formula::Atom { pred: c.clone(), args })
                }
                Some(LogicalRole::Connective(kind)) => {
                    let args = term_args(term, args)?;
                    if args.len() != kind.arity() {
                        return Err(ill_formed(term));
                    }
                    let operands = args.iter().map(|a| self.formula(a)).collect::<Result<_, _>>()?;
                    Ok(Formula::Conn { kind, operands })
                }
                Some(LogicalRole::Quantifier(kind)) => self.quantifier(term, kind, args),
                Some(_) => Err(ill_formed(term)),
                None => Err(ReadbackError::NonLogicalConstant(c.clone())),
            },
            Term::Var(x) => {
                let head_ty = self.head_type(head).ok_or_else(|| ill_formed(term))?;
                let args = self.typed_args(term, &head_ty, term_args(term, args)?)?;
                let args = args
                    .iter()
                    .map(|(a, ty)| self.logic_term(a, ty))
                    .collect::<Result<_, _>>()?;
                Ok(Formula::Atom { pred: x.clone(), args })
            }
            _ => Err(ill_formed(term)),
        }
    }

    /// A property argument as a binder and body, eta-expanding when needed.
    fn property(&self, prop_term: &Term) -> (Name, Term) {
        match prop_term {
            Term::Lam(x, _, body) => (x.clone(), (**body).clone()),
            other => {
                let free = other.free_vars();
                let x = if free.contains("x") {
                    fresh_name("x", |n| free.contains(n))
                } else {
                    "x".to_string()
                };
                (x.clone(), Term::app(other.clone(), Term::Var(x)))
            }
        }
    }

    fn quantifier(
        &mut self,
        term: &Term,
        kind: Quantifier,
        args: Vec<Arg>,
    ) -> Result<Formula, ReadbackError> {
        let mut args = args.into_iter();
        let Some(Arg::Type(sort)) = args.next() else { return Err(ill_formed(term)) };
        let preds = term_args(term, args.collect())?;
        if preds.len() != kind.predicate_args() {
            return Err(ill_formed(term));
        }
        let (var, body) = self.property(&preds[0]);
        match kind {
            Quantifier::Most => {
                let (scope_var, scope_body) = self.property(&preds[1]);
                let scope_body = if scope_var == var {
                    scope_body
                } else {
                    subst_term(&scope_body, &scope_var, &Term::Var(var.clone()))
                };
                let (restrictor, body) = self.with_binding(&var, &sort, |r| {
                    Ok((r.formula(&body)?, r.formula(&scope_body)?))
                })?;
                Ok(Formula::Quant {
                    kind,
                    sort,
                    var,
                    restrictor: Some(Box::new(restrictor)),
                    body: Box::new(body),
                })
            }
            _ => {
                let body = self.with_binding(&var, &sort, |r| r.formula(&body))?;
                Ok(Formula::Quant { kind, sort, var, restrictor: None, body: Box::new(body) })
            }
        }
    }

    fn logic_term(&mut self, term: &Term, expected: &Type) -> Result<LogicTerm, ReadbackError> {
        if *expected == prop() {
            return Ok(LogicTerm::Formula(Box::new(self.formula(term)?)));
        }
        if let Term::Lam(x, ty, body) = term {
            let Type::Arrow(_, cod) = expected else { return Err(ill_formed(term)) };
            let body = self.with_binding(x, ty, |r| r.logic_term(body, cod))?;
            return Ok(LogicTerm::Lambda { var: x.clone(), sort: ty.clone(), body: Box::new(body) });
        }
        let (head, args) = term.spine();
        match head {
            Term::Const(c) => match self.sig.role(c) {
                Some(LogicalRole::Choice(kind)) => {
                    let mut args = args.into_iter();
                    let Some(Arg::Type(sort)) = args.next() else { return Err(ill_formed(term)) };
                    let preds = term_args(term, args.collect())?;
                    if preds.len() != 1 {
                        return Err(ill_formed(term));
                    }
                    let (var, body) = self.property(&preds[0]);
                    let body = self.with_binding(&var, &sort, |r| r.formula(&body))?;
                    Ok(LogicTerm::Choice { kind, sort, var, body: Box::new(body) })
                }
                Some(LogicalRole::Quantifier(_)) => Err(ill_formed(term)),
                Some(_) => self.application(term, head, c, args),
                None => Err(ReadbackError::NonLogicalConstant(c.clone())),
            },
            Term::Var(x) => self.application(term, head, x, args),
            _ => Err(ill_formed(term)),
        }
    }

    fn application(
        &mut self,
        term: &Term,
        head: &Term,
        name: &Name,
        args: Vec<Arg>,
    ) -> Result<LogicTerm, ReadbackError> {
        let head_ty = self.head_type(head).ok_or_else(|| ill_formed(term))?;
        let args = term_args(term, args)?;
        if args.is_empty() {
            return Ok(match head {
                Term::Var(_) => LogicTerm::IndVar { name: name.clone(), sort: head_ty },
                _ => LogicTerm::IndConst { name: name.clone(), sort: head_ty },
            });
        }
        let typed = self.typed_args(term, &head_ty, args)?;
        let args = typed
            .iter()
            .map(|(a, ty)| self.logic_term(a, ty))
            .collect::<Result<_, _>>()?;
        Ok(LogicTerm::FuncApp { name: name.clone(), args })
    }
}

/// Checks that every individual variable is bound by an enclosing
/// quantifier, choice or abstraction of the same sort.
pub fn variables_well_sorted(f: &Formula) -> bool {
    fn formula(f: &Formula, scope: &mut Vec<(Name, Type)>) -> bool {
        match f {
            Formula::Atom { args, .. } => args.iter().all(|a| term(a, scope)),
            Formula::Conn { operands, .. } => operands.iter().all(|o| formula(o, scope)),
            Formula::Quant { sort, var, restrictor, body, .. } => {
                scope.push((var.clone(), sort.clone()));
                let ok = restrictor.as_ref().is_none_or(|r| formula(r, scope)) && formula(body, scope);
                scope.pop();
                ok
            }
        }
    }
    fn term(t: &LogicTerm, scope: &mut Vec<(Name, Type)>) -> bool {
        match t {
            LogicTerm::IndVar { name, sort } => scope
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .is_some_and(|(_, s)| alpha_eq_types(s, sort)),
            LogicTerm::IndConst { .. } => true,
            LogicTerm::FuncApp { args, .. } => args.iter().all(|a| term(a, scope)),
            LogicTerm::Choice { sort, var, body, .. } => {
                scope.push((var.clone(), sort.clone()));
                let ok = formula(body, scope);
                scope.pop();
                ok
            }
            LogicTerm::Lambda { var, sort, body } => {
                scope.push((var.clone(), sort.clone()));
                let ok = term(body, scope);
                scope.pop();
                ok
            }
            LogicTerm::Formula(f) => formula(f, scope),
        }
    }
    formula(f, &mut Vec::new())
}
