//! Beta reduction for both kinds of redex, leftmost-outermost.

use std::fmt;

use thiserror::Error;

use super::subst::{subst_term, subst_type_in_term};
use super::syntax::{Arg, Term};
use super::typing::Context;

/// Which beta rule fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `(lam x:T. u) v ~> u[x:=v]`
    BetaTerm,
    /// `(Lam a. u){T} ~> u[a:=T]`
    BetaType,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::BetaTerm => "beta-term",
            Rule::BetaType => "beta-type",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("fuel exhausted after {steps} reduction steps")]
pub struct FuelExhausted {
    pub steps: u64,
}

/// A normal form and the number of contractions it took to reach it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub term: Term,
    pub steps: u64,
}

/// Contracts a root redex, if the term is one.
pub fn contract(term: &Term) -> Option<(Term, Rule)> {
    match term {
        Term::App(f, arg) => match f.as_ref() {
            Term::Lam(x, _, body) => Some((subst_term(body, x, arg), Rule::BetaTerm)),
            _ => None,
        },
        Term::TyApp(f, ty) => match f.as_ref() {
            Term::TyLam(a, body) => Some((subst_type_in_term(body, a, ty), Rule::BetaType)),
            _ => None,
        },
        _ => None,
    }
}

/// Performs the leftmost-outermost reduction step, or returns `None` when
/// the term is normal.
pub fn step(term: &Term) -> Option<(Term, Rule)> {
    if let Some(done) = contract(term) {
        return Some(done);
    }
    match term {
        Term::Var(_) | Term::Const(_) => None,
        Term::Lam(x, ty, body) => {
            step(body).map(|(b, r)| (Term::lam(x.clone(), ty.clone(), b), r))
        }
        Term::TyLam(a, body) => step(body).map(|(b, r)| (Term::ty_lam(a.clone(), b), r)),
        Term::App(f, a) => match step(f) {
            Some((f, r)) => Some((Term::App(Box::new(f), a.clone()), r)),
            None => step(a).map(|(a, r)| (Term::App(f.clone(), Box::new(a)), r)),
        },
        Term::TyApp(f, ty) => step(f).map(|(f, r)| (Term::ty_app(f, ty.clone()), r)),
    }
}

/// True when no beta redex of either kind occurs anywhere in the term.
pub fn is_normal(term: &Term) -> bool {
    if term.is_redex() {
        return false;
    }
    match term {
        Term::Var(_) | Term::Const(_) => true,
        Term::Lam(_, _, b) | Term::TyLam(_, b) | Term::TyApp(b, _) => is_normal(b),
        Term::App(f, a) => is_normal(f) && is_normal(a),
    }
}

/// Normalizes with the budget of `ctx`. The term is expected to be
/// well typed under `ctx`; typing is not re-checked here.
pub fn normalize(ctx: &Context<'_>, term: &Term) -> Result<Normalized, FuelExhausted> {
    normalize_with_fuel(term, ctx.fuel())
}

/// Normal-order normalization: the contractions performed, and their count,
/// are exactly those of iterating [`step`] to a normal form.
pub fn normalize_with_fuel(term: &Term, fuel: u64) -> Result<Normalized, FuelExhausted> {
    let mut n = Normalizer { steps: 0, fuel };
    let term = n.normalize(term.clone())?;
    Ok(Normalized { term, steps: n.steps })
}

/// Iterates [`step`], recording every intermediate term.
pub fn normalize_traced(
    term: &Term,
    fuel: u64,
) -> Result<(Vec<(Rule, Term)>, Term), FuelExhausted> {
    let mut trace = Vec::new();
    let mut cur = term.clone();
    while let Some((next, rule)) = step(&cur) {
        if trace.len() as u64 >= fuel {
            return Err(FuelExhausted { steps: trace.len() as u64 });
        }
        trace.push((rule, next.clone()));
        cur = next;
    }
    Ok((trace, cur))
}

struct Normalizer {
    steps: u64,
    fuel: u64,
}

fn unspine(mut term: Term) -> (Term, Vec<Arg>) {
    let mut args = Vec::new();
    loop {
        match term {
            Term::App(f, a) => {
                args.push(Arg::Term(*a));
                term = *f;
            }
            Term::TyApp(f, ty) => {
                args.push(Arg::Type(ty));
                term = *f;
            }
            head => {
                args.reverse();
                return (head, args);
            }
        }
    }
}

impl Normalizer {
    fn tick(&mut self) -> Result<(), FuelExhausted> {
        if self.steps >= self.fuel {
            return Err(FuelExhausted { steps: self.steps });
        }
        self.steps += 1;
        Ok(())
    }

    fn normalize(&mut self, term: Term) -> Result<Term, FuelExhausted> {
        match term {
            Term::Var(_) | Term::Const(_) => Ok(term),
            Term::Lam(x, ty, body) => Ok(Term::lam(x, ty, self.normalize(*body)?)),
            Term::TyLam(a, body) => Ok(Term::ty_lam(a, self.normalize(*body)?)),
            app => {
                let (mut head, mut args) = unspine(app);
                // Head reduction: contract the redex formed by the head and
                // its first argument until the head is stuck.
                let mut consumed = 0;
                loop {
                    match (&head, args.get(consumed)) {
                        (Term::Lam(..), Some(Arg::Term(_))) => {
                            self.tick()?;
                            let Term::Lam(x, _, body) = head else { unreachable!() };
                            let Arg::Term(arg) = &args[consumed] else { unreachable!() };
                            let reduct = subst_term(&body, &x, arg);
                            consumed += 1;
                            let (h, more) = unspine(reduct);
                            head = h;
                            let rest = args.split_off(consumed);
                            args = more.into_iter().chain(rest).collect();
                            consumed = 0;
                        }
                        (Term::TyLam(..), Some(Arg::Type(_))) => {
                            self.tick()?;
                            let Term::TyLam(a, body) = head else { unreachable!() };
                            let Arg::Type(ty) = &args[consumed] else { unreachable!() };
                            let reduct = subst_type_in_term(&body, &a, ty);
                            consumed += 1;
                            let (h, more) = unspine(reduct);
                            head = h;
                            let rest = args.split_off(consumed);
                            args = more.into_iter().chain(rest).collect();
                            consumed = 0;
                        }
                        _ => break,
                    }
                }
                let head = self.normalize(head)?;
                let mut out = head;
                for arg in args {
                    out = match arg {
                        Arg::Term(a) => Term::app(out, self.normalize(a)?),
                        Arg::Type(ty) => Term::ty_app(out, ty),
                    };
                }
                Ok(out)
            }
        }
    }
}
