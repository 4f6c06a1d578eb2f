//! Random generation of closed well-typed terms, for property testing.
//!
//! Terms are built goal-first: given a target type, a typing rule whose
//! conclusion matches the goal is picked and its premises become new goals.
//! Besides the introduction rules the generator deliberately plants both
//! kinds of redex, so that normalization has work to do, and reuses
//! variables and constants in scope with probability [`REUSE_PROBABILITY`].

use rand::seq::SliceRandom;
use rand::Rng;

use super::subst::subst_type;
use super::syntax::{Name, Term, Type};
use crate::signature::Signature;

pub const REUSE_PROBABILITY: f64 = 0.5;

/// Sorts and constants the generator draws from by default.
pub const GENERATOR_SIGNATURE: &str = "
sort e. sort t.
const c : e.
const d : e.
const q : t.
const f : e -> e.
const g : e -> e -> t.
const h : (e -> t) -> t.
const k : (Pi a. a -> a) -> e.
";

#[derive(Clone, Debug)]
enum Step {
    Term(Type),
    Type(Type),
}

pub struct TermGenerator<'s> {
    sig: &'s Signature,
    max_depth: usize,
    counter: usize,
}

impl<'s> TermGenerator<'s> {
    pub fn new(sig: &'s Signature, max_depth: usize) -> Self {
        TermGenerator { sig, max_depth, counter: 0 }
    }

    fn fresh_var(&mut self) -> Name {
        self.counter += 1;
        format!("x{}", self.counter)
    }

    fn fresh_tyvar(&mut self) -> Name {
        self.counter += 1;
        format!("a{}", self.counter)
    }

    fn individual_sorts(&self) -> Vec<Type> {
        self.sig.sorts().map(|s| Type::Base(s.clone())).collect()
    }

    /// A random closed goal type that the generator can inhabit.
    pub fn random_goal<R: Rng>(&mut self, rng: &mut R) -> Type {
        loop {
            let ty = self.random_type(rng, &[], 3);
            if self.can_build(&ty, &[]) {
                return ty;
            }
        }
    }

    /// A closed term together with the goal type it was generated for.
    pub fn generate_closed<R: Rng>(&mut self, rng: &mut R) -> (Term, Type) {
        let goal = self.random_goal(rng);
        let term = self.generate(rng, &goal);
        (term, goal)
    }

    /// A closed term of type `goal` (which must be inhabitable).
    pub fn generate<R: Rng>(&mut self, rng: &mut R, goal: &Type) -> Term {
        let mut env = Vec::new();
        let mut tyvars = Vec::new();
        self.gen(rng, goal, &mut env, &mut tyvars, self.max_depth)
    }

    fn random_type<R: Rng>(&mut self, rng: &mut R, tyvars: &[Name], size: usize) -> Type {
        let mut leaves = self.individual_sorts();
        leaves.extend(tyvars.iter().map(|v| Type::Var(v.clone())));
        let leaf = |rng: &mut R| leaves.choose(rng).cloned().expect("signature has sorts");
        if size == 0 {
            return leaf(rng);
        }
        match rng.gen_range(0..10) {
            0..=4 => leaf(rng),
            5..=8 => {
                let a = self.random_type(rng, tyvars, size - 1);
                let b = self.random_type(rng, tyvars, size - 1);
                Type::arrow(a, b)
            }
            _ => {
                let a = self.fresh_tyvar();
                let mut inner = tyvars.to_vec();
                inner.push(a.clone());
                let v = Type::Var(a.clone());
                // Pi a. a -> a, or Pi a. (a -> a) -> a -> a
                let body = if rng.gen_bool(0.5) {
                    Type::arrow(v.clone(), v)
                } else {
                    Type::arrow(Type::arrow(v.clone(), v.clone()), Type::arrow(v.clone(), v))
                };
                Type::pi(a, body)
            }
        }
    }

    fn heads<'a>(&'a self, env: &'a [(Name, Type)]) -> impl Iterator<Item = (Term, &'a Type)> {
        env.iter()
            .map(|(n, t)| (Term::Var(n.clone()), t))
            .chain(self.sig.constants().map(|(n, t)| (Term::Const(n.clone()), t)))
    }

    /// Whether a term of `ty` can be built from `env` and the constants.
    fn can_build(&self, ty: &Type, env: &[(Name, Type)]) -> bool {
        match ty {
            Type::Base(_) | Type::Var(_) => self.heads(env).any(|(_, t)| t == ty),
            Type::Arrow(a, b) => {
                let mut env = env.to_vec();
                env.push(("_".into(), (**a).clone()));
                self.can_build(b, &env)
            }
            Type::Pi(_, b) => self.can_build(b, env),
        }
    }

    /// Depth-0 construction: introduction rules down to an atom of the goal type.
    fn build_min<R: Rng>(&mut self, rng: &mut R, goal: &Type, env: &mut Vec<(Name, Type)>) -> Term {
        match goal {
            Type::Base(_) | Type::Var(_) => {
                let candidates: Vec<Term> =
                    self.heads(env).filter(|(_, t)| *t == goal).map(|(h, _)| h).collect();
                candidates.choose(rng).cloned().expect("goal is inhabitable")
            }
            Type::Arrow(a, b) => {
                let x = self.fresh_var();
                env.push((x.clone(), (**a).clone()));
                let body = self.build_min(rng, b, env);
                env.pop();
                Term::lam(x, (**a).clone(), body)
            }
            Type::Pi(a, b) => {
                let fresh = self.fresh_tyvar();
                let body_ty = subst_type(b, a, &Type::Var(fresh.clone()));
                let body = self.build_min(rng, &body_ty, env);
                Term::ty_lam(fresh, body)
            }
        }
    }

    /// Arguments that turn a head of type `ty` into a term of type `goal`.
    fn plan(&self, ty: &Type, goal: &Type, tyvars: &[Name], budget: usize) -> Option<Vec<Step>> {
        if ty == goal {
            return Some(Vec::new());
        }
        if budget == 0 {
            return None;
        }
        match ty {
            Type::Arrow(a, b) => {
                let mut rest = self.plan(b, goal, tyvars, budget - 1)?;
                rest.insert(0, Step::Term((**a).clone()));
                Some(rest)
            }
            Type::Pi(a, b) => {
                let mut choices = vec![goal.clone()];
                choices.extend(self.individual_sorts());
                choices.extend(tyvars.iter().map(|v| Type::Var(v.clone())));
                choices.into_iter().find_map(|inst| {
                    let body = subst_type(b, a, &inst);
                    let mut rest = self.plan(&body, goal, tyvars, budget - 1)?;
                    rest.insert(0, Step::Type(inst));
                    Some(rest)
                })
            }
            _ => None,
        }
    }

    fn gen<R: Rng>(
        &mut self,
        rng: &mut R,
        goal: &Type,
        env: &mut Vec<(Name, Type)>,
        tyvars: &mut Vec<Name>,
        depth: usize,
    ) -> Term {
        if depth == 0 {
            return self.build_min(rng, goal, env);
        }

        if rng.gen_bool(REUSE_PROBABILITY) {
            let plans: Vec<(Term, Vec<Step>)> = self
                .heads(env)
                .filter_map(|(h, t)| self.plan(t, goal, tyvars, 4).map(|p| (h, p)))
                .filter(|(_, p)| {
                    p.iter().all(|s| match s {
                        Step::Term(a) => self.can_build(a, env),
                        Step::Type(_) => true,
                    })
                })
                .collect();
            if let Some((head, plan)) = plans.choose(rng).cloned() {
                let mut term = head;
                for s in plan {
                    term = match s {
                        Step::Term(a) => {
                            let arg = self.gen(rng, &a, env, tyvars, depth - 1);
                            Term::app(term, arg)
                        }
                        Step::Type(ty) => Term::ty_app(term, ty),
                    };
                }
                return term;
            }
        }

        let intro = matches!(goal, Type::Arrow(..) | Type::Pi(..));
        match rng.gen_range(0..if intro { 4 } else { 2 }) {
            0 => {
                // (lam x:A. body) arg
                let mut arg_ty = self.random_type(rng, tyvars, 2);
                for _ in 0..8 {
                    if self.can_build(&arg_ty, env) {
                        break;
                    }
                    arg_ty = self.random_type(rng, tyvars, 2);
                }
                if !self.can_build(&arg_ty, env) {
                    return self.build_min(rng, goal, env);
                }
                let x = self.fresh_var();
                env.push((x.clone(), arg_ty.clone()));
                let body = self.gen(rng, goal, env, tyvars, depth - 1);
                env.pop();
                let arg = self.gen(rng, &arg_ty, env, tyvars, depth - 1);
                Term::app(Term::lam(x, arg_ty, body), arg)
            }
            1 => {
                // (Lam a. body){S}, with a vacuous in the goal but usable inside
                let a = self.fresh_tyvar();
                tyvars.push(a.clone());
                let body = self.gen(rng, goal, env, tyvars, depth - 1);
                tyvars.pop();
                let inst = self.random_type(rng, tyvars, 1);
                Term::ty_app(Term::ty_lam(a, body), inst)
            }
            _ => match goal {
                Type::Arrow(a, b) => {
                    let x = self.fresh_var();
                    env.push((x.clone(), (**a).clone()));
                    let body = self.gen(rng, b, env, tyvars, depth - 1);
                    env.pop();
                    Term::lam(x, (**a).clone(), body)
                }
                Type::Pi(a, b) => {
                    let fresh = self.fresh_tyvar();
                    let body_ty = subst_type(b, a, &Type::Var(fresh.clone()));
                    tyvars.push(fresh.clone());
                    let body = self.gen(rng, &body_ty, env, tyvars, depth - 1);
                    tyvars.pop();
                    Term::ty_lam(fresh, body)
                }
                _ => unreachable!("introduction only offered for arrow and Pi goals"),
            },
        }
    }
}
