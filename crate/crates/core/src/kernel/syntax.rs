//! Abstract syntax of System F types and terms.
//!
//! Binders are kept as names. Equality that matters (type checking,
//! normal-form comparison) is alpha-equivalence, see [`super::alpha`];
//! the derived `PartialEq` is plain structural equality on names.

use std::collections::BTreeSet;

pub type Name = String;

/// A second-order propositional type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    /// A declared sort of the signature (`e`, `t`, `human`, ...).
    Base(Name),
    /// A type variable, bound by `Pi`/`Lam` or free.
    Var(Name),
    Arrow(Box<Type>, Box<Type>),
    Pi(Name, Box<Type>),
}

/// A Church-style System F term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    Const(Name),
    Lam(Name, Type, Box<Term>),
    App(Box<Term>, Box<Term>),
    TyLam(Name, Box<Term>),
    TyApp(Box<Term>, Type),
}

impl Type {
    pub fn base(name: impl Into<Name>) -> Type {
        Type::Base(name.into())
    }

    pub fn var(name: impl Into<Name>) -> Type {
        Type::Var(name.into())
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn pi(var: impl Into<Name>, body: Type) -> Type {
        Type::Pi(var.into(), Box::new(body))
    }

    /// `a1 -> a2 -> ... -> result`
    pub fn arrows(args: impl IntoIterator<Item = Type>, result: Type) -> Type {
        let args: Vec<Type> = args.into_iter().collect();
        args.into_iter()
            .rev()
            .fold(result, |acc, arg| Type::arrow(arg, acc))
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Type::Base(_) => {}
            Type::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            Type::Arrow(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Type::Pi(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free_var(&self, var: &str) -> bool {
        match self {
            Type::Base(_) => false,
            Type::Var(v) => v == var,
            Type::Arrow(a, b) => a.has_free_var(var) || b.has_free_var(var),
            Type::Pi(v, body) => v != var && body.has_free_var(var),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn contains_pi(&self) -> bool {
        match self {
            Type::Base(_) | Type::Var(_) => false,
            Type::Arrow(a, b) => a.contains_pi() || b.contains_pi(),
            Type::Pi(..) => true,
        }
    }

    /// Every base sort mentioned anywhere in the type.
    pub fn base_sorts(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_bases(&mut out);
        out
    }

    fn collect_bases(&self, out: &mut BTreeSet<Name>) {
        match self {
            Type::Base(b) => {
                out.insert(b.clone());
            }
            Type::Var(_) => {}
            Type::Arrow(a, b) => {
                a.collect_bases(out);
                b.collect_bases(out);
            }
            Type::Pi(_, body) => body.collect_bases(out),
        }
    }

    /// Splits `a1 -> ... -> an -> r` into `([a1..an], r)`; `r` is not an arrow.
    pub fn uncurry(&self) -> (Vec<&Type>, &Type) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Type::Arrow(a, b) = cur {
            args.push(a.as_ref());
            cur = b;
        }
        (args, cur)
    }

    pub fn size(&self) -> usize {
        match self {
            Type::Base(_) | Type::Var(_) => 1,
            Type::Arrow(a, b) => 1 + a.size() + b.size(),
            Type::Pi(_, b) => 1 + b.size(),
        }
    }
}

/// One argument of an application spine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Term(Term),
    Type(Type),
}

impl Term {
    pub fn var(name: impl Into<Name>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<Name>) -> Term {
        Term::Const(name.into())
    }

    pub fn lam(var: impl Into<Name>, annot: Type, body: Term) -> Term {
        Term::Lam(var.into(), annot, Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    pub fn ty_lam(var: impl Into<Name>, body: Term) -> Term {
        Term::TyLam(var.into(), Box::new(body))
    }

    pub fn ty_app(fun: Term, arg: Type) -> Term {
        Term::TyApp(Box::new(fun), arg)
    }

    /// Left-nested application of `fun` to every argument in order.
    pub fn apply(fun: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    /// Rebuilds a term from a head and its spine.
    pub fn apply_spine(head: Term, args: impl IntoIterator<Item = Arg>) -> Term {
        args.into_iter().fold(head, |acc, arg| match arg {
            Arg::Term(t) => Term::app(acc, t),
            Arg::Type(ty) => Term::ty_app(acc, ty),
        })
    }

    /// Splits nested `App`/`TyApp` into the head and its arguments, leftmost first.
    pub fn spine(&self) -> (&Term, Vec<Arg>) {
        let mut args = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::App(f, a) => {
                    args.push(Arg::Term((**a).clone()));
                    cur = f;
                }
                Term::TyApp(f, ty) => {
                    args.push(Arg::Type(ty.clone()));
                    cur = f;
                }
                _ => break,
            }
        }
        args.reverse();
        (cur, args)
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            Term::Const(_) => {}
            Term::Lam(x, _, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::TyLam(_, body) | Term::TyApp(body, _) => body.collect_free(bound, out),
        }
    }

    pub fn has_free_var(&self, var: &str) -> bool {
        match self {
            Term::Var(v) => v == var,
            Term::Const(_) => false,
            Term::Lam(x, _, body) => x != var && body.has_free_var(var),
            Term::App(f, a) => f.has_free_var(var) || a.has_free_var(var),
            Term::TyLam(_, body) | Term::TyApp(body, _) => body.has_free_var(var),
        }
    }

    /// Free type variables occurring in annotations and type arguments.
    pub fn free_type_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free_types(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_types(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(_) | Term::Const(_) => {}
            Term::Lam(_, ty, body) => {
                ty.collect_free(bound, out);
                body.collect_free_types(bound, out);
            }
            Term::App(f, a) => {
                f.collect_free_types(bound, out);
                a.collect_free_types(bound, out);
            }
            Term::TyLam(a, body) => {
                bound.push(a.clone());
                body.collect_free_types(bound, out);
                bound.pop();
            }
            Term::TyApp(f, ty) => {
                f.collect_free_types(bound, out);
                ty.collect_free(bound, out);
            }
        }
    }

    pub fn has_free_type_var(&self, var: &str) -> bool {
        match self {
            Term::Var(_) | Term::Const(_) => false,
            Term::Lam(_, ty, body) => ty.has_free_var(var) || body.has_free_type_var(var),
            Term::App(f, a) => f.has_free_type_var(var) || a.has_free_type_var(var),
            Term::TyLam(a, body) => a != var && body.has_free_type_var(var),
            Term::TyApp(f, ty) => f.has_free_type_var(var) || ty.has_free_var(var),
        }
    }

    /// Names of every constant in the term, sorted.
    pub fn constants(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Term::Const(c) = t {
                out.insert(c.clone());
            }
        });
        out
    }

    /// Every base sort mentioned in annotations or type arguments.
    pub fn base_sorts(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| match t {
            Term::Lam(_, ty, _) | Term::TyApp(_, ty) => out.extend(ty.base_sorts()),
            _ => {}
        });
        out
    }

    /// Pre-order traversal over every subterm.
    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::Var(_) | Term::Const(_) => {}
            Term::Lam(_, _, body) | Term::TyLam(_, body) | Term::TyApp(body, _) => body.visit(f),
            Term::App(fun, arg) => {
                fun.visit(f);
                arg.visit(f);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::Lam(_, _, b) | Term::TyLam(_, b) | Term::TyApp(b, _) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::Lam(_, _, b) | Term::TyLam(_, b) | Term::TyApp(b, _) => 1 + b.depth(),
            Term::App(f, a) => 1 + f.depth().max(a.depth()),
        }
    }

    /// True when the term is a `(lam ..) v` or `(Lam ..){T}` redex at the root.
    pub fn is_redex(&self) -> bool {
        matches!(
            self,
            Term::App(f, _) if matches!(**f, Term::Lam(..))
        ) || matches!(
            self,
            Term::TyApp(f, _) if matches!(**f, Term::TyLam(..))
        )
    }
}

/// Picks a variant of `base` (by appending primes) that is not in `avoid`.
pub fn fresh_name(base: &str, avoid: impl Fn(&str) -> bool) -> Name {
    let mut candidate = format!("{base}'");
    while avoid(&candidate) {
        candidate.push('\'');
    }
    candidate
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_respect_binders() {
        let ty = Type::pi("p", Type::arrow(Type::var("p"), Type::var("q")));
        assert_eq!(ty.free_vars().into_iter().collect::<Vec<_>>(), vec!["q"]);

        let tm = Term::lam("x", Type::var("a"), Term::app(Term::var("x"), Term::var("y")));
        assert_eq!(tm.free_vars().into_iter().collect::<Vec<_>>(), vec!["y"]);
        assert_eq!(tm.free_type_vars().into_iter().collect::<Vec<_>>(), vec!["a"]);
    }

    #[test]
    fn spine_round_trips() {
        let t = Term::ty_app(
            Term::app(Term::constant("f"), Term::constant("c")),
            Type::base("e"),
        );
        let (head, args) = t.spine();
        assert_eq!(head, &Term::constant("f"));
        assert_eq!(args.len(), 2);
        assert_eq!(Term::apply_spine(head.clone(), args), t);
    }

    #[test]
    fn fresh_name_skips_taken() {
        let taken = ["y'", "y''"];
        assert_eq!(fresh_name("y", |n| taken.contains(&n)), "y'''");
    }
}
