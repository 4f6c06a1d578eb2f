//! Church encodings of data in System F: products, existentials, booleans,
//! natural numbers and lists, with their introduction and elimination terms.
//!
//! Every term built here is closed and typechecks in the empty context of
//! any signature, since none of them mentions a constant.

use std::collections::BTreeMap;

use crate::kernel::parse::parse_term;
use crate::kernel::subst::subst_type;
use crate::kernel::syntax::{fresh_name, Name, Term, Type};

/// Namespace used by [`EncodingCatalog`] names, e.g. `church:add`.
pub const CATALOG_PREFIX: &str = "church:";

fn term(src: &str) -> Term {
    parse_term(src).unwrap_or_else(|e| panic!("malformed built-in encoding `{src}`: {e}"))
}

/// A type-variable name not free in any of `types`.
fn fresh_tyvar(base: &str, types: &[&Type]) -> Name {
    let taken = |n: &str| types.iter().any(|t| t.has_free_var(n));
    if taken(base) {
        fresh_name(base, taken)
    } else {
        base.to_string()
    }
}

/// `Pi X. (A -> B -> X) -> X`
pub fn product_type(a: &Type, b: &Type) -> Type {
    let x = fresh_tyvar("X", &[a, b]);
    let xv = Type::Var(x.clone());
    Type::pi(
        x,
        Type::arrow(Type::arrows([a.clone(), b.clone()], xv.clone()), xv),
    )
}

pub struct ProductOps {
    /// `A -> B -> A x B`
    pub pair: Term,
    /// `A x B -> A`
    pub fst: Term,
    /// `A x B -> B`
    pub snd: Term,
}

pub fn product_ops(a: &Type, b: &Type) -> ProductOps {
    let prod = product_type(a, b);
    let x = fresh_tyvar("X", &[a, b]);
    let xv = Type::Var(x.clone());
    let pair = Term::lam(
        "u",
        a.clone(),
        Term::lam(
            "v",
            b.clone(),
            Term::ty_lam(
                x,
                Term::lam(
                    "k",
                    Type::arrows([a.clone(), b.clone()], xv),
                    Term::apply(Term::var("k"), [Term::var("u"), Term::var("v")]),
                ),
            ),
        ),
    );
    let project = |ty: &Type, pick: &str| {
        let select = Term::lam("u", a.clone(), Term::lam("v", b.clone(), Term::var(pick)));
        Term::lam("p", prod.clone(), Term::app(Term::ty_app(Term::var("p"), ty.clone()), select))
    };
    ProductOps { fst: project(a, "u"), snd: project(b, "v"), pair }
}

/// `Pi q. (Pi var. (body -> q)) -> q`, with `q` fresh for `body`.
pub fn exists_type(var: &str, body: &Type) -> Type {
    let q = fresh_tyvar("q", &[body, &Type::var(var)]);
    let qv = Type::Var(q.clone());
    Type::pi(
        q,
        Type::arrow(Type::pi(var, Type::arrow(body.clone(), qv.clone())), qv),
    )
}

/// `lam w:body[var:=witness]. Lam q. lam k:(Pi var. body -> q). k{witness} w`
pub fn pack(var: &str, body: &Type, witness: &Type) -> Term {
    let q = fresh_tyvar("q", &[body, &Type::var(var), witness]);
    let instance = subst_type(body, var, witness);
    let qv = Type::Var(q.clone());
    let k_ty = Type::pi(var, Type::arrow(body.clone(), qv));
    Term::lam(
        "w",
        instance,
        Term::ty_lam(
            q,
            Term::lam(
                "k",
                k_ty,
                Term::app(Term::ty_app(Term::var("k"), witness.clone()), Term::var("w")),
            ),
        ),
    )
}

/// `lam pkg:(exists var. body). lam k:(Pi var. body -> result). pkg{result} k`
///
/// `result` must not mention `var`.
pub fn unpack(var: &str, body: &Type, result: &Type) -> Term {
    let k_ty = Type::pi(var, Type::arrow(body.clone(), result.clone()));
    Term::lam(
        "pkg",
        exists_type(var, body),
        Term::lam(
            "k",
            k_ty,
            Term::app(Term::ty_app(Term::var("pkg"), result.clone()), Term::var("k")),
        ),
    )
}

/// `Pi X. X -> X -> X`
pub fn bool_type() -> Type {
    let x = Type::var("X");
    Type::pi("X", Type::arrows([x.clone(), x.clone()], x))
}

pub struct BoolOps {
    pub tru: Term,
    pub fls: Term,
    /// `Pi X. Bool -> X -> X -> X`
    pub ite: Term,
}

pub fn bool_ops() -> BoolOps {
    BoolOps {
        tru: term("Lam X. lam x:X. lam y:X. x"),
        fls: term("Lam X. lam x:X. lam y:X. y"),
        ite: term(&format!("Lam X. lam b:({}). lam x:X. lam y:X. b{{X}} x y", bool_type())),
    }
}

pub fn church_bool(b: bool) -> Term {
    let ops = bool_ops();
    if b {
        ops.tru
    } else {
        ops.fls
    }
}

/// `Pi X. (X -> X) -> X -> X`
pub fn nat_type() -> Type {
    let x = Type::var("X");
    let endo = Type::arrow(x.clone(), x.clone());
    Type::pi("X", Type::arrows([endo], Type::arrow(x.clone(), x)))
}

/// `Lam p. lam f:p -> p. lam x:p. f (... (f x))` with `n` applications.
pub fn church_nat(n: u64) -> Term {
    let p = Type::var("p");
    let mut body = Term::var("x");
    for _ in 0..n {
        body = Term::app(Term::var("f"), body);
    }
    Term::ty_lam(
        "p",
        Term::lam("f", Type::arrow(p.clone(), p.clone()), Term::lam("x", p, body)),
    )
}

/// Reads back a normal Church numeral by counting applications of its
/// successor argument; `None` when the term does not have numeral shape.
pub fn nat_to_int(term: &Term) -> Option<u64> {
    let Term::TyLam(_, body) = term else { return None };
    let Term::Lam(f, _, body) = body.as_ref() else { return None };
    let Term::Lam(x, _, body) = body.as_ref() else { return None };
    if f == x {
        return None;
    }
    let mut count = 0;
    let mut cur = body.as_ref();
    loop {
        match cur {
            Term::Var(v) if v == x => return Some(count),
            Term::App(g, arg) if matches!(g.as_ref(), Term::Var(v) if v == f) => {
                count += 1;
                cur = arg;
            }
            _ => return None,
        }
    }
}

pub struct NatOps {
    pub succ: Term,
    pub add: Term,
    pub mult: Term,
}

pub fn nat_ops() -> NatOps {
    let nat = nat_type();
    NatOps {
        succ: term(&format!(
            "lam n:({nat}). Lam p. lam f:p -> p. lam x:p. f (n{{p}} f x)"
        )),
        add: term(&format!(
            "lam m:({nat}). lam n:({nat}). Lam p. lam f:p -> p. lam x:p. m{{p}} f (n{{p}} f x)"
        )),
        mult: term(&format!(
            "lam m:({nat}). lam n:({nat}). Lam p. lam f:p -> p. m{{p}} (n{{p}} f)"
        )),
    }
}

/// Predecessor, truncated subtraction, zero test and `<=` on numerals;
/// used by the sorting demonstration in the corpus.
pub struct NatCompare {
    pub pred: Term,
    pub sub: Term,
    pub is_zero: Term,
    pub leq: Term,
}

pub fn nat_compare() -> NatCompare {
    let nat = nat_type();
    let boolean = bool_type();
    let pairs = product_ops(&nat, &nat);
    let (pair, fst, snd) = (pairs.pair, pairs.fst, pairs.snd);
    let prod = product_type(&nat, &nat);
    let succ = nat_ops().succ;
    let zero = church_nat(0);
    let pred = term(&format!(
        "lam n:({nat}). ({fst}) (n{{{prod}}} (lam s:({prod}). ({pair}) (({snd}) s) (({succ}) (({snd}) s))) (({pair}) ({zero}) ({zero})))"
    ));
    let sub = term(&format!("lam m:({nat}). lam n:({nat}). n{{{nat}}} ({pred}) m"));
    let BoolOps { tru, fls, .. } = bool_ops();
    let is_zero = term(&format!(
        "lam n:({nat}). n{{{boolean}}} (lam b:({boolean}). {fls}) ({tru})"
    ));
    let leq = term(&format!(
        "lam m:({nat}). lam n:({nat}). ({is_zero}) (({sub}) m n)"
    ));
    NatCompare { pred, sub, is_zero, leq }
}

/// `Pi X. X -> (alpha -> X -> X) -> X`
pub fn list_type(alpha: &Type) -> Type {
    let x = fresh_tyvar("X", &[alpha]);
    let xv = Type::Var(x.clone());
    Type::pi(
        x,
        Type::arrows(
            [xv.clone(), Type::arrows([alpha.clone(), xv.clone()], xv.clone())],
            xv,
        ),
    )
}

pub struct ListOps {
    /// `List alpha`
    pub nil: Term,
    /// `alpha -> List alpha -> List alpha`
    pub cons: Term,
    /// `Pi X. List alpha -> X -> (alpha -> X -> X) -> X`
    pub fold: Term,
}

pub fn list_ops(alpha: &Type) -> ListOps {
    let list = list_type(alpha);
    let x = fresh_tyvar("X", &[alpha]);
    let xv = Type::Var(x.clone());
    let step_ty = Type::arrows([alpha.clone(), xv.clone()], xv.clone());
    // Lam X. lam n:X. lam c:alpha -> X -> X. body
    let eliminator = |body: Term| {
        Term::ty_lam(
            x.clone(),
            Term::lam("n", xv.clone(), Term::lam("c", step_ty.clone(), body)),
        )
    };
    let unfold = |l: &str, seed: &str, f: &str| {
        Term::apply(Term::ty_app(Term::var(l), xv.clone()), [Term::var(seed), Term::var(f)])
    };
    ListOps {
        nil: eliminator(Term::var("n")),
        cons: Term::lam(
            "h",
            alpha.clone(),
            Term::lam(
                "tl",
                list.clone(),
                eliminator(Term::apply(Term::var("c"), [Term::var("h"), unfold("tl", "n", "c")])),
            ),
        ),
        fold: Term::ty_lam(
            x.clone(),
            Term::lam(
                "l",
                list,
                Term::lam("seed", xv.clone(), Term::lam("f", step_ty.clone(), unfold("l", "seed", "f"))),
            ),
        ),
    }
}

/// The list `[items...]` built with `cons` and `nil`.
pub fn church_list(alpha: &Type, items: impl IntoIterator<Item = Term>) -> Term {
    let ops = list_ops(alpha);
    let items: Vec<Term> = items.into_iter().collect();
    items.into_iter().rev().fold(ops.nil, |acc, item| {
        Term::apply(ops.cons.clone(), [item, acc])
    })
}

/// Reads back a normal list of numerals.
pub fn nat_list_to_vec(term: &Term) -> Option<Vec<u64>> {
    let Term::TyLam(_, body) = term else { return None };
    let Term::Lam(n, _, body) = body.as_ref() else { return None };
    let Term::Lam(c, _, body) = body.as_ref() else { return None };
    let mut out = Vec::new();
    let mut cur = body.as_ref();
    loop {
        match cur {
            Term::Var(v) if v == n => return Some(out),
            Term::App(f, tail) => {
                let Term::App(head, item) = f.as_ref() else { return None };
                if !matches!(head.as_ref(), Term::Var(v) if v == c) {
                    return None;
                }
                out.push(nat_to_int(item)?);
                cur = tail;
            }
            _ => return None,
        }
    }
}

/// Named closed types and terms, addressable as `church:NAME`.
///
/// Numerals are addressed by their value (`church:7`); list operations are
/// at element type `Nat`.
#[derive(Clone, Debug)]
pub struct EncodingCatalog {
    terms: BTreeMap<String, Term>,
    types: BTreeMap<String, Type>,
}

impl EncodingCatalog {
    pub fn standard() -> Self {
        let nat = nat_type();
        let BoolOps { tru, fls, ite } = bool_ops();
        let NatOps { succ, add, mult } = nat_ops();
        let NatCompare { pred, sub, is_zero, leq } = nat_compare();
        let ListOps { nil, cons, fold } = list_ops(&nat);
        let ProductOps { pair, fst, snd } = product_ops(&nat, &nat);
        let terms = [
            ("true", tru),
            ("false", fls),
            ("ite", ite),
            ("succ", succ),
            ("add", add),
            ("mult", mult),
            ("pred", pred),
            ("sub", sub),
            ("iszero", is_zero),
            ("leq", leq),
            ("nil", nil),
            ("cons", cons),
            ("fold", fold),
            ("pair", pair),
            ("fst", fst),
            ("snd", snd),
        ]
        .into_iter()
        .map(|(n, t)| (format!("{CATALOG_PREFIX}{n}"), t))
        .collect();
        let types = [
            ("Bool", bool_type()),
            ("Nat", nat.clone()),
            ("NatList", list_type(&nat)),
            ("NatPair", product_type(&nat, &nat)),
        ]
        .into_iter()
        .map(|(n, t)| (format!("{CATALOG_PREFIX}{n}"), t))
        .collect();
        EncodingCatalog { terms, types }
    }

    pub fn term(&self, name: &str) -> Option<Term> {
        if let Some(t) = self.terms.get(name) {
            return Some(t.clone());
        }
        let digits = name.strip_prefix(CATALOG_PREFIX)?;
        digits.parse::<u64>().ok().map(church_nat)
    }

    pub fn ty(&self, name: &str) -> Option<&Type> {
        self.types.get(name)
    }

    pub fn term_names(&self) -> impl Iterator<Item = &String> {
        self.terms.keys()
    }

    pub fn type_names(&self) -> impl Iterator<Item = &String> {
        self.types.keys()
    }

    /// Replaces every catalog constant and catalog sort by its definition.
    /// Returns the name of the first unknown catalog reference on failure.
    pub fn expand(&self, term: &Term) -> Result<Term, String> {
        Ok(match term {
            Term::Const(c) if c.starts_with(CATALOG_PREFIX) => {
                self.term(c).ok_or_else(|| c.clone())?
            }
            Term::Var(_) | Term::Const(_) => term.clone(),
            Term::Lam(x, ty, body) => Term::lam(x.clone(), self.expand_type(ty)?, self.expand(body)?),
            Term::App(f, a) => Term::app(self.expand(f)?, self.expand(a)?),
            Term::TyLam(a, body) => Term::ty_lam(a.clone(), self.expand(body)?),
            Term::TyApp(f, ty) => Term::ty_app(self.expand(f)?, self.expand_type(ty)?),
        })
    }

    pub fn expand_type(&self, ty: &Type) -> Result<Type, String> {
        Ok(match ty {
            Type::Base(b) if b.starts_with(CATALOG_PREFIX) => {
                self.types.get(b).cloned().ok_or_else(|| b.clone())?
            }
            Type::Base(_) | Type::Var(_) => ty.clone(),
            Type::Arrow(a, b) => Type::arrow(self.expand_type(a)?, self.expand_type(b)?),
            Type::Pi(v, body) => Type::pi(v.clone(), self.expand_type(body)?),
        })
    }
}
