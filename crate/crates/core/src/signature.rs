//! Signatures: the sorts and typed constants of the logical language being
//! glued, with the logical role of each constant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::kernel::alpha::alpha_eq_types;
use crate::kernel::parse::{ParseError, Tok, TokenStream};
use crate::kernel::syntax::{Name, Type};

/// The sort of truth values.
pub const PROP_SORT: &str = "t";

pub fn prop() -> Type {
    Type::base(PROP_SORT)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    And,
    Or,
    Imp,
    Not,
}

impl Connective {
    pub fn from_name(name: &str) -> Option<Connective> {
        match name {
            "and" => Some(Connective::And),
            "or" => Some(Connective::Or),
            "imp" => Some(Connective::Imp),
            "not" => Some(Connective::Not),
            _ => None,
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Connective::Not => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
    /// Generalized quantifier over a restrictor and a scope.
    Most,
}

impl Quantifier {
    pub fn from_name(name: &str) -> Option<Quantifier> {
        match name {
            "forall" => Some(Quantifier::Forall),
            "exists" => Some(Quantifier::Exists),
            "most" => Some(Quantifier::Most),
            _ => None,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
            Quantifier::Most => "most",
        }
    }

    /// Number of predicate arguments after specialization.
    pub fn predicate_args(self) -> usize {
        match self {
            Quantifier::Most => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Choice {
    Epsilon,
    Tau,
}

impl Choice {
    pub fn from_name(name: &str) -> Option<Choice> {
        match name {
            "epsilon" => Some(Choice::Epsilon),
            "tau" => Some(Choice::Tau),
            _ => None,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Choice::Epsilon => "epsilon",
            Choice::Tau => "tau",
        }
    }
}

/// The role a constant plays in the logical language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogicalRole {
    Predicate,
    Connective(Connective),
    Quantifier(Quantifier),
    Choice(Choice),
    Function,
}

impl LogicalRole {
    pub fn flag(&self) -> &'static str {
        match self {
            LogicalRole::Predicate => "predicate",
            LogicalRole::Connective(_) => "connective",
            LogicalRole::Quantifier(_) => "quantifier",
            LogicalRole::Choice(_) => "choice",
            LogicalRole::Function => "function",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("`{0}` is declared twice")]
    Duplicate(Name),
    #[error("constant `{constant}` mentions undeclared sort `{sort}`")]
    UndeclaredSort { constant: Name, sort: Name },
    #[error("constant `{0}` has a type with free type variables")]
    OpenType(Name),
    #[error("the sort `t` is not declared")]
    MissingPropSort,
    #[error("no individual sort is declared (a sort other than `t`)")]
    NoIndividualSort,
    #[error("{line}:{column}: unknown flag `{flag}`")]
    MalformedFlag { flag: String, line: usize, column: usize },
    #[error("constant `{name}` cannot be a {flag}: {reason}")]
    BadShape { name: Name, flag: &'static str, reason: String },
}

/// Sorts, constants and the logical marking of a glued language.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    sorts: BTreeSet<Name>,
    constants: BTreeMap<Name, Type>,
    roles: BTreeMap<Name, LogicalRole>,
}

impl Signature {
    /// An empty signature; sorts and constants are added with the `declare_*` methods.
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn declare_sort(&mut self, name: impl Into<Name>) -> Result<(), SignatureError> {
        let name = name.into();
        if self.sorts.contains(&name) || self.constants.contains_key(&name) {
            return Err(SignatureError::Duplicate(name));
        }
        self.sorts.insert(name);
        Ok(())
    }

    /// Adds a constant. `flag` is one of `predicate`, `connective`,
    /// `quantifier`, `choice`, `function`; unflagged constants are
    /// non-logical.
    pub fn declare_const(
        &mut self,
        name: impl Into<Name>,
        ty: Type,
        flag: Option<&str>,
    ) -> Result<(), SignatureError> {
        let name = name.into();
        if self.constants.contains_key(&name) || self.sorts.contains(&name) {
            return Err(SignatureError::Duplicate(name));
        }
        if !ty.is_closed() {
            return Err(SignatureError::OpenType(name));
        }
        if let Some(sort) = ty.base_sorts().into_iter().find(|s| !self.sorts.contains(s)) {
            return Err(SignatureError::UndeclaredSort { constant: name, sort });
        }
        if let Some(flag) = flag {
            let role = self.classify(&name, &ty, flag)?;
            self.roles.insert(name.clone(), role);
        }
        self.constants.insert(name, ty);
        Ok(())
    }

    fn classify(&self, name: &str, ty: &Type, flag: &str) -> Result<LogicalRole, SignatureError> {
        let bad = |flag: &'static str, reason: &str| SignatureError::BadShape {
            name: name.to_string(),
            flag,
            reason: reason.to_string(),
        };
        match flag {
            "predicate" => {
                let (args, result) = ty.uncurry();
                if ty.contains_pi() || *result != prop() {
                    return Err(bad("predicate", "expected a Pi-free type ending in t"));
                }
                debug_assert!(args.iter().all(|a| !a.contains_pi()));
                Ok(LogicalRole::Predicate)
            }
            "function" => {
                let (_, result) = ty.uncurry();
                if ty.contains_pi() || !self.is_individual(result) {
                    return Err(bad("function", "expected a Pi-free type ending in an individual sort"));
                }
                Ok(LogicalRole::Function)
            }
            "connective" => {
                let kind = Connective::from_name(name)
                    .ok_or_else(|| bad("connective", "connectives are named and, or, imp, not"))?;
                let expected = Type::arrows(vec![prop(); kind.arity()], prop());
                if *ty != expected {
                    return Err(bad("connective", &format!("expected type {expected}")));
                }
                Ok(LogicalRole::Connective(kind))
            }
            "quantifier" => {
                let kind = Quantifier::from_name(name)
                    .ok_or_else(|| bad("quantifier", "quantifiers are named forall, exists, most"))?;
                let pred = Type::arrow(Type::var("a"), prop());
                let expected = Type::pi(
                    "a",
                    Type::arrows(vec![pred; kind.predicate_args()], prop()),
                );
                if !alpha_eq_types(ty, &expected) {
                    return Err(bad("quantifier", &format!("expected type {expected}")));
                }
                Ok(LogicalRole::Quantifier(kind))
            }
            "choice" => {
                let kind = Choice::from_name(name)
                    .ok_or_else(|| bad("choice", "choice operators are named tau, epsilon"))?;
                let shaped = match ty {
                    Type::Pi(a, body) => match body.as_ref() {
                        Type::Arrow(pred, result) => {
                            **pred == Type::arrow(Type::var(a.clone()), prop())
                                && self.is_individual(result)
                        }
                        _ => false,
                    },
                    _ => false,
                };
                if !shaped {
                    return Err(bad("choice", "expected Pi a. (a -> t) -> s for an individual sort s"));
                }
                Ok(LogicalRole::Choice(kind))
            }
            _ => unreachable!("flags are checked by the caller"),
        }
    }

    /// Checks the global invariants: `t` and at least one individual sort.
    pub fn validate(&self) -> Result<(), SignatureError> {
        if !self.sorts.contains(PROP_SORT) {
            return Err(SignatureError::MissingPropSort);
        }
        if !self.sorts.iter().any(|s| s != PROP_SORT) {
            return Err(SignatureError::NoIndividualSort);
        }
        Ok(())
    }

    pub fn has_sort(&self, name: &str) -> bool {
        self.sorts.contains(name)
    }

    /// A base sort other than `t`.
    pub fn is_individual(&self, ty: &Type) -> bool {
        matches!(ty, Type::Base(s) if s != PROP_SORT && self.sorts.contains(s))
    }

    pub fn sorts(&self) -> impl Iterator<Item = &Name> {
        self.sorts.iter()
    }

    pub fn constant_type(&self, name: &str) -> Option<&Type> {
        self.constants.get(name)
    }

    pub fn constants(&self) -> impl Iterator<Item = (&Name, &Type)> {
        self.constants.iter()
    }

    pub fn role(&self, name: &str) -> Option<LogicalRole> {
        self.roles.get(name).copied()
    }

    /// Names of all constants carrying the given flag.
    pub fn constants_with_flag<'a>(&'a self, flag: &'a str) -> impl Iterator<Item = &'a Name> + 'a {
        self.roles
            .iter()
            .filter(move |(_, r)| r.flag() == flag)
            .map(|(n, _)| n)
    }

    /// A copy without the named constant (used to probe readback failures).
    pub fn without_constant(&self, name: &str) -> Signature {
        let mut out = self.clone();
        out.constants.remove(name);
        out.roles.remove(name);
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sorts {
            writeln!(f, "sort {s}.")?;
        }
        for (name, ty) in &self.constants {
            match self.roles.get(name) {
                Some(role) => writeln!(f, "const {name} : {ty} [{}].", role.flag())?,
                None => writeln!(f, "const {name} : {ty}.")?,
            }
        }
        Ok(())
    }
}

const FLAGS: &[&str] = &["predicate", "connective", "quantifier", "choice", "function"];

/// Reads a signature file: `sort NAME.` and `const NAME : TYPE [flag].`
/// statements, `#` comments. Sorts may be declared after their first use.
pub fn load_signature(src: &str) -> Result<Signature, SignatureError> {
    let mut ts = TokenStream::new(src, None)?;
    let mut sorts = Vec::new();
    let mut consts = Vec::new();
    while !ts.at_eof() {
        let start = ts.error_here("");
        let keyword = ts.expect_ident()?;
        match keyword.as_str() {
            "sort" => {
                sorts.push(ts.expect_ident()?);
                ts.expect(Tok::Dot)?;
            }
            "const" => {
                let name = ts.expect_ident()?;
                ts.expect(Tok::Colon)?;
                let ty = ts.parse_type()?;
                let flag = if ts.eat(&Tok::LBracket) {
                    let at = ts.error_here("");
                    let flag = ts.expect_ident()?;
                    if !FLAGS.contains(&flag.as_str()) {
                        return Err(SignatureError::MalformedFlag {
                            flag,
                            line: at.line,
                            column: at.column,
                        });
                    }
                    ts.expect(Tok::RBracket)?;
                    Some(flag)
                } else {
                    None
                };
                ts.expect(Tok::Dot)?;
                consts.push((name, ty, flag));
            }
            other => {
                return Err(ParseError {
                    message: format!("expected `sort` or `const`, found `{other}`"),
                    ..start
                }
                .into())
            }
        }
    }
    let mut sig = Signature::new();
    for s in sorts {
        sig.declare_sort(s)?;
    }
    for (name, ty, flag) in consts {
        sig.declare_const(name, ty, flag.as_deref())?;
    }
    sig.validate()?;
    Ok(sig)
}
