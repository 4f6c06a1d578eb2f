//! Logic formulas produced by readback, and their ASCII notation.

use std::fmt::{self, Write};

use crate::kernel::syntax::{Name, Type};
use crate::signature::{Choice, Connective, Quantifier};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    /// A predicate (constant or bound variable) applied to its arguments.
    Atom { pred: Name, args: Vec<LogicTerm> },
    Conn { kind: Connective, operands: Vec<Formula> },
    /// `restrictor` is only present for `most`, whose two predicate
    /// arguments share the bound variable.
    Quant {
        kind: Quantifier,
        sort: Type,
        var: Name,
        restrictor: Option<Box<Formula>>,
        body: Box<Formula>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogicTerm {
    IndVar { name: Name, sort: Type },
    /// A constant used as an argument, possibly of higher type.
    IndConst { name: Name, sort: Type },
    FuncApp { name: Name, args: Vec<LogicTerm> },
    Choice { kind: Choice, sort: Type, var: Name, body: Box<Formula> },
    /// Abstraction in argument position, e.g. a property passed to a
    /// higher-order predicate.
    Lambda { var: Name, sort: Type, body: Box<LogicTerm> },
    /// An argument of sort `t`.
    Formula(Box<Formula>),
}

impl Formula {
    pub fn atom(pred: impl Into<Name>, args: Vec<LogicTerm>) -> Formula {
        Formula::Atom { pred: pred.into(), args }
    }

    pub fn binary(kind: Connective, a: Formula, b: Formula) -> Formula {
        Formula::Conn { kind, operands: vec![a, b] }
    }

    pub fn negation(a: Formula) -> Formula {
        Formula::Conn { kind: Connective::Not, operands: vec![a] }
    }

    pub fn quant(kind: Quantifier, sort: Type, var: impl Into<Name>, body: Formula) -> Formula {
        Formula::Quant { kind, sort, var: var.into(), restrictor: None, body: Box::new(body) }
    }

    /// Pre-order walk over every formula, including those nested in terms.
    pub fn visit_formulas(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Atom { args, .. } => args.iter().for_each(|a| a.visit_formulas(f)),
            Formula::Conn { operands, .. } => operands.iter().for_each(|o| o.visit_formulas(f)),
            Formula::Quant { restrictor, body, .. } => {
                if let Some(r) = restrictor {
                    r.visit_formulas(f);
                }
                body.visit_formulas(f);
            }
        }
    }
}

impl LogicTerm {
    pub fn var(name: impl Into<Name>, sort: Type) -> LogicTerm {
        LogicTerm::IndVar { name: name.into(), sort }
    }

    pub fn constant(name: impl Into<Name>, sort: Type) -> LogicTerm {
        LogicTerm::IndConst { name: name.into(), sort }
    }

    fn visit_formulas(&self, f: &mut impl FnMut(&Formula)) {
        match self {
            LogicTerm::IndVar { .. } | LogicTerm::IndConst { .. } => {}
            LogicTerm::FuncApp { args, .. } => args.iter().for_each(|a| a.visit_formulas(f)),
            LogicTerm::Choice { body, .. } => body.visit_formulas(f),
            LogicTerm::Lambda { body, .. } => body.visit_formulas(f),
            LogicTerm::Formula(inner) => inner.visit_formulas(f),
        }
    }
}

fn write_sort(out: &mut String, sort: &Type) {
    if sort.contains_pi() {
        let _ = write!(out, "({sort})");
    } else {
        let _ = write!(out, "{sort}");
    }
}

fn write_args(out: &mut String, args: &[LogicTerm]) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_term(out, a);
    }
    out.push(')');
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Atom { pred, args } => {
            out.push_str(pred);
            if !args.is_empty() {
                write_args(out, args);
            }
        }
        Formula::Conn { kind: Connective::Not, operands } => {
            out.push('~');
            write_formula(out, &operands[0]);
        }
        Formula::Conn { kind, operands } => {
            let op = match kind {
                Connective::And => " & ",
                Connective::Or => " | ",
                Connective::Imp => " -> ",
                Connective::Not => unreachable!(),
            };
            out.push('(');
            write_formula(out, &operands[0]);
            out.push_str(op);
            write_formula(out, &operands[1]);
            out.push(')');
        }
        Formula::Quant { kind, sort, var, restrictor, body } => {
            let _ = write!(out, "{} {var}:", kind.keyword());
            write_sort(out, sort);
            out.push_str(". ");
            if let Some(r) = restrictor {
                out.push('[');
                write_formula(out, r);
                out.push_str("] ");
            }
            write_formula(out, body);
        }
    }
}

fn write_term(out: &mut String, t: &LogicTerm) {
    match t {
        LogicTerm::IndVar { name, .. } | LogicTerm::IndConst { name, .. } => out.push_str(name),
        LogicTerm::FuncApp { name, args } => {
            out.push_str(name);
            write_args(out, args);
        }
        LogicTerm::Choice { kind, sort, var, body } => {
            let _ = write!(out, "{} {var}:", kind.keyword());
            write_sort(out, sort);
            out.push_str(". ");
            write_formula(out, body);
        }
        LogicTerm::Lambda { var, sort, body } => {
            let _ = write!(out, "lambda {var}:");
            write_sort(out, sort);
            out.push_str(". ");
            write_term(out, body);
        }
        LogicTerm::Formula(f) => write_formula(out, f),
    }
}

/// Deterministic, fully parenthesized ASCII rendering, e.g.
/// `forall x:e. (cat(x) -> sleeps(x))`.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Display for LogicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_term(&mut out, self);
        f.write_str(&out)
    }
}
