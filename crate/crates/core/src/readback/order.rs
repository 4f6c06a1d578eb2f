//! Order of a formula: how high in the type hierarchy its quantifiers and
//! choice operators range.

use std::fmt;

use thiserror::Error;

use super::formula::{Formula, LogicTerm};
use crate::kernel::syntax::Type;
use crate::signature::PROP_SORT;

/// Orders above this are reported as omega.
pub const DEFAULT_OMEGA_CAP: u32 = 9;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("type {0} contains Pi and has no order")]
    PiNotOrderable(Type),
    #[error("type {0} contains a type variable and has no order")]
    OpenType(Type),
}

/// `t` has order 0, every other sort order 1, and `A -> B` has order
/// `max(order(A) + 1, order(B))`.
pub fn type_order(ty: &Type) -> Result<u32, OrderError> {
    fn go(ty: &Type, whole: &Type) -> Result<u32, OrderError> {
        match ty {
            Type::Base(s) if s == PROP_SORT => Ok(0),
            Type::Base(_) => Ok(1),
            Type::Var(_) => Err(OrderError::OpenType(whole.clone())),
            Type::Arrow(a, b) => Ok((go(a, whole)? + 1).max(go(b, whole)?)),
            Type::Pi(..) => Err(OrderError::PiNotOrderable(whole.clone())),
        }
    }
    go(ty, ty)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    Omega,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Omega => f.write_str("omega"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub order: Order,
    /// Every quantified or chosen-over sort, in reading order, with its order.
    pub witnesses: Vec<(Type, u32)>,
}

pub fn classify_order(f: &Formula) -> Result<OrderReport, OrderError> {
    classify_order_with_cap(f, DEFAULT_OMEGA_CAP)
}

pub fn classify_order_with_cap(f: &Formula, cap: u32) -> Result<OrderReport, OrderError> {
    let mut sorts = Vec::new();
    f.visit_formulas(&mut |g| {
        if let Formula::Quant { sort, .. } = g {
            sorts.push(sort.clone());
        }
        let mut collect = |t: &LogicTerm| {
            if let LogicTerm::Choice { sort, .. } = t {
                sorts.push(sort.clone());
            }
        };
        if let Formula::Atom { args, .. } = g {
            args.iter().for_each(|a| visit_terms(a, &mut collect));
        }
    });
    let witnesses = sorts
        .into_iter()
        .map(|s| type_order(&s).map(|o| (s, o)))
        .collect::<Result<Vec<_>, _>>()?;
    let max = witnesses.iter().map(|(_, o)| *o).max().unwrap_or(1).max(1);
    let order = if max > cap { Order::Omega } else { Order::Finite(max) };
    Ok(OrderReport { order, witnesses })
}

/// Visits `t` and the terms directly nested in it; formulas nested in terms
/// are reached separately through `Formula::visit_formulas`.
fn visit_terms(t: &LogicTerm, f: &mut impl FnMut(&LogicTerm)) {
    f(t);
    match t {
        LogicTerm::FuncApp { args, .. } => args.iter().for_each(|a| visit_terms(a, f)),
        LogicTerm::Lambda { body, .. } => visit_terms(body, f),
        _ => {}
    }
}
