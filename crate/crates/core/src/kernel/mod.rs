//! The System F kernel: syntax, parsing and printing, substitution,
//! alpha-equivalence, type checking and normalization.

pub mod alpha;
pub mod gen;
pub mod parse;
pub mod print;
pub mod reduce;
pub mod subst;
pub mod syntax;
pub mod typing;

pub use alpha::{alpha_eq, alpha_eq_terms, alpha_eq_types, AlphaEq};
pub use parse::{parse_term, parse_term_in, parse_type, parse_type_in, ParseError};
pub use reduce::{
    is_normal, normalize, normalize_traced, normalize_with_fuel, step, FuelExhausted, Normalized,
    Rule,
};
pub use subst::{subst_term, subst_type, subst_type_in_term};
pub use syntax::{Arg, Name, Term, Type};
pub use typing::{typecheck, Context, TypeError, DEFAULT_FUEL};
