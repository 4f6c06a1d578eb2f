//! A System F kernel with a Montagovian glue layer on top.
//!
//! The [`kernel`] type-checks and normalizes second-order lambda terms.
//! [`encodings`] provides the usual Church encodings over it. The [`glue`]
//! layer composes lexicon entries along sentence trees, and [`readback`]
//! turns normal terms of type `t` into logic formulas and reports their
//! order.

pub mod encodings;
pub mod glue;
pub mod kernel;
pub mod readback;
pub mod signature;

pub use kernel::{Term, Type};
pub use signature::{load_signature, Signature};
