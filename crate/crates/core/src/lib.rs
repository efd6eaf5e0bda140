//! Wave-particle duality information measures and numerical verification of
//! the complementarity, monogamy and tradeoff relations built on them.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod cli;
pub mod duality;
pub mod error;
pub mod linalg;
pub mod profile;
pub mod relations;
pub mod rng;
pub mod serial;
pub mod states;

pub use error::{Error, Result};
