// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fracint;
pub mod kinetics;
pub mod laplace;
pub mod reaction_diffusion;
pub mod special_functions;

pub use error::{Error, Result};
