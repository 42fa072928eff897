//! Matrix measures on time scales and the stability tools built on them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certificates;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod models;
pub mod solver;
pub mod timescale;

pub use error::{Error, Result};
