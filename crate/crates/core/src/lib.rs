//! Symbolic Wadge degrees of finite-rank functions into a finite quasi-order.
//!
//! Degrees are named by nested labeled forest terms ([`Term`]) and compared
//! with the recursive order [`order::leq`]. Jump-free terms can be evaluated
//! as their complete mind-change functions ([`evalred::eval_omega`]), and
//! reductions between them synthesized and executed as stream transducers.
//! [`oracle`] holds two independent brute-force deciders for the same order.

pub mod error;
pub mod evalred;
pub mod explore;
pub mod oracle;
pub mod order;
pub mod ordinal;
pub mod qspec;
pub mod stream;
pub mod term;

pub use error::{Error, Result};
pub use ordinal::{ord_cmp, parse_ordinal, Ordinal};
pub use qspec::{builtin, load_quasi_order, QuasiOrder};
pub use term::{parse_term, print_term, Term};
