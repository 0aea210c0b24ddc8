//! Exact linear-programming upper bounds on the size of q-ary codes and
//! q-ary constant-weight codes.
//!
//! The crate has two halves that check each other:
//!
//! * closed-form quantities ([`polynomials`], [`inequality_constants`]) and the
//!   exact rational LP machinery built on them ([`lp`]);
//! * brute-force oracles over explicit codes ([`finite_field`], [`code_oracle`])
//!   that count the same quantities by direct enumeration.

pub mod cli;
pub mod code_oracle;
pub mod error;
pub mod finite_field;
pub mod inequality_constants;
pub mod lp;
pub mod polynomials;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use rational::Rational;
