//! Exact rational scalars and sparse polynomials / rational functions in
//! the three variables (m, r, s).
//!
//! Everything here is exact. Rational functions are never reduced; two
//! of them are equal when their cross products agree.

mod factored;
mod poly;
mod ratfunc;
mod rational;

pub use factored::{factor_sign_eval, Factor, FactorList};
pub use poly::{Monomial, MultiPoly, Point, Shift, Var};
pub use ratfunc::{substitute, RatFunc};
pub use rational::{Rational, Sign};
