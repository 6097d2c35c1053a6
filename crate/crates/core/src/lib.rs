//! Exact computations for the family of virtual divisors on the moduli
//! space of curves cut out by GL-invariant conditions on degree-m
//! hypersurfaces containing a curve `C -> P^r`.
//!
//! The crate covers:
//!
//! * [`exactalg`]: rationals, polynomials and rational functions in (m, r, s);
//! * [`brill_noether`]: the numerical data attached to a triple (m, r, s);
//! * [`divisor_class`]: the (lambda, delta_0, psi) class, computed both from
//!   pushforward formulas and from closed forms, and its slope;
//! * [`appendix`]: the transcribed closed-form expressions, loaded from data files;
//! * [`verifier`]: certificate replay and brute-force scans of the slope bounds;
//! * [`enumeration`]: admissible triples, candidate genera, divisor existence;
//! * [`equivariant`]: torus weights of invariant determinants, corank-locus degrees.

pub mod appendix;
pub mod brill_noether;
pub mod divisor_class;
pub mod enumeration;
pub mod equivariant;
mod error;
pub mod exactalg;
pub mod verifier;

pub use brill_noether::{castelnuovo_n, make_params, nh_holds, xi_value, BNParams};
pub use divisor_class::{assemble_class, slope_s0, DivisorClass, Slope};
pub use error::{Error, Result};
pub use exactalg::{MultiPoly, Point, RatFunc, Rational, Shift, Sign, Var};
