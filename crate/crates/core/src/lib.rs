//! Numerical toolkit for Hermite-Hadamard type inequalities on spaces of
//! nonpositive curvature.
//!
//! The crate is split along the objects the inequalities are built from:
//!
//! * [`frac_calc`]: Gamma function, adaptive Gauss-Legendre quadrature, the
//!   Riemann-Liouville, Hadamard and Katugampola fractional integrals, and
//!   the `L^q` / `X_c^p` norms.
//! * [`npc_space`]: model CAT(0) spaces (euclidean, Poincaré half-plane,
//!   spider trees, products), geodesics, and gap checks for the comparison
//!   inequalities that characterise them.
//! * [`convexity`]: weight functions `h`, functions on spaces, and sampled
//!   checkers for convexity, h-convexity, quasi- and p-convexity.
//! * [`hh_verify`]: the inequality chains themselves, the closed-form
//!   constants with quadrature oracles, and randomized falsification.
//!
//! All operations are pure; randomness only enters through explicit seeds.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convexity;
pub mod error;
pub mod frac_calc;
pub mod hh_verify;
pub mod npc_space;

pub use error::{Error, Result};
