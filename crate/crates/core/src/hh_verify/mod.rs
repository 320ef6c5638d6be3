//! Numerical evaluation of the fractional Hermite-Hadamard chains.
//!
//! Every fractional operator acts on the composite `x ↦ f(γ(x^ρ))` (or
//! `x ↦ h(x^ρ)`), see [`CompositeOperand`]. A chain passes when each side is
//! at most the next one plus the tolerance.

mod chains;
mod constants;
mod falsify;
mod operand;
mod params;
mod regression;
mod report;

pub use chains::{CTermForm, HhVerifier, CHAIN_TOLERANCE};
pub use constants::{compute_c, compute_c_oracle};
pub use falsify::{
    falsify_search, falsify_search_with, Chain, FalsifyOptions, FalsifySummary, SampleInstance,
};
pub use operand::{geodesic_operand, CompositeOperand};
pub use params::TheoremParams;
pub use regression::{discrepancy_reference, regression_suite, RegressionCase};
pub use report::InequalityReport;
