//! Fractional integral operators and the numerical machinery under them.

mod gamma;
mod norms;
mod operators;
mod quadrature;

pub use gamma::gamma_fn;
pub use norms::{lq_norm_unit, xcp_norm, SUP_GRID};
pub use operators::{FracOrder, FractionalIntegrator, Interval, RhoParam};
pub use quadrature::{integrate, GaussLegendre, Quadrature, QuadratureConfig};

pub(crate) use gamma::gamma_positive;
pub(crate) use operators::power_gap;
