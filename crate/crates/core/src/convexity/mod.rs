//! Weight functions, functions on NPC spaces, and sampled convexity checks.
//!
//! A function is geodesically h-convex when
//! `f(γ(t)) <= h(1-t) f(γ(0)) + h(t) f(γ(1))` for every geodesic `γ` in its
//! domain. The weights are only ever evaluated on `[0, 1]`; `h(0)` is
//! optional, which admits `h(t) = 1/t`. "Geodesic h-convex" and
//! "geodesically h-convex" name the same notion.
//!
//! Pullbacks with a pole at the origin (`x^r`, `r < 0`) are checked on
//! `[1e-6, 1]`, see [`POLE_OFFSET`].

mod check;
mod function;
mod hfunc;

pub use check::{
    check_convex, check_convex_profile, check_h_convex, check_h_convex_profile,
    check_quasi_or_p_convex, check_quasi_or_p_convex_profile, CheckConfig, ConvexityMode,
    ConvexityVerdict, Witness,
};
pub use function::{
    distance_between_geodesics_function, squared_distance_function, Descriptor, GeodesicFunction,
};
pub use hfunc::{h_catalog, HFunction};

/// Left end of the segment used for pullbacks unbounded at zero.
pub const POLE_OFFSET: f64 = 1e-6;
