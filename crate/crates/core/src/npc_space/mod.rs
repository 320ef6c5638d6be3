//! Model global NPC (CAT(0)) spaces.
//!
//! The catalog covers a flat space (`euclidean(n)`), a space of constant
//! curvature -1 (the Poincaré half-plane), a non-manifold example (the
//! spider tree, `k` rays glued at a hub) and products of any two of these.
//! Geodesics are unique in all of them and are evaluated in closed form.
//!
//! The gap functions return right side minus left side of the comparison
//! inequalities, so each should be `>= -1e-9` on every instance. Busemann's
//! inequality is checked globally, which is valid in global NPC spaces even
//! though it is often stated only for nearby points.

mod gaps;
mod geodesic;
mod sampling;
mod space;

pub use gaps::{busemann_gap, cn_gap, comparison_gap, four_point_gap, sturm_gap};
pub use geodesic::{geodesic_point, geodesic_restrict, midpoint, Geodesic};
pub use space::{distance, Coords, Point, Space, MAX_EUCLIDEAN_DIM, MAX_SPIDER_RAYS};

pub(crate) use space::{dist, dist2};

/// Default slack for the gap contracts.
pub const GAP_TOLERANCE: f64 = 1e-9;
