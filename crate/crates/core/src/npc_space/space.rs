use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use arrayvec::ArrayVec;
use serde_json::{json, Value};

use crate::error::{domain, Error, Result};

pub const MAX_EUCLIDEAN_DIM: usize = 8;
pub const MAX_SPIDER_RAYS: usize = 16;

/// A model global NPC space.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    /// `R^n` with `1 <= n <= 8`.
    Euclidean(usize),
    /// Upper half-plane `{(x, y) : y > 0}` with the Poincaré metric.
    HalfPlane,
    /// `k` closed half-lines glued at a common hub.
    Spider(usize),
    /// Product with the `l^2` combination of the factor metrics.
    Product(Arc<(Space, Space)>),
}

impl Space {
    pub fn euclidean(n: usize) -> Result<Self> {
        if (1..=MAX_EUCLIDEAN_DIM).contains(&n) {
            Ok(Space::Euclidean(n))
        } else {
            domain(format!(
                "euclidean dimension must be in 1..={MAX_EUCLIDEAN_DIM}, got {n}"
            ))
        }
    }

    pub fn spider(k: usize) -> Result<Self> {
        if (1..=MAX_SPIDER_RAYS).contains(&k) {
            Ok(Space::Spider(k))
        } else {
            domain(format!(
                "spider ray count must be in 1..={MAX_SPIDER_RAYS}, got {k}"
            ))
        }
    }

    pub fn product(a: Space, b: Space) -> Self {
        Space::Product(Arc::new((a, b)))
    }

    /// Membership predicate for coordinates.
    pub fn contains(&self, coords: &Coords) -> bool {
        match (self, coords) {
            (Space::Euclidean(n), Coords::Euclidean(v)) => {
                v.len() == *n && v.iter().all(|c| c.is_finite())
            }
            (Space::HalfPlane, Coords::HalfPlane { x, y }) => {
                x.is_finite() && y.is_finite() && *y > 0.0
            }
            (Space::Spider(k), Coords::Spider { ray, radius }) => {
                ray < k && radius.is_finite() && *radius >= 0.0
            }
            (Space::Product(f), Coords::Product(pq)) => pq.0.space == f.0 && pq.1.space == f.1,
            _ => false,
        }
    }

    /// Builds a point after checking membership.
    pub fn point(&self, coords: Coords) -> Result<Point> {
        let coords = coords.normalized();
        if self.contains(&coords) {
            Ok(Point {
                space: self.clone(),
                coords,
            })
        } else {
            domain(format!("coordinates {coords:?} are not a point of {self}"))
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Euclidean(n) => write!(f, "euclidean{n}"),
            Space::HalfPlane => write!(f, "halfplane"),
            Space::Spider(k) => write!(f, "spider{k}"),
            Space::Product(pq) => write!(f, "product({},{})", pq.0, pq.1),
        }
    }
}

impl FromStr for Space {
    type Err = Error;

    /// Parses the labels produced by `Display`: `euclideanN`, `halfplane`,
    /// `spiderK`, `product(A,B)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let usage = || Error::Usage(format!("unknown space '{s}'"));
        if s == "halfplane" || s == "half_plane" {
            return Ok(Space::HalfPlane);
        }
        if let Some(n) = s.strip_prefix("euclidean") {
            let n: usize = n.parse().map_err(|_| usage())?;
            return Space::euclidean(n).map_err(|_| usage());
        }
        if let Some(k) = s.strip_prefix("spider") {
            let k: usize = k.parse().map_err(|_| usage())?;
            return Space::spider(k).map_err(|_| usage());
        }
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma
            let mut depth = 0usize;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(usage)?,
                    ',' if depth == 0 => {
                        let a: Space = inner[..i].parse()?;
                        let b: Space = inner[i + 1..].parse()?;
                        return Ok(Space::product(a, b));
                    }
                    _ => {}
                }
            }
        }
        Err(usage())
    }
}

/// Space-specific coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Coords {
    Euclidean(ArrayVec<f64, MAX_EUCLIDEAN_DIM>),
    HalfPlane {
        x: f64,
        y: f64,
    },
    /// The hub is stored as `ray = 0, radius = 0`.
    Spider {
        ray: usize,
        radius: f64,
    },
    Product(Box<(Point, Point)>),
}

impl Coords {
    fn normalized(self) -> Self {
        match self {
            Coords::Spider { radius: 0.0, .. } => Coords::Spider {
                ray: 0,
                radius: 0.0,
            },
            other => other,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Coords::Euclidean(v) => json!(v.as_slice()),
            Coords::HalfPlane { x, y } => json!([x, y]),
            Coords::Spider { ray, radius } => json!([ray, radius]),
            Coords::Product(pq) => json!([pq.0.coords.to_json(), pq.1.coords.to_json()]),
        }
    }
}

/// A point tagged with the space that owns it.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub(crate) space: Space,
    pub(crate) coords: Coords,
}

impl Point {
    pub fn euclidean(coords: &[f64]) -> Result<Self> {
        let space = Space::euclidean(coords.len())?;
        let v: ArrayVec<f64, MAX_EUCLIDEAN_DIM> = coords.iter().copied().collect();
        space.point(Coords::Euclidean(v))
    }

    pub fn half_plane(x: f64, y: f64) -> Result<Self> {
        Space::HalfPlane.point(Coords::HalfPlane { x, y })
    }

    pub fn spider(rays: usize, ray: usize, radius: f64) -> Result<Self> {
        Space::spider(rays)?.point(Coords::Spider { ray, radius })
    }

    pub fn hub(rays: usize) -> Result<Self> {
        Self::spider(rays, 0, 0.0)
    }

    pub fn product(a: Point, b: Point) -> Self {
        let space = Space::product(a.space.clone(), b.space.clone());
        Point {
            space,
            coords: Coords::Product(Box::new((a, b))),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    /// Euclidean coordinate slice, if this is a euclidean point.
    pub fn as_slice(&self) -> Option<&[f64]> {
        match &self.coords {
            Coords::Euclidean(v) => Some(v.as_slice()),
            _ => None,
        }
    }

    /// `{"coords": ..., "space": "<label>"}`.
    ///
    /// Coordinates are `[x1, .., xn]` (euclidean), `[x, y]` (half-plane),
    /// `[ray, radius]` (spider), `[coordsA, coordsB]` (product).
    pub fn to_json(&self) -> Value {
        json!({ "space": self.space.to_string(), "coords": self.coords.to_json() })
    }

    pub(crate) fn unchecked(space: Space, coords: Coords) -> Self {
        Point { space, coords }
    }
}

pub(crate) fn same_space(x: &Point, y: &Point) -> Result<()> {
    if x.space == y.space {
        Ok(())
    } else {
        Err(Error::SpaceMismatch {
            left: x.space.to_string(),
            right: y.space.to_string(),
        })
    }
}

/// The metric of the owning space.
pub fn distance(x: &Point, y: &Point) -> Result<f64> {
    same_space(x, y)?;
    Ok(dist(x, y))
}

/// Squared distance; for products this is the sum of the factors' squares.
pub(crate) fn dist2(x: &Point, y: &Point) -> f64 {
    match (&x.coords, &y.coords) {
        (Coords::Product(p), Coords::Product(q)) => dist2(&p.0, &q.0) + dist2(&p.1, &q.1),
        _ => {
            let d = dist(x, y);
            d * d
        }
    }
}

pub(crate) fn dist(x: &Point, y: &Point) -> f64 {
    match (&x.coords, &y.coords) {
        (Coords::Euclidean(a), Coords::Euclidean(b)) => a
            .iter()
            .zip(b)
            .map(|(p, q)| (p - q) * (p - q))
            .sum::<f64>()
            .sqrt(),
        (Coords::HalfPlane { x: x1, y: y1 }, Coords::HalfPlane { x: x2, y: y2 }) => {
            half_plane_distance(*x1, *y1, *x2, *y2)
        }
        (Coords::Spider { ray: r1, radius: a }, Coords::Spider { ray: r2, radius: b }) => {
            if r1 == r2 {
                (a - b).abs()
            } else {
                a + b
            }
        }
        (Coords::Product(p), Coords::Product(q)) => (dist2(&p.0, &q.0) + dist2(&p.1, &q.1)).sqrt(),
        _ => unreachable!("distance between points of different spaces"),
    }
}

/// `arccosh(1 + |z1 - z2|^2 / (2 y1 y2))`, evaluated as `2 asinh(|z1 - z2| / (2 sqrt(y1 y2)))`.
pub(crate) fn half_plane_distance(x1: f64, y1: f64, x2: f64, y2: f64) -> f64 {
    let chord = (x1 - x2).hypot(y1 - y2);
    2.0 * (chord / (2.0 * (y1 * y2).sqrt())).asinh()
}
