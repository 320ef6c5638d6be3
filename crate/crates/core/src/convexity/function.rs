use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{domain, Result};
use crate::npc_space::{dist, dist2, Geodesic, Point, Space};

/// How a [`GeodesicFunction`] was built; recorded in reports.
#[derive(Debug, Clone, PartialEq)]
pub enum Descriptor {
    /// `x ↦ d^k(x, center)`.
    DistancePower {
        center: Point,
        k: f64,
    },
    /// `x ↦ g(x)` on the real line (`euclidean1`).
    ScalarPullback {
        label: String,
    },
    Custom {
        label: String,
    },
}

/// A real-valued function on the points of one space.
#[derive(Clone)]
pub struct GeodesicFunction {
    space: Space,
    descriptor: Descriptor,
    eval: Arc<dyn Fn(&Point) -> f64 + Send + Sync>,
}

impl GeodesicFunction {
    pub fn new(
        space: Space,
        descriptor: Descriptor,
        eval: impl Fn(&Point) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            space,
            descriptor,
            eval: Arc::new(eval),
        }
    }

    /// `x ↦ g(x)` for points of the real line; with `γ` the segment
    /// `[0, 1]`, `f ∘ γ = g`.
    pub fn scalar_pullback(
        label: impl Into<String>,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(
            Space::Euclidean(1),
            Descriptor::ScalarPullback {
                label: label.into(),
            },
            move |p: &Point| g(p.as_slice().expect("euclidean point")[0]),
        )
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    pub fn eval(&self, p: &Point) -> Result<f64> {
        self.check_space(p.space())?;
        Ok((self.eval)(p))
    }

    pub(crate) fn eval_unchecked(&self, p: &Point) -> f64 {
        (self.eval)(p)
    }

    pub(crate) fn check_space(&self, space: &Space) -> Result<()> {
        if *space == self.space {
            Ok(())
        } else {
            Err(crate::Error::SpaceMismatch {
                left: self.space.to_string(),
                right: space.to_string(),
            })
        }
    }

    /// `t ↦ f(γ(t))`, after checking that `γ` lives in the function's space.
    pub fn along<'a>(&'a self, g: &'a Geodesic) -> Result<impl Fn(f64) -> f64 + Send + Sync + 'a> {
        self.check_space(g.space())?;
        Ok(move |t: f64| (self.eval)(&g.eval(t)))
    }

    pub fn to_json(&self) -> Value {
        match &self.descriptor {
            Descriptor::DistancePower { center, k } => {
                json!({ "kind": "distance_power", "center": center.to_json(), "k": k })
            }
            Descriptor::ScalarPullback { label } => {
                json!({ "kind": "scalar_pullback", "label": label })
            }
            Descriptor::Custom { label } => json!({ "kind": "custom", "label": label }),
        }
    }
}

impl fmt::Debug for GeodesicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeodesicFunction")
            .field("space", &self.space)
            .field("descriptor", &self.descriptor)
            .finish()
    }
}

/// `G_y(x) = d^k(x, y)`, convex for `k >= 1` and strictly convex for `k > 1`.
pub fn squared_distance_function(space: &Space, y: &Point, k: f64) -> Result<GeodesicFunction> {
    if !(k >= 1.0) || !k.is_finite() {
        return domain(format!("distance power must be finite and >= 1, got {k}"));
    }
    if y.space() != space {
        return Err(crate::Error::SpaceMismatch {
            left: space.to_string(),
            right: y.space().to_string(),
        });
    }
    let center = y.clone();
    let descriptor = Descriptor::DistancePower {
        center: y.clone(),
        k,
    };
    let eval = move |x: &Point| {
        if k == 2.0 {
            dist2(x, &center)
        } else {
            dist(x, &center).powf(k)
        }
    };
    Ok(GeodesicFunction::new(space.clone(), descriptor, eval))
}

/// `t ↦ d²(g1(t), g2(t))` on `[0, 1]`.
pub fn distance_between_geodesics_function(
    g1: &Geodesic,
    g2: &Geodesic,
) -> Result<impl Fn(f64) -> f64 + Send + Sync + Clone> {
    if g1.space() != g2.space() {
        return Err(crate::Error::SpaceMismatch {
            left: g1.space().to_string(),
            right: g2.space().to_string(),
        });
    }
    let (g1, g2) = (g1.clone(), g2.clone());
    Ok(move |t: f64| dist2(&g1.eval(t), &g2.eval(t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_power_examples() {
        let space = Space::Euclidean(2);
        let f = squared_distance_function(&space, &Point::euclidean(&[0.0, 0.0]).unwrap(), 2.0)
            .unwrap();
        assert!((f.eval(&Point::euclidean(&[3.0, 4.0]).unwrap()).unwrap() - 25.0).abs() < 1e-12);

        let f = squared_distance_function(
            &Space::HalfPlane,
            &Point::half_plane(0.0, 1.0).unwrap(),
            2.0,
        )
        .unwrap();
        let v = f.eval(&Point::half_plane(0.0, 2.0).unwrap()).unwrap();
        assert!((v - 2f64.ln().powi(2)).abs() < 1e-14);

        assert!(
            squared_distance_function(&space, &Point::euclidean(&[0.0, 0.0]).unwrap(), 0.5)
                .is_err()
        );
        assert!(f.eval(&Point::euclidean(&[1.0, 1.0]).unwrap()).is_err());
    }

    #[test]
    fn pair_distance_examples() {
        let e = |c: &[f64]| Point::euclidean(c).unwrap();
        let g1 = Geodesic::new(e(&[0.0, 0.0]), e(&[3.0, 0.0])).unwrap();
        let g2 = Geodesic::new(e(&[0.0, 1.0]), e(&[3.0, 1.0])).unwrap();
        let d = distance_between_geodesics_function(&g1, &g2).unwrap();
        let same = distance_between_geodesics_function(&g1, &g1).unwrap();
        for t in [0.0, 0.2, 0.5, 1.0] {
            assert!((d(t) - 1.0).abs() < 1e-14);
            assert_eq!(same(t), 0.0);
        }
        let h = Geodesic::new(
            Point::half_plane(0.0, 1.0).unwrap(),
            Point::half_plane(1.0, 1.0).unwrap(),
        )
        .unwrap();
        assert!(distance_between_geodesics_function(&g1, &h).is_err());
    }
}
