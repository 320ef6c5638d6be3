use arrayvec::ArrayVec;
use num_complex::Complex64;
use serde_json::{json, Value};

use super::space::{dist, half_plane_distance, same_space, Coords, Point, Space};
use crate::error::{domain, Result};

/// Constant-speed geodesic `γ : [0, 1] → M`.
///
/// A restriction `γ|[t1, t2]` keeps the parent's parametrization and only
/// narrows the parameter window, so it agrees with the parent exactly.
#[derive(Debug, Clone)]
pub struct Geodesic {
    start: Point,
    end: Point,
    // parent parameter window; (0, 1) for a geodesic built from endpoints
    lo: f64,
    hi: f64,
    shape: Shape,
}

#[derive(Debug, Clone)]
enum Shape {
    Euclidean {
        from: ArrayVec<f64, 8>,
        to: ArrayVec<f64, 8>,
    },
    /// `x0 + y0 * cayley^-1(tanh(s D / 2) dir)` with `s` the parent parameter.
    HalfPlane {
        x0: f64,
        y0: f64,
        dir: Complex64,
        length: f64,
    },
    Spider {
        from: (usize, f64),
        to: (usize, f64),
    },
    Product(Box<(Geodesic, Geodesic)>),
}

impl Geodesic {
    pub fn new(start: Point, end: Point) -> Result<Self> {
        same_space(&start, &end)?;
        let shape = Shape::between(&start, &end);
        Ok(Self {
            start,
            end,
            lo: 0.0,
            hi: 1.0,
            shape,
        })
    }

    pub fn space(&self) -> &Space {
        &self.start.space
    }

    pub fn start(&self) -> &Point {
        &self.start
    }

    pub fn end(&self) -> &Point {
        &self.end
    }

    /// `d(γ(0), γ(1))`.
    pub fn length(&self) -> f64 {
        dist(&self.start, &self.end)
    }

    /// `γ(t)` for `t ∈ [0, 1]`; errors outside the unit interval.
    pub fn point_at(&self, t: f64) -> Result<Point> {
        if !(0.0..=1.0).contains(&t) {
            return domain(format!("geodesic parameter must be in [0, 1], got {t}"));
        }
        Ok(self.eval(t))
    }

    /// `γ(t)` with `t` clamped to `[0, 1]`.
    pub fn eval(&self, t: f64) -> Point {
        let t = t.clamp(0.0, 1.0);
        if t == 0.0 {
            return self.start.clone();
        }
        if t == 1.0 {
            return self.end.clone();
        }
        self.eval_parent(self.lo + t * (self.hi - self.lo))
    }

    fn eval_parent(&self, s: f64) -> Point {
        let space = self.start.space.clone();
        match &self.shape {
            Shape::Euclidean { from, to } => {
                let v = from.iter().zip(to).map(|(a, b)| a + s * (b - a)).collect();
                Point::unchecked(space, Coords::Euclidean(v))
            }
            Shape::HalfPlane {
                x0,
                y0,
                dir,
                length,
            } => {
                let zeta = dir * (0.5 * s * length).tanh();
                let i = Complex64::i();
                let w = i * (1.0 + zeta) / (1.0 - zeta);
                let y = (y0 * w.im).max(f64::MIN_POSITIVE);
                Point::unchecked(
                    space,
                    Coords::HalfPlane {
                        x: x0 + y0 * w.re,
                        y,
                    },
                )
            }
            Shape::Spider { from, to } => {
                let (ray, radius) = spider_point(*from, *to, s);
                let ray = if radius == 0.0 { 0 } else { ray };
                Point::unchecked(space, Coords::Spider { ray, radius })
            }
            Shape::Product(gh) => {
                let a = gh.0.eval_parent_or_end(s);
                let b = gh.1.eval_parent_or_end(s);
                Point::unchecked(space, Coords::Product(Box::new((a, b))))
            }
        }
    }

    fn eval_parent_or_end(&self, s: f64) -> Point {
        if s == 0.0 {
            self.start.clone()
        } else if s == 1.0 {
            self.end.clone()
        } else {
            self.eval_parent(s)
        }
    }

    /// `λ ↦ γ((1 - λ) t1 + λ t2)` for `0 ≤ t1 < t2 ≤ 1`.
    pub fn restrict(&self, t1: f64, t2: f64) -> Result<Geodesic> {
        if !(0.0..=1.0).contains(&t1) || !(0.0..=1.0).contains(&t2) || t1 >= t2 {
            return domain(format!(
                "restriction needs 0 <= t1 < t2 <= 1, got [{t1}, {t2}]"
            ));
        }
        let span = self.hi - self.lo;
        Ok(Geodesic {
            start: self.eval(t1),
            end: self.eval(t2),
            lo: self.lo + t1 * span,
            hi: if t2 == 1.0 {
                self.hi
            } else {
                self.lo + t2 * span
            },
            shape: self.shape.clone(),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({ "start": self.start.to_json(), "end": self.end.to_json() })
    }
}

impl Shape {
    fn between(start: &Point, end: &Point) -> Shape {
        match (&start.coords, &end.coords) {
            (Coords::Euclidean(a), Coords::Euclidean(b)) => Shape::Euclidean {
                from: a.clone(),
                to: b.clone(),
            },
            (Coords::HalfPlane { x: x1, y: y1 }, Coords::HalfPlane { x: x2, y: y2 }) => {
                // Move the start to i, then to the origin of the disk.
                let i = Complex64::i();
                let w = Complex64::new((x2 - x1) / y1, y2 / y1);
                let zeta = (w - i) / (w + i);
                let norm = zeta.norm();
                let dir = if norm > 0.0 {
                    zeta / norm
                } else {
                    Complex64::new(1.0, 0.0)
                };
                Shape::HalfPlane {
                    x0: *x1,
                    y0: *y1,
                    dir,
                    length: half_plane_distance(*x1, *y1, *x2, *y2),
                }
            }
            (Coords::Spider { ray: r1, radius: a }, Coords::Spider { ray: r2, radius: b }) => {
                Shape::Spider {
                    from: (*r1, *a),
                    to: (*r2, *b),
                }
            }
            (Coords::Product(p), Coords::Product(q)) => {
                let g = Geodesic::new(p.0.clone(), q.0.clone()).expect("factor spaces agree");
                let h = Geodesic::new(p.1.clone(), q.1.clone()).expect("factor spaces agree");
                Shape::Product(Box::new((g, h)))
            }
            _ => unreachable!("geodesic endpoints in different spaces"),
        }
    }
}

/// Point at fraction `s` of the path `from → hub → to` (or along a shared ray).
fn spider_point(from: (usize, f64), to: (usize, f64), s: f64) -> (usize, f64) {
    let ((r1, a), (r2, b)) = (from, to);
    if r1 == r2 || a == 0.0 || b == 0.0 {
        let ray = if a == 0.0 { r2 } else { r1 };
        return (ray, (a + s * (b - a)).max(0.0));
    }
    let travelled = s * (a + b);
    if travelled <= a {
        (r1, a - travelled)
    } else {
        (r2, travelled - a)
    }
}

/// `γ_{[x, y]}(t)`.
pub fn geodesic_point(x: &Point, y: &Point, t: f64) -> Result<Point> {
    Geodesic::new(x.clone(), y.clone())?.point_at(t)
}

/// Midpoint `γ_{[x, y]}(1/2)`.
pub fn midpoint(x: &Point, y: &Point) -> Result<Point> {
    geodesic_point(x, y, 0.5)
}

/// `γ|[t1, t2]`.
pub fn geodesic_restrict(g: &Geodesic, t1: f64, t2: f64) -> Result<Geodesic> {
    g.restrict(t1, t2)
}
