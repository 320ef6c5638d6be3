use arrayvec::ArrayVec;
use rand::Rng;

use super::space::{Coords, Point, Space};

/// Sampling box for random instances: euclidean coordinates in `[-2, 2]`,
/// half-plane `x ∈ [-2, 2]` and `y` log-uniform in `[0.2, 3]`, spider radii
/// in `[0, 3]` with one draw in ten landing on the hub.
impl Space {
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let coords = match self {
            Space::Euclidean(n) => {
                let v: ArrayVec<f64, 8> = (0..*n).map(|_| rng.gen_range(-2.0..=2.0)).collect();
                Coords::Euclidean(v)
            }
            Space::HalfPlane => {
                let x = rng.gen_range(-2.0..=2.0);
                let y = rng.gen_range(0.2f64.ln()..=3f64.ln()).exp();
                Coords::HalfPlane { x, y }
            }
            Space::Spider(k) => {
                if rng.gen_bool(0.1) {
                    Coords::Spider {
                        ray: 0,
                        radius: 0.0,
                    }
                } else {
                    Coords::Spider {
                        ray: rng.gen_range(0..*k),
                        radius: rng.gen_range(0.0..=3.0),
                    }
                }
            }
            Space::Product(f) => {
                let a = f.0.random_point(rng);
                let b = f.1.random_point(rng);
                Coords::Product(Box::new((a, b)))
            }
        };
        Point::unchecked(self.clone(), coords)
    }
}
