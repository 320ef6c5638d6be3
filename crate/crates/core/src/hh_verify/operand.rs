use crate::convexity::GeodesicFunction;
use crate::error::Result;
use crate::npc_space::Geodesic;

/// `x ↦ base(x^ρ)`, the operand every fractional operator of the chains acts on.
#[derive(Debug, Clone, Copy)]
pub struct CompositeOperand<F> {
    base: F,
    rho: f64,
}

impl<F: Fn(f64) -> f64> CompositeOperand<F> {
    pub fn new(base: F, rho: f64) -> Self {
        Self { base, rho }
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.base)(x.powf(self.rho))
    }
}

/// `x ↦ f(γ(x^ρ))`.
pub fn geodesic_operand<'a>(
    f: &'a GeodesicFunction,
    g: &'a Geodesic,
    rho: f64,
) -> Result<CompositeOperand<impl Fn(f64) -> f64 + Send + Sync + 'a>> {
    Ok(CompositeOperand::new(f.along(g)?, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::npc_space::Point;

    #[test]
    fn evaluates_through_the_power() {
        let op = CompositeOperand::new(|u: f64| u + 1.0, 2.0);
        assert_eq!(op.eval(3.0), 10.0);

        let f = GeodesicFunction::scalar_pullback("t^2", |t| t * t);
        let g = Geodesic::new(
            Point::euclidean(&[0.0]).unwrap(),
            Point::euclidean(&[1.0]).unwrap(),
        )
        .unwrap();
        let op = geodesic_operand(&f, &g, 0.5).unwrap();
        assert!((op.eval(0.25) - 0.25).abs() < 1e-15);
    }
}
