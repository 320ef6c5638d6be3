use serde_json::{json, Value};

use crate::error::{domain, Result};
use crate::frac_calc::{power_gap, FracOrder, RhoParam};

/// `(α, ρ, a, b, q)` of the fractional Hermite-Hadamard chains.
///
/// Requires `α, ρ > 0`, `0 <= a < b <= 1`, and when `q` is present `q > 1`
/// together with `αq > 1` (the Hölder exponent `(q-1)/(αq-1)` must be
/// positive).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremParams {
    pub alpha: f64,
    pub rho: f64,
    pub a: f64,
    pub b: f64,
    pub q: Option<f64>,
}

impl TheoremParams {
    pub fn new(alpha: f64, rho: f64, a: f64, b: f64, q: Option<f64>) -> Result<Self> {
        FracOrder::new(alpha)?;
        RhoParam::new(rho)?;
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
            return domain(format!("need 0 <= a, b <= 1, got a = {a}, b = {b}"));
        }
        if a >= b {
            return domain(format!("need a < b, got a = {a}, b = {b}"));
        }
        if let Some(q) = q {
            if !(q > 1.0) || !q.is_finite() {
                return domain(format!("need finite q > 1, got {q}"));
            }
            if !(alpha * q > 1.0) {
                return domain(format!("need alpha * q > 1, got {}", alpha * q));
            }
        }
        Ok(Self {
            alpha,
            rho,
            a,
            b,
            q,
        })
    }

    pub(crate) fn order(&self) -> FracOrder {
        FracOrder::new(self.alpha).expect("validated")
    }

    pub(crate) fn rho_param(&self) -> RhoParam {
        RhoParam::new(self.rho).expect("validated")
    }

    /// `a^ρ`
    pub fn a_rho(&self) -> f64 {
        self.a.powf(self.rho)
    }

    /// `b^ρ`
    pub fn b_rho(&self) -> f64 {
        self.b.powf(self.rho)
    }

    /// `b^ρ - a^ρ`
    pub fn width(&self) -> f64 {
        power_gap(self.a, self.b, self.rho)
    }

    /// `c = (1 - a^ρ)^(1/ρ)`
    pub fn c(&self) -> f64 {
        (1.0 - self.a_rho()).max(0.0).powf(1.0 / self.rho)
    }

    /// `s = (1 - b^ρ)^(1/ρ)`
    pub fn s(&self) -> f64 {
        (1.0 - self.b_rho()).max(0.0).powf(1.0 / self.rho)
    }

    pub fn to_json(&self) -> Value {
        json!({ "alpha": self.alpha, "rho": self.rho, "a": self.a, "b": self.b, "q": self.q })
    }
}
