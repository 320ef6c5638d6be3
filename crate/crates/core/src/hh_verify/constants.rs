use crate::error::Result;
use crate::frac_calc::{integrate, QuadratureConfig};

/// Closed form of `C(α, ρ) = ∫_0^1 2u^ρ(1 - u^ρ) t^(αρ-1) dt` with
/// `u^ρ = t^ρ a^ρ + (1 - t^ρ) b^ρ`.
pub fn compute_c(alpha: f64, rho: f64, a: f64, b: f64) -> f64 {
    let (ar, br) = (a.powf(rho), b.powf(rho));
    let num = (ar * alpha + br) * (2.0 * (alpha + 2.0) - 4.0 * br)
        - 2.0 * ar * ar * alpha * (alpha + 1.0);
    num / (alpha * rho * (alpha + 1.0) * (alpha + 2.0))
}

/// Quadrature value of the same integral, after `s = t^(αρ)`:
/// `(1/(αρ)) ∫_0^1 2u^ρ(1 - u^ρ) ds` with `u^ρ = s^(1/α) a^ρ + (1 - s^(1/α)) b^ρ`.
/// Accepts any `a, b` in `[0, 1]`, including `a = b`.
pub fn compute_c_oracle(
    alpha: f64,
    rho: f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let (ar, br) = (a.powf(rho), b.powf(rho));
    let integrand = |s: f64| {
        let w = s.powf(1.0 / alpha);
        let u = w * ar + (1.0 - w) * br;
        2.0 * u * (1.0 - u)
    };
    let q = integrate(&integrand, 0.0, 1.0, cfg)?;
    Ok(q.value / (alpha * rho))
}
