use crate::error::{domain, Result};

use super::operators::Interval;
use super::quadrature::{integrate, QuadratureConfig};

/// Grid size used to approximate the essential supremum for `p = ∞`.
pub const SUP_GRID: usize = 10_000;

/// `‖f‖_{X_c^p(a,b)} = (∫_a^b |t^c f(t)|^p dt/t)^(1/p)`, or the sampled
/// supremum of `|t^c f(t)|` when `p` is infinite. Needs `a > 0`.
pub fn xcp_norm<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    c: f64,
    p: f64,
    interval: Interval,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let Interval { a, b } = interval;
    if a <= 0.0 {
        return domain(format!("X_c^p norm needs a > 0, got {a}"));
    }
    if !(p >= 1.0) {
        return domain(format!("X_c^p norm needs p in [1, inf], got {p}"));
    }
    let weighted = |t: f64| (t.powf(c) * f(t)).abs();
    if p.is_infinite() {
        let step = (b - a) / (SUP_GRID + 1) as f64;
        let sup = (0..=SUP_GRID + 1)
            .map(|i| {
                if i == SUP_GRID + 1 {
                    b
                } else {
                    a + step * i as f64
                }
            })
            .map(weighted)
            .fold(0.0, f64::max);
        return Ok(sup);
    }
    let q = integrate(&|t: f64| weighted(t).powf(p) / t, a, b, cfg)?;
    Ok(q.value.max(0.0).powf(1.0 / p))
}

/// `‖h‖_{L^q[0,1]}` for `q > 1`.
pub fn lq_norm_unit<F: Fn(f64) -> f64 + ?Sized>(
    h: &F,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(q > 1.0) || !q.is_finite() {
        return domain(format!("L^q norm needs finite q > 1, got {q}"));
    }
    let integral = integrate(&|t: f64| h(t).abs().powf(q), 0.0, 1.0, cfg)?;
    Ok(integral.value.max(0.0).powf(1.0 / q))
}
