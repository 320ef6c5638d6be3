//! Left and right fractional integrals of Riemann-Liouville, Hadamard and
//! Katugampola type.
//!
//! Every operator is rewritten before quadrature. With `w` the kernel
//! variable (`x - t`, `ln(x/t)` or `x^ρ - t^ρ`, mirrored on the right) the
//! integral becomes `∫ w^(α-1) f(t(w)) dw`, and the further change
//! `v = w^α` turns it into `(1/α) ∫_0^{W^α} f(t(v^(1/α))) dv`, whose
//! integrand is bounded even when `α < 1`.

use crate::error::{domain, Result};

use super::gamma::gamma_positive;
use super::quadrature::{integrate, Quadrature, QuadratureConfig};

/// Order `α > 0` of a fractional integral.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha.is_finite() {
            Ok(Self(alpha))
        } else {
            domain(format!(
                "fractional order must be finite and > 0, got {alpha}"
            ))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Katugampola parameter `ρ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RhoParam(f64);

impl RhoParam {
    pub fn new(rho: f64) -> Result<Self> {
        if rho > 0.0 && rho.is_finite() {
            Ok(Self(rho))
        } else {
            domain(format!("rho must be finite and > 0, got {rho}"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// A finite interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return domain("interval endpoints must be finite");
        }
        if a >= b {
            return domain(format!("empty interval [{a}, {b}]"));
        }
        Ok(Self { a, b })
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }
}

/// Evaluates fractional integrals with a fixed quadrature configuration.
#[derive(Debug, Clone, Copy, Default)]
pub struct FractionalIntegrator {
    pub quad: QuadratureConfig,
}

impl FractionalIntegrator {
    pub fn new(quad: QuadratureConfig) -> Self {
        Self { quad }
    }

    // (1/Γ(α+1)) ∫_0^{width^α} f(point(v^(1/α))) dv
    fn smoothed<F, P>(&self, f: &F, alpha: FracOrder, width: f64, point: P) -> Result<Quadrature>
    where
        F: Fn(f64) -> f64 + ?Sized,
        P: Fn(f64) -> f64,
    {
        let alpha = alpha.get();
        let upper = width.powf(alpha);
        let inv = 1.0 / alpha;
        let integrand = |v: f64| f(point(v.max(0.0).powf(inv).min(width)));
        let q = integrate(&integrand, 0.0, upper, &self.quad)?;
        Ok(q.scaled(1.0 / gamma_positive(alpha + 1.0)))
    }

    /// `J^α_{a+} f(x) = (1/Γ(α)) ∫_a^x (x-t)^(α-1) f(t) dt`.
    pub fn rl_left<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        alpha: FracOrder,
        a: f64,
        x: f64,
    ) -> Result<Quadrature> {
        let span = Interval::new(a, x)?;
        self.smoothed(f, alpha, span.len(), |w| (x - w).max(a))
    }

    /// `J^α_{b-} f(x) = (1/Γ(α)) ∫_x^b (t-x)^(α-1) f(t) dt`.
    pub fn rl_right<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        alpha: FracOrder,
        x: f64,
        b: f64,
    ) -> Result<Quadrature> {
        let span = Interval::new(x, b)?;
        self.smoothed(f, alpha, span.len(), |w| (x + w).min(b))
    }

    /// `H^α_{a+} f(x) = (1/Γ(α)) ∫_a^x (ln(x/t))^(α-1) f(t)/t dt`, `0 < a < x`.
    pub fn hadamard_left<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        alpha: FracOrder,
        a: f64,
        x: f64,
    ) -> Result<Quadrature> {
        Interval::new(a, x)?;
        if a <= 0.0 {
            return domain(format!("Hadamard integral needs a > 0, got {a}"));
        }
        let width = (x / a).ln();
        self.smoothed(f, alpha, width, |w| (x * (-w).exp()).max(a))
    }

    /// `H^α_{b-} f(x) = (1/Γ(α)) ∫_x^b (ln(t/x))^(α-1) f(t)/t dt`, `0 < x < b`.
    pub fn hadamard_right<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        alpha: FracOrder,
        x: f64,
        b: f64,
    ) -> Result<Quadrature> {
        Interval::new(x, b)?;
        if x <= 0.0 {
            return domain(format!("Hadamard integral needs x > 0, got {x}"));
        }
        let width = (b / x).ln();
        self.smoothed(f, alpha, width, |w| (x * w.exp()).min(b))
    }

    /// `ρI^α_{a+} f(x) = (ρ^(1-α)/Γ(α)) ∫_a^x t^(ρ-1) (x^ρ - t^ρ)^(α-1) f(t) dt`, `0 ≤ a < x`.
    pub fn katugampola_left<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        alpha: FracOrder,
        rho: RhoParam,
        a: f64,
        x: f64,
    ) -> Result<Quadrature> {
        Interval::new(a, x)?;
        if a < 0.0 {
            return domain(format!("Katugampola integral needs a >= 0, got {a}"));
        }
        let r = rho.get();
        let width = power_gap(a, x, r);
        let xr = x.powf(r);
        // t = (x^ρ - w)^(1/ρ), written through ln_1p so that ρ → 0 stays accurate.
        let q = self.smoothed(f, alpha, width, |w| {
            (x * ((-w / xr).ln_1p() / r).exp()).clamp(a, x)
        })?;
        Ok(q.scaled(r.powf(-alpha.get())))
    }

    /// `ρI^α_{b-} f(x) = (ρ^(1-α)/Γ(α)) ∫_x^b t^(ρ-1) (t^ρ - x^ρ)^(α-1) f(t) dt`, `0 ≤ x < b`.
    pub fn katugampola_right<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        alpha: FracOrder,
        rho: RhoParam,
        x: f64,
        b: f64,
    ) -> Result<Quadrature> {
        Interval::new(x, b)?;
        if x < 0.0 {
            return domain(format!("Katugampola integral needs x >= 0, got {x}"));
        }
        let r = rho.get();
        let width = power_gap(x, b, r);
        let q = if x == 0.0 {
            self.smoothed(f, alpha, width, |w| w.powf(1.0 / r).min(b))?
        } else {
            let xr = x.powf(r);
            self.smoothed(f, alpha, width, |w| {
                (x * ((w / xr).ln_1p() / r).exp()).clamp(x, b)
            })?
        };
        Ok(q.scaled(r.powf(-alpha.get())))
    }
}

/// `hi^ρ - lo^ρ` for `0 ≤ lo < hi`, without cancellation as ρ → 0.
pub(crate) fn power_gap(lo: f64, hi: f64, rho: f64) -> f64 {
    if lo == 0.0 {
        hi.powf(rho)
    } else {
        lo.powf(rho) * (rho * (hi / lo).ln()).exp_m1()
    }
}
