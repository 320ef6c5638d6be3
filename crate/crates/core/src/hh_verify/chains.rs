use serde_json::{json, Value};

use crate::convexity::{distance_between_geodesics_function, GeodesicFunction, HFunction};
use crate::error::{domain, Result};
use crate::frac_calc::{
    gamma_positive, integrate, lq_norm_unit, FractionalIntegrator, QuadratureConfig,
};
use crate::npc_space::{dist, dist2, Geodesic};

use super::constants::compute_c;
use super::operand::CompositeOperand;
use super::params::TheoremParams;
use super::report::InequalityReport;

/// Default margin tolerance of every chain.
pub const CHAIN_TOLERANCE: f64 = 1e-8;

/// Grid on which nonnegativity of `f` is checked before `thm_cb1`.
const NONNEG_GRID: usize = 64;

/// Reading of the subtracted term in the third side of the distance corollary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CTermForm {
    /// `αρ h(1/2) C(α,ρ) [d(y1,y2) - d(x1,x2)]²`
    #[default]
    Difference,
    /// `C(α,ρ) [d(y1,y2) - d(x1,x2)]²`
    UnscaledDifference,
    /// `C(α,ρ) [d(y1,y2) d(x1,x2)]²`
    Product,
}

impl CTermForm {
    pub fn label(self) -> &'static str {
        match self {
            CTermForm::Difference => "difference",
            CTermForm::UnscaledDifference => "unscaled_difference",
            CTermForm::Product => "product",
        }
    }
}

/// Evaluates the Hermite-Hadamard chains with fixed quadrature settings.
#[derive(Debug, Clone, Copy)]
pub struct HhVerifier {
    integrator: FractionalIntegrator,
    tol: f64,
}

impl Default for HhVerifier {
    fn default() -> Self {
        Self {
            integrator: FractionalIntegrator::default(),
            tol: CHAIN_TOLERANCE,
        }
    }
}

impl HhVerifier {
    pub fn new(quad: QuadratureConfig, tol: f64) -> Result<Self> {
        quad.validate()?;
        if !(tol > 0.0) {
            return domain(format!("chain tolerance must be positive, got {tol}"));
        }
        Ok(Self {
            integrator: FractionalIntegrator::new(quad),
            tol,
        })
    }

    pub fn with_tol(self, tol: f64) -> Result<Self> {
        Self::new(self.integrator.quad, tol)
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn quad(&self) -> &QuadratureConfig {
        &self.integrator.quad
    }

    fn mean(&self, f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
        Ok(integrate(f, a, b, self.quad())?.value / (b - a))
    }

    /// `[f((a+b)/2), mean of f, (f(a)+f(b))/2]`
    pub fn classic_hh(&self, f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<InequalityReport> {
        interval(a, b)?;
        let sides = vec![
            ("midpoint", f(0.5 * (a + b))),
            ("mean", self.mean(f, a, b)?),
            ("endpoint_average", 0.5 * (f(a) + f(b))),
        ];
        Ok(InequalityReport::new(
            "classic_hh",
            sides,
            self.tol,
            json!({ "a": a, "b": b }),
        ))
    }

    /// `[f((a+b)/2)/(2h(1/2)), mean of f, (f(a)+f(b)) ∫_0^1 h]`
    pub fn h_hh(
        &self,
        f: &dyn Fn(f64) -> f64,
        h: &HFunction,
        a: f64,
        b: f64,
    ) -> Result<InequalityReport> {
        interval(a, b)?;
        let h_half = half(h)?;
        let h_int = integrate(&|t: f64| h.eval(t), 0.0, 1.0, self.quad())?.value;
        let sides = vec![
            ("scaled_midpoint", f(0.5 * (a + b)) / (2.0 * h_half)),
            ("mean", self.mean(f, a, b)?),
            ("weighted_endpoints", (f(a) + f(b)) * h_int),
        ];
        let instance = json!({ "a": a, "b": b, "h": h.label() });
        Ok(InequalityReport::new("h_hh", sides, self.tol, instance))
    }

    /// `[f(γ(1/2)), ∫_0^1 f(γ(t)) dt, (f(γ(0)) + f(γ(1)))/2]`
    pub fn conde_hh(&self, f: &GeodesicFunction, g: &Geodesic) -> Result<InequalityReport> {
        let phi = f.along(g)?;
        let mean = integrate(&phi, 0.0, 1.0, self.quad())?.value;
        let reversed = integrate(&|t: f64| phi(1.0 - t), 0.0, 1.0, self.quad())?.value;
        let sides = vec![
            ("midpoint", phi(0.5)),
            ("mean", mean),
            ("endpoint_average", 0.5 * (phi(0.0) + phi(1.0))),
        ];
        Ok(
            InequalityReport::new("conde_hh", sides, self.tol, geodesic_instance(f, g))
                .with_probe("reversed_mean", reversed),
        )
    }

    /// `ρ^α Γ(α+1) / (b^ρ-a^ρ)^α`
    fn normalizer(&self, p: &TheoremParams) -> f64 {
        p.rho.powf(p.alpha) * gamma_positive(p.alpha + 1.0) / p.width().powf(p.alpha)
    }

    /// Integrator for the one-sided operators over a window of width
    /// `b^ρ-a^ρ`. Those integrals scale like `1/normalizer`, so the absolute
    /// tolerance is scaled with them.
    fn window_integrator(&self, p: &TheoremParams) -> FractionalIntegrator {
        let mut quad = *self.quad();
        quad.abs_tol = (quad.abs_tol / self.normalizer(p)).clamp(f64::MIN_POSITIVE, quad.abs_tol);
        FractionalIntegrator::new(quad)
    }

    /// Middle side of the first two theorems: both one-sided operators of
    /// `x ↦ φ(x^ρ)` over `[a, b]`.
    fn two_sided_mean(
        &self,
        phi: &dyn Fn(f64) -> f64,
        h: &HFunction,
        p: &TheoremParams,
    ) -> Result<f64> {
        let op = CompositeOperand::new(phi, p.rho);
        let f = |x: f64| op.eval(x);
        let (alpha, rho) = (p.order(), p.rho_param());
        let ops = self.window_integrator(p);
        let left = ops.katugampola_left(&f, alpha, rho, p.a, p.b)?.value;
        let right = ops.katugampola_right(&f, alpha, rho, p.a, p.b)?.value;
        Ok(self.normalizer(p) * half(h)? * (left + right))
    }

    /// Middle side of the reflected theorem: the left operator over `[a, b]`
    /// plus the right operator over `[s, c]`.
    fn reflected_mean(
        &self,
        phi: &dyn Fn(f64) -> f64,
        h: &HFunction,
        p: &TheoremParams,
    ) -> Result<f64> {
        Ok(self.normalizer(p) * half(h)? * self.reflected_pair(phi, p)?)
    }

    fn reflected_pair(&self, phi: &dyn Fn(f64) -> f64, p: &TheoremParams) -> Result<f64> {
        let op = CompositeOperand::new(phi, p.rho);
        let f = |x: f64| op.eval(x);
        let (alpha, rho) = (p.order(), p.rho_param());
        let ops = self.window_integrator(p);
        let left = ops.katugampola_left(&f, alpha, rho, p.a, p.b)?.value;
        let right = ops.katugampola_right(&f, alpha, rho, p.s(), p.c())?.value;
        Ok(left + right)
    }

    /// `ρ^α Γ(α+1) K₀` with `K₀ = ρI^α_{0+}[x ↦ h(x^ρ)](1)`; equals
    /// `αρ ∫_0^1 t^(αρ-1) h(1 - t^ρ) dt`.
    fn reflected_weight(&self, h: &HFunction, p: &TheoremParams) -> Result<f64> {
        let op = CompositeOperand::new(|u: f64| h.eval(u), p.rho);
        let k0 = self
            .integrator
            .katugampola_left(&|x: f64| op.eval(x), p.order(), p.rho_param(), 0.0, 1.0)?
            .value;
        Ok(p.rho.powf(p.alpha) * gamma_positive(p.alpha + 1.0) * k0)
    }

    /// `αρ ∫_0^1 t^(αρ-1) h(t^ρ) dt`, integrated as `∫_0^1 h(s^(1/α)) ds`.
    fn direct_weight(&self, h: &HFunction, p: &TheoremParams) -> Result<f64> {
        let inv = 1.0 / p.alpha;
        Ok(integrate(&|s: f64| h.eval(s.powf(inv)), 0.0, 1.0, self.quad())?.value)
    }

    /// `α((q-1)/(αq-1))^((q-1)/q) ‖h‖_q`
    fn holder_weight(&self, h: &HFunction, p: &TheoremParams, q: f64) -> Result<f64> {
        let norm = lq_norm_unit(&|t: f64| h.eval(t), q, self.quad())?;
        Ok(p.alpha * ((q - 1.0) / (p.alpha * q - 1.0)).powf((q - 1.0) / q) * norm)
    }

    pub fn thm_cb1(
        &self,
        f: &GeodesicFunction,
        g: &Geodesic,
        h: &HFunction,
        p: &TheoremParams,
    ) -> Result<InequalityReport> {
        let phi = f.along(g)?;
        self.thm_cb1_profile(&phi, h, p, geodesic_instance(f, g))
    }

    /// The first theorem for a profile `φ = f ∘ γ` on `[0, 1]`; needs `q`.
    pub fn thm_cb1_profile(
        &self,
        phi: &dyn Fn(f64) -> f64,
        h: &HFunction,
        p: &TheoremParams,
        instance: Value,
    ) -> Result<InequalityReport> {
        let Some(q) = p.q else {
            return domain("thm_cb1 needs the integrability exponent q");
        };
        let (ar, br) = (p.a_rho(), p.b_rho());
        let negative = (0..=NONNEG_GRID)
            .map(|i| ar + (br - ar) * i as f64 / NONNEG_GRID as f64)
            .chain([0.0, 1.0])
            .find(|&t| phi(t) < 0.0);
        if let Some(t) = negative {
            return domain(format!(
                "thm_cb1 needs a nonnegative function, f(γ({t})) < 0"
            ));
        }
        let (fa, fb) = (phi(ar), phi(br));
        let h_half = half(h)?;
        let holder = self.holder_weight(h, p, q)?;
        let direct = self.direct_weight(h, p)?;
        let sides = vec![
            ("midpoint", phi(0.5 * (ar + br))),
            ("fractional_mean", self.two_sided_mean(phi, h, p)?),
            (
                "holder_bound",
                h_half * (fa + fb) * (holder + self.reflected_weight(h, p)?),
            ),
        ];
        Ok(
            InequalityReport::new("thm_cb1", sides, self.tol, theorem_instance(instance, h, p))
                .with_probe("holder_exact_term", direct)
                .with_probe("holder_term", holder),
        )
    }

    pub fn thm_cb2(
        &self,
        f: &GeodesicFunction,
        g: &Geodesic,
        h: &HFunction,
        p: &TheoremParams,
    ) -> Result<InequalityReport> {
        let phi = f.along(g)?;
        self.thm_cb2_profile(&phi, h, p, geodesic_instance(f, g))
    }

    /// The refined theorem. The asserted right side uses the exact integral
    /// `αρ ∫ t^(αρ-1) h(t^ρ) dt`; the form `Γ(α+1) ρ J^α_{1-}h(0)` is kept
    /// in the probes.
    pub fn thm_cb2_profile(
        &self,
        phi: &dyn Fn(f64) -> f64,
        h: &HFunction,
        p: &TheoremParams,
        instance: Value,
    ) -> Result<InequalityReport> {
        let (ar, br) = (p.a_rho(), p.b_rho());
        let weight = h_half_sum(h, phi, ar, br)?;
        let direct = self.direct_weight(h, p)?;
        let reflected = self.reflected_weight(h, p)?;
        let rl = self
            .integrator
            .rl_right(&|t: f64| h.eval(t), p.order(), 0.0, 1.0)?
            .value;
        let literal = p.rho * gamma_positive(p.alpha + 1.0) * rl;
        let middle = self.two_sided_mean(phi, h, p)?;
        let right = weight * (direct + reflected);
        let literal_right = weight * (literal + reflected);
        let sides = vec![
            ("midpoint", phi(0.5 * (ar + br))),
            ("fractional_mean", middle),
            ("integral_bound", right),
        ];
        Ok(
            InequalityReport::new("thm_cb2", sides, self.tol, theorem_instance(instance, h, p))
                .with_probe("cb2_exact_term", direct)
                .with_probe("cb2_literal_term", literal)
                .with_probe("cb2_literal_ratio", literal / direct)
                .with_probe("cb2_literal_right", literal_right)
                .with_probe("cb2_literal_margin", literal_right - middle),
        )
    }

    pub fn thm_ty1(
        &self,
        f: &GeodesicFunction,
        g: &Geodesic,
        h: &HFunction,
        p: &TheoremParams,
    ) -> Result<InequalityReport> {
        let phi = f.along(g)?;
        self.thm_ty1_profile(&phi, h, p, geodesic_instance(f, g))
    }

    /// The reflected theorem for a profile `φ = f ∘ γ` on `[0, 1]`.
    pub fn thm_ty1_profile(
        &self,
        phi: &dyn Fn(f64) -> f64,
        h: &HFunction,
        p: &TheoremParams,
        instance: Value,
    ) -> Result<InequalityReport> {
        let e = self.compute_e(h, p)?;
        let sides = vec![
            ("midpoint", phi(0.5)),
            ("fractional_mean", self.reflected_mean(phi, h, p)?),
            (
                "reflected_bound",
                (phi(0.0) + phi(1.0)) / p.width().powf(p.alpha) * e,
            ),
        ];
        Ok(
            InequalityReport::new("thm_ty1", sides, self.tol, theorem_instance(instance, h, p))
                .with_probe("e_h", e),
        )
    }

    /// `E(h) = ρ^α Γ(α+1) h(1/2) (ρI^α_{a+}[h(x^ρ)](b) + ρI^α_{c-}[h(u^ρ)](s))`.
    pub fn compute_e(&self, h: &HFunction, p: &TheoremParams) -> Result<f64> {
        let pair = self.reflected_pair(&|u: f64| h.eval(u), p)?;
        Ok(p.rho.powf(p.alpha) * gamma_positive(p.alpha + 1.0) * half(h)? * pair)
    }

    /// Distance corollary for `γ = g1 = [x1, x2]` and `γ̃ = g2 = [y1, y2]`;
    /// `form` selects the subtracted term of the third side.
    pub fn corollary_distance(
        &self,
        g1: &Geodesic,
        g2: &Geodesic,
        h: &HFunction,
        p: &TheoremParams,
        form: CTermForm,
    ) -> Result<InequalityReport> {
        let d = distance_between_geodesics_function(g1, g2)?;
        let (x1, x2, y1, y2) = (g1.start(), g1.end(), g2.start(), g2.end());
        let endpoint = dist2(y1, x1) + dist2(y2, x2);
        let e = self.compute_e(h, p)?;
        let bound = endpoint / p.width().powf(p.alpha) * e;
        let (ly, lx) = (dist(y1, y2), dist(x1, x2));
        let c = compute_c(p.alpha, p.rho, p.a, p.b);
        let scale = p.alpha * p.rho * half(h)?;
        let difference = bound - scale * c * (ly - lx).powi(2);
        let unscaled = bound - c * (ly - lx).powi(2);
        let product = bound - c * (ly * lx).powi(2);
        let third = match form {
            CTermForm::Difference => difference,
            CTermForm::UnscaledDifference => unscaled,
            CTermForm::Product => product,
        };
        let mean = self.reflected_mean(&d, h, p)?;
        let sides = vec![
            ("midpoint_distance2", d(0.5)),
            ("fractional_mean", mean),
            ("bound_minus_c_term", third),
            ("endpoint_bound", bound),
        ];
        let instance = json!({
            "g1": g1.to_json(),
            "g2": g2.to_json(),
            "h": h.label(),
            "params": p.to_json(),
            "c_term": form.label(),
        });
        Ok(
            InequalityReport::new("corollary_distance", sides, self.tol, instance)
                .with_probe("c_value", c)
                .with_probe("c_coefficient", scale * c)
                .with_probe("e_h", e)
                .with_probe("difference_bound", difference)
                .with_probe("difference_margin", difference - mean)
                .with_probe("unscaled_difference_bound", unscaled)
                .with_probe("unscaled_difference_margin", unscaled - mean)
                .with_probe("product_bound", product)
                .with_probe("product_margin", product - mean),
        )
    }
}

fn interval(a: f64, b: f64) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return domain(format!("need a finite interval with a < b, got [{a}, {b}]"));
    }
    Ok(())
}

fn half(h: &HFunction) -> Result<f64> {
    let v = h.eval(0.5);
    if !(v > 0.0) || !v.is_finite() {
        return domain(format!("need 0 < h(1/2) < inf, got {v}"));
    }
    Ok(v)
}

fn h_half_sum(h: &HFunction, phi: &dyn Fn(f64) -> f64, ar: f64, br: f64) -> Result<f64> {
    Ok(half(h)? * (phi(ar) + phi(br)))
}

fn geodesic_instance(f: &GeodesicFunction, g: &Geodesic) -> Value {
    json!({ "function": f.to_json(), "geodesic": g.to_json() })
}

fn theorem_instance(mut base: Value, h: &HFunction, p: &TheoremParams) -> Value {
    if let Value::Object(map) = &mut base {
        map.insert("h".into(), json!(h.label()));
        map.insert("params".into(), p.to_json());
    }
    base
}
