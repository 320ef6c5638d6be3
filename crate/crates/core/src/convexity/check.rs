//! Sampled convexity checkers.
//!
//! A check walks the full curve plus `sub_curves` random restrictions
//! `[t1, t2] ⊂ [0, 1]`, and on each evaluates the defining inequality at the
//! endpoints and at `samples` equally spaced interior parameters. The
//! verdict keeps the smallest slack seen and where it occurred.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::function::GeodesicFunction;
use super::hfunc::HFunction;
use crate::error::{domain, Result};
use crate::npc_space::Geodesic;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub sub_curves: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            samples: 64,
            tol: 1e-9,
            seed: 0,
            sub_curves: 8,
        }
    }
}

impl CheckConfig {
    pub fn with_samples(samples: usize) -> Self {
        Self {
            samples,
            ..Self::default()
        }
    }
}

/// Sub-interval `[t1, t2]` and parameter `λ` on it where the worst slack occurred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub t1: f64,
    pub t2: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityVerdict {
    pub holds: bool,
    pub worst_slack: f64,
    pub witness: Witness,
    pub samples: usize,
}

impl ConvexityVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "worst_slack": self.worst_slack,
            "witness": { "t1": self.witness.t1, "t2": self.witness.t2, "lambda": self.witness.lambda },
            "samples": self.samples,
        })
    }
}

/// Inequality tested at one sample: endpoint values, interior value, parameter.
type Slack<'a> = dyn Fn(f64, f64, f64, f64) -> Option<f64> + 'a;

fn windows(cfg: &CheckConfig) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = vec![(0.0, 1.0)];
    while out.len() < cfg.sub_curves + 1 {
        let u: f64 = rng.gen();
        let v: f64 = rng.gen();
        let (t1, t2) = if u < v { (u, v) } else { (v, u) };
        if t2 - t1 > 1e-3 {
            out.push((t1, t2));
        }
    }
    out
}

fn scan<C, W>(cfg: &CheckConfig, mut curve: W, slack: &Slack<'_>) -> Result<ConvexityVerdict>
where
    C: Fn(f64) -> f64,
    W: FnMut(f64, f64) -> Result<C>,
{
    if cfg.samples < 3 {
        return domain(format!(
            "convexity checks need at least 3 samples, got {}",
            cfg.samples
        ));
    }
    let mut worst = f64::INFINITY;
    let mut witness = Witness {
        t1: 0.0,
        t2: 1.0,
        lambda: 0.0,
    };
    let mut count = 0;
    let grid: Vec<f64> = std::iter::once(0.0)
        .chain((1..=cfg.samples).map(|i| i as f64 / (cfg.samples + 1) as f64))
        .chain([1.0])
        .collect();
    for (t1, t2) in windows(cfg) {
        let c = curve(t1, t2)?;
        let f0 = c(0.0);
        let f1 = c(1.0);
        for &lambda in &grid {
            let Some(s) = slack(f0, f1, c(lambda), lambda) else {
                continue;
            };
            count += 1;
            // NaN slack counts as a failure
            if !(s >= worst) {
                worst = if s.is_nan() { f64::NEG_INFINITY } else { s };
                witness = Witness { t1, t2, lambda };
            }
        }
    }
    Ok(ConvexityVerdict {
        holds: worst >= -cfg.tol,
        worst_slack: worst,
        witness,
        samples: count,
    })
}

fn h_slack(h: &HFunction) -> impl Fn(f64, f64, f64, f64) -> Option<f64> + '_ {
    move |f0, f1, ft, t| {
        let (w0, w1) = (h.eval(1.0 - t), h.eval(t));
        if !w0.is_finite() || !w1.is_finite() {
            return None;
        }
        Some(w0 * f0 + w1 * f1 - ft)
    }
}

fn geodesic_curve<'a>(
    f: &'a GeodesicFunction,
    g: &'a Geodesic,
) -> impl FnMut(f64, f64) -> Result<Box<dyn Fn(f64) -> f64 + 'a>> + 'a {
    move |t1, t2| {
        let sub = g.restrict(t1, t2)?;
        Ok(Box::new(move |l: f64| f.eval_unchecked(&sub.eval(l))) as Box<dyn Fn(f64) -> f64>)
    }
}

fn profile_curve<'a>(
    phi: &'a (dyn Fn(f64) -> f64 + 'a),
) -> impl FnMut(f64, f64) -> Result<Box<dyn Fn(f64) -> f64 + 'a>> + 'a {
    move |t1, t2| {
        Ok(Box::new(move |l: f64| {
            let t = if l == 1.0 { t2 } else { t1 + l * (t2 - t1) };
            phi(t)
        }) as Box<dyn Fn(f64) -> f64>)
    }
}

/// `f(γ(t)) <= h(1-t) f(γ(0)) + h(t) f(γ(1))` along `g` and its restrictions.
pub fn check_h_convex(
    f: &GeodesicFunction,
    g: &Geodesic,
    h: &HFunction,
    cfg: &CheckConfig,
) -> Result<ConvexityVerdict> {
    f.check_space(g.space())?;
    scan(cfg, geodesic_curve(f, g), &h_slack(h))
}

/// Ordinary geodesic convexity (`h = identity`).
pub fn check_convex(
    f: &GeodesicFunction,
    g: &Geodesic,
    cfg: &CheckConfig,
) -> Result<ConvexityVerdict> {
    check_h_convex(f, g, &HFunction::Identity, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvexityMode {
    /// `f(γ(t)) <= max(f(γ(0)), f(γ(1)))`.
    Quasi,
    /// `f^p` convex; needs `f >= 0`.
    P(f64),
}

pub fn check_quasi_or_p_convex(
    f: &GeodesicFunction,
    g: &Geodesic,
    mode: ConvexityMode,
    cfg: &CheckConfig,
) -> Result<ConvexityVerdict> {
    f.check_space(g.space())?;
    mode_scan(cfg, geodesic_curve(f, g), mode)
}

fn mode_scan<C, W>(cfg: &CheckConfig, curve: W, mode: ConvexityMode) -> Result<ConvexityVerdict>
where
    C: Fn(f64) -> f64,
    W: FnMut(f64, f64) -> Result<C>,
{
    match mode {
        ConvexityMode::Quasi => scan(cfg, curve, &|f0: f64, f1: f64, ft, _| Some(f0.max(f1) - ft)),
        ConvexityMode::P(p) => {
            if !(p > 0.0) {
                return domain(format!("p-convexity needs p > 0, got {p}"));
            }
            let negative = std::cell::Cell::new(false);
            let slack = |f0: f64, f1: f64, ft: f64, t: f64| {
                if f0 < 0.0 || f1 < 0.0 || ft < 0.0 {
                    negative.set(true);
                }
                Some((1.0 - t) * f0.powf(p) + t * f1.powf(p) - ft.powf(p))
            };
            let verdict = scan(cfg, curve, &slack)?;
            if negative.get() {
                return domain("p-convexity check on a function taking negative values");
            }
            Ok(verdict)
        }
    }
}

/// h-convexity of a real function on `[0, 1]` and of its restrictions to
/// sub-intervals.
pub fn check_h_convex_profile(
    phi: &(dyn Fn(f64) -> f64 + '_),
    h: &HFunction,
    cfg: &CheckConfig,
) -> Result<ConvexityVerdict> {
    scan(cfg, profile_curve(phi), &h_slack(h))
}

pub fn check_convex_profile(
    phi: &(dyn Fn(f64) -> f64 + '_),
    cfg: &CheckConfig,
) -> Result<ConvexityVerdict> {
    check_h_convex_profile(phi, &HFunction::Identity, cfg)
}

pub fn check_quasi_or_p_convex_profile(
    phi: &(dyn Fn(f64) -> f64 + '_),
    mode: ConvexityMode,
    cfg: &CheckConfig,
) -> Result<ConvexityVerdict> {
    mode_scan(cfg, profile_curve(phi), mode)
}
