use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Positive weight `h` on `(0, 1]` used in the definition of h-convexity.
#[derive(Clone)]
pub enum HFunction {
    /// `h(t) = t`, ordinary convexity.
    Identity,
    /// `h(t) = t^k`.
    Power(f64),
    /// `h(t) = 1/t`.
    GodunovaLevin,
    /// `h(t) = 1` (P-functions).
    ConstantOne,
    Custom {
        label: String,
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl HFunction {
    pub fn custom(
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        HFunction::Custom {
            label: label.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            HFunction::Identity => t,
            HFunction::Power(k) => t.powf(*k),
            HFunction::GodunovaLevin => 1.0 / t,
            HFunction::ConstantOne => 1.0,
            HFunction::Custom { eval, .. } => eval(t),
        }
    }

    /// `h(0)` when it is finite; `None` for weights singular at the origin.
    pub fn at_zero(&self) -> Option<f64> {
        let v = self.eval(0.0);
        v.is_finite().then_some(v)
    }

    /// Whether `h(t) >= t` on a uniform grid of `samples` interior points.
    pub fn dominates_identity(&self, samples: usize) -> bool {
        (1..=samples)
            .map(|i| i as f64 / (samples + 1) as f64)
            .chain([1.0])
            .all(|t| self.eval(t) >= t)
    }

    pub fn label(&self) -> String {
        match self {
            HFunction::Identity => "identity".into(),
            HFunction::Power(k) => format!("power({k})"),
            HFunction::GodunovaLevin => "godunova_levin".into(),
            HFunction::ConstantOne => "constant_one".into(),
            HFunction::Custom { label, .. } => label.clone(),
        }
    }
}

impl fmt::Debug for HFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HFunction({})", self.label())
    }
}

/// Looks up a catalog weight: `identity`, `power(k)`, `godunova_levin`,
/// `constant_one`.
pub fn h_catalog(name: &str) -> Result<HFunction> {
    let name = name.trim();
    match name {
        "identity" => return Ok(HFunction::Identity),
        "godunova_levin" => return Ok(HFunction::GodunovaLevin),
        "constant_one" => return Ok(HFunction::ConstantOne),
        _ => {}
    }
    if let Some(k) = name
        .strip_prefix("power(")
        .and_then(|r| r.strip_suffix(')'))
    {
        if let Ok(k) = k.trim().parse::<f64>() {
            if k.is_finite() {
                return Ok(HFunction::Power(k));
            }
        }
    }
    Err(Error::Usage(format!("unknown h function '{name}'")))
}
