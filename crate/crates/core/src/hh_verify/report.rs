use std::collections::BTreeMap;

use serde_json::{json, Value};

/// Evaluated sides of one inequality chain, left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub chain: String,
    pub sides: Vec<(String, f64)>,
    /// `sides[i + 1] - sides[i]`
    pub margins: Vec<f64>,
    pub pass: bool,
    pub tol: f64,
    pub instance: Value,
    /// Auxiliary values (alternative readings of a side, identities).
    pub probes: BTreeMap<String, f64>,
}

impl InequalityReport {
    pub fn new(chain: &str, sides: Vec<(&str, f64)>, tol: f64, instance: Value) -> Self {
        let sides: Vec<(String, f64)> =
            sides.into_iter().map(|(l, v)| (l.to_string(), v)).collect();
        let margins: Vec<f64> = sides.windows(2).map(|w| w[1].1 - w[0].1).collect();
        let pass = sides.iter().all(|(_, v)| v.is_finite()) && margins.iter().all(|m| *m >= -tol);
        Self {
            chain: chain.to_string(),
            sides,
            margins,
            pass,
            tol,
            instance,
            probes: BTreeMap::new(),
        }
    }

    pub fn with_probe(mut self, key: &str, value: f64) -> Self {
        self.probes.insert(key.to_string(), value);
        self
    }

    pub fn values(&self) -> Vec<f64> {
        self.sides.iter().map(|(_, v)| *v).collect()
    }

    pub fn side(&self, label: &str) -> Option<f64> {
        self.sides.iter().find(|(l, _)| l == label).map(|(_, v)| *v)
    }

    /// Smallest margin, `+inf` for a single-sided report.
    pub fn min_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "chain": self.chain,
            "sides": self.sides.iter().map(|(l, v)| json!({ "label": l, "value": v })).collect::<Vec<_>>(),
            "margins": self.margins,
            "pass": self.pass,
            "tol": self.tol,
            "instance": self.instance,
            "probes": self.probes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins_and_pass() {
        let r = InequalityReport::new(
            "t",
            vec![("l", 1.0), ("m", 2.0), ("r", 2.0 - 1e-10)],
            1e-8,
            json!({}),
        );
        assert_eq!(r.margins.len(), 2);
        assert!(r.pass);
        let r = InequalityReport::new("t", vec![("l", 1.0), ("m", 0.5)], 1e-8, json!({}));
        assert!(!r.pass);
        assert_eq!(r.min_margin(), -0.5);
        let r = InequalityReport::new("t", vec![("l", 1.0), ("m", f64::NAN)], 1e-8, json!({}));
        assert!(!r.pass);
    }
}
