use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::convexity::{squared_distance_function, GeodesicFunction, HFunction};
use crate::error::Result;
use crate::frac_calc::{FracOrder, FractionalIntegrator, RhoParam};
use crate::npc_space::{Geodesic, Point, Space};

use super::chains::{CTermForm, HhVerifier};
use super::constants::{compute_c, compute_c_oracle};
use super::params::TheoremParams;
use super::report::InequalityReport;

/// A fixed instance with known values.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionCase {
    pub name: String,
    /// Expected values; empty when only the verdict is checked.
    pub expected: Vec<f64>,
    pub actual: Vec<f64>,
    pub tol: f64,
    /// Verdict the chain must reach, when the case wraps a chain.
    pub expected_pass: Option<bool>,
    pub chain_pass: Option<bool>,
}

impl RegressionCase {
    fn values(name: &str, expected: Vec<f64>, actual: Vec<f64>, tol: f64) -> Self {
        Self {
            name: name.into(),
            expected,
            actual,
            tol,
            expected_pass: None,
            chain_pass: None,
        }
    }

    fn chain(
        name: &str,
        expected: Vec<f64>,
        report: &InequalityReport,
        expected_pass: bool,
        tol: f64,
    ) -> Self {
        let n = if expected.is_empty() {
            0
        } else {
            report.sides.len()
        };
        Self {
            expected_pass: Some(expected_pass),
            chain_pass: Some(report.pass),
            ..Self::values(name, expected, report.values()[..n].to_vec(), tol)
        }
    }

    pub fn pass(&self) -> bool {
        let values = self.expected.len() == self.actual.len()
            && self
                .expected
                .iter()
                .zip(&self.actual)
                .all(|(e, a)| (e - a).abs() <= self.tol);
        values && self.expected_pass == self.chain_pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "expected": self.expected,
            "actual": self.actual,
            "tol": self.tol,
            "expected_pass": self.expected_pass,
            "chain_pass": self.chain_pass,
            "pass": self.pass(),
        })
    }
}

fn e(c: &[f64]) -> Result<Point> {
    Point::euclidean(c)
}

fn hp(x: f64, y: f64) -> Result<Point> {
    Point::half_plane(x, y)
}

/// Evaluates the built-in regression instances.
pub fn regression_suite(v: &HhVerifier) -> Result<Vec<RegressionCase>> {
    const TOL: f64 = 1e-8;
    let third = 1.0 / 3.0;
    let mut out = Vec::new();

    let square = |x: f64| x * x;
    out.push(RegressionCase::chain(
        "classic_square",
        vec![0.25, third, 0.5],
        &v.classic_hh(&square, 0.0, 1.0)?,
        true,
        TOL,
    ));
    out.push(RegressionCase::chain(
        "classic_affine",
        vec![1.5, 1.5, 1.5],
        &v.classic_hh(&|x| 2.0 * x + 0.5, 0.0, 1.0)?,
        true,
        TOL,
    ));
    out.push(RegressionCase::chain(
        "classic_concave_reversed",
        vec![],
        &v.classic_hh(&|x| -x * x, 0.0, 1.0)?,
        false,
        TOL,
    ));

    let r = v.h_hh(&|x: f64| x.sqrt(), &HFunction::Power(0.5), 0.0, 1.0)?;
    out.push(RegressionCase::chain(
        "h_sqrt_power_half",
        vec![0.5, 2.0 / 3.0, 2.0 / 3.0],
        &r,
        true,
        TOL,
    ));
    let r = v.h_hh(&square, &HFunction::Identity, 0.0, 1.0)?;
    out.push(RegressionCase::chain(
        "h_identity_square",
        vec![0.25, third, 0.5],
        &r,
        true,
        TOL,
    ));
    let r = v.h_hh(&|_| 1.5, &HFunction::Identity, 0.0, 1.0)?;
    out.push(RegressionCase::chain(
        "h_identity_constant",
        vec![1.5, 1.5, 1.5],
        &r,
        true,
        TOL,
    ));

    let unit = Geodesic::new(e(&[0.0])?, e(&[1.0])?)?;
    let sq = GeodesicFunction::scalar_pullback("t^2", square);
    let two = GeodesicFunction::scalar_pullback("2", |_| 2.0);
    out.push(RegressionCase::chain(
        "conde_unit_square",
        vec![0.25, third, 0.5],
        &v.conde_hh(&sq, &unit)?,
        true,
        TOL,
    ));
    let y = e(&[0.5, -1.0])?;
    let g = Geodesic::new(e(&[-1.0, 0.0])?, e(&[2.0, 1.0])?)?;
    let f = squared_distance_function(&Space::Euclidean(2), &y, 2.0)?;
    let r = v.conde_hh(&f, &g)?;
    out.push(RegressionCase::chain(
        "conde_euclidean_distance",
        vec![],
        &r,
        true,
        TOL,
    ));
    out.push(RegressionCase::values(
        "conde_euclidean_pullback_mean",
        vec![r.values()[1]],
        vec![v.classic_hh(&f.along(&g)?, 0.0, 1.0)?.values()[1]],
        1e-12,
    ));
    let f = squared_distance_function(&Space::HalfPlane, &hp(0.0, 1.0)?, 2.0)?;
    let g = Geodesic::new(hp(-1.0, 1.0)?, hp(1.0, 1.0)?)?;
    let r = v.conde_hh(&f, &g)?;
    out.push(RegressionCase::chain(
        "conde_half_plane",
        vec![],
        &r,
        true,
        TOL,
    ));
    out.push(RegressionCase::values(
        "conde_reversal_identity",
        vec![r.values()[1]],
        vec![r.probes["reversed_mean"]],
        1e-10,
    ));

    let id = HFunction::Identity;
    let p_q = TheoremParams::new(1.0, 1.0, 0.0, 1.0, Some(2.0))?;
    let p = TheoremParams::new(1.0, 1.0, 0.0, 1.0, None)?;
    let holder = 1.0 / 3f64.sqrt();
    let r = v.thm_cb1(&sq, &unit, &id, &p_q)?;
    out.push(RegressionCase::chain(
        "cb1_unit_square",
        vec![0.25, third, 0.5 * (holder + 0.5)],
        &r,
        true,
        TOL,
    ));
    out.push(RegressionCase::values(
        "cb1_holder_step",
        vec![0.5, holder],
        vec![r.probes["holder_exact_term"], r.probes["holder_term"]],
        TOL,
    ));
    let r = v.thm_cb1(&two, &unit, &id, &p_q)?;
    out.push(RegressionCase::chain(
        "cb1_constant",
        vec![2.0, 2.0, 2.0 * (holder + 0.5)],
        &r,
        true,
        TOL,
    ));
    out.push(RegressionCase::chain(
        "cb2_unit_square",
        vec![0.25, third, 0.5],
        &v.thm_cb2(&sq, &unit, &id, &p)?,
        true,
        TOL,
    ));
    let r = v.thm_cb2(
        &sq,
        &unit,
        &id,
        &TheoremParams::new(1.0, 2.0, 0.0, 1.0, None)?,
    )?;
    out.push(RegressionCase::values(
        "cb2_literal_factor_rho2",
        vec![2.0],
        vec![r.probes["cb2_literal_ratio"]],
        TOL,
    ));
    out.push(RegressionCase::chain(
        "cb2_constant",
        vec![2.0, 2.0, 2.0],
        &v.thm_cb2(&two, &unit, &id, &p)?,
        true,
        TOL,
    ));
    out.push(RegressionCase::chain(
        "ty1_unit_square",
        vec![0.25, third, 0.5],
        &v.thm_ty1(&sq, &unit, &id, &p)?,
        true,
        TOL,
    ));
    out.push(RegressionCase::chain(
        "ty1_constant",
        vec![2.0, 2.0, 2.0],
        &v.thm_ty1(&two, &unit, &id, &p)?,
        true,
        TOL,
    ));
    let f = squared_distance_function(&Space::HalfPlane, &hp(0.3, 1.2)?, 2.0)?;
    let g = Geodesic::new(hp(-1.0, 0.5)?, hp(1.5, 2.0)?)?;
    let p_hp = TheoremParams::new(0.5, 2.0, 0.1, 0.9, None)?;
    out.push(RegressionCase::chain(
        "ty1_half_plane",
        vec![],
        &v.thm_ty1(&f, &g, &HFunction::Power(1.0), &p_hp)?,
        true,
        TOL,
    ));

    out.push(RegressionCase::values(
        "c_alpha1",
        vec![third],
        vec![compute_c(1.0, 1.0, 0.0, 1.0)],
        1e-10,
    ));
    out.push(RegressionCase::values(
        "c_alpha2",
        vec![1.0 / 6.0],
        vec![compute_c(2.0, 1.0, 0.0, 1.0)],
        1e-10,
    ));
    out.push(RegressionCase::values(
        "c_degenerate_oracle",
        vec![0.0],
        vec![compute_c_oracle(1.0, 1.0, 1.0, 1.0, v.quad())?],
        1e-10,
    ));
    out.push(RegressionCase::values(
        "e_identity",
        vec![0.5],
        vec![v.compute_e(&id, &p)?],
        TOL,
    ));
    out.push(RegressionCase::values(
        "e_constant_one",
        vec![2.0],
        vec![v.compute_e(&HFunction::ConstantOne, &p)?],
        TOL,
    ));

    let g1 = Geodesic::new(e(&[0.0, 0.0])?, e(&[2.0, 0.0])?)?;
    let g2 = Geodesic::new(e(&[0.0, 1.0])?, e(&[2.0, 1.0])?)?;
    let r = v.corollary_distance(&g1, &g2, &id, &p, CTermForm::Difference)?;
    out.push(RegressionCase::chain(
        "corollary_parallel",
        vec![1.0; 4],
        &r,
        true,
        TOL,
    ));
    let r = v.corollary_distance(&g1, &g1, &id, &p, CTermForm::Difference)?;
    out.push(RegressionCase::values(
        "corollary_coincident",
        vec![0.0; 3],
        r.values()[..3].to_vec(),
        TOL,
    ));
    let g1 = Geodesic::new(hp(-0.8, 0.4)?, hp(1.1, 1.7)?)?;
    let g2 = Geodesic::new(hp(0.2, 2.5)?, hp(-1.4, 0.9)?)?;
    let p_hp = TheoremParams::new(0.5, 1.5, 0.2, 0.8, None)?;
    let r = v.corollary_distance(
        &g1,
        &g2,
        &HFunction::Power(1.0),
        &p_hp,
        CTermForm::Difference,
    )?;
    out.push(RegressionCase::chain(
        "corollary_half_plane",
        vec![],
        &r,
        true,
        TOL,
    ));

    let ops = FractionalIntegrator::new(*v.quad());
    let k = ops.katugampola_left(
        &|_| 1.0,
        FracOrder::new(0.5)?,
        RhoParam::new(2.0)?,
        0.0,
        1.0,
    )?;
    let closed = 0.5f64.sqrt() / (std::f64::consts::PI.sqrt() / 2.0);
    out.push(RegressionCase::values(
        "katugampola_left_constant",
        vec![closed],
        vec![k.value],
        TOL,
    ));
    let r = ops.rl_left(&square, FracOrder::new(1.0)?, 0.0, 1.0)?;
    out.push(RegressionCase::values(
        "rl_left_square",
        vec![third],
        vec![r.value],
        TOL,
    ));
    Ok(out)
}

/// Alternative readings evaluated on fixed instances: the factor-ρ cb2
/// comparison at `α = 1, ρ = 2` and the corollary subtracted terms on
/// parallel segments of lengths 1 and 3 at `α = 1/2`.
pub fn discrepancy_reference(v: &HhVerifier) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    let unit = Geodesic::new(e(&[0.0])?, e(&[1.0])?)?;
    let sq = GeodesicFunction::scalar_pullback("t^2", |t| t * t);
    let p = TheoremParams::new(1.0, 2.0, 0.0, 1.0, None)?;
    let r = v.thm_cb2(&sq, &unit, &HFunction::Identity, &p)?;
    for (k, val) in &r.probes {
        out.insert(k.clone(), *val);
    }
    out.insert("cb2_exact_margin".into(), r.margins[1]);

    let g1 = Geodesic::new(e(&[0.0, 0.0])?, e(&[1.0, 0.0])?)?;
    let g2 = Geodesic::new(e(&[0.0, 1.0])?, e(&[3.0, 1.0])?)?;
    let p = TheoremParams::new(0.5, 1.0, 0.0, 1.0, None)?;
    let r = v.corollary_distance(&g1, &g2, &HFunction::Identity, &p, CTermForm::Difference)?;
    out.insert("corollary_fractional_mean".into(), r.values()[1]);
    for key in [
        "difference_bound",
        "difference_margin",
        "unscaled_difference_bound",
        "unscaled_difference_margin",
        "product_bound",
        "product_margin",
    ] {
        out.insert(format!("corollary_{key}"), r.probes[key]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cases_pass() {
        let cases = regression_suite(&HhVerifier::default()).unwrap();
        assert!(cases.len() >= 30);
        for c in &cases {
            assert!(c.pass(), "{}", c.to_json());
        }
    }

    #[test]
    fn reference_discrepancies() {
        let d = discrepancy_reference(&HhVerifier::default()).unwrap();
        assert!((d["cb2_literal_ratio"] - 2.0).abs() < 1e-10);
        assert!(d["corollary_difference_margin"].abs() < 1e-9);
        assert!((d["corollary_unscaled_difference_margin"] + 1.6).abs() < 1e-9);
    }
}
