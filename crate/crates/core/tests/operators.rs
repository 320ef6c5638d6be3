#![allow(clippy::excessive_precision)]

use std::f64::consts::{E, PI};

use hhgeo::frac_calc::{
    gamma_fn, lq_norm_unit, xcp_norm, FracOrder, FractionalIntegrator, Interval, QuadratureConfig,
    RhoParam,
};
use proptest::prelude::*;

fn ops() -> FractionalIntegrator {
    FractionalIntegrator::default()
}

fn al(a: f64) -> FracOrder {
    FracOrder::new(a).unwrap()
}

fn rh(r: f64) -> RhoParam {
    RhoParam::new(r).unwrap()
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-300)
}

#[derive(Debug, Clone, Copy)]
enum Op {
    RlLeft,
    RlRight,
    HadLeft,
    HadRight,
    KatLeft(f64),
    KatRight(f64),
}

fn apply(op: Op, f: &dyn Fn(f64) -> f64, alpha: f64, lo: f64, hi: f64) -> f64 {
    let o = ops();
    match op {
        Op::RlLeft => o.rl_left(f, al(alpha), lo, hi),
        Op::RlRight => o.rl_right(f, al(alpha), lo, hi),
        Op::HadLeft => o.hadamard_left(f, al(alpha), lo, hi),
        Op::HadRight => o.hadamard_right(f, al(alpha), lo, hi),
        Op::KatLeft(r) => o.katugampola_left(f, al(alpha), rh(r), lo, hi),
        Op::KatRight(r) => o.katugampola_right(f, al(alpha), rh(r), lo, hi),
    }
    .unwrap()
    .value
}

/// Composite midpoint rule with `n` uniform panels in `v = w^α`, where `w`
/// is the kernel variable and `point(w)` recovers the abscissa.
fn midpoint_oracle(
    f: &dyn Fn(f64) -> f64,
    alpha: f64,
    width: f64,
    scale: f64,
    point: &dyn Fn(f64) -> f64,
    n: usize,
) -> f64 {
    let upper = width.powf(alpha);
    let step = upper / n as f64;
    let sum: f64 = (0..n)
        .map(|i| f(point(((i as f64 + 0.5) * step).powf(1.0 / alpha))))
        .sum();
    scale * sum * step / gamma_fn(alpha + 1.0).unwrap()
}

fn brute(op: Op, f: &dyn Fn(f64) -> f64, alpha: f64, lo: f64, hi: f64) -> f64 {
    const N: usize = 1_000_000;
    match op {
        Op::RlLeft => midpoint_oracle(f, alpha, hi - lo, 1.0, &|w| hi - w, N),
        Op::RlRight => midpoint_oracle(f, alpha, hi - lo, 1.0, &|w| lo + w, N),
        Op::HadLeft => midpoint_oracle(f, alpha, (hi / lo).ln(), 1.0, &|w| hi * (-w).exp(), N),
        Op::HadRight => midpoint_oracle(f, alpha, (hi / lo).ln(), 1.0, &|w| lo * w.exp(), N),
        Op::KatLeft(r) => {
            let width = hi.powf(r) - lo.powf(r);
            midpoint_oracle(
                f,
                alpha,
                width,
                r.powf(-alpha),
                &|w| (hi.powf(r) - w).max(0.0).powf(1.0 / r),
                N,
            )
        }
        Op::KatRight(r) => {
            let width = hi.powf(r) - lo.powf(r);
            midpoint_oracle(
                f,
                alpha,
                width,
                r.powf(-alpha),
                &|w| (lo.powf(r) + w).powf(1.0 / r),
                N,
            )
        }
    }
}

// (name, op, f, alpha, lo, hi, high-precision reference)
type Case = (&'static str, Op, fn(f64) -> f64, f64, f64, f64, f64);

fn regression_set() -> Vec<Case> {
    vec![
        (
            "katugampola_left_square",
            Op::KatLeft(2.0),
            |t| t * t,
            0.5,
            0.5,
            1.5,
            1.7866003479012282,
        ),
        (
            "katugampola_right_square",
            Op::KatRight(0.7),
            |t| t * t,
            0.3,
            0.2,
            1.1,
            0.23340519178796247,
        ),
        (
            "hadamard_left_square",
            Op::HadLeft,
            |t| t * t,
            0.6,
            1.0,
            2.5,
            3.8234760335385317,
        ),
        (
            "hadamard_right_linear",
            Op::HadRight,
            |t| t,
            1.5,
            1.0,
            3.0,
            1.7425500513380918,
        ),
        (
            "rl_left_cubic",
            Op::RlLeft,
            |t| t * t * t - t,
            0.25,
            -1.0,
            1.0,
            -0.10765192161374407,
        ),
        (
            "rl_right_square",
            Op::RlRight,
            |t| t * t,
            2.5,
            0.0,
            2.0,
            3.7825638438061765,
        ),
        (
            "katugampola_left_affine",
            Op::KatLeft(0.5),
            |t| 1.0 + t,
            0.75,
            0.0,
            2.0,
            4.3455232084194263,
        ),
    ]
}

#[test]
fn regression_set_matches_reference_values() {
    for (name, op, f, alpha, lo, hi, want) in regression_set() {
        let got = apply(op, &f, alpha, lo, hi);
        assert!(rel(got, want) < 1e-9, "{name}: {got} vs {want}");
    }
}

#[test]
fn regression_set_matches_midpoint_oracle() {
    for (name, op, f, alpha, lo, hi, _) in regression_set() {
        let got = apply(op, &f, alpha, lo, hi);
        let naive = brute(op, &f, alpha, lo, hi);
        assert!(rel(got, naive) < 1e-6, "{name}: {got} vs {naive}");
    }
}

#[test]
fn constant_closed_forms() {
    let one = |_: f64| 1.0;
    for alpha in [0.25, 0.5, 1.0, 1.5, 2.5] {
        let g = gamma_fn(alpha + 1.0).unwrap();
        let rl = (1.7f64 - 0.2).powf(alpha) / g;
        assert!(rel(apply(Op::RlLeft, &one, alpha, 0.2, 1.7), rl) < 1e-10);
        assert!(rel(apply(Op::RlRight, &one, alpha, 0.2, 1.7), rl) < 1e-10);
        let had = (2.5f64 / 0.7).ln().powf(alpha) / g;
        assert!(rel(apply(Op::HadLeft, &one, alpha, 0.7, 2.5), had) < 1e-10);
        assert!(rel(apply(Op::HadRight, &one, alpha, 0.7, 2.5), had) < 1e-10);
        for rho in [0.5, 1.0, 2.0] {
            let k = ((1.8f64.powf(rho) - 0.3f64.powf(rho)) / rho).powf(alpha) / g;
            assert!(rel(apply(Op::KatLeft(rho), &one, alpha, 0.3, 1.8), k) < 1e-10);
            assert!(rel(apply(Op::KatRight(rho), &one, alpha, 0.3, 1.8), k) < 1e-10);
        }
    }
}

#[test]
fn analytic_examples() {
    let x: f64 = 1.3;
    let half = apply(Op::RlLeft, &|t| t, 0.5, 0.0, x);
    assert!(rel(half, 4.0 / (3.0 * PI.sqrt()) * x.powf(1.5)) < 1e-10);
    let log2 = apply(Op::HadLeft, &|t: f64| t.ln(), 1.0, 1.0, x);
    assert!(rel(log2, x.ln().powi(2) / 2.0) < 1e-10);
    let k = apply(Op::KatLeft(2.0), &|_| 1.0, 0.5, 0.0, 1.0);
    assert!((k - 0.5f64.sqrt() / (PI.sqrt() / 2.0)).abs() < 1e-12);
}

#[test]
fn hadamard_limit_is_monotone() {
    for alpha in [0.5, 1.0, 2.0] {
        let had = apply(Op::HadLeft, &|t| 1.0 + t * t, alpha, 1.0, E);
        let gaps: Vec<f64> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&r| (apply(Op::KatLeft(r), &|t| 1.0 + t * t, alpha, 1.0, E) - had).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{alpha}: {gaps:?}");
        assert!(gaps[2] < 1e-2);
    }
}

#[test]
fn norms() {
    let cfg = QuadratureConfig::default();
    let unit_e = Interval::new(1.0, E).unwrap();
    assert!((xcp_norm(&|_| 1.0, 0.0, 1.0, unit_e, &cfg).unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(xcp_norm(&|_| 0.0, 0.5, 2.0, unit_e, &cfg).unwrap(), 0.0);
    // c = 1/p gives the plain L^p norm
    let f = |t: f64| t * t - 1.0;
    let lp = hhgeo::frac_calc::integrate(&|t: f64| f(t).abs().powi(3), 1.0, E, &cfg)
        .unwrap()
        .value
        .powf(1.0 / 3.0);
    assert!(rel(xcp_norm(&f, 1.0 / 3.0, 3.0, unit_e, &cfg).unwrap(), lp) < 1e-10);
    assert!((lq_norm_unit(&|t| t, 2.0, &cfg).unwrap() - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
    assert!((lq_norm_unit(&|_| 1.0, 3.7, &cfg).unwrap() - 1.0).abs() < 1e-12);
    assert!((lq_norm_unit(&|t: f64| t.sqrt(), 2.0, &cfg).unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
    assert!(lq_norm_unit(&|t| t, 1.0, &cfg).is_err());
}

fn poly(c: &[f64]) -> impl Fn(f64) -> f64 + '_ {
    move |t| c.iter().rev().fold(0.0, |acc, k| acc * t + k)
}

fn any_op() -> impl Strategy<Value = Op> {
    prop_oneof![
        Just(Op::RlLeft),
        Just(Op::RlRight),
        Just(Op::HadLeft),
        Just(Op::HadRight),
        (0.3f64..2.5).prop_map(Op::KatLeft),
        (0.3f64..2.5).prop_map(Op::KatRight),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operators_are_linear(
        op in any_op(),
        alpha in 0.25f64..3.0,
        p in prop::collection::vec(-2.0f64..2.0, 1..5),
        q in prop::collection::vec(-2.0f64..2.0, 1..5),
        c in -3.0f64..3.0,
    ) {
        let (lo, hi) = (1.0, 2.2);
        let (fp, fq) = (poly(&p), poly(&q));
        let sum = apply(op, &|t| fp(t) + fq(t), alpha, lo, hi);
        let parts = apply(op, &fp, alpha, lo, hi) + apply(op, &fq, alpha, lo, hi);
        let scale = 1.0 + sum.abs().max(parts.abs());
        prop_assert!((sum - parts).abs() <= 1e-9 * scale);
        let scaled = apply(op, &|t| c * fp(t), alpha, lo, hi);
        prop_assert!((scaled - c * apply(op, &fp, alpha, lo, hi)).abs() <= 1e-9 * (1.0 + scaled.abs()));
    }

    #[test]
    fn operators_are_positive(
        op in any_op(),
        alpha in 0.25f64..3.0,
        p in prop::collection::vec(-2.0f64..2.0, 1..5),
    ) {
        let fp = poly(&p);
        let f = |t: f64| fp(t) * fp(t);
        prop_assert!(apply(op, &f, alpha, 0.5, 1.9) >= 0.0);
    }

    #[test]
    fn unit_rho_is_riemann_liouville(
        alpha in 0.25f64..3.0,
        p in prop::collection::vec(-2.0f64..2.0, 1..6),
        lo in 0.0f64..1.0,
        len in 0.1f64..2.0,
    ) {
        let f = poly(&p);
        let hi = lo + len;
        let k = apply(Op::KatLeft(1.0), &f, alpha, lo, hi);
        let r = apply(Op::RlLeft, &f, alpha, lo, hi);
        prop_assert!((k - r).abs() <= 1e-9 * (1.0 + r.abs()));
        let k = apply(Op::KatRight(1.0), &f, alpha, lo, hi);
        let r = apply(Op::RlRight, &f, alpha, lo, hi);
        prop_assert!((k - r).abs() <= 1e-9 * (1.0 + r.abs()));
    }
}
