//! Adaptive composite Gauss-Legendre quadrature.
//!
//! Each panel carries the `2n`-node estimate (two half-panel rules) and the
//! absolute difference to the single `n`-node rule as its error estimate.
//! The panel with the largest estimate is bisected until the summed estimate
//! meets `max(abs_tol, rel_tol * |value|)` or the panel budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub nodes_per_panel: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_panels: 4096,
            nodes_per_panel: 16,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return domain("quadrature tolerances must be positive");
        }
        if self.max_panels < 1 {
            return domain("max_panels must be at least 1");
        }
        if self.nodes_per_panel < 2 {
            return domain("nodes_per_panel must be at least 2");
        }
        Ok(())
    }
}

/// Value of a definite integral together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

impl Quadrature {
    pub(crate) fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            panels: self.panels,
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes from Newton iteration on `P_n`, started at the Tricomi guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule on `[a, b]`; fails on the first non-finite sample.
    pub fn apply<F: Fn(f64) -> f64 + ?Sized>(&self, f: &F, a: f64, b: f64) -> Result<f64> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = mid + half * x;
            let y = f(t);
            if !y.is_finite() {
                return domain(format!("integrand is not finite at t = {t:e} (value {y})"));
            }
            sum += w * y;
        }
        Ok(sum * half)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Ties broken by position so the refinement order is reproducible.
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn make_panel<F: Fn(f64) -> f64 + ?Sized>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
) -> Result<Panel> {
    let m = 0.5 * (a + b);
    let left = rule.apply(f, a, m)?;
    let right = rule.apply(f, m, b)?;
    Ok(Panel {
        a,
        b,
        left,
        right,
        err: (whole - (left + right)).abs(),
    })
}

/// Integrates `f` over `[a, b]` (either orientation).
pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature> {
    cfg.validate()?;
    if !a.is_finite() || !b.is_finite() {
        return domain("integration limits must be finite");
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error_estimate: 0.0,
            panels: 0,
        });
    }
    if a > b {
        let q = integrate(f, b, a, cfg)?;
        return Ok(Quadrature {
            value: -q.value,
            ..q
        });
    }

    let rule = GaussLegendre::new(cfg.nodes_per_panel);
    let whole = rule.apply(f, a, b)?;
    let first = make_panel(&rule, f, a, b, whole)?;
    let mut total_err = first.err;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut settled: Vec<Panel> = Vec::new();
    let mut settled_err = 0.0;

    loop {
        let value: f64 = heap.iter().chain(&settled).map(|p| p.left + p.right).sum();
        let target = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        let err = total_err + settled_err;
        let panels = heap.len() + settled.len();
        if err <= target {
            return Ok(finish(heap, settled, err));
        }
        if panels >= cfg.max_panels || heap.is_empty() {
            return Err(Error::Accuracy {
                value,
                estimate: err,
                target,
                panels,
            });
        }
        let worst = heap.pop().expect("heap is non-empty");
        total_err -= worst.err;
        let m = 0.5 * (worst.a + worst.b);
        let scale = worst.a.abs().max(worst.b.abs()).max(f64::MIN_POSITIVE);
        if worst.b - worst.a <= 64.0 * f64::EPSILON * scale {
            // Cannot bisect further in floating point.
            settled_err += worst.err;
            settled.push(worst);
            continue;
        }
        let l = make_panel(&rule, f, worst.a, m, worst.left)?;
        let r = make_panel(&rule, f, m, worst.b, worst.right)?;
        total_err += l.err + r.err;
        heap.push(l);
        heap.push(r);
        if total_err < 0.0 {
            total_err = heap.iter().map(|p| p.err).sum();
        }
    }
}

fn finish(heap: BinaryHeap<Panel>, settled: Vec<Panel>, err: f64) -> Quadrature {
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(settled);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.left + p.right).sum();
    Quadrature {
        value,
        error_estimate: err,
        panels: panels.len(),
    }
}
