//! Right-minus-left gaps of the comparison inequalities that hold in every
//! global NPC space. Each gap is non-negative up to rounding.

use super::geodesic::{geodesic_point, midpoint, Geodesic};
use super::space::{dist, dist2, same_space, Point};
use crate::error::{domain, Result};

fn unit(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        domain(format!("t must be in [0, 1], got {t}"))
    }
}

/// CN inequality: `½(d²(p,x) + d²(p,y)) - ¼d²(x,y) - d²(p,m)`.
pub fn cn_gap(p: &Point, x: &Point, y: &Point) -> Result<f64> {
    same_space(p, x)?;
    same_space(p, y)?;
    let m = midpoint(x, y)?;
    Ok(0.5 * (dist2(p, x) + dist2(p, y)) - 0.25 * dist2(x, y) - dist2(p, &m))
}

/// Busemann convexity at midpoints: `d(y,z) - 2 d(m_xy, m_xz)`.
pub fn busemann_gap(x: &Point, y: &Point, z: &Point) -> Result<f64> {
    same_space(x, y)?;
    same_space(x, z)?;
    let m1 = midpoint(x, y)?;
    let m2 = midpoint(x, z)?;
    Ok(dist(y, z) - 2.0 * dist(&m1, &m2))
}

/// `(1-t)d²(p,x0) + t d²(p,x1) - t(1-t)d²(x0,x1) - d²(p,x_t)`.
pub fn comparison_gap(p: &Point, x0: &Point, x1: &Point, t: f64) -> Result<f64> {
    unit(t)?;
    same_space(p, x0)?;
    same_space(p, x1)?;
    let xt = geodesic_point(x0, x1, t)?;
    Ok((1.0 - t) * dist2(p, x0) + t * dist2(p, x1) - t * (1.0 - t) * dist2(x0, x1) - dist2(p, &xt))
}

/// Four-point comparison:
/// `d²(x0,y0) + d²(x1,y1) + 2t²d²(x0,x1) + t(d²(y0,y1) - d²(x0,x1)) - t(d(y0,y1) - d(x0,x1))²`
/// minus `d²(x_t,y0) + d²(x_{1-t},y1)`.
pub fn four_point_gap(x0: &Point, x1: &Point, y0: &Point, y1: &Point, t: f64) -> Result<f64> {
    unit(t)?;
    same_space(x0, x1)?;
    same_space(x0, y0)?;
    same_space(x0, y1)?;
    let g = Geodesic::new(x0.clone(), x1.clone())?;
    let xt = g.eval(t);
    let xs = g.eval(1.0 - t);
    let dx = dist(x0, x1);
    let dy = dist(y0, y1);
    let rhs = dist2(x0, y0) + dist2(x1, y1) + 2.0 * t * t * dx * dx + t * (dy * dy - dx * dx)
        - t * (dy - dx) * (dy - dx);
    Ok(rhs - dist2(&xt, y0) - dist2(&xs, y1))
}

/// Comparison for two geodesics `γ = [x1,x2]` (`g1`) and `γ̃ = [y1,y2]` (`g2`):
/// `(1-t)d²(y1,x1) + t d²(y2,x2) - t(1-t)[d(y1,y2) - d(x1,x2)]² - d²(γ̃(t), γ(t))`.
pub fn sturm_gap(g1: &Geodesic, g2: &Geodesic, t: f64) -> Result<f64> {
    unit(t)?;
    same_space(g1.start(), g2.start())?;
    let (x1, x2) = (g1.start(), g1.end());
    let (y1, y2) = (g2.start(), g2.end());
    let delta = dist(y1, y2) - dist(x1, x2);
    let rhs = (1.0 - t) * dist2(y1, x1) + t * dist2(y2, x2) - t * (1.0 - t) * delta * delta;
    Ok(rhs - dist2(&g2.eval(t), &g1.eval(t)))
}
