//! Width, thickness, diameter, Hausdorff distance and self-duality residual.
//!
//! Everything here reduces to one exact primitive, the maximum distance
//! between two circle arcs ([`CircleArc::max_distance`]):
//!
//! * `diameter(C)` is the largest arc-to-arc maximum distance over `∂C`.
//! * Supporting poles of `C` are exactly the boundary points of `C°`, so the
//!   width with respect to `H(K)` is `π − max_{K' ∈ ∂C°} d(K, K')` and the
//!   thickness is `π − diameter(C°)`.
//! * For `x` outside a convex body `B`, `dist(x, B)` is the largest distance
//!   from `x` to a supporting hemisphere of `B`, which gives
//!   `sup_{x ∈ A} dist(x, B) = max(0, maxdist(∂A, ∂B°) − π/2)` whenever that
//!   value is below π/2; past π/2 it is found by refinement along `∂A`.

use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::body::{ConvexBody, JUNCTION_EPS};
use crate::error::{Error, Result};
use crate::sphere::{CircleArc, UnitVector};

/// Supporting-pole sweep density used by [`is_constant_width`].
pub const WIDTH_SWEEP: usize = 4096;

/// Largest distance between a point of `a` and a point of `b`.
pub fn max_distance_between(a: &[CircleArc], b: &[CircleArc]) -> f64 {
    let mut best = 0.0f64;
    for x in a {
        for y in b {
            best = best.max(x.max_distance(y));
        }
    }
    best
}

pub fn diameter(body: &ConvexBody) -> f64 {
    let arcs = body.arcs();
    let mut best = 0.0f64;
    for i in 0..arcs.len() {
        for j in i..arcs.len() {
            best = best.max(arcs[i].max_distance(&arcs[j]));
        }
    }
    best
}

/// Diameter with a pair of boundary points realizing it.
pub fn diameter_pair(body: &ConvexBody) -> (f64, UnitVector, UnitVector) {
    let arcs = body.arcs();
    let mut best = (0.0, body.interior(), body.interior());
    for i in 0..arcs.len() {
        for j in i..arcs.len() {
            let cand = arcs[i].max_distance_pair(&arcs[j]);
            if cand.0 > best.0 {
                best = cand;
            }
        }
    }
    best
}

/// Width of `body` with respect to the supporting hemisphere `H(pole)`.
pub fn width_wrt(body: &ConvexBody, pole: UnitVector) -> Result<f64> {
    let dev = body.max_distance_to(pole) - FRAC_PI_2;
    if dev.abs() > 1e-9 {
        return Err(Error::NotSupporting(dev));
    }
    let dual = body.polar_dual_unchecked()?;
    Ok(width_from_dual(&dual, pole))
}

fn width_from_dual(dual: &ConvexBody, pole: UnitVector) -> f64 {
    PI - dual.max_distance_to(pole)
}

pub fn thickness(body: &ConvexBody) -> Result<f64> {
    Ok(PI - diameter(&body.polar_dual_unchecked()?))
}

/// `sup_{x ∈ a} dist(x, b)`, given `b` and its polar body.
///
/// The polar form is exact while no antipode of a point of `a` lies in `b°`,
/// which is exactly when the result is below π/2. Otherwise the farthest
/// point of `b°` from such an `x` is `-x` itself, possibly off `∂b°`, and the
/// value is found by maximizing the distance to `∂b` over `∂a` instead.
pub fn directed_hausdorff(a: &ConvexBody, b: &ConvexBody, b_dual: &ConvexBody) -> f64 {
    if meets_antipodes(a, b_dual) {
        farthest_from_boundary(a.arcs(), b.arcs())
    } else {
        (max_distance_between(a.arcs(), b_dual.arcs()) - FRAC_PI_2).max(0.0)
    }
}

/// Whether `-a` and `c` share a point.
fn meets_antipodes(a: &ConvexBody, c: &ConvexBody) -> bool {
    if c.contains(-a.interior()) || a.contains(-c.interior()) {
        return true;
    }
    a.arcs().iter().any(|x| {
        let x = x.antipodal();
        c.arcs().iter().any(|y| x.min_distance(y) <= JUNCTION_EPS)
    })
}

/// Accuracy of [`farthest_from_boundary`].
pub const HAUSDORFF_REFINE_TOL: f64 = 1e-8;

#[derive(PartialEq)]
struct Cell {
    upper: f64,
    arc: usize,
    t0: f64,
    t1: f64,
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.upper.total_cmp(&other.upper)
    }
}

/// `max_{x ∈ a} min_{y ∈ b} d(x, y)` by branch and bound.
///
/// Distance to a fixed set is 1-Lipschitz along `a`, so a parameter cell of
/// arc length `L` evaluated at its midpoint is bounded above by `f(mid) + L/2`.
fn farthest_from_boundary(a: &[CircleArc], b: &[CircleArc]) -> f64 {
    let f = |p: UnitVector| b.iter().map(|arc| arc.distance_to_point(p)).fold(f64::INFINITY, f64::min);
    let mut best = 0.0f64;
    let mut heap = BinaryHeap::new();
    let push = |heap: &mut BinaryHeap<Cell>, best: &mut f64, arc: usize, t0: f64, t1: f64| {
        let value = f(a[arc].point_at_param(0.5 * (t0 + t1)));
        *best = best.max(value);
        let upper = value + 0.5 * a[arc].length() * (t1 - t0);
        heap.push(Cell { upper, arc, t0, t1 });
    };
    for (i, arc) in a.iter().enumerate() {
        best = best.max(f(arc.start())).max(f(arc.end()));
        for k in 0..16 {
            push(&mut heap, &mut best, i, k as f64 / 16.0, (k + 1) as f64 / 16.0);
        }
    }
    while let Some(cell) = heap.pop() {
        if cell.upper <= best + HAUSDORFF_REFINE_TOL {
            break;
        }
        let mid = 0.5 * (cell.t0 + cell.t1);
        push(&mut heap, &mut best, cell.arc, cell.t0, mid);
        push(&mut heap, &mut best, cell.arc, mid, cell.t1);
    }
    best
}

/// Geodesic Hausdorff distance between two convex bodies.
pub fn hausdorff(a: &ConvexBody, b: &ConvexBody) -> Result<f64> {
    let a_dual = a.polar_dual_unchecked()?;
    let b_dual = b.polar_dual_unchecked()?;
    Ok(directed_hausdorff(a, b, &b_dual).max(directed_hausdorff(b, a, &a_dual)))
}

/// Hausdorff distance between a body and its polar.
///
/// With `(C°)° = C` both directed terms collapse to diameters:
/// `max(0, diam C − π/2, diam C° − π/2)`.
pub fn self_duality_residual(body: &ConvexBody) -> Result<f64> {
    let dual = body.polar_dual_unchecked()?;
    Ok((diameter(body) - FRAC_PI_2).max(diameter(&dual) - FRAC_PI_2).max(0.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WidthReport {
    pub width_min: f64,
    pub width_max: f64,
    pub thickness: f64,
    pub diameter: f64,
    pub self_duality_residual: Option<f64>,
    pub tau: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Sweeps the supporting poles and decides whether every width equals `tau` within `tol`.
pub fn is_constant_width(body: &ConvexBody, tau: f64, tol: f64) -> Result<WidthReport> {
    let dual = body.polar_dual_unchecked()?;
    let thickness = PI - diameter(&dual);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in dual.boundary_sweep(WIDTH_SWEEP) {
        let w = width_from_dual(&dual, k);
        lo = lo.min(w);
        hi = hi.max(w);
    }
    let width_min = lo.min(thickness);
    let width_max = hi.max(width_min);
    let diam = diameter(body);
    let residual = if (tau - FRAC_PI_2).abs() < 1e-15 {
        Some((diam - FRAC_PI_2).max(PI - thickness - FRAC_PI_2).max(0.0))
    } else {
        None
    };
    let pass = width_max - width_min <= tol && (width_min - tau).abs() <= tol;
    Ok(WidthReport {
        width_min,
        width_max,
        thickness,
        diameter: diam,
        self_duality_residual: residual,
        tau,
        tol,
        pass,
    })
}
