//! Test bodies: exact self-dual shapes, caps, lenses, and randomized completions.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::{approximate_polytope, ApproximationConfig};
use crate::body::{BoundaryPiece, ConvexBody, Polytope};
use crate::error::{Error, Result};
use crate::metrics::{diameter, diameter_pair};
use crate::sphere::{CircleArc, SmallCircleArc, UnitVector, Vec3};

/// Insertion cap for [`complete_selfdual`].
pub const MAX_COMPLETION_INSERTIONS: usize = 10_000;

/// Boundary sweep density of the polar body when searching for the farthest point.
pub const COMPLETION_SWEEP: usize = 2048;

/// The spherical triangle with vertices e1, e2, e3.
pub fn octant() -> Polytope {
    Polytope::new(vec![UnitVector::E1, UnitVector::E2, UnitVector::E3])
}

/// Spherical cap of angular `radius` about `center`, bounded by one full circle.
pub fn cap(center: UnitVector, radius: f64) -> Result<ConvexBody> {
    let arc = SmallCircleArc::new(center, radius, 0.0, TAU)?;
    Ok(ConvexBody::new(vec![BoundaryPiece::Circle(arc)], center))
}

/// Intersection of two caps of equal radius: a body of non-constant width with two corners.
pub fn lens(z1: UnitVector, z2: UnitVector, radius: f64) -> Result<ConvexBody> {
    let c1 = CircleArc::new_raw(z1, radius, 0.0, TAU);
    let c2 = CircleArc::new_raw(z2, radius, 0.0, TAU);
    let xs = c1.circle_intersections(&c2);
    if xs.len() != 2 {
        return Err(Error::InvalidBody("lens circles do not cross".into()));
    }
    let inner = |own: &CircleArc, other: UnitVector| -> Result<SmallCircleArc> {
        let a = own.azimuth_of(xs[0]);
        let b = own.azimuth_of(xs[1]);
        let span = (b - a).rem_euclid(TAU);
        let (from, span) = if own.point_at(a + 0.5 * span).dot(other) >= radius.cos() {
            (a, span)
        } else {
            (b, TAU - span)
        };
        SmallCircleArc::new(own.center, radius, from, from + span)
    };
    let a1 = inner(&c1, z2)?;
    let a2 = inner(&c2, z1)?;
    ConvexBody::from_pieces(vec![BoundaryPiece::Circle(a1), BoundaryPiece::Circle(a2)])
}

/// Regular spherical `m`-gon of constant width π/2 about `center` (`m` odd).
///
/// Each vertex is orthogonal to the two opposite vertices, which fixes the
/// angular radius through `tan² ρ = −1 / cos(2π h / m)` with `h = (m − 1) / 2`.
pub fn regular_selfdual_polygon(m: usize, center: UnitVector, phase: f64) -> Result<Polytope> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!("regular self-dual polygon needs odd m >= 3, got {m}")));
    }
    let h = (m - 1) / 2;
    let rho = (-1.0 / (TAU * h as f64 / m as f64).cos()).sqrt().atan();
    let circle = CircleArc::new_raw(center, rho, 0.0, TAU);
    let vertices = (0..m).map(|k| circle.point_at(phase + TAU * k as f64 / m as f64)).collect();
    Ok(Polytope::new(vertices))
}

/// Rounded Reuleaux polygon: the `t`-neighbourhood of the regular Reuleaux
/// `m`-gon of width `π/2 − 2t` (`m` odd, `0 < t < π/4`).
///
/// About every vertex `v` of the Reuleaux polygon the boundary carries a
/// corner arc of radius `t` and, on the opposite side, an arc of radius
/// `π/2 − t` with the same azimuth span shifted by π, so the body has constant
/// width π/2 and mixes both arc radii.
pub fn rounded_reuleaux(m: usize, t: f64, center: UnitVector, phase: f64) -> Result<ConvexBody> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!("rounded Reuleaux polygon needs odd m >= 3, got {m}")));
    }
    if !(t > 0.0 && t < FRAC_PI_2 / 2.0) {
        return Err(Error::BadRadius(t));
    }
    let h = (m - 1) / 2;
    let width = FRAC_PI_2 - 2.0 * t;
    let ratio = (1.0 - width.cos()) / (1.0 - (TAU * h as f64 / m as f64).cos());
    let rho = ratio.sqrt().asin();
    let circle = CircleArc::new_raw(center, rho, 0.0, TAU);
    let v: Vec<UnitVector> = (0..m).map(|k| circle.point_at(phase + TAU * k as f64 / m as f64)).collect();
    let mut pieces = Vec::with_capacity(2 * m);
    for k in 0..m {
        let a = v[k].azimuth_of(v[(k + h) % m]);
        let b = v[k].azimuth_of(v[(k + h + 1) % m]);
        let (from, span) = if (b - a).rem_euclid(TAU) < PI { (a, (b - a).rem_euclid(TAU)) } else { (b, (a - b).rem_euclid(TAU)) };
        pieces.push(SmallCircleArc::new(v[k], FRAC_PI_2 - t, from, from + span)?);
        pieces.push(SmallCircleArc::new(v[k], t, from + PI, from + PI + span)?);
    }
    // chain the arcs end to start
    let mut ordered = vec![pieces.swap_remove(0)];
    while !pieces.is_empty() {
        let end = ordered.last().expect("non-empty").to_circle_arc().end();
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .map(|(i, p)| (i, p.to_circle_arc().start().distance(end)))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        ordered.push(pieces.swap_remove(idx));
    }
    Ok(ConvexBody::new(ordered.into_iter().map(BoundaryPiece::Circle).collect(), center))
}

/// Result of [`complete_selfdual`].
#[derive(Clone, Debug)]
pub struct Completion {
    pub body: ConvexBody,
    /// Self-duality residual before the first and after every insertion.
    pub residuals: Vec<f64>,
    /// The inserted points, in order.
    pub inserted: Vec<UnitVector>,
    pub insertions: usize,
    /// False when the insertion cap was hit before reaching `tol`.
    pub complete: bool,
}

/// Grows a body with `C ⊆ C°` into a self-dual one.
///
/// Each insertion takes a point `x` of `C°` farthest from `C` and replaces
/// `C` by `conv(C ∪ {x})`, whose polar is `C° ∩ H(x)`; the polar is therefore
/// maintained by hemisphere clipping and the body recovered as its polar.
pub fn complete_selfdual(seed: &ConvexBody, tol: f64, rng_seed: u64) -> Result<Completion> {
    seed.ensure_valid()?;
    let d = diameter(seed);
    if d > FRAC_PI_2 + 1e-9 {
        return Err(Error::SeedNotSubdual(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut body = seed.clone();
    let mut dual = body.polar_dual_unchecked()?;
    let mut residual = gap(&dual);
    let mut residuals = vec![residual];
    let mut inserted = Vec::new();
    let mut insertions = 0;
    while residual > tol && insertions < MAX_COMPLETION_INSERTIONS {
        let x = farthest_point(&dual, &mut rng);
        inserted.push(x);
        dual = dual.clip_hemisphere(x)?;
        body = dual.polar_dual_unchecked()?.normalized()?;
        insertions += 1;
        residual = gap(&dual).max((diameter(&body) - FRAC_PI_2).max(0.0));
        residuals.push(residual);
    }
    Ok(Completion { body, residuals, inserted, insertions, complete: residual <= tol })
}

/// `h(C, C°)` for `C ⊆ C°`, read off the polar alone.
fn gap(dual: &ConvexBody) -> f64 {
    (diameter(dual) - FRAC_PI_2).max(0.0)
}

/// Point of `dual` farthest from its own polar, over a boundary sweep plus a diametral pair.
///
/// For `y ∈ C°`, `dist(y, C) = max(0, maxdist(y, ∂C°) − π/2)`.
fn farthest_point(dual: &ConvexBody, rng: &mut ChaCha8Rng) -> UnitVector {
    let (_, p, q) = diameter_pair(dual);
    let mut candidates = dual.boundary_sweep(COMPLETION_SWEEP);
    candidates.push(p);
    candidates.push(q);
    let scores: Vec<f64> = candidates.iter().map(|y| dual.max_distance_to(*y)).collect();
    let best = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ties: Vec<usize> = (0..scores.len()).filter(|&i| scores[i] >= best - 1e-12).collect();
    candidates[ties[rng.random_range(0..ties.len())]]
}

/// Random rotation from a uniformly drawn axis and angle.
fn random_rotation(rng: &mut ChaCha8Rng) -> impl Fn(UnitVector) -> UnitVector {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    let s = (1.0 - z * z).sqrt();
    let axis = Vec3::new(s * phi.cos(), s * phi.sin(), z);
    let angle: f64 = rng.random_range(0.0..PI);
    let (sa, ca) = angle.sin_cos();
    move |p: UnitVector| {
        let v = p.vec();
        let r = v * ca + axis.cross(v) * sa + axis * (axis.dot(v) * (1.0 - ca));
        r.normalize().expect("rotation preserves length")
    }
}

/// Deterministic random polytope of constant width π/2 with roughly `n_target` vertices.
///
/// Starts from a regular self-dual polygon with `n_target` (or `n_target + 1`,
/// to make it odd) vertices, pulls every vertex toward the center by a random
/// amount to obtain a sub-dual seed, completes it, and applies a random
/// rotation. For `n_target = 3` the result is a rotated octant, the only
/// self-dual triangle.
pub fn random_selfdual_polytope(n_target: usize, rng_seed: u64) -> Result<Polytope> {
    if n_target < 3 {
        return Err(Error::InvalidConfig(format!("n_target must be >= 3, got {n_target}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let rotate = random_rotation(&mut rng);
    if n_target == 3 {
        return Ok(Polytope::new(octant().vertices().iter().map(|v| rotate(*v)).collect()));
    }
    let m = if n_target % 2 == 1 { n_target } else { n_target + 1 };
    let phase = rng.random_range(0.0..TAU);
    let regular = regular_selfdual_polygon(m, UnitVector::E3, phase)?;
    let seed_points: Vec<UnitVector> = regular
        .vertices()
        .iter()
        .map(|v| {
            let pull: f64 = rng.random_range(0.0..0.25);
            let rho = v.distance(UnitVector::E3);
            let az = UnitVector::E3.azimuth_of(*v);
            CircleArc::new_raw(UnitVector::E3, rho * (1.0 - pull), 0.0, TAU).point_at(az)
        })
        .collect();
    let seed = Polytope::hull_of(&seed_points, UnitVector::E3)?.to_body()?;
    let completion_seed = rng.random::<u64>();
    let done = complete_selfdual(&seed, 1e-12, completion_seed)?;
    let body = if done.body.is_polytope() {
        done.body
    } else {
        let cfg = ApproximationConfig { epsilon: 1e-3, ..ApproximationConfig::default() };
        let run = approximate_polytope(&done.body, &cfg)?;
        run.polytope.to_body()?
    };
    let poly = body.to_polytope()?;
    Ok(Polytope::new(poly.vertices().iter().map(|v| rotate(*v)).collect()))
}
