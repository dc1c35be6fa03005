//! Spherical primitives: points, hemispheres, arcs and lunes on the unit sphere.
//!
//! Every point is a [`UnitVector`]. Great-circle arcs and small-circle arcs
//! share a common parametrization through [`CircleArc`], which describes a
//! circle by its center and angular radius together with an azimuth span
//! measured counterclockwise about the center.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Threshold on dot products below which two points count as equal or antipodal.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Tolerance on the norm of a freshly constructed unit vector.
pub const NORM_EPS: f64 = 1e-12;

/// A point of the unit sphere S².
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
pub struct UnitVector {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitVector {
    pub const E1: UnitVector = UnitVector { x: 1.0, y: 0.0, z: 0.0 };
    pub const E2: UnitVector = UnitVector { x: 0.0, y: 1.0, z: 0.0 };
    pub const E3: UnitVector = UnitVector { x: 0.0, y: 0.0, z: 1.0 };

    /// Normalizes `(x, y, z)`. Fails for the zero vector and non-finite input.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Vec3::new(x, y, z).normalize().ok_or(Error::ZeroVector)
    }

    /// Builds a unit vector from components already known to be unit length.
    pub(crate) const fn new_unchecked(x: f64, y: f64, z: f64) -> Self {
        UnitVector { x, y, z }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn vec(self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn dot(self, other: UnitVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: UnitVector) -> Vec3 {
        self.vec().cross(other.vec())
    }

    /// Geodesic distance, see [`geodesic_distance`].
    pub fn distance(self, other: UnitVector) -> f64 {
        geodesic_distance(self, other)
    }

    /// Orthonormal tangent frame `(u, v)` at this point with `u × v = self`.
    ///
    /// The frame is a fixed function of the point: `u` is the projection of
    /// e1 onto the tangent plane (e2 when |x| ≥ 0.9), and `v = self × u`.
    /// Azimuths of circle arcs are measured in this frame.
    pub fn frame(self) -> (Vec3, Vec3) {
        let z = self.vec();
        let a = if self.x.abs() < 0.9 { Vec3::new(1.0, 0.0, 0.0) } else { Vec3::new(0.0, 1.0, 0.0) };
        let u = (a - z * a.dot(z)).normalize_vec();
        let v = z.cross(u);
        (u, v)
    }
}

impl Neg for UnitVector {
    type Output = UnitVector;
    fn neg(self) -> UnitVector {
        UnitVector { x: -self.x, y: -self.y, z: -self.z }
    }
}

impl From<UnitVector> for [f64; 3] {
    fn from(p: UnitVector) -> Self {
        p.to_array()
    }
}

impl TryFrom<[f64; 3]> for UnitVector {
    type Error = Error;
    /// Keeps components that are already unit length to rounding, so stored
    /// coordinates survive a round trip bit for bit.
    fn try_from(a: [f64; 3]) -> Result<Self> {
        let v = Vec3::new(a[0], a[1], a[2]);
        let n2 = v.dot(v);
        if n2.is_finite() && (n2 - 1.0).abs() <= 8.0 * f64::EPSILON {
            return Ok(UnitVector::new_unchecked(a[0], a[1], a[2]));
        }
        UnitVector::new(a[0], a[1], a[2])
    }
}

/// Plain 3-vector used for intermediate arithmetic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector in this direction, or `None` when the norm is zero or not finite.
    pub fn normalize(self) -> Option<UnitVector> {
        let n = self.norm();
        if !(n.is_finite() && n > 0.0) {
            return None;
        }
        Some(UnitVector::new_unchecked(self.x / n, self.y / n, self.z / n))
    }

    fn normalize_vec(self) -> Vec3 {
        let n = self.norm();
        Vec3::new(self.x / n, self.y / n, self.z / n)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Geodesic distance `arccos(P·Q)` in radians, in `[0, π]`.
///
/// Evaluated as `atan2(|P×Q|, P·Q)`, which equals the clamped arccosine but
/// keeps full precision near 0 and π.
pub fn geodesic_distance(p: UnitVector, q: UnitVector) -> f64 {
    p.cross(q).norm().atan2(p.dot(q))
}

/// Thickness `π − arccos(a·b)` of the lune `H(a) ∩ H(b)`.
pub fn lune_thickness(pole_a: UnitVector, pole_b: UnitVector) -> Result<f64> {
    Lune::new(pole_a, pole_b).map(|l| l.thickness())
}

/// `normalize(a × b)`, made orthogonal to the chord midpoint.
///
/// For short chords the rounding error of `a × b` is large relative to its
/// length; removing the component along the midpoint keeps both endpoints
/// on the resulting great circle to full precision.
pub(crate) fn chord_normal(a: UnitVector, b: UnitVector) -> Option<UnitVector> {
    let k = a.cross(b);
    let m = a.vec() + b.vec();
    let mm = m.dot(m);
    let k = if mm > 0.0 { k - m * (k.dot(m) / mm) } else { k };
    k.normalize()
}

/// Unit normal of the great circle through `p1` and `p2`, signed to agree with `side_hint`.
pub fn arc_pole(p1: UnitVector, p2: UnitVector, side_hint: UnitVector) -> Result<UnitVector> {
    if p1.dot(p2).abs() >= 1.0 - DEGENERACY_EPS {
        return Err(Error::DegenerateArc);
    }
    let pole = chord_normal(p1, p2).ok_or(Error::DegenerateArc)?;
    let s = pole.dot(side_hint);
    if s.abs() <= DEGENERACY_EPS {
        return Err(Error::AmbiguousSide);
    }
    Ok(if s > 0.0 { pole } else { -pole })
}

/// Closed hemisphere `H(pole) = {Q : pole·Q ≥ 0}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hemisphere {
    pub pole: UnitVector,
}

impl Hemisphere {
    pub fn new(pole: UnitVector) -> Self {
        Hemisphere { pole }
    }

    pub fn contains(&self, q: UnitVector) -> bool {
        self.pole.dot(q) >= 0.0
    }
}

/// Intersection of two hemispheres with distinct, non-opposite poles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lune {
    pole_a: UnitVector,
    pole_b: UnitVector,
}

impl Lune {
    pub fn new(pole_a: UnitVector, pole_b: UnitVector) -> Result<Self> {
        if pole_a.dot(pole_b).abs() >= 1.0 - DEGENERACY_EPS {
            return Err(Error::DegenerateLune);
        }
        Ok(Lune { pole_a, pole_b })
    }

    pub fn poles(&self) -> (UnitVector, UnitVector) {
        (self.pole_a, self.pole_b)
    }

    pub fn thickness(&self) -> f64 {
        PI - geodesic_distance(self.pole_a, self.pole_b)
    }
}

/// Minor great-circle arc from `from` to `to`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreatArc {
    pub from: UnitVector,
    pub to: UnitVector,
}

impl GreatArc {
    pub fn new(from: UnitVector, to: UnitVector) -> Result<Self> {
        if from.dot(to).abs() >= 1.0 - DEGENERACY_EPS {
            return Err(Error::DegenerateArc);
        }
        Ok(GreatArc { from, to })
    }

    /// Pole of the arc's great circle; the arc runs counterclockwise about it.
    pub fn pole(&self) -> UnitVector {
        chord_normal(self.from, self.to).unwrap_or(UnitVector::E3)
    }

    pub fn length(&self) -> f64 {
        geodesic_distance(self.from, self.to)
    }

    pub fn to_circle_arc(&self) -> CircleArc {
        let center = self.pole();
        let az = center.azimuth_of(self.from);
        CircleArc::new_raw(center, FRAC_PI_2, az, az + self.length())
    }
}

/// Arc of a small circle: angular radius in `(0, π/2)`, azimuths counterclockwise about `center`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmallCircleArc {
    pub center: UnitVector,
    pub radius: f64,
    pub az_from: f64,
    pub az_to: f64,
}

impl SmallCircleArc {
    pub fn new(center: UnitVector, radius: f64, az_from: f64, az_to: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < FRAC_PI_2) {
            return Err(Error::BadRadius(radius));
        }
        let span = az_to - az_from;
        if !(span > 0.0 && span <= TAU + 1e-12) || !az_from.is_finite() {
            return Err(Error::BadSpan(span));
        }
        Ok(SmallCircleArc { center, radius, az_from, az_to })
    }

    pub fn span(&self) -> f64 {
        self.az_to - self.az_from
    }

    pub fn is_full(&self) -> bool {
        (self.span() - TAU).abs() <= 1e-12
    }

    pub fn to_circle_arc(&self) -> CircleArc {
        CircleArc::new_raw(self.center, self.radius, self.az_from, self.az_to)
    }
}

impl UnitVector {
    /// Azimuth of `p` about this point, measured in [`UnitVector::frame`].
    pub fn azimuth_of(self, p: UnitVector) -> f64 {
        let (u, v) = self.frame();
        p.vec().dot(v).atan2(p.vec().dot(u))
    }
}

/// Closed-form minimum distance from a point to a great arc or small-circle arc.
pub fn point_to_piece_distance(p: UnitVector, piece: &crate::body::BoundaryPiece) -> f64 {
    piece.circle_arc().distance_to_point(p)
}

/// `n ≥ 2` points evenly spaced in the piece's natural parameter, endpoints included.
///
/// The first and last samples are the piece's stored endpoints, bit for bit.
pub fn sample_piece(piece: &crate::body::BoundaryPiece, n: usize) -> Vec<UnitVector> {
    let mut pts = piece.circle_arc().sample(n.max(2));
    pts[0] = piece.start();
    *pts.last_mut().expect("at least two samples") = piece.end();
    pts
}

/// A circle arc with angular radius in `(0, π)` and a signed azimuth span.
///
/// Great arcs are circle arcs of radius π/2 about their pole. Radii above π/2
/// appear only as antipodal images of arcs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleArc {
    pub center: UnitVector,
    pub radius: f64,
    pub az_from: f64,
    pub az_to: f64,
    u: Vec3,
    v: Vec3,
}

impl CircleArc {
    pub fn new_raw(center: UnitVector, radius: f64, az_from: f64, az_to: f64) -> Self {
        let (u, v) = center.frame();
        CircleArc { center, radius, az_from, az_to, u, v }
    }

    pub fn span(&self) -> f64 {
        self.az_to - self.az_from
    }

    /// Arc length along the sphere.
    pub fn length(&self) -> f64 {
        self.span().abs() * self.radius.sin()
    }

    pub fn is_great(&self) -> bool {
        (self.radius - FRAC_PI_2).abs() <= 1e-12
    }

    fn dir(&self, az: f64) -> Vec3 {
        self.u * az.cos() + self.v * az.sin()
    }

    pub fn point_at(&self, az: f64) -> UnitVector {
        let (s, c) = self.radius.sin_cos();
        let w = self.dir(az);
        (self.center.vec() * c + w * s).normalize().expect("circle point")
    }

    pub fn start(&self) -> UnitVector {
        self.point_at(self.az_from)
    }

    pub fn end(&self) -> UnitVector {
        self.point_at(self.az_to)
    }

    /// Point at parameter `t ∈ [0, 1]` along the traversal.
    pub fn point_at_param(&self, t: f64) -> UnitVector {
        self.point_at(self.az_from + t * self.span())
    }

    /// Supporting pole at azimuth `az`: the point at radius π/2 − r on the far side.
    ///
    /// For a body bounded counterclockwise by this arc the returned pole `K`
    /// satisfies `K·P = 0` at `P = point_at(az)` and the body lies in `H(K)`.
    pub fn pole_at(&self, az: f64) -> UnitVector {
        let (s, c) = self.radius.sin_cos();
        let w = self.dir(az);
        let sign = if self.span() >= 0.0 { 1.0 } else { -1.0 };
        (self.center.vec() * (s * sign) - w * (c * sign)).normalize().expect("pole")
    }

    /// Unit tangent in the direction of traversal at azimuth `az`.
    pub fn tangent_at(&self, az: f64) -> Vec3 {
        let t = self.center.vec().cross(self.dir(az));
        if self.span() >= 0.0 {
            t
        } else {
            -t
        }
    }

    pub fn sample(&self, n: usize) -> Vec<UnitVector> {
        let n = n.max(2);
        (0..n).map(|i| self.point_at_param(i as f64 / (n - 1) as f64)).collect()
    }

    /// Azimuth of `p` in this arc's frame.
    pub fn azimuth_of(&self, p: UnitVector) -> f64 {
        p.vec().dot(self.v).atan2(p.vec().dot(self.u))
    }

    fn lo_hi(&self) -> (f64, f64) {
        if self.az_to >= self.az_from {
            (self.az_from, self.az_to)
        } else {
            (self.az_to, self.az_from)
        }
    }

    /// Offset of `az` past the low end of the span, reduced into `[0, 2π)`.
    pub fn offset_of(&self, az: f64) -> f64 {
        (az - self.lo_hi().0).rem_euclid(TAU)
    }

    /// Whether azimuth `az` lies in the span, with `tol` radians of slack on both ends.
    pub fn contains_azimuth(&self, az: f64, tol: f64) -> bool {
        let span = self.span().abs();
        if span >= TAU - tol {
            return true;
        }
        let d = self.offset_of(az);
        d <= span + tol || d >= TAU - tol
    }

    /// Span azimuth nearest to `az` (angularly).
    fn clamp_azimuth(&self, az: f64) -> f64 {
        if self.contains_azimuth(az, 0.0) {
            return az;
        }
        let (lo, hi) = self.lo_hi();
        let d_lo = angle_gap(az, lo);
        let d_hi = angle_gap(az, hi);
        if d_lo <= d_hi {
            lo
        } else {
            hi
        }
    }

    /// Nearest point of the arc to `p`.
    pub fn nearest_point(&self, p: UnitVector) -> UnitVector {
        let pv = p.vec();
        let tangential = Vec3::new(pv.dot(self.u), pv.dot(self.v), 0.0);
        if tangential.norm() <= 1e-15 {
            // p is a center or anti-center: every point is equidistant
            return self.start();
        }
        let psi = tangential.y.atan2(tangential.x);
        self.point_at(self.clamp_azimuth(psi))
    }

    pub fn distance_to_point(&self, p: UnitVector) -> f64 {
        geodesic_distance(p, self.nearest_point(p))
    }

    /// The arc formed by the antipodes of this arc's points.
    pub fn antipodal(&self) -> CircleArc {
        CircleArc::new_raw(self.center, PI - self.radius, self.az_from + PI, self.az_to + PI)
    }

    /// Intersections of the two underlying circles; empty when disjoint or concentric.
    pub fn circle_intersections(&self, other: &CircleArc) -> Vec<UnitVector> {
        let g = self.center.dot(other.center);
        let denom = 1.0 - g * g;
        if denom <= 1e-24 {
            return Vec::new();
        }
        let c1 = self.radius.cos();
        let c2 = other.radius.cos();
        let a = (c1 - c2 * g) / denom;
        let b = (c2 - c1 * g) / denom;
        let z1 = self.center.vec();
        let z2 = other.center.vec();
        let base = z1 * a + z2 * b;
        let rest = 1.0 - base.dot(base);
        let n = z1.cross(z2);
        if rest < -1e-14 {
            return Vec::new();
        }
        let t = (rest.max(0.0) / n.dot(n)).sqrt();
        let mut out: Vec<UnitVector> = Vec::with_capacity(2);
        for s in [t, -t] {
            if let Some(p) = (base + n * s).normalize() {
                if out.iter().all(|q| q.dot(p) < 1.0 - 1e-24) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Whether `p` (assumed on the circle) lies within the span, `tol` in radians of azimuth.
    pub fn contains_circle_point(&self, p: UnitVector, tol: f64) -> bool {
        self.contains_azimuth(self.azimuth_of(p), tol)
    }

    /// Exact minimum geodesic distance between two arcs.
    pub fn min_distance(&self, other: &CircleArc) -> f64 {
        self.min_distance_pair(other).0
    }

    /// Minimum distance between two arcs together with a realizing pair `(p on self, q on other)`.
    ///
    /// The minimum is attained at an endpoint of one arc, at a common point,
    /// or at an interior pair joined by a geodesic normal to both circles; such
    /// a geodesic lies on the great circle through both centers.
    pub fn min_distance_pair(&self, other: &CircleArc) -> (f64, UnitVector, UnitVector) {
        let mut best = (f64::INFINITY, self.start(), other.start());
        let mut consider = |p: UnitVector, q: UnitVector| {
            let d = geodesic_distance(p, q);
            if d < best.0 {
                best = (d, p, q);
            }
        };
        for p in [self.start(), self.end()] {
            consider(p, other.nearest_point(p));
        }
        for q in [other.start(), other.end()] {
            consider(self.nearest_point(q), q);
        }
        let mine = self.points_toward(other.center);
        let theirs = other.points_toward(self.center);
        for p in &mine {
            for q in &theirs {
                consider(*p, *q);
            }
        }
        if best.0 > 0.0 {
            for x in self.circle_intersections(other) {
                if self.contains_circle_point(x, 0.0) && other.contains_circle_point(x, 0.0) {
                    return (0.0, x, x);
                }
            }
        }
        best
    }

    /// Exact maximum geodesic distance between points of two arcs.
    pub fn max_distance(&self, other: &CircleArc) -> f64 {
        PI - self.antipodal().min_distance(other)
    }

    /// Maximum distance between two arcs with a realizing pair `(p on self, q on other)`.
    pub fn max_distance_pair(&self, other: &CircleArc) -> (f64, UnitVector, UnitVector) {
        let (d, p, q) = self.antipodal().min_distance_pair(other);
        (PI - d, -p, q)
    }

    /// Maximum distance from `p` to a point of the arc.
    pub fn max_distance_to_point(&self, p: UnitVector) -> f64 {
        PI - self.distance_to_point(-p)
    }

    /// Span points lying on the great circle through this center and `target`.
    fn points_toward(&self, target: UnitVector) -> Vec<UnitVector> {
        let z = self.center.vec();
        let t = target.vec() - z * target.dot(self.center);
        if t.norm() <= 1e-14 {
            return Vec::new();
        }
        let t = t * (1.0 / t.norm());
        let psi = t.dot(self.v).atan2(t.dot(self.u));
        [psi, psi + PI]
            .into_iter()
            .filter(|az| self.contains_azimuth(*az, 0.0))
            .map(|az| self.point_at(az))
            .collect()
    }
}

/// Absolute angular gap between two azimuths, in `[0, π]`.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Whether two minor great arcs share a point.
///
/// Sign-based predicate: each arc's endpoints must lie on opposite closed
/// sides of the other's great circle, and the crossing must be the one on
/// the arcs' side of the sphere. `tol` absorbs rounding of the orientation
/// determinants.
pub fn great_arcs_intersect(a: &GreatArc, b: &GreatArc, tol: f64) -> bool {
    let na = a.from.cross(a.to);
    let nb = b.from.cross(b.to);
    let s1 = nb.dot(a.from.vec());
    let s2 = nb.dot(a.to.vec());
    let s3 = na.dot(b.from.vec());
    let s4 = na.dot(b.to.vec());
    if s1 * s2 > tol * tol && (s1.abs() > tol && s2.abs() > tol) {
        return false;
    }
    if s3 * s4 > tol * tol && (s3.abs() > tol && s4.abs() > tol) {
        return false;
    }
    // Shared endpoints count as touching.
    for p in [a.from, a.to] {
        for q in [b.from, b.to] {
            if geodesic_distance(p, q) <= tol {
                return true;
            }
        }
    }
    let x = na.cross(nb);
    if x.norm() <= tol {
        // Same great circle: overlap test on the common circle.
        let ca = a.to_circle_arc();
        return [b.from, b.to].iter().any(|p| ca.distance_to_point(*p) <= tol)
            || [a.from, a.to].iter().any(|p| b.to_circle_arc().distance_to_point(*p) <= tol);
    }
    // Each arc crosses the other's circle once; both crossings are ±x and
    // must coincide.
    let ma = a.from.vec() + a.to.vec();
    let mb = b.from.vec() + b.to.vec();
    x.dot(ma) * x.dot(mb) >= 0.0
}
