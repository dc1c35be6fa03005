//! Hemispherical convex bodies bounded by great-circle and small-circle arcs.
//!
//! A [`ConvexBody`] stores its boundary as a cyclic list of pieces traversed
//! counterclockwise about the interior (the interior lies to the left of the
//! direction of travel, seen from outside the sphere). With this orientation
//! the supporting pole of a great arc `A → B` is `normalize(A × B)`, and a
//! small-circle arc runs with increasing azimuth about its center.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::sphere::{geodesic_distance, CircleArc, GreatArc, SmallCircleArc, UnitVector, Vec3};

/// Distance below which a point counts as lying on the boundary.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Angle between adjacent supporting poles below which a junction is smooth.
pub const JUNCTION_EPS: f64 = 1e-12;

/// Pieces shorter than this are dropped by [`ConvexBody::normalized`].
pub const MIN_PIECE_LENGTH: f64 = 1e-12;

const CONTAINS_TOL: f64 = 1e-10;
const VALIDATION_SAMPLES: usize = 17;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryPiece {
    Great(GreatArc),
    Circle(SmallCircleArc),
}

impl BoundaryPiece {
    pub fn circle_arc(&self) -> CircleArc {
        match self {
            BoundaryPiece::Great(g) => g.to_circle_arc(),
            BoundaryPiece::Circle(c) => c.to_circle_arc(),
        }
    }

    pub fn is_strictly_convex(&self) -> bool {
        matches!(self, BoundaryPiece::Circle(_))
    }

    pub fn start(&self) -> UnitVector {
        match self {
            BoundaryPiece::Great(g) => g.from,
            BoundaryPiece::Circle(c) => c.to_circle_arc().start(),
        }
    }

    pub fn end(&self) -> UnitVector {
        match self {
            BoundaryPiece::Great(g) => g.to,
            BoundaryPiece::Circle(c) => c.to_circle_arc().end(),
        }
    }

    /// Sub-piece between two azimuths of the piece's own circle parametrization.
    fn sub_piece(&self, arc: &CircleArc, az_from: f64, az_to: f64) -> BoundaryPiece {
        match self {
            BoundaryPiece::Great(_) => {
                BoundaryPiece::Great(GreatArc { from: arc.point_at(az_from), to: arc.point_at(az_to) })
            }
            BoundaryPiece::Circle(c) => BoundaryPiece::Circle(SmallCircleArc {
                center: c.center,
                radius: c.radius,
                az_from,
                az_to,
            }),
        }
    }
}

/// Supporting poles at a boundary point: one pole on a smooth point, an arc of poles at a vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Poles {
    Single(UnitVector),
    Arc(GreatArc),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportSet {
    pub at: UnitVector,
    pub poles: Poles,
}

impl SupportSet {
    /// A deterministic representative pole: the pole itself, or the midpoint of the pole arc.
    pub fn representative(&self) -> UnitVector {
        match self.poles {
            Poles::Single(k) => k,
            Poles::Arc(a) => (a.from.vec() + a.to.vec()).normalize().unwrap_or(a.from),
        }
    }

    /// Distance from `k` to the set of poles.
    pub fn distance_to(&self, k: UnitVector) -> f64 {
        match self.poles {
            Poles::Single(p) => geodesic_distance(p, k),
            Poles::Arc(a) => a.to_circle_arc().distance_to_point(k),
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self.poles, Poles::Arc(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Worst violation magnitude; zero when nothing was violated.
    pub worst: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, passed: bool, worst: f64) {
        self.checks.push(Check { name, passed, worst });
    }

    fn into_result(self) -> Result<()> {
        if self.is_valid() {
            return Ok(());
        }
        let names: Vec<String> = self.failures().map(|c| format!("{} ({:e})", c.name, c.worst)).collect();
        Err(Error::InvalidBody(names.join(", ")))
    }
}

/// A spherical convex body with a piecewise-circular boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexBody {
    pieces: Vec<BoundaryPiece>,
    arcs: Vec<CircleArc>,
    interior: UnitVector,
}

impl ConvexBody {
    /// Wraps pieces and an interior witness without validating them.
    pub fn new(pieces: Vec<BoundaryPiece>, interior: UnitVector) -> Self {
        let arcs = pieces.iter().map(BoundaryPiece::circle_arc).collect();
        ConvexBody { pieces, arcs, interior }
    }

    /// Like [`ConvexBody::new`] with the interior witness taken as the normalized boundary centroid.
    pub fn from_pieces(pieces: Vec<BoundaryPiece>) -> Result<Self> {
        let arcs: Vec<CircleArc> = pieces.iter().map(BoundaryPiece::circle_arc).collect();
        let interior = centroid_witness(&pieces, &arcs)?;
        Ok(ConvexBody { pieces, arcs, interior })
    }

    pub fn pieces(&self) -> &[BoundaryPiece] {
        &self.pieces
    }

    pub fn arcs(&self) -> &[CircleArc] {
        &self.arcs
    }

    pub fn interior(&self) -> UnitVector {
        self.interior
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_polytope(&self) -> bool {
        self.pieces.iter().all(|p| !p.is_strictly_convex())
    }

    /// Total length of the small-circle pieces.
    pub fn strictly_convex_length(&self) -> f64 {
        self.pieces
            .iter()
            .zip(&self.arcs)
            .filter(|(p, _)| p.is_strictly_convex())
            .map(|(_, a)| a.length())
            .sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.arcs.iter().map(CircleArc::length).sum()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        self.validate().into_result()
    }

    /// Points spread along the boundary, `per_piece ≥ 2` per piece including endpoints.
    pub fn boundary_samples(&self, per_piece: usize) -> Vec<UnitVector> {
        self.arcs.iter().flat_map(|a| a.sample(per_piece)).collect()
    }

    /// Approximately `n` boundary points allotted by arc length, plus every junction.
    pub fn boundary_sweep(&self, n: usize) -> Vec<UnitVector> {
        let total = self.perimeter().max(1e-300);
        let mut out = Vec::with_capacity(n + 2 * self.arcs.len());
        for arc in &self.arcs {
            let k = ((arc.length() / total) * n as f64).ceil().max(1.0) as usize + 1;
            out.extend(arc.sample(k));
        }
        out
    }

    /// Whether `p` lies in the closed body.
    ///
    /// Walks the half great circle from the interior witness through `p` and
    /// compares `p`'s distance with the boundary crossing on that ray.
    pub fn contains(&self, p: UnitVector) -> bool {
        let w = self.interior;
        let d = geodesic_distance(w, p);
        if d <= 1e-15 {
            return true;
        }
        if d >= FRAC_PI_2 {
            return false;
        }
        match self.radial_extent(p) {
            Some(s) => d <= s + CONTAINS_TOL,
            None => false,
        }
    }

    /// Distance from the interior witness to the boundary in the direction of `p`.
    pub fn radial_extent(&self, p: UnitVector) -> Option<f64> {
        let w = self.interior;
        let t = p.vec() - w.vec() * p.dot(w);
        let t = t.normalize()?;
        let mut exact = None::<f64>;
        let mut loose = None::<f64>;
        for arc in &self.arcs {
            let a = w.dot(arc.center);
            let b = t.dot(arc.center);
            let r = a.hypot(b);
            if r < 1e-15 {
                continue;
            }
            let c = arc.radius.cos() / r;
            if c.abs() > 1.0 + 1e-12 {
                continue;
            }
            let base = b.atan2(a);
            let delta = c.clamp(-1.0, 1.0).acos();
            for s in [base + delta, base - delta] {
                let s = (s + PI).rem_euclid(TAU) - PI;
                if !(0.0..=PI).contains(&s) {
                    continue;
                }
                let x = (w.vec() * s.cos() + t.vec() * s.sin()).normalize()?;
                let az = arc.azimuth_of(x);
                if arc.contains_azimuth(az, 1e-12) {
                    exact = Some(exact.map_or(s, |e: f64| e.max(s)));
                } else if arc.contains_azimuth(az, 1e-7) {
                    loose = Some(loose.map_or(s, |e: f64| e.max(s)));
                }
            }
        }
        exact.or(loose)
    }

    /// Geodesic distance from `p` to the body; zero inside.
    pub fn distance_to(&self, p: UnitVector) -> f64 {
        if self.contains(p) {
            return 0.0;
        }
        self.distance_to_boundary(p)
    }

    pub fn distance_to_boundary(&self, p: UnitVector) -> f64 {
        self.arcs.iter().map(|a| a.distance_to_point(p)).fold(f64::INFINITY, f64::min)
    }

    /// Largest distance from `p` to a point of the body.
    pub fn max_distance_to(&self, p: UnitVector) -> f64 {
        self.arcs.iter().map(|a| a.max_distance_to_point(p)).fold(0.0, f64::max)
    }

    pub fn on_boundary(&self, p: UnitVector, tol: f64) -> bool {
        self.distance_to_boundary(p) <= tol
    }

    /// Supporting pole leaving piece `i` at its end and entering piece `i + 1`.
    fn junction_poles(&self, i: usize) -> (UnitVector, UnitVector) {
        let n = self.arcs.len();
        let a = &self.arcs[i];
        let b = &self.arcs[(i + 1) % n];
        (a.pole_at(a.az_to), b.pole_at(b.az_from))
    }

    fn junction_support(&self, i: usize, at: UnitVector) -> SupportSet {
        let (k_in, k_out) = self.junction_poles(i);
        let poles = if geodesic_distance(k_in, k_out) <= JUNCTION_EPS {
            Poles::Single(k_in)
        } else {
            Poles::Arc(GreatArc { from: k_in, to: k_out })
        };
        SupportSet { at, poles }
    }

    /// Poles of every hemisphere supporting the body at boundary point `p`.
    pub fn support_poles_at(&self, p: UnitVector) -> Result<SupportSet> {
        let n = self.arcs.len();
        let (idx, dist) = self
            .arcs
            .iter()
            .enumerate()
            .map(|(i, a)| (i, a.distance_to_point(p)))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        if dist > BOUNDARY_TOL {
            return Err(Error::NotOnBoundary(dist));
        }
        let arc = &self.arcs[idx];
        let full = arc.span().abs() >= TAU - 1e-12;
        if !full {
            if geodesic_distance(p, arc.start()) <= BOUNDARY_TOL {
                return Ok(self.junction_support((idx + n - 1) % n, p));
            }
            if geodesic_distance(p, arc.end()) <= BOUNDARY_TOL {
                return Ok(self.junction_support(idx, p));
            }
        }
        let az = arc.azimuth_of(arc.nearest_point(p));
        Ok(SupportSet { at: p, poles: Poles::Single(arc.pole_at(az)) })
    }

    /// Boundary point at distance π/2 from `p` whose hemisphere supports the body at `p`.
    ///
    /// Only meaningful for a self-dual body, where supporting poles are
    /// boundary points; at a vertex the midpoint of the pole arc is returned.
    pub fn diametral_partner(&self, p: UnitVector, self_dual_tol: f64) -> Result<UnitVector> {
        let residual = crate::metrics::self_duality_residual(self)?;
        if residual > self_dual_tol {
            return Err(Error::NotSelfDual(residual));
        }
        Ok(self.support_poles_at(p)?.representative())
    }

    /// The polar body `⋂_{P ∈ body} H(P)`.
    pub fn polar_dual(&self) -> Result<ConvexBody> {
        self.ensure_valid()?;
        self.polar_dual_unchecked()
    }

    /// Polar body without validating the input first.
    ///
    /// Small-circle arcs map to concentric arcs of complementary radius on the
    /// opposite side, every vertex maps to the great arc of its supporting
    /// poles, and great arcs collapse to the vertex at their pole.
    pub fn polar_dual_unchecked(&self) -> Result<ConvexBody> {
        let n = self.pieces.len();
        let mut out = Vec::with_capacity(2 * n);
        for i in 0..n {
            if let BoundaryPiece::Circle(c) = self.pieces[i] {
                let span = c.az_to - c.az_from;
                let (az_from, az_to) = if c.is_full() {
                    (c.az_from, c.az_to)
                } else {
                    let a = (c.az_from + PI).rem_euclid(TAU);
                    (a, a + span)
                };
                out.push(BoundaryPiece::Circle(SmallCircleArc {
                    center: c.center,
                    radius: FRAC_PI_2 - c.radius,
                    az_from,
                    az_to,
                }));
            }
            let (k_in, k_out) = self.junction_poles(i);
            if geodesic_distance(k_in, k_out) > JUNCTION_EPS {
                out.push(BoundaryPiece::Great(GreatArc { from: k_in, to: k_out }));
            }
        }
        if let [BoundaryPiece::Circle(c)] = out.as_slice() {
            if c.is_full() {
                return Ok(ConvexBody::new(out.clone(), c.center));
            }
        }
        ConvexBody::from_pieces(out)
    }

    /// Merges co-circular neighbours and drops degenerate pieces.
    pub fn normalized(&self) -> Result<ConvexBody> {
        let mut pieces: Vec<BoundaryPiece> = self
            .pieces
            .iter()
            .zip(&self.arcs)
            .filter(|(_, a)| a.length() > MIN_PIECE_LENGTH)
            .map(|(p, _)| *p)
            .collect();
        if pieces.is_empty() {
            return Err(Error::InvalidBody("no pieces of positive length".into()));
        }
        loop {
            let n = pieces.len();
            if n < 2 {
                break;
            }
            let mut merged = false;
            for i in 0..n {
                let j = (i + 1) % n;
                if let Some(m) = merge_pieces(&pieces[i], &pieces[j]) {
                    pieces[i] = m;
                    pieces.remove(j);
                    merged = true;
                    break;
                }
            }
            if !merged {
                break;
            }
        }
        if let [BoundaryPiece::Circle(c)] = pieces.as_mut_slice() {
            if c.is_full() {
                c.az_from = c.az_from.rem_euclid(TAU);
                c.az_to = c.az_from + TAU;
                let center = c.center;
                return Ok(ConvexBody::new(pieces, center));
            }
        }
        let mut body = ConvexBody::new(pieces, self.interior);
        if !body.witness_ok() {
            body = ConvexBody::from_pieces(body.pieces)?;
        }
        Ok(body)
    }

    fn witness_ok(&self) -> bool {
        self.arcs.iter().all(|a| {
            a.sample(5).iter().all(|p| p.dot(self.interior) > 1e-9)
                && [a.az_from, 0.5 * (a.az_from + a.az_to), a.az_to]
                    .iter()
                    .all(|az| a.pole_at(*az).dot(self.interior) > 1e-9)
        })
    }

    /// Intersection with the closed hemisphere `H(pole)`.
    pub fn clip_hemisphere(&self, pole: UnitVector) -> Result<ConvexBody> {
        let mut kept: Vec<BoundaryPiece> = Vec::new();
        let mut any_dropped = false;
        for (piece, arc) in self.pieces.iter().zip(&self.arcs) {
            let (intervals, dropped) = positive_intervals(arc, pole);
            any_dropped |= dropped;
            for (a, b) in intervals {
                kept.push(piece.sub_piece(arc, a, b));
            }
        }
        if !any_dropped {
            return Ok(self.clone());
        }
        kept.retain(|p| p.circle_arc().length() > MIN_PIECE_LENGTH);
        if kept.is_empty() {
            return Err(Error::EmptyIntersection);
        }
        let n = kept.len();
        let mut out = Vec::with_capacity(n + 2);
        for i in 0..n {
            out.push(kept[i]);
            let end = kept[i].end();
            let next = kept[(i + 1) % n].start();
            if geodesic_distance(end, next) > 1e-10 {
                out.push(BoundaryPiece::Great(GreatArc::new(end, next)?));
            }
        }
        ConvexBody::from_pieces(out)?.normalized()
    }

    /// Spherical convex hull of the body and one more point.
    pub fn hull_with_point(&self, x: UnitVector) -> Result<ConvexBody> {
        if self.contains(x) {
            return Ok(self.clone());
        }
        self.polar_dual_unchecked()?.clip_hemisphere(x)?.polar_dual_unchecked()?.normalized()
    }

    /// Converts an all-great-arc body to a polytope, dropping straight-through junctions.
    pub fn to_polytope(&self) -> Result<Polytope> {
        if !self.is_polytope() {
            return Err(Error::InvalidBody("body has small-circle pieces".into()));
        }
        let mut vertices: Vec<UnitVector> = self.pieces.iter().map(BoundaryPiece::start).collect();
        loop {
            let n = vertices.len();
            if n <= 3 {
                break;
            }
            match (0..n).find(|&i| collinear(vertices[(i + n - 1) % n], vertices[i], vertices[(i + 1) % n])) {
                Some(i) => {
                    vertices.remove(i);
                }
                None => break,
            }
        }
        Ok(Polytope { vertices })
    }
}

/// Sub-intervals of `arc`'s span on which points satisfy `pole·x ≥ 0`, and whether anything was cut.
fn positive_intervals(arc: &CircleArc, pole: UnitVector) -> (Vec<(f64, f64)>, bool) {
    let f = |az: f64| pole.dot(arc.point_at(az));
    let (lo, hi) = (arc.az_from, arc.az_to);
    let mut cuts = vec![lo];
    let c0 = arc.radius.cos() * pole.dot(arc.center);
    let (u, v) = arc.center.frame();
    let (pu, pv) = (pole.vec().dot(u) * arc.radius.sin(), pole.vec().dot(v) * arc.radius.sin());
    let amp = pu.hypot(pv);
    if amp > 1e-15 && (c0 / amp).abs() < 1.0 {
        let theta = pv.atan2(pu);
        let delta = (-c0 / amp).acos();
        let mut roots: Vec<f64> = [theta + delta, theta - delta]
            .iter()
            .map(|r| lo + (r - lo).rem_euclid(TAU))
            .filter(|r| *r > lo && *r < hi)
            .collect();
        roots.sort_by(|a, b| a.total_cmp(b));
        cuts.extend(roots);
    }
    cuts.push(hi);
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut dropped = false;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= 0.0 {
            continue;
        }
        if f(0.5 * (a + b)) >= -1e-14 {
            match out.last_mut() {
                Some(last) if last.1 == a => last.1 = b,
                _ => out.push((a, b)),
            }
        } else {
            dropped = true;
        }
    }
    (out, dropped)
}

fn merge_pieces(a: &BoundaryPiece, b: &BoundaryPiece) -> Option<BoundaryPiece> {
    match (a, b) {
        (BoundaryPiece::Great(x), BoundaryPiece::Great(y)) => {
            if geodesic_distance(x.to, y.from) > 1e-10 || !collinear(x.from, x.to, y.to) {
                return None;
            }
            if x.length() + y.length() >= PI - 1e-9 {
                return None;
            }
            Some(BoundaryPiece::Great(GreatArc { from: x.from, to: y.to }))
        }
        (BoundaryPiece::Circle(x), BoundaryPiece::Circle(y)) => {
            if geodesic_distance(x.center, y.center) > 1e-12 || (x.radius - y.radius).abs() > 1e-12 {
                return None;
            }
            let gap = (y.az_from - x.az_to + PI).rem_euclid(TAU) - PI;
            if gap.abs() > 1e-9 {
                return None;
            }
            let span = (x.az_to - x.az_from) + (y.az_to - y.az_from);
            if span > TAU + 1e-9 {
                return None;
            }
            Some(BoundaryPiece::Circle(SmallCircleArc {
                center: x.center,
                radius: x.radius,
                az_from: x.az_from,
                az_to: x.az_from + span.min(TAU),
            }))
        }
        _ => None,
    }
}

/// Distance below which a vertex counts as lying on the great circle through its neighbours.
const COLLINEAR_TOL: f64 = 1e-10;

/// Whether `b` lies on the minor great arc from `a` to `c`, up to [`COLLINEAR_TOL`].
fn collinear(a: UnitVector, b: UnitVector, c: UnitVector) -> bool {
    off_line(a, b, c) <= COLLINEAR_TOL && (b.vec() - a.vec()).dot(c.vec() - b.vec()) > 0.0
}

/// Distance of `b` from the great circle through `a` and `c`.
fn off_line(a: UnitVector, b: UnitVector, c: UnitVector) -> f64 {
    match crate::sphere::chord_normal(a, c) {
        Some(k) => k.dot(b).abs().min(1.0).asin(),
        None => geodesic_distance(a, b),
    }
}

/// Normalized length-weighted mean of boundary points.
fn centroid_witness(pieces: &[BoundaryPiece], arcs: &[CircleArc]) -> Result<UnitVector> {
    if pieces.is_empty() {
        return Err(Error::InvalidBody("no pieces".into()));
    }
    let mut sum = Vec3::new(0.0, 0.0, 0.0);
    for arc in arcs {
        let k = 16;
        let w = arc.length().max(1e-15) / k as f64;
        for i in 0..k {
            sum = sum + arc.point_at_param((i as f64 + 0.5) / k as f64).vec() * w;
        }
    }
    sum.normalize().ok_or_else(|| Error::InvalidBody("boundary centroid vanishes".into()))
}

fn validate(body: &ConvexBody) -> ValidationReport {
    let mut r = ValidationReport::default();
    let n = body.pieces.len();
    r.push("piece_count", n >= 1, if n >= 1 { 0.0 } else { 1.0 });
    if n == 0 {
        return r;
    }

    let mut geom_worst = 0.0f64;
    for (piece, arc) in body.pieces.iter().zip(&body.arcs) {
        match piece {
            BoundaryPiece::Great(g) => {
                // short arcs produced by duality and cutting are fine; their
                // poles are computed orthogonally to the chord midpoint
                let len = g.length();
                if !(len > 0.5 * MIN_PIECE_LENGTH && len < PI - 1e-12) {
                    geom_worst = geom_worst.max(len.max(1e-300));
                }
            }
            BoundaryPiece::Circle(c) => {
                if !(c.radius > 0.0 && c.radius < FRAC_PI_2) {
                    geom_worst = geom_worst.max(c.radius.abs().max(1e-300));
                }
                let span = (c.az_to - c.az_from).abs();
                if !(span > 0.0 && span <= TAU + 1e-12) || !span.is_finite() {
                    geom_worst = geom_worst.max(span.max(1e-300));
                }
            }
        }
        if !arc.length().is_finite() {
            geom_worst = f64::INFINITY;
        }
    }
    r.push("piece_geometry", geom_worst == 0.0, geom_worst);

    let closure = (0..n)
        .map(|i| geodesic_distance(body.arcs[i].end(), body.arcs[(i + 1) % n].start()))
        .fold(0.0, f64::max);
    r.push("closure", closure <= BOUNDARY_TOL, closure);

    let w = body.interior;
    let samples: Vec<UnitVector> = body.boundary_samples(VALIDATION_SAMPLES);
    let min_dot = samples.iter().map(|p| p.dot(w)).fold(f64::INFINITY, f64::min);
    r.push("hemisphericity", min_dot > 1e-12, if min_dot > 1e-12 { 0.0 } else { -min_dot });

    // Local convexity: every piece turns toward the interior, every junction turns left.
    let mut convex_worst = 0.0f64;
    for arc in &body.arcs {
        if arc.span() <= 0.0 {
            convex_worst = convex_worst.max(arc.span().abs().max(1e-300));
        }
        for k in 0..VALIDATION_SAMPLES {
            let az = arc.az_from + arc.span() * k as f64 / (VALIDATION_SAMPLES - 1) as f64;
            let side = arc.pole_at(az).dot(w);
            if side <= 0.0 {
                convex_worst = convex_worst.max(-side + 1e-300);
            }
        }
    }
    for i in 0..n {
        let a = &body.arcs[i];
        let b = &body.arcs[(i + 1) % n];
        let v = b.start();
        let t_in = a.tangent_at(a.az_to);
        let t_out = b.tangent_at(b.az_from);
        let turn = t_in.cross(t_out).dot(v.vec());
        if turn < -1e-9 {
            convex_worst = convex_worst.max(-turn);
        }
        if t_in.dot(t_out) < -1.0 + 1e-9 {
            convex_worst = convex_worst.max(1.0);
        }
    }
    r.push("convexity", convex_worst == 0.0, convex_worst);

    let winding = winding_number(body, w);
    r.push("winding", (winding - 1.0).abs() < 1e-6, (winding - 1.0).abs());
    r
}

/// Number of counterclockwise turns of the boundary about `w`, via gnomonic projection.
fn winding_number(body: &ConvexBody, w: UnitVector) -> f64 {
    let (u, v) = w.frame();
    let mut total = 0.0;
    let mut prev: Option<f64> = None;
    let mut first: Option<f64> = None;
    for arc in &body.arcs {
        let k = 4 + (arc.span().abs() / 0.05).ceil() as usize;
        for p in arc.sample(k) {
            let ang = p.vec().dot(v).atan2(p.vec().dot(u));
            if let Some(q) = prev {
                total += (ang - q + PI).rem_euclid(TAU) - PI;
            } else {
                first = Some(ang);
            }
            prev = Some(ang);
        }
    }
    if let (Some(p), Some(f)) = (prev, first) {
        total += (f - p + PI).rem_euclid(TAU) - PI;
    }
    total / TAU
}

/// A spherical polygon stored by its counterclockwise vertex cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    vertices: Vec<UnitVector>,
}

impl Polytope {
    /// Unvalidated constructor; call [`Polytope::validate`] before relying on it.
    pub fn new(vertices: Vec<UnitVector>) -> Self {
        Polytope { vertices }
    }

    pub fn vertices(&self) -> &[UnitVector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Pole of edge `i`, running from vertex `i` to vertex `i + 1`.
    pub fn edge_pole(&self, i: usize) -> UnitVector {
        let n = self.vertices.len();
        let a = self.vertices[i];
        let b = self.vertices[(i + 1) % n];
        crate::sphere::chord_normal(a, b).unwrap_or(a)
    }

    pub fn edge_poles(&self) -> Vec<UnitVector> {
        (0..self.vertices.len()).map(|i| self.edge_pole(i)).collect()
    }

    pub fn to_body(&self) -> Result<ConvexBody> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(Error::InvalidBody(format!("polytope has {n} vertices")));
        }
        let pieces = (0..n)
            .map(|i| BoundaryPiece::Great(GreatArc { from: self.vertices[i], to: self.vertices[(i + 1) % n] }))
            .collect();
        ConvexBody::from_pieces(pieces)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.vertices.len();
        if n < 3 {
            let mut r = ValidationReport::default();
            r.push("vertex_count", false, n as f64);
            return r;
        }
        let mut r = match self.to_body() {
            Ok(b) => b.validate(),
            Err(_) => {
                let mut r = ValidationReport::default();
                r.push("hemisphericity", false, 1.0);
                r
            }
        };
        r.checks.insert(0, Check { name: "vertex_count", passed: true, worst: 0.0 });
        let redundant = (0..n)
            .map(|i| off_line(self.vertices[(i + n - 1) % n], self.vertices[i], self.vertices[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min);
        let ok = redundant > COLLINEAR_TOL;
        r.push("no_redundant_vertex", ok, if ok { 0.0 } else { redundant });
        r
    }

    pub fn ensure_valid(&self) -> Result<()> {
        self.validate().into_result()
    }

    /// Polar polytope: the vertex cycle of edge poles.
    pub fn polar_dual(&self) -> Result<Polytope> {
        self.ensure_valid()?;
        Ok(Polytope { vertices: self.edge_poles() })
    }

    /// Convex hull of points lying in the open hemisphere about `center`.
    ///
    /// Gnomonic projection about `center` maps great circles to lines, so the
    /// planar monotone-chain hull of the projected points is the spherical hull.
    pub fn hull_of(points: &[UnitVector], center: UnitVector) -> Result<Polytope> {
        let (u, v) = center.frame();
        let mut pts: Vec<(f64, f64, UnitVector)> = Vec::with_capacity(points.len());
        for p in points {
            let h = p.dot(center);
            if h <= 1e-9 {
                return Err(Error::InvalidBody("hull input outside the open hemisphere".into()));
            }
            pts.push((p.vec().dot(u) / h, p.vec().dot(v) / h, *p));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-14 && (a.1 - b.1).abs() < 1e-14);
        if pts.len() < 3 {
            return Err(Error::InvalidBody("fewer than three distinct hull points".into()));
        }
        let cross = |o: &(f64, f64, UnitVector), a: &(f64, f64, UnitVector), b: &(f64, f64, UnitVector)| {
            (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
        };
        let mut hull: Vec<(f64, f64, UnitVector)> = Vec::with_capacity(2 * pts.len());
        for p in pts.iter().chain(pts.iter().rev().skip(1)) {
            while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 1e-14 {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
        if hull.len() < 3 {
            return Err(Error::InvalidBody("degenerate hull".into()));
        }
        Ok(Polytope { vertices: hull.into_iter().map(|p| p.2).collect() })
    }
}
