//! Polytope approximation of bodies of constant width π/2.
//!
//! A self-dual body pairs every small-circle arc `(Z, r, [a, b])` of its
//! boundary with the arc `(Z, π/2 − r, [a + π, b + π])`: the supporting pole
//! at a point of one arc is its diametral partner on the other. One
//! [`cut_step`] replaces a short sub-arc `P1 → P2` by its chord and the
//! partner sub-arc `Q1 → Q2` by the two great arcs `Q1 → R1 → Q2`, where `R1`
//! is the pole of the chord. The chord becomes an edge with pole `R1`, the new
//! corners `P1`, `P2` become the edges `Q1R1`, `R1Q2`, so the result is again
//! self-dual. Chords are chosen so that `R1` stays within the round budget of
//! the body; rounds halve the budget until no small-circle arc is left.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::body::{BoundaryPiece, ConvexBody, Polytope, MIN_PIECE_LENGTH};
use crate::error::{Error, Result};
use crate::metrics::{hausdorff, is_constant_width, self_duality_residual};
use crate::sphere::{chord_normal, geodesic_distance, CircleArc, GreatArc, UnitVector};

/// Slack when matching points and azimuths to existing pieces.
const MATCH_TOL: f64 = 1e-9;

/// Subdivision avoids leaving a final chord shorter than this.
const MIN_CHORD: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproximationConfig {
    pub epsilon: f64,
    pub self_dual_tol: f64,
    pub max_rounds: usize,
    pub subdivision_safety: f64,
}

impl Default for ApproximationConfig {
    fn default() -> Self {
        ApproximationConfig { epsilon: 0.1, self_dual_tol: 1e-6, max_rounds: 64, subdivision_safety: 0.5 }
    }
}

impl ApproximationConfig {
    pub fn with_epsilon(epsilon: f64) -> Self {
        ApproximationConfig { epsilon, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.max_rounds < 1 {
            return Err(Error::InvalidConfig("max_rounds must be >= 1".into()));
        }
        if !(self.subdivision_safety > 0.0 && self.subdivision_safety < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "subdivision_safety must lie in (0, 1), got {}",
                self.subdivision_safety
            )));
        }
        if self.self_dual_tol.is_nan() || self.self_dual_tol <= 0.0 {
            return Err(Error::InvalidConfig("self_dual_tol must be positive".into()));
        }
        Ok(())
    }
}

/// One chord cut and its paired dual edit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub round: usize,
    pub budget: f64,
    pub p1: UnitVector,
    pub p2: UnitVector,
    pub q1: UnitVector,
    pub q2: UnitVector,
    pub r1: UnitVector,
    pub primal_piece_id: usize,
    pub dual_piece_id: usize,
    /// Distance from `r1` to the body before the step.
    pub r1_distance: f64,
    pub convex_length_before: f64,
    pub convex_length_after: f64,
    /// Filled in by [`approximate_polytope`]; zero from a bare [`cut_step`].
    pub residual_after: f64,
    pub hausdorff_step: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub epsilon: f64,
    pub hausdorff_bound: f64,
    pub width_min: f64,
    pub width_max: f64,
    pub self_duality_residual: f64,
    pub steps: usize,
    pub rounds: usize,
    pub vertices: usize,
    pub pass: bool,
}

/// Output of [`approximate_polytope`].
#[derive(Clone, Debug)]
pub struct Approximation {
    pub polytope: Polytope,
    pub certificate: Certificate,
    pub steps: Vec<StepRecord>,
}

/// State of an approximation run, complete or not.
#[derive(Clone, Debug)]
pub struct ApproximationRun {
    pub body: ConvexBody,
    pub steps: Vec<StepRecord>,
    pub rounds: usize,
    /// True when `max_rounds` ran out with small-circle arcs left.
    pub exhausted: bool,
}

/// Azimuth of `p` on `arc`, lifted into `[az_from, az_from + 2π)`.
fn lifted_azimuth(arc: &CircleArc, p: UnitVector) -> f64 {
    arc.az_from + arc.offset_of(arc.azimuth_of(p))
}

/// Pole of the chord `p1 p2` on the side of `hint`; unlike [`crate::sphere::arc_pole`] this accepts very short chords.
fn chord_pole_toward(p1: UnitVector, p2: UnitVector, hint: UnitVector) -> Option<UnitVector> {
    if geodesic_distance(p1, p2) <= MIN_PIECE_LENGTH {
        return None;
    }
    let k = chord_normal(p1, p2)?;
    Some(if k.dot(hint) >= 0.0 { k } else { -k })
}

fn chord_pole(arc: &CircleArc, a: f64, b: f64, hint: UnitVector) -> Option<UnitVector> {
    chord_pole_toward(arc.point_at(a), arc.point_at(b), hint)
}

/// Points `P_1 … P_l` on a small-circle piece, endpoints included, such that
/// the pole of every chord `P_i P_{i+1}` lies within `eps · safety` of the body.
///
/// Each step is the longest one passing the test, found by bisection on the
/// azimuth gap.
pub fn subdivide_piece(body: &ConvexBody, piece_id: usize, eps: f64, safety: f64) -> Result<Vec<UnitVector>> {
    Ok(subdivide_azimuths(body, piece_id, eps * safety)?
        .into_iter()
        .map(|az| body.arcs()[piece_id].point_at(az))
        .collect())
}

fn subdivide_azimuths(body: &ConvexBody, piece_id: usize, threshold: f64) -> Result<Vec<f64>> {
    let piece = body
        .pieces()
        .get(piece_id)
        .ok_or_else(|| Error::InvalidBody(format!("no piece {piece_id}")))?;
    if !piece.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex(piece_id));
    }
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(Error::InvalidConfig("subdivision threshold must be positive".into()));
    }
    let arc = body.arcs()[piece_id];
    let hint = body.interior();
    let admissible = |a: f64, b: f64| -> bool {
        chord_pole(&arc, a, b, hint).is_some_and(|r| body.distance_to(r) < threshold)
    };
    let end = arc.az_to;
    let mut out = vec![arc.az_from];
    let mut cur = arc.az_from;
    while end - cur > 1e-12 {
        let cap = (end - cur).min(PI - 1e-3);
        let step = if admissible(cur, cur + cap) {
            cap
        } else {
            let (mut lo, mut hi) = (0.0, cap);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if admissible(cur, cur + mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if lo <= 1e-9 {
                return Err(Error::InvalidConfig(format!("no admissible chord at azimuth {cur}")));
            }
            lo
        };
        let left = end - (cur + step);
        cur = if left <= 1e-12 {
            end
        } else if left * arc.radius.sin() < MIN_CHORD && step >= 2.0 * (end - cur) / 3.0 {
            // split the tail evenly instead of leaving a sliver; shorter chords stay admissible
            cur + 0.5 * (end - cur)
        } else {
            cur + step
        };
        out.push(cur);
    }
    Ok(out)
}

/// A chord's primal placement on a small-circle piece.
struct Located {
    piece: usize,
    from: f64,
    to: f64,
}

fn locate_on_circle_piece(body: &ConvexBody, p1: UnitVector, p2: UnitVector) -> Option<Located> {
    for (i, (piece, arc)) in body.pieces().iter().zip(body.arcs()).enumerate() {
        if !piece.is_strictly_convex() {
            continue;
        }
        if arc.distance_to_point(p1) > MATCH_TOL || arc.distance_to_point(p2) > MATCH_TOL {
            continue;
        }
        let mut a = lifted_azimuth(arc, p1);
        let b = lifted_azimuth(arc, p2);
        let full = arc.span() >= TAU - 1e-12;
        if a - arc.az_from > arc.span() - MATCH_TOL && !full {
            continue;
        }
        if (a - arc.az_to).abs() <= MATCH_TOL && full {
            a = arc.az_from;
        }
        let mut b = b;
        if b <= a + MATCH_TOL {
            b += TAU;
        }
        if b > arc.az_from + arc.span() + MATCH_TOL {
            continue;
        }
        if (a - arc.az_from).abs() <= MATCH_TOL {
            a = arc.az_from;
        }
        if (b - arc.az_to).abs() <= MATCH_TOL {
            b = arc.az_to;
        }
        return Some(Located { piece: i, from: a, to: b });
    }
    None
}

/// Finds the piece carrying the partner arc `Q1 → Q2` of a chord on a circle `(center, radius)`.
fn locate_dual(body: &ConvexBody, center: UnitVector, radius: f64, q1: UnitVector, q2: UnitVector) -> Result<Located> {
    let dual_radius = FRAC_PI_2 - radius;
    for (i, (piece, arc)) in body.pieces().iter().zip(body.arcs()).enumerate() {
        let BoundaryPiece::Circle(c) = piece else { continue };
        if geodesic_distance(c.center, center) > MATCH_TOL || (c.radius - dual_radius).abs() > MATCH_TOL {
            continue;
        }
        if arc.distance_to_point(q1) > MATCH_TOL || arc.distance_to_point(q2) > MATCH_TOL {
            continue;
        }
        let full = arc.span() >= TAU - 1e-12;
        let mut a = lifted_azimuth(arc, q1);
        if (a - arc.az_to).abs() <= MATCH_TOL || (TAU - (a - arc.az_from)).abs() <= MATCH_TOL {
            a = arc.az_from;
        }
        let mut b = lifted_azimuth(arc, q2);
        if b <= a + MATCH_TOL {
            b += TAU;
        }
        if !full && b > arc.az_to + MATCH_TOL {
            continue;
        }
        if (a - arc.az_from).abs() <= MATCH_TOL {
            a = arc.az_from;
        }
        if (b - arc.az_to).abs() <= MATCH_TOL {
            b = arc.az_to;
        }
        return Ok(Located { piece: i, from: a, to: b });
    }
    Err(Error::DualOverlap("partner arc is not inside a single strictly convex piece".into()))
}

/// Circular overlap of azimuth intervals `[a0, a0 + la]` and `[b0, b0 + lb]`, beyond shared endpoints.
fn intervals_overlap(a0: f64, la: f64, b0: f64, lb: f64) -> bool {
    let d = (b0 - a0).rem_euclid(TAU);
    let e = (a0 - b0).rem_euclid(TAU);
    d < la - 1e-12 || e < lb - 1e-12
}

struct Cut {
    from: f64,
    to: f64,
    replacement: Vec<BoundaryPiece>,
}

/// Rebuilds one small-circle piece with the given azimuth intervals replaced.
fn apply_cuts(piece: &BoundaryPiece, arc: &CircleArc, mut cuts: Vec<Cut>) -> Vec<BoundaryPiece> {
    let BoundaryPiece::Circle(c) = piece else {
        unreachable!("cuts apply to small-circle pieces only")
    };
    let full = arc.span() >= TAU - 1e-12;
    let (start, end) = if full {
        let base = cuts[0].from;
        for cut in cuts.iter_mut() {
            let off = (cut.from - base).rem_euclid(TAU);
            let off = if off > TAU - 1e-12 { 0.0 } else { off };
            let len = cut.to - cut.from;
            cut.from = base + off;
            cut.to = cut.from + len;
        }
        (base, base + TAU)
    } else {
        (arc.az_from, arc.az_to)
    };
    cuts.sort_by(|x, y| x.from.total_cmp(&y.from));
    let remnant = |a: f64, b: f64| -> Option<BoundaryPiece> {
        ((b - a) * c.radius.sin() > MIN_PIECE_LENGTH).then_some(BoundaryPiece::Circle(crate::sphere::SmallCircleArc {
            center: c.center,
            radius: c.radius,
            az_from: a,
            az_to: b,
        }))
    };
    let mut out = Vec::new();
    let mut cursor = start;
    for cut in cuts {
        out.extend(remnant(cursor, cut.from));
        out.extend(cut.replacement);
        cursor = cut.to;
    }
    out.extend(remnant(cursor, end));
    out
}

/// Cuts the chord `P1P2` of a self-dual body and bends the partner arc out to the chord's pole.
pub fn cut_step(body: &ConvexBody, p1: UnitVector, p2: UnitVector, self_dual_tol: f64) -> Result<(ConvexBody, StepRecord)> {
    let residual = self_duality_residual(body)?;
    if residual > self_dual_tol {
        return Err(Error::NotSelfDual(residual));
    }
    let (next, mut rec) = cut_step_unchecked(body, p1, p2)?;
    rec.residual_after = self_duality_residual(&next)?;
    rec.hausdorff_step = hausdorff(body, &next)?;
    Ok((next, rec))
}

fn cut_step_unchecked(body: &ConvexBody, p1: UnitVector, p2: UnitVector) -> Result<(ConvexBody, StepRecord)> {
    let primal = locate_on_circle_piece(body, p1, p2)
        .ok_or_else(|| Error::DualOverlap("chord endpoints are not on one strictly convex piece".into()))?;
    let arc = body.arcs()[primal.piece];
    let BoundaryPiece::Circle(circle) = body.pieces()[primal.piece] else { unreachable!() };
    if primal.to - primal.from >= PI - 1e-9 {
        return Err(Error::DualOverlap("chord spans half a circle or more".into()));
    }
    let p1 = arc.point_at(primal.from);
    let p2 = arc.point_at(primal.to);
    let r1 = chord_pole_toward(p1, p2, body.interior()).ok_or(Error::DegenerateArc)?;
    let q1 = arc.pole_at(primal.from);
    let q2 = arc.pole_at(primal.to);
    let dual = locate_dual(body, circle.center, circle.radius, q1, q2)?;
    if ((dual.to - dual.from) - (primal.to - primal.from)).abs() > 1e-6 {
        return Err(Error::DualOverlap("partner arc does not match the chord".into()));
    }
    if dual.piece == primal.piece
        && intervals_overlap(primal.from, primal.to - primal.from, dual.from, dual.to - dual.from)
    {
        return Err(Error::DualOverlap("partner arc overlaps the cut arc".into()));
    }
    let darc = body.arcs()[dual.piece];
    let q1 = darc.point_at(dual.from);
    let q2 = darc.point_at(dual.to);
    let r1_distance = body.distance_to(r1);

    let chord = Cut {
        from: primal.from,
        to: primal.to,
        replacement: vec![BoundaryPiece::Great(GreatArc { from: p1, to: p2 })],
    };
    let bend = Cut {
        from: dual.from,
        to: dual.to,
        replacement: vec![
            BoundaryPiece::Great(GreatArc { from: q1, to: r1 }),
            BoundaryPiece::Great(GreatArc { from: r1, to: q2 }),
        ],
    };
    let mut pieces = Vec::with_capacity(body.len() + 4);
    let mut pending = vec![(primal.piece, chord), (dual.piece, bend)];
    for (i, (piece, arc)) in body.pieces().iter().zip(body.arcs()).enumerate() {
        let cuts: Vec<Cut> = {
            let (mine, rest): (Vec<_>, Vec<_>) = pending.drain(..).partition(|(k, _)| *k == i);
            pending = rest;
            mine.into_iter().map(|(_, c)| c).collect()
        };
        if cuts.is_empty() {
            pieces.push(*piece);
        } else {
            pieces.extend(apply_cuts(piece, arc, cuts));
        }
    }
    let next = ConvexBody::new(pieces, body.interior()).normalized()?;
    let record = StepRecord {
        step: 0,
        round: 0,
        budget: 0.0,
        p1,
        p2,
        q1,
        q2,
        r1,
        primal_piece_id: primal.piece,
        dual_piece_id: dual.piece,
        r1_distance,
        convex_length_before: body.strictly_convex_length(),
        convex_length_after: next.strictly_convex_length(),
        residual_after: 0.0,
        hausdorff_step: 0.0,
    };
    Ok((next, record))
}

/// Runs the round structure without converting or certifying the result.
pub fn run_approximation(body: &ConvexBody, cfg: &ApproximationConfig) -> Result<ApproximationRun> {
    cfg.validate()?;
    body.ensure_valid()?;
    let report = is_constant_width(body, FRAC_PI_2, cfg.self_dual_tol)?;
    if !report.pass {
        return Err(Error::NotConstantWidth {
            thickness: report.thickness,
            spread: report.width_max - report.width_min,
        });
    }
    let mut current = body.normalized()?;
    let mut steps: Vec<StepRecord> = Vec::new();
    let mut budget = cfg.epsilon;
    let mut rounds = 0;
    while !current.is_polytope() {
        if rounds == cfg.max_rounds {
            return Ok(ApproximationRun { body: current, steps, rounds, exhausted: true });
        }
        rounds += 1;
        let threshold = budget * cfg.subdivision_safety;
        let mut plan: Vec<Vec<UnitVector>> = Vec::new();
        for (i, piece) in current.pieces().iter().enumerate() {
            if piece.is_strictly_convex() {
                plan.push(subdivide_piece(&current, i, budget, cfg.subdivision_safety)?);
            }
        }
        for points in plan {
            for pair in points.windows(2) {
                let (next, mut rec) = match cut_step_unchecked(&current, pair[0], pair[1]) {
                    Ok(ok) => ok,
                    Err(Error::DualOverlap(_)) => continue,
                    Err(e) => return Err(e),
                };
                if rec.r1_distance >= threshold {
                    // Earlier edits moved the partner arc; leave it for a finer round.
                    continue;
                }
                rec.residual_after = self_duality_residual(&next)?;
                if rec.residual_after > cfg.self_dual_tol {
                    return Err(Error::NotSelfDual(rec.residual_after));
                }
                rec.hausdorff_step = hausdorff(&current, &next)?;
                rec.step = steps.len() + 1;
                rec.round = rounds;
                rec.budget = budget;
                steps.push(rec);
                current = next;
            }
        }
        budget *= 0.5;
    }
    Ok(ApproximationRun { body: current, steps, rounds, exhausted: false })
}

impl ApproximationRun {
    /// Converts a finished run into a polytope and certifies it against `original`.
    pub fn finish(self, original: &ConvexBody, cfg: &ApproximationConfig) -> Result<Approximation> {
        if self.exhausted {
            let remaining = self.body.pieces().iter().filter(|p| p.is_strictly_convex()).count();
            return Err(Error::BudgetExhausted { rounds: self.rounds, remaining });
        }
        let polytope = self.body.to_polytope()?;
        let mut certificate = certify(original, &polytope, cfg)?;
        certificate.steps = self.steps.len();
        certificate.rounds = self.rounds;
        Ok(Approximation { polytope, certificate, steps: self.steps })
    }
}

/// Approximates a body of constant width π/2 by a polytope of constant width π/2.
pub fn approximate_polytope(body: &ConvexBody, cfg: &ApproximationConfig) -> Result<Approximation> {
    run_approximation(body, cfg)?.finish(body, cfg)
}

/// Recomputes the Hausdorff distance, width range and residual of a finished approximation.
pub fn certify(original: &ConvexBody, result: &Polytope, cfg: &ApproximationConfig) -> Result<Certificate> {
    original.ensure_valid()?;
    result.ensure_valid()?;
    let out = result.to_body()?;
    let h = hausdorff(original, &out)?;
    let report = is_constant_width(&out, FRAC_PI_2, cfg.self_dual_tol)?;
    let residual = self_duality_residual(&out)?;
    let cert = Certificate {
        epsilon: cfg.epsilon,
        hausdorff_bound: h,
        width_min: report.width_min,
        width_max: report.width_max,
        self_duality_residual: residual,
        steps: 0,
        rounds: 0,
        vertices: result.len(),
        pass: true,
    };
    if h > 2.0 * cfg.epsilon {
        return Err(Error::CertificationFailed(format!("hausdorff {h} exceeds 2*epsilon = {}", 2.0 * cfg.epsilon)));
    }
    for (name, w) in [("width_min", report.width_min), ("width_max", report.width_max)] {
        if (w - FRAC_PI_2).abs() > cfg.self_dual_tol {
            return Err(Error::CertificationFailed(format!("{name} {w} differs from pi/2")));
        }
    }
    if residual > cfg.self_dual_tol {
        return Err(Error::CertificationFailed(format!("self-duality residual {residual}")));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cap, octant};
    use std::f64::consts::FRAC_PI_4;

    fn quarter_cap() -> ConvexBody {
        cap(UnitVector::E3, FRAC_PI_4).unwrap()
    }

    #[test]
    fn cut_step_on_cap() {
        let c = quarter_cap();
        let arc = c.arcs()[0];
        let (next, rec) = cut_step(&c, arc.point_at(0.0), arc.point_at(FRAC_PI_2), 1e-6).unwrap();
        let k = 1.0 / 3f64.sqrt();
        assert!(geodesic_distance(rec.r1, UnitVector::new(-k, -k, k).unwrap()) < 1e-15);
        assert!(rec.r1.dot(rec.p1).abs() < 1e-15 && rec.r1.dot(rec.p2).abs() < 1e-15);
        assert!(geodesic_distance(rec.q1, arc.point_at(PI)) < 1e-15);
        assert!(geodesic_distance(rec.q2, arc.point_at(1.5 * PI)) < 1e-15);
        assert_eq!(next.len(), 5);
        assert_eq!(next.pieces().iter().filter(|p| p.is_strictly_convex()).count(), 2);
        assert!(next.validate().is_valid());
        assert!(rec.residual_after <= 1e-9);
        assert!(rec.convex_length_after < rec.convex_length_before);
    }

    #[test]
    fn repeated_cut_is_rejected() {
        let c = quarter_cap();
        let arc = c.arcs()[0];
        let (next, _) = cut_step(&c, arc.point_at(0.0), arc.point_at(FRAC_PI_2), 1e-6).unwrap();
        let again = cut_step(&next, arc.point_at(0.0), arc.point_at(FRAC_PI_2), 1e-6);
        assert!(matches!(again, Err(Error::DualOverlap(_))));
    }

    #[test]
    fn cut_step_needs_self_dual_body() {
        let c = cap(UnitVector::E3, 0.5).unwrap();
        let arc = c.arcs()[0];
        assert!(matches!(
            cut_step(&c, arc.point_at(0.0), arc.point_at(0.3), 1e-6),
            Err(Error::NotSelfDual(_))
        ));
    }

    #[test]
    fn subdivision_examples() {
        let c = quarter_cap();
        let pts = subdivide_piece(&c, 0, 0.2, 0.5).unwrap();
        let arc = c.arcs()[0];
        let mut prev = 0.0;
        for p in &pts[1..] {
            let az = lifted_azimuth(&arc, *p);
            let az = if az <= prev { az + TAU } else { az };
            assert!(az - prev < FRAC_PI_2);
            prev = az;
        }
        let coarse = subdivide_azimuths(&c, 0, 10.0).unwrap();
        // any chord shorter than half a turn qualifies, so the cap splits into three chords
        assert_eq!(coarse.len(), 4);
        let o = octant().to_body().unwrap();
        assert!(matches!(subdivide_piece(&o, 0, 0.2, 0.5), Err(Error::NotStrictlyConvex(0))));
    }

    #[test]
    fn octant_is_fixed() {
        let o = octant().to_body().unwrap();
        let a = approximate_polytope(&o, &ApproximationConfig::with_epsilon(0.1)).unwrap();
        assert!(a.steps.is_empty());
        assert_eq!(a.polytope, octant());
        assert_eq!(a.certificate.hausdorff_bound, 0.0);
    }

    #[test]
    fn cap_approximation() {
        let c = quarter_cap();
        let a = approximate_polytope(&c, &ApproximationConfig::with_epsilon(0.1)).unwrap();
        assert!(a.certificate.hausdorff_bound <= 0.2);
        assert!(a.polytope.len() % 2 == 1);
    }

    #[test]
    fn certify_rejects_far_polytope() {
        let c = quarter_cap();
        let r = certify(&c, &octant(), &ApproximationConfig::with_epsilon(0.01));
        assert!(matches!(r, Err(Error::CertificationFailed(_))));
    }
}
