//! Brute-force oracles and the shared test corpus.
//!
//! Nothing here calls the library's distance, containment or metric code;
//! bodies are only sampled through their boundary parametrization.

#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphere_cw::generators::{
    cap, complete_selfdual, octant, random_selfdual_polytope, regular_selfdual_polygon, rounded_reuleaux,
};
use sphere_cw::sphere::{CircleArc, Vec3};
use sphere_cw::{ConvexBody, Polytope, UnitVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit(rng: &mut ChaCha8Rng) -> UnitVector {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    let s = (1.0 - z * z).sqrt();
    UnitVector::new(s * phi.cos(), s * phi.sin(), z).unwrap()
}

/// Arccos of the clamped dot product, written out independently of the library.
pub fn acos_dist(p: UnitVector, q: UnitVector) -> f64 {
    p.dot(q).clamp(-1.0, 1.0).acos()
}

/// Evenly spread points on the sphere (golden-angle spiral).
pub fn fibonacci_sphere(n: usize) -> Vec<UnitVector> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * i as f64;
            UnitVector::new(r * t.cos(), r * t.sin(), z).unwrap()
        })
        .collect()
}

/// `n` boundary points spaced by arc length.
pub fn boundary_points(body: &ConvexBody, n: usize) -> Vec<UnitVector> {
    let total: f64 = body.arcs().iter().map(CircleArc::length).sum();
    let mut out = Vec::with_capacity(n + body.len());
    for arc in body.arcs() {
        let k = ((arc.length() / total) * n as f64).ceil().max(1.0) as usize;
        for i in 0..k {
            out.push(arc.point_at(arc.az_from + arc.span() * i as f64 / k as f64));
        }
    }
    out
}

/// A random boundary point, piece chosen proportionally to length.
pub fn random_boundary_point(body: &ConvexBody, rng: &mut ChaCha8Rng) -> UnitVector {
    let total: f64 = body.arcs().iter().map(CircleArc::length).sum();
    let mut t = rng.random_range(0.0..total);
    for arc in body.arcs() {
        if t <= arc.length() {
            return arc.point_at(arc.az_from + arc.span() * t / arc.length());
        }
        t -= arc.length();
    }
    body.arcs()[0].start()
}

/// A body densely sampled along its boundary, queried by brute force.
pub struct Sampled {
    pts: Vec<UnitVector>,
    center: UnitVector,
    e1: Vec3,
    e2: Vec3,
    /// Gnomonic images and their polar angles about the center, sorted by angle.
    ring: Vec<(f64, f64, f64)>,
}

impl Sampled {
    pub fn new(body: &ConvexBody, n: usize) -> Self {
        let pts = boundary_points(body, n);
        let mut sum = Vec3::new(0.0, 0.0, 0.0);
        for p in &pts {
            sum = sum + p.vec();
        }
        let center = sum.normalize().unwrap();
        let (e1, e2) = center.frame();
        let mut s = Sampled { pts, center, e1, e2, ring: Vec::new() };
        let mut ring: Vec<(f64, f64, f64)> = s
            .pts
            .iter()
            .map(|p| {
                let (x, y) = s.gnomonic(*p).unwrap();
                (y.atan2(x), x, y)
            })
            .collect();
        ring.sort_by(|a, b| a.0.total_cmp(&b.0));
        s.ring = ring;
        s
    }

    fn gnomonic(&self, p: UnitVector) -> Option<(f64, f64)> {
        let d = p.dot(self.center);
        (d > 1e-9).then(|| (p.vec().dot(self.e1) / d, p.vec().dot(self.e2) / d))
    }

    /// Membership in the sampled polygon; gnomonic projection maps the convex
    /// body to a convex planar polygon, searched by polar angle.
    pub fn contains(&self, p: UnitVector) -> bool {
        let Some((x, y)) = self.gnomonic(p) else { return false };
        let ang = y.atan2(x);
        let n = self.ring.len();
        let i = self.ring.partition_point(|r| r.0 <= ang);
        let a = self.ring[(i + n - 1) % n];
        let b = self.ring[i % n];
        (b.1 - a.1) * (y - a.2) - (b.2 - a.2) * (x - a.1) >= -1e-12
    }

    /// Distance to the sampled boundary: a coarse scan over every 16th sample,
    /// a full-resolution scan around the coarse winner, then a fine walk along
    /// the two segments adjacent to the nearest sample.
    pub fn boundary_distance(&self, p: UnitVector) -> f64 {
        const STRIDE: usize = 16;
        let n = self.pts.len();
        let nearest = |range: &mut dyn Iterator<Item = usize>| {
            range
                .map(|i| (i, self.pts[i % n].dot(p)))
                .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc })
                .0
                % n
        };
        let coarse = nearest(&mut (0..n).step_by(STRIDE));
        let best = nearest(&mut (coarse + n - 2 * STRIDE..=coarse + n + 2 * STRIDE));
        let mut d = f64::INFINITY;
        for j in [(best + n - 1) % n, best] {
            let a = self.pts[j].vec();
            let b = self.pts[(j + 1) % n].vec();
            for k in 0..=40 {
                let t = k as f64 / 40.0;
                let q = (a * (1.0 - t) + b * t).normalize().unwrap();
                d = d.min(acos_dist(p, q));
            }
        }
        d
    }

    pub fn distance(&self, p: UnitVector) -> f64 {
        if self.contains(p) {
            0.0
        } else {
            self.boundary_distance(p)
        }
    }

    pub fn points(&self) -> &[UnitVector] {
        &self.pts
    }
}

/// Hausdorff distance from `n` boundary samples of each body against the other.
pub fn brute_hausdorff(a: &ConvexBody, b: &ConvexBody, n: usize) -> f64 {
    let sa = Sampled::new(a, n / 2);
    let sb = Sampled::new(b, n / 2);
    let ab = sa.points().iter().map(|p| sb.distance(*p)).fold(0.0, f64::max);
    let ba = sb.points().iter().map(|p| sa.distance(*p)).fold(0.0, f64::max);
    ab.max(ba)
}

/// Largest pairwise distance among `n` boundary samples.
pub fn brute_diameter(body: &ConvexBody, n: usize) -> f64 {
    let pts = boundary_points(body, n);
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max(acos_dist(pts[i], pts[j]));
        }
    }
    best
}

/// Polar of a vertex set by definition: `x` is in it iff `x·v ≥ 0` for every vertex.
pub fn in_polar_of_vertices(vertices: &[UnitVector], x: UnitVector) -> bool {
    vertices.iter().all(|v| v.dot(x) >= 0.0)
}

/// Membership in a polytope by definition: `x` is left of every edge.
pub fn in_polytope(p: &Polytope, x: UnitVector) -> bool {
    let v = p.vertices();
    (0..v.len()).all(|i| v[i].cross(v[(i + 1) % v.len()]).dot(x.vec()) >= 0.0)
}

pub fn min_dist_to_set(p: UnitVector, set: &[UnitVector]) -> f64 {
    set.iter().map(|q| acos_dist(p, *q)).fold(f64::INFINITY, f64::min)
}

/// Seed for a mixed-arc completion: a rounded Reuleaux polygon with a slice cut off.
pub fn clipped_reuleaux_seed(rng: &mut ChaCha8Rng) -> ConvexBody {
    let m = [3, 5, 7][rng.random_range(0..3)];
    let t = rng.random_range(0.05..0.5);
    let z = random_unit(rng);
    let body = rounded_reuleaux(m, t, z, rng.random_range(0.0..TAU)).unwrap();
    let depth = rng.random_range(0.05..0.25);
    let k = CircleArc::new_raw(z, FRAC_PI_4 + depth, 0.0, TAU).point_at(rng.random_range(0.0..TAU));
    body.clip_hemisphere(k).unwrap()
}

/// Bodies of constant width π/2 covering every generator.
pub fn corpus() -> Vec<(String, ConvexBody)> {
    let mut out = Vec::new();
    let mut r = rng(2024);
    out.push(("octant".to_string(), octant().to_body().unwrap()));
    for i in 0..4 {
        out.push((format!("cap-{i}"), cap(random_unit(&mut r), FRAC_PI_4).unwrap()));
    }
    for m in [5, 7, 9, 11] {
        let p = regular_selfdual_polygon(m, random_unit(&mut r), r.random_range(0.0..TAU)).unwrap();
        out.push((format!("regular-{m}"), p.to_body().unwrap()));
    }
    for m in [3, 5, 7] {
        for t in [0.08, 0.25, 0.45] {
            let b = rounded_reuleaux(m, t, random_unit(&mut r), r.random_range(0.0..TAU)).unwrap();
            out.push((format!("rounded-{m}-{t}"), b));
        }
    }
    for s in 1..=10u64 {
        let seed = clipped_reuleaux_seed(&mut r);
        let done = complete_selfdual(&seed, 1e-12, s).unwrap();
        assert!(done.complete);
        out.push((format!("completion-{s}"), done.body));
    }
    for s in 1..=50u64 {
        let n = 3 + (s as usize * 7) % 10;
        let p = random_selfdual_polytope(n, s).unwrap();
        out.push((format!("random-polytope-{s}"), p.to_body().unwrap()));
    }
    out
}

/// Bodies that are not of constant width π/2.
pub fn negative_controls() -> Vec<(String, ConvexBody)> {
    use sphere_cw::generators::lens;
    let mut out = vec![
        ("cap-pi/6".to_string(), cap(UnitVector::E3, PI / 6.0).unwrap()),
        ("cap-pi/3".to_string(), cap(UnitVector::E3, PI / 3.0).unwrap()),
        ("lens".to_string(), lens(UnitVector::E3, UnitVector::new(0.5, 0.0, 1.0).unwrap(), 0.6).unwrap()),
    ];
    let truncated = octant().to_body().unwrap().clip_hemisphere(UnitVector::new(1.0, 1.0, -0.3).unwrap()).unwrap();
    out.push(("truncated-octant".to_string(), truncated));
    out.push(("small-octant".to_string(), cap(UnitVector::E3, FRAC_PI_2 - 0.9).unwrap()));
    out
}
