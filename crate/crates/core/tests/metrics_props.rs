mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use common::*;
use rand::Rng;
use sphere_cw::generators::{cap, lens, octant};
use sphere_cw::metrics::{diameter, hausdorff, is_constant_width, self_duality_residual, thickness, width_wrt};
use sphere_cw::sphere::{lune_thickness, CircleArc};
use sphere_cw::{ConvexBody, UnitVector};

/// Pole of the circle tangent to `arc` at `p`, from the arc geometry alone.
fn tangent_pole(arc: &CircleArc, p: UnitVector) -> UnitVector {
    let z = arc.center.vec();
    (z - p.vec() * z.dot(p.vec())).normalize().unwrap()
}

fn slerp(a: UnitVector, b: UnitVector, t: f64) -> UnitVector {
    (a.vec() * (1.0 - t) + b.vec() * t).normalize().unwrap()
}

/// About `n` supporting poles: tangent poles along every piece plus the
/// pole fans at the junctions.
fn sampled_poles(body: &ConvexBody, n: usize) -> Vec<UnitVector> {
    let arcs = body.arcs();
    let per = (n / (2 * arcs.len())).max(2);
    let mut out = Vec::new();
    for (i, arc) in arcs.iter().enumerate() {
        for k in 0..=per {
            let p = arc.point_at(arc.az_from + arc.span() * k as f64 / per as f64);
            out.push(tangent_pole(arc, p));
        }
        let next = &arcs[(i + 1) % arcs.len()];
        let (a, b) = (tangent_pole(arc, arc.end()), tangent_pole(next, next.start()));
        if a.dot(b) < 1.0 - 1e-15 {
            for k in 1..per {
                out.push(slerp(a, b, k as f64 / per as f64));
            }
        }
    }
    out
}

fn lens_body() -> ConvexBody {
    lens(UnitVector::E3, UnitVector::new(0.5, 0.0, 1.0).unwrap(), 0.6).unwrap()
}

fn assorted() -> Vec<(String, ConvexBody)> {
    let mut r = rng(41);
    let mut out = vec![
        ("lens".to_string(), lens_body()),
        ("cap-0.4".into(), cap(random_unit(&mut r), 0.4).unwrap()),
        ("cap-1.1".into(), cap(random_unit(&mut r), 1.1).unwrap()),
        ("truncated".into(), octant().to_body().unwrap().clip_hemisphere(UnitVector::new(1.0, 1.0, -0.3).unwrap()).unwrap()),
    ];
    for i in 0..4 {
        out.push((format!("clipped-{i}"), clipped_reuleaux_seed(&mut r)));
    }
    out
}

#[test]
fn width_examples() {
    let o = octant().to_body().unwrap();
    assert!((width_wrt(&o, UnitVector::E3).unwrap() - FRAC_PI_2).abs() < 1e-15);
    let c = cap(UnitVector::E3, FRAC_PI_4).unwrap();
    let poles = sampled_poles(&c, 1000);
    for k in poles.iter().step_by(50) {
        let w = width_wrt(&c, *k).unwrap();
        let brute = poles.iter().map(|q| PI - acos_dist(*k, *q)).fold(f64::INFINITY, f64::min);
        assert!((w - FRAC_PI_2).abs() < 1e-12);
        assert!((w - brute).abs() < 1e-4);
    }
    assert!(matches!(width_wrt(&o, UnitVector::new(1.0, 1.0, 1.0).unwrap()), Err(sphere_cw::Error::NotSupporting(_))));
}

#[test]
fn lens_width_matches_sampled_poles() {
    let body = lens_body();
    let poles = sampled_poles(&body, 10_000);
    for k in poles.iter().step_by(97) {
        let w = width_wrt(&body, *k).unwrap();
        let brute = poles.iter().map(|q| PI - acos_dist(*k, *q)).fold(f64::INFINITY, f64::min);
        assert!((w - brute).abs() < 1e-4, "K={k:?}: {w} vs {brute}");
        // The minimum over verified supporting poles bounds every lune.
        for q in poles.iter().step_by(13) {
            if k.dot(*q).abs() < 1.0 - 1e-9 {
                assert!(w <= lune_thickness(*k, *q).unwrap() + 1e-12);
            }
        }
    }
}

#[test]
fn thickness_and_diameter_match_sampling() {
    for (name, body) in assorted().into_iter().chain(corpus().into_iter().step_by(9)) {
        let poles = sampled_poles(&body, 3000);
        let mut pole_diam = 0.0f64;
        for i in 0..poles.len() {
            for j in i + 1..poles.len() {
                pole_diam = pole_diam.max(acos_dist(poles[i], poles[j]));
            }
        }
        let t = thickness(&body).unwrap();
        let d = diameter(&body);
        let brute_d = brute_diameter(&body, 3000);
        assert!((t - (PI - pole_diam)).abs() < 1e-4, "{name}: thickness {t} vs {}", PI - pole_diam);
        assert!((d - brute_d).abs() < 1e-4 && d >= brute_d - 1e-12, "{name}: diameter {d} vs {brute_d}");
    }
}

#[test]
fn cap_and_octant_metrics() {
    let o = octant().to_body().unwrap();
    assert!((thickness(&o).unwrap() - FRAC_PI_2).abs() < 1e-15);
    assert!((diameter(&o) - FRAC_PI_2).abs() < 1e-15);
    assert!(is_constant_width(&o, FRAC_PI_2, 1e-9).unwrap().pass);
    for r in [0.2, 0.5, FRAC_PI_4, 1.0, 1.4] {
        let c = cap(UnitVector::new(0.1, 0.7, 0.2).unwrap(), r).unwrap();
        assert!((thickness(&c).unwrap() - 2.0 * r).abs() < 1e-12, "r={r}");
        assert!((diameter(&c) - 2.0 * r).abs() < 1e-12, "r={r}");
    }
    let wide = is_constant_width(&cap(UnitVector::E3, PI / 3.0).unwrap(), FRAC_PI_2, 1e-6).unwrap();
    assert!(!wide.pass);
    assert!((wide.width_min - 2.0 * PI / 3.0).abs() < 1e-12);
}

#[test]
fn truncated_octant_is_not_constant_width() {
    let t = octant().to_body().unwrap().clip_hemisphere(UnitVector::new(1.0, 1.0, -0.3).unwrap()).unwrap();
    let report = is_constant_width(&t, FRAC_PI_2, 1e-6).unwrap();
    assert!(!report.pass);
    assert!(report.self_duality_residual.unwrap() > 1e-3);
}

#[test]
fn residual_and_hausdorff_examples() {
    let n = UnitVector::E3;
    assert!(self_duality_residual(&octant().to_body().unwrap()).unwrap() <= 1e-10);
    assert!(self_duality_residual(&cap(n, FRAC_PI_4).unwrap()).unwrap() <= 1e-10);
    assert!((self_duality_residual(&cap(n, FRAC_PI_4 - 0.05).unwrap()).unwrap() - 0.1).abs() <= 1e-6);
    let c = cap(n, FRAC_PI_4).unwrap();
    assert_eq!(hausdorff(&c, &c).unwrap(), 0.0);
    assert!((hausdorff(&c, &cap(n, FRAC_PI_4 - 0.1).unwrap()).unwrap() - 0.1).abs() < 1e-12);
}

#[test]
fn octant_to_cap_matches_oracle() {
    let o = octant().to_body().unwrap();
    let c = cap(UnitVector::new(1.0, 1.0, 1.0).unwrap(), FRAC_PI_4).unwrap();
    let exact = hausdorff(&o, &c).unwrap();
    let sampled = brute_hausdorff(&o, &c, 100_000);
    assert!((exact - sampled).abs() < 1e-4, "{exact} vs {sampled}");
}

#[test]
fn far_apart_bodies_match_oracle() {
    let mut r = rng(42);
    for _ in 0..4 {
        let a = cap(random_unit(&mut r), r.random_range(0.1..0.6)).unwrap();
        let b = clipped_reuleaux_seed(&mut r);
        let exact = hausdorff(&a, &b).unwrap();
        let sampled = brute_hausdorff(&a, &b, 20_000);
        assert!((exact - sampled).abs() < 1e-3, "{exact} vs {sampled}");
    }
}

#[test]
fn hausdorff_is_a_metric() {
    let mut bodies: Vec<ConvexBody> = corpus().into_iter().step_by(4).map(|(_, b)| b).collect();
    bodies.extend(assorted().into_iter().map(|(_, b)| b));
    let mut r = rng(43);
    for _ in 0..60 {
        let a = &bodies[r.random_range(0..bodies.len())];
        let b = &bodies[r.random_range(0..bodies.len())];
        let c = &bodies[r.random_range(0..bodies.len())];
        let (ab, ba) = (hausdorff(a, b).unwrap(), hausdorff(b, a).unwrap());
        assert!((ab - ba).abs() <= 1e-9);
        let (bc, ac) = (hausdorff(b, c).unwrap(), hausdorff(a, c).unwrap());
        assert!(ac <= ab + bc + 1e-7, "{ac} > {ab} + {bc}");
    }
}

#[test]
fn self_dual_bodies_have_equal_diameter_and_thickness() {
    for (name, body) in corpus() {
        let (d, t) = (diameter(&body), thickness(&body).unwrap());
        assert!((d - t).abs() <= 1e-6, "{name}");
        assert!((d - FRAC_PI_2).abs() <= 1e-6, "{name}");
    }
}
