mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use common::*;
use sphere_cw::generators::{cap, complete_selfdual, octant, random_selfdual_polytope, rounded_reuleaux};
use sphere_cw::metrics::{diameter, hausdorff, is_constant_width, self_duality_residual, thickness};
use sphere_cw::{BoundaryPiece, ConvexBody, Error, Polytope, UnitVector};

/// `C ⊆ C°` iff no two points of `C` are more than π/2 apart.
fn sampled_subdual(body: &ConvexBody, n: usize) -> f64 {
    let pts = boundary_points(body, n);
    let mut worst = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            worst = worst.min(pts[i].dot(pts[j]));
        }
    }
    worst
}

fn replay(seed: &ConvexBody, tol: f64, rng_seed: u64) {
    let done = complete_selfdual(seed, tol, rng_seed).unwrap();
    assert!(done.complete);
    assert_eq!(done.inserted.len(), done.insertions);
    assert_eq!(done.residuals.len(), done.insertions + 1);
    for w in done.residuals.windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "residual went up: {} -> {}", w[0], w[1]);
    }
    let mut body = seed.clone();
    for x in &done.inserted {
        body = body.hull_with_point(*x).unwrap();
        let worst = sampled_subdual(&body, 400);
        assert!(worst >= -1e-9, "C left C° (dot {worst:e})");
    }
    assert!(hausdorff(&body, &done.body).unwrap() <= 1e-9);
    assert!(self_duality_residual(&done.body).unwrap() <= tol);
}

#[test]
fn octant_example() {
    let o = octant();
    assert_eq!(o.vertices(), &[UnitVector::E1, UnitVector::E2, UnitVector::E3]);
    assert!(o.validate().is_valid());
    let b = o.to_body().unwrap();
    assert!(self_duality_residual(&b).unwrap() <= 1e-10);
    assert!((thickness(&b).unwrap() - FRAC_PI_2).abs() < 1e-15 && (diameter(&b) - FRAC_PI_2).abs() < 1e-15);
}

#[test]
fn cap_examples() {
    let mut r = rng(51);
    for _ in 0..20 {
        assert!(cap(random_unit(&mut r), 0.7).unwrap().validate().is_valid());
    }
    assert!(self_duality_residual(&cap(UnitVector::E3, FRAC_PI_4).unwrap()).unwrap() <= 1e-15);
    assert!((thickness(&cap(UnitVector::E3, PI / 6.0).unwrap()).unwrap() - PI / 3.0).abs() < 1e-12);
    assert!(matches!(cap(UnitVector::E3, -0.1), Err(Error::BadRadius(_))));
}

#[test]
fn self_dual_seed_is_kept() {
    let c = cap(UnitVector::new(0.3, 0.1, 0.9).unwrap(), FRAC_PI_4).unwrap();
    let done = complete_selfdual(&c, 1e-9, 1).unwrap();
    assert_eq!(done.insertions, 0);
    assert_eq!(done.body, c);
}

#[test]
fn thin_triangle_completes_to_a_polytope() {
    let thin = Polytope::new(vec![UnitVector::E1, UnitVector::E2, UnitVector::new(1.0, 1.0, 0.05).unwrap()]);
    let seed = thin.to_body().unwrap();
    let done = complete_selfdual(&seed, 1e-6, 3).unwrap();
    assert!(done.body.is_polytope());
    assert!(self_duality_residual(&done.body).unwrap() <= 1e-6);
    assert!(is_constant_width(&done.body, FRAC_PI_2, 1e-5).unwrap().pass);
    replay(&seed, 1e-6, 3);
}

#[test]
fn small_cap_completes_and_stays_subdual() {
    replay(&cap(UnitVector::E3, PI / 6.0).unwrap(), 1e-6, 9);
}

#[test]
fn clipped_seeds_keep_their_arcs() {
    let mut r = rng(52);
    for s in 0..6u64 {
        let seed = clipped_reuleaux_seed(&mut r);
        replay(&seed, 1e-9, s);
        let done = complete_selfdual(&seed, 1e-9, s).unwrap();
        let seed_radii: Vec<f64> = seed
            .pieces()
            .iter()
            .filter_map(|p| match p {
                BoundaryPiece::Circle(c) => Some(c.radius),
                BoundaryPiece::Great(_) => None,
            })
            .collect();
        let kept = done.body.pieces().iter().any(|p| match p {
            BoundaryPiece::Circle(c) => seed_radii.iter().any(|r| (r - c.radius).abs() < 1e-12),
            BoundaryPiece::Great(_) => false,
        });
        assert!(kept, "completion {s} lost every seed arc");
    }
}

#[test]
fn superdual_seed_is_rejected() {
    assert!(matches!(
        complete_selfdual(&cap(UnitVector::E3, PI / 3.0).unwrap(), 1e-6, 0),
        Err(Error::SeedNotSubdual(_))
    ));
}

#[test]
fn random_polytopes() {
    for seed in 1..=5u64 {
        let p = random_selfdual_polytope(3, seed).unwrap();
        let v = p.vertices();
        assert_eq!(v.len(), 3);
        for i in 0..3 {
            assert!(v[i].dot(v[(i + 1) % 3]).abs() <= 1e-12);
        }
    }
    assert_eq!(random_selfdual_polytope(8, 77).unwrap(), random_selfdual_polytope(8, 77).unwrap());
    assert_ne!(random_selfdual_polytope(8, 77).unwrap(), random_selfdual_polytope(8, 78).unwrap());
    for seed in 1..=30u64 {
        let p = random_selfdual_polytope(3 + (seed as usize % 11), seed).unwrap();
        assert!(p.validate().is_valid(), "seed {seed}");
        let b = p.to_body().unwrap();
        assert!(is_constant_width(&b, FRAC_PI_2, 1e-5).unwrap().pass, "seed {seed}");
    }
    assert!(random_selfdual_polytope(2, 1).is_err());
}

#[test]
fn generator_outputs_are_valid_and_not_too_wide() {
    for (name, body) in corpus() {
        assert!(body.validate().is_valid(), "{name}");
        assert!(diameter(&body) <= FRAC_PI_2 + 1e-9, "{name}");
        assert!(brute_diameter(&body, 600) <= FRAC_PI_2 + 1e-9, "{name}");
    }
    for m in [3, 5, 9] {
        for t in [0.01, 0.3, 0.7] {
            let b = rounded_reuleaux(m, t, UnitVector::E2, 0.4).unwrap();
            assert!(self_duality_residual(&b).unwrap() <= 1e-12, "m={m} t={t}");
        }
    }
    assert!(matches!(rounded_reuleaux(4, 0.2, UnitVector::E3, 0.0), Err(Error::InvalidConfig(_)) | Err(Error::BadRadius(_))));
    assert!(matches!(rounded_reuleaux(3, FRAC_PI_4, UnitVector::E3, 0.0), Err(Error::BadRadius(_))));
}
