//! SVG figures of bodies seen from a view direction.
//!
//! Boundary pieces are emitted as exact arcs: under orthographic projection a
//! circle of the sphere becomes an ellipse, under stereographic projection a
//! circle. Each piece is split into sub-arcs of at most a quarter turn so every
//! SVG arc command is a minor arc.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::sphere::{CircleArc, UnitVector, Vec3};

const FRAME: f64 = 1000.0;
const FILL: f64 = 0.9;
const STROKES: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
/// Boundary samples per piece used for the bounding box.
const BBOX_SAMPLES: usize = 65;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    Orthographic,
    Stereographic,
}

impl std::str::FromStr for Projection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orthographic" => Ok(Projection::Orthographic),
            "stereographic" => Ok(Projection::Stereographic),
            other => Err(Error::InvalidConfig(format!("unknown projection {other:?}"))),
        }
    }
}

struct Camera {
    view: UnitVector,
    right: Vec3,
    up: Vec3,
    projection: Projection,
}

impl Camera {
    fn new(view: UnitVector, projection: Projection) -> Self {
        let (right, up) = view.frame();
        Camera { view, right, up, projection }
    }

    fn project(&self, p: UnitVector) -> (f64, f64) {
        let v = p.vec();
        let (x, y) = (v.dot(self.right), v.dot(self.up));
        match self.projection {
            Projection::Orthographic => (x, y),
            Projection::Stereographic => {
                let d = 1.0 + p.dot(self.view);
                (x / d, y / d)
            }
        }
    }

    /// Linear part of an orthographic circle image: center plus conjugate semi-axes.
    fn ellipse(&self, arc: &CircleArc) -> ((f64, f64), (f64, f64), (f64, f64)) {
        let (u, v) = arc.center.frame();
        let (s, c) = arc.radius.sin_cos();
        let z = arc.center.vec();
        let onto = |w: Vec3| (w.dot(self.right), w.dot(self.up));
        let (cx, cy) = onto(z);
        let (ax, ay) = onto(u);
        let (bx, by) = onto(v);
        ((c * cx, c * cy), (s * ax, s * ay), (s * bx, s * by))
    }
}

struct Viewport {
    scale: f64,
    mid: (f64, f64),
}

impl Viewport {
    fn to_svg(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (FRAME / 2.0 + self.scale * (x - self.mid.0), FRAME / 2.0 - self.scale * (y - self.mid.1))
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Semi-axis lengths and rotation (radians) of the ellipse `t ↦ a cos t + b sin t`.
fn principal_axes(a: (f64, f64), b: (f64, f64)) -> (f64, f64, f64) {
    let e = 0.5 * (a.0 + b.1);
    let f = 0.5 * (a.0 - b.1);
    let g = 0.5 * (a.1 + b.0);
    let h = 0.5 * (a.1 - b.0);
    let q = e.hypot(h);
    let r = f.hypot(g);
    let theta = 0.5 * (g.atan2(f) + h.atan2(e));
    (q + r, (q - r).abs(), theta)
}

fn circumradius(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Option<f64> {
    let ab = (a.0 - b.0).hypot(a.1 - b.1);
    let bc = (b.0 - c.0).hypot(b.1 - c.1);
    let ca = (c.0 - a.0).hypot(c.1 - a.1);
    let cross = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    (cross.abs() > 1e-9 * (ab * bc * ca).max(1e-300)).then(|| ab * bc * ca / (2.0 * cross.abs()))
}

fn path_for(body: &ConvexBody, cam: &Camera, vp: &Viewport) -> String {
    let mut d = String::new();
    let mut first = true;
    for arc in body.arcs() {
        let parts = ((arc.span() / FRAC_PI_2) - 1e-9).ceil().max(1.0) as usize;
        let step = arc.span() / parts as f64;
        if first {
            let (x, y) = vp.to_svg(cam.project(arc.start()));
            let _ = write!(d, "M {} {}", num(x), num(y));
            first = false;
        }
        for k in 0..parts {
            let a0 = arc.az_from + step * k as f64;
            let start = vp.to_svg(cam.project(arc.point_at(a0)));
            let mid = vp.to_svg(cam.project(arc.point_at(a0 + 0.5 * step)));
            let end = vp.to_svg(cam.project(arc.point_at(a0 + step)));
            let turn = (mid.0 - start.0) * (end.1 - mid.1) - (mid.1 - start.1) * (end.0 - mid.0);
            let sweep = u8::from(turn > 0.0);
            let (rx, ry, rot) = match cam.projection {
                Projection::Orthographic => {
                    let (_, a, b) = cam.ellipse(arc);
                    let (rx, ry, theta) = principal_axes(a, b);
                    (rx * vp.scale, ry * vp.scale, -theta.to_degrees())
                }
                Projection::Stereographic => match circumradius(start, mid, end) {
                    Some(r) => (r, r, 0.0),
                    None => (0.0, 0.0, 0.0),
                },
            };
            if ry < 1e-6 || turn.abs() < 1e-9 {
                let _ = write!(d, " L {} {}", num(end.0), num(end.1));
            } else {
                let _ = write!(
                    d,
                    " A {} {} {} 0 {} {} {}",
                    num(rx),
                    num(ry),
                    num(rot),
                    sweep,
                    num(end.0),
                    num(end.1)
                );
            }
        }
    }
    d.push_str(" Z");
    d
}

/// Renders the boundaries of `bodies` as layered closed paths.
pub fn render_svg(bodies: &[ConvexBody], projection: Projection, view: UnitVector) -> Result<String> {
    if bodies.is_empty() {
        return Err(Error::InvalidConfig("nothing to render".into()));
    }
    let limit = match projection {
        Projection::Orthographic => FRAC_PI_2 - 1e-9,
        Projection::Stereographic => std::f64::consts::PI - 1e-6,
    };
    for (i, b) in bodies.iter().enumerate() {
        let far = b.max_distance_to(view);
        if far >= limit {
            return Err(Error::InvalidConfig(format!(
                "body {i} is not visible from the view direction (reaches {far:.6} rad)"
            )));
        }
    }
    let cam = Camera::new(view, projection);
    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    for b in bodies {
        for p in b.boundary_samples(BBOX_SAMPLES) {
            let (x, y) = cam.project(p);
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
    }
    let extent = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-12);
    let vp = Viewport { scale: FILL * FRAME / extent, mid: (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1)) };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="1000" height="1000" viewBox="0 0 1000 1000">"#
    );
    let _ = writeln!(svg, r#"<rect width="1000" height="1000" fill="white"/>"#);
    for (i, b) in bodies.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<path d="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            path_for(b, &cam, &vp),
            STROKES[i % STROKES.len()]
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cap, octant};

    #[test]
    fn octant_has_three_arcs() {
        let view = UnitVector::new(1.0, 1.0, 1.0).unwrap();
        let svg = render_svg(&[octant().to_body().unwrap()], Projection::Orthographic, view).unwrap();
        assert_eq!(svg.matches(" A ").count(), 3);
        assert_eq!(svg.matches("<path").count(), 1);
    }

    #[test]
    fn circle_seen_head_on_is_round() {
        let svg = render_svg(&[cap(UnitVector::E3, 0.5).unwrap()], Projection::Orthographic, UnitVector::E3).unwrap();
        assert!(svg.contains(" A 450.000 450.000 "), "{svg}");
        let svg = render_svg(&[cap(UnitVector::E3, 0.5).unwrap()], Projection::Stereographic, UnitVector::E3).unwrap();
        assert!(svg.contains(" A 450.000 450.000 "), "{svg}");
    }

    #[test]
    fn hidden_body_is_rejected() {
        let r = render_svg(&[octant().to_body().unwrap()], Projection::Orthographic, -UnitVector::E3);
        assert!(matches!(r, Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn axes_of_tilted_ellipse() {
        let (rx, ry, _) = principal_axes((2.0, 0.0), (0.0, 1.0));
        assert!((rx - 2.0).abs() < 1e-15 && (ry - 1.0).abs() < 1e-15);
        let (rx, ry, t) = principal_axes((0.0, 3.0), (-1.0, 0.0));
        assert!((rx - 3.0).abs() < 1e-15 && (ry - 1.0).abs() < 1e-15);
        assert!((t.abs() - FRAC_PI_2).abs() < 1e-12);
    }
}
