//! Chords through the center of centrosymmetric bodies.
//!
//! A body symmetric about `c` is stored as a polygon star-shaped about `c`,
//! with vertices sorted by angle. Every chord through `c` bisects the area, and
//! its length in direction `θ` is twice the ray distance `ρ(θ)`.

use crate::error::{FenceError, Result};
use crate::geometry::{Chord, ConvexBody, Point2, GEOM_REL_EPS};
use crate::numeric::golden_section;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

pub const CENTER_GRID: usize = 2048;
/// Slack allowed above `2√(|K|/π)`.
pub const CENTRO_BOUND_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CentroSymBody {
    center: Point2,
    vertices: Vec<Point2>,
    angles: Vec<f64>,
    area: f64,
    perimeter: f64,
}

impl CentroSymBody {
    /// Convex polygon symmetric about `center`, or about its centroid if `None`.
    pub fn from_body(body: &ConvexBody, center: Option<Point2>) -> Result<Self> {
        let center = center.unwrap_or_else(|| body.centroid());
        if !body.contains_point(center, -body.eps_geom()) {
            return Err(FenceError::Degenerate("center is not interior".into()));
        }
        let s = Self::from_star(center, body.vertices().to_vec())?;
        s.check_symmetry()?;
        Ok(s)
    }

    /// Radial profile `r(2πk/n)`, `k = 0..n`, about `center`. `n` must be even
    /// and `r(θ + π) = r(θ)` on the samples.
    pub fn from_radial(radii: &[f64], center: Point2) -> Result<Self> {
        let n = radii.len();
        if n < 4 || n % 2 == 1 {
            return Err(FenceError::InvalidInput(format!("radial profile needs an even count ≥ 4, got {n}")));
        }
        if let Some(k) = radii.iter().position(|r| !r.is_finite() || *r <= 0.0) {
            return Err(FenceError::InvalidInput(format!("radius {k} is not positive and finite")));
        }
        let vertices = radii
            .iter()
            .enumerate()
            .map(|(k, &r)| center + Point2::from_angle(TAU * k as f64 / n as f64) * r)
            .collect();
        let s = Self::from_star(center, vertices)?;
        s.check_symmetry()?;
        Ok(s)
    }

    fn from_star(center: Point2, points: Vec<Point2>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(FenceError::TooFewVertices(n));
        }
        let mut pairs: Vec<(f64, Point2)> = points.into_iter().map(|p| ((p - center).angle().rem_euclid(TAU), p)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        if let Some(w) = pairs.windows(2).position(|w| w[1].0 - w[0].0 <= 0.0) {
            return Err(FenceError::CoincidentVertices(w, w + 1));
        }
        let (angles, vertices): (Vec<f64>, Vec<Point2>) = pairs.into_iter().unzip();
        let mut area = 0.0;
        let mut perimeter = 0.0;
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            area += 0.5 * (a - center).cross(b - center);
            perimeter += a.distance(b);
        }
        if area <= 0.0 {
            return Err(FenceError::Degenerate("zero area".into()));
        }
        Ok(Self { center, vertices, angles, area, perimeter })
    }

    fn check_symmetry(&self) -> Result<()> {
        let tol = GEOM_REL_EPS * self.perimeter;
        for (i, &v) in self.vertices.iter().enumerate() {
            let d = v - self.center;
            let mirrored = self.ray_distance(d.angle() + PI);
            if (mirrored - d.norm()).abs() > tol {
                return Err(FenceError::NotCentrosymmetric(i));
            }
        }
        Ok(())
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// The same body as a `ConvexBody`, if it is convex.
    pub fn as_convex(&self) -> Result<ConvexBody> {
        ConvexBody::new(self.vertices.clone())
    }

    /// Distance from the center to the boundary along direction `theta`.
    pub fn ray_distance(&self, theta: f64) -> f64 {
        let n = self.vertices.len();
        let t = theta.rem_euclid(TAU);
        let k = (self.angles.partition_point(|&a| a <= t) + n - 1) % n;
        let a = self.vertices[k];
        let e = self.vertices[(k + 1) % n] - a;
        let u = Point2::from_angle(t);
        (a - self.center).cross(e) / u.cross(e)
    }

    /// Chord through the center in direction `theta`.
    pub fn center_chord(&self, theta: f64) -> Chord {
        let u = Point2::from_angle(theta);
        let r = self.ray_distance(theta);
        Chord::new(self.center - u * r, self.center + u * r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CenterChord {
    pub chord: Chord,
    pub length: f64,
    pub theta: f64,
}

pub fn shortest_center_chord(s: &CentroSymBody) -> CenterChord {
    shortest_center_chord_with(s, CENTER_GRID)
}

/// Grid search over `θ ∈ [0, π)` followed by golden-section refinement around
/// every grid minimum within 1% of the best.
pub fn shortest_center_chord_with(s: &CentroSymBody, grid: usize) -> CenterChord {
    let grid = grid.max(8);
    let h = PI / grid as f64;
    let values: Vec<f64> = (0..grid).into_par_iter().map(|i| s.ray_distance(i as f64 * h)).collect();
    let best = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let (theta, rho) = (0..grid)
        .filter(|&i| {
            let v = values[i];
            v <= values[(i + grid - 1) % grid] && v <= values[(i + 1) % grid] && v <= 1.01 * best
        })
        .map(|i| {
            let c = i as f64 * h;
            let (t, r) = golden_section(|t| s.ray_distance(t), c - h, c + h, 1e-13);
            if r <= values[i] {
                (t, r)
            } else {
                (c, values[i])
            }
        })
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.rem_euclid(PI).total_cmp(&b.0.rem_euclid(PI))))
        .expect("grid has a minimum");
    let theta = theta.rem_euclid(PI);
    CenterChord { chord: s.center_chord(theta), length: 2.0 * rho, theta }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CentroBound {
    pub length: f64,
    /// `2√(|K|/π)`, the diameter of the disc with the same area.
    pub bound: f64,
    pub margin: f64,
    pub holds: bool,
}

pub fn centrosym_bound(s: &CentroSymBody) -> CentroBound {
    let length = shortest_center_chord(s).length;
    let bound = 2.0 * (s.area() / PI).sqrt();
    CentroBound { length, bound, margin: bound - length, holds: length <= bound + CENTRO_BOUND_TOL }
}

pub fn verify_centrosym_bound(s: &CentroSymBody) -> bool {
    centrosym_bound(s).holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{ellipse, random_centrosymmetric, rectangle, regular_ngon};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Exact minimum of `ρ` for a polygon convex about its center: the
    /// distance from the center to the nearest edge.
    fn nearest_edge_distance(s: &CentroSymBody) -> f64 {
        let n = s.vertices().len();
        (0..n)
            .map(|i| {
                let a = s.vertices()[i] - s.center();
                let b = s.vertices()[(i + 1) % n] - s.center();
                let e = b - a;
                let t = (-a.dot(e) / e.dot(e)).clamp(0.0, 1.0);
                (a + e * t).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn disc_and_rectangle() {
        let disc = CentroSymBody::from_body(&regular_ngon(4096, 1.0).unwrap(), None).unwrap();
        let c = shortest_center_chord(&disc);
        assert!((c.length - 2.0).abs() < 1e-6);
        let b = centrosym_bound(&disc);
        assert!(b.holds && b.margin.abs() < 1e-4);

        let rect = CentroSymBody::from_body(&rectangle(2.0, 0.5), None).unwrap();
        let c = shortest_center_chord(&rect);
        assert!((c.length - 0.5).abs() < 1e-12);
        // The minimum is quadratic, so θ is only resolved to about √ε.
        assert!((c.theta - PI / 2.0).abs() < 1e-7, "{c:?}");
        assert!(centrosym_bound(&rect).margin > 0.6);
    }

    #[test]
    fn hexagon_brute_force() {
        let hex = regular_ngon(6, 1.0).unwrap();
        let hex = hex.scaled((PI / hex.area()).sqrt());
        let s = CentroSymBody::from_body(&hex, None).unwrap();
        let c = shortest_center_chord(&s);
        let brute = (0..100_000).map(|i| 2.0 * s.ray_distance(PI * i as f64 / 100_000.0)).fold(f64::INFINITY, f64::min);
        assert!(c.length <= brute + 1e-12 && brute - c.length < 1e-8);
        assert!(c.length < 2.0 - 1e-3);
    }

    #[test]
    fn matches_nearest_edge_and_bisects() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let body = random_centrosymmetric(7, &mut rng).unwrap();
            let s = CentroSymBody::from_body(&body, Some(Point2::ORIGIN)).unwrap();
            let c = shortest_center_chord(&s);
            assert!((c.length - 2.0 * nearest_edge_distance(&s)).abs() < 1e-10);
            let (left, _) = body.clip_halfplane(Point2::ORIGIN, c.chord.direction().perp());
            assert!((left.unwrap().area() - 0.5 * body.area()).abs() < 1e-10 * body.area());
            assert!(body.locate_on_boundary(c.chord.a, body.eps_geom()).is_ok());
            assert!(body.locate_on_boundary(c.chord.b, body.eps_geom()).is_ok());
            assert!(verify_centrosym_bound(&s));
        }
    }

    #[test]
    fn radial_profile() {
        let n = 2048;
        let (a, b) = (2.0f64, 1.0f64);
        let radii: Vec<f64> = (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                a * b / ((b * t.cos()).powi(2) + (a * t.sin()).powi(2)).sqrt()
            })
            .collect();
        let s = CentroSymBody::from_radial(&radii, Point2::new(3.0, -1.0)).unwrap();
        let fan: f64 = (0..n).map(|k| 0.5 * radii[k] * radii[(k + 1) % n] * (TAU / n as f64).sin()).sum();
        assert!((s.area() - fan).abs() < 1e-12);
        assert!((s.area() - PI * a * b).abs() < 1e-4);
        let c = shortest_center_chord(&s);
        assert!((c.length - 2.0 * nearest_edge_distance(&s)).abs() < 1e-10);
        assert!((c.length - 2.0 * b).abs() < 1e-5);
        let bound = centrosym_bound(&s);
        assert!(bound.holds && bound.margin > 0.8);
        let from_polygon = CentroSymBody::from_body(&ellipse(2.0, 1.0, 2048).unwrap(), None).unwrap();
        assert!(centrosym_bound(&from_polygon).margin > 0.8);
    }

    #[test]
    fn rejects_asymmetric() {
        let tri = regular_ngon(3, 1.0).unwrap();
        assert!(matches!(CentroSymBody::from_body(&tri, None), Err(FenceError::NotCentrosymmetric(_))));
        assert!(CentroSymBody::from_radial(&[1.0, 2.0, 1.0, 1.0], Point2::ORIGIN).is_err());
        assert!(CentroSymBody::from_radial(&[1.0, 2.0, 1.0], Point2::ORIGIN).is_err());
    }
}
