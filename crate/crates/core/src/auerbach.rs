//! The Auerbach triangle: a convex body all of whose area-halving chords have length 1.
//!
//! One curved part is `x(t) = tanh 2t − t`, `y(t) = sech 2t` for
//! `|t| ≤ ln 3 / 4` (unit speed, so `t` is arc length). The other two are its
//! rotations by ±2π/3 about the barycenter of the equilateral triangle `T`
//! bounded by the terminal tangents and the x-axis; three segments of `∂T`
//! join the curved parts.

use crate::arc::relaxed_c;
use crate::chord::{halving_chord_in_direction, relaxed_g};
use crate::geometry::{ConvexBody, Point2};
use crate::quotient::{QuotientReport, Witness};
use crate::reference;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Default number of segments per curved part.
pub const DEFAULT_SAMPLES_PER_ARC: usize = 4096;

/// Half the parameter range of a curved part, `ln 3 / 4`.
pub fn t_max() -> f64 {
    3f64.ln() / 4.0
}

/// Point of the canonical curved part.
pub fn curve_point(t: f64) -> Point2 {
    Point2::new((2.0 * t).tanh() - t, 1.0 / (2.0 * t).cosh())
}

/// Unit tangent of the canonical curved part in the direction of increasing `t`.
pub fn curve_tangent(t: f64) -> Point2 {
    let sech = 1.0 / (2.0 * t).cosh();
    Point2::new(2.0 * sech * sech - 1.0, -2.0 * sech * (2.0 * t).tanh())
}

#[derive(Debug, Clone, Serialize)]
pub struct AuerbachTriangle {
    #[serde(skip)]
    pub body: ConvexBody,
    pub halving_length: f64,
    pub area_analytic: f64,
    /// Vertices of the circumscribed equilateral triangle `T`.
    pub outer_triangle: [Point2; 3],
    pub barycenter: Point2,
    /// Boundary arc-length intervals `[start, end]` of the three flat parts.
    pub flat_intervals: [(f64, f64); 3],
    /// Angle between the analytic tangent of each curved part and the adjacent
    /// flat part, at the six junctions.
    pub junction_mismatch: [f64; 6],
    pub samples_per_arc: usize,
}

fn line_intersection(p: Point2, d: Point2, q: Point2, e: Point2) -> Point2 {
    p + d * ((q - p).cross(e) / d.cross(e))
}

/// Builds the dense polygon with `samples_per_arc ≥ 16` segments per curved part;
/// flat parts get the same spacing.
pub fn build_auerbach(samples_per_arc: usize) -> AuerbachTriangle {
    let samples = samples_per_arc.max(16);
    let t0 = t_max();
    let right = curve_point(t0);
    let left = curve_point(-t0);
    let right_dir = curve_tangent(t0);
    let left_dir = curve_tangent(-t0);
    let x_axis = Point2::new(1.0, 0.0);
    let base_right = line_intersection(right, right_dir, Point2::ORIGIN, x_axis);
    let base_left = line_intersection(left, left_dir, Point2::ORIGIN, x_axis);
    let apex = line_intersection(right, right_dir, left, left_dir);
    let barycenter = (base_left + base_right + apex) * (1.0 / 3.0);

    // Canonical part traversed counterclockwise: t from +t0 down to −t0.
    let ds = 2.0 * t0 / samples as f64;
    let canonical: Vec<Point2> = (0..=samples).map(|i| curve_point(t0 - i as f64 * ds)).collect();
    let rotate = |p: Point2, j: usize| p.rotated_about(barycenter, TAU * j as f64 / 3.0);
    let rotate_dir = |v: Point2, j: usize| v.rotated(TAU * j as f64 / 3.0);

    let mut vertices = Vec::with_capacity(6 * samples);
    let mut flat_intervals = [(0.0, 0.0); 3];
    let mut junction_mismatch = [0.0; 6];
    let mut length = 0.0;
    for j in 0..3 {
        let part: Vec<Point2> = canonical.iter().map(|&p| rotate(p, j)).collect();
        for w in part.windows(2) {
            vertices.push(w[0]);
            length += w[0].distance(w[1]);
        }
        let start = *part.last().expect("non-empty");
        let end = rotate(canonical[0], (j + 1) % 3);
        let flat = end - start;
        let flat_len = flat.norm();
        let steps = ((flat_len / ds).round() as usize).max(1);
        flat_intervals[j] = (length, length + flat_len);
        for k in 0..steps {
            vertices.push(start + flat * (k as f64 / steps as f64));
        }
        length += flat_len;
        let dir = flat * (1.0 / flat_len);
        // Travel direction at the end of part j is −tangent(−t0); at the start of part j+1 it is −tangent(t0).
        let leaving = -rotate_dir(left_dir, j);
        let entering = -rotate_dir(right_dir, (j + 1) % 3);
        junction_mismatch[2 * j] = leaving.cross(dir).atan2(leaving.dot(dir)).abs();
        junction_mismatch[2 * j + 1] = dir.cross(entering).atan2(dir.dot(entering)).abs();
    }
    let body = ConvexBody::new(vertices).expect("Auerbach polygon is convex");
    AuerbachTriangle {
        body,
        halving_length: 1.0,
        area_analytic: reference::auerbach_area(),
        outer_triangle: [base_left, base_right, apex],
        barycenter,
        flat_intervals,
        junction_mismatch,
        samples_per_arc: samples,
    }
}

/// `(√3/8)(8 ln 3 − ln²3 − 4)`.
pub fn area_analytic() -> f64 {
    reference::auerbach_area()
}

impl AuerbachTriangle {
    /// Whether the boundary point nearest to `p` lies on one of the flat parts.
    pub fn on_flat_part(&self, p: Point2) -> bool {
        let ell = self.body.locate(p).0 * self.body.perimeter();
        let tol = 1e-9 * self.body.perimeter();
        self.flat_intervals.iter().any(|&(a, b)| ell >= a - tol && ell <= b + tol)
    }

    /// Largest distance between the vertices of curved part 0 rotated by
    /// `2πj/3` and the vertices of curved part `j`.
    pub fn congruence_defect(&self) -> f64 {
        let n = self.body.len();
        let per_part = n / 3;
        let mut worst: f64 = 0.0;
        for j in 1..3 {
            for i in 0..self.samples_per_arc {
                let p = self.body.vertex(i).rotated_about(self.barycenter, TAU * j as f64 / 3.0);
                worst = worst.max(p.distance(self.body.vertex(j * per_part + i)));
            }
        }
        worst
    }
}

/// Largest deviations over `n_chords` directions of the halving-chord length
/// from `expected_length` and of the boundary share (as a fraction of the
/// perimeter) from 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZindlerDeviation {
    pub length: f64,
    pub perimeter: f64,
}

pub fn zindler_deviation(body: &ConvexBody, expected_length: f64, n_chords: usize) -> ZindlerDeviation {
    (0..n_chords)
        .into_par_iter()
        .map(|k| {
            let chord = halving_chord_in_direction(body, PI * k as f64 / n_chords as f64);
            let sa = body.locate(chord.a).0;
            let sb = body.locate(chord.b).0;
            let share = (sb - sa).rem_euclid(1.0);
            ZindlerDeviation { length: (chord.length() - expected_length).abs(), perimeter: (share - 0.5).abs() }
        })
        .reduce(
            || ZindlerDeviation { length: 0.0, perimeter: 0.0 },
            |a, b| ZindlerDeviation { length: a.length.max(b.length), perimeter: a.perimeter.max(b.perimeter) },
        )
}

pub fn verify_zindler(tri: &AuerbachTriangle, n_chords: usize) -> ZindlerDeviation {
    zindler_deviation(&tri.body, tri.halving_length, n_chords)
}

#[derive(Debug, Clone, Serialize)]
pub struct AuerbachConstants {
    pub g: QuotientReport,
    pub c: QuotientReport,
    /// The arc witness has nonzero opening.
    pub c_witness_curved: bool,
    /// Both terminals of the arc witness lie on flat parts.
    pub c_witness_on_flats: bool,
}

pub fn auerbach_constants(tri: &AuerbachTriangle) -> AuerbachConstants {
    let g = relaxed_g(&tri.body);
    let c = relaxed_c(&tri.body);
    let cut = c.witness.cut();
    let c_witness_curved = matches!(c.witness, Witness::HalvingArc { .. }) && cut.opening.abs() > 1e-3;
    let c_witness_on_flats = tri.on_flat_part(cut.a) && tri.on_flat_part(cut.b);
    AuerbachConstants { g, c, c_witness_curved, c_witness_on_flats }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::regular_ngon;

    #[test]
    fn canonical_curve() {
        assert_eq!(curve_point(0.0), Point2::new(0.0, 1.0));
        let t0 = t_max();
        let a = curve_tangent(t0);
        let b = curve_tangent(-t0);
        // The terminal tangents, taken as lines, meet at π/3.
        assert!((crate::geometry::line_angle(a, b) - PI / 3.0).abs() < 1e-14);
        // Unit speed.
        let h = 1e-6;
        let speed = curve_point(0.1 + h).distance(curve_point(0.1 - h)) / (2.0 * h);
        assert!((speed - 1.0).abs() < 1e-9);
    }

    #[test]
    fn construction() {
        let tri = build_auerbach(512);
        let [l, r, apex] = tri.outer_triangle;
        let side = 2.0 - 3f64.ln() / 2.0;
        assert!((l.distance(r) - side).abs() < 1e-14 && (r.distance(apex) - side).abs() < 1e-14);
        assert!(tri.junction_mismatch.iter().all(|&m| m < 1e-12));
        assert!(tri.congruence_defect() < 1e-10);
        for &(a, b) in &tri.flat_intervals {
            assert!((b - a - 3f64.ln() / 2.0).abs() < 1e-12);
        }
        assert!((tri.body.perimeter() - 3.0 * 3f64.ln()).abs() < 1e-5);
    }

    #[test]
    fn area_converges() {
        let coarse = (build_auerbach(256).body.area() - area_analytic()).abs();
        let fine = (build_auerbach(1024).body.area() - area_analytic()).abs();
        assert!(fine < coarse / 8.0);
        assert!(fine / area_analytic() < 1e-5);
    }

    #[test]
    fn zindler_property() {
        let tri = build_auerbach(1024);
        let dev = verify_zindler(&tri, 256);
        assert!(dev.length < 1e-3 && dev.perimeter < 1e-3, "{dev:?}");
        let disc = regular_ngon(4096, 0.5).unwrap();
        let d = zindler_deviation(&disc, 1.0, 64);
        assert!(d.length < 1e-6 && d.perimeter < 1e-6);
    }
}
