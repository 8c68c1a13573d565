use super::point::Point2;
use crate::numeric::tau_minus_sin;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Straight cut between two boundary points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub a: Point2,
    pub b: Point2,
}

impl Chord {
    pub fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    pub fn midpoint(&self) -> Point2 {
        self.a.lerp(self.b, 0.5)
    }

    /// Unit direction from `a` to `b`.
    pub fn direction(&self) -> Point2 {
        (self.b - self.a).normalized()
    }

    pub fn reversed(&self) -> Self {
        Self { a: self.b, b: self.a }
    }

    pub fn as_arc(&self) -> CircularArc {
        CircularArc::straight(self.a, self.b)
    }
}

/// Circular arc between two points, described by its signed opening angle.
///
/// A positive opening bulges to the right of the direction `a → b` (the
/// centre sits on the left); zero is the straight segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircularArc {
    pub a: Point2,
    pub b: Point2,
    pub opening: f64,
}

/// Openings below this magnitude are treated as straight segments.
const STRAIGHT_EPS: f64 = 1e-12;

impl CircularArc {
    pub fn new(a: Point2, b: Point2, opening: f64) -> Self {
        Self { a, b, opening }
    }

    pub fn straight(a: Point2, b: Point2) -> Self {
        Self { a, b, opening: 0.0 }
    }

    /// Arc centred at `center` from `a` to `b`; `a` and `b` must be equidistant
    /// from the centre. The arc sweeps counterclockwise when `ccw` is true.
    pub fn from_center(center: Point2, a: Point2, b: Point2, ccw: bool) -> Self {
        let sweep = ((b - center).angle() - (a - center).angle()).rem_euclid(TAU);
        let opening = if ccw { sweep } else { -(TAU - sweep).rem_euclid(TAU) };
        Self { a, b, opening }
    }

    pub fn is_straight(&self) -> bool {
        self.opening.abs() < STRAIGHT_EPS
    }

    pub fn chord_length(&self) -> f64 {
        self.a.distance(self.b)
    }

    pub fn radius(&self) -> f64 {
        if self.is_straight() {
            f64::INFINITY
        } else {
            self.chord_length() / (2.0 * (0.5 * self.opening.abs()).sin())
        }
    }

    pub fn length(&self) -> f64 {
        arc_length(self.chord_length(), self.opening)
    }

    pub fn center(&self) -> Option<Point2> {
        if self.is_straight() {
            return None;
        }
        let c = self.chord_length();
        let left = (self.b - self.a).perp() * (1.0 / c);
        let offset = 0.5 * c / (0.5 * self.opening).tan();
        Some(self.a.lerp(self.b, 0.5) + left * offset)
    }

    /// Signed area between the chord and the arc; positive when the arc bulges right of `a → b`.
    pub fn segment_area(&self) -> f64 {
        segment_area(self.chord_length(), self.opening)
    }

    /// Point at fraction `t ∈ [0, 1]` of the arc.
    pub fn point_at(&self, t: f64) -> Point2 {
        match self.center() {
            None => self.a.lerp(self.b, t),
            Some(c) => {
                let start = (self.a - c).angle();
                c + Point2::from_angle(start + t * self.opening) * self.radius()
            }
        }
    }

    /// Unit tangent in the direction of travel at fraction `t`.
    pub fn tangent_at(&self, t: f64) -> Point2 {
        match self.center() {
            None => (self.b - self.a).normalized(),
            Some(c) => {
                let start = (self.a - c).angle();
                Point2::from_angle(start + t * self.opening).perp() * self.opening.signum()
            }
        }
    }

    /// Whether a point lying on the supporting circle falls within the arc's angular span.
    /// Returns the fractional position along the arc when it does.
    pub fn param_of_circle_point(&self, p: Point2) -> Option<f64> {
        let c = self.center()?;
        let start = (self.a - c).angle();
        let offset = if self.opening > 0.0 {
            ((p - c).angle() - start).rem_euclid(TAU)
        } else {
            (start - (p - c).angle()).rem_euclid(TAU)
        };
        let span = self.opening.abs();
        // Points just below angle 0 wrap to ~2π; fold them back.
        let offset = if offset > PI + 0.5 * span { offset - TAU } else { offset };
        Some(offset / span)
    }

    pub fn reversed(&self) -> Self {
        Self { a: self.b, b: self.a, opening: -self.opening }
    }

    /// Polyline approximation with `n` segments (rendering only).
    pub fn polyline(&self, n: usize) -> Vec<Point2> {
        let n = n.max(1);
        (0..=n).map(|k| self.point_at(k as f64 / n as f64)).collect()
    }
}

/// Length of a circular arc with the given chord and opening.
pub fn arc_length(chord: f64, opening: f64) -> f64 {
    let half = 0.5 * opening.abs();
    if half < 1e-8 {
        chord * (1.0 + half * half / 6.0)
    } else {
        chord * half / half.sin()
    }
}

/// Signed circular-segment area `r²(φ − sin φ)/2` written in terms of the chord.
pub fn segment_area(chord: f64, opening: f64) -> f64 {
    if opening == 0.0 {
        return 0.0;
    }
    if opening.abs() < 1e-8 {
        return chord * chord * opening / 12.0;
    }
    let s = (0.5 * opening).sin();
    chord * chord * tau_minus_sin(opening) / (8.0 * s * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_arc_geometry() {
        let r = 2.0;
        let arc = CircularArc::from_center(Point2::ORIGIN, Point2::new(r, 0.0), Point2::new(0.0, r), true);
        assert!((arc.opening - PI / 2.0).abs() < 1e-15);
        assert!((arc.radius() - r).abs() < 1e-12);
        assert!((arc.length() - PI).abs() < 1e-12);
        let c = arc.center().unwrap();
        assert!(c.norm() < 1e-12);
        // Segment = quarter disc minus right triangle.
        let expected = PI * r * r / 4.0 - r * r / 2.0;
        assert!((arc.segment_area() - expected).abs() < 1e-12);
        let mid = arc.point_at(0.5);
        assert!((mid.norm() - r).abs() < 1e-12 && (mid.x - mid.y).abs() < 1e-12);
        let t0 = arc.tangent_at(0.0);
        assert!((t0.x).abs() < 1e-12 && (t0.y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clockwise_arc_has_negative_opening() {
        let arc = CircularArc::from_center(Point2::ORIGIN, Point2::new(0.0, 1.0), Point2::new(1.0, 0.0), false);
        assert!((arc.opening + PI / 2.0).abs() < 1e-15);
        assert!(arc.center().unwrap().norm() < 1e-12);
        assert!(arc.segment_area() < 0.0);
    }

    #[test]
    fn straight_limit() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(3.0, 4.0);
        let s = CircularArc::straight(a, b);
        assert_eq!(s.length(), 5.0);
        assert!(s.center().is_none());
        let tiny = CircularArc::new(a, b, 1e-7);
        assert!((tiny.length() - 5.0).abs() < 1e-12);
        assert!((tiny.segment_area() - 25.0 * 1e-7 / 12.0).abs() < 1e-18);
    }

    #[test]
    fn circle_point_parameter() {
        let arc = CircularArc::from_center(Point2::ORIGIN, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), true);
        let p = Point2::from_angle(PI / 8.0);
        assert!((arc.param_of_circle_point(p).unwrap() - 0.25).abs() < 1e-12);
        let q = Point2::from_angle(-0.1);
        assert!(arc.param_of_circle_point(q).unwrap() < 0.0);
        let rev = arc.reversed();
        assert!((rev.param_of_circle_point(p).unwrap() - 0.75).abs() < 1e-12);
    }
}
