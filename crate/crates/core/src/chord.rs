//! Shortest area-halving chords and the half-plane quotient.

use crate::error::Result;
use crate::geometry::{line_angle, Chord, ConvexBody, DirectionSlicer, Point2, ANGULAR_RESOLUTION};
use crate::numeric::{bisect_increasing, golden_section};
use crate::quotient::{QuotientReport, Residual, Witness, TIE_TOL};
use crate::reference;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

/// Default number of directions in the coarse scan.
pub const DIRECTION_GRID: usize = 720;
/// Angular tolerance of the golden-section refinement.
pub const ANGLE_TOL: f64 = 1e-10;
/// Tolerance used by [`verify_chord_bound`].
pub const CHORD_BOUND_TOL: f64 = 5e-3;

/// Unit direction of the chords associated with `sigma`.
pub fn chord_direction(sigma: f64) -> Point2 {
    Point2::new(-sigma.sin(), sigma.cos())
}

/// The chord with direction `(−sin σ, cos σ)` splitting the area in half.
///
/// The chord is oriented along its direction, so `σ + π` returns the same
/// chord with swapped endpoints.
pub fn halving_chord_in_direction(body: &ConvexBody, sigma: f64) -> Chord {
    let normal = Point2::from_angle(sigma);
    let slicer = DirectionSlicer::new(body, normal);
    let (lo, hi) = slicer.range();
    let half = 0.5 * body.area();
    let t = bisect_increasing(|t| slicer.cut(t).0, lo, hi, half, 1e-12 * body.area());
    let (_, a, b) = slicer.cut(t);
    if (b - a).dot(chord_direction(sigma)) >= 0.0 {
        Chord::new(a, b)
    } else {
        Chord::new(b, a)
    }
}

/// Shortest halving chord with the angle `σ ∈ [0, π)` of its direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChordSolution {
    pub chord: Chord,
    pub length: f64,
    pub sigma: f64,
}

pub fn shortest_halving_chord(body: &ConvexBody) -> ChordSolution {
    shortest_halving_chord_with(body, DIRECTION_GRID)
}

/// Grid over `[0, π)` followed by golden-section refinement around each
/// local minimum of the grid; ties go to the smallest `σ`.
pub fn shortest_halving_chord_with(body: &ConvexBody, grid: usize) -> ChordSolution {
    let grid = grid.max(8);
    let h = PI / grid as f64;
    let len = |s: f64| halving_chord_in_direction(body, s).length();
    let samples: Vec<f64> = (0..grid).into_par_iter().map(|k| len(k as f64 * h)).collect();

    let best_grid = samples.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut candidates: Vec<usize> = (0..grid)
        .filter(|&k| {
            let (prev, next) = (samples[(k + grid - 1) % grid], samples[(k + 1) % grid]);
            samples[k] <= prev && samples[k] <= next && samples[k] <= best_grid * (1.0 + 1e-2)
        })
        .collect();
    if candidates.is_empty() {
        candidates.push(0);
    }

    let mut best: Option<ChordSolution> = None;
    for k in candidates {
        let center = k as f64 * h;
        let (s, _) = golden_section(len, center - h, center + h, ANGLE_TOL);
        let (s, l) = if len(center) <= len(s) { (center, len(center)) } else { (s, len(s)) };
        let sigma = s.rem_euclid(PI);
        let sol = ChordSolution { chord: halving_chord_in_direction(body, sigma), length: l, sigma };
        best = match best {
            Some(b) if b.length < l - 1e-12 * l || (b.length <= l + 1e-12 * l && b.sigma <= sigma) => Some(b),
            _ => Some(sol),
        };
    }
    best.expect("at least one candidate")
}

/// Best corner cap at vertex `i`: the triangle cut by a chord between the
/// two edges adjacent to `i`. `None` for vertices that are not corners.
pub fn corner_cap(body: &ConvexBody, i: usize) -> Option<(f64, Chord, f64)> {
    if body.turning_angle(i) <= ANGULAR_RESOLUTION {
        return None;
    }
    let n = body.len();
    let v = body.vertex(i);
    let prev = body.vertex(i + n - 1);
    let next = body.vertex(i + 1);
    let alpha = body.interior_angle(i);
    let (cos_a, sin_a) = (alpha.cos(), alpha.sin());
    // Cut length² over cap area as a function of u/w, both legs measured from the corner.
    let q = |rho: f64| (rho * rho + 1.0 - 2.0 * rho * cos_a) / (0.5 * rho * sin_a);
    let (log_rho, _) = golden_section(|x| q(x.exp()), -8.0, 8.0, 1e-12);
    let rho = log_rho.exp();
    // Largest cap with that leg ratio fitting on the edges and below half the area.
    let (lp, ln) = (v.distance(prev), v.distance(next));
    let w_area = (0.5 * body.area() / (0.5 * rho * sin_a)).sqrt();
    let w = (lp / rho).min(ln).min(w_area);
    let u = rho * w;
    let a = v + (prev - v).normalized() * u;
    let b = v + (next - v).normalized() * w;
    let area = 0.5 * u * w * sin_a;
    Some((q(rho), Chord::new(b, a), area / body.area()))
}

/// Minimum over half-plane cuts of (cut length)² / (smaller part area),
/// scanning halving chords and corner caps.
pub fn relaxed_g(body: &ConvexBody) -> QuotientReport {
    let sol = shortest_halving_chord(body);
    let chord_value = 2.0 * sol.length * sol.length / body.area();
    let chord_witness = Witness::HalvingChord { chord: sol.chord };

    let caps: Vec<(Witness, f64, f64)> = (0..body.len())
        .filter_map(|i| corner_cap(body, i).map(|(q, chord, frac)| (Witness::CornerCap { vertex: i, chord }, q, frac)))
        .collect();
    let best_cap = caps.iter().cloned().min_by(|a, b| a.1.total_cmp(&b.1));

    let (witness, value, frac) = match best_cap {
        Some(cap) if cap.1 < chord_value => cap,
        _ => (chord_witness, chord_value, 0.5),
    };
    let mut ties = Vec::new();
    for (w, q, _) in std::iter::once((chord_witness, chord_value, 0.5)).chain(caps) {
        if w != witness && (q - value).abs() <= TIE_TOL * value {
            ties.push((w, q));
        }
    }
    if !ties.is_empty() {
        log::warn!("chord and corner-cap families tie at G = {value}");
    }
    let residuals = match chord_optimality_residuals(body, &sol.chord) {
        Ok(r) => vec![
            Residual { name: "chord_isosceles", value: r.isosceles },
            Residual { name: "chord_orthogonal", value: r.orthogonal },
        ],
        Err(_) => Vec::new(),
    };
    QuotientReport { value, witness, witness_area_fraction: frac, residuals, ties }
}

/// Optimality residuals of a halving chord.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChordResiduals {
    /// Difference of the angles the chord makes with the tangents at its ends.
    pub isosceles: f64,
    /// Largest deviation of the chord from the normal direction at either end.
    pub orthogonal: f64,
}

impl ChordResiduals {
    pub fn min(&self) -> f64 {
        self.isosceles.min(self.orthogonal)
    }
}

pub fn chord_optimality_residuals(body: &ConvexBody, chord: &Chord) -> Result<ChordResiduals> {
    let tol = body.eps_geom();
    let sa = body.locate_on_boundary(chord.a, tol)?;
    let sb = body.locate_on_boundary(chord.b, tol)?;
    let (_, ta) = body.boundary_point(sa);
    let (_, tb) = body.boundary_point(sb);
    let d = chord.b - chord.a;
    let angle_a = line_angle(ta, d);
    let angle_b = line_angle(tb, -d);
    Ok(ChordResiduals {
        isosceles: (angle_a - angle_b).abs(),
        orthogonal: (FRAC_PI_2 - angle_a).abs().max((FRAC_PI_2 - angle_b).abs()),
    })
}

/// Whether the half-plane quotient stays below the Auerbach value.
pub fn verify_chord_bound(body: &ConvexBody) -> bool {
    relaxed_g(body).value <= reference::g_auerbach() + CHORD_BOUND_TOL
}
