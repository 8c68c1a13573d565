//! Closed-form reference values.

use std::f64::consts::{PI, SQRT_2};

/// `8 ln 3 − ln²3 − 4`.
pub fn auerbach_log_term() -> f64 {
    let l = 3f64.ln();
    8.0 * l - l * l - 4.0
}

/// Relaxed arc quotient of a disc.
pub fn c_disc() -> f64 {
    8.0 / PI
}

/// Vertex-sector quotient of the equilateral triangle.
pub fn c_equilateral() -> f64 {
    2.0 * PI / 3.0
}

/// Area of the Auerbach triangle with halving chords of unit length.
pub fn auerbach_area() -> f64 {
    3f64.sqrt() / 8.0 * auerbach_log_term()
}

/// Chord quotient of the Auerbach triangle, `2/|A|`.
pub fn g_auerbach() -> f64 {
    16.0 / (3f64.sqrt() * auerbach_log_term())
}

/// Arc quotient of the Auerbach triangle.
pub fn c_auerbach() -> f64 {
    8.0 * PI / (3.0 * auerbach_log_term())
}

/// Area of the constant-halving-length disc, `πL²/4`.
pub fn chl_disc_area(l: f64) -> f64 {
    PI * l * l / 4.0
}

/// Uniform internal disc radius guaranteed for constant-halving-length bodies.
pub fn chl_internal_radius(l: f64) -> f64 {
    l / (8.0 * (PI * 3f64.sqrt() / 12.0 + 1.0))
}

/// Rounded-triangle area over `L²` given the integral constant `i`.
pub fn rounded_triangle_area(i: f64) -> f64 {
    let t = 3.0 / (2.0 * PI) + i;
    9.0 / PI - 2.0 * 3f64.sqrt() * t * t
}

/// Upper bound of the Poincaré-type constant for the disc: `√2·√(8/π) = 4/√π`.
pub fn poincare_disc() -> f64 {
    SQRT_2 * c_disc().sqrt()
}
