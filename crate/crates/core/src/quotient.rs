//! Result type shared by the chord and arc quotients.

use crate::geometry::{Chord, CircularArc};
use serde::Serialize;

/// Which candidate family produced a quotient value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Area-halving chord.
    HalvingChord { chord: Chord },
    /// Triangle cut off at a corner by a chord meeting both adjacent edges.
    CornerCap { vertex: usize, chord: Chord },
    /// Area-halving circular arc (possibly straight).
    HalvingArc { arc: CircularArc },
    /// Circular sector centred at a corner with both sides on the boundary.
    Sector { vertex: usize, arc: CircularArc },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::HalvingChord { .. } => "halving-chord",
            Witness::CornerCap { .. } => "corner-cap",
            Witness::HalvingArc { .. } => "halving-arc",
            Witness::Sector { .. } => "sector",
        }
    }

    /// The cut as an arc (chords have zero opening).
    pub fn cut(&self) -> CircularArc {
        match *self {
            Witness::HalvingChord { chord } | Witness::CornerCap { chord, .. } => chord.as_arc(),
            Witness::HalvingArc { arc } | Witness::Sector { arc, .. } => arc,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub name: &'static str,
    pub value: f64,
}

/// Value of a fencing quotient with its minimising cut.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientReport {
    pub value: f64,
    pub witness: Witness,
    /// Area of the cut-off part over the body area, in `(0, 1/2]`.
    pub witness_area_fraction: f64,
    pub residuals: Vec<Residual>,
    /// Other families whose value ties with the minimum within `1e-6`.
    pub ties: Vec<(Witness, f64)>,
}

impl QuotientReport {
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|r| r.name == name).map(|r| r.value)
    }
}

/// Relative gap below which two candidate families count as tied.
pub const TIE_TOL: f64 = 1e-6;
