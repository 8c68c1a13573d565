//! Table of computed constants against closed-form or reference values.

use crate::arc::relaxed_c;
use crate::auerbach::build_auerbach;
use crate::chl::{self, ThetaProfile};
use crate::chord::relaxed_g;
use crate::error::Result;
use crate::generators::{disc_with_area, equilateral_triangle};
use crate::reference;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub name: &'static str,
    pub computed: f64,
    pub reference: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ReportRow {
    pub fn new(name: &'static str, computed: f64, reference: f64, tolerance: f64) -> Self {
        let deviation = (computed - reference).abs();
        Self { name, computed, reference, deviation, tolerance, pass: deviation <= tolerance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub all_pass: bool,
}

/// Four-digit reference value of the rounded-triangle integral constant.
pub const I_REFERENCE: f64 = 0.2949;

/// Computes every row; `auerbach_samples` segments per curved part.
pub fn constants_report(auerbach_samples: usize) -> Result<Report> {
    let disc = disc_with_area(1.0);
    let triangle = equilateral_triangle(1.0);
    let auerbach = build_auerbach(auerbach_samples);
    let rounded = chl::build(&ThetaProfile::rounded_triangle(1.0)?)?;
    let chl_disc = chl::build(&ThetaProfile::disc(1.0)?)?;
    let rows = vec![
        ReportRow::new("disc C = 8/pi", relaxed_c(&disc).value, reference::c_disc(), 5e-3),
        ReportRow::new("triangle C = 2pi/3", relaxed_c(&triangle).value, reference::c_equilateral(), 2e-3),
        ReportRow::new("Auerbach G", relaxed_g(&auerbach.body).value, reference::g_auerbach(), 2e-3),
        ReportRow::new("Auerbach C", relaxed_c(&auerbach.body).value, reference::c_auerbach(), 2e-3),
        ReportRow::new("Auerbach area", auerbach.body.area(), reference::auerbach_area(), 1e-4),
        ReportRow::new("rounded triangle area / L^2", rounded.shoelace_area(), chl::rounded_triangle_area_analytic(1.0), 1e-3),
        ReportRow::new("rounded triangle I", chl::rounded_triangle_i(), I_REFERENCE, 1e-4),
        ReportRow::new("CHL disc area = pi L^2/4", chl_disc.shoelace_area(), reference::chl_disc_area(1.0), 1e-5),
    ];
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(Report { rows, all_pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_deviation() {
        let r = ReportRow::new("x", 1.0, 1.5, 0.5);
        assert_eq!(r.deviation, 0.5);
        assert!(r.pass);
        assert!(!ReportRow::new("x", 1.0, 1.5, 0.4).pass);
    }

    #[test]
    fn coarse_report_passes() {
        let rep = constants_report(1024).unwrap();
        assert_eq!(rep.rows.len(), 8);
        for r in &rep.rows {
            assert!(r.pass, "{r:?}");
        }
        assert!(rep.all_pass);
    }
}
