//! Falsification sweep over random unit-area convex polygons.

use crate::arc::relaxed_c_with;
use crate::chord::{relaxed_g, shortest_halving_chord};
use crate::generators::sweep_body;
use crate::reference;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

/// Slack allowed above the extremal values before a record is flagged.
pub const SWEEP_TOL: f64 = 5e-3;
/// Slack in `shortest chord ≤ width ≤ 3^{1/4}√|K|`.
pub const WIDTH_CHAIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub index: u64,
    pub seed: u64,
    pub vertices: usize,
    pub area: f64,
    pub c_value: f64,
    pub c_witness: &'static str,
    pub g_value: f64,
    pub g_witness: &'static str,
    pub shortest_chord: f64,
    pub width: f64,
    /// `3^{1/4}√|K|`.
    pub width_bound: f64,
    pub c_anomaly: bool,
    pub g_anomaly: bool,
    pub width_anomaly: bool,
    pub wall_ms: f64,
}

impl SweepRecord {
    pub fn anomaly(&self) -> bool {
        self.c_anomaly || self.g_anomaly || self.width_anomaly
    }

    pub fn descriptor(&self) -> String {
        format!("valtr(seed={},index={},n={})", self.seed, self.index, self.vertices)
    }
}

pub fn sweep_record(seed: u64, index: u64, arc_grid: usize) -> SweepRecord {
    let start = Instant::now();
    let body = sweep_body(seed, index);
    let c = relaxed_c_with(&body, arc_grid);
    let g = relaxed_g(&body);
    let shortest_chord = shortest_halving_chord(&body).length;
    let width = body.width();
    let area = body.area();
    let width_bound = 3f64.powf(0.25) * area.sqrt();
    SweepRecord {
        index,
        seed,
        vertices: body.len(),
        area,
        c_value: c.value,
        c_witness: c.witness.kind(),
        g_value: g.value,
        g_witness: g.witness.kind(),
        shortest_chord,
        width,
        width_bound,
        c_anomaly: c.value > reference::c_disc() + SWEEP_TOL,
        g_anomaly: g.value > reference::g_auerbach() + SWEEP_TOL,
        width_anomaly: shortest_chord > width + WIDTH_CHAIN_TOL || width > width_bound + WIDTH_CHAIN_TOL,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Records for indices `0..n`, computed in parallel and returned in index order.
pub fn run_sweep(n: u64, seed: u64, arc_grid: usize) -> Vec<SweepRecord> {
    (0..n).into_par_iter().map(|i| sweep_record(seed, i, arc_grid)).collect()
}
