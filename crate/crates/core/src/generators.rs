//! Test bodies: regular polygons, ellipses and random convex polygons.

use crate::error::{FenceError, Result};
use crate::geometry::{ConvexBody, Point2};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Regular `n`-gon inscribed in the circle of the given radius, first vertex on the x-axis.
pub fn regular_ngon(n: usize, radius: f64) -> Result<ConvexBody> {
    if n < 3 {
        return Err(FenceError::TooFewVertices(n));
    }
    ConvexBody::new((0..n).map(|k| Point2::from_angle(TAU * k as f64 / n as f64) * radius).collect())
}

/// Regular 4096-gon scaled to the given area.
pub fn disc_with_area(area: f64) -> ConvexBody {
    let n = 4096.0;
    let r = (2.0 * area / (n * (TAU / n).sin())).sqrt();
    regular_ngon(4096, r).expect("valid polygon")
}

/// Equilateral triangle with horizontal base starting at the origin.
pub fn equilateral_triangle(side: f64) -> ConvexBody {
    ConvexBody::new(vec![
        Point2::new(0.0, 0.0),
        Point2::new(side, 0.0),
        Point2::new(0.5 * side, 0.5 * 3f64.sqrt() * side),
    ])
    .expect("valid triangle")
}

/// Axis-aligned rectangle centred at the origin.
pub fn rectangle(width: f64, height: f64) -> ConvexBody {
    let (w, h) = (0.5 * width, 0.5 * height);
    ConvexBody::new(vec![Point2::new(-w, -h), Point2::new(w, -h), Point2::new(w, h), Point2::new(-w, h)])
        .expect("valid rectangle")
}

/// Ellipse with semi-axes `a`, `b` sampled at `n` equally spaced parameter values.
pub fn ellipse(a: f64, b: f64, n: usize) -> Result<ConvexBody> {
    ConvexBody::new(
        (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                Point2::new(a * t.cos(), b * t.sin())
            })
            .collect(),
    )
}

/// Random convex polygon with `n` vertices by Valtr's method.
///
/// Two sorted coordinate samples are split into monotone chains, their
/// increments paired at random and the resulting edge vectors sorted by angle.
pub fn valtr<R: Rng>(n: usize, rng: &mut R) -> Result<ConvexBody> {
    if n < 3 {
        return Err(FenceError::TooFewVertices(n));
    }
    let mut xs: Vec<f64> = (0..n).map(|_| rng.random()).collect();
    let mut ys: Vec<f64> = (0..n).map(|_| rng.random()).collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let mut dx = chain_increments(&xs, rng);
    let dy = chain_increments(&ys, rng);
    dx.shuffle(rng);
    let mut edges: Vec<Point2> = dx.into_iter().zip(dy).map(|(x, y)| Point2::new(x, y)).collect();
    edges.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
    let mut p = Point2::ORIGIN;
    let mut pts = Vec::with_capacity(n);
    for e in edges {
        pts.push(p);
        p += e;
    }
    ConvexBody::hull(&pts)
}

/// Increments of a random split of the sorted values into two chains from min to max.
fn chain_increments<R: Rng>(sorted: &[f64], rng: &mut R) -> Vec<f64> {
    let n = sorted.len();
    let (min, max) = (sorted[0], sorted[n - 1]);
    let mut out = Vec::with_capacity(n);
    let (mut last_a, mut last_b) = (min, min);
    for &v in &sorted[1..n - 1] {
        if rng.random_bool(0.5) {
            out.push(v - last_a);
            last_a = v;
        } else {
            out.push(last_b - v);
            last_b = v;
        }
    }
    out.push(max - last_a);
    out.push(last_b - max);
    out
}

/// Valtr polygon for sweep index `index` under `seed`, vertex count uniform in
/// `[3, 16]`, centred at its centroid and scaled to unit area.
pub fn sweep_body(seed: u64, index: u64) -> ConvexBody {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let n = rng.random_range(3..=16);
        if let Ok(body) = valtr(n, &mut rng) {
            return body.normalized_unit_area();
        }
    }
}

/// Random centrosymmetric convex polygon about the origin: `m` random
/// directions in `[0, π)` with random radii, mirrored and convex-hulled.
pub fn random_centrosymmetric<R: Rng>(m: usize, rng: &mut R) -> Result<ConvexBody> {
    let m = m.max(2);
    let mut pts = Vec::with_capacity(2 * m);
    for _ in 0..m {
        let phi = rng.random_range(0.0..PI);
        let r = rng.random_range(0.2..1.0);
        let p = Point2::from_angle(phi) * r;
        pts.push(p);
        pts.push(-p);
    }
    ConvexBody::hull(&pts)
}

/// Body description accepted on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BodySpec {
    Vertices { vertices: Vec<Point2> },
    Generated(Generator),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    RegularNgon {
        n: usize,
        #[serde(default = "one")]
        radius: f64,
    },
    RandomValtr { n: usize, seed: u64 },
}

fn one() -> f64 {
    1.0
}

impl BodySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| FenceError::InvalidInput(e.to_string()))
    }

    pub fn build(&self) -> Result<ConvexBody> {
        match self {
            BodySpec::Vertices { vertices } => ConvexBody::new(vertices.clone()),
            BodySpec::Generated(Generator::RegularNgon { n, radius }) => regular_ngon(*n, *radius),
            BodySpec::Generated(Generator::RandomValtr { n, seed }) => {
                valtr(*n, &mut ChaCha8Rng::seed_from_u64(*seed))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valtr_is_convex_with_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..30 {
            let body = valtr(n, &mut rng).unwrap();
            assert!(body.len() <= n && body.len() >= 3);
            assert!(body.area() > 0.0);
        }
    }

    #[test]
    fn sweep_bodies_are_deterministic_and_unit_area() {
        for i in 0..20 {
            let a = sweep_body(1, i);
            let b = sweep_body(1, i);
            assert_eq!(a, b);
            assert!((a.area() - 1.0).abs() < 1e-12);
            assert!(a.centroid().norm() < 1e-12);
        }
        assert_ne!(sweep_body(1, 0), sweep_body(2, 0));
    }

    #[test]
    fn centrosymmetric_bodies_are_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let body = random_centrosymmetric(8, &mut rng).unwrap();
            for &v in body.vertices() {
                assert!(body.vertices().iter().any(|w| (*w + v).norm() < 1e-12));
            }
        }
    }

    #[test]
    fn body_json_forms() {
        let v = BodySpec::from_json(r#"{"vertices": [[0,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(v.build().unwrap().area(), 0.5);
        let g = BodySpec::from_json(r#"{"kind":"regular-ngon","n":4096,"radius":1}"#).unwrap();
        assert!((g.build().unwrap().area() - PI).abs() < 1e-5);
        let r = BodySpec::from_json(r#"{"kind":"random-valtr","n":10,"seed":5}"#).unwrap();
        assert_eq!(r.build().unwrap(), r.build().unwrap());
        assert!(BodySpec::from_json(r#"{"kind":"blob"}"#).is_err());
    }

    #[test]
    fn disc_area_scaling() {
        assert!((disc_with_area(1.0).area() - 1.0).abs() < 1e-12);
    }
}
