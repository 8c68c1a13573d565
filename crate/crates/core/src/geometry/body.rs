use super::arc::{arc_length, segment_area, Chord, CircularArc};
use super::point::Point2;
use crate::error::{FenceError, Result};
use serde::Serialize;
use std::f64::consts::TAU;

/// Relative tolerance for "point lies on the boundary" (times boundary length).
pub const GEOM_REL_EPS: f64 = 1e-9;
/// Relative tolerance for convexity of consecutive edges (times boundary length²).
pub const CONVEX_REL_EPS: f64 = 1e-12;
/// Turning angles below this count as a smooth (regular) boundary point.
pub const ANGULAR_RESOLUTION: f64 = TAU / 1024.0;

/// Closed convex polygon with counterclockwise vertices.
///
/// Smooth bodies are represented by dense polygons. Boundary length, area,
/// cumulative arc length and prefix shoelace sums are cached at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    vertices: Vec<Point2>,
    perimeter: f64,
    area: f64,
    cum_length: Vec<f64>,
    prefix_cross: Vec<f64>,
}

/// Outcome of splitting a body along a cut.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitResult {
    /// Area of the part to the left of the cut's direction `a → b`.
    pub area_left: f64,
    /// Area of the part to the right of `a → b`.
    pub area_right: f64,
    pub cut_length: f64,
    /// Body boundary length belonging to the left part.
    pub perim_left: f64,
    /// Body boundary length belonging to the right part.
    pub perim_right: f64,
}

impl ConvexBody {
    /// Validates and builds a body from counterclockwise vertices.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(FenceError::TooFewVertices(n));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(FenceError::NonFinite(i));
        }
        let body = Self::with_caches(vertices);
        if !(body.perimeter > 0.0) {
            return Err(FenceError::Degenerate("zero boundary length".into()));
        }
        let eps_geom = body.eps_geom();
        let eps_convex = body.eps_convex();
        let mut turning = 0.0;
        for i in 0..n {
            let j = (i + 1) % n;
            if body.vertices[i].distance(body.vertices[j]) <= eps_geom {
                return Err(FenceError::CoincidentVertices(i, j));
            }
            let prev = body.vertices[i] - body.vertices[(i + n - 1) % n];
            let next = body.vertices[j] - body.vertices[i];
            let cross = prev.cross(next);
            if cross < -eps_convex {
                return Err(FenceError::NotConvex { index: i, cross });
            }
            turning += cross.atan2(prev.dot(next));
        }
        if (turning - TAU).abs() > 1e-6 {
            return Err(FenceError::Degenerate(format!("total turning {turning} is not 2π")));
        }
        if !(body.area > 0.0) {
            return Err(FenceError::Degenerate("non-positive area".into()));
        }
        Ok(body)
    }

    /// Drops consecutive (near-)duplicate points, then validates.
    pub fn from_points_dedup(points: Vec<Point2>) -> Result<Self> {
        Self::new(dedup_closed(points, GEOM_REL_EPS))
    }

    /// Convex hull of an arbitrary point set (Andrew's monotone chain).
    pub fn hull(points: &[Point2]) -> Result<Self> {
        let mut pts: Vec<Point2> = points.to_vec();
        pts.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
        pts.dedup();
        if pts.len() < 3 {
            return Err(FenceError::TooFewVertices(pts.len()));
        }
        let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &Point2>> =
                if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
            for &p in iter {
                while hull.len() >= start + 2 {
                    let a = hull[hull.len() - 2];
                    let b = hull[hull.len() - 1];
                    if (b - a).cross(p - b) <= 0.0 {
                        hull.pop();
                    } else {
                        break;
                    }
                }
                hull.push(p);
            }
            hull.pop();
        }
        Self::from_points_dedup(hull)
    }

    fn with_caches(vertices: Vec<Point2>) -> Self {
        let n = vertices.len();
        let mut cum_length = Vec::with_capacity(n + 1);
        let mut prefix_cross = Vec::with_capacity(n + 1);
        cum_length.push(0.0);
        prefix_cross.push(0.0);
        let (mut len, mut cross) = (0.0, 0.0);
        for i in 0..n {
            let p = vertices[i];
            let q = vertices[(i + 1) % n];
            len += p.distance(q);
            cross += p.cross(q);
            cum_length.push(len);
            prefix_cross.push(cross);
        }
        Self { vertices, perimeter: len, area: 0.5 * cross, cum_length, prefix_cross }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Boundary length.
    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn eps_geom(&self) -> f64 {
        GEOM_REL_EPS * self.perimeter
    }

    pub fn eps_convex(&self) -> f64 {
        CONVEX_REL_EPS * self.perimeter * self.perimeter
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` as (start, end).
    #[inline]
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        (self.vertex(i), self.vertex(i + 1))
    }

    /// Unit outward normal of edge `i`.
    pub fn outward_normal(&self, i: usize) -> Point2 {
        let (p, q) = self.edge(i);
        let d = (q - p).normalized();
        Point2::new(d.y, -d.x)
    }

    /// Interior angle at vertex `i`.
    pub fn interior_angle(&self, i: usize) -> f64 {
        let n = self.len();
        let prev = self.vertex(i) - self.vertex(i + n - 1);
        let next = self.vertex(i + 1) - self.vertex(i);
        std::f64::consts::PI - prev.cross(next).atan2(prev.dot(next))
    }

    /// Exterior (turning) angle at vertex `i`.
    pub fn turning_angle(&self, i: usize) -> f64 {
        std::f64::consts::PI - self.interior_angle(i)
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        let i = i % self.len();
        self.cum_length[i + 1] - self.cum_length[i]
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.len();
        let mut c = Point2::ORIGIN;
        for i in 0..n {
            let (p, q) = self.edge(i);
            c += (p + q) * p.cross(q);
        }
        c * (1.0 / (6.0 * self.area))
    }

    pub fn translated(&self, v: Point2) -> Self {
        Self::with_caches(self.vertices.iter().map(|&p| p + v).collect())
    }

    pub fn rotated(&self, phi: f64) -> Self {
        Self::with_caches(self.vertices.iter().map(|&p| p.rotated(phi)).collect())
    }

    /// Homothety about the origin.
    pub fn scaled(&self, k: f64) -> Self {
        Self::with_caches(self.vertices.iter().map(|&p| p * k).collect())
    }

    /// Copy centred at its centroid and scaled to unit area.
    pub fn normalized_unit_area(&self) -> Self {
        let c = self.centroid();
        let k = 1.0 / self.area.sqrt();
        Self::with_caches(self.vertices.iter().map(|&p| (p - c) * k).collect())
    }

    /// Whether `p` is inside the closed body, up to `tol`.
    pub fn contains_point(&self, p: Point2, tol: f64) -> bool {
        (0..self.len()).all(|i| self.outward_normal(i).dot(p - self.vertex(i)) <= tol)
    }

    /// Minimal distance between two parallel supporting lines (rotating calipers).
    pub fn width(&self) -> f64 {
        self.width_with_direction().0
    }

    /// Width and the unit normal of the minimising slab.
    pub fn width_with_direction(&self) -> (f64, Point2) {
        let n = self.len();
        let dist = |i: usize, j: usize| -self.outward_normal(i).dot(self.vertex(j) - self.vertex(i));
        let mut j = (0..n).max_by(|&a, &b| dist(0, a).total_cmp(&dist(0, b))).unwrap_or(0);
        let mut best = (f64::INFINITY, Point2::ORIGIN);
        for i in 0..n {
            let mut steps = 0;
            while steps < n && dist(i, j + 1) >= dist(i, j) {
                j = (j + 1) % n;
                steps += 1;
            }
            let d = dist(i, j);
            if d < best.0 {
                best = (d, self.outward_normal(i));
            }
        }
        best
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let dist = |i: usize, j: usize| -self.outward_normal(i).dot(self.vertex(j) - self.vertex(i));
        let mut j = (0..n).max_by(|&a, &b| dist(0, a).total_cmp(&dist(0, b))).unwrap_or(0);
        let mut best: f64 = 0.0;
        for i in 0..n {
            let mut steps = 0;
            while steps < n && dist(i, j + 1) >= dist(i, j) {
                j = (j + 1) % n;
                steps += 1;
                best = best.max(self.vertex(i).distance(self.vertex(j)));
                best = best.max(self.vertex(i + 1).distance(self.vertex(j)));
            }
            best = best.max(self.vertex(i).distance(self.vertex(j)));
            best = best.max(self.vertex(i + 1).distance(self.vertex(j)));
        }
        best
    }

    /// Edge index containing the absolute boundary position `ell ∈ [0, perimeter)`.
    /// At a vertex the following edge is returned.
    pub fn edge_at_length(&self, ell: f64) -> usize {
        let k = self.cum_length.partition_point(|&c| c <= ell);
        k.saturating_sub(1).min(self.len() - 1)
    }

    /// Boundary point at absolute arc length `ell` (wrapped) and its edge index.
    pub fn point_at_length(&self, ell: f64) -> (Point2, usize) {
        let ell = ell.rem_euclid(self.perimeter);
        let e = self.edge_at_length(ell);
        let (p, q) = self.edge(e);
        let len = self.edge_length(e);
        let t = if len > 0.0 { ((ell - self.cum_length[e]) / len).clamp(0.0, 1.0) } else { 0.0 };
        (p.lerp(q, t), e)
    }

    /// Point and counterclockwise unit tangent at normalised arc length `s ∈ [0, 1)`.
    /// At a vertex the tangent of the following edge is used.
    pub fn boundary_point(&self, s: f64) -> (Point2, Point2) {
        let (p, e) = self.point_at_length(s.rem_euclid(1.0) * self.perimeter);
        let (a, b) = self.edge(e);
        (p, (b - a).normalized())
    }

    /// Normalised boundary parameter of the boundary point nearest to `p`,
    /// together with the distance to it.
    pub fn locate(&self, p: Point2) -> (f64, f64) {
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..self.len() {
            let (a, b) = self.edge(i);
            let d = b - a;
            let len2 = d.dot(d);
            let t = if len2 > 0.0 { ((p - a).dot(d) / len2).clamp(0.0, 1.0) } else { 0.0 };
            let dist = p.distance(a + d * t);
            if dist < best.0 {
                let ell = if t >= 1.0 - 1e-12 { self.cum_length[i + 1] } else { self.cum_length[i] + t * self.edge_length(i) };
                best = (dist, ell);
            }
        }
        let s = (best.1 / self.perimeter).rem_euclid(1.0);
        (if s >= 1.0 { 0.0 } else { s }, best.0)
    }

    /// Like [`locate`](Self::locate) but errors when `p` is farther than `tol` from the boundary.
    pub fn locate_on_boundary(&self, p: Point2, tol: f64) -> Result<f64> {
        let (s, distance) = self.locate(p);
        if distance > tol {
            return Err(FenceError::OffBoundary { x: p.x, y: p.y, distance });
        }
        Ok(s)
    }

    /// Sum of `v_k × v_{k+1}` over the edges from vertex `i` forward to vertex `j`.
    fn cross_range(&self, i: usize, j: usize) -> f64 {
        let n = self.len();
        let (i, j) = (i % n, j % n);
        if i <= j {
            self.prefix_cross[j] - self.prefix_cross[i]
        } else {
            self.prefix_cross[n] - self.prefix_cross[i] + self.prefix_cross[j]
        }
    }

    /// Twice the signed area of the region bounded by the boundary walked
    /// counterclockwise from `pa` (on edge `ea`) to `pb` (on edge `eb`) and the chord back.
    fn twice_area_ccw(&self, pa: Point2, ea: usize, pb: Point2, eb: usize, same_edge_forward: bool) -> f64 {
        if same_edge_forward {
            return 0.0;
        }
        pa.cross(self.vertex(ea + 1)) + self.cross_range(ea + 1, eb) + self.vertex(eb).cross(pb) + pb.cross(pa)
    }

    /// Area and boundary length of the part cut off by the chord between
    /// absolute boundary positions `l1` and `l2`, walking counterclockwise from `l1`.
    pub fn chord_part(&self, l1: f64, l2: f64) -> (f64, f64, Point2, Point2) {
        let p = self.perimeter;
        let l1 = l1.rem_euclid(p);
        let l2 = l2.rem_euclid(p);
        let (pa, ea) = self.point_at_length(l1);
        let (pb, eb) = self.point_at_length(l2);
        let forward = (l2 - l1).rem_euclid(p);
        let same_edge_forward = ea == eb && l2 >= l1;
        let area = 0.5 * self.twice_area_ccw(pa, ea, pb, eb, same_edge_forward);
        (area, forward, pa, pb)
    }

    /// Split along the arc joining boundary parameters `s1 → s2` (normalised)
    /// with the given opening. No containment check.
    pub fn split_params(&self, s1: f64, s2: f64, opening: f64) -> SplitResult {
        let (chord_area, forward, pa, pb) = self.chord_part(s1 * self.perimeter, s2 * self.perimeter);
        let c = pa.distance(pb);
        let area_right = chord_area - segment_area(c, opening);
        SplitResult {
            area_left: self.area - area_right,
            area_right,
            cut_length: arc_length(c, opening),
            perim_left: self.perimeter - forward,
            perim_right: forward,
        }
    }

    /// Split the body along `arc`, whose endpoints must lie on the boundary
    /// and whose interior must stay inside the body.
    pub fn split_by_arc(&self, arc: &CircularArc) -> Result<SplitResult> {
        let tol = self.eps_geom();
        let s1 = self.locate_on_boundary(arc.a, tol)?;
        let s2 = self.locate_on_boundary(arc.b, tol)?;
        if !self.contains_arc(arc, tol) {
            return Err(FenceError::ArcOutsideBody);
        }
        Ok(self.split_params(s1, s2, arc.opening))
    }

    /// Whether the arc lies inside the body up to `tol`.
    pub fn contains_arc(&self, arc: &CircularArc, tol: f64) -> bool {
        if !self.contains_point(arc.a, tol) || !self.contains_point(arc.b, tol) {
            return false;
        }
        let Some(c) = arc.center() else {
            return true;
        };
        let r = arc.radius();
        // The arc's farthest point in direction `nrm` is `c + r·nrm` when that
        // direction lies in the arc's angular span, otherwise an endpoint.
        let (ua, ub) = if arc.opening > 0.0 { (arc.a - c, arc.b - c) } else { (arc.b - c, arc.a - c) };
        let in_span = |v: Point2| {
            if arc.opening.abs() < std::f64::consts::PI {
                ua.cross(v) >= 0.0 && v.cross(ub) >= 0.0
            } else {
                arc.param_of_circle_point(c + v).is_some_and(|t| (0.0..=1.0).contains(&t))
            }
        };
        (0..self.len()).all(|i| {
            let nrm = self.outward_normal(i);
            !in_span(nrm) || nrm.dot(c - self.vertex(i)) + r <= tol
        })
    }

    /// Sub-body on the side `normal · (p − line_point) <= 0` and the chord along the line.
    pub fn clip_halfplane(&self, line_point: Point2, normal: Point2) -> (Option<ConvexBody>, Option<Chord>) {
        let n = self.len();
        let eps = self.eps_geom();
        let d: Vec<f64> = self.vertices.iter().map(|&p| normal.dot(p - line_point)).collect();
        if d.iter().all(|&v| v >= -eps) {
            return (None, None);
        }
        if d.iter().all(|&v| v <= eps) {
            return (Some(self.clone()), None);
        }
        let mut kept = Vec::with_capacity(n + 2);
        let mut cut_points = Vec::with_capacity(2);
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (self.vertices[i], self.vertices[j]);
            if d[i] <= 0.0 {
                kept.push(p);
            }
            if d[i] == 0.0 {
                cut_points.push(p);
            }
            if (d[i] < 0.0 && d[j] > 0.0) || (d[i] > 0.0 && d[j] < 0.0) {
                let x = p.lerp(q, d[i] / (d[i] - d[j]));
                kept.push(x);
                cut_points.push(x);
            }
        }
        let chord = chord_from_points(&cut_points, normal.perp(), eps);
        let body = ConvexBody::new(dedup_closed(kept, GEOM_REL_EPS)).ok();
        (body, chord)
    }

    /// Area of the part `normal · p <= offset`, without allocating.
    pub fn halfplane_area(&self, normal: Point2, offset: f64) -> f64 {
        let n = self.len();
        let mut first: Option<Point2> = None;
        let mut last = Point2::ORIGIN;
        let mut twice = 0.0;
        let mut emit = |p: Point2| {
            match first {
                None => first = Some(p),
                Some(_) => twice += last.cross(p),
            }
            last = p;
        };
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let dp = normal.dot(p) - offset;
            let dq = normal.dot(q) - offset;
            if dp <= 0.0 {
                emit(p);
            }
            if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
                emit(p.lerp(q, dp / (dp - dq)));
            }
        }
        if let Some(f) = first {
            twice += last.cross(f);
        }
        0.5 * twice
    }

    /// Whether the disc of radius `r` tangent to the boundary at `p` lies inside the body.
    ///
    /// The tangent at `p` follows [`boundary_point`](Self::boundary_point). A vertex
    /// turning by more than [`ANGULAR_RESOLUTION`] is a corner and admits no disc.
    /// Smaller turnings stand for a smooth boundary whose tangent is only known up
    /// to that angle, so the test allows the displacement `r·φ` of the disc that a
    /// tangent error `φ` produces.
    pub fn internal_disc_radius_check(&self, p: Point2, r: f64) -> Result<bool> {
        let s = self.locate_on_boundary(p, self.eps_geom())?;
        let (q, tangent) = self.boundary_point(s);
        let e = self.edge_at_length(s * self.perimeter);
        let mut phi: f64 = 0.0;
        for v in [e, e + 1] {
            let turn = self.turning_angle(v % self.len());
            let at_p = self.vertex(v).distance(q) <= self.eps_geom();
            if turn > ANGULAR_RESOLUTION {
                if at_p {
                    return Ok(false);
                }
            } else {
                phi = phi.max(turn);
            }
        }
        let center = q + tangent.perp() * r;
        let tol = self.eps_geom() + r * phi;
        Ok((0..self.len()).all(|i| {
            let nrm = self.outward_normal(i);
            nrm.dot(self.vertex(i) - center) >= r - tol
        }))
    }
}

/// Slices a body with lines of a fixed normal direction. Areas are computed
/// in `O(log n)` per offset after an `O(n)` setup.
pub(crate) struct DirectionSlicer<'a> {
    body: &'a ConvexBody,
    proj: Vec<f64>,
    imin: usize,
    imax: usize,
}

impl<'a> DirectionSlicer<'a> {
    pub fn new(body: &'a ConvexBody, normal: Point2) -> Self {
        let proj: Vec<f64> = body.vertices.iter().map(|&p| normal.dot(p)).collect();
        let mut imin = 0;
        let mut imax = 0;
        for (i, &v) in proj.iter().enumerate() {
            if v < proj[imin] {
                imin = i;
            }
            if v > proj[imax] {
                imax = i;
            }
        }
        Self { body, proj, imin, imax }
    }

    pub fn range(&self) -> (f64, f64) {
        (self.proj[self.imin], self.proj[self.imax])
    }

    /// Edge on the chain starting at `start` (length `len` edges) where the
    /// projection crosses `t`; `ascending` selects the comparison.
    fn crossing_edge(&self, start: usize, len: usize, t: f64, ascending: bool) -> usize {
        let n = self.proj.len();
        let at = |k: usize| self.proj[(start + k) % n];
        // Largest k in [0, len) whose vertex is still on the near side of t.
        let (mut lo, mut hi) = (0usize, len.max(1) - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            let ok = if ascending { at(mid) <= t } else { at(mid) >= t };
            if ok {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        (start + lo) % n
    }

    fn point_on_edge(&self, e: usize, t: f64) -> Point2 {
        let n = self.proj.len();
        let (p, q) = self.body.edge(e);
        let (dp, dq) = (self.proj[e], self.proj[(e + 1) % n]);
        if dq == dp {
            p
        } else {
            p.lerp(q, ((t - dp) / (dq - dp)).clamp(0.0, 1.0))
        }
    }

    /// Area of `normal · p <= t` and the two endpoints of the cut
    /// (on the ascending and descending chains respectively).
    pub fn cut(&self, t: f64) -> (f64, Point2, Point2) {
        let n = self.proj.len();
        let up_len = (self.imax + n - self.imin) % n;
        let down_len = (self.imin + n - self.imax) % n;
        let ea = self.crossing_edge(self.imin, up_len, t, true);
        let ed = self.crossing_edge(self.imax, down_len, t, false);
        let pa = self.point_on_edge(ea, t);
        let pd = self.point_on_edge(ed, t);
        let twice = pd.cross(self.body.vertex(ed + 1))
            + self.body.cross_range(ed + 1, ea)
            + self.body.vertex(ea).cross(pa)
            + pa.cross(pd);
        (0.5 * twice, pa, pd)
    }
}

fn chord_from_points(points: &[Point2], dir: Point2, eps: f64) -> Option<Chord> {
    let lo = points.iter().min_by(|p, q| dir.dot(**p).total_cmp(&dir.dot(**q)))?;
    let hi = points.iter().max_by(|p, q| dir.dot(**p).total_cmp(&dir.dot(**q)))?;
    (lo.distance(*hi) > eps).then(|| Chord::new(*lo, *hi))
}

/// Removes consecutive points (cyclically) closer than `rel_eps` times the closed polyline length.
pub(crate) fn dedup_closed(points: Vec<Point2>, rel_eps: f64) -> Vec<Point2> {
    let n = points.len();
    if n < 2 {
        return points;
    }
    let total: f64 = (0..n).map(|i| points[i].distance(points[(i + 1) % n])).sum();
    let eps = rel_eps * total;
    let mut out: Vec<Point2> = Vec::with_capacity(n);
    for p in points {
        if out.last().is_none_or(|q| q.distance(p) > eps) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].distance(out[out.len() - 1]) <= eps {
        out.pop();
    }
    out
}
