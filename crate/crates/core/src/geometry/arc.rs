//! Convex planar regions bounded by line segments and circular arcs.
//!
//! Everything here is exact up to floating point: area by Green's theorem,
//! support by vertex/arc maximization, and clipping by half-planes and disks
//! through explicit segment/arc intersection.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector2;

use crate::error::{Error, Result};

pub type Pt2 = Vector2<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Edge {
    Line,
    /// Counter-clockwise arc about `center`; bulges outward.
    Arc {
        center: Pt2,
        radius: f64,
    },
}

/// Boundary is `vertices[i] -> vertices[i+1]` along `edges[i]`, counter-clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcPolygon {
    vertices: Vec<Pt2>,
    edges: Vec<Edge>,
}

/// Result of an exact width-function extremum search.
#[derive(Debug, Clone)]
pub struct WidthExtreme {
    pub value: f64,
    pub theta: f64,
    /// Every evaluated candidate angle in `[0, π)` with its width.
    pub candidates: Vec<(f64, f64)>,
}

fn norm_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

fn cross(a: Pt2, b: Pt2) -> f64 {
    a.x * b.y - a.y * b.x
}

fn unit(theta: f64) -> Pt2 {
    Pt2::new(theta.cos(), theta.sin())
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    p: Pt2,
    q: Pt2,
    kind: Edge,
    a0: f64,
    ext: f64,
}

impl Seg {
    fn at(&self, t: f64) -> Pt2 {
        match self.kind {
            Edge::Line => self.p + (self.q - self.p) * t,
            Edge::Arc { center, radius } => center + unit(self.a0 + t * self.ext) * radius,
        }
    }

    /// Parameter of a point known to lie on the arc's circle, if on the arc.
    fn arc_param(&self, x: Pt2) -> Option<f64> {
        if let Edge::Arc { center, .. } = self.kind {
            let a = (x - center).y.atan2((x - center).x);
            let d = norm_angle(a - self.a0);
            let d = if d > TAU - 1e-13 { 0.0 } else { d };
            (d <= self.ext).then_some(d / self.ext)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Clipper {
    Half { normal: Pt2, offset: f64 },
    Disk { center: Pt2, radius: f64 },
}

impl Clipper {
    fn inside(&self, x: Pt2, tol: f64) -> bool {
        match *self {
            Clipper::Half { normal, offset } => normal.dot(&x) <= offset + tol,
            Clipper::Disk { center, radius } => (x - center).norm() <= radius + tol,
        }
    }

    fn crossings(&self, s: &Seg) -> Vec<f64> {
        let mut ts = Vec::new();
        match (*self, s.kind) {
            (Clipper::Half { normal, offset }, Edge::Line) => {
                let den = normal.dot(&(s.q - s.p));
                if den.abs() > 1e-300 {
                    ts.push((offset - normal.dot(&s.p)) / den);
                }
            }
            (Clipper::Half { normal, offset }, Edge::Arc { center, radius }) => {
                let c = (offset - normal.dot(&center)) / radius;
                if c.abs() <= 1.0 {
                    let phi = normal.y.atan2(normal.x);
                    let da = c.acos();
                    for a in [phi + da, phi - da] {
                        if let Some(t) = s.arc_param(center + unit(a) * radius) {
                            ts.push(t);
                        }
                    }
                }
            }
            (Clipper::Disk { center, radius }, Edge::Line) => {
                let d = s.q - s.p;
                let f = s.p - center;
                let a = d.dot(&d);
                let b = 2.0 * f.dot(&d);
                let c = f.dot(&f) - radius * radius;
                let disc = b * b - 4.0 * a * c;
                if disc >= 0.0 && a > 0.0 {
                    let sq = disc.sqrt();
                    ts.push((-b - sq) / (2.0 * a));
                    ts.push((-b + sq) / (2.0 * a));
                }
            }
            (Clipper::Disk { center, radius }, Edge::Arc { center: c2, radius: r2 }) => {
                for x in circle_circle(center, radius, c2, r2) {
                    if let Some(t) = s.arc_param(x) {
                        ts.push(t);
                    }
                }
            }
        }
        ts.retain(|t| *t > 1e-12 && *t < 1.0 - 1e-12);
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        ts
    }

    fn connector(&self) -> Edge {
        match *self {
            Clipper::Half { .. } => Edge::Line,
            Clipper::Disk { center, radius } => Edge::Arc { center, radius },
        }
    }
}

fn circle_circle(c1: Pt2, r1: f64, c2: Pt2, r2: f64) -> Vec<Pt2> {
    let d = (c2 - c1).norm();
    if d < 1e-15 || d > r1 + r2 || d < (r1 - r2).abs() {
        return Vec::new();
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h2 = r1 * r1 - a * a;
    let h = if h2 > 0.0 { h2.sqrt() } else { 0.0 };
    let e = (c2 - c1) / d;
    let m = c1 + e * a;
    let perp = Pt2::new(-e.y, e.x);
    vec![m + perp * h, m - perp * h]
}

impl ArcPolygon {
    /// Builds and validates a convex, positively oriented arc polygon.
    pub fn new(vertices: Vec<Pt2>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.len() < 2 || vertices.len() != edges.len() {
            return Err(Error::InvalidInput(
                "arc polygon needs at least two vertices and one edge per vertex".into(),
            ));
        }
        let n = vertices.len();
        let scale = vertices.iter().fold(1.0f64, |s, v| s.max(v.norm()));
        for i in 0..n {
            if let Edge::Arc { center, radius } = edges[i] {
                if radius <= 0.0 {
                    return Err(Error::InvalidInput("arc radius must be positive".into()));
                }
                for v in [vertices[i], vertices[(i + 1) % n]] {
                    if ((v - center).norm() - radius).abs() > 1e-7 * scale.max(radius) {
                        return Err(Error::InvalidInput("arc endpoint is not on its circle".into()));
                    }
                }
            }
        }
        let poly = ArcPolygon { vertices, edges };
        if poly.area() <= 0.0 {
            return Err(Error::InvalidInput(
                "arc polygon must be positively oriented with nonempty interior".into(),
            ));
        }
        Ok(poly)
    }

    /// Convex polygon from counter-clockwise vertices.
    pub fn polygon(vertices: Vec<Pt2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::Degenerate("polygon needs three vertices".into()));
        }
        Self::new(vertices, vec![Edge::Line; n])
    }

    pub fn disk(center: Pt2, radius: f64) -> Self {
        let a = center + Pt2::new(radius, 0.0);
        let b = center - Pt2::new(radius, 0.0);
        let arc = Edge::Arc { center, radius };
        ArcPolygon {
            vertices: vec![a, b],
            edges: vec![arc, arc],
        }
    }

    /// Reuleaux triangle of width `w` with one vertex at the top.
    pub fn reuleaux_triangle(w: f64) -> Self {
        let r = w / 3f64.sqrt();
        let vs: Vec<Pt2> = (0..3).map(|k| unit(PI / 2.0 + TAU * k as f64 / 3.0) * r).collect();
        let edges = (0..3)
            .map(|i| Edge::Arc {
                center: vs[(i + 2) % 3],
                radius: w,
            })
            .collect();
        ArcPolygon { vertices: vs, edges }
    }

    /// Convex hull of points (Andrew's monotone chain), collinear points dropped.
    pub fn convex_hull(points: &[Pt2]) -> Result<Self> {
        let hull = hull_points(points);
        Self::polygon(hull)
    }

    /// Intersection of disks and half-planes `{x: n·x <= b}`, or `None` if it
    /// has empty interior.
    pub fn from_constraints(disks: &[(Pt2, f64)], halfplanes: &[(Pt2, f64)]) -> Option<Self> {
        let mut region = if let Some(&(c, r)) = disks.first() {
            ArcPolygon::disk(c, r)
        } else {
            // large box, clipped down below
            let big = 1e6;
            ArcPolygon::polygon(vec![
                Pt2::new(-big, -big),
                Pt2::new(big, -big),
                Pt2::new(big, big),
                Pt2::new(-big, big),
            ])
            .ok()?
        };
        for &(c, r) in disks.iter().skip(1) {
            region = region.clip_disk(c, r)?;
        }
        for &(n, b) in halfplanes {
            region = region.clip_halfplane(n, b)?;
        }
        Some(region)
    }

    pub fn vertices(&self) -> &[Pt2] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_polygon(&self) -> bool {
        self.edges.iter().all(|e| matches!(e, Edge::Line))
    }

    fn seg(&self, i: usize) -> Seg {
        let n = self.vertices.len();
        let p = self.vertices[i];
        let q = self.vertices[(i + 1) % n];
        match self.edges[i] {
            Edge::Line => Seg {
                p,
                q,
                kind: Edge::Line,
                a0: 0.0,
                ext: 0.0,
            },
            Edge::Arc { center, radius } => {
                let a0 = (p - center).y.atan2((p - center).x);
                let a1 = (q - center).y.atan2((q - center).x);
                let mut ext = norm_angle(a1 - a0);
                if ext < 1e-14 {
                    ext = TAU;
                }
                Seg {
                    p,
                    q,
                    kind: Edge::Arc { center, radius },
                    a0,
                    ext,
                }
            }
        }
    }

    fn segs(&self) -> Vec<Seg> {
        (0..self.vertices.len()).map(|i| self.seg(i)).collect()
    }

    pub fn scale(&self) -> f64 {
        let mut s = 0.0f64;
        for (v, e) in self.vertices.iter().zip(&self.edges) {
            s = s.max(v.norm());
            if let Edge::Arc { center, radius } = e {
                s = s.max(center.norm() + radius);
            }
        }
        s.max(1e-300)
    }

    pub fn area(&self) -> f64 {
        self.segs()
            .iter()
            .map(|s| match s.kind {
                Edge::Line => 0.5 * cross(s.p, s.q),
                Edge::Arc { center, radius } => {
                    let a1 = s.a0 + s.ext;
                    0.5 * (radius * center.x * (a1.sin() - s.a0.sin()) - radius * center.y * (a1.cos() - s.a0.cos())
                        + radius * radius * s.ext)
                }
            })
            .sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.segs()
            .iter()
            .map(|s| match s.kind {
                Edge::Line => (s.q - s.p).norm(),
                Edge::Arc { radius, .. } => radius * s.ext,
            })
            .sum()
    }

    /// Support function `max_{x in K} x·u` for unit `u`.
    pub fn support(&self, u: Pt2) -> f64 {
        self.support_point(u).1
    }

    /// Maximizer and value of `x·u`.
    pub fn support_point(&self, u: Pt2) -> (Pt2, f64) {
        let (c, r, h) = self.support_feature(u);
        if r > 0.0 {
            (c + u / u.norm() * r, h)
        } else {
            (c, h)
        }
    }

    /// Feature attaining the support in direction `u`: a vertex `(v, 0)` or an
    /// arc `(center, radius)`, with the support value.
    fn support_feature(&self, u: Pt2) -> (Pt2, f64, f64) {
        let mut best = (self.vertices[0], 0.0, self.vertices[0].dot(&u));
        for v in &self.vertices[1..] {
            let val = v.dot(&u);
            if val > best.2 {
                best = (*v, 0.0, val);
            }
        }
        let theta = u.y.atan2(u.x);
        let un = u.norm();
        for s in self.segs() {
            if let Edge::Arc { center, radius } = s.kind {
                if norm_angle(theta - s.a0) <= s.ext {
                    let val = center.dot(&u) + radius * un;
                    if val > best.2 {
                        best = (center, radius, val);
                    }
                }
            }
        }
        best
    }

    pub fn width(&self, u: Pt2) -> f64 {
        self.support(u) + self.support(-u)
    }

    pub fn contains(&self, x: Pt2, tol: f64) -> bool {
        let segs = self.segs();
        let side = |s: &Seg| cross(s.q - s.p, x - s.p) / (s.q - s.p).norm().max(1e-300);
        if self.vertices.len() > 2 && segs.iter().all(|s| side(s) >= -tol) {
            return true;
        }
        segs.iter().any(|s| match s.kind {
            Edge::Arc { center, radius } => side(s) <= tol && (x - center).norm() <= radius + tol,
            Edge::Line => false,
        })
    }

    /// Nearest boundary point and its distance from `x`.
    pub fn nearest_boundary(&self, x: Pt2) -> (Pt2, f64) {
        let mut best = (self.vertices[0], f64::INFINITY);
        for s in self.segs() {
            let cand = match s.kind {
                Edge::Line => {
                    let d = s.q - s.p;
                    let t = ((x - s.p).dot(&d) / d.dot(&d)).clamp(0.0, 1.0);
                    s.p + d * t
                }
                Edge::Arc { center, radius } => {
                    let v = x - center;
                    let on_arc = if v.norm() > 1e-300 {
                        let p = center + v / v.norm() * radius;
                        s.arc_param(p).map(|_| p)
                    } else {
                        None
                    };
                    on_arc.unwrap_or_else(|| if (s.p - x).norm() < (s.q - x).norm() { s.p } else { s.q })
                }
            };
            let d = (cand - x).norm();
            if d < best.1 {
                best = (cand, d);
            }
        }
        best
    }

    /// Mean of the vertices; an interior point for convex regions.
    pub fn vertex_centroid(&self) -> Pt2 {
        let mut c = Pt2::zeros();
        for v in &self.vertices {
            c += v;
        }
        c /= self.vertices.len() as f64;
        if self.vertices.len() == 2 {
            // two-vertex regions: push toward the arcs
            let mut acc = c;
            let mut k = 1.0;
            for s in self.segs() {
                if let Edge::Arc { center, radius } = s.kind {
                    acc += center + unit(s.a0 + 0.5 * s.ext) * radius;
                    k += 1.0;
                }
            }
            return acc / k;
        }
        c
    }

    pub fn clip_halfplane(&self, normal: Pt2, offset: f64) -> Option<Self> {
        self.clip(Clipper::Half { normal, offset })
    }

    pub fn clip_disk(&self, center: Pt2, radius: f64) -> Option<Self> {
        self.clip(Clipper::Disk { center, radius })
    }

    fn clip(&self, clipper: Clipper) -> Option<Self> {
        let scale = self.scale();
        let tol = 1e-11 * scale;
        let mut pieces: Vec<(Pt2, Pt2, Edge, bool)> = Vec::new();
        for s in self.segs() {
            let ts = clipper.crossings(&s);
            let mut bounds = vec![0.0];
            bounds.extend(ts);
            bounds.push(1.0);
            for w in bounds.windows(2) {
                let (a, b) = (w[0], w[1]);
                let mid = s.at(0.5 * (a + b));
                let pa = if a == 0.0 { s.p } else { s.at(a) };
                let pb = if b == 1.0 { s.q } else { s.at(b) };
                pieces.push((pa, pb, s.kind, clipper.inside(mid, tol)));
            }
        }
        let kept = pieces.iter().filter(|p| p.3).count();
        if kept == pieces.len() {
            return Some(self.clone());
        }
        if kept == 0 {
            if let Clipper::Disk { center, radius } = clipper {
                if self.contains(center, 0.0) {
                    let disk = ArcPolygon::disk(center, radius);
                    if disk.vertices.iter().all(|v| self.contains(*v, tol)) {
                        return Some(disk);
                    }
                }
            }
            return None;
        }
        let n = pieces.len();
        let start = (0..n).find(|&k| pieces[k].3 && !pieces[(k + n - 1) % n].3)?;
        let mut verts = Vec::new();
        let mut edges = Vec::new();
        let mut k = start;
        loop {
            let (pa, pb, kind, _) = pieces[k];
            verts.push(pa);
            edges.push(kind);
            let next = (k + 1) % n;
            if !pieces[next].3 {
                // skip the dropped run and bridge along the clipper boundary
                let mut j = next;
                while !pieces[j].3 {
                    j = (j + 1) % n;
                }
                let resume = pieces[j].0;
                if (resume - pb).norm() > tol {
                    verts.push(pb);
                    edges.push(clipper.connector());
                }
                k = j;
            } else {
                k = next;
            }
            if k == start {
                break;
            }
        }
        Self::cleaned(verts, edges, scale)
    }

    fn cleaned(verts: Vec<Pt2>, edges: Vec<Edge>, scale: f64) -> Option<Self> {
        let merge = 1e-12 * scale;
        let mut vs: Vec<Pt2> = Vec::new();
        let mut es: Vec<Edge> = Vec::new();
        for (v, e) in verts.into_iter().zip(edges) {
            if let Some(last) = vs.last() {
                if (v - last).norm() <= merge {
                    // zero-length previous edge: keep the current edge kind
                    *es.last_mut().unwrap() = e;
                    continue;
                }
            }
            vs.push(v);
            es.push(e);
        }
        while vs.len() > 1 && (vs[0] - vs[vs.len() - 1]).norm() <= merge {
            vs.pop();
            es.pop();
        }
        if vs.len() < 2 {
            return None;
        }
        let poly = ArcPolygon {
            vertices: vs,
            edges: es,
        };
        let a = poly.area();
        if !(a > 1e-14 * scale * scale) {
            return None;
        }
        Some(poly)
    }

    /// Removes the plank `lo <= n·x <= hi` and returns the convex remainders.
    pub fn minus_plank(&self, normal: Pt2, lo: f64, hi: f64) -> Vec<Self> {
        let mut out = Vec::new();
        if let Some(p) = self.clip_halfplane(normal, lo) {
            out.push(p);
        }
        if let Some(p) = self.clip_halfplane(-normal, -hi) {
            out.push(p);
        }
        out
    }

    /// Removes the convex polygon `{x: n_k·x <= b_k}` and returns disjoint convex remainders.
    pub fn minus_polygon(&self, halfplanes: &[(Pt2, f64)]) -> Vec<Self> {
        let mut out = Vec::new();
        let mut rest = Some(self.clone());
        for &(n, b) in halfplanes {
            let Some(r) = rest.take() else { break };
            if let Some(p) = r.clip_halfplane(-n, -b) {
                out.push(p);
            }
            rest = r.clip_halfplane(n, b);
        }
        out
    }

    pub fn translate(&self, t: Pt2) -> Self {
        ArcPolygon {
            vertices: self.vertices.iter().map(|v| v + t).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| match *e {
                    Edge::Line => Edge::Line,
                    Edge::Arc { center, radius } => Edge::Arc {
                        center: center + t,
                        radius,
                    },
                })
                .collect(),
        }
    }

    /// Image under `x -> s·R(angle)·x + t` with `s > 0`.
    pub fn similarity(&self, s: f64, angle: f64, t: Pt2) -> Self {
        let (c, sn) = (angle.cos(), angle.sin());
        let m = |v: Pt2| Pt2::new(c * v.x - sn * v.y, sn * v.x + c * v.y) * s + t;
        ArcPolygon {
            vertices: self.vertices.iter().map(|v| m(*v)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| match *e {
                    Edge::Line => Edge::Line,
                    Edge::Arc { center, radius } => Edge::Arc {
                        center: m(center),
                        radius: radius * s,
                    },
                })
                .collect(),
        }
    }

    /// Normal angles in `[0, 2π)` where the support feature changes, together
    /// with their antipodes; sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut breaks: Vec<f64> = Vec::new();
        for s in self.segs() {
            match s.kind {
                Edge::Line => {
                    let d = s.q - s.p;
                    breaks.push(d.y.atan2(d.x) - PI / 2.0);
                }
                Edge::Arc { .. } => {
                    breaks.push(s.a0);
                    breaks.push(s.a0 + s.ext);
                }
            }
        }
        let mut all: Vec<f64> = breaks
            .iter()
            .flat_map(|&b| [norm_angle(b), norm_angle(b + PI)])
            .collect();
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        all.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        if all.is_empty() {
            all.push(0.0);
        }
        all
    }

    /// Exact extremum of the width function `w(θ) = h(θ) + h(θ+π)`.
    ///
    /// The support function is `p·u(θ) + r` on each angular piece, so the
    /// width is a shifted cosine between breakpoints and its extrema are at
    /// breakpoints or at the cosine's critical angle.
    pub fn width_extreme(&self, minimize: bool) -> WidthExtreme {
        let all = self.breakpoints();
        let w = |t: f64| self.width(unit(t));
        let mut cands: Vec<f64> = all.clone();
        let m = all.len();
        for k in 0..m {
            let a = all[k];
            let b = if k + 1 < m { all[k + 1] } else { all[0] + TAU };
            let mid = 0.5 * (a + b);
            let (f1, _, _) = self.support_feature(unit(mid));
            let (f2, _, _) = self.support_feature(unit(mid + PI));
            let diff = f1 - f2;
            if diff.norm() > 1e-15 {
                let phi = diff.y.atan2(diff.x);
                let crit = if minimize { phi + PI } else { phi };
                let off = norm_angle(crit - a);
                if off > 0.0 && off < b - a {
                    cands.push(a + off);
                }
            }
        }
        let mut evaluated: Vec<(f64, f64)> = cands
            .into_iter()
            .map(|t| {
                let t = norm_angle(t) % PI;
                (t, w(t))
            })
            .collect();
        evaluated.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let pick = if minimize {
            evaluated
                .iter()
                .cloned()
                .fold((0.0, f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc })
        } else {
            evaluated
                .iter()
                .cloned()
                .fold((0.0, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc })
        };
        WidthExtreme {
            value: pick.1,
            theta: pick.0,
            candidates: evaluated,
        }
    }
}

/// Andrew's monotone chain; returns counter-clockwise hull without collinear points.
pub(crate) fn hull_points(points: &[Pt2]) -> Vec<Pt2> {
    let mut pts: Vec<Pt2> = points.to_vec();
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    pts.dedup_by(|a, b| (*a - *b).norm() < 1e-14);
    if pts.len() < 3 {
        return pts;
    }
    // collinearity tolerance scales with the extent, and with the distance
    // from the origin that sets the rounding noise in differences
    let far = pts.iter().fold(0.0f64, |s, p| s.max(p.norm()));
    let extent = pts.iter().fold(0.0f64, |s, p| s.max((p - pts[0]).norm()));
    let eps = 1e-13 * extent * extent.max(far);
    let mut lower: Vec<Pt2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross(
                lower[lower.len() - 1] - lower[lower.len() - 2],
                p - lower[lower.len() - 2],
            ) <= eps
        {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Pt2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(
                upper[upper.len() - 1] - upper[upper.len() - 2],
                p - upper[upper.len() - 2],
            ) <= eps
        {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_polygons_keep_their_corners() {
        let s = 1e-9;
        let pts = [
            Pt2::new(0.0, 0.0),
            Pt2::new(s, 0.0),
            Pt2::new(s, s),
            Pt2::new(0.0, s),
            Pt2::new(s / 2.0, 0.0),
        ];
        assert_eq!(hull_points(&pts).len(), 4);
    }

    fn square() -> ArcPolygon {
        ArcPolygon::polygon(vec![
            Pt2::new(0.0, 0.0),
            Pt2::new(1.0, 0.0),
            Pt2::new(1.0, 1.0),
            Pt2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn disk_area_and_perimeter() {
        let d = ArcPolygon::disk(Pt2::new(0.3, -0.2), 2.0);
        assert!((d.area() - 4.0 * PI).abs() < 1e-12);
        assert!((d.perimeter() - 4.0 * PI).abs() < 1e-12);
        assert!((d.support(Pt2::new(1.0, 0.0)) - 2.3).abs() < 1e-12);
    }

    #[test]
    fn reuleaux_area_perimeter_width() {
        let r = ArcPolygon::reuleaux_triangle(1.0);
        assert!((r.area() - 0.5 * (PI - 3f64.sqrt())).abs() < 1e-12);
        assert!((r.perimeter() - PI).abs() < 1e-12);
        for k in 0..50 {
            let t = k as f64 * 0.123;
            assert!((r.width(unit(t)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn half_disk_by_clipping() {
        let h = ArcPolygon::disk(Pt2::zeros(), 1.0)
            .clip_halfplane(Pt2::new(0.0, -1.0), 0.0)
            .unwrap();
        assert!((h.area() - PI / 2.0).abs() < 1e-12);
        assert!(h.contains(Pt2::new(0.0, 0.5), 0.0));
        assert!(!h.contains(Pt2::new(0.0, -0.1), 0.0));
        let ext = h.width_extreme(true);
        assert!((ext.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lens_area_closed_form() {
        let delta: f64 = 0.5;
        let lens = ArcPolygon::disk(Pt2::new(-delta / 2.0, 0.0), 1.0)
            .clip_disk(Pt2::new(delta / 2.0, 0.0), 1.0)
            .unwrap();
        let exact = 2.0 * (delta / 2.0).acos() - delta / 2.0 * (4.0 - delta * delta).sqrt();
        assert!((lens.area() - exact).abs() < 1e-12);
        let ext = lens.width_extreme(true);
        assert!((ext.value - (2.0 - delta)).abs() < 1e-12);
    }

    #[test]
    fn disk_inside_square_clip() {
        let big = square().similarity(4.0, 0.0, Pt2::new(-2.0, -2.0));
        let c = big.clip_disk(Pt2::zeros(), 1.0).unwrap();
        assert!((c.area() - PI).abs() < 1e-12);
    }

    #[test]
    fn square_min_width_and_diameter() {
        let s = square();
        assert!((s.width_extreme(true).value - 1.0).abs() < 1e-12);
        assert!((s.width_extreme(false).value - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn minus_plank_leaves_gap() {
        let rest = square().minus_plank(Pt2::new(1.0, 0.0), 0.0, 0.8);
        let area: f64 = rest.iter().map(|p| p.area()).sum();
        assert!((area - 0.2).abs() < 1e-12);
    }

    #[test]
    fn hull_drops_interior() {
        let pts = vec![
            Pt2::new(0.0, 0.0),
            Pt2::new(2.0, 0.0),
            Pt2::new(1.0, 0.5),
            Pt2::new(2.0, 2.0),
            Pt2::new(0.0, 2.0),
            Pt2::new(1.0, 0.0),
        ];
        let h = ArcPolygon::convex_hull(&pts).unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert!((h.area() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn contains_arc_segment_region() {
        let r = ArcPolygon::reuleaux_triangle(1.0);
        // point just inside the arc bulge beyond the chord
        let top = r.support_point(Pt2::new(0.0, -1.0)).0;
        assert!(r.contains(top * 0.999, 0.0));
        assert!(!r.contains(top * 1.01, 0.0));
    }
}
