//! Convex polytopes carrying both facet and vertex descriptions.

use nalgebra::DMatrix;

use super::arc::{hull_points, Pt2};
use super::{orthonormal_complement, Vector};
use crate::error::{Error, Result};
use crate::lp::{maximize, LpOutcome};

/// Above this many `d`-subsets the brute-force facet/vertex search refuses.
const SUBSET_LIMIT: u128 = 20_000_000;

/// Full-dimensional convex polytope `{x : a_i·x <= b_i}` with unit `a_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    normals: Vec<Vector>,
    offsets: Vec<f64>,
    vertices: Vec<Vector>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Calls `f` on every `k`-subset of `0..n`, in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Normal of the hyperplane through `d` points of `R^d` (generalized cross
/// product of the differences); zero when they are affinely dependent.
pub(crate) fn hyperplane_normal(pts: &[&Vector]) -> Vector {
    let d = pts[0].len();
    let rows: Vec<Vector> = pts[1..].iter().map(|p| *p - pts[0]).collect();
    let mut n = Vector::zeros(d);
    for j in 0..d {
        let m = DMatrix::from_fn(d - 1, d - 1, |r, c| {
            let cc = if c < j { c } else { c + 1 };
            rows[r][cc]
        });
        let det = if d == 1 { 1.0 } else { m.determinant() };
        n[j] = if j % 2 == 0 { det } else { -det };
    }
    n
}

fn affine_rank(points: &[Vector]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let d = points[0].len();
    let m = DMatrix::from_fn(points.len(), d, |r, c| points[r][c] - points[0][c]);
    let scale = points.iter().fold(1.0f64, |s, p| s.max(p.amax()));
    m.rank(1e-10 * scale)
}

impl Polytope {
    /// From a facet description; rows need not be normalized and redundant
    /// rows are dropped.
    pub fn from_h(normals: Vec<Vector>, offsets: Vec<f64>) -> Result<Self> {
        if normals.is_empty() || normals.len() != offsets.len() {
            return Err(Error::InvalidInput("H-description needs matching rows".into()));
        }
        let d = normals[0].len();
        if normals.iter().any(|a| a.len() != d) {
            return Err(Error::InvalidInput("inconsistent dimensions".into()));
        }
        let mut ns = Vec::new();
        let mut bs = Vec::new();
        for (a, b) in normals.iter().zip(&offsets) {
            let n = a.norm();
            if n < 1e-300 {
                if *b < 0.0 {
                    return Err(Error::Degenerate("empty polytope".into()));
                }
                continue;
            }
            ns.push(a / n);
            bs.push(b / n);
        }
        let rows: Vec<Vec<f64>> = ns.iter().map(|a| a.iter().copied().collect()).collect();
        for i in 0..d {
            for s in [1.0, -1.0] {
                let mut c = vec![0.0; d];
                c[i] = s;
                match maximize(&c, &rows, &bs) {
                    LpOutcome::Unbounded => return Err(Error::Unbounded),
                    LpOutcome::Infeasible => return Err(Error::Degenerate("empty polytope".into())),
                    LpOutcome::Optimal { .. } => {}
                }
            }
        }
        let vertices = Self::enumerate_vertices(&ns, &bs, d)?;
        Self::from_parts(d, ns, bs, vertices)
    }

    fn enumerate_vertices(ns: &[Vector], bs: &[f64], d: usize) -> Result<Vec<Vector>> {
        let m = ns.len();
        if binomial(m, d) > SUBSET_LIMIT {
            return Err(Error::InstanceTooLarge(format!(
                "{m} facets in dimension {d} exceed the vertex enumeration budget"
            )));
        }
        let scale = bs.iter().fold(1.0f64, |s, b| s.max(b.abs()));
        let mut verts: Vec<Vector> = Vec::new();
        for_each_subset(m, d, |idx| {
            let a = DMatrix::from_fn(d, d, |r, c| ns[idx[r]][c]);
            let b = Vector::from_iterator(d, idx.iter().map(|&i| bs[i]));
            let lu = a.lu();
            if lu.determinant().abs() < 1e-12 {
                return;
            }
            if let Some(x) = lu.solve(&b) {
                let ok = ns.iter().zip(bs).all(|(a, b)| a.dot(&x) <= b + 1e-9 * scale);
                if ok && !verts.iter().any(|v| (v - &x).amax() < 1e-9 * scale) {
                    verts.push(x);
                }
            }
        });
        Ok(verts)
    }

    /// Keeps only rows that support a genuine facet.
    fn from_parts(d: usize, ns: Vec<Vector>, bs: Vec<f64>, vertices: Vec<Vector>) -> Result<Self> {
        if affine_rank(&vertices) < d {
            return Err(Error::Degenerate("polytope is not full-dimensional".into()));
        }
        let scale = vertices.iter().fold(1.0f64, |s, v| s.max(v.amax()));
        let tol = 1e-9 * scale;
        let mut normals: Vec<Vector> = Vec::new();
        let mut offsets: Vec<f64> = Vec::new();
        for (a, b) in ns.into_iter().zip(bs) {
            let on: Vec<Vector> = vertices
                .iter()
                .filter(|v| (a.dot(v) - b).abs() <= tol)
                .cloned()
                .collect();
            if on.len() < d || affine_rank(&on) < d - 1 {
                continue;
            }
            let dup = normals
                .iter()
                .zip(&offsets)
                .any(|(n, o)| (n - &a).amax() < 1e-9 && (o - b).abs() <= tol);
            if !dup {
                normals.push(a);
                offsets.push(b);
            }
        }
        Ok(Polytope {
            dim: d,
            normals,
            offsets,
            vertices,
        })
    }

    /// Convex hull of a point set.
    pub fn from_v(points: Vec<Vector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("empty point set".into()));
        }
        let d = points[0].len();
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::InvalidInput("inconsistent dimensions".into()));
        }
        if affine_rank(&points) < d {
            return Err(Error::Degenerate("points do not span the space".into()));
        }
        if d == 1 {
            let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            return Ok(Self::interval(lo, hi));
        }
        if d == 2 {
            let pts: Vec<Pt2> = points.iter().map(|p| Pt2::new(p[0], p[1])).collect();
            let hull = hull_points(&pts);
            let n = hull.len();
            let mut normals = Vec::new();
            let mut offsets = Vec::new();
            for i in 0..n {
                let e = hull[(i + 1) % n] - hull[i];
                let nn = Pt2::new(e.y, -e.x).normalize();
                normals.push(Vector::from_vec(vec![nn.x, nn.y]));
                offsets.push(nn.dot(&hull[i]));
            }
            let vertices = hull.iter().map(|p| Vector::from_vec(vec![p.x, p.y])).collect();
            return Ok(Polytope {
                dim: 2,
                normals,
                offsets,
                vertices,
            });
        }
        let n = points.len();
        if binomial(n, d) > SUBSET_LIMIT {
            return Err(Error::InstanceTooLarge(format!(
                "{n} points in dimension {d} exceed the facet enumeration budget"
            )));
        }
        let scale = points.iter().fold(1.0f64, |s, p| s.max(p.amax()));
        let tol = 1e-9 * scale;
        let mut normals: Vec<Vector> = Vec::new();
        let mut offsets: Vec<f64> = Vec::new();
        for_each_subset(n, d, |idx| {
            let pts: Vec<&Vector> = idx.iter().map(|&i| &points[i]).collect();
            let raw = hyperplane_normal(&pts);
            let len = raw.norm();
            if len < 1e-12 * scale.powi(d as i32 - 1) {
                return;
            }
            let mut a = raw / len;
            let mut b = a.dot(pts[0]);
            let above = points.iter().any(|p| a.dot(p) > b + tol);
            let below = points.iter().any(|p| a.dot(p) < b - tol);
            if above && below {
                return;
            }
            if above {
                a = -a;
                b = -b;
            }
            let dup = normals
                .iter()
                .zip(&offsets)
                .any(|(m, o)| (m - &a).amax() < 1e-9 && (o - b).abs() <= tol);
            if !dup {
                normals.push(a);
                offsets.push(b);
            }
        });
        let vertices: Vec<Vector> = points
            .iter()
            .filter(|p| {
                let tight: Vec<&Vector> = normals
                    .iter()
                    .zip(&offsets)
                    .filter(|(a, b)| (a.dot(p) - *b).abs() <= tol)
                    .map(|(a, _)| a)
                    .collect();
                if tight.len() < d {
                    return false;
                }
                let m = DMatrix::from_fn(tight.len(), d, |r, c| tight[r][c]);
                m.rank(1e-9) == d
            })
            .fold(Vec::new(), |mut acc: Vec<Vector>, p| {
                if !acc.iter().any(|q| (q - p).amax() < tol) {
                    acc.push(p.clone());
                }
                acc
            });
        Ok(Polytope {
            dim: d,
            normals,
            offsets,
            vertices,
        })
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        Polytope {
            dim: 1,
            normals: vec![Vector::from_vec(vec![1.0]), Vector::from_vec(vec![-1.0])],
            offsets: vec![hi, -lo],
            vertices: vec![Vector::from_vec(vec![lo]), Vector::from_vec(vec![hi])],
        }
    }

    /// Axis-parallel box `[lo_i, hi_i]`.
    pub fn boxed(lo: &[f64], hi: &[f64]) -> Result<Self> {
        let d = lo.len();
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for i in 0..d {
            if hi[i] <= lo[i] {
                return Err(Error::Degenerate("box side must be positive".into()));
            }
            let mut e = Vector::zeros(d);
            e[i] = 1.0;
            normals.push(e.clone());
            offsets.push(hi[i]);
            normals.push(-e);
            offsets.push(-lo[i]);
        }
        let vertices = (0..1usize << d)
            .map(|mask| Vector::from_fn(d, |i, _| if mask >> i & 1 == 1 { hi[i] } else { lo[i] }))
            .collect();
        Ok(Polytope {
            dim: d,
            normals,
            offsets,
            vertices,
        })
    }

    /// `[0,1]^d`.
    pub fn unit_cube(d: usize) -> Self {
        Self::boxed(&vec![0.0; d], &vec![1.0; d]).expect("unit cube")
    }

    /// `[-1,1]^d`.
    pub fn centered_cube(d: usize) -> Self {
        Self::boxed(&vec![-1.0; d], &vec![1.0; d]).expect("centered cube")
    }

    /// Convex hull of `±e_i`.
    pub fn cross_polytope(d: usize) -> Self {
        let mut pts = Vec::new();
        for i in 0..d {
            for s in [1.0, -1.0] {
                let mut e = Vector::zeros(d);
                e[i] = s;
                pts.push(e);
            }
        }
        Self::from_v(pts).expect("cross polytope")
    }

    /// Convex hull of `0, e_1, ..., e_d`.
    pub fn standard_simplex(d: usize) -> Self {
        let mut pts = vec![Vector::zeros(d)];
        for i in 0..d {
            let mut e = Vector::zeros(d);
            e[i] = 1.0;
            pts.push(e);
        }
        Self::from_v(pts).expect("simplex")
    }

    /// Regular simplex with edge length `edge`, centered at the origin.
    pub fn regular_simplex(d: usize, edge: f64) -> Self {
        // standard basis of R^{d+1}, centered, then expressed in an orthonormal basis of 1⊥
        let ones = Vector::from_element(d + 1, 1.0 / ((d + 1) as f64).sqrt());
        let basis = orthonormal_complement(&[ones], d + 1);
        let c = 1.0 / (d + 1) as f64;
        let pts = (0..=d)
            .map(|i| {
                let mut e = Vector::from_element(d + 1, -c);
                e[i] += 1.0;
                let coords = Vector::from_iterator(d, basis.iter().map(|b| b.dot(&e)));
                coords * (edge / 2f64.sqrt())
            })
            .collect();
        Self::from_v(pts).expect("regular simplex")
    }

    /// Regular `n`-gon with circumradius `r`, first vertex at angle `phase`.
    pub fn regular_polygon(n: usize, r: f64, phase: f64) -> Self {
        let pts = (0..n)
            .map(|k| {
                let t = phase + std::f64::consts::TAU * k as f64 / n as f64;
                Vector::from_vec(vec![r * t.cos(), r * t.sin()])
            })
            .collect();
        Self::from_v(pts).expect("regular polygon")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn support(&self, u: &Vector) -> f64 {
        self.vertices.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn support_point(&self, u: &Vector) -> &Vector {
        let mut best = &self.vertices[0];
        let mut val = best.dot(u);
        for v in &self.vertices[1..] {
            let x = v.dot(u);
            if x > val {
                val = x;
                best = v;
            }
        }
        best
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.normals.iter().zip(&self.offsets).all(|(a, b)| a.dot(x) <= b + tol)
    }

    /// Most violated facet inequality at `x`, if any.
    pub fn separate(&self, x: &Vector) -> Option<(Vector, f64)> {
        let mut worst: Option<(usize, f64)> = None;
        for (i, (a, b)) in self.normals.iter().zip(&self.offsets).enumerate() {
            let v = a.dot(x) - b;
            if v > 0.0 && worst.is_none_or(|(_, w)| v > w) {
                worst = Some((i, v));
            }
        }
        worst.map(|(i, _)| (self.normals[i].clone(), self.offsets[i]))
    }

    /// Indices of vertices on facet `i`.
    pub fn facet_vertices(&self, i: usize) -> Vec<usize> {
        let tol = 1e-9 * self.scale();
        (0..self.vertices.len())
            .filter(|&j| (self.normals[i].dot(&self.vertices[j]) - self.offsets[i]).abs() <= tol)
            .collect()
    }

    pub fn scale(&self) -> f64 {
        self.vertices.iter().fold(1.0f64, |s, v| s.max(v.amax()))
    }

    pub fn vertex_centroid(&self) -> Vector {
        let mut c = Vector::zeros(self.dim);
        for v in &self.vertices {
            c += v;
        }
        c / self.vertices.len() as f64
    }

    /// Center and radius of the largest inscribed ball.
    pub fn chebyshev_center(&self) -> (Vector, f64) {
        let d = self.dim;
        let mut c = vec![0.0; d + 1];
        c[d] = 1.0;
        let rows: Vec<Vec<f64>> = self
            .normals
            .iter()
            .map(|a| {
                let mut r: Vec<f64> = a.iter().copied().collect();
                r.push(1.0);
                r
            })
            .collect();
        match maximize(&c, &rows, &self.offsets) {
            LpOutcome::Optimal { x, value } => (Vector::from_column_slice(&x[..d]), value),
            _ => (self.vertex_centroid(), 0.0),
        }
    }

    /// Centrally symmetric about some point (checked on vertices).
    pub fn is_centrally_symmetric(&self) -> bool {
        let c = self.vertex_centroid();
        let tol = 1e-9 * self.scale();
        self.vertices.iter().all(|v| {
            let m = &c * 2.0 - v;
            self.vertices.iter().any(|w| (w - &m).amax() <= tol)
        })
    }

    /// Image under `x -> A x + t` for invertible `A`.
    pub fn affine_image(&self, a: &DMatrix<f64>, t: &Vector) -> Result<Self> {
        let inv = a
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Degenerate("singular linear map".into()))?;
        let it = inv.transpose();
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for (n, b) in self.normals.iter().zip(&self.offsets) {
            let m = &it * n;
            let len = m.norm();
            offsets.push((b + m.dot(t)) / len);
            normals.push(m / len);
        }
        let vertices = self.vertices.iter().map(|v| a * v + t).collect();
        Ok(Polytope {
            dim: self.dim,
            normals,
            offsets,
            vertices,
        })
    }

    pub fn translate(&self, t: &Vector) -> Self {
        Polytope {
            dim: self.dim,
            normals: self.normals.clone(),
            offsets: self
                .normals
                .iter()
                .zip(&self.offsets)
                .map(|(a, b)| b + a.dot(t))
                .collect(),
            vertices: self.vertices.iter().map(|v| v + t).collect(),
        }
    }

    /// Intersection with a further half-space; `None` if it loses full dimension.
    pub fn cut(&self, normal: &Vector, offset: f64) -> Option<Self> {
        let mut ns = self.normals.clone();
        let mut bs = self.offsets.clone();
        ns.push(normal.clone());
        bs.push(offset);
        let ok_norm = normal.norm();
        if ok_norm < 1e-300 {
            return None;
        }
        if self.dim == 2 {
            let poly = self
                .to_arc_polygon()
                .clip_halfplane(Pt2::new(normal[0], normal[1]) / ok_norm, offset / ok_norm)?;
            let pts = poly
                .vertices()
                .iter()
                .map(|p| Vector::from_vec(vec![p.x, p.y]))
                .collect();
            return Self::from_v(pts).ok();
        }
        Self::from_h(ns, bs).ok()
    }

    /// Planar polytope as an arc polygon (all edges straight).
    pub fn to_arc_polygon(&self) -> super::ArcPolygon {
        assert_eq!(self.dim, 2, "planar polytope expected");
        let pts: Vec<Pt2> = self.vertices.iter().map(|v| Pt2::new(v[0], v[1])).collect();
        super::ArcPolygon::convex_hull(&pts).expect("full-dimensional polygon")
    }

    /// Exact `d`-volume by cone decomposition over facets.
    pub fn volume(&self) -> f64 {
        volume_of_points(&self.vertices, self.dim)
    }

    /// Exact `(d-1)`-volume of the boundary.
    pub fn surface_area(&self) -> f64 {
        match self.dim {
            1 => 2.0,
            _ => (0..self.normals.len()).map(|i| self.facet_area(i)).sum(),
        }
    }

    pub fn facet_area(&self, i: usize) -> f64 {
        let pts: Vec<Vector> = self
            .facet_vertices(i)
            .into_iter()
            .map(|j| self.vertices[j].clone())
            .collect();
        let basis = orthonormal_complement(&[self.normals[i].clone()], self.dim);
        let local: Vec<Vector> = pts
            .iter()
            .map(|p| Vector::from_iterator(basis.len(), basis.iter().map(|b| b.dot(p))))
            .collect();
        volume_of_points(&local, self.dim - 1)
    }
}

/// Volume of the convex hull of `pts` in `R^d`.
fn volume_of_points(pts: &[Vector], d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => {
            let lo = pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = pts.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            (hi - lo).max(0.0)
        }
        2 => {
            let p2: Vec<Pt2> = pts.iter().map(|p| Pt2::new(p[0], p[1])).collect();
            let h = hull_points(&p2);
            if h.len() < 3 {
                return 0.0;
            }
            let n = h.len();
            0.5 * (0..n)
                .map(|i| h[i].x * h[(i + 1) % n].y - h[(i + 1) % n].x * h[i].y)
                .sum::<f64>()
        }
        _ => match Polytope::from_v(pts.to_vec()) {
            Ok(p) => {
                let c = p.vertex_centroid();
                (0..p.normals.len())
                    .map(|i| {
                        let h = p.offsets[i] - p.normals[i].dot(&c);
                        h * p.facet_area(i) / d as f64
                    })
                    .sum()
            }
            Err(_) => 0.0,
        },
    }
}
