//! The convex body type shared by every module.

use nalgebra::DMatrix;

use super::arc::{ArcPolygon, Pt2};
use super::intersection::{interior_point, intersection_support, Bracket};
use super::polytope::Polytope;
use super::Vector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    Polytope(Polytope),
    Ball {
        center: Vector,
        radius: f64,
    },
    /// `{center + map·y : |y| <= 1}` with invertible `map`.
    Ellipsoid {
        center: Vector,
        map: DMatrix<f64>,
    },
    /// Planar region bounded by segments and circular arcs.
    Arc(ArcPolygon),
    /// Intersection of members; planar intersections of disks and polygons
    /// are normalized to [`ConvexBody::Arc`] by [`ConvexBody::intersection`].
    Intersection(Vec<ConvexBody>),
}

pub(crate) fn pt(v: &Vector) -> Pt2 {
    Pt2::new(v[0], v[1])
}

pub(crate) fn vec2(p: Pt2) -> Vector {
    Vector::from_vec(vec![p.x, p.y])
}

impl ConvexBody {
    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput("ball radius must be positive".into()));
        }
        Ok(ConvexBody::Ball { center, radius })
    }

    pub fn unit_ball(d: usize) -> Self {
        ConvexBody::Ball {
            center: Vector::zeros(d),
            radius: 1.0,
        }
    }

    pub fn ellipsoid(center: Vector, map: DMatrix<f64>) -> Result<Self> {
        let d = center.len();
        if map.nrows() != d || map.ncols() != d {
            return Err(Error::InvalidInput("ellipsoid map has wrong shape".into()));
        }
        if map.determinant().abs() < 1e-300 {
            return Err(Error::Degenerate("flat ellipsoid".into()));
        }
        Ok(ConvexBody::Ellipsoid { center, map })
    }

    /// Builds an intersection, reducing to an exact arc polygon in the plane
    /// when every member allows it.
    pub fn intersection(members: Vec<ConvexBody>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidInput("intersection of nothing".into()));
        }
        let d = members[0].dim();
        if members.iter().any(|m| m.dim() != d) {
            return Err(Error::InvalidInput("members differ in dimension".into()));
        }
        if members.len() == 1 {
            return Ok(members.into_iter().next().unwrap());
        }
        if d == 2 && members.iter().all(|m| m.as_arc_polygon().is_some()) {
            let mut it = members.iter();
            let mut region = it.next().unwrap().as_arc_polygon().unwrap();
            for m in it {
                region =
                    clip_by(&region, m).ok_or_else(|| Error::Degenerate("intersection has empty interior".into()))?;
            }
            return Ok(ConvexBody::Arc(region));
        }
        let body = ConvexBody::Intersection(members);
        body.interior_point()?;
        Ok(body)
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Polytope(p) => p.dim(),
            ConvexBody::Ball { center, .. } | ConvexBody::Ellipsoid { center, .. } => center.len(),
            ConvexBody::Arc(_) => 2,
            ConvexBody::Intersection(m) => m[0].dim(),
        }
    }

    /// Exact planar representation, if one exists.
    pub fn as_arc_polygon(&self) -> Option<ArcPolygon> {
        if self.dim() != 2 {
            return None;
        }
        match self {
            ConvexBody::Polytope(p) => Some(p.to_arc_polygon()),
            ConvexBody::Ball { center, radius } => Some(ArcPolygon::disk(pt(center), *radius)),
            ConvexBody::Arc(a) => Some(a.clone()),
            _ => None,
        }
    }

    /// `max_{x in K} x·u`. Intersections report the upper end of their bracket.
    pub fn support(&self, u: &Vector) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.support(u),
            ConvexBody::Ball { center, radius } => center.dot(u) + radius * u.norm(),
            ConvexBody::Ellipsoid { center, map } => center.dot(u) + (map.transpose() * u).norm(),
            ConvexBody::Arc(a) => a.support(pt(u)),
            ConvexBody::Intersection(_) => self.support_bracket(u).upper,
        }
    }

    /// Support value with a certified bracket; exact bodies have zero width.
    pub fn support_bracket(&self, u: &Vector) -> Bracket {
        match self {
            ConvexBody::Intersection(m) => intersection_support(m, u, 1e-9),
            _ => {
                let v = self.support(u);
                Bracket { lower: v, upper: v }
            }
        }
    }

    /// A maximizer of `x·u` (for intersections, the feasible lower-bound point).
    pub fn support_point(&self, u: &Vector) -> Vector {
        match self {
            ConvexBody::Polytope(p) => p.support_point(u).clone(),
            ConvexBody::Ball { center, radius } => center + u * (radius / u.norm()),
            ConvexBody::Ellipsoid { center, map } => {
                let g = map.transpose() * u;
                let n = g.norm();
                center + map * (g / n)
            }
            ConvexBody::Arc(a) => vec2(a.support_point(pt(u)).0),
            ConvexBody::Intersection(m) => super::intersection::support_point(m, u, 1e-9),
        }
    }

    pub fn width(&self, u: &Vector) -> f64 {
        self.support(u) + self.support(&-u)
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        match self {
            ConvexBody::Polytope(p) => p.contains(x, tol),
            ConvexBody::Ball { center, radius } => (x - center).norm() <= radius + tol,
            ConvexBody::Ellipsoid { center, map } => match map.clone().lu().solve(&(x - center)) {
                Some(y) => {
                    // tolerance measured in the body's own length scale
                    let s = map.norm().max(1e-300);
                    y.norm() <= 1.0 + tol / s
                }
                None => false,
            },
            ConvexBody::Arc(a) => a.contains(pt(x), tol),
            ConvexBody::Intersection(m) => m.iter().all(|b| b.contains(x, tol)),
        }
    }

    /// Convex "violation" function, negative inside and positive outside,
    /// with a subgradient at `x`.
    pub fn violation(&self, x: &Vector) -> (f64, Vector) {
        match self {
            ConvexBody::Polytope(p) => {
                let mut best = (f64::NEG_INFINITY, Vector::zeros(x.len()));
                for (a, b) in p.normals().iter().zip(p.offsets()) {
                    let v = a.dot(x) - b;
                    if v > best.0 {
                        best = (v, a.clone());
                    }
                }
                best
            }
            ConvexBody::Ball { center, radius } => {
                let d = x - center;
                let n = d.norm();
                let g = if n > 1e-300 { d / n } else { unit0(x.len()) };
                (n - radius, g)
            }
            ConvexBody::Ellipsoid { center, map } => {
                let inv = map.clone().try_inverse().expect("invertible ellipsoid map");
                let y = &inv * (x - center);
                let n = y.norm();
                let g = if n > 1e-300 {
                    inv.transpose() * (y / n)
                } else {
                    unit0(x.len())
                };
                // scale to a length-like quantity
                let s = map.norm();
                (s * (n - 1.0), g * s)
            }
            ConvexBody::Arc(a) => {
                let p = pt(x);
                let (q, dist) = a.nearest_boundary(p);
                let inside = a.contains(p, 0.0);
                let dir = if dist > 1e-300 {
                    (p - q) / dist
                } else {
                    Pt2::new(1.0, 0.0)
                };
                if inside {
                    (-dist, vec2(-dir))
                } else {
                    (dist, vec2(dir))
                }
            }
            ConvexBody::Intersection(m) => {
                let mut best = (f64::NEG_INFINITY, Vector::zeros(x.len()));
                for b in m {
                    let v = b.violation(x);
                    if v.0 > best.0 {
                        best = v;
                    }
                }
                best
            }
        }
    }

    /// A half-space `{y: n·y <= b}` containing the body and excluding `x`,
    /// or `None` if `x` is (within `tol`) inside.
    pub fn separate(&self, x: &Vector, tol: f64) -> Option<(Vector, f64)> {
        if self.contains(x, tol) {
            return None;
        }
        match self {
            ConvexBody::Polytope(p) => p.separate(x),
            ConvexBody::Intersection(m) => m.iter().find_map(|b| b.separate(x, tol)),
            _ => {
                let (_, g) = self.violation(x);
                let n = g.norm();
                if n < 1e-300 {
                    return None;
                }
                let u = g / n;
                let b = self.support(&u);
                Some((u, b))
            }
        }
    }

    /// A point in the interior.
    pub fn interior_point(&self) -> Result<Vector> {
        match self {
            ConvexBody::Polytope(p) => Ok(p.chebyshev_center().0),
            ConvexBody::Ball { center, .. } | ConvexBody::Ellipsoid { center, .. } => Ok(center.clone()),
            ConvexBody::Arc(a) => Ok(vec2(a.vertex_centroid())),
            ConvexBody::Intersection(m) => interior_point(m),
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vector, Vector) {
        let d = self.dim();
        let mut lo = Vector::zeros(d);
        let mut hi = Vector::zeros(d);
        for i in 0..d {
            let e = unit_i(d, i);
            hi[i] = self.support(&e);
            lo[i] = -self.support(&-e);
        }
        (lo, hi)
    }

    /// Radius of the smallest origin-centred ball containing the body (upper bound for intersections).
    pub fn bounding_radius(&self) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max),
            ConvexBody::Ball { center, radius } => center.norm() + radius,
            ConvexBody::Ellipsoid { center, map } => center.norm() + map.norm(),
            ConvexBody::Arc(a) => a.scale(),
            ConvexBody::Intersection(m) => m.iter().map(|b| b.bounding_radius()).fold(f64::INFINITY, f64::min),
        }
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        match self {
            ConvexBody::Polytope(p) => p.is_centrally_symmetric(),
            ConvexBody::Ball { .. } | ConvexBody::Ellipsoid { .. } => true,
            _ => {
                // compare support in opposite directions about the bracket midpoint
                let d = self.dim();
                let (lo, hi) = self.bounding_box();
                let c = (&lo + &hi) * 0.5;
                let scale = self.bounding_radius().max(1e-300);
                super::direction_grid(d, 90).iter().all(|u| {
                    let u = u.as_vector();
                    let a = self.support(u) - c.dot(u);
                    let b = self.support(&-u) + c.dot(u);
                    (a - b).abs() <= 1e-8 * scale
                })
            }
        }
    }

    pub fn translate(&self, t: &Vector) -> Self {
        match self {
            ConvexBody::Polytope(p) => ConvexBody::Polytope(p.translate(t)),
            ConvexBody::Ball { center, radius } => ConvexBody::Ball {
                center: center + t,
                radius: *radius,
            },
            ConvexBody::Ellipsoid { center, map } => ConvexBody::Ellipsoid {
                center: center + t,
                map: map.clone(),
            },
            ConvexBody::Arc(a) => ConvexBody::Arc(a.translate(pt(t))),
            ConvexBody::Intersection(m) => ConvexBody::Intersection(m.iter().map(|b| b.translate(t)).collect()),
        }
    }

    /// `s·K` about the origin, `s > 0`.
    pub fn scale(&self, s: f64) -> Self {
        let d = self.dim();
        self.affine_image(&(DMatrix::identity(d, d) * s), &Vector::zeros(d))
            .expect("positive scaling is a similarity")
    }

    /// Image under `x -> A x + t`. Arc polygons only admit similarities.
    pub fn affine_image(&self, a: &DMatrix<f64>, t: &Vector) -> Result<Self> {
        Ok(match self {
            ConvexBody::Polytope(p) => ConvexBody::Polytope(p.affine_image(a, t)?),
            ConvexBody::Ball { center, radius } => {
                if let Some(s) = similarity_scale(a) {
                    ConvexBody::Ball {
                        center: a * center + t,
                        radius: radius * s,
                    }
                } else {
                    ConvexBody::ellipsoid(a * center + t, a * *radius)?
                }
            }
            ConvexBody::Ellipsoid { center, map } => ConvexBody::ellipsoid(a * center + t, a * map)?,
            ConvexBody::Arc(poly) => {
                let s = similarity_scale(a)
                    .ok_or_else(|| Error::Unsupported("arc polygons map only under similarities".into()))?;
                if a.determinant() < 0.0 {
                    return Err(Error::Unsupported("reflections of arc polygons".into()));
                }
                let angle = a[(1, 0)].atan2(a[(0, 0)]);
                ConvexBody::Arc(poly.similarity(s, angle, pt(t)))
            }
            ConvexBody::Intersection(m) => {
                ConvexBody::Intersection(m.iter().map(|b| b.affine_image(a, t)).collect::<Result<_>>()?)
            }
        })
    }

    /// Short name used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            ConvexBody::Polytope(_) => "polytope",
            ConvexBody::Ball { .. } => "ball",
            ConvexBody::Ellipsoid { .. } => "ellipsoid",
            ConvexBody::Arc(_) => "arcpolygon",
            ConvexBody::Intersection(_) => "intersection",
        }
    }
}

fn clip_by(region: &ArcPolygon, m: &ConvexBody) -> Option<ArcPolygon> {
    match m {
        ConvexBody::Ball { center, radius } => region.clip_disk(pt(center), *radius),
        ConvexBody::Polytope(p) => {
            let mut r = region.clone();
            for (a, b) in p.normals().iter().zip(p.offsets()) {
                r = r.clip_halfplane(pt(a), *b)?;
            }
            Some(r)
        }
        ConvexBody::Arc(other) => {
            let mut r = region.clone();
            let vs = other.vertices();
            let n = vs.len();
            for (i, e) in other.edges().iter().enumerate() {
                r = match e {
                    super::Edge::Line => {
                        let d = vs[(i + 1) % n] - vs[i];
                        let nn = Pt2::new(d.y, -d.x).normalize();
                        r.clip_halfplane(nn, nn.dot(&vs[i]))?
                    }
                    super::Edge::Arc { center, radius } => r.clip_disk(*center, *radius)?,
                };
            }
            Some(r)
        }
        _ => None,
    }
}

/// `Some(s)` when `a = s·Q` with `Q` orthogonal.
fn similarity_scale(a: &DMatrix<f64>) -> Option<f64> {
    let ata = a.transpose() * a;
    let s2 = ata[(0, 0)];
    let d = a.nrows();
    let dev = (&ata - DMatrix::identity(d, d) * s2).amax();
    (s2 > 0.0 && dev <= 1e-12 * s2).then(|| s2.sqrt())
}

fn unit_i(d: usize, i: usize) -> Vector {
    let mut e = Vector::zeros(d);
    e[i] = 1.0;
    e
}

fn unit0(d: usize) -> Vector {
    unit_i(d, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Vector {
        Vector::from_column_slice(x)
    }

    #[test]
    fn trivial_supports() {
        let b = ConvexBody::unit_ball(2);
        assert!((b.support(&v(&[1.0, 0.0])) - 1.0).abs() < 1e-15);
        let sq = ConvexBody::Polytope(Polytope::unit_cube(2));
        let diag = v(&[1.0, 1.0]) / 2f64.sqrt();
        assert!((sq.support(&diag) - 2f64.sqrt()).abs() < 1e-15);
        assert!((sq.width(&diag) - 2f64.sqrt()).abs() < 1e-15);
        let e = ConvexBody::ellipsoid(Vector::zeros(2), DMatrix::from_diagonal(&v(&[2.0, 1.0]))).unwrap();
        assert!((e.support(&v(&[1.0, 0.0])) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_disk_intersection_is_exact() {
        let k = ConvexBody::intersection(vec![
            ConvexBody::ball(v(&[0.25, 0.0]), 1.0).unwrap(),
            ConvexBody::ball(v(&[-0.25, 0.0]), 1.0).unwrap(),
        ])
        .unwrap();
        assert!(matches!(k, ConvexBody::Arc(_)));
        assert!(k.contains(&v(&[0.0, 0.9]), 1e-12));
        assert!(!k.contains(&v(&[0.0, 0.98]), 1e-12));
        assert!((k.support(&v(&[1.0, 0.0])) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn separation_is_valid() {
        let e = ConvexBody::ellipsoid(v(&[1.0, 0.0, 0.0]), DMatrix::from_diagonal(&v(&[2.0, 1.0, 0.5]))).unwrap();
        let x = v(&[4.0, 1.0, 1.0]);
        let (n, b) = e.separate(&x, 0.0).unwrap();
        assert!(n.dot(&x) > b);
        assert!((e.support(&n) - b).abs() < 1e-12);
    }

    #[test]
    fn affine_ball_becomes_ellipsoid() {
        let b = ConvexBody::unit_ball(2);
        let a = DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 1.0]);
        let e = b.affine_image(&a, &Vector::zeros(2)).unwrap();
        assert!(matches!(e, ConvexBody::Ellipsoid { .. }));
        assert!((e.width(&v(&[1.0, 0.0])) - 6.0).abs() < 1e-12);
        let r = b
            .affine_image(&(DMatrix::identity(2, 2) * 2.0), &v(&[1.0, 1.0]))
            .unwrap();
        assert!(matches!(r, ConvexBody::Ball { radius, .. } if (radius - 2.0).abs() < 1e-15));
    }
}
