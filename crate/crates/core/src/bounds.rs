//! Volume lower bounds for bodies of given minimal width, constant-width
//! data, and ball-polyhedra (intersections of unit balls).

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::{
    minimal_width, pt, unit_ball_volume, volume, ArcPolygon, ConvexBody, Edge, Pt2, Vector, VolumeMethod,
    WidthCertainty,
};

/// `n!!` exactly.
pub fn double_factorial(n: u32) -> u128 {
    (1..=n).rev().step_by(2).map(|k| k as u128).product()
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Firey's lower bound coefficient `2/(√3·d!)`.
pub fn firey_f(d: u32) -> f64 {
    2.0 / (3f64.sqrt() * factorial(d) as f64)
}

/// Steinhagen's inradius-to-width ratio.
pub fn steinhagen_r(d: u32) -> f64 {
    let df = d as f64;
    if d % 2 == 1 {
        1.0 / (2.0 * df.sqrt())
    } else {
        (df + 2.0).sqrt() / (2.0 * (df + 1.0))
    }
}

/// `g(d) = r(d)·(κ_d/κ_{d−1})·g(d−1)` from `g(2) = 1/√3`.
pub fn g_recursive(d: u32) -> f64 {
    let mut g = 1.0 / 3f64.sqrt();
    for k in 3..=d {
        g *= steinhagen_r(k) * unit_ball_volume(k as usize) / unit_ball_volume(k as usize - 1);
    }
    g
}

/// The closed forms for `g(d)`, odd and even `d` separately, as printed.
pub fn g_closed(d: u32) -> f64 {
    let df = d as f64;
    let num = 3.0 * PI.powi(d as i32 - 3);
    if d % 2 == 1 {
        let top = num * double_factorial(d + 1) as f64;
        let bottom = 2f64.powi(d as i32 - 2) * (double_factorial(d) as f64).powi(5);
        (top / bottom).sqrt()
    } else {
        let top = num * double_factorial(d + 2) as f64;
        let bottom =
            (df + 1.0).powi(2) * (double_factorial(d) as f64).powi(2) * (double_factorial(d - 1) as f64).powi(3);
        (top / bottom).sqrt()
    }
}

/// The value quoted for `g(4)` alongside the closed forms, `√(2π/75)`.
pub fn g4_quoted() -> f64 {
    (2.0 * PI / 75.0).sqrt()
}

/// Chakerian's volume bound for constant width 1 in three dimensions.
pub fn chakerian_constant() -> f64 {
    PI * (3.0 * 6f64.sqrt() - 7.0) / 3.0
}

/// Volume of Meissner's bodies of constant width 1.
pub fn meissner_volume() -> f64 {
    PI * (2.0 / 3.0 - 0.25 * 3f64.sqrt() * (1.0 / 3.0f64).acos())
}

/// Heil's body of minimal width 1, volume as quoted.
pub const HEIL_VOLUME: f64 = 0.298;

/// Schramm's volume bound for constant width `w`.
pub fn schramm_volume(d: u32, w: f64) -> f64 {
    let df = d as f64;
    ((3.0 + 2.0 / (df + 1.0)).sqrt() - 1.0).powi(d as i32) * (w / 2.0).powi(d as i32) * unit_ball_volume(d as usize)
}

/// Surface bound from projecting onto hyperplanes, with the factors as
/// printed: `d(√(3+2/d) − 1)^{d−1}(w/2)^{d−1} κ_{d−1} κ_d`.
pub fn schramm_surface_printed(d: u32, w: f64) -> f64 {
    let df = d as f64;
    df * ((3.0 + 2.0 / df).sqrt() - 1.0).powi(d as i32 - 1)
        * (w / 2.0).powi(d as i32 - 1)
        * unit_ball_volume(d as usize - 1)
        * unit_ball_volume(d as usize)
}

/// The same bound rederived through Kubota's formula: the projection bound
/// `(…)^{d−1}(w/2)^{d−1} κ_{d−1}` integrated over the sphere (measure `dκ_d`)
/// and divided by `κ_{d−1}`. At `d = 2` it returns `πw`, Barbier's perimeter.
pub fn schramm_surface(d: u32, w: f64) -> f64 {
    let df = d as f64;
    df * unit_ball_volume(d as usize)
        * ((3.0 + 2.0 / df).sqrt() - 1.0).powi(d as i32 - 1)
        * (w / 2.0).powi(d as i32 - 1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub d: u32,
    pub f: f64,
    pub g_recursive: f64,
    pub g_closed: f64,
    pub steinhagen_r: f64,
    pub schramm_volume: f64,
    pub schramm_surface: f64,
    pub schramm_surface_printed: f64,
}

/// Per-unit-width constants for `d` in the range.
pub fn bound_table(dims: std::ops::RangeInclusive<u32>) -> Result<Vec<BoundRow>> {
    if *dims.start() < 2 {
        return Err(Error::InvalidInput("dimensions start at 2".into()));
    }
    Ok(dims
        .map(|d| BoundRow {
            d,
            f: firey_f(d),
            g_recursive: g_recursive(d),
            g_closed: if d >= 3 { g_closed(d) } else { g_recursive(2) },
            steinhagen_r: steinhagen_r(d),
            schramm_volume: schramm_volume(d, 1.0),
            schramm_surface: schramm_surface(d, 1.0),
            schramm_surface_printed: schramm_surface_printed(d, 1.0),
        })
        .collect())
}

/// Least volume of a body of minimal width `w`: exact in the plane
/// (regular triangle), otherwise the recursion lower bound.
pub fn minimal_width_volume_lower(d: u32, w: f64) -> f64 {
    if d == 2 {
        w * w / 3f64.sqrt()
    } else {
        g_recursive(d) * w.powi(d as i32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantWidthSource {
    /// Reuleaux triangle and Barbier's perimeter.
    Exact,
    /// Published lower bounds standing in for the unknown minimizers.
    LowerBound,
}

impl ConstantWidthSource {
    pub fn label(&self) -> &'static str {
        match self {
            ConstantWidthSource::Exact => "exact",
            ConstantWidthSource::LowerBound => "substituted lower bound",
        }
    }
}

/// Volume and boundary measure of the least constant-width-`w` body, or
/// valid lower bounds for them where the minimizers are unknown.
pub fn constant_width_minimum(d: u32, w: f64) -> (f64, f64, ConstantWidthSource) {
    match d {
        2 => (0.5 * (PI - 3f64.sqrt()) * w * w, PI * w, ConstantWidthSource::Exact),
        3 => (
            (chakerian_constant() * w.powi(3)).max(schramm_volume(3, w)),
            schramm_surface(3, w),
            ConstantWidthSource::LowerBound,
        ),
        _ => (
            schramm_volume(d, w),
            schramm_surface(d, w),
            ConstantWidthSource::LowerBound,
        ),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReuleauxReport {
    pub area: f64,
    pub perimeter: f64,
    pub body: ArcPolygon,
}

pub fn blaschke_lebesgue_2d(w: f64) -> Result<ReuleauxReport> {
    if !(w > 0.0) {
        return Err(Error::InvalidInput("width must be positive".into()));
    }
    let body = ArcPolygon::reuleaux_triangle(w);
    Ok(ReuleauxReport {
        area: 0.5 * (PI - 3f64.sqrt()) * w * w,
        perimeter: PI * w,
        body,
    })
}

/// Area of the intersection of two unit disks whose centres are `delta` apart.
pub fn lens_area(delta: f64) -> f64 {
    let h = (delta / 2.0).clamp(0.0, 1.0);
    2.0 * h.acos() - delta * (1.0 - h * h).sqrt()
}

/// Smallest enclosing ball (Welzl).
pub fn enclosing_ball(points: &[Vector]) -> Option<(Vector, f64)> {
    let d = points.first()?.len();
    fn ball_through(r: &[Vector], d: usize) -> Option<(Vector, f64)> {
        match r.len() {
            0 => None,
            1 => Some((r[0].clone(), 0.0)),
            k => {
                let p0 = &r[0];
                let a = DMatrix::from_fn(k - 1, k - 1, |i, j| 2.0 * (&r[i + 1] - p0).dot(&(&r[j + 1] - p0)));
                let b = DVector::from_fn(k - 1, |i, _| (&r[i + 1] - p0).norm_squared());
                let lam = a.lu().solve(&b)?;
                let mut c = p0.clone();
                for i in 0..k - 1 {
                    c += (&r[i + 1] - p0) * lam[i];
                }
                let rad = (&c - p0).norm();
                (c.len() == d).then_some((c, rad))
            }
        }
    }
    fn welzl(p: &[Vector], r: &mut Vec<Vector>, d: usize) -> Option<(Vector, f64)> {
        if p.is_empty() || r.len() == d + 1 {
            return ball_through(r, d);
        }
        let (last, rest) = p.split_last().expect("nonempty");
        let ball = welzl(rest, r, d);
        if let Some((c, rad)) = &ball {
            if (last - c).norm() <= rad * (1.0 + 1e-12) + 1e-14 {
                return ball;
            }
        }
        r.push(last.clone());
        let out = welzl(rest, r, d);
        r.pop();
        out
    }
    welzl(points, &mut Vec::new(), d)
}

/// The intersection of unit balls centred at a finite set lying in an
/// open unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPolyhedron {
    pub centers: Vec<Vector>,
}

impl BallPolyhedron {
    pub fn new(centers: Vec<Vector>) -> Result<Self> {
        let Some(first) = centers.first() else {
            return Err(Error::InvalidInput("no centres".into()));
        };
        let d = first.len();
        if centers.iter().any(|c| c.len() != d) {
            return Err(Error::InvalidInput("centre dimensions differ".into()));
        }
        let (_, r) = enclosing_ball(&centers).ok_or_else(|| Error::Degenerate("enclosing ball".into()))?;
        if r >= 1.0 - 1e-12 {
            return Err(Error::HypothesisNotMet(format!(
                "centres need an open unit ball around them (enclosing radius {r})"
            )));
        }
        Ok(BallPolyhedron { centers })
    }

    pub fn dim(&self) -> usize {
        self.centers[0].len()
    }

    /// Exact planar representation.
    pub fn arc_polygon(&self) -> Option<ArcPolygon> {
        if self.dim() != 2 {
            return None;
        }
        let disks: Vec<(Pt2, f64)> = self.centers.iter().map(|c| (pt(c), 1.0)).collect();
        ArcPolygon::from_constraints(&disks, &[])
    }

    pub fn body(&self) -> Result<ConvexBody> {
        if let Some(a) = self.arc_polygon() {
            return Ok(ConvexBody::Arc(a));
        }
        let balls = self
            .centers
            .iter()
            .map(|c| ConvexBody::Ball {
                center: c.clone(),
                radius: 1.0,
            })
            .collect();
        ConvexBody::intersection(balls)
    }

    /// Minimal width: exact in the plane, a refined direction search otherwise.
    pub fn width(&self) -> Result<(f64, WidthCertainty)> {
        if let Some(a) = self.arc_polygon() {
            return Ok((a.width_extreme(true).value, WidthCertainty::Exact));
        }
        let w = minimal_width(&self.body()?)?;
        Ok((w.value, w.certainty))
    }

    /// Corners of the planar ball-polyhedron where arcs of different
    /// centres meet.
    fn corners(a: &ArcPolygon) -> Vec<Pt2> {
        let vs = a.vertices();
        let es = a.edges();
        let n = vs.len();
        let centre = |e: &Edge| match e {
            Edge::Arc { center, .. } => Some(*center),
            Edge::Line => None,
        };
        (0..n)
            .filter(|&i| {
                let prev = centre(&es[(i + n - 1) % n]);
                let next = centre(&es[i]);
                match (prev, next) {
                    (Some(p), Some(q)) => (p - q).norm() > 1e-12,
                    _ => true,
                }
            })
            .map(|i| vs[i])
            .collect()
    }

    /// The spindle convex hull in the plane: by duality its boundary arcs
    /// are unit circles centred at the corners of the ball-polyhedron.
    pub fn spindle_hull(&self) -> Result<Option<ArcPolygon>> {
        let a = self
            .arc_polygon()
            .ok_or_else(|| Error::Unsupported("spindle hull beyond the plane".into()))?;
        let corners = Self::corners(&a);
        if corners.is_empty() {
            return Ok(None);
        }
        let disks: Vec<(Pt2, f64)> = corners.iter().map(|c| (*c, 1.0)).collect();
        Ok(ArcPolygon::from_constraints(&disks, &[]))
    }

    /// Diameter of the spindle hull: exact in the plane; beyond the plane
    /// the largest pairwise centre distance, which only bounds it from below.
    pub fn spindle_diameter(&self) -> Result<(f64, WidthCertainty)> {
        if self.dim() == 2 {
            let d = match self.spindle_hull()? {
                Some(h) => h.width_extreme(false).value,
                None => 0.0,
            };
            // a single effective centre leaves a point
            return Ok((d, WidthCertainty::Exact));
        }
        let mut best: f64 = 0.0;
        for (i, a) in self.centers.iter().enumerate() {
            for b in &self.centers[i + 1..] {
                best = best.max((a - b).norm());
            }
        }
        Ok((best, WidthCertainty::Heuristic))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallPolyReport {
    pub width: f64,
    pub volume: f64,
    pub volume_error: f64,
    pub bound: f64,
    pub source: ConstantWidthSource,
}

/// Volume of a ball-polyhedron of minimal width `x ∈ [1, 2)` against the
/// bound through constant-width bodies of width `2 − x`.
pub fn ball_poly_volume_lb(x: &BallPolyhedron, samples: u64, seed: u64) -> Result<BallPolyReport> {
    let d = x.dim() as u32;
    let (w, _) = x.width()?;
    if !(1.0..2.0 - 1e-12).contains(&w) {
        return Err(Error::HypothesisNotMet(format!("minimal width {w} is outside [1, 2)")));
    }
    let (vol, err) = match x.arc_polygon() {
        Some(a) => (a.area(), 0.0),
        None => {
            let v = volume(&x.body()?, VolumeMethod::MonteCarlo { samples, seed })?;
            (v.value, v.std_error)
        }
    };
    let (bound, source) = ball_poly_bound(d, w);
    Ok(BallPolyReport {
        width: w,
        volume: vol,
        volume_error: err,
        bound,
        source,
    })
}

/// `vol(L) + svol(∂L)(x−1) + κ_d(x−1)^d` for the least constant-width body `L` of width `2 − x`.
pub fn ball_poly_bound(d: u32, x: f64) -> (f64, ConstantWidthSource) {
    let (v, s, src) = constant_width_minimum(d, 2.0 - x);
    (
        v + s * (x - 1.0) + unit_ball_volume(d as usize) * (x - 1.0).powi(d as i32),
        src,
    )
}

/// Upper bound on the volume of the unit `d`-ball covered by planks of total width `w₀ <= 1`.
pub fn combined_cover_bound(d: u32, widths: &[f64]) -> Result<(f64, ConstantWidthSource)> {
    let w0: f64 = widths.iter().sum();
    if w0 > 1.0 {
        return Err(Error::HypothesisNotMet(format!("total width {w0} exceeds 1")));
    }
    let (v, s, src) = constant_width_minimum(d, w0);
    let kd = unit_ball_volume(d as usize);
    Ok(((1.0 - (1.0 - w0).powi(d as i32)) * kd - v - s * (1.0 - w0), src))
}

/// Upper bound on the volume of a body of minimal width `w` covered by
/// planks of total width `w₀ < w`, through the least volume of a body of
/// minimal width `w − w₀`.
pub fn minimal_width_cover_bound(d: u32, body_volume: f64, w: f64, widths: &[f64]) -> Result<f64> {
    let w0: f64 = widths.iter().sum();
    if w0 >= w {
        return Err(Error::HypothesisNotMet(
            "total width must be below the minimal width".into(),
        ));
    }
    Ok(body_volume - minimal_width_volume_lower(d, w - w0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Vector {
        Vector::from_column_slice(x)
    }

    #[test]
    fn constants() {
        assert!((firey_f(2) - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((firey_f(3) - 1.0 / (3.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((firey_f(4) - 1.0 / (12.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((steinhagen_r(2) - 1.0 / 3.0).abs() < 1e-15);
        assert!((steinhagen_r(3) - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((steinhagen_r(5) - 1.0 / (2.0 * 5f64.sqrt())).abs() < 1e-15);
        assert!((g_recursive(3) - 2.0 / 9.0).abs() < 1e-15);
        assert!((g_closed(3) - 2.0 / 9.0).abs() < 1e-15);
        for d in [5, 7] {
            assert!((g_closed(d) - g_recursive(d)).abs() < 1e-12);
        }
        let odd5 = (3.0 * PI * PI * 48.0 / (8.0 * 15f64.powi(5))).sqrt();
        assert!((g_recursive(5) - odd5).abs() < 1e-12);
        assert!((g_recursive(5) - 0.015296).abs() < 1e-6);
        assert!((g_closed(4) - (PI / 300.0).sqrt()).abs() < 1e-12);
        assert!((g4_quoted() - 0.2894).abs() < 1e-4);
        for d in 3..=20 {
            assert!(g_recursive(d) > firey_f(d));
        }
        assert_eq!(double_factorial(7), 105);
        assert_eq!(double_factorial(8), 384);
        assert_eq!(double_factorial(0), 1);
    }

    #[test]
    fn constant_width_numbers() {
        assert!((chakerian_constant() - 0.365).abs() < 1e-3);
        assert!((meissner_volume() - 0.420).abs() < 1e-3);
        let s3 = schramm_volume(3, 1.0);
        assert!((s3 - 0.345785).abs() < 1e-5 && s3 < chakerian_constant());
        assert!((schramm_surface(2, 1.7) - PI * 1.7).abs() < 1e-14);
        assert!(schramm_volume(2, 1.0) < 0.5 * (PI - 3f64.sqrt()));
        let r = blaschke_lebesgue_2d(1.0).unwrap();
        assert!((r.area - 0.7048).abs() < 1e-4);
        assert!((r.body.area() - r.area).abs() < 1e-12);
        assert!((r.body.perimeter() - PI).abs() < 1e-12);
        for k in 0..50 {
            let th = k as f64 * PI / 50.0;
            assert!((r.body.width(Pt2::new(th.cos(), th.sin())) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn width_and_spindle_diameter_examples() {
        let one = BallPolyhedron::new(vec![v(&[0.0, 0.0])]).unwrap();
        assert!((one.width().unwrap().0 - 2.0).abs() < 1e-12);
        assert_eq!(one.spindle_diameter().unwrap().0, 0.0);
        let two = BallPolyhedron::new(vec![v(&[0.0, 0.0]), v(&[0.5, 0.0])]).unwrap();
        let (w, _) = two.width().unwrap();
        let (dm, _) = two.spindle_diameter().unwrap();
        assert!((w - 1.5).abs() < 1e-12 && (dm - 0.5).abs() < 1e-12);
        // a wide triangle: the spindle hull bulges past the pairwise distances
        let s = 1.5;
        let tri: Vec<Vector> = (0..3)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / 3.0;
                v(&[s / 3f64.sqrt() * a.cos(), s / 3f64.sqrt() * a.sin()])
            })
            .collect();
        let b = BallPolyhedron::new(tri).unwrap();
        let (w, _) = b.width().unwrap();
        let (dm, _) = b.spindle_diameter().unwrap();
        assert!(dm > s + 0.1);
        assert!((w + dm - 2.0).abs() < 1e-9);
        assert!(BallPolyhedron::new(vec![v(&[0.0, 0.0]), v(&[2.0, 0.0])]).is_err());
    }

    #[test]
    fn lens_bound() {
        let two = BallPolyhedron::new(vec![v(&[0.0, 0.0]), v(&[0.5, 0.0])]).unwrap();
        let r = ball_poly_volume_lb(&two, 0, 0).unwrap();
        assert!((r.volume - lens_area(0.5)).abs() < 1e-12);
        assert!((r.volume - 2.1521).abs() < 1e-4);
        assert!((r.bound - 1.7470).abs() < 1e-4);
        assert!(r.volume >= r.bound);
        let one = BallPolyhedron::new(vec![v(&[0.0, 0.0])]).unwrap();
        assert!(matches!(
            ball_poly_volume_lb(&one, 0, 0),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn combined_bound_examples() {
        let (b, _) = combined_cover_bound(2, &[0.2, 0.3]).unwrap();
        let expect = 0.75 * PI - 0.5 * (PI - 3f64.sqrt()) * 0.25 - PI * 0.25;
        assert!((b - expect).abs() < 1e-12 && (b - 1.3948).abs() < 1e-3);
        assert!(combined_cover_bound(2, &[]).unwrap().0.abs() < 1e-15);
        assert!(combined_cover_bound(3, &[0.6, 0.6]).is_err());
    }

    #[test]
    fn enclosing_ball_cases() {
        let pts = vec![v(&[0.0, 0.0]), v(&[2.0, 0.0]), v(&[1.0, 0.1])];
        let (c, r) = enclosing_ball(&pts).unwrap();
        assert!((r - 1.0).abs() < 1e-12 && (c - v(&[1.0, 0.0])).norm() < 1e-12);
        let tri = vec![v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.5, 3f64.sqrt() / 2.0])];
        let (_, r) = enclosing_ball(&tri).unwrap();
        assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        let cube: Vec<Vector> = (0..8)
            .map(|k| v(&[(k & 1) as f64, (k >> 1 & 1) as f64, (k >> 2 & 1) as f64]))
            .collect();
        let (_, r) = enclosing_ball(&cube).unwrap();
        assert!((r - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }
}
