//! Planks, cylinders, coverage certificates and the covering-theorem checks.

mod certify;
mod checks;
mod random;

pub use certify::{certify_cover, certify_cover_with, CertificateKind, CoverStatus, CoverageCertificate};
pub use checks::{
    annulus_experiment, ball_check, bang_check, critical_epsilon, cylinder_bound_check, kadets_check, AnnulusReport,
    CheckReport, TIGHT_TOL,
};
pub use random::{random_cylinder_cover, random_kadets_cover, random_plank_cover, random_polygon, RandomCoverConfig};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geometry::io::{body_from_value, BodySpec};
use crate::geometry::{
    orthonormal_complement, orthonormalize, project_onto, volume, ConvexBody, Direction, Polytope, Vector, VolumeMethod,
};

/// `{x : |x·normal - center| <= width/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Plank {
    pub normal: Direction,
    pub center: f64,
    pub width: f64,
}

impl Plank {
    pub fn new(normal: Direction, center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite() && center.is_finite()) {
            return Err(Error::InvalidInput("plank width must be positive".into()));
        }
        Ok(Plank { normal, center, width })
    }

    /// Plank between `lo <= x·normal <= hi`.
    pub fn between(normal: Direction, lo: f64, hi: f64) -> Result<Self> {
        Self::new(normal, 0.5 * (lo + hi), hi - lo)
    }

    pub fn lo(&self) -> f64 {
        self.center - 0.5 * self.width
    }

    pub fn hi(&self) -> f64 {
        self.center + 0.5 * self.width
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        (self.normal.as_vector().dot(x) - self.center).abs() <= 0.5 * self.width + tol
    }

    /// Width of the plank over the width of `c` in the plank's normal direction.
    pub fn relative_width(&self, c: &ConvexBody) -> Result<f64> {
        let w = c.width(self.normal.as_vector());
        if !(w > 1e-300) {
            return Err(Error::Degenerate("body has zero width along the plank normal".into()));
        }
        Ok(self.width / w)
    }

    /// The same set as a cylinder over a hyperplane.
    pub fn as_cylinder(&self) -> Cylinder {
        Cylinder {
            axis: orthonormal_complement(&[self.normal.as_vector().clone()], self.normal.dim()),
            perp: vec![self.normal.as_vector().clone()],
            base: ConvexBody::Polytope(Polytope::interval(self.lo(), self.hi())),
        }
    }
}

/// `H + B` with `H = span(axis)` and the base `B` given in coordinates of the
/// orthonormal basis `perp` of `H⊥`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cylinder {
    axis: Vec<Vector>,
    perp: Vec<Vector>,
    base: ConvexBody,
}

impl Cylinder {
    /// From an orthonormal basis of `H`; the `H⊥` basis is completed deterministically.
    pub fn new(axis: Vec<Vector>, base: ConvexBody) -> Result<Self> {
        let d = axis.first().map(|v| v.len()).unwrap_or(0);
        check_orthonormal(&axis)?;
        let perp = orthonormal_complement(&axis, d);
        Self::with_perp(axis, perp, base)
    }

    /// From an orthonormal basis of `H⊥`; the base is in these coordinates.
    pub fn from_perp(perp: Vec<Vector>, base: ConvexBody) -> Result<Self> {
        let d = perp.first().map(|v| v.len()).unwrap_or(0);
        check_orthonormal(&perp)?;
        let axis = orthonormal_complement(&perp, d);
        Self::with_perp(axis, perp, base)
    }

    fn with_perp(axis: Vec<Vector>, perp: Vec<Vector>, base: ConvexBody) -> Result<Self> {
        let d = axis.len() + perp.len();
        if axis.is_empty() || perp.is_empty() {
            return Err(Error::InvalidInput("cylinder needs 0 < k < d".into()));
        }
        if base.dim() != perp.len() {
            return Err(Error::InvalidInput(format!(
                "base must be {}-dimensional for a {}-dimensional axis in dimension {d}",
                perp.len(),
                axis.len()
            )));
        }
        Ok(Cylinder { axis, perp, base })
    }

    /// Dimension `k` of the axis subspace `H`.
    pub fn k(&self) -> usize {
        self.axis.len()
    }

    pub fn dim(&self) -> usize {
        self.axis.len() + self.perp.len()
    }

    pub fn axis(&self) -> &[Vector] {
        &self.axis
    }

    pub fn perp(&self) -> &[Vector] {
        &self.perp
    }

    pub fn base(&self) -> &ConvexBody {
        &self.base
    }

    fn coords(&self, x: &Vector) -> Vector {
        Vector::from_iterator(self.perp.len(), self.perp.iter().map(|b| b.dot(x)))
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.base.contains(&self.coords(x), tol)
    }

    /// Back to a plank when the base is an interval.
    pub fn as_plank(&self) -> Option<Plank> {
        if self.perp.len() != 1 {
            return None;
        }
        let e = Vector::from_vec(vec![1.0]);
        let hi = self.base.support(&e);
        let lo = -self.base.support(&-e);
        Plank::between(Direction::from_unit(self.perp[0].clone()).ok()?, lo, hi).ok()
    }

    /// Cross-sectional volume: base volume over the volume of `K`'s shadow on `H⊥`.
    pub fn crv(&self, k: &ConvexBody) -> Result<f64> {
        let base = volume(&self.base, VolumeMethod::Exact)?.value;
        let shadow = if self.perp.len() == k.dim() {
            k.clone()
        } else {
            project_onto(k, &self.perp)?
        };
        let sv = volume(&shadow, VolumeMethod::Exact)?.value;
        if !(sv > 1e-300) {
            return Err(Error::Degenerate("shadow has zero volume".into()));
        }
        Ok(base / sv)
    }
}

fn check_orthonormal(vs: &[Vector]) -> Result<()> {
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            if (a.dot(b) - want).abs() > 1e-12 {
                return Err(Error::InvalidInput("cylinder basis is not orthonormal".into()));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoverElement {
    Plank(Plank),
    Cylinder(Cylinder),
    Body(ConvexBody),
}

impl CoverElement {
    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        match self {
            CoverElement::Plank(p) => p.contains(x, tol),
            CoverElement::Cylinder(c) => c.contains(x, tol),
            CoverElement::Body(b) => b.contains(x, tol),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            CoverElement::Plank(p) => p.normal.dim(),
            CoverElement::Cylinder(c) => c.dim(),
            CoverElement::Body(b) => b.dim(),
        }
    }

    /// As a plank, if it is one (including interval-based cylinders).
    pub fn as_plank(&self) -> Option<Plank> {
        match self {
            CoverElement::Plank(p) => Some(p.clone()),
            CoverElement::Cylinder(c) => c.as_plank(),
            CoverElement::Body(_) => None,
        }
    }
}

/// A target body and the sets meant to cover it.
#[derive(Debug, Clone)]
pub struct Arrangement {
    pub target: ConvexBody,
    pub covers: Vec<CoverElement>,
}

impl Arrangement {
    pub fn new(target: ConvexBody, covers: Vec<CoverElement>) -> Result<Self> {
        let d = target.dim();
        if covers.iter().any(|c| c.dim() != d) {
            return Err(Error::InvalidInput(
                "cover elements differ in dimension from target".into(),
            ));
        }
        Ok(Arrangement { target, covers })
    }

    pub fn planks(target: ConvexBody, planks: Vec<Plank>) -> Result<Self> {
        Self::new(target, planks.into_iter().map(CoverElement::Plank).collect())
    }

    /// Parses `{"target": <body>, "covers": [<plank|cylinder|body>...]}`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let target = body_from_value(
            value
                .get("target")
                .ok_or_else(|| Error::InvalidInput("missing target".into()))?,
        )?;
        let covers = value
            .get("covers")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::InvalidInput("missing covers list".into()))?
            .iter()
            .map(parse_cover)
            .collect::<Result<Vec<_>>>()?;
        Self::new(target, covers)
    }
}

#[derive(Deserialize)]
struct PlankSpec {
    normal: Vec<f64>,
    center: f64,
    width: f64,
}

#[derive(Deserialize)]
struct CylinderSpec {
    #[serde(default)]
    axis: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    perp: Option<Vec<Vec<f64>>>,
    base: BodySpec,
}

pub fn parse_plank(value: &serde_json::Value) -> Result<Plank> {
    let p: PlankSpec = serde_json::from_value(value.clone()).map_err(|e| Error::InvalidInput(format!("plank: {e}")))?;
    Plank::new(Direction::from_slice(&p.normal)?, p.center, p.width)
}

pub fn parse_cover(value: &serde_json::Value) -> Result<CoverElement> {
    match value.get("type").and_then(|t| t.as_str()) {
        Some("plank") => Ok(CoverElement::Plank(parse_plank(value)?)),
        Some("cylinder") => {
            let c: CylinderSpec =
                serde_json::from_value(value.clone()).map_err(|e| Error::InvalidInput(format!("cylinder: {e}")))?;
            let base = c.base.to_body()?;
            let vecs = |vs: Vec<Vec<f64>>| -> Result<Vec<Vector>> {
                orthonormalize(&vs.into_iter().map(Vector::from_vec).collect::<Vec<_>>())
            };
            match (c.axis, c.perp) {
                (_, Some(p)) => Ok(CoverElement::Cylinder(Cylinder::from_perp(vecs(p)?, base)?)),
                (Some(a), None) => Ok(CoverElement::Cylinder(Cylinder::new(vecs(a)?, base)?)),
                (None, None) => Err(Error::InvalidInput("cylinder needs axis or perp".into())),
            }
        }
        _ => Ok(CoverElement::Body(body_from_value(value)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn v(x: &[f64]) -> Vector {
        Vector::from_column_slice(x)
    }

    #[test]
    fn relative_widths() {
        let b = ConvexBody::unit_ball(2);
        let p = Plank::new(Direction::axis(2, 0), 0.0, 0.5).unwrap();
        assert!((p.relative_width(&b).unwrap() - 0.25).abs() < 1e-15);
        let sq = ConvexBody::Polytope(Polytope::unit_cube(2));
        let p = Plank::new(Direction::from_slice(&[1.0, 1.0]).unwrap(), 0.0, 1.0).unwrap();
        assert!((p.relative_width(&sq).unwrap() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn crv_examples() {
        let disk = ConvexBody::unit_ball(2);
        let p = Plank::new(Direction::axis(2, 1), 0.1, 0.6).unwrap();
        assert!((p.as_cylinder().crv(&disk).unwrap() - 0.3).abs() < 1e-15);
        let ball = ConvexBody::unit_ball(3);
        let base = ConvexBody::ball(v(&[0.0, 0.0]), 0.5).unwrap();
        let cyl = Cylinder::new(vec![v(&[0.0, 0.0, 1.0])], base).unwrap();
        assert!((cyl.crv(&ball).unwrap() - 0.25).abs() < 1e-15);
        assert!(cyl.contains(&v(&[0.4, 0.0, 5.0]), 0.0));
        assert!(!cyl.contains(&v(&[0.4, 0.4, 0.0]), 0.0));
    }

    #[test]
    fn crv_invariant_under_scaling() {
        let k = ConvexBody::Polytope(Polytope::regular_simplex(3, 1.0));
        let base = ConvexBody::ball(v(&[0.1, 0.0]), 0.2).unwrap();
        let cyl = Cylinder::new(vec![v(&[0.0, 0.0, 1.0])], base.clone()).unwrap();
        let scaled = Cylinder::from_perp(cyl.perp().to_vec(), base.scale(2.0)).unwrap();
        let a = cyl.crv(&k).unwrap();
        let b = scaled
            .crv(
                &k.affine_image(&(DMatrix::identity(3, 3) * 2.0), &Vector::zeros(3))
                    .unwrap(),
            )
            .unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn plank_as_cylinder_roundtrip() {
        let p = Plank::new(Direction::from_slice(&[0.3, 0.4]).unwrap(), 0.2, 0.7).unwrap();
        let q = p.as_cylinder().as_plank().unwrap();
        assert!((q.center - p.center).abs() < 1e-15 && (q.width - p.width).abs() < 1e-15);
    }

    #[test]
    fn parse_arrangement() {
        let json: serde_json::Value = serde_json::from_str(
            r#"{"target":{"type":"ball","center":[0,0,0],"radius":1},
                "covers":[{"type":"plank","normal":[0,0,1],"center":0,"width":1},
                          {"type":"cylinder","axis":[[0,0,1]],"base":{"type":"ball","center":[0,0],"radius":0.5}},
                          {"type":"ball","center":[0,0,0],"radius":0.3}]}"#,
        )
        .unwrap();
        let arr = Arrangement::from_json(&json).unwrap();
        assert_eq!(arr.covers.len(), 3);
        assert!(matches!(arr.covers[1], CoverElement::Cylinder(_)));
    }
}
