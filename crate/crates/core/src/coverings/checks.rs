//! Covering-theorem checks over certified arrangements.

use super::{certify_cover, Arrangement, CertificateKind, CoverElement, CoverageCertificate, Cylinder, Plank};
use crate::error::{Error, Result};
use crate::geometry::{minimal_width, ArcPolygon, ConvexBody, Pt2, Vector};
use crate::inradii::c_inradius;

/// `|slack|` at or below this is reported as tight.
pub const TIGHT_TOL: f64 = 1e-6;
/// Negative slack beyond this on a theorem-backed check is a violation.
const VIOLATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub sum: f64,
    /// Strongest bound a proven theorem guarantees here.
    pub bound: f64,
    pub slack: f64,
    pub certificate: CertificateKind,
    /// Whether a theorem guarantees `slack >= 0`.
    pub backed: bool,
    /// Bound of an open problem, reported without assertion.
    pub open_bound: Option<f64>,
}

impl CheckReport {
    fn new(sum: f64, bound: f64, certificate: CertificateKind, backed: bool) -> Self {
        CheckReport {
            sum,
            bound,
            slack: sum - bound,
            certificate,
            backed,
            open_bound: None,
        }
    }

    pub fn tight(&self) -> bool {
        self.slack.abs() <= TIGHT_TOL
    }

    /// A backed bound failed; only meaningful as a hard error with an exact certificate.
    pub fn violation(&self) -> bool {
        self.backed && self.slack < -VIOLATION_TOL
    }

    pub fn hard_violation(&self) -> bool {
        self.violation() && self.certificate == CertificateKind::Exact
    }
}

fn require_covered(cert: &CoverageCertificate) -> Result<()> {
    if !cert.covered() {
        return Err(Error::HypothesisNotMet("arrangement is not a cover".into()));
    }
    Ok(())
}

fn planks_of(arr: &Arrangement) -> Result<Vec<Plank>> {
    arr.covers
        .iter()
        .map(|c| {
            c.as_plank()
                .ok_or_else(|| Error::InvalidInput("every cover must be a plank".into()))
        })
        .collect()
}

/// Sum of plank widths against the minimal width of the target.
pub fn bang_check(arr: &Arrangement, cert: &CoverageCertificate) -> Result<CheckReport> {
    require_covered(cert)?;
    let planks = planks_of(arr)?;
    let sum: f64 = planks.iter().map(|p| p.width).sum();
    let w = minimal_width(&arr.target)?;
    Ok(CheckReport::new(sum, w.value, cert.kind, true))
}

/// Sum of relative widths against 1. Non-symmetric targets are accepted only
/// with `conjecture_mode`, and then carry no guarantee.
pub fn ball_check(arr: &Arrangement, cert: &CoverageCertificate, conjecture_mode: bool) -> Result<CheckReport> {
    require_covered(cert)?;
    let symmetric = arr.target.is_centrally_symmetric();
    if !symmetric && !conjecture_mode {
        return Err(Error::HypothesisNotMet("target is not centrally symmetric".into()));
    }
    let planks = planks_of(arr)?;
    let mut sum = 0.0;
    for p in &planks {
        sum += p.relative_width(&arr.target)?;
    }
    let mut r = CheckReport::new(sum, 1.0, cert.kind, symmetric);
    if !symmetric {
        r.open_bound = Some(1.0);
    }
    Ok(r)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Sum of cross-sectional volumes against `1/C(d,k)`, or 1 for ellipsoids
/// covered by cylinders over lines.
pub fn cylinder_bound_check(arr: &Arrangement, cert: &CoverageCertificate) -> Result<CheckReport> {
    require_covered(cert)?;
    let cyls: Vec<Cylinder> = arr
        .covers
        .iter()
        .map(|c| match c {
            CoverElement::Plank(p) => Ok(p.as_cylinder()),
            CoverElement::Cylinder(c) => Ok(c.clone()),
            CoverElement::Body(_) => Err(Error::InvalidInput("every cover must be a cylinder".into())),
        })
        .collect::<Result<_>>()?;
    let d = arr.target.dim();
    let k = cyls.first().map(|c| c.k()).unwrap_or(d - 1);
    if cyls.iter().any(|c| c.k() != k) {
        return Err(Error::HypothesisNotMet("cylinders of mixed dimension".into()));
    }
    let mut sum = 0.0;
    for c in &cyls {
        sum += c.crv(&arr.target)?;
    }
    let ellipsoid = matches!(arr.target, ConvexBody::Ellipsoid { .. } | ConvexBody::Ball { .. });
    let general = 1.0 / binomial(d, k);
    let bound = if ellipsoid && k == 1 { 1.0 } else { general };
    let mut r = CheckReport::new(sum, bound, cert.kind, true);
    if ellipsoid && k > 1 && k + 1 < d {
        r.open_bound = Some(1.0);
    }
    Ok(r)
}

/// Sum of inradii of the covering bodies against the radius of the target ball.
pub fn kadets_check(arr: &Arrangement, cert: &CoverageCertificate) -> Result<CheckReport> {
    require_covered(cert)?;
    let ConvexBody::Ball { radius, .. } = arr.target else {
        return Err(Error::HypothesisNotMet("target must be a ball".into()));
    };
    let d = arr.target.dim();
    let mut sum = 0.0;
    for c in &arr.covers {
        sum += match c {
            CoverElement::Plank(p) => 0.5 * p.width,
            CoverElement::Cylinder(c) => {
                let m = c.base().dim();
                c_inradius(c.base(), &ConvexBody::unit_ball(m))?.lambda
            }
            CoverElement::Body(b) => c_inradius(b, &ConvexBody::unit_ball(d))?.lambda,
        };
    }
    Ok(CheckReport::new(sum, radius, cert.kind, true))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusReport {
    pub covered: bool,
    /// An uncovered annulus point when not covered.
    pub witness: Option<Vector>,
    pub sum: f64,
    pub bound: f64,
    pub slack: f64,
    /// The guarantee holds for holes no larger than the critical one.
    pub backed: bool,
}

/// Critical hole scale for the unit square.
pub fn critical_epsilon() -> f64 {
    1.0 - 1.0 / 2f64.sqrt()
}

/// Unit square minus the centred `epsilon`-scaled square, split into four
/// rectangles and certified exactly against the planks.
pub fn annulus_experiment(epsilon: f64, planks: &[Plank]) -> Result<AnnulusReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidInput("epsilon must lie in (0, 1)".into()));
    }
    let a = 0.5 - 0.5 * epsilon;
    let b = 0.5 + 0.5 * epsilon;
    let rect = |x0: f64, y0: f64, x1: f64, y1: f64| {
        ArcPolygon::polygon(vec![
            Pt2::new(x0, y0),
            Pt2::new(x1, y0),
            Pt2::new(x1, y1),
            Pt2::new(x0, y1),
        ])
        .expect("rectangle")
    };
    let parts = [
        rect(0.0, 0.0, 1.0, a),
        rect(0.0, b, 1.0, 1.0),
        rect(0.0, a, a, b),
        rect(b, a, 1.0, b),
    ];
    let mut witness = None;
    for part in parts {
        let arr = Arrangement::planks(ConvexBody::Arc(part), planks.to_vec())?;
        let cert = certify_cover(&arr, 1e-3, 0);
        if !cert.covered() {
            witness = cert.witness;
            break;
        }
    }
    let sum: f64 = planks.iter().map(|p| p.width).sum();
    Ok(AnnulusReport {
        covered: witness.is_none(),
        witness,
        sum,
        bound: 1.0,
        slack: sum - 1.0,
        backed: epsilon <= critical_epsilon() + 1e-15,
    })
}
