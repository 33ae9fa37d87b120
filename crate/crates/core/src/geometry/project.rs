//! Orthogonal projection onto hyperplanes through the origin.

use nalgebra::DMatrix;

use super::body::ConvexBody;
use super::polytope::Polytope;
use super::{orthonormal_complement, Direction, Vector};
use crate::error::{Error, Result};

/// Orthonormal basis of `u⊥` used for projected coordinates.
pub fn projection_basis(u: &Direction) -> Vec<Vector> {
    orthonormal_complement(&[u.as_vector().clone()], u.dim())
}

fn coords(basis: &[Vector], x: &Vector) -> Vector {
    Vector::from_iterator(basis.len(), basis.iter().map(|b| b.dot(x)))
}

/// Shadow of `body` on `u⊥`, in the coordinates of [`projection_basis`].
pub fn project(body: &ConvexBody, u: &Direction) -> Result<ConvexBody> {
    let basis = projection_basis(u);
    project_onto(body, &basis)
}

/// Shadow of `body` on the span of the orthonormal `basis`, in its coordinates.
pub fn project_onto(body: &ConvexBody, basis: &[Vector]) -> Result<ConvexBody> {
    let k = basis.len();
    if k == 0 {
        return Err(Error::InvalidInput("empty projection basis".into()));
    }
    if k == 1 {
        let b = &basis[0];
        let hi = body.support(b);
        let lo = -body.support(&-b);
        return Ok(ConvexBody::Polytope(Polytope::interval(lo, hi)));
    }
    match body {
        ConvexBody::Polytope(p) => {
            let pts = p.vertices().iter().map(|v| coords(basis, v)).collect();
            Ok(ConvexBody::Polytope(Polytope::from_v(pts)?))
        }
        ConvexBody::Ball { center, radius } => Ok(ConvexBody::Ball {
            center: coords(basis, center),
            radius: *radius,
        }),
        ConvexBody::Ellipsoid { center, map } => {
            let q = DMatrix::from_fn(body.dim(), k, |r, c| basis[c][r]);
            let qm = q.transpose() * map;
            let form = &qm * qm.transpose();
            let l = form
                .cholesky()
                .ok_or_else(|| Error::Degenerate("flat projected ellipsoid".into()))?
                .l();
            ConvexBody::ellipsoid(coords(basis, center), l)
        }
        ConvexBody::Arc(_) => unreachable!("planar bodies project to intervals"),
        ConvexBody::Intersection(_) => Err(Error::Unsupported("projection of a general intersection".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{volume, VolumeMethod};

    #[test]
    fn cube_shadows() {
        let c = ConvexBody::Polytope(Polytope::unit_cube(3));
        let top = project(&c, &Direction::axis(3, 2)).unwrap();
        assert!((volume(&top, VolumeMethod::Exact).unwrap().value - 1.0).abs() < 1e-12);
        let diag = Direction::from_slice(&[1.0, 1.0, 1.0]).unwrap();
        let hex = project(&c, &diag).unwrap();
        assert!((volume(&hex, VolumeMethod::Exact).unwrap().value - 3f64.sqrt()).abs() < 1e-12);
        if let ConvexBody::Polytope(h) = hex {
            assert_eq!(h.vertices().len(), 6);
        }
    }

    #[test]
    fn ball_shadow_is_disk() {
        let b = ConvexBody::unit_ball(3);
        let s = project(&b, &Direction::from_slice(&[0.3, -0.2, 0.9]).unwrap()).unwrap();
        assert!(matches!(s, ConvexBody::Ball { radius, .. } if radius == 1.0));
    }

    #[test]
    fn ellipsoid_shadow_area() {
        let e = ConvexBody::ellipsoid(
            Vector::zeros(3),
            DMatrix::from_diagonal(&Vector::from_vec(vec![3.0, 2.0, 1.0])),
        )
        .unwrap();
        let s = project(&e, &Direction::axis(3, 0)).unwrap();
        let a = volume(&s, VolumeMethod::Exact).unwrap().value;
        assert!((a - std::f64::consts::PI * 2.0).abs() < 1e-12);
    }
}
