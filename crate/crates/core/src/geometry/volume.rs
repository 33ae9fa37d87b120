//! Exact and Monte Carlo volume, and surface area.

use rand::Rng as _;

use super::body::ConvexBody;
use super::{unit_ball_volume, Vector};
use crate::error::{Error, Result};
use crate::exec::{count_hits, Exec};
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeMethod {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub value: f64,
    /// Zero for exact methods.
    pub std_error: f64,
}

pub fn volume(body: &ConvexBody, method: VolumeMethod) -> Result<VolumeEstimate> {
    volume_with(body, method, Exec::default())
}

pub fn volume_with(body: &ConvexBody, method: VolumeMethod, exec: Exec) -> Result<VolumeEstimate> {
    match method {
        VolumeMethod::Exact => exact_volume(body).map(|value| VolumeEstimate { value, std_error: 0.0 }),
        VolumeMethod::MonteCarlo { samples, seed } => Ok(monte_carlo(body, samples, seed, exec)),
    }
}

fn exact_volume(body: &ConvexBody) -> Result<f64> {
    match body {
        ConvexBody::Polytope(p) => Ok(p.volume()),
        ConvexBody::Ball { center, radius } => Ok(unit_ball_volume(center.len()) * radius.powi(center.len() as i32)),
        ConvexBody::Ellipsoid { center, map } => Ok(unit_ball_volume(center.len()) * map.determinant().abs()),
        ConvexBody::Arc(a) => Ok(a.area()),
        ConvexBody::Intersection(_) => Err(Error::NoExactMethod("volume of a general intersection".into())),
    }
}

fn monte_carlo(body: &ConvexBody, samples: u64, seed: u64, exec: Exec) -> VolumeEstimate {
    let (lo, hi) = body.bounding_box();
    let d = lo.len();
    let side = &hi - &lo;
    let box_vol: f64 = side.iter().product();
    let hits = count_hits(exec, seed, samples, |rng| {
        let x = Vector::from_fn(d, |i, _| lo[i] + side[i] * rng.random::<f64>());
        body.contains(&x, 0.0)
    });
    let n = samples.max(1) as f64;
    let p = hits as f64 / n;
    VolumeEstimate {
        value: box_vol * p,
        std_error: box_vol * (p * (1.0 - p) / n).sqrt(),
    }
}

/// Boundary measure: perimeter in the plane, surface area in general.
pub fn surface_area(body: &ConvexBody) -> Result<f64> {
    let d = body.dim();
    match body {
        ConvexBody::Polytope(p) => Ok(p.surface_area()),
        ConvexBody::Ball { radius, .. } => Ok(d as f64 * unit_ball_volume(d) * radius.powi(d as i32 - 1)),
        ConvexBody::Arc(a) => Ok(a.perimeter()),
        ConvexBody::Ellipsoid { map, .. } if d == 2 => {
            let f = |t: f64| {
                let v = map * Vector::from_vec(vec![-t.sin(), t.cos()]);
                v.norm()
            };
            Ok(quad::integrate(&f, &[0.0, std::f64::consts::TAU], 1e-13))
        }
        _ => Err(Error::NoExactMethod(format!("surface area of {}", body.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polytope;
    use nalgebra::DMatrix;
    use std::f64::consts::PI;

    #[test]
    fn exact_values() {
        let sq = ConvexBody::Polytope(Polytope::unit_cube(2));
        assert_eq!(volume(&sq, VolumeMethod::Exact).unwrap().value, 1.0);
        let b = ConvexBody::unit_ball(3);
        assert!((volume(&b, VolumeMethod::Exact).unwrap().value - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((surface_area(&b).unwrap() - 4.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn ball4_monte_carlo() {
        let b = ConvexBody::unit_ball(4);
        let est = volume(
            &b,
            VolumeMethod::MonteCarlo {
                samples: 1_000_000,
                seed: 11,
            },
        )
        .unwrap();
        assert!((est.value - PI * PI / 2.0).abs() < 3.0 * est.std_error, "{est:?}");
    }

    #[test]
    fn serial_parallel_identical() {
        let b = ConvexBody::unit_ball(3);
        let m = VolumeMethod::MonteCarlo {
            samples: 100_000,
            seed: 3,
        };
        let a = volume_with(&b, m, Exec::Serial).unwrap();
        let p = volume_with(&b, m, Exec::Parallel).unwrap();
        assert_eq!(a, p);
    }

    #[test]
    fn circle_as_ellipse_perimeter() {
        let e = ConvexBody::ellipsoid(Vector::zeros(2), DMatrix::identity(2, 2) * 2.0).unwrap();
        assert!((surface_area(&e).unwrap() - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn intersection_has_no_exact_volume() {
        let v = |x: &[f64]| Vector::from_column_slice(x);
        let k = ConvexBody::intersection(vec![
            ConvexBody::ball(v(&[0.1, 0.0, 0.0]), 1.0).unwrap(),
            ConvexBody::ball(v(&[-0.1, 0.0, 0.0]), 1.0).unwrap(),
        ])
        .unwrap();
        assert!(matches!(volume(&k, VolumeMethod::Exact), Err(Error::NoExactMethod(_))));
    }
}
