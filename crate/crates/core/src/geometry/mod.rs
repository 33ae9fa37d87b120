//! Convex bodies and the quantities measured on them.

mod arc;
mod body;
mod intersection;
pub mod io;
mod polytope;
mod project;
mod volume;
mod width;

pub use arc::{ArcPolygon, Edge, Pt2, WidthExtreme};
pub use body::ConvexBody;
pub(crate) use body::{pt, vec2};
pub use intersection::{interior_point, intersection_support, Bracket};
pub use polytope::Polytope;
pub use project::{project, project_onto, projection_basis};
pub use volume::{surface_area, volume, volume_with, VolumeEstimate, VolumeMethod};
pub use width::{
    diameter, minimal_width, minimal_width_candidates, minimal_width_with, MinWidth, WidthCertainty, WidthConfig,
};

use nalgebra::DVector;

use crate::error::{Error, Result};

/// A point or vector of the ambient Euclidean space.
pub type Vector = DVector<f64>;

/// Unit vector; the constructor enforces the norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(Vector);

impl Direction {
    /// Normalizes `v`. Fails on (numerically) zero vectors.
    pub fn new(v: Vector) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > 1e-300) {
            return Err(Error::InvalidInput("zero direction".into()));
        }
        Ok(Direction(v / n))
    }

    pub fn from_slice(s: &[f64]) -> Result<Self> {
        Self::new(Vector::from_column_slice(s))
    }

    /// Wraps a vector already known to have unit length (within 1e-12).
    pub fn from_unit(v: Vector) -> Result<Self> {
        if (v.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("not a unit vector (norm {})", v.norm())));
        }
        Ok(Direction(v))
    }

    pub fn axis(d: usize, i: usize) -> Self {
        let mut v = Vector::zeros(d);
        v[i] = 1.0;
        Direction(v)
    }

    pub fn angle(theta: f64) -> Self {
        Direction(Vector::from_vec(vec![theta.cos(), theta.sin()]))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    pub fn into_vector(self) -> Vector {
        self.0
    }

    pub fn neg(&self) -> Self {
        Direction(-&self.0)
    }

    /// Sign-canonical representative: first non-negligible coordinate positive.
    pub fn canonical(&self) -> Self {
        match self.0.iter().find(|c| c.abs() > 1e-12) {
            Some(&c) if c < 0.0 => self.neg(),
            _ => self.clone(),
        }
    }
}

/// Volume of the unit ball in dimension `d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    let mut k = [1.0, 2.0];
    if d < 2 {
        return k[d];
    }
    let mut out = 0.0;
    for i in 2..=d {
        out = k[i % 2] * 2.0 * std::f64::consts::PI / i as f64;
        k[i % 2] = out;
    }
    out
}

/// Completes `basis` (orthonormal, possibly empty) to an orthonormal basis of
/// `R^d` and returns only the added vectors. Deterministic: standard basis
/// vectors are tried in order.
pub fn orthonormal_complement(basis: &[Vector], d: usize) -> Vec<Vector> {
    let mut all: Vec<Vector> = basis.to_vec();
    let mut added = Vec::new();
    // try axes in order of how badly they are represented, for stability
    let mut axes: Vec<usize> = (0..d).collect();
    axes.sort_by(|&a, &b| {
        let ra: f64 = all.iter().map(|v| v[a] * v[a]).sum();
        let rb: f64 = all.iter().map(|v| v[b] * v[b]).sum();
        ra.partial_cmp(&rb).unwrap().then(a.cmp(&b))
    });
    for i in axes {
        if all.len() == d {
            break;
        }
        let mut v = Vector::zeros(d);
        v[i] = 1.0;
        for _ in 0..2 {
            for b in &all {
                let p = b.dot(&v);
                v -= b * p;
            }
        }
        let n = v.norm();
        if n > 1e-8 {
            v /= n;
            all.push(v.clone());
            added.push(v);
        }
    }
    added
}

/// Gram–Schmidt on `vs`; fails when they are linearly dependent.
pub fn orthonormalize(vs: &[Vector]) -> Result<Vec<Vector>> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &out {
                let p = b.dot(&w);
                w -= b * p;
            }
        }
        let n = w.norm();
        if n < 1e-10 * (1.0 + v.norm()) {
            return Err(Error::Degenerate("linearly dependent vectors".into()));
        }
        out.push(w / n);
    }
    Ok(out)
}

/// Deterministic, roughly uniform set of `n` unit vectors in `R^d`.
pub fn direction_grid(d: usize, n: usize) -> Vec<Direction> {
    match d {
        1 => vec![Direction::axis(1, 0)],
        2 => (0..n)
            .map(|k| Direction::angle(std::f64::consts::PI * k as f64 / n as f64))
            .collect(),
        3 => {
            // Fibonacci lattice on the upper hemisphere (widths are even)
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            (0..n)
                .map(|k| {
                    let z = 1.0 - (k as f64 + 0.5) / n as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden * k as f64;
                    Direction(Vector::from_vec(vec![r * phi.cos(), r * phi.sin(), z]))
                })
                .collect()
        }
        _ => {
            use rand_distr::{Distribution, StandardNormal};
            let mut rng = crate::exec::stream_rng(0x5eed_d1f5, d as u64);
            let mut out: Vec<Direction> = (0..d).map(|i| Direction::axis(d, i)).collect();
            while out.len() < n {
                let v = Vector::from_fn(d, |_, _| StandardNormal.sample(&mut rng));
                if let Ok(u) = Direction::new(v) {
                    out.push(u);
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
        assert!((unit_ball_volume(5) - 8.0 * PI * PI / 15.0).abs() < 1e-14);
    }

    #[test]
    fn complement_is_orthonormal() {
        let u = Direction::from_slice(&[1.0, 1.0, 1.0]).unwrap();
        let c = orthonormal_complement(&[u.as_vector().clone()], 3);
        assert_eq!(c.len(), 2);
        for v in &c {
            assert!((v.norm() - 1.0).abs() < 1e-12);
            assert!(v.dot(u.as_vector()).abs() < 1e-12);
        }
        assert!(c[0].dot(&c[1]).abs() < 1e-12);
    }

    #[test]
    fn direction_rejects_zero() {
        assert!(Direction::from_slice(&[0.0, 0.0]).is_err());
        assert!(Direction::from_unit(Vector::from_vec(vec![2.0, 0.0])).is_err());
    }
}
