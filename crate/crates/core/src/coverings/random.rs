//! Seeded generators of certified covers.

use std::f64::consts::TAU;

use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

use super::{certify_cover_with, Arrangement, CertificateKind, CoverElement, CoverageCertificate, Cylinder, Plank};
use crate::error::{Error, Result};
use crate::exec::{stream_rng, Exec, Rng};
use crate::geometry::{minimal_width, ArcPolygon, ConvexBody, Direction, Polytope, Pt2, Vector};

#[derive(Debug, Clone)]
pub struct RandomCoverConfig {
    /// Give up after this many elements.
    pub max_elements: usize,
    /// Element size range, as fractions of the target's width along the
    /// element's normal (of the diameter for cylinders).
    pub min_fraction: f64,
    pub max_fraction: f64,
    /// Restrict plank normals to this set when present.
    pub directions: Option<Vec<Direction>>,
    /// Probe spacing for sampled certificates.
    pub resolution: f64,
}

impl Default for RandomCoverConfig {
    fn default() -> Self {
        RandomCoverConfig {
            max_elements: 200,
            min_fraction: 0.05,
            max_fraction: 0.4,
            directions: None,
            resolution: 0.02,
        }
    }
}

/// Random convex polygon with `n` vertices near the unit circle; mirrored to
/// be centrally symmetric when asked.
pub fn random_polygon(rng: &mut Rng, n: usize, symmetric: bool) -> Polytope {
    loop {
        let count = if symmetric { n.div_ceil(2).max(2) } else { n.max(3) };
        let span = if symmetric { TAU / 2.0 } else { TAU };
        let mut angles: Vec<f64> = (0..count).map(|_| rng.random::<f64>() * span).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let sx = 0.5 + rng.random::<f64>();
        let mut pts: Vec<Vector> = angles
            .iter()
            .map(|t| {
                let r = 0.6 + 0.4 * rng.random::<f64>();
                Vector::from_vec(vec![sx * r * t.cos(), r * t.sin()])
            })
            .collect();
        if symmetric {
            let mirrored: Vec<Vector> = pts.iter().map(|p| -p).collect();
            pts.extend(mirrored);
        }
        if let Ok(p) = Polytope::from_v(pts) {
            if p.vertices().len() >= 3 {
                return p;
            }
        }
    }
}

fn random_direction(rng: &mut Rng, d: usize) -> Direction {
    loop {
        let v = Vector::from_fn(d, |_, _| StandardNormal.sample(rng));
        if let Ok(u) = Direction::new(v) {
            return u;
        }
    }
}

/// Adds random planks through the current uncovered witness until the
/// target is certified covered. Fails if the certificate is not exact or the
/// budget runs out.
pub fn random_plank_cover(
    target: &ConvexBody,
    cfg: &RandomCoverConfig,
    seed: u64,
) -> Result<(Arrangement, CoverageCertificate)> {
    let mut rng = stream_rng(seed, 0);
    if !(minimal_width(target)?.value > 0.0) {
        return Err(Error::Degenerate("target has zero width".into()));
    }
    let d = target.dim();
    let mut arr = Arrangement::new(target.clone(), Vec::new())?;
    for _ in 0..=cfg.max_elements {
        let cert = certify_cover_with(&arr, cfg.resolution, seed, Exec::Serial);
        if cert.kind != CertificateKind::Exact {
            return Err(Error::Unsupported("random plank covers need exact certificates".into()));
        }
        let Some(x) = cert.witness.clone() else {
            return Ok((arr, cert));
        };
        let u = match &cfg.directions {
            Some(ds) if !ds.is_empty() => ds[rng.random_range(0..ds.len())].clone(),
            _ => random_direction(&mut rng, d),
        };
        let width = target.width(u.as_vector())
            * (cfg.min_fraction + (cfg.max_fraction - cfg.min_fraction) * rng.random::<f64>());
        let shift = (rng.random::<f64>() - 0.5) * 0.9 * width;
        let center = u.as_vector().dot(&x) + shift;
        arr.covers.push(CoverElement::Plank(Plank::new(u, center, width)?));
    }
    Err(Error::MethodLimit("cover budget exhausted".into()))
}

/// Random cylinders over `k`-dimensional axes covering a ball, certified by sampling.
pub fn random_cylinder_cover(
    ball: &ConvexBody,
    k: usize,
    cfg: &RandomCoverConfig,
    seed: u64,
) -> Result<(Arrangement, CoverageCertificate)> {
    let d = ball.dim();
    let ConvexBody::Ball { radius, .. } = ball else {
        return Err(Error::InvalidInput("cylinder covers are generated for balls".into()));
    };
    if k == 0 || k >= d {
        return Err(Error::InvalidInput("need 0 < k < d".into()));
    }
    let mut rng = stream_rng(seed, 0);
    let mut arr = Arrangement::new(ball.clone(), Vec::new())?;
    for _ in 0..=cfg.max_elements {
        let cert = certify_cover_with(&arr, cfg.resolution, seed, Exec::default());
        let Some(x) = cert.witness.clone() else {
            return Ok((arr, cert));
        };
        // random orthonormal basis for H⊥
        let mut perp: Vec<Vector> = Vec::new();
        while perp.len() < d - k {
            let g = random_direction(&mut rng, d).into_vector();
            let mut v = g.clone();
            for b in &perp {
                v -= b * b.dot(&g);
            }
            if v.norm() > 1e-3 {
                perp.push(v.normalize());
            }
        }
        let m = d - k;
        let r = 2.0 * radius * 0.5 * (cfg.min_fraction + (cfg.max_fraction - cfg.min_fraction) * rng.random::<f64>());
        let xc = Vector::from_iterator(m, perp.iter().map(|b| b.dot(&x)));
        let jitter = Vector::from_fn(m, |_, _| (rng.random::<f64>() - 0.5) * r);
        let base = if m == 1 {
            ConvexBody::Polytope(Polytope::interval(xc[0] + jitter[0] - r, xc[0] + jitter[0] + r))
        } else {
            ConvexBody::ball(xc + jitter, r)?
        };
        arr.covers
            .push(CoverElement::Cylinder(Cylinder::from_perp(perp, base)?));
    }
    Err(Error::MethodLimit("cover budget exhausted".into()))
}

/// Cover of the disk by the cells of `cuts` random chords (plus the two
/// half-disks when `cuts` is 0 and `halves` is set). The cells partition the
/// disk, so the sampled certificate is a formality.
pub fn random_kadets_cover(radius: f64, cuts: usize, seed: u64) -> Result<(Arrangement, CoverageCertificate)> {
    let mut rng = stream_rng(seed, 0);
    let disk = ArcPolygon::disk(Pt2::zeros(), radius);
    let mut cells = vec![disk];
    for _ in 0..cuts {
        let t = rng.random::<f64>() * TAU;
        let n = Pt2::new(t.cos(), t.sin());
        let off = (rng.random::<f64>() - 0.5) * 1.6 * radius;
        let mut next = Vec::new();
        for c in &cells {
            let parts: Vec<ArcPolygon> = [c.clip_halfplane(n, off), c.clip_halfplane(-n, -off)]
                .into_iter()
                .flatten()
                .collect();
            next.extend(parts);
        }
        cells = next;
    }
    let target = ConvexBody::ball(Vector::zeros(2), radius)?;
    let covers = cells
        .into_iter()
        .map(|c| CoverElement::Body(ConvexBody::Arc(c)))
        .collect();
    let arr = Arrangement::new(target, covers)?;
    let cert = certify_cover_with(&arr, 0.01 * radius, seed, Exec::default());
    Ok((arr, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverings::bang_check;

    #[test]
    fn random_cover_is_certified_and_satisfies_bang() {
        let mut rng = stream_rng(5, 1);
        let poly = ConvexBody::Polytope(random_polygon(&mut rng, 7, false));
        let (arr, cert) = random_plank_cover(&poly, &RandomCoverConfig::default(), 5).unwrap();
        assert!(cert.covered());
        assert_eq!(cert.kind, CertificateKind::Exact);
        let r = bang_check(&arr, &cert).unwrap();
        assert!(r.slack >= -1e-9);
    }

    #[test]
    fn symmetric_polygon_is_symmetric() {
        let mut rng = stream_rng(2, 0);
        let p = random_polygon(&mut rng, 8, true);
        assert!(p.is_centrally_symmetric());
    }

    #[test]
    fn kadets_cells_cover() {
        let (arr, cert) = random_kadets_cover(1.0, 3, 4).unwrap();
        assert!(cert.covered());
        assert!(arr.covers.len() >= 2);
    }
}
