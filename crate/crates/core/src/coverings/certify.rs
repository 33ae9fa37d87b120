//! Coverage certificates: exact planar subtraction, otherwise grid and
//! seeded random probing for an uncovered point.

use rand::Rng as _;

use super::{Arrangement, CoverElement, Plank};
use crate::exec::{find_first, stream_rng, Exec};
use crate::geometry::{pt, vec2, ArcPolygon, ConvexBody, Pt2, Vector};

/// Random probes added after the grid in sampled certificates.
const RANDOM_PROBES: u64 = 1 << 16;
/// Grid points beyond this are skipped in favour of a coarser grid.
const GRID_LIMIT: u64 = 4_000_000;
const PIECE_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverStatus {
    Covered,
    Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    Exact,
    Sampled,
}

impl CertificateKind {
    pub fn label(&self) -> &'static str {
        match self {
            CertificateKind::Exact => "exact",
            CertificateKind::Sampled => "sampled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageCertificate {
    pub status: CoverStatus,
    pub kind: CertificateKind,
    /// Grid spacing actually probed; zero for exact certificates.
    pub resolution: f64,
    pub witness: Option<Vector>,
}

impl CoverageCertificate {
    pub fn covered(&self) -> bool {
        self.status == CoverStatus::Covered
    }
}

pub fn certify_cover(arr: &Arrangement, resolution: f64, seed: u64) -> CoverageCertificate {
    certify_cover_with(arr, resolution, seed, Exec::default())
}

pub fn certify_cover_with(arr: &Arrangement, resolution: f64, seed: u64, exec: Exec) -> CoverageCertificate {
    if let Some(c) = exact_planar(arr) {
        return c;
    }
    sampled(arr, resolution, seed, exec)
}

fn is_uncovered(arr: &Arrangement, x: &Vector) -> bool {
    arr.target.contains(x, 0.0) && !arr.covers.iter().any(|c| c.contains(x, 0.0))
}

/// Half-planes `n·x <= b` describing a polygonal cover.
fn polygon_halfplanes(poly: &ArcPolygon) -> Option<Vec<(Pt2, f64)>> {
    if !poly.is_polygon() {
        return None;
    }
    let vs = poly.vertices();
    let n = vs.len();
    Some(
        (0..n)
            .map(|i| {
                let d = vs[(i + 1) % n] - vs[i];
                let nn = Pt2::new(d.y, -d.x).normalize();
                (nn, nn.dot(&vs[i]))
            })
            .collect(),
    )
}

enum Cut {
    Plank { normal: Pt2, lo: f64, hi: f64 },
    Polygon(Vec<(Pt2, f64)>),
}

fn exact_planar(arr: &Arrangement) -> Option<CoverageCertificate> {
    if arr.target.dim() != 2 {
        return None;
    }
    // work in coordinates where the target is an arc polygon; ellipses are
    // mapped to the unit disk
    let (region, to_world): (ArcPolygon, Box<dyn Fn(Pt2) -> Pt2>) = match &arr.target {
        ConvexBody::Ellipsoid { center, map } => {
            let c = pt(center);
            let m = nalgebra::Matrix2::new(map[(0, 0)], map[(0, 1)], map[(1, 0)], map[(1, 1)]);
            (ArcPolygon::disk(Pt2::zeros(), 1.0), Box::new(move |y| m * y + c))
        }
        t => (t.as_arc_polygon()?, Box::new(|y| y)),
    };
    let to_local_plank = |p: &Plank| -> Cut {
        let n = pt(p.normal.as_vector());
        match &arr.target {
            ConvexBody::Ellipsoid { center, map } => {
                let m = nalgebra::Matrix2::new(map[(0, 0)], map[(0, 1)], map[(1, 0)], map[(1, 1)]);
                let g = m.transpose() * n;
                let s = g.norm();
                let shift = n.dot(&pt(center));
                Cut::Plank {
                    normal: g / s,
                    lo: (p.lo() - shift) / s,
                    hi: (p.hi() - shift) / s,
                }
            }
            _ => Cut::Plank {
                normal: n,
                lo: p.lo(),
                hi: p.hi(),
            },
        }
    };
    let mut cuts = Vec::new();
    for c in &arr.covers {
        if let Some(p) = c.as_plank() {
            cuts.push(to_local_plank(&p));
            continue;
        }
        let CoverElement::Body(b) = c else { return None };
        let poly = b.as_arc_polygon()?;
        let mut hs = polygon_halfplanes(&poly)?;
        if let ConvexBody::Ellipsoid { center, map } = &arr.target {
            let m = nalgebra::Matrix2::new(map[(0, 0)], map[(0, 1)], map[(1, 0)], map[(1, 1)]);
            let c = pt(center);
            hs = hs
                .into_iter()
                .map(|(n, b)| {
                    let g = m.transpose() * n;
                    let s = g.norm();
                    (g / s, (b - n.dot(&c)) / s)
                })
                .collect();
        }
        cuts.push(Cut::Polygon(hs));
    }
    let floor = 1e-12 * region.area();
    let mut pieces = vec![region];
    for cut in &cuts {
        let mut next = Vec::new();
        for p in &pieces {
            let rest = match cut {
                Cut::Plank { normal, lo, hi } => p.minus_plank(*normal, *lo, *hi),
                Cut::Polygon(hs) => p.minus_polygon(hs),
            };
            next.extend(rest.into_iter().filter(|r| r.area() > floor));
        }
        pieces = next;
        if pieces.is_empty() || pieces.len() > PIECE_LIMIT {
            break;
        }
    }
    if pieces.len() > PIECE_LIMIT {
        return None;
    }
    if pieces.is_empty() {
        return Some(CoverageCertificate {
            status: CoverStatus::Covered,
            kind: CertificateKind::Exact,
            resolution: 0.0,
            witness: None,
        });
    }
    // largest remaining piece, first on ties
    let mut best = &pieces[0];
    for p in &pieces[1..] {
        if p.area() > best.area() {
            best = p;
        }
    }
    let w = vec2(to_world(best.vertex_centroid()));
    if is_uncovered(arr, &w) {
        Some(CoverageCertificate {
            status: CoverStatus::Witness,
            kind: CertificateKind::Exact,
            resolution: 0.0,
            witness: Some(w),
        })
    } else {
        None
    }
}

fn sampled(arr: &Arrangement, resolution: f64, seed: u64, exec: Exec) -> CoverageCertificate {
    let (lo, hi) = arr.target.bounding_box();
    let d = lo.len();
    let mut res = resolution.max(1e-12);
    let counts = |res: f64| -> Vec<u64> { (0..d).map(|i| ((hi[i] - lo[i]) / res).ceil() as u64 + 1).collect() };
    let mut n = counts(res);
    while n
        .iter()
        .try_fold(1u64, |acc, &k| acc.checked_mul(k))
        .is_none_or(|t| t > GRID_LIMIT)
    {
        res *= 2.0;
        n = counts(res);
    }
    let grid: u64 = n.iter().product();
    let point = |idx: u64| -> Vector {
        if idx < grid {
            let mut rem = idx;
            Vector::from_fn(d, |i, _| {
                let k = rem % n[i];
                rem /= n[i];
                (lo[i] + k as f64 * res).min(hi[i])
            })
        } else {
            let mut rng = stream_rng(seed, idx - grid);
            Vector::from_fn(d, |i, _| lo[i] + (hi[i] - lo[i]) * rng.random::<f64>())
        }
    };
    let witness = find_first(exec, grid + RANDOM_PROBES, |idx| {
        let x = point(idx);
        is_uncovered(arr, &x).then_some(x)
    });
    CoverageCertificate {
        status: if witness.is_some() {
            CoverStatus::Witness
        } else {
            CoverStatus::Covered
        },
        kind: CertificateKind::Sampled,
        resolution: res,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverings::Plank;
    use crate::geometry::{Direction, Polytope};

    fn square() -> ConvexBody {
        ConvexBody::Polytope(Polytope::unit_cube(2))
    }

    #[test]
    fn square_tiled_by_two_planks() {
        let x = Direction::axis(2, 0);
        let arr = Arrangement::planks(
            square(),
            vec![
                Plank::new(x.clone(), 0.25, 0.5).unwrap(),
                Plank::new(x, 0.75, 0.5).unwrap(),
            ],
        )
        .unwrap();
        let c = certify_cover(&arr, 0.01, 1);
        assert_eq!(c.status, CoverStatus::Covered);
        assert_eq!(c.kind, CertificateKind::Exact);
    }

    #[test]
    fn stacked_short_planks_leave_witness() {
        let x = Direction::axis(2, 0);
        let arr = Arrangement::planks(
            square(),
            vec![
                Plank::new(x.clone(), 0.2, 0.4).unwrap(),
                Plank::new(x, 0.6, 0.4).unwrap(),
            ],
        )
        .unwrap();
        let c = certify_cover(&arr, 0.01, 1);
        assert_eq!(c.status, CoverStatus::Witness);
        let w = c.witness.unwrap();
        assert!(w[0] > 0.8 && w[0] <= 1.0);
        assert!(is_uncovered(&arr, &w));
    }

    #[test]
    fn ball_in_3d_sampled() {
        let arr = Arrangement::planks(
            ConvexBody::unit_ball(3),
            vec![Plank::new(Direction::axis(3, 2), 0.0, 2.0).unwrap()],
        )
        .unwrap();
        let c = certify_cover(&arr, 0.05, 1);
        assert_eq!(c.status, CoverStatus::Covered);
        assert_eq!(c.kind, CertificateKind::Sampled);
        let arr = Arrangement::planks(
            ConvexBody::unit_ball(3),
            vec![Plank::new(Direction::axis(3, 2), 0.0, 1.9).unwrap()],
        )
        .unwrap();
        assert_eq!(certify_cover(&arr, 0.05, 1).status, CoverStatus::Witness);
    }

    #[test]
    fn ellipse_mapped_exactly() {
        let e = ConvexBody::ellipsoid(
            Vector::from_vec(vec![1.0, 0.0]),
            nalgebra::DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.0, 1.0]),
        )
        .unwrap();
        let u = Direction::axis(2, 1);
        let full = Plank::new(u.clone(), 0.0, 2.0).unwrap();
        let arr = Arrangement::planks(e.clone(), vec![full]).unwrap();
        let c = certify_cover(&arr, 0.01, 0);
        assert_eq!((c.status, c.kind), (CoverStatus::Covered, CertificateKind::Exact));
        let short = Plank::new(u, 0.0, 1.98).unwrap();
        let arr = Arrangement::planks(e, vec![short]).unwrap();
        let c = certify_cover(&arr, 0.01, 0);
        assert_eq!((c.status, c.kind), (CoverStatus::Witness, CertificateKind::Exact));
    }

    #[test]
    fn serial_parallel_same_witness() {
        let arr = Arrangement::planks(
            ConvexBody::unit_ball(3),
            vec![Plank::new(Direction::axis(3, 0), 0.0, 1.5).unwrap()],
        )
        .unwrap();
        let a = certify_cover_with(&arr, 0.1, 9, Exec::Serial);
        let b = certify_cover_with(&arr, 0.1, 9, Exec::Parallel);
        assert_eq!(a, b);
    }
}
