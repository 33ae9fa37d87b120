//! Minimal width and diameter.

use nalgebra::DMatrix;

use super::body::ConvexBody;
use super::polytope::Polytope;
use super::{direction_grid, orthonormal_complement, Direction, Vector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidthCertainty {
    Exact,
    Heuristic,
}

impl WidthCertainty {
    pub fn label(&self) -> &'static str {
        match self {
            WidthCertainty::Exact => "exact",
            WidthCertainty::Heuristic => "heuristic",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinWidth {
    pub value: f64,
    pub direction: Direction,
    pub certainty: WidthCertainty,
}

#[derive(Debug, Clone, Copy)]
pub struct WidthConfig {
    /// Local-search starts for bodies without an exact method.
    pub starts: usize,
}

impl Default for WidthConfig {
    fn default() -> Self {
        WidthConfig { starts: 64 }
    }
}

pub fn minimal_width(body: &ConvexBody) -> Result<MinWidth> {
    minimal_width_with(body, &WidthConfig::default())
}

pub fn minimal_width_with(body: &ConvexBody, cfg: &WidthConfig) -> Result<MinWidth> {
    let (cands, certainty) = minimal_width_candidates(body, cfg)?;
    let (dir, value) = cands
        .into_iter()
        .fold(None::<(Direction, f64)>, |acc, c| match acc {
            Some(a) if a.1 <= c.1 => Some(a),
            _ => Some(c),
        })
        .expect("at least one candidate");
    let scale = body.bounding_radius().max(1e-300);
    if !(value > 1e-12 * scale) {
        return Err(Error::Degenerate("body has zero width".into()));
    }
    Ok(MinWidth {
        value,
        direction: dir,
        certainty,
    })
}

/// Every candidate direction examined, with its width. The minimum over the
/// list is the minimal width; exact methods list all critical directions.
pub fn minimal_width_candidates(
    body: &ConvexBody,
    cfg: &WidthConfig,
) -> Result<(Vec<(Direction, f64)>, WidthCertainty)> {
    let d = body.dim();
    if let Some(poly) = body.as_arc_polygon() {
        let ext = poly.width_extreme(true);
        let c = ext
            .candidates
            .into_iter()
            .map(|(t, w)| (Direction::angle(t), w))
            .collect();
        return Ok((c, WidthCertainty::Exact));
    }
    match body {
        ConvexBody::Ball { radius, .. } => Ok((
            (0..d).map(|i| (Direction::axis(d, i), 2.0 * radius)).collect(),
            WidthCertainty::Exact,
        )),
        ConvexBody::Ellipsoid { map, .. } => {
            let svd = map.clone().svd(true, false);
            let u = svd.u.expect("left singular vectors");
            let c = (0..d)
                .map(|i| {
                    let dir = Direction::new(u.column(i).into_owned()).expect("unit column");
                    (dir, 2.0 * svd.singular_values[i])
                })
                .collect();
            Ok((c, WidthCertainty::Exact))
        }
        ConvexBody::Polytope(p) if d == 3 => Ok((polytope3_candidates(p), WidthCertainty::Exact)),
        _ => {
            let mut c = local_search(body, cfg.starts, true);
            if let ConvexBody::Polytope(p) = body {
                for n in p.normals() {
                    c.push((Direction::new(n.clone())?, body.width(n)));
                }
            }
            Ok((c, WidthCertainty::Heuristic))
        }
    }
}

/// Facet normals and directions orthogonal to two edges.
fn polytope3_candidates(p: &Polytope) -> Vec<(Direction, f64)> {
    let body = ConvexBody::Polytope(p.clone());
    let mut out: Vec<(Direction, f64)> = p
        .normals()
        .iter()
        .map(|n| (Direction::new(n.clone()).expect("unit normal"), body.width(n)))
        .collect();
    let edges = polytope_edges(p);
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let a = &edges[i];
            let b = &edges[j];
            let c = Vector::from_vec(vec![
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ]);
            if c.norm() > 1e-12 * a.norm() * b.norm() {
                let u = Direction::new(c).expect("nonzero");
                let w = body.width(u.as_vector());
                out.push((u.canonical(), w));
            }
        }
    }
    out
}

/// Edge vectors of a polytope: vertex pairs whose common facets have rank `d-1`.
pub(crate) fn polytope_edges(p: &Polytope) -> Vec<Vector> {
    let d = p.dim();
    let nf = p.normals().len();
    let inc: Vec<Vec<usize>> = (0..nf).map(|i| p.facet_vertices(i)).collect();
    let nv = p.vertices().len();
    let mut on: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (f, vs) in inc.iter().enumerate() {
        for &v in vs {
            on[v].push(f);
        }
    }
    let mut edges = Vec::new();
    for i in 0..nv {
        for j in i + 1..nv {
            let common: Vec<usize> = on[i].iter().copied().filter(|f| on[j].contains(f)).collect();
            if common.len() < d - 1 {
                continue;
            }
            let m = DMatrix::from_fn(common.len(), d, |r, c| p.normals()[common[r]][c]);
            if m.rank(1e-9) == d - 1 {
                edges.push(&p.vertices()[j] - &p.vertices()[i]);
            }
        }
    }
    edges
}

/// Multistart pattern search for the extremum of the width function.
fn local_search(body: &ConvexBody, starts: usize, minimize: bool) -> Vec<(Direction, f64)> {
    let d = body.dim();
    let sign = if minimize { 1.0 } else { -1.0 };
    let f = |u: &Vector| sign * body.width(u);
    let mut out = Vec::new();
    for start in direction_grid(d, starts.max(d)) {
        let mut u = start.into_vector();
        let mut fu = f(&u);
        let mut step = 0.5;
        while step > 1e-11 {
            let tangent = orthonormal_complement(&[u.clone()], d);
            let mut improved = false;
            for t in &tangent {
                for s in [step, -step] {
                    let cand = (&u + t * s).normalize();
                    let fc = f(&cand);
                    if fc < fu {
                        u = cand;
                        fu = fc;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        out.push((Direction::from_unit(u).expect("normalized").canonical(), sign * fu));
    }
    out
}

/// Maximal width, which equals the diameter.
pub fn diameter(body: &ConvexBody) -> (f64, WidthCertainty) {
    if let Some(poly) = body.as_arc_polygon() {
        return (poly.width_extreme(false).value, WidthCertainty::Exact);
    }
    match body {
        ConvexBody::Polytope(p) => {
            let vs = p.vertices();
            let mut best = 0.0f64;
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    best = best.max((&vs[i] - &vs[j]).norm());
                }
            }
            (best, WidthCertainty::Exact)
        }
        ConvexBody::Ball { radius, .. } => (2.0 * radius, WidthCertainty::Exact),
        ConvexBody::Ellipsoid { map, .. } => {
            let s = map.clone().singular_values();
            (2.0 * s.max(), WidthCertainty::Exact)
        }
        _ => {
            let c = local_search(body, 64, false);
            (c.iter().map(|x| x.1).fold(0.0, f64::max), WidthCertainty::Heuristic)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ArcPolygon;

    #[test]
    fn square_and_triangle() {
        let sq = ConvexBody::Polytope(Polytope::unit_cube(2));
        let w = minimal_width(&sq).unwrap();
        assert!((w.value - 1.0).abs() < 1e-12);
        assert_eq!(w.certainty, WidthCertainty::Exact);
        // equilateral triangle of height 1
        let side = 2.0 / 3f64.sqrt();
        let tri = Polytope::from_v(vec![
            Vector::from_vec(vec![0.0, 0.0]),
            Vector::from_vec(vec![side, 0.0]),
            Vector::from_vec(vec![side / 2.0, 1.0]),
        ])
        .unwrap();
        let w = minimal_width(&ConvexBody::Polytope(tri)).unwrap();
        assert!((w.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cube_and_tetrahedron() {
        let c = ConvexBody::Polytope(Polytope::unit_cube(3));
        assert!((minimal_width(&c).unwrap().value - 1.0).abs() < 1e-12);
        // regular tetrahedron of edge a has width a/√2 (edge-edge)
        let t = ConvexBody::Polytope(Polytope::regular_simplex(3, 1.0));
        assert!((minimal_width(&t).unwrap().value - 1.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn reuleaux_constant_width() {
        let r = ConvexBody::Arc(ArcPolygon::reuleaux_triangle(2.0));
        assert!((minimal_width(&r).unwrap().value - 2.0).abs() < 1e-12);
        assert!((diameter(&r).0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn heuristic_in_4d() {
        let c = ConvexBody::Polytope(Polytope::centered_cube(4));
        let w = minimal_width(&c).unwrap();
        assert!((w.value - 2.0).abs() < 1e-9);
        assert_eq!(w.certainty, WidthCertainty::Heuristic);
    }

    #[test]
    fn ellipsoid_width() {
        let e = ConvexBody::ellipsoid(
            Vector::zeros(3),
            DMatrix::from_diagonal(&Vector::from_vec(vec![3.0, 0.5, 2.0])),
        )
        .unwrap();
        let w = minimal_width(&e).unwrap();
        assert!((w.value - 1.0).abs() < 1e-12);
        assert!((w.direction.as_vector()[1].abs() - 1.0).abs() < 1e-12);
    }
}
