//! Relative inradii, rounded bodies and successive inradii.
//!
//! The `ρC`-rounded body of `K` is the union of translates of `ρC` inside
//! `K`, which equals the erosion `E = K ⊖ ρC` dilated by `ρC`. Its width in
//! direction `u` is `w(E,u) + ρ·w(C,u)`, so the relative width reduces to a
//! ratio minimization over the eroded body.

mod cuts;

pub use cuts::{
    adversarial_search, optimal_cuts, random_cut_tree, simultaneous_cut_report, slice_and_measure, AdversarialReport,
    Cut, CutTree, SliceReport,
};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{
    direction_grid, minimal_width_candidates, orthonormal_complement, pt, ArcPolygon, ConvexBody, Direction, Edge,
    Polytope, Pt2, Vector, WidthCertainty, WidthConfig,
};
use crate::lp::{maximize, LpOutcome};

#[derive(Debug, Clone, PartialEq)]
pub struct InradiusResult {
    /// Largest factor with `lambda·C + translate ⊆ K`.
    pub lambda: f64,
    pub translate: Vector,
    pub certainty: WidthCertainty,
}

/// Largest `λ` such that a translate of `λC` fits in `K`.
pub fn c_inradius(k: &ConvexBody, c: &ConvexBody) -> Result<InradiusResult> {
    if k.dim() != c.dim() {
        return Err(Error::InvalidInput("bodies differ in dimension".into()));
    }
    let d = k.dim();
    match (k, c) {
        (ConvexBody::Polytope(p), _) => {
            let rows: Vec<Vec<f64>> = p
                .normals()
                .iter()
                .map(|a| {
                    let mut r: Vec<f64> = a.iter().copied().collect();
                    r.push(c.support(a));
                    r
                })
                .collect();
            let mut obj = vec![0.0; d + 1];
            obj[d] = 1.0;
            match maximize(&obj, &rows, p.offsets()) {
                LpOutcome::Optimal { x, value } if value > 0.0 => Ok(InradiusResult {
                    lambda: value,
                    translate: Vector::from_column_slice(&x[..d]),
                    certainty: WidthCertainty::Exact,
                }),
                _ => Err(Error::Degenerate("no positive homothet fits".into())),
            }
        }
        (ConvexBody::Ball { center: ck, radius: rk }, ConvexBody::Ball { center: cc, radius: rc }) => {
            let lambda = rk / rc;
            Ok(InradiusResult {
                lambda,
                translate: ck - cc * lambda,
                certainty: WidthCertainty::Exact,
            })
        }
        (ConvexBody::Ellipsoid { center, map }, ConvexBody::Ball { center: cc, radius }) => {
            let s = map.clone().singular_values().min();
            let lambda = s / radius;
            Ok(InradiusResult {
                lambda,
                translate: center - cc * lambda,
                certainty: WidthCertainty::Exact,
            })
        }
        (_, ConvexBody::Ball { center: cc, radius: rc }) if k.as_arc_polygon().is_some() => {
            arc_ball_inradius(&k.as_arc_polygon().expect("checked"), cc, *rc)
        }
        _ => cutting_plane_inradius(k, c),
    }
}

/// Largest disk in an arc polygon: maximize `λ` over centres `p` with
/// `n·p + λr <= b` on line edges and `|p − o| + λr <= R` on arc edges, the
/// arc constraints linearized by tangent cuts. The relaxation bounds `λ`
/// from above and the disk it centres is feasible after shrinking, so the
/// loop stops once the two agree to `1e-13` of the body's extent, or once
/// the relaxation stalls at the LP's own resolution.
fn arc_ball_inradius(k: &ArcPolygon, cc: &Vector, rc: f64) -> Result<InradiusResult> {
    let vs = k.vertices();
    let n = vs.len();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs = Vec::new();
    let mut disks = Vec::new();
    for (i, e) in k.edges().iter().enumerate() {
        match e {
            Edge::Line => {
                let d = vs[(i + 1) % n] - vs[i];
                let nn = Pt2::new(d.y, -d.x).normalize();
                rows.push(vec![nn.x, nn.y, rc]);
                rhs.push(nn.dot(&vs[i]));
            }
            Edge::Arc { center, radius } => disks.push((*center, *radius)),
        }
    }
    let line_rows: Vec<(Vec<f64>, f64)> = rows.iter().cloned().zip(rhs.iter().copied()).collect();
    // the bounding box keeps the first relaxations bounded
    for (a, b) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
        rows.push(vec![a, b, rc]);
        rhs.push(k.support(Pt2::new(a, b)));
    }
    let scale = k.width(Pt2::new(1.0, 0.0)).max(k.width(Pt2::new(0.0, 1.0)));
    let feasible = |p: Pt2| -> f64 {
        let by_lines = line_rows.iter().map(|(r, b)| (b - r[0] * p.x - r[1] * p.y) / rc);
        let by_arcs = disks.iter().map(|(o, r)| (r - (p - o).norm()) / rc);
        by_lines.chain(by_arcs).fold(f64::INFINITY, f64::min)
    };
    let mut best: Option<(f64, Pt2)> = None;
    let mut last_upper = f64::INFINITY;
    for _ in 0..2000 {
        let LpOutcome::Optimal { x, .. } = maximize(&[0.0, 0.0, 1.0], &rows, &rhs) else {
            return Err(Error::Degenerate("no disk fits".into()));
        };
        let p = Pt2::new(x[0], x[1]);
        let upper = x[2];
        let here = feasible(p);
        if best.is_none_or(|(b, _)| here > b) {
            best = Some((here, p));
        }
        let (lambda, centre) = best.expect("set above");
        let stalled = (last_upper - upper).abs() * rc <= 1e-15 * scale;
        last_upper = upper;
        if (upper - lambda) * rc <= 1e-13 * scale || stalled {
            if lambda <= 0.0 {
                return Err(Error::Degenerate("no disk fits".into()));
            }
            return Ok(InradiusResult {
                lambda,
                translate: Vector::from_column_slice(&[centre.x, centre.y]) - cc * lambda,
                certainty: WidthCertainty::Exact,
            });
        }
        let (_, o, r) = disks
            .iter()
            .map(|(o, r)| ((p - o).norm() + upper * rc - r, *o, *r))
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .expect("a gap needs an arc constraint");
        let g = if (p - o).norm() > 1e-300 {
            (p - o).normalize()
        } else {
            Pt2::new(1.0, 0.0)
        };
        rows.push(vec![g.x, g.y, rc]);
        rhs.push(r + g.dot(&o));
    }
    Err(Error::MethodLimit("arc polygon inradius did not converge".into()))
}

/// Semi-infinite LP `u·t + λ h_C(u) <= h_K(u)` over all directions, with
/// constraints added at the most violated direction.
fn cutting_plane_inradius(k: &ConvexBody, c: &ConvexBody) -> Result<InradiusResult> {
    let d = k.dim();
    let mut dirs: Vec<Vector> = direction_grid(d, 48)
        .into_iter()
        .flat_map(|u| {
            let v = u.into_vector();
            [v.clone(), -v]
        })
        .collect();
    let row = |u: &Vector| {
        let mut r: Vec<f64> = u.iter().copied().collect();
        r.push(c.support(u));
        (r, k.support(u))
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for u in &dirs {
        let (r, b) = row(u);
        rows.push(r);
        rhs.push(b);
    }
    let mut obj = vec![0.0; d + 1];
    obj[d] = 1.0;
    let scale = k.bounding_radius().max(1e-300);
    let mut exact_sep = matches!(c, ConvexBody::Polytope(_));
    let mut last = None;
    for _ in 0..300 {
        let LpOutcome::Optimal { x, value } = maximize(&obj, &rows, &rhs) else {
            return Err(Error::Degenerate("inradius problem has no solution".into()));
        };
        let t = Vector::from_column_slice(&x[..d]);
        last = Some((value, t.clone()));
        let viol = |u: &Vector| u.dot(&t) + value * c.support(u) - k.support(u);
        let mut new_dirs: Vec<Vector> = Vec::new();
        if let ConvexBody::Polytope(cp) = c {
            for v in cp.vertices() {
                let y = &t + v * value;
                if let Some((n, _)) = k.separate(&y, 1e-12 * scale) {
                    new_dirs.push(n);
                }
            }
        } else {
            let u = worst_direction(d, &viol);
            if viol(&u) > 1e-12 * scale {
                new_dirs.push(u);
            }
            exact_sep = false;
        }
        if new_dirs.is_empty() {
            break;
        }
        for u in new_dirs {
            let (r, b) = row(&u);
            rows.push(r);
            rhs.push(b);
            dirs.push(u);
        }
    }
    let (lambda, translate) = last.ok_or_else(|| Error::Degenerate("no iterate".into()))?;
    if !(lambda > 0.0) {
        return Err(Error::Degenerate("no positive homothet fits".into()));
    }
    let certainty = if exact_sep {
        WidthCertainty::Exact
    } else {
        WidthCertainty::Heuristic
    };
    Ok(InradiusResult {
        lambda,
        translate,
        certainty,
    })
}

/// Maximizer of `f` over unit directions by grid plus pattern search.
fn worst_direction(d: usize, f: &dyn Fn(&Vector) -> f64) -> Vector {
    let grid: Vec<Vector> = if d == 2 {
        (0..720)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 720.0;
                Vector::from_vec(vec![t.cos(), t.sin()])
            })
            .collect()
    } else {
        direction_grid(d, 2000)
            .into_iter()
            .flat_map(|u| {
                let v = u.into_vector();
                [v.clone(), -v]
            })
            .collect()
    };
    let mut best = grid[0].clone();
    let mut fb = f(&best);
    for u in &grid[1..] {
        let v = f(u);
        if v > fb {
            fb = v;
            best = u.clone();
        }
    }
    let mut step = 0.02;
    while step > 1e-12 {
        let tangent = orthonormal_complement(&[best.clone()], d);
        let mut improved = false;
        for tv in &tangent {
            for s in [step, -step] {
                let cand = (&best + tv * s).normalize();
                let v = f(&cand);
                if v > fb {
                    fb = v;
                    best = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// `K ⊖ ρC = {t : t + ρC ⊆ K}`; `None` when it has empty interior.
pub fn erode(k: &ConvexBody, c: &ConvexBody, rho: f64) -> Result<Option<ConvexBody>> {
    match (k, c) {
        (ConvexBody::Polytope(p), _) => {
            let offsets: Vec<f64> = p
                .normals()
                .iter()
                .zip(p.offsets())
                .map(|(a, b)| b - rho * c.support(a))
                .collect();
            match Polytope::from_h(p.normals().to_vec(), offsets) {
                Ok(e) => Ok(Some(ConvexBody::Polytope(e))),
                Err(Error::Degenerate(_)) | Err(Error::Unbounded) => Ok(None),
                Err(e) => Err(e),
            }
        }
        (ConvexBody::Ball { center: ck, radius: rk }, ConvexBody::Ball { center: cc, radius: rc }) => {
            let r = rk - rho * rc;
            Ok((r > 1e-12 * rk).then(|| ConvexBody::Ball {
                center: ck - cc * rho,
                radius: r,
            }))
        }
        (_, ConvexBody::Ball { center: cc, radius: rc }) if k.as_arc_polygon().is_some() => {
            let poly = k.as_arc_polygon().expect("checked");
            let s = rho * rc;
            let shift = pt(cc) * rho;
            let vs = poly.vertices();
            let n = vs.len();
            let mut disks = Vec::new();
            let mut halves = Vec::new();
            for (i, e) in poly.edges().iter().enumerate() {
                match e {
                    Edge::Line => {
                        let d = vs[(i + 1) % n] - vs[i];
                        let nn = Pt2::new(d.y, -d.x).normalize();
                        halves.push((nn, nn.dot(&(vs[i] - shift)) - s));
                    }
                    Edge::Arc { center, radius } => {
                        if radius - s <= 0.0 {
                            return Ok(None);
                        }
                        disks.push((center - shift, radius - s));
                    }
                }
            }
            Ok(ArcPolygon::from_constraints(&disks, &halves).map(ConvexBody::Arc))
        }
        _ => Err(Error::NoExactMethod(format!(
            "erosion of a {} by a {}",
            k.kind(),
            c.kind()
        ))),
    }
}

/// Whether `x` lies in the `ρC`-rounded body of `K`.
pub fn rounded_contains(k: &ConvexBody, c: &ConvexBody, rho: f64, x: &Vector) -> Result<bool> {
    let r = c_inradius(k, c)?.lambda;
    if rho > r * (1.0 + 1e-12) {
        return Err(Error::RhoExceedsInradius { rho, inradius: r });
    }
    let tol = 1e-9 * k.bounding_radius().max(1.0);
    let e = match erode(k, c, rho)? {
        Some(e) => e,
        None => {
            // at the inradius the erosion may be flat; use the witness placement
            let t = c_inradius(k, c)?.translate;
            return Ok(membership_of_translate(c, rho, &t, x, tol));
        }
    };
    // x ∈ E + ρC  ⟺  E ∩ (x − ρC) ≠ ∅
    match (&e, c) {
        (ConvexBody::Polytope(ep), ConvexBody::Ball { center, radius }) => {
            let y = x - center * rho;
            Ok((nearest_in_polytope(ep, &y) - &y).norm() <= rho * radius + tol)
        }
        (ConvexBody::Arc(ea), ConvexBody::Ball { center, radius }) => {
            let y = pt(&(x - center * rho));
            let inside = ea.contains(y, 0.0);
            Ok(inside || ea.nearest_boundary(y).1 <= rho * radius + tol)
        }
        (ConvexBody::Ball { center: ce, radius: re }, ConvexBody::Ball { center, radius }) => {
            Ok((x - center * rho - ce).norm() <= re + rho * radius + tol)
        }
        (ConvexBody::Polytope(ep), ConvexBody::Polytope(cp)) => {
            // LP feasibility: y ∈ E and x − y ∈ ρC
            let d = x.len();
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for (a, b) in ep.normals().iter().zip(ep.offsets()) {
                rows.push(a.iter().copied().collect::<Vec<f64>>());
                rhs.push(*b + tol);
            }
            for (a, b) in cp.normals().iter().zip(cp.offsets()) {
                rows.push(a.iter().map(|v| -v).collect());
                rhs.push(rho * b - a.dot(x) + tol);
            }
            Ok(matches!(
                maximize(&vec![0.0; d], &rows, &rhs),
                LpOutcome::Optimal { .. }
            ))
        }
        _ => Err(Error::NoExactMethod("rounded membership for this gauge".into())),
    }
}

fn membership_of_translate(c: &ConvexBody, rho: f64, t: &Vector, x: &Vector, tol: f64) -> bool {
    // x ∈ ρC + t  ⟺  (x − t)/ρ ∈ C
    rho > 0.0 && c.contains(&((x - t) / rho), tol / rho)
}

/// Euclidean projection of `y` onto a polytope, by enumerating active sets.
pub fn nearest_in_polytope(p: &Polytope, y: &Vector) -> Vector {
    let tol = 1e-10 * p.scale();
    if p.contains(y, tol) {
        return y.clone();
    }
    let d = y.len();
    let m = p.normals().len();
    let mut best: Option<(f64, Vector)> = None;
    let mut idx: Vec<usize> = Vec::new();
    fn rec(
        p: &Polytope,
        y: &Vector,
        start: usize,
        m: usize,
        d: usize,
        idx: &mut Vec<usize>,
        best: &mut Option<(f64, Vector)>,
        tol: f64,
    ) {
        if !idx.is_empty() {
            let k = idx.len();
            let a = nalgebra::DMatrix::from_fn(k, d, |r, c| p.normals()[idx[r]][c]);
            let resid = Vector::from_iterator(k, idx.iter().map(|&i| p.normals()[i].dot(y) - p.offsets()[i]));
            let gram = &a * a.transpose();
            if let Some(inv) = gram.try_inverse() {
                let z = y - a.transpose() * (inv * resid);
                if p.contains(&z, tol) {
                    let dist = (&z - y).norm();
                    if best.as_ref().is_none_or(|b| dist < b.0) {
                        *best = Some((dist, z));
                    }
                }
            }
        }
        if idx.len() == d {
            return;
        }
        for i in start..m {
            idx.push(i);
            rec(p, y, i + 1, m, d, idx, best, tol);
            idx.pop();
        }
    }
    rec(p, y, 0, m, d, &mut idx, &mut best, tol);
    best.map(|b| b.1).unwrap_or_else(|| p.vertex_centroid())
}

/// Minimal relative width of the rounded body, with the directions examined.
#[derive(Debug, Clone)]
pub struct RoundedWidth {
    pub value: f64,
    pub certainty: WidthCertainty,
    /// Candidate directions and the ratio `w(E,u)/w(C,u)` at each.
    pub candidates: Vec<(Direction, f64)>,
}

/// `w_C(K^{ρC}) = min_u w(E,u)/w(C,u) + ρ`.
pub fn relative_width_of_rounded(k: &ConvexBody, c: &ConvexBody, rho: f64) -> Result<RoundedWidth> {
    let r = c_inradius(k, c)?.lambda;
    if rho > r * (1.0 + 1e-12) + 1e-15 {
        return Err(Error::RhoExceedsInradius { rho, inradius: r });
    }
    rounded_width_unchecked(k, c, rho)
}

fn rounded_width_unchecked(k: &ConvexBody, c: &ConvexBody, rho: f64) -> Result<RoundedWidth> {
    let Some(e) = erode(k, c, rho)? else {
        return Ok(RoundedWidth {
            value: rho,
            certainty: WidthCertainty::Exact,
            candidates: vec![],
        });
    };
    let (cands, certainty) = ratio_candidates(&e, c)?;
    let min = cands.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    Ok(RoundedWidth {
        value: min + rho,
        certainty,
        candidates: cands,
    })
}

fn ratio_candidates(e: &ConvexBody, c: &ConvexBody) -> Result<(Vec<(Direction, f64)>, WidthCertainty)> {
    if let ConvexBody::Ball { radius, .. } = c {
        let (cands, cert) = minimal_width_candidates(e, &WidthConfig::default())?;
        return Ok((cands.into_iter().map(|(u, w)| (u, w / (2.0 * radius))).collect(), cert));
    }
    let ratio = |u: &Vector| e.width(u) / c.width(u);
    if let (Some(ea), Some(ca)) = (e.as_arc_polygon(), c.as_arc_polygon()) {
        // ratio of two width functions; between breakpoints it is monotone
        // when both are polygons, otherwise refine by golden section
        let mut angles: Vec<f64> = ea
            .breakpoints()
            .into_iter()
            .chain(ca.breakpoints())
            .map(|a| a % PI)
            .collect();
        angles.push(0.0);
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        let polygonal = ea.is_polygon() && ca.is_polygon();
        let f = |t: f64| ratio(&Vector::from_vec(vec![t.cos(), t.sin()]));
        let mut out: Vec<(f64, f64)> = angles.iter().map(|&t| (t, f(t))).collect();
        if !polygonal {
            let m = angles.len();
            for i in 0..m {
                let a = angles[i];
                let b = if i + 1 < m { angles[i + 1] } else { angles[0] + PI };
                let t = golden_min(&f, a, b);
                out.push((t % PI, f(t)));
            }
        }
        let cands = out.into_iter().map(|(t, v)| (Direction::angle(t), v)).collect();
        return Ok((cands, WidthCertainty::Exact));
    }
    let d = e.dim();
    let mut cands = Vec::new();
    for start in direction_grid(d, 64) {
        let mut u = start.into_vector();
        let mut fu = ratio(&u);
        let mut step = 0.5;
        while step > 1e-11 {
            let tangent = orthonormal_complement(&[u.clone()], d);
            let mut improved = false;
            for tv in &tangent {
                for s in [step, -step] {
                    let cand = (&u + tv * s).normalize();
                    let fc = ratio(&cand);
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
        cands.push((Direction::from_unit(u)?.canonical(), fu));
    }
    Ok((cands, WidthCertainty::Heuristic))
}

fn golden_min(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// Result of the successive-inradius fixed point.
#[derive(Debug, Clone)]
pub struct SuccessiveInradius {
    pub rho: f64,
    /// `C`-inradius of `K` (the `n = 1` value).
    pub inradius: f64,
    /// `w_C(K^{ρC}) − nρ` at the returned `ρ`.
    pub residual: f64,
    pub iterations: usize,
    pub certainty: WidthCertainty,
}

/// Unique root of `w_C(K^{ρC}) = nρ` on `(0, r]` by bisection.
/// `tol = None` uses `1e-10·diam(K)`.
pub fn successive_inradius(k: &ConvexBody, c: &ConvexBody, n: usize, tol: Option<f64>) -> Result<SuccessiveInradius> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let inr = c_inradius(k, c)?;
    let r = inr.lambda;
    let tol = tol.unwrap_or_else(|| 1e-10 * crate::geometry::diameter(k).0);
    let nf = n as f64;
    let mut certainty = inr.certainty;
    let mut f = |rho: f64| -> Result<f64> {
        let w = rounded_width_unchecked(k, c, rho)?;
        if w.certainty == WidthCertainty::Heuristic {
            certainty = WidthCertainty::Heuristic;
        }
        Ok(w.value - nf * rho)
    };
    let (mut lo, mut hi) = (0.0, r);
    let mut it = 0;
    if n == 1 {
        let res = f(r)?;
        return Ok(SuccessiveInradius {
            rho: r,
            inradius: r,
            residual: res,
            iterations: 0,
            certainty,
        });
    }
    while it < 80 && hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        it += 1;
    }
    let rho = 0.5 * (lo + hi);
    let residual = f(rho)?;
    Ok(SuccessiveInradius {
        rho,
        inradius: r,
        residual,
        iterations: it,
        certainty,
    })
}
