//! Support and interior points of general intersections by cutting planes.

use super::body::ConvexBody;
use super::Vector;
use crate::error::{Error, Result};
use crate::lp::{maximize, LpOutcome};
use nalgebra::{DMatrix, DVector};

const MAX_ROUNDS: usize = 400;

/// Certified enclosure `lower <= value <= upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

fn common_box(members: &[ConvexBody]) -> (Vector, Vector) {
    let (mut lo, mut hi) = members[0].bounding_box();
    for m in &members[1..] {
        let (l, h) = m.bounding_box();
        for i in 0..lo.len() {
            lo[i] = lo[i].max(l[i]);
            hi[i] = hi[i].min(h[i]);
        }
    }
    (lo, hi)
}

fn box_rows(lo: &Vector, hi: &Vector, extra: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let d = lo.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..d {
        let mut r = vec![0.0; d + extra];
        r[i] = 1.0;
        rows.push(r.clone());
        rhs.push(hi[i]);
        r[i] = -1.0;
        rows.push(r);
        rhs.push(-lo[i]);
    }
    (rows, rhs)
}

/// Interior point of `∩ members`: approximately minimizes the largest member
/// violation with Kelley's method.
pub fn interior_point(members: &[ConvexBody]) -> Result<Vector> {
    let d = members[0].dim();
    let (lo, hi) = common_box(members);
    if (0..d).any(|i| lo[i] >= hi[i]) {
        return Err(Error::Degenerate("intersection is empty".into()));
    }
    let span = (&hi - &lo).amax();
    let (mut rows, mut rhs) = box_rows(&lo, &hi, 1);
    // t >= -span keeps the LP bounded
    let mut r = vec![0.0; d + 1];
    r[d] = -1.0;
    rows.push(r);
    rhs.push(span);
    let f = |x: &Vector| {
        let mut best = (f64::NEG_INFINITY, Vector::zeros(d));
        for m in members {
            let v = m.violation(x);
            if v.0 > best.0 {
                best = v;
            }
        }
        best
    };
    let mut x = (&lo + &hi) * 0.5;
    let mut best_x = x.clone();
    let mut best_f = f64::INFINITY;
    let mut c = vec![0.0; d + 1];
    c[d] = -1.0;
    for _ in 0..MAX_ROUNDS {
        let (fx, g) = f(&x);
        if fx < best_f {
            best_f = fx;
            best_x = x.clone();
        }
        // cut: φ(x_k) + g·(y - x_k) <= t
        let mut row: Vec<f64> = g.iter().copied().collect();
        row.push(-1.0);
        rows.push(row);
        rhs.push(g.dot(&x) - fx);
        let LpOutcome::Optimal { x: sol, value } = maximize(&c, &rows, &rhs) else {
            break;
        };
        let lower = -value;
        if lower >= -1e-12 * span {
            return Err(Error::Degenerate("intersection has empty interior".into()));
        }
        if best_f < 0.0 && best_f <= 0.5 * lower {
            return Ok(best_x);
        }
        x = Vector::from_column_slice(&sol[..d]);
    }
    if best_f < 0.0 {
        Ok(best_x)
    } else {
        Err(Error::Degenerate("no interior point found".into()))
    }
}

/// Subsets of at most `d` balls tried by [`ball_support`] before falling back
/// to cutting planes.
const BALL_SUBSET_LIMIT: u64 = 50_000;

fn binomial_sum(n: usize, d: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for k in 1..=d.min(n) {
        c = c.saturating_mul((n + 1 - k) as u64) / k as u64;
        total = total.saturating_add(c);
    }
    total
}

/// Exact support of an intersection of balls. At the maximizer the active
/// spheres meet in a sphere `c + r·S(V)`, and the maximizer is its point
/// `c + r·P_V u / |P_V u|`; enumerating active sets of size `<= d` and keeping
/// the best feasible candidate gives the support value.
fn ball_support(balls: &[(&Vector, f64)], u: &Vector) -> Option<(f64, Vector)> {
    let n = balls.len();
    let d = u.len();
    if binomial_sum(n, d) > BALL_SUBSET_LIMIT {
        return None;
    }
    let feasible = |y: &Vector| balls.iter().all(|(x, r)| (y - *x).norm() <= r * (1.0 + 1e-12) + 1e-12);
    let mut best: Option<(f64, Vector)> = None;
    let mut subset: Vec<usize> = Vec::new();
    let mut consider = |subset: &[usize]| {
        let (x0, r0) = balls[subset[0]];
        let k = subset.len() - 1;
        let (c, pu) = if k == 0 {
            (x0.clone(), u.clone())
        } else {
            let a = DMatrix::from_fn(k, d, |j, i| balls[subset[j + 1]].0[i] - x0[i]);
            let rhs = DVector::from_fn(k, |j, _| {
                let (x, r) = balls[subset[j + 1]];
                0.5 * (x.norm_squared() - x0.norm_squared() - r * r + r0 * r0) - a.row(j).dot(&x0.transpose())
            });
            let Some(gram) = (&a * a.transpose()).try_inverse() else {
                return;
            };
            let c = x0 + a.transpose() * (&gram * rhs);
            let pu = u - a.transpose() * (&gram * (&a * u));
            (c, pu)
        };
        let r2 = r0 * r0 - (&c - x0).norm_squared();
        let pn = pu.norm();
        if r2 < 0.0 || pn <= 1e-12 * u.norm() {
            return;
        }
        let y = c + pu * (r2.sqrt() / pn);
        if feasible(&y) {
            let v = u.dot(&y);
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, y));
            }
        }
    };
    // active sets in lexicographic order
    fn walk(start: usize, n: usize, d: usize, subset: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        for i in start..n {
            subset.push(i);
            f(subset);
            if subset.len() < d {
                walk(i + 1, n, d, subset, f);
            }
            subset.pop();
        }
    }
    walk(0, n, d, &mut subset, &mut consider);
    best
}

fn solve(members: &[ConvexBody], u: &Vector, tol: f64) -> (Bracket, Vector) {
    let d = u.len();
    let balls: Option<Vec<(&Vector, f64)>> = members
        .iter()
        .map(|m| match m {
            ConvexBody::Ball { center, radius } => Some((center, *radius)),
            _ => None,
        })
        .collect();
    if let Some((v, y)) = balls.and_then(|b| ball_support(&b, u)) {
        return (Bracket { lower: v, upper: v }, y);
    }
    let (lo, hi) = common_box(members);
    let scale = (&hi - &lo).amax().max(1e-300);
    let inner = interior_point(members).unwrap_or_else(|_| (&lo + &hi) * 0.5);
    let (mut rows, mut rhs) = box_rows(&lo, &hi, 0);
    let c: Vec<f64> = u.iter().copied().collect();
    let mut lower = (u.dot(&inner), inner.clone());
    let mut upper = f64::INFINITY;
    for _ in 0..MAX_ROUNDS {
        let LpOutcome::Optimal { x, value } = maximize(&c, &rows, &rhs) else {
            break;
        };
        upper = upper.min(value);
        let x = Vector::from_column_slice(&x);
        // feasible point on the segment from the interior point towards x
        let inside = |t: f64| {
            let p = &inner + (&x - &inner) * t;
            members.iter().all(|m| m.contains(&p, 0.0))
        };
        let (mut a, mut b) = (0.0, 1.0);
        if inside(1.0) {
            a = 1.0;
        } else {
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                if inside(m) {
                    a = m;
                } else {
                    b = m;
                }
            }
        }
        let p = &inner + (&x - &inner) * a;
        let val = u.dot(&p);
        if val > lower.0 {
            lower = (val, p);
        }
        if upper - lower.0 <= tol * scale {
            break;
        }
        let mut cut = false;
        for m in members {
            if let Some((n, b)) = m.separate(&x, 0.0) {
                rows.push(n.iter().copied().collect());
                rhs.push(b);
                cut = true;
            }
        }
        if !cut {
            break;
        }
    }
    let upper = upper.max(lower.0);
    let _ = d;
    (Bracket { lower: lower.0, upper }, lower.1)
}

/// Support of `∩ members` in direction `u` with a certified bracket.
pub fn intersection_support(members: &[ConvexBody], u: &Vector, tol: f64) -> Bracket {
    solve(members, u, tol).0
}

/// Feasible point whose value is the lower end of the support bracket.
pub fn support_point(members: &[ConvexBody], u: &Vector, tol: f64) -> Vector {
    solve(members, u, tol).1
}
