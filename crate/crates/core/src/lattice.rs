//! Integer points of convex bodies, lattice width, and minimum covers of
//! integer point sets by hyperplanes.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{minimal_width, ConvexBody, Polytope, Vector, WidthCertainty};

/// Bounding-box scans stop above this many candidates.
pub const SCAN_LIMIT: u64 = 10_000_000;
/// Exact covers accept at most this many points.
pub const EXACT_POINT_LIMIT: usize = 5000;
const CANDIDATE_LIMIT: u64 = 50_000_000;
const NODE_LIMIT: u64 = 50_000_000;

pub type IntPoint = Vec<i64>;

#[derive(Debug, Clone, PartialEq)]
pub struct LatticePointSet {
    pub dim: usize,
    pub points: Vec<IntPoint>,
    /// Membership decided in integer arithmetic rather than with a tolerance.
    pub exact_membership: bool,
}

impl LatticePointSet {
    pub fn new(dim: usize, points: Vec<IntPoint>) -> Result<Self> {
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidInput("point dimension mismatch".into()));
        }
        Ok(LatticePointSet {
            dim,
            points,
            exact_membership: true,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Image under `x ↦ Ux + t`.
    pub fn transform(&self, u: &[Vec<i64>], t: &[i64]) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| {
                (0..self.dim)
                    .map(|i| (0..self.dim).map(|j| u[i][j] * p[j]).sum::<i64>() + t[i])
                    .collect()
            })
            .collect();
        LatticePointSet { points, ..self.clone() }
    }
}

fn as_integer(v: &Vector) -> Option<IntPoint> {
    v.iter()
        .map(|x| {
            let r = x.round();
            ((x - r).abs() < 1e-9).then_some(r as i64)
        })
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, y)| *x as i128 * *y as i128).sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Primitive integer normal to `d − 1` integer vectors, first nonzero entry
/// positive; `None` when they are dependent.
fn integer_normal(rows: &[Vec<i128>], d: usize) -> Option<Vec<i64>> {
    let mut n: Vec<i128> = (0..d)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                .collect();
            if j % 2 == 0 {
                det(&minor)
            } else {
                -det(&minor)
            }
        })
        .collect();
    let g = n.iter().fold(0, |g, x| gcd(g, *x));
    if g == 0 {
        return None;
    }
    let sign = if n.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        -1
    } else {
        1
    };
    for x in &mut n {
        *x = *x / g * sign;
    }
    Some(n.into_iter().map(|x| x as i64).collect())
}

/// Integer facet inequalities of a polytope with integer vertices.
fn integer_halfspaces(p: &Polytope) -> Option<Vec<(Vec<i64>, i128)>> {
    let d = p.dim();
    let verts: Vec<IntPoint> = p.vertices().iter().map(as_integer).collect::<Option<_>>()?;
    let mut out = Vec::new();
    for (i, fl) in p.normals().iter().enumerate() {
        let fv = p.facet_vertices(i);
        let v0 = &verts[fv[0]];
        let diffs: Vec<Vec<i128>> = fv[1..]
            .iter()
            .map(|&k| verts[k].iter().zip(v0).map(|(a, b)| (*a - *b) as i128).collect())
            .collect();
        let n = pick_independent(&diffs, d)?;
        let s: f64 = n.iter().zip(fl.iter()).map(|(a, b)| *a as f64 * b).sum();
        let n: Vec<i64> = if s < 0.0 { n.iter().map(|x| -x).collect() } else { n };
        let b = dot(&n, v0);
        out.push((n, b));
    }
    Some(out)
}

/// Normal of the span of some `d − 1` of the given difference vectors.
fn pick_independent(diffs: &[Vec<i128>], d: usize) -> Option<Vec<i64>> {
    if d == 1 {
        return Some(vec![1]);
    }
    let mut chosen: Vec<Vec<i128>> = Vec::new();
    for v in diffs {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if rank(&trial) == trial.len() {
            chosen = trial;
            if chosen.len() == d - 1 {
                return integer_normal(&chosen, d);
            }
        }
    }
    None
}

/// Rank by fraction-free elimination.
fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
                let g = m[i].iter().fold(0, |g, x| gcd(g, *x));
                if g > 1 {
                    for x in &mut m[i] {
                        *x /= g;
                    }
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// All integer points of a bounded body, by a bounding-box scan.
pub fn lattice_points(k: &ConvexBody) -> Result<LatticePointSet> {
    let d = k.dim();
    let (lo, hi) = k.bounding_box();
    let lo: Vec<i64> = lo.iter().map(|x| (x - 1e-9).ceil() as i64).collect();
    let hi: Vec<i64> = hi.iter().map(|x| (x + 1e-9).floor() as i64).collect();
    let mut total: u64 = 1;
    for i in 0..d {
        if hi[i] < lo[i] {
            return LatticePointSet::new(d, Vec::new());
        }
        total = total.saturating_mul((hi[i] - lo[i] + 1) as u64);
    }
    if total > SCAN_LIMIT {
        return Err(Error::InstanceTooLarge(format!("{total} lattice candidates")));
    }
    let exact = match k {
        ConvexBody::Polytope(p) => integer_halfspaces(p),
        _ => None,
    };
    let mut points = Vec::new();
    let mut x = lo.clone();
    loop {
        let inside = match &exact {
            Some(hs) => hs.iter().all(|(n, b)| dot(n, &x) <= *b),
            None => k.contains(&Vector::from_iterator(d, x.iter().map(|v| *v as f64)), 1e-9),
        };
        if inside {
            points.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == d {
                return Ok(LatticePointSet {
                    dim: d,
                    points,
                    exact_membership: exact.is_some(),
                });
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeWidth {
    pub value: f64,
    pub direction: IntPoint,
    /// True when no direction outside the enumerated box can do better.
    pub certified: bool,
}

fn primitive_directions(d: usize, bound: i64) -> Result<Vec<IntPoint>> {
    let side = (2 * bound + 1) as u64;
    if side.checked_pow(d as u32).is_none_or(|n| n > SCAN_LIMIT) {
        return Err(Error::InstanceTooLarge(format!(
            "direction box of radius {bound} in dimension {d}"
        )));
    }
    let mut out = Vec::new();
    let mut y = vec![-bound; d];
    loop {
        let first = y.iter().find(|v| **v != 0);
        if first.is_some_and(|v| *v > 0) && y.iter().fold(0i128, |g, v| gcd(g, *v as i128)) == 1 {
            out.push(y.clone());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if y[i] < bound {
                y[i] += 1;
                break;
            }
            y[i] = -bound;
        }
    }
}

/// Least width `max⟨x,y⟩ − min⟨x,y⟩` over primitive `y` with `‖y‖∞ <= bound`.
/// Ties go to the smaller `‖y‖₁`, then the lexicographically larger `y`.
pub fn lattice_width(k: &ConvexBody, bound: i64) -> Result<LatticeWidth> {
    if bound < 1 {
        return Err(Error::InvalidInput("norm bound must be at least 1".into()));
    }
    let d = k.dim();
    let mut best: Option<(f64, IntPoint)> = None;
    for y in primitive_directions(d, bound)? {
        let v = Vector::from_iterator(d, y.iter().map(|x| *x as f64));
        let w = k.width(&v);
        let better = match &best {
            None => true,
            Some((bw, by)) => {
                if w < bw - 1e-9 {
                    true
                } else if w <= bw + 1e-9 {
                    let l1 = |z: &IntPoint| z.iter().map(|x| x.abs()).sum::<i64>();
                    (l1(&y), std::cmp::Reverse(&y)) < (l1(by), std::cmp::Reverse(by))
                } else {
                    false
                }
            }
        };
        if better {
            best = Some((w, y));
        }
    }
    let (value, direction) = best.expect("at least one primitive direction");
    // any y has width >= |y|₂ · (Euclidean minimal width), so once that
    // floor passes `value` for every y outside the box the search is complete
    let mw = minimal_width(k)?;
    let certified = mw.certainty == WidthCertainty::Exact && mw.value > 0.0 && value / mw.value <= bound as f64;
    Ok(LatticeWidth {
        value,
        direction,
        certified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Hyperplane {
    pub normal: IntPoint,
    pub offset: i64,
}

impl Hyperplane {
    pub fn contains(&self, p: &[i64]) -> bool {
        dot(&self.normal, p) == self.offset as i128
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperplaneCover {
    pub hyperplanes: Vec<Hyperplane>,
    /// Index of the covering hyperplane for each point.
    pub assignment: Vec<usize>,
}

impl HyperplaneCover {
    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Every point assigned, every assignment incident.
    pub fn verify(&self, s: &LatticePointSet) -> bool {
        self.assignment.len() == s.len()
            && s.points
                .iter()
                .zip(&self.assignment)
                .all(|(p, &h)| h < self.len() && self.hyperplanes[h].contains(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    Exact,
    Greedy,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn full(n: usize) -> Self {
        let mut b = Self::new(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn and_count(&self, o: &Bits) -> usize {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
    fn minus(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }
    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b))
    }
}

/// Hyperplanes spanned by points of `s`, with their incidence sets.
fn candidates(s: &LatticePointSet) -> Result<Vec<(Hyperplane, Bits)>> {
    let d = s.dim;
    let n = s.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let p0 = &s.points[0];
    let diffs: Vec<Vec<i128>> = s
        .points
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| (*a - *b) as i128).collect())
        .collect();
    if rank(&diffs) < d {
        // the whole set lies in one hyperplane
        let units: Vec<Vec<i128>> = (0..d).map(|k| (0..d).map(|j| (j == k) as i128).collect()).collect();
        let mut rows: Vec<Vec<i128>> = Vec::new();
        for v in diffs.iter().chain(&units) {
            if rows.len() + 1 == d {
                break;
            }
            let mut t = rows.clone();
            t.push(v.clone());
            if rank(&t) == t.len() {
                rows = t;
            }
        }
        let normal = integer_normal(&rows, d).expect("independent rows");
        let offset = dot(&normal, p0) as i64;
        return Ok(vec![(Hyperplane { normal, offset }, Bits::full(n))]);
    }
    let count = binomial(n as u64, d as u64);
    if count > CANDIDATE_LIMIT {
        return Err(Error::InstanceTooLarge(format!("{count} spanning subsets")));
    }
    let mut map: HashMap<Hyperplane, usize> = HashMap::new();
    let mut out: Vec<(Hyperplane, Bits)> = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let base = &s.points[idx[0]];
        let rows: Vec<Vec<i128>> = idx[1..]
            .iter()
            .map(|&k| s.points[k].iter().zip(base).map(|(a, b)| (*a - *b) as i128).collect())
            .collect();
        if let Some(normal) = integer_normal(&rows, d) {
            let offset = dot(&normal, base) as i64;
            let h = Hyperplane { normal, offset };
            if !map.contains_key(&h) {
                let mut bits = Bits::new(n);
                for (i, p) in s.points.iter().enumerate() {
                    if h.contains(p) {
                        bits.set(i);
                    }
                }
                map.insert(h.clone(), out.len());
                out.push((h, bits));
            }
        }
        // next d-subset in lexicographic order
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if idx[i] < n - d + i {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}

fn greedy(n: usize, sets: &[Bits]) -> Vec<usize> {
    let mut left = Bits::full(n);
    let mut chosen = Vec::new();
    while left.count() > 0 {
        let (best, _) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.and_count(&left)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("sets cover every point");
        chosen.push(best);
        left = left.minus(&sets[best]);
    }
    chosen
}

struct Search<'a> {
    sets: &'a [Bits],
    /// Two distinct members share at most one point (lines in the plane).
    planar: bool,
    best: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, left: &Bits, chosen: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return Err(Error::MethodLimit("branch and bound node budget exhausted".into()));
        }
        let u = left.count();
        if u == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return Ok(());
        }
        if chosen.len() + 1 >= self.best.len() {
            return Ok(());
        }
        // sets still to add while beating the incumbent
        let b = self.best.len() - chosen.len() - 1;
        let counts: Vec<usize> = self.sets.iter().map(|s| s.and_count(left)).collect();
        let maxc = counts.iter().copied().max().unwrap_or(0);
        if maxc == 0 || u.div_ceil(maxc) > b {
            return Ok(());
        }
        if self.planar {
            // a line with more than b uncovered points must be used: the
            // other lines meet it at most once each
            let forced: Vec<usize> = (0..self.sets.len()).filter(|&i| counts[i] > b).collect();
            if forced.len() > b {
                return Ok(());
            }
            if !forced.is_empty() {
                let mut rest = left.clone();
                for &f in &forced {
                    rest = rest.minus(&self.sets[f]);
                    chosen.push(f);
                }
                let r = self.run(&rest, chosen);
                chosen.truncate(chosen.len() - forced.len());
                return r;
            }
            if u > b * b {
                return Ok(());
            }
        }
        // branch on the uncovered point with the fewest covering sets
        let pivot = left
            .ones()
            .min_by_key(|&p| {
                (0..self.sets.len())
                    .filter(|&i| counts[i] > 0 && self.sets[i].get(p))
                    .count()
            })
            .expect("nonempty");
        let mut options: Vec<usize> = (0..self.sets.len()).filter(|&i| self.sets[i].get(pivot)).collect();
        options.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
        for o in options {
            chosen.push(o);
            self.run(&left.minus(&self.sets[o]), chosen)?;
            chosen.pop();
        }
        Ok(())
    }
}

fn solve(n: usize, sets: &[Bits], planar: bool, mode: CoverMode) -> Result<Vec<usize>> {
    let g = greedy(n, sets);
    if mode == CoverMode::Greedy {
        return Ok(g);
    }
    let mut search = Search {
        sets,
        planar,
        best: g,
        nodes: 0,
    };
    search.run(&Bits::full(n), &mut Vec::new())?;
    Ok(search.best)
}

fn assemble(s: &LatticePointSet, cands: &[(Hyperplane, Bits)], pick: &[usize]) -> HyperplaneCover {
    let mut pick = pick.to_vec();
    pick.sort_unstable();
    let hyperplanes: Vec<Hyperplane> = pick.iter().map(|&i| cands[i].0.clone()).collect();
    let assignment = (0..s.len())
        .map(|p| pick.iter().position(|&i| cands[i].1.get(p)).expect("covered"))
        .collect();
    HyperplaneCover {
        hyperplanes,
        assignment,
    }
}

/// Fewest hyperplanes covering the points. Candidates are spans of points
/// of the set, which loses nothing: any covering hyperplane can be swapped
/// for the span of the points it covers.
pub fn min_hyperplane_cover(s: &LatticePointSet, mode: CoverMode) -> Result<HyperplaneCover> {
    if mode == CoverMode::Exact && s.len() > EXACT_POINT_LIMIT {
        return Err(Error::InstanceTooLarge(format!(
            "{} points for an exact cover",
            s.len()
        )));
    }
    if s.is_empty() {
        return Ok(HyperplaneCover {
            hyperplanes: Vec::new(),
            assignment: Vec::new(),
        });
    }
    let cands = candidates(s)?;
    let sets: Vec<Bits> = cands.iter().map(|c| c.1.clone()).collect();
    let pick = solve(s.len(), &sets, s.dim == 2, mode)?;
    Ok(assemble(s, &cands, &pick))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureReport {
    pub cover_size: usize,
    pub width: LatticeWidth,
    pub dim: usize,
    /// `N − (w − d)`; negative would contradict the conjectured bound.
    pub gap: f64,
    /// Largest constant consistent with `N >= c·w/d − d` on this instance.
    pub implied_general_constant: Option<f64>,
    /// Largest constant consistent with `N >= c·w/(d ln(d+1))`, symmetric bodies only.
    pub implied_symmetric_constant: Option<f64>,
}

impl ConjectureReport {
    pub fn violated(&self) -> bool {
        self.gap < -1e-9
    }
}

pub fn conjecture_gap_report(k: &ConvexBody, bound: i64) -> Result<ConjectureReport> {
    let s = lattice_points(k)?;
    let cover = min_hyperplane_cover(&s, CoverMode::Exact)?;
    conjecture_gap_for_cover(k, cover.len(), bound)
}

/// Same report for an already computed minimum cover size of `K`'s points
/// (or of an explicit point set inside `K`).
pub fn conjecture_gap_for_cover(k: &ConvexBody, cover_size: usize, bound: i64) -> Result<ConjectureReport> {
    let width = lattice_width(k, bound)?;
    let d = k.dim() as f64;
    let n = cover_size as f64;
    let w = width.value;
    let positive = w > 1e-12;
    Ok(ConjectureReport {
        cover_size,
        dim: k.dim(),
        gap: n - (w - d),
        implied_general_constant: positive.then(|| (n + d) * d / w),
        implied_symmetric_constant: (positive && k.is_centrally_symmetric()).then(|| n * d * (d + 1.0).ln() / w),
        width,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeCover {
    /// Primitive line directions used.
    pub slopes: Vec<IntPoint>,
    pub lines: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParallelCoverReport {
    pub cover_size: usize,
    pub parallel_size: usize,
    pub parallel_normal: IntPoint,
    /// `parallel_size / cover_size`; absent for empty sets.
    pub ratio: Option<f64>,
    /// Planar sets only: the smallest cover using at most four slopes among
    /// directions with `‖y‖∞ <= slope_bound`.
    pub four_slope: Option<SlopeCover>,
}

/// Fewest parallel lattice hyperplanes covering `s`, over primitive normals
/// with `‖y‖∞ <= bound`.
pub fn parallel_cover(s: &LatticePointSet, bound: i64) -> Result<(usize, IntPoint)> {
    let mut best = (usize::MAX, vec![0; s.dim]);
    for y in primitive_directions(s.dim, bound)? {
        let mut vals: Vec<i128> = s.points.iter().map(|p| dot(&y, p)).collect();
        vals.sort_unstable();
        vals.dedup();
        if vals.len() < best.0 {
            best = (vals.len(), y);
        }
    }
    Ok(best)
}

pub fn parallel_cover_ratio(s: &LatticePointSet, bound: i64, slope_bound: i64) -> Result<ParallelCoverReport> {
    let cover = min_hyperplane_cover(s, CoverMode::Exact)?;
    let (parallel_size, parallel_normal) = parallel_cover(s, bound)?;
    let four_slope = if s.dim == 2 && !s.is_empty() {
        Some(four_slope_cover(s, slope_bound)?)
    } else {
        None
    };
    Ok(ParallelCoverReport {
        cover_size: cover.len(),
        parallel_size,
        parallel_normal,
        ratio: (!cover.is_empty()).then(|| parallel_size as f64 / cover.len() as f64),
        four_slope,
    })
}

/// Smallest line cover of a planar set restricted to at most four slopes
/// drawn from the primitive directions with `‖y‖∞ <= slope_bound`.
pub fn four_slope_cover(s: &LatticePointSet, slope_bound: i64) -> Result<SlopeCover> {
    let dirs = primitive_directions(2, slope_bound)?;
    let n = s.len();
    let lines_for = |y: &IntPoint| -> Vec<Bits> {
        let normal = [-y[1], y[0]];
        let mut by: Vec<(i128, Bits)> = Vec::new();
        for (i, p) in s.points.iter().enumerate() {
            let v = dot(&normal, p);
            match by.iter_mut().find(|(k, _)| *k == v) {
                Some((_, b)) => b.set(i),
                None => {
                    let mut b = Bits::new(n);
                    b.set(i);
                    by.push((v, b));
                }
            }
        }
        by.into_iter().map(|x| x.1).collect()
    };
    let families: Vec<Vec<Bits>> = dirs.iter().map(lines_for).collect();
    let mut best: Option<SlopeCover> = None;
    let k = dirs.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for size in 1..=4.min(k) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            subsets.push(idx.clone());
            let mut i = size;
            let mut done = true;
            while i > 0 {
                i -= 1;
                if idx[i] < k - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    for sub in subsets {
        let sets: Vec<Bits> = sub.iter().flat_map(|&i| families[i].iter().cloned()).collect();
        let pick = solve(n, &sets, true, CoverMode::Exact)?;
        if best.as_ref().is_none_or(|b| pick.len() < b.lines) {
            best = Some(SlopeCover {
                slopes: sub.iter().map(|&i| dirs[i].clone()).collect(),
                lines: pick.len(),
            });
        }
    }
    Ok(best.expect("at least one slope"))
}
