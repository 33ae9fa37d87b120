//! Volume covered by unions of planks inside a ball, the comparison with a
//! single centred plank of the same total width, upper bounds for the least
//! volume of wide intersections of translates, and the stacked triangle cover.

use std::f64::consts::PI;

use nalgebra::Vector3;
use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

use crate::coverings::Plank;
use crate::error::{Error, Result};
use crate::exec::{count_hits, map_indexed, stream_rng, Exec, Rng};
use crate::geometry::{
    minimal_width, pt, unit_ball_volume, volume, ArcPolygon, ConvexBody, Direction, Polytope, Pt2, Vector, VolumeMethod,
};
use crate::quad;

/// Exact union engines accept at most this many planks.
pub const EXACT_PLANK_LIMIT: usize = 6;

/// Planks inside a ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallArrangement {
    pub planks: Vec<Plank>,
    pub center: Vector,
    pub radius: f64,
}

impl BallArrangement {
    pub fn new(planks: Vec<Plank>, center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput("ball radius must be positive".into()));
        }
        if planks.iter().any(|p| p.normal.dim() != center.len()) {
            return Err(Error::InvalidInput("plank and ball dimensions differ".into()));
        }
        Ok(BallArrangement { planks, center, radius })
    }

    pub fn unit(d: usize, planks: Vec<Plank>) -> Result<Self> {
        Self::new(planks, Vector::zeros(d), 1.0)
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn total_width(&self) -> f64 {
        self.planks.iter().map(|p| p.width).sum()
    }

    pub fn ball_volume(&self) -> f64 {
        unit_ball_volume(self.dim()) * self.radius.powi(self.dim() as i32)
    }

    /// Plank centre measured from the ball centre.
    fn offset(&self, p: &Plank) -> f64 {
        p.center - p.normal.as_vector().dot(&self.center)
    }
}

/// `∫_0^s (1 − t²)^{m/2} dt` by the reduction formula.
fn slab_antiderivative(m: usize, s: f64) -> f64 {
    let s = s.clamp(-1.0, 1.0);
    let q = (1.0 - s * s).max(0.0);
    // `p` is twice the current exponent
    let (mut j, mut p) = if m % 2 == 0 { (s, 0i64) } else { (s.asin(), -1i64) };
    while p < m as i64 {
        p += 2;
        let e = p as f64 / 2.0;
        j = s * q.powf(e) / (2.0 * e + 1.0) + 2.0 * e / (2.0 * e + 1.0) * j;
    }
    j
}

/// Volume of `{|x·u − offset| <= width/2}` inside a `d`-ball of the given
/// radius, `offset` measured from the ball centre.
pub fn plank_ball_volume(width: f64, offset: f64, radius: f64, d: usize) -> f64 {
    let lo = ((offset - 0.5 * width) / radius).max(-1.0);
    let hi = ((offset + 0.5 * width) / radius).min(1.0);
    if hi <= lo || d == 0 {
        return 0.0;
    }
    let m = d - 1;
    unit_ball_volume(m) * radius.powi(d as i32) * (slab_antiderivative(m, hi) - slab_antiderivative(m, lo))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoneArea {
    pub value: f64,
    /// Set when a boundary plane misses the sphere and the cap difference was used.
    pub fallback: bool,
}

/// Area of the sphere of radius `x` between two parallel planes `y` apart,
/// the slab centred at `offset` from the sphere centre.
pub fn zone_area(x: f64, y: f64, offset: f64) -> ZoneArea {
    let lo = offset - 0.5 * y;
    let hi = offset + 0.5 * y;
    if lo >= -x && hi <= x {
        return ZoneArea {
            value: 2.0 * PI * x * y,
            fallback: false,
        };
    }
    let len = (hi.min(x) - lo.max(-x)).max(0.0);
    ZoneArea {
        value: 2.0 * PI * x * len,
        fallback: true,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnionMethod {
    Exact2d,
    Exact3d,
    MonteCarlo { samples: u64, seed: u64 },
}

impl UnionMethod {
    /// The exact engine for the dimension when the plank count allows it.
    pub fn auto(d: usize, n: usize, samples: u64, seed: u64) -> Self {
        match d {
            2 if n <= EXACT_PLANK_LIMIT => UnionMethod::Exact2d,
            3 if n <= EXACT_PLANK_LIMIT => UnionMethod::Exact3d,
            _ => UnionMethod::MonteCarlo { samples, seed },
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            UnionMethod::Exact2d => "exact2d",
            UnionMethod::Exact3d => "exact3d",
            UnionMethod::MonteCarlo { .. } => "montecarlo",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, UnionMethod::MonteCarlo { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoveredVolume {
    pub value: f64,
    /// Standard error for sampling, zero for the exact engines.
    pub error: f64,
}

/// Pieces of `region` left after removing each strip `lo <= n·x <= hi`.
pub fn uncovered_pieces(region: ArcPolygon, strips: &[(Pt2, f64, f64)]) -> Vec<ArcPolygon> {
    let mut pieces = vec![region];
    for &(n, lo, hi) in strips {
        pieces = pieces.iter().flat_map(|p| p.minus_plank(n, lo, hi)).collect();
        if pieces.is_empty() {
            break;
        }
    }
    pieces
}

/// Exact area of `region ∩ (P₁ ∪ ⋯ ∪ Pₙ)` for planar planks.
pub fn planar_covered_area(region: &ArcPolygon, planks: &[Plank]) -> f64 {
    let strips: Vec<_> = planks
        .iter()
        .map(|p| (pt(p.normal.as_vector()), p.lo(), p.hi()))
        .collect();
    let rest: f64 = uncovered_pieces(region.clone(), &strips).iter().map(|p| p.area()).sum();
    (region.area() - rest).max(0.0)
}

fn check_limit(arr: &BallArrangement, d: usize, label: &str) -> Result<()> {
    if arr.dim() != d {
        return Err(Error::InvalidInput(format!("{label} needs dimension {d}")));
    }
    if arr.planks.len() > EXACT_PLANK_LIMIT {
        return Err(Error::MethodLimit(format!(
            "{label} handles at most {EXACT_PLANK_LIMIT} planks, got {}",
            arr.planks.len()
        )));
    }
    Ok(())
}

fn exact2d(arr: &BallArrangement) -> Result<f64> {
    check_limit(arr, 2, "exact2d")?;
    Ok(planar_covered_area(
        &ArcPolygon::disk(pt(&arr.center), arr.radius),
        &arr.planks,
    ))
}

/// Integrates the covered area of horizontal slices through the ball.
fn exact3d(arr: &BallArrangement) -> Result<f64> {
    check_limit(arr, 3, "exact3d")?;
    let r = arr.radius;
    let mut vertical = Vec::new();
    let mut slanted = Vec::new();
    let mut breaks = vec![-r, r];
    for p in &arr.planks {
        let u = p.normal.as_vector();
        let o = arr.offset(p);
        let (lo, hi) = (o - 0.5 * p.width, o + 0.5 * p.width);
        let h = (u[0] * u[0] + u[1] * u[1]).sqrt();
        if h <= 1e-12 {
            let (a, b) = if u[2] > 0.0 { (lo, hi) } else { (-hi, -lo) };
            vertical.push((a, b));
            breaks.extend([a, b]);
        } else {
            slanted.push((Pt2::new(u[0] / h, u[1] / h), u[2], h, lo, hi));
            // heights where a boundary plane is tangent to the slice circle
            for s in [lo, hi] {
                if s.abs() < r {
                    let q = ((1.0 - u[2] * u[2]) * (r * r - s * s)).sqrt();
                    breaks.extend([s * u[2] - q, s * u[2] + q]);
                }
            }
        }
    }
    // heights where two boundary lines meet on the slice circle
    let planes: Vec<(Vector3<f64>, f64)> = slanted
        .iter()
        .flat_map(|&(n, uz, h, lo, hi)| {
            let u = Vector3::new(n.x * h, n.y * h, uz);
            [(u, lo), (u, hi)]
        })
        .collect();
    for (i, &(u1, s1)) in planes.iter().enumerate() {
        for &(u2, s2) in &planes[i + 1..] {
            let d = u1.cross(&u2);
            let dd = d.norm_squared();
            if dd < 1e-20 {
                continue;
            }
            let x0 = (u2.cross(&d) * s1 - u1.cross(&d) * s2) / dd;
            let (b, c) = (x0.dot(&d) / dd, (x0.norm_squared() - r * r) / dd);
            let disc = b * b - c;
            if disc >= 0.0 {
                let q = disc.sqrt();
                breaks.extend([x0.z + (-b - q) * d.z, x0.z + (-b + q) * d.z]);
            }
        }
    }
    breaks.retain(|z| z.abs() <= r);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    let slice = |z: f64| {
        let rho2 = r * r - z * z;
        if rho2 <= 0.0 {
            return 0.0;
        }
        let full = PI * rho2;
        if vertical.iter().any(|&(a, b)| a <= z && z <= b) {
            return full;
        }
        let strips: Vec<_> = slanted
            .iter()
            .map(|&(n, uz, h, lo, hi)| (n, (lo - uz * z) / h, (hi - uz * z) / h))
            .collect();
        let rest: f64 = uncovered_pieces(ArcPolygon::disk(Pt2::zeros(), rho2.sqrt()), &strips)
            .iter()
            .map(|p| p.area())
            .sum();
        (full - rest).max(0.0)
    };
    Ok(quad::integrate_cosine(&slice, &breaks, 1e-11 * r.powi(3)))
}

fn ball_sample(rng: &mut Rng, d: usize) -> Vector {
    loop {
        let g = Vector::from_fn(d, |_, _| StandardNormal.sample(rng));
        let n = g.norm();
        if n > 1e-12 {
            let s: f64 = rng.random::<f64>().powf(1.0 / d as f64);
            return g * (s / n);
        }
    }
}

fn monte_carlo(arr: &BallArrangement, samples: u64, seed: u64, exec: Exec) -> CoveredVolume {
    let d = arr.dim();
    let hits = count_hits(exec, seed, samples, |rng| {
        let x = &arr.center + ball_sample(rng, d) * arr.radius;
        arr.planks.iter().any(|p| p.contains(&x, 0.0))
    });
    let n = samples.max(1) as f64;
    let p = hits as f64 / n;
    let v = arr.ball_volume();
    CoveredVolume {
        value: v * p,
        error: v * (p * (1.0 - p) / n).sqrt(),
    }
}

pub fn union_covered_volume(arr: &BallArrangement, method: UnionMethod) -> Result<CoveredVolume> {
    union_covered_volume_with(arr, method, Exec::default())
}

pub fn union_covered_volume_with(arr: &BallArrangement, method: UnionMethod, exec: Exec) -> Result<CoveredVolume> {
    match method {
        UnionMethod::Exact2d => exact2d(arr).map(|value| CoveredVolume { value, error: 0.0 }),
        UnionMethod::Exact3d => exact3d(arr).map(|value| CoveredVolume { value, error: 0.0 }),
        UnionMethod::MonteCarlo { samples, seed } => Ok(monte_carlo(arr, samples, seed, exec)),
    }
}

/// Covered volume of parallel planks in a 3-ball, integrating the union's
/// zone area over concentric spheres. An independent path to `exact3d`.
pub fn zone_integration_volume(arr: &BallArrangement) -> Result<f64> {
    if arr.dim() != 3 {
        return Err(Error::InvalidInput("zone integration is three-dimensional".into()));
    }
    let Some(first) = arr.planks.first() else {
        return Ok(0.0);
    };
    let u0 = first.normal.as_vector();
    let mut intervals = Vec::new();
    for p in &arr.planks {
        let c = p.normal.as_vector().dot(u0);
        if (c.abs() - 1.0).abs() > 1e-12 {
            return Err(Error::Unsupported("zone integration needs parallel planks".into()));
        }
        let o = arr.offset(p) * c.signum();
        intervals.push((o - 0.5 * p.width, o + 0.5 * p.width));
    }
    let r = arr.radius;
    let mut breaks: Vec<f64> = intervals
        .iter()
        .flat_map(|&(a, b)| [a.abs(), b.abs()])
        .filter(|&t| t < r)
        .collect();
    breaks.extend([0.0, r]);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let zone = |s: f64| 2.0 * PI * s * union_length(&intervals, -s, s);
    Ok(quad::integrate(&zone, &breaks, 1e-13 * r.powi(3)))
}

fn union_length(intervals: &[(f64, f64)], lo: f64, hi: f64) -> f64 {
    let mut v: Vec<(f64, f64)> = intervals
        .iter()
        .map(|&(a, b)| (a.max(lo), b.min(hi)))
        .filter(|(a, b)| b > a)
        .collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut cur: Option<(f64, f64)> = None;
    for (a, b) in v {
        cur = match cur {
            Some((s, e)) if a <= e => Some((s, e.max(b))),
            Some((s, e)) => {
                total += e - s;
                Some((a, b))
            }
            None => Some((a, b)),
        };
    }
    total + cur.map_or(0.0, |(s, e)| e - s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Two planks in any dimension, or any number in three dimensions.
    TheoremBacked,
    Exploration,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::TheoremBacked => "theorem-backed",
            Regime::Exploration => "no theorem backing",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlignedReport {
    pub covered: f64,
    pub aligned: f64,
    /// `aligned − covered`.
    pub gap: f64,
    pub error: f64,
    pub method: UnionMethod,
    pub regime: Regime,
    pub violation: bool,
    /// When the gap is zero within tolerance: whether the union is a centred plank.
    pub equality_is_centered_plank: Option<bool>,
}

/// Compares the covered volume with the single centred plank of the same total width.
pub fn aligned_optimum_gap(arr: &BallArrangement, method: UnionMethod) -> Result<AlignedReport> {
    let total = arr.total_width();
    if total >= 2.0 * arr.radius {
        return Err(Error::HypothesisNotMet("total width must be below the diameter".into()));
    }
    let d = arr.dim();
    let cov = union_covered_volume(arr, method)?;
    let aligned = plank_ball_volume(total, 0.0, arr.radius, d);
    let gap = aligned - cov.value;
    let regime = if arr.planks.len() <= 2 || d == 3 {
        Regime::TheoremBacked
    } else {
        Regime::Exploration
    };
    let tol = 3.0 * cov.error + 1e-9 * arr.ball_volume();
    let violation = regime == Regime::TheoremBacked && gap < -tol;
    let equality_is_centered_plank = (gap.abs() <= tol).then(|| is_centered_stack(arr));
    Ok(AlignedReport {
        covered: cov.value,
        aligned,
        gap,
        error: cov.error,
        method,
        regime,
        violation,
        equality_is_centered_plank,
    })
}

fn is_centered_stack(arr: &BallArrangement) -> bool {
    let Some(first) = arr.planks.first() else { return true };
    let u0 = first.normal.as_vector();
    let mut intervals = Vec::new();
    for p in &arr.planks {
        let c = p.normal.as_vector().dot(u0);
        if (c.abs() - 1.0).abs() > 1e-9 {
            return false;
        }
        let o = arr.offset(p) * c.signum();
        intervals.push((o - 0.5 * p.width, o + 0.5 * p.width));
    }
    let lo = intervals.iter().map(|i| i.0).fold(f64::INFINITY, f64::min);
    let hi = intervals.iter().map(|i| i.1).fold(f64::NEG_INFINITY, f64::max);
    (union_length(&intervals, lo, hi) - (hi - lo)).abs() < 1e-9 && (lo + hi).abs() < 1e-9
}

/// Random planks in the unit `d`-ball with widths summing to `total`.
pub fn random_ball_arrangement(rng: &mut Rng, d: usize, n: usize, total: f64) -> BallArrangement {
    let weights: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
    let sum: f64 = weights.iter().sum();
    let planks = weights
        .iter()
        .map(|w| {
            let width = total * w / sum;
            let normal = loop {
                let g = Vector::from_fn(d, |_, _| StandardNormal.sample(rng));
                if let Ok(u) = Direction::new(g) {
                    break u;
                }
            };
            let reach = (1.0 - 0.5 * width).max(0.0);
            let center = rng.random_range(-1.0..=1.0) * reach;
            Plank::new(normal, center, width).expect("positive width")
        })
        .collect();
    BallArrangement::unit(d, planks).expect("matching dimensions")
}

/// Annealing schedule for [`vd_upper_bound`]. Fixed so that runs reproduce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VdConfig {
    /// Initial acceptance temperature, relative to the gauge volume.
    pub temperature: f64,
    pub cooling: f64,
    /// Initial step, relative to the gauge's minimal width.
    pub step: f64,
    pub step_decay: f64,
    /// Samples per volume estimate when no exact volume exists.
    pub samples: u64,
}

impl Default for VdConfig {
    fn default() -> Self {
        VdConfig {
            temperature: 0.02,
            cooling: 0.995,
            step: 0.25,
            step_decay: 0.995,
            samples: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VdReport {
    /// Least volume found; an upper bound on the true minimum.
    pub value: f64,
    pub width: f64,
    pub translates: Vec<Vector>,
    /// False when volumes or widths were estimated rather than computed.
    pub exact_evaluation: bool,
}

/// Volume and minimal width of the intersection of translates of the gauge.
fn translates_intersection(gauge: &ConvexBody, ts: &[Vector], cfg: &VdConfig) -> Result<Option<(f64, f64)>> {
    if let Some(base) = gauge.as_arc_polygon() {
        let mut q = base.clone();
        for t in &ts[1..] {
            let shift = pt(t);
            let next = match gauge {
                ConvexBody::Ball { center, radius } => q.clip_disk(pt(center) + shift, *radius),
                _ => {
                    let vs = base.vertices();
                    let n = vs.len();
                    let mut out = Some(q);
                    for i in 0..n {
                        let e = vs[(i + 1) % n] - vs[i];
                        let nn = Pt2::new(e.y, -e.x).normalize();
                        out = out.and_then(|o| o.clip_halfplane(nn, nn.dot(&(vs[i] + shift))));
                    }
                    out
                }
            };
            match next {
                Some(x) => q = x,
                None => return Ok(None),
            }
        }
        return Ok(Some((q.area(), q.width_extreme(true).value)));
    }
    match gauge {
        ConvexBody::Polytope(p) => {
            let mut normals = Vec::new();
            let mut offsets = Vec::new();
            for t in ts {
                for (a, b) in p.normals().iter().zip(p.offsets()) {
                    normals.push(a.clone());
                    offsets.push(b + a.dot(t));
                }
            }
            match Polytope::from_h(normals, offsets) {
                Ok(q) => {
                    let body = ConvexBody::Polytope(q);
                    let w = minimal_width(&body)?.value;
                    Ok(Some((volume(&body, VolumeMethod::Exact)?.value, w)))
                }
                Err(Error::Degenerate(_)) | Err(Error::Unbounded) => Ok(None),
                Err(e) => Err(e),
            }
        }
        ConvexBody::Ball { .. } => {
            let members: Vec<ConvexBody> = ts.iter().map(|t| gauge.translate(t)).collect();
            match ConvexBody::intersection(members) {
                Ok(body) => {
                    let w = minimal_width(&body)?.value;
                    let v = volume(
                        &body,
                        VolumeMethod::MonteCarlo {
                            samples: cfg.samples,
                            seed: 0,
                        },
                    )?;
                    Ok(Some((v.value, w)))
                }
                Err(Error::Degenerate(_)) | Err(Error::Infeasible(_)) => Ok(None),
                Err(e) => Err(e),
            }
        }
        _ => Err(Error::Unsupported(format!("translate search over a {}", gauge.kind()))),
    }
}

fn anneal(
    gauge: &ConvexBody,
    floor: f64,
    m: usize,
    vol_c: f64,
    wc: f64,
    seed: u64,
    stream: u64,
    iterations: u64,
    cfg: &VdConfig,
) -> Result<VdReport> {
    let d = gauge.dim();
    let mut rng = stream_rng(seed, stream);
    let mut ts = vec![Vector::zeros(d); m];
    let mut cur = vol_c;
    let mut best = VdReport {
        value: vol_c,
        width: wc,
        translates: ts.clone(),
        exact_evaluation: true,
    };
    let mut step = cfg.step * wc;
    let mut temp = cfg.temperature;
    for _ in 0..iterations {
        let i = rng.random_range(1..m);
        let g = Vector::from_fn(d, |_, _| StandardNormal.sample(&mut rng));
        let old = ts[i].clone();
        ts[i] = &old + g * step;
        let accepted = match translates_intersection(gauge, &ts, cfg)? {
            Some((v, w)) if w >= floor => {
                let ok = v <= cur || rng.random::<f64>() < (-(v - cur) / (vol_c * temp)).exp();
                if ok {
                    cur = v;
                    if v < best.value {
                        best = VdReport {
                            value: v,
                            width: w,
                            translates: ts.clone(),
                            exact_evaluation: true,
                        };
                    }
                }
                ok
            }
            _ => false,
        };
        if !accepted {
            ts[i] = old;
        }
        step = (step * cfg.step_decay).max(1e-7 * wc);
        temp = (temp * cfg.cooling).max(1e-12);
    }
    Ok(best)
}

/// Searches placements of up to `2^n` translates of the gauge for a
/// low-volume intersection of minimal width at least `floor`. The result
/// bounds the least such volume from above; it is never claimed optimal.
pub fn vd_upper_bound(gauge: &ConvexBody, floor: f64, n: u32, seed: u64, iterations: u64) -> Result<VdReport> {
    vd_upper_bound_with(gauge, floor, n, seed, iterations, &VdConfig::default(), Exec::default())
}

pub fn vd_upper_bound_with(
    gauge: &ConvexBody,
    floor: f64,
    n: u32,
    seed: u64,
    iterations: u64,
    cfg: &VdConfig,
    exec: Exec,
) -> Result<VdReport> {
    if !matches!(gauge, ConvexBody::Ball { .. } | ConvexBody::Polytope(_)) {
        return Err(Error::Unsupported("gauge must be a ball or a polytope".into()));
    }
    if n > 10 {
        return Err(Error::InstanceTooLarge(format!("2^{n} translates")));
    }
    let wc = minimal_width(gauge)?.value;
    if !(floor > 0.0) {
        return Err(Error::InvalidInput("width floor must be positive".into()));
    }
    if floor > wc * (1.0 + 1e-12) {
        return Err(Error::Infeasible(format!(
            "width floor {floor} exceeds the gauge width {wc}"
        )));
    }
    let exact = gauge.dim() == 2 || matches!(gauge, ConvexBody::Polytope(_));
    let vol_c = volume(gauge, VolumeMethod::Exact)?.value;
    let runs = map_indexed(exec, n as u64, |j| {
        anneal(gauge, floor, 1 << (j + 1), vol_c, wc, seed, j + 1, iterations, cfg)
    });
    let mut best = VdReport {
        value: vol_c,
        width: wc,
        translates: vec![Vector::zeros(gauge.dim())],
        exact_evaluation: exact,
    };
    for r in runs {
        let r = r?;
        if r.value < best.value {
            best = VdReport {
                exact_evaluation: exact,
                ..r
            };
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartialBoundReport {
    pub total_width: f64,
    pub width: f64,
    /// Width floor `w(C) − Σ widths`.
    pub floor: f64,
    /// Searched upper bound standing in for the least volume; heuristic.
    pub bound: VdReport,
    pub volume: f64,
}

/// The uncovered-volume bound for planks of the given widths, with the
/// least-volume term replaced by [`vd_upper_bound`].
pub fn bang_partial_bound(
    c: &ConvexBody,
    widths: &[f64],
    n: u32,
    seed: u64,
    iterations: u64,
) -> Result<PartialBoundReport> {
    let total: f64 = widths.iter().sum();
    let w = minimal_width(c)?.value;
    if total >= w {
        return Err(Error::HypothesisNotMet(format!(
            "total width {total} is not below the minimal width {w}"
        )));
    }
    let bound = vd_upper_bound(c, w - total, n, seed, iterations)?;
    Ok(PartialBoundReport {
        total_width: total,
        width: w,
        floor: w - total,
        bound,
        volume: volume(c, VolumeMethod::Exact)?.value,
    })
}

/// Volume of the part of a planar body no plank covers.
pub fn planar_uncovered_area(c: &ConvexBody, planks: &[Plank]) -> Result<f64> {
    let a = c
        .as_arc_polygon()
        .ok_or_else(|| Error::Unsupported("exact uncovered area needs a planar body".into()))?;
    Ok(a.area() - planar_covered_area(&a, planks))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriangleReport {
    pub area: f64,
    pub min_height: f64,
    pub total_width: f64,
    /// `area·(1 − (1 − w₀/w)²)`.
    pub optimal: f64,
    /// Covered area of the stack on the longest side, by clipping.
    pub stacked: f64,
}

/// Planks of the given widths stacked against the longest side of a triangle.
pub fn triangle_stack(t: &Polytope, widths: &[f64]) -> Result<(Vec<Plank>, f64)> {
    let vs = t.vertices();
    if t.dim() != 2 || vs.len() != 3 {
        return Err(Error::InvalidInput("expected a triangle".into()));
    }
    let a = t.to_arc_polygon();
    let p = a.vertices();
    let (i, _) = (0..3)
        .map(|i| (i, (p[(i + 1) % 3] - p[i]).norm()))
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .expect("three sides");
    let e = p[(i + 1) % 3] - p[i];
    // the polygon is counter-clockwise, so the left normal points inward
    let inward = Pt2::new(-e.y, e.x).normalize();
    let base = inward.dot(&p[i]);
    let height = 2.0 * a.area() / e.norm();
    let normal = Direction::from_slice(&[inward.x, inward.y])?;
    let mut s = base;
    let mut planks = Vec::new();
    for &w in widths {
        planks.push(Plank::between(normal.clone(), s, s + w)?);
        s += w;
    }
    Ok((planks, height))
}

pub fn triangle_stack_area(t: &Polytope, widths: &[f64]) -> Result<TriangleReport> {
    let (planks, h) = triangle_stack(t, widths)?;
    let total: f64 = widths.iter().sum();
    if total >= h {
        return Err(Error::HypothesisNotMet(
            "total width must be below the minimal height".into(),
        ));
    }
    let a = t.to_arc_polygon();
    let area = a.area();
    let rest = 1.0 - total / h;
    Ok(TriangleReport {
        area,
        min_height: h,
        total_width: total,
        optimal: area * (1.0 - rest * rest),
        stacked: planar_covered_area(&a, &planks),
    })
}

/// Largest covered area of a planar body over random placements of planks
/// with the given widths, each meeting the body.
pub fn random_planar_cover_max(c: &ArcPolygon, widths: &[f64], trials: u64, seed: u64, exec: Exec) -> f64 {
    let covered = map_indexed(exec, trials, |k| {
        let mut rng = stream_rng(seed, k);
        let planks: Vec<Plank> = widths
            .iter()
            .map(|&w| {
                let th = rng.random_range(0.0..PI);
                let u = Pt2::new(th.cos(), th.sin());
                let (lo, hi) = (-c.support(-u) - 0.5 * w, c.support(u) + 0.5 * w);
                Plank::new(Direction::angle(th), rng.random_range(lo..hi), w).expect("positive width")
            })
            .collect();
        planar_covered_area(c, &planks)
    });
    covered.into_iter().fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plank(u: &[f64], c: f64, w: f64) -> Plank {
        Plank::new(Direction::from_slice(u).unwrap(), c, w).unwrap()
    }

    #[test]
    fn plank_ball_volume_examples() {
        assert!((plank_ball_volume(2.0, 0.0, 1.0, 2) - PI).abs() < 1e-14);
        for h in [0.3, 1.0, 1.7, 2.0] {
            let v = plank_ball_volume(h, 0.0, 1.0, 3);
            assert!((v - PI * (h - h * h * h / 12.0)).abs() < 1e-13);
        }
        assert!((plank_ball_volume(1.0, 0.0, 1.0, 3) - 11.0 * PI / 12.0).abs() < 1e-14);
        // the whole ball in every dimension
        for d in 1..8 {
            assert!((plank_ball_volume(5.0, 0.0, 1.0, d) - unit_ball_volume(d)).abs() < 1e-13);
        }
    }

    #[test]
    fn plank_ball_volume_matches_quadrature() {
        for d in 2..7 {
            let m = (d - 1) as f64;
            let f = |t: f64| unit_ball_volume(d - 1) * (1.0 - t * t).max(0.0).powf(m / 2.0);
            let q = quad::integrate(&f, &[-0.2, 0.7], 1e-14);
            assert!((plank_ball_volume(0.9, 0.25, 1.0, d) - q).abs() < 1e-12, "d = {d}");
        }
        // radius scaling
        let v = plank_ball_volume(1.0, 0.5, 2.0, 3);
        assert!((v - 8.0 * plank_ball_volume(0.5, 0.25, 1.0, 3)).abs() < 1e-12);
    }

    #[test]
    fn zone_examples() {
        assert_eq!(
            zone_area(1.0, 0.5, 0.0),
            ZoneArea {
                value: PI,
                fallback: false
            }
        );
        let full = zone_area(1.0, 2.0, 0.0);
        assert!((full.value - 4.0 * PI).abs() < 1e-14 && !full.fallback);
        let over = zone_area(1.0, 3.0, 0.2);
        assert!((over.value - 4.0 * PI).abs() < 1e-14 && over.fallback);
        let a = zone_area(1.0, 0.3, -0.5).value + zone_area(1.0, 0.4, 0.3).value;
        assert!((a - 2.0 * PI * 0.7).abs() < 1e-14);
    }

    #[test]
    fn single_plank_engines_agree() {
        let arr = BallArrangement::unit(2, vec![plank(&[0.6, 0.8], 0.1, 0.7)]).unwrap();
        let v = union_covered_volume(&arr, UnionMethod::Exact2d).unwrap().value;
        assert!((v - plank_ball_volume(0.7, 0.1, 1.0, 2)).abs() < 1e-12);
        let arr = BallArrangement::unit(3, vec![plank(&[1.0, 2.0, 2.0], -0.2, 0.5)]).unwrap();
        let v = union_covered_volume(&arr, UnionMethod::Exact3d).unwrap().value;
        let slab = plank_ball_volume(0.5, -0.2, 1.0, 3);
        assert!((v - slab).abs() < 1e-10, "{v} {slab}");
        assert!((zone_integration_volume(&arr).unwrap() - slab).abs() < 1e-10);
        let full = BallArrangement::unit(3, vec![plank(&[0.0, 0.0, 1.0], 0.0, 2.0)]).unwrap();
        let v = union_covered_volume(&full, UnionMethod::Exact3d).unwrap().value;
        assert!((v - 4.0 * PI / 3.0).abs() < 1e-10);
    }

    #[test]
    fn stacked_planks_act_as_one() {
        for d in [2, 3] {
            let mut u = vec![0.0; d];
            u[0] = 1.0;
            let arr = BallArrangement::unit(d, vec![plank(&u, -0.1, 0.4), plank(&u, 0.25, 0.3)]).unwrap();
            let m = UnionMethod::auto(d, 2, 0, 0);
            let v = union_covered_volume(&arr, m).unwrap().value;
            assert!((v - plank_ball_volume(0.7, 0.05, 1.0, d)).abs() < 1e-10);
        }
        let u = [0.0, 0.6, 0.8];
        let arr = BallArrangement::unit(3, vec![plank(&u, -0.1, 0.4), plank(&[0.0, -0.6, -0.8], -0.25, 0.3)]).unwrap();
        let z = zone_integration_volume(&arr).unwrap();
        let e = union_covered_volume(&arr, UnionMethod::Exact3d).unwrap().value;
        assert!((z - e).abs() < 1e-8);
        assert!((z - plank_ball_volume(0.7, 0.05, 1.0, 3)).abs() < 1e-10);
    }

    #[test]
    fn perpendicular_pair() {
        let arr = BallArrangement::unit(2, vec![plank(&[1.0, 0.0], 0.0, 0.6), plank(&[0.0, 1.0], 0.0, 0.6)]).unwrap();
        let v = union_covered_volume(&arr, UnionMethod::Exact2d).unwrap().value;
        let a = plank_ball_volume(0.6, 0.0, 1.0, 2);
        assert!((v - (2.0 * a - 0.36)).abs() < 1e-12);
        let r = aligned_optimum_gap(&arr, UnionMethod::Exact2d).unwrap();
        assert!(r.gap > 0.01 && !r.violation);
        assert_eq!(r.regime, Regime::TheoremBacked);
    }

    #[test]
    fn aligned_stack_has_zero_gap() {
        let arr = BallArrangement::unit(
            3,
            vec![plank(&[0.0, 1.0, 0.0], -0.2, 0.4), plank(&[0.0, -1.0, 0.0], -0.2, 0.4)],
        )
        .unwrap();
        let r = aligned_optimum_gap(&arr, UnionMethod::Exact3d).unwrap();
        assert!(r.gap.abs() < 1e-9);
        assert_eq!(r.equality_is_centered_plank, Some(true));
    }

    #[test]
    fn monte_carlo_agrees_with_exact() {
        for seed in 0..4 {
            let mut rng = stream_rng(seed, 0);
            for d in [2, 3] {
                let arr = random_ball_arrangement(&mut rng, d, 3, 1.0);
                let ex = union_covered_volume(&arr, UnionMethod::auto(d, 3, 0, 0)).unwrap();
                let mc = union_covered_volume(&arr, UnionMethod::MonteCarlo { samples: 200_000, seed }).unwrap();
                assert!((ex.value - mc.value).abs() <= 4.0 * mc.error + 1e-12, "{ex:?} {mc:?}");
            }
        }
    }

    #[test]
    fn method_limit() {
        let ps = (0..7).map(|i| plank(&[1.0, 0.0], i as f64 * 0.1, 0.05)).collect();
        let arr = BallArrangement::unit(2, ps).unwrap();
        assert!(matches!(
            union_covered_volume(&arr, UnionMethod::Exact2d),
            Err(Error::MethodLimit(_))
        ));
        assert!(union_covered_volume(&arr, UnionMethod::MonteCarlo { samples: 1000, seed: 0 }).is_ok());
    }

    #[test]
    fn vd_examples() {
        let disk = ConvexBody::unit_ball(2);
        let r = vd_upper_bound(&disk, 1.5, 0, 0, 100).unwrap();
        assert!((r.value - PI).abs() < 1e-12);
        let r = vd_upper_bound(&disk, 2.0, 2, 0, 200).unwrap();
        assert!((r.value - PI).abs() < 1e-9);
        let lens = |d: f64| 2.0 * (d / 2.0).acos() - d * (1.0 - d * d / 4.0).sqrt();
        let r = vd_upper_bound(&disk, 1.8, 1, 3, 3000).unwrap();
        assert!(
            r.value >= lens(0.2) - 1e-9 && r.value <= lens(0.2) + 2e-3,
            "{}",
            r.value
        );
        assert!(matches!(
            vd_upper_bound(&disk, 2.5, 1, 0, 10),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn vd_is_monotone() {
        let sq = ConvexBody::Polytope(Polytope::centered_cube(2));
        let a = vd_upper_bound(&sq, 1.5, 1, 5, 200).unwrap().value;
        let b = vd_upper_bound(&sq, 1.5, 1, 5, 800).unwrap().value;
        let c = vd_upper_bound(&sq, 1.5, 2, 5, 800).unwrap().value;
        assert!(b <= a && c <= b);
    }

    #[test]
    fn half_width_plank_in_disk() {
        let disk = ConvexBody::unit_ball(2);
        let rep = bang_partial_bound(&disk, &[0.5], 1, 1, 3000).unwrap();
        assert!((rep.floor - 1.5).abs() < 1e-12);
        let unc = planar_uncovered_area(&disk, &[plank(&[0.0, 1.0], 0.0, 0.5)]).unwrap();
        // the two caps left over reassemble into the width-1.5 lens
        assert!(unc <= rep.bound.value + 1e-9);
        assert!((unc - 2.152109).abs() < 1e-5);
        let none = bang_partial_bound(&disk, &[], 0, 0, 10).unwrap();
        assert!((none.bound.value - PI).abs() < 1e-12);
        assert!(bang_partial_bound(&disk, &[1.0, 1.0], 2, 0, 10).is_err());
    }

    #[test]
    fn triangle_examples() {
        let t = Polytope::regular_polygon(3, 2.0 / 3.0, 0.0);
        let r = triangle_stack_area(&t, &[0.3, 0.2]).unwrap();
        assert!((r.min_height - 1.0).abs() < 1e-12);
        assert!((r.optimal - 0.75 * r.area).abs() < 1e-12);
        assert!((r.stacked - r.optimal).abs() < 1e-12);
        let best = random_planar_cover_max(&t.to_arc_polygon(), &[0.3, 0.2], 300, 9, Exec::default());
        assert!(best <= r.optimal + 1e-12);
        let tiny = triangle_stack_area(&t, &[1e-9]).unwrap();
        assert!(tiny.optimal < 1e-8);
    }
}
