//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Runtime budgets count toward the verdict.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use plank_core::bounds::{ball_poly_volume_lb, firey_f, g_closed, g_recursive, lens_area, BallPolyhedron};
use plank_core::coverings::certify_cover;
use plank_core::coverings::{
    ball_check, bang_check, kadets_check, random_kadets_cover, random_plank_cover, random_polygon, Arrangement,
    CertificateKind, CoverElement, Plank, RandomCoverConfig,
};
use plank_core::exec::{map_indexed, stream_rng, Exec};
use plank_core::geometry::Pt2;
use plank_core::inradii::{adversarial_search, optimal_cuts, slice_and_measure, successive_inradius};
use plank_core::lattice::{
    conjecture_gap_report, lattice_points, lattice_width, min_hyperplane_cover, CoverMode, LatticePointSet,
};
use plank_core::partial::{
    aligned_optimum_gap, plank_ball_volume, random_ball_arrangement, union_covered_volume, zone_area, BallArrangement,
    UnionMethod,
};
use plank_core::{ArcPolygon, ConvexBody, Direction, Polytope, Vector};
use plankbench::experiments::family_body;
use plankbench::{run_experiment, run_experiment_with, Kind};
use rand::Rng;
use serde_json::json;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn criterion(n: u32, title: &str, budget: Duration, f: impl FnOnce() -> Check) -> bool {
    let t = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f));
    let elapsed = t.elapsed();
    let (mut pass, mut detail) = match result {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(p) => (
            false,
            format!(
                "panicked: {}",
                p.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default()
            ),
        ),
    };
    if pass && elapsed > budget {
        pass = false;
        detail = format!("{detail}; over the runtime budget");
    }
    println!(
        "criterion {n} {}: {title}: {detail} [{:.2} s of {} s]",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    pass
}

fn unit_square() -> ConvexBody {
    ConvexBody::Polytope(Polytope::unit_cube(2))
}

fn unit_disk() -> ConvexBody {
    ConvexBody::unit_ball(2)
}

fn constants() -> Check {
    // independent evaluation of 2/(√3·d!)
    let f = |d: u32| 2.0 / (3f64.sqrt() * (1..=d).product::<u32>() as f64);
    ensure!((firey_f(3) - 0.19245).abs() <= 1e-4, "f(3) = {}", firey_f(3));
    ensure!((firey_f(4) - 0.04811).abs() <= 1e-4, "f(4) = {}", firey_f(4));
    ensure!(
        (firey_f(3) - f(3)).abs() < 1e-15 && (firey_f(4) - f(4)).abs() < 1e-15,
        "f disagrees with d! form"
    );
    ensure!((g_recursive(3) - 2.0 / 9.0).abs() <= 1e-12, "g(3) = {}", g_recursive(3));
    ensure!(
        (g_closed(3) - g_recursive(3)).abs() <= 1e-12,
        "closed g(3) = {}",
        g_closed(3)
    );
    ensure!(
        (g_closed(5) - g_recursive(5)).abs() <= 1e-12,
        "closed g(5) = {} vs {}",
        g_closed(5),
        g_recursive(5)
    );
    for d in 3..=20 {
        ensure!(
            g_recursive(d) > firey_f(d),
            "g({d}) = {} not above f = {}",
            g_recursive(d),
            firey_f(d)
        );
    }
    Ok(format!(
        "f(3) = {:.5}, f(4) = {:.5}, g(3) = {:.12}, g(5) = {:.10}",
        firey_f(3),
        firey_f(4),
        g_recursive(3),
        g_recursive(5)
    ))
}

fn zones() -> Check {
    let z = zone_area(1.0, 0.5, 0.0);
    ensure!(z.value == PI && !z.fallback, "zone area {}", z.value);
    let mut worst: f64 = 0.0;
    for h in [0.25, 0.5, 1.0, 1.5, 1.9] {
        let arr = BallArrangement::unit(3, vec![Plank::new(Direction::axis(3, 2), 0.0, h).unwrap()]).unwrap();
        let exact = union_covered_volume(&arr, UnionMethod::Exact3d)
            .map_err(|e| e.to_string())?
            .value;
        let slab = plank_ball_volume(h, 0.0, 1.0, 3);
        let oracle = PI * (h - h.powi(3) / 12.0);
        ensure!((exact - slab).abs() <= 1e-8, "h = {h}: exact3d {exact} vs slab {slab}");
        ensure!(
            (slab - oracle).abs() <= 1e-12,
            "h = {h}: slab {slab} vs closed form {oracle}"
        );
        worst = worst.max((exact - slab).abs());
    }
    let full = BallArrangement::unit(3, vec![Plank::new(Direction::axis(3, 0), 0.0, 2.0).unwrap()]).unwrap();
    let v = union_covered_volume(&full, UnionMethod::Exact3d)
        .map_err(|e| e.to_string())?
        .value;
    let ball = 4.0 * PI / 3.0;
    ensure!((v - ball).abs() <= 1e-10, "full ball {v}");
    ensure!(
        (plank_ball_volume(2.0, 0.0, 1.0, 3) - ball).abs() <= 1e-10,
        "slab full ball"
    );
    Ok(format!(
        "zone(1, 0.5) = π, worst exact3d/slab gap {worst:.1e}, full ball off by {:.1e}",
        (v - ball).abs()
    ))
}

fn two_plank_sweep() -> Check {
    let w = 0.6;
    let offsets: Vec<f64> = (0..15).map(|j| (j as f64 - 7.0) / 10.0).collect();
    let m = offsets.len();
    let total = 91 * m * m;
    let areas = map_indexed(Exec::Parallel, total as u64, |k| {
        let k = k as usize;
        let deg = k / (m * m);
        let (i, j) = ((k / m) % m, k % m);
        let t = (deg as f64).to_radians();
        let p1 = Plank::new(Direction::angle(0.0), offsets[i], w).unwrap();
        let p2 = Plank::new(Direction::angle(t), offsets[j], w).unwrap();
        let arr = BallArrangement::unit(2, vec![p1, p2]).unwrap();
        (
            deg,
            offsets[i],
            offsets[j],
            union_covered_volume(&arr, UnionMethod::Exact2d).unwrap().value,
        )
    });
    let aligned = plank_ball_volume(2.0 * w, 0.0, 1.0, 2);
    let best = areas.iter().map(|a| a.3).fold(f64::NEG_INFINITY, f64::max);
    ensure!(
        best <= aligned + 1e-9,
        "sweep maximum {best} exceeds the aligned plank {aligned}"
    );
    ensure!(
        (best - aligned).abs() <= 1e-9,
        "aligned centred stack not reached: {best} vs {aligned}"
    );
    for &(deg, c1, c2, a) in &areas {
        if a >= best - 1e-9 {
            let centred = deg == 0 && ((c1 - c2).abs() - w).abs() < 1e-9 && (c1 + c2).abs() < 1e-9;
            ensure!(centred, "near-maximum {a} at θ = {deg}°, offsets {c1}, {c2}");
        }
    }
    let perp = areas.iter().find(|a| a.0 == 90 && a.1 == 0.0 && a.2 == 0.0).unwrap().3;
    let single = plank_ball_volume(w, 0.0, 1.0, 2);
    let oracle = 2.0 * single - w * w;
    ensure!(
        (perp - oracle).abs() <= 1e-9,
        "perpendicular {perp} vs inclusion–exclusion {oracle}"
    );
    let gap = aligned - perp;
    ensure!(gap >= 0.01, "perpendicular gap {gap}");
    Ok(format!(
        "{total} configurations, max {best:.10} = aligned, perpendicular gap {gap:.4}"
    ))
}

fn random_three_d() -> Check {
    let count = 10_000u64;
    let reports = map_indexed(Exec::Parallel, count, |i| {
        let mut rng = stream_rng(2024, i);
        let n = rng.random_range(1..=4);
        let arr = random_ball_arrangement(&mut rng, 3, n, 1.0);
        aligned_optimum_gap(&arr, UnionMethod::Exact3d).map_err(|e| e.to_string())
    });
    let mut min_gap = f64::INFINITY;
    let mut hard = 0;
    for (i, r) in reports.into_iter().enumerate() {
        let r = r?;
        ensure!(r.method == UnionMethod::Exact3d, "instance {i} left the exact engine");
        if r.violation {
            hard += 1;
        }
        ensure!(
            r.gap >= -3.0 * r.error,
            "instance {i}: gap {} below −3·err ({})",
            r.gap,
            r.error
        );
        min_gap = min_gap.min(r.gap);
    }
    ensure!(hard == 0, "{hard} hard violations");
    Ok(format!(
        "{count} arrangements on exact3d, min gap {min_gap:.3e}, 0 hard violations"
    ))
}

fn successive() -> Check {
    let sq = unit_square();
    let disk = unit_disk();
    let mut worst_cut: f64 = 0.0;
    for n in 1..=6usize {
        let r = successive_inradius(&sq, &disk, n, None).map_err(|e| e.to_string())?.rho;
        ensure!((r - 1.0 / (2.0 * n as f64)).abs() <= 1e-8, "square/disk n = {n}: {r}");
        let r2 = successive_inradius(&sq, &sq, n, None).map_err(|e| e.to_string())?.rho;
        ensure!((r2 - 1.0 / n as f64).abs() <= 1e-8, "square/square n = {n}: {r2}");
        for (c, rho) in [(&disk, r), (&sq, r2)] {
            let (cuts, _) = optimal_cuts(&sq, c, n).map_err(|e| e.to_string())?;
            ensure!(cuts.len() + 1 == n, "n = {n}: {} cuts", cuts.len());
            let g = slice_and_measure(&sq, c, &cuts).map_err(|e| e.to_string())?.greatest;
            ensure!((g - rho).abs() <= 1e-6, "n = {n}: optimal greatest {g} vs {rho}");
            worst_cut = worst_cut.max((g - rho).abs());
        }
    }
    let hexagon = ConvexBody::Polytope(Polytope::regular_polygon(6, 1.0, 0.3));
    let mut trees = 0;
    let mut least_margin = f64::INFINITY;
    for (k, c) in [(&sq, &disk), (&sq, &sq), (&hexagon, &disk)] {
        for n in [2usize, 3, 5] {
            let rep = adversarial_search(k, c, n, 1000, 77 + n as u64, Exec::Parallel).map_err(|e| e.to_string())?;
            ensure!(
                rep.violations == 0,
                "n = {n}: {} trees beat r = {}",
                rep.violations,
                rep.successive_inradius
            );
            ensure!(
                rep.best >= rep.successive_inradius - 1e-6,
                "best {} < {}",
                rep.best,
                rep.successive_inradius
            );
            least_margin = least_margin.min(rep.best - rep.successive_inradius);
            trees += rep.trials;
        }
    }
    Ok(format!("r = 1/(2n) and 1/n for n ≤ 6, optimal cuts within {worst_cut:.1e}, {trees} random trees, least margin {least_margin:.3e}"))
}

fn covering_harnesses() -> Check {
    let cfg = RandomCoverConfig::default();
    let mut min_slack = f64::INFINITY;
    let mut min_ball = f64::INFINITY;
    let mut symmetric = 0;
    for i in 0..200u64 {
        let mut rng = stream_rng(606, i);
        let sym = i % 2 == 0;
        let vertices = rng.random_range(3..=8);
        let poly = random_polygon(&mut rng, vertices, sym);
        let (arr, cert) = random_plank_cover(&ConvexBody::Polytope(poly), &cfg, 1000 + i).map_err(|e| e.to_string())?;
        ensure!(
            cert.covered() && cert.kind == CertificateKind::Exact,
            "instance {i} lacks an exact certificate"
        );
        let b = bang_check(&arr, &cert).map_err(|e| e.to_string())?;
        ensure!(b.slack >= -1e-9, "instance {i}: Bang slack {}", b.slack);
        min_slack = min_slack.min(b.slack);
        if arr.target.is_centrally_symmetric() {
            let r = ball_check(&arr, &cert, false).map_err(|e| e.to_string())?;
            ensure!(r.sum >= 1.0 - 1e-9, "instance {i}: relative widths sum {}", r.sum);
            min_ball = min_ball.min(r.sum);
            symmetric += 1;
        }
    }
    ensure!(symmetric >= 100, "only {symmetric} symmetric targets");

    // two closed half-disks
    let d = ArcPolygon::disk(Pt2::zeros(), 1.0);
    let halves: Vec<CoverElement> = [
        d.clip_halfplane(Pt2::new(0.0, 1.0), 0.0),
        d.clip_halfplane(Pt2::new(0.0, -1.0), 0.0),
    ]
    .into_iter()
    .map(|h| CoverElement::Body(ConvexBody::Arc(h.expect("half-disk"))))
    .collect();
    let arr = Arrangement::new(unit_disk(), halves).map_err(|e| e.to_string())?;
    let cert = certify_cover(&arr, 0.005, 1);
    let k = kadets_check(&arr, &cert).map_err(|e| e.to_string())?;
    ensure!((k.sum - 1.0).abs() <= 1e-9, "two half-disks: inradius sum {}", k.sum);
    let mut min_kadets = k.sum;
    for i in 0..40u64 {
        let (arr, cert) = random_kadets_cover(1.0, 1 + (i % 4) as usize, 50 + i).map_err(|e| e.to_string())?;
        let r = kadets_check(&arr, &cert).map_err(|e| e.to_string())?;
        ensure!(r.sum >= 1.0 - 1e-9, "random ball cover {i}: inradius sum {}", r.sum);
        min_kadets = min_kadets.min(r.sum);
    }
    Ok(format!(
        "200 exact covers, min Bang slack {min_slack:.3e}, min relative sum {min_ball:.6} over {symmetric} symmetric, half-disks sum {:.12}, min inradius sum {min_kadets:.6}",
        k.sum
    ))
}

/// Most grid points on one line, by brute force over point pairs.
fn max_collinear(points: &[Vec<i64>]) -> usize {
    let mut best = points.len().min(1);
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            let on = points
                .iter()
                .filter(|r| (r[0] - p[0]) * dy - (r[1] - p[1]) * dx == 0)
                .count();
            best = best.max(on);
        }
    }
    best
}

/// Lines through at least two points, as bitmasks.
fn line_masks(points: &[Vec<i64>]) -> Vec<u64> {
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            let mask = points
                .iter()
                .enumerate()
                .filter(|(_, r)| (r[0] - p[0]) * dy - (r[1] - p[1]) * dx == 0)
                .fold(0u64, |m, (j, _)| m | 1 << j);
            out.push(mask);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether `k` lines or single points can cover every point.
fn coverable(masks: &[u64], full: u64, k: usize, acc: u64) -> bool {
    if acc == full {
        return true;
    }
    if k == 0 {
        return false;
    }
    // the lowest uncovered point is on some chosen line or is chosen alone
    let low = (!acc & full).trailing_zeros();
    masks
        .iter()
        .filter(|&&m| m >> low & 1 == 1)
        .any(|&m| coverable(masks, full, k - 1, acc | m))
        || coverable(masks, full, k - 1, acc | 1 << low)
}

fn random_unimodular(rng: &mut impl Rng) -> [[i64; 2]; 2] {
    let mut u = [[1i64, 0], [0, 1]];
    for _ in 0..3 {
        let a = rng.random_range(-2..=2);
        let e = if rng.random_bool(0.5) {
            [[1, a], [0, 1]]
        } else {
            [[1, 0], [a, 1]]
        };
        u = [
            [
                u[0][0] * e[0][0] + u[0][1] * e[1][0],
                u[0][0] * e[0][1] + u[0][1] * e[1][1],
            ],
            [
                u[1][0] * e[0][0] + u[1][1] * e[1][0],
                u[1][0] * e[0][1] + u[1][1] * e[1][1],
            ],
        ];
    }
    if rng.random_bool(0.5) {
        u = [u[1], u[0]];
    }
    u
}

fn lattice() -> Check {
    for k in 0..=6u64 {
        let s = lattice_points(&family_body("square", 2, k).unwrap()).map_err(|e| e.to_string())?;
        ensure!(s.len() as u64 == (k + 1) * (k + 1), "[0,{k}]² has {} points", s.len());
        let cover = min_hyperplane_cover(&s, CoverMode::Exact).map_err(|e| e.to_string())?;
        ensure!(cover.verify(&s), "k = {k}: cover does not verify");
        // counting lower bound, rows as upper bound
        let lower = s.len().div_ceil(max_collinear(&s.points));
        ensure!(lower == k as usize + 1, "k = {k}: counting bound {lower}");
        ensure!(cover.len() == k as usize + 1, "k = {k}: exact cover {}", cover.len());
        if k <= 4 {
            let masks = line_masks(&s.points);
            let full = if s.len() == 64 { u64::MAX } else { (1u64 << s.len()) - 1 };
            ensure!(
                !coverable(&masks, full, k as usize, 0),
                "k = {k}: brute force finds {k} lines"
            );
        }
    }

    let mut corpus: Vec<(String, ConvexBody)> = Vec::new();
    for k in 0..=6 {
        corpus.push((format!("square {k}"), family_body("square", 2, k).unwrap()));
    }
    for k in 1..=8 {
        corpus.push((format!("triangle {k}"), family_body("triangle", 2, k).unwrap()));
    }
    for k in 0..=3 {
        corpus.push((format!("cross d2 {k}"), family_body("cross", 2, k).unwrap()));
    }
    for k in 0..=2 {
        corpus.push((format!("cross d3 {k}"), family_body("cross", 3, k).unwrap()));
    }
    let mut min_gap = f64::INFINITY;
    for (name, body) in &corpus {
        let r = conjecture_gap_report(body, 10).map_err(|e| e.to_string())?;
        ensure!(
            r.gap >= 0.0,
            "{name}: gap {} (N = {}, w = {})",
            r.gap,
            r.cover_size,
            r.width.value
        );
        min_gap = min_gap.min(r.gap);
    }

    let base_vertices = [[0i64, 0], [4, 1], [3, 3], [1, 4]];
    let base = ConvexBody::Polytope(
        Polytope::from_v(
            base_vertices
                .iter()
                .map(|v| Vector::from_vec(vec![v[0] as f64, v[1] as f64]))
                .collect(),
        )
        .unwrap(),
    );
    let s0 = lattice_points(&base).map_err(|e| e.to_string())?;
    let n0 = min_hyperplane_cover(&s0, CoverMode::Exact)
        .map_err(|e| e.to_string())?
        .len();
    let w0 = lattice_width(&base, 10).map_err(|e| e.to_string())?.value;
    let mut rng = stream_rng(7, 0);
    for t in 0..100 {
        let u = random_unimodular(&mut rng);
        let shift = [rng.random_range(-5..=5), rng.random_range(-5..=5)];
        let uv: Vec<Vec<i64>> = u.iter().map(|r| r.to_vec()).collect();
        let s1: LatticePointSet = s0.transform(&uv, &shift);
        let n1 = min_hyperplane_cover(&s1, CoverMode::Exact)
            .map_err(|e| e.to_string())?
            .len();
        ensure!(n1 == n0, "transform {t} {u:?}: cover {n1} vs {n0}");
        let image = Polytope::from_v(
            base_vertices
                .iter()
                .map(|v| {
                    Vector::from_vec(vec![
                        (u[0][0] * v[0] + u[0][1] * v[1] + shift[0]) as f64,
                        (u[1][0] * v[0] + u[1][1] * v[1] + shift[1]) as f64,
                    ])
                })
                .collect(),
        )
        .unwrap();
        let img = ConvexBody::Polytope(image);
        let s2 = lattice_points(&img).map_err(|e| e.to_string())?;
        ensure!(
            s2.len() == s0.len(),
            "transform {t}: {} points vs {}",
            s2.len(),
            s0.len()
        );
        let w1 = lattice_width(&img, 10).map_err(|e| e.to_string())?.value;
        ensure!((w1 - w0).abs() <= 1e-9, "transform {t}: lattice width {w1} vs {w0}");
    }
    Ok(format!(
        "[0,k]² covers = k+1 for k ≤ 6, corpus of {} bodies min gap {min_gap}, 100 unimodular images agree (N = {n0}, w = {w0})",
        corpus.len()
    ))
}

fn ball_polyhedra() -> Check {
    let mut worst: f64 = 0.0;
    for i in 0..1000u64 {
        let mut rng = stream_rng(88, i);
        let count = rng.random_range(1..=7);
        let spread = rng.random_range(0.05..0.49);
        let centers: Vec<Vector> = (0..count)
            .map(|_| {
                let t = rng.random::<f64>() * 2.0 * PI;
                let r = spread * rng.random::<f64>().sqrt();
                Vector::from_vec(vec![r * t.cos(), r * t.sin()])
            })
            .collect();
        let x = BallPolyhedron::new(centers).map_err(|e| e.to_string())?;
        let (w, _) = x.width().map_err(|e| e.to_string())?;
        let (d, _) = x.spindle_diameter().map_err(|e| e.to_string())?;
        let err = (w + d - 2.0).abs();
        ensure!(err <= 1e-6, "instance {i}: width {w} + diameter {d} = {}", w + d);
        worst = worst.max(err);
    }
    let lens = BallPolyhedron::new(vec![
        Vector::from_vec(vec![-0.25, 0.0]),
        Vector::from_vec(vec![0.25, 0.0]),
    ])
    .map_err(|e| e.to_string())?;
    let rep = ball_poly_volume_lb(&lens, 0, 0).map_err(|e| e.to_string())?;
    let oracle = 2.0 * 0.25f64.acos() - 0.5 * 0.9375f64.sqrt();
    ensure!((rep.width - 1.5).abs() <= 1e-9, "lens width {}", rep.width);
    ensure!(
        (rep.volume - oracle).abs() <= 1e-9 && (lens_area(0.5) - oracle).abs() <= 1e-12,
        "lens area {}",
        rep.volume
    );
    ensure!((rep.volume - 2.1521).abs() <= 1e-4, "lens area {}", rep.volume);
    let bound_oracle = 0.5 * (PI - 3f64.sqrt()) * 0.25 + PI * 0.5 * 0.5 + PI * 0.25;
    ensure!(
        (rep.bound - bound_oracle).abs() <= 1e-12,
        "bound {} vs {bound_oracle}",
        rep.bound
    );
    ensure!((rep.bound - 1.7470).abs() <= 1e-4, "bound {}", rep.bound);
    ensure!(rep.volume >= rep.bound, "lens {} below bound {}", rep.volume, rep.bound);
    Ok(format!(
        "1000 instances, worst |w + D − 2| = {worst:.1e}; lens {:.4} ≥ bound {:.4}",
        rep.volume, rep.bound
    ))
}

fn reproducibility() -> Check {
    let square = json!({"type": "hpolytope", "normals": [[1,0],[0,1],[-1,0],[0,-1]], "offsets": [1,1,0,0]});
    let disk = json!({"type": "ball", "center": [0, 0], "radius": 1});
    let runs = [
        (Kind::Bang, json!({"random": {"instances": 5}})),
        (Kind::Kadets, json!({"random": {"instances": 3, "cuts": 2}})),
        (
            Kind::PartialCover,
            json!({"random": {"instances": 20, "dim": 3}, "method": "montecarlo", "samples": 20000}),
        ),
        (Kind::PartialCover, json!({"random": {"instances": 10, "dim": 2}})),
        (
            Kind::CutGame,
            json!({"body": square, "gauge": disk, "n": 3, "trials": 50}),
        ),
        (
            Kind::VdSearch,
            json!({"gauge": disk, "floor": 1.8, "n": [0, 1], "iterations": 200}),
        ),
        (
            Kind::BallPoly,
            json!({"random": {"instances": 20, "dim": 3, "points": 3}, "samples": 20000}),
        ),
        (
            Kind::Lattice,
            json!({"families": [{"family": "triangle", "k": [2, 3]}]}),
        ),
        (Kind::BoundsTable, json!({"dims": [2, 8]})),
    ];
    for (kind, spec) in &runs {
        let a = run_experiment(*kind, spec, Some(31))
            .map_err(|e| format!("{kind}: {e}"))?
            .table
            .to_csv()
            .unwrap();
        let b = run_experiment(*kind, spec, Some(31))
            .map_err(|e| format!("{kind}: {e}"))?
            .table
            .to_csv()
            .unwrap();
        ensure!(a == b, "{kind}: re-run differs");
        let c = run_experiment_with(*kind, spec, Some(31), Exec::Serial).map_err(|e| format!("{kind}: {e}"))?;
        ensure!(c.table.to_csv().unwrap() == a, "{kind}: serial run differs");
    }

    // end to end through the binary, two separate processes
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let spec_path = dir.path().join("spec.json");
    std::fs::write(
        &spec_path,
        json!({"random": {"instances": 30, "dim": 3}, "method": "montecarlo", "samples": 5000}).to_string(),
    )
    .map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for (run, threads) in [("a", "1"), ("b", "4")] {
        let out = dir.path().join(run);
        let status = Command::new(env!("CARGO_BIN_EXE_plankbench"))
            .args(["partial-cover", "--spec"])
            .arg(&spec_path)
            .args(["--seed", "5", "--out"])
            .arg(&out)
            .env("PLANKBENCH_THREADS", threads)
            .status()
            .map_err(|e| e.to_string())?;
        ensure!(status.code() == Some(0), "binary exited with {status}");
        outputs.push(std::fs::read(out.join("partial-cover.csv")).map_err(|e| e.to_string())?);
    }
    ensure!(outputs[0] == outputs[1], "CSV differs between processes");
    Ok(format!(
        "{} in-process specs, serial = parallel, and two CLI runs byte-identical",
        runs.len()
    ))
}

fn main() -> ExitCode {
    let mut all = true;
    all &= criterion(1, "constants table", Duration::from_secs(1), constants);
    all &= criterion(2, "zone formula and exact3d", Duration::from_secs(1), zones);
    all &= criterion(
        3,
        "two-plank angle sweep in the disk",
        Duration::from_secs(10),
        two_plank_sweep,
    );
    all &= criterion(
        4,
        "random plank arrangements in the 3-ball",
        Duration::from_secs(300),
        random_three_d,
    );
    all &= criterion(
        5,
        "successive inradii and cut trees",
        Duration::from_secs(120),
        successive,
    );
    all &= criterion(6, "covering harnesses", Duration::from_secs(120), covering_harnesses);
    all &= criterion(7, "lattice covers", Duration::from_secs(180), lattice);
    all &= criterion(8, "ball-polyhedra", Duration::from_secs(60), ball_polyhedra);
    all &= criterion(9, "reproducibility", Duration::from_secs(120), reproducibility);
    if all {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
