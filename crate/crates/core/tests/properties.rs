use plank_core::coverings::Plank;
use plank_core::exec::{map_indexed, stream_rng, Exec};
use plank_core::lattice::{lattice_width, min_hyperplane_cover, CoverMode, LatticePointSet};
use plank_core::partial::{
    random_ball_arrangement, union_covered_volume, union_covered_volume_with, BallArrangement, UnionMethod,
};
use plank_core::{ConvexBody, Direction, Polytope, Vector};
use proptest::prelude::*;

/// Product of elementary shears and sign flips, so determinant ±1.
fn unimodular() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0usize..2, -2i64..=2, any::<bool>()), 1..5).prop_map(|ops| {
        let mut u = vec![vec![1i64, 0], vec![0, 1]];
        for (row, c, flip) in ops {
            let other = 1 - row;
            for j in 0..2 {
                u[row][j] += c * u[other][j];
            }
            if flip {
                u[row].iter_mut().for_each(|x| *x = -*x);
            }
        }
        u
    })
}

fn point_set() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::btree_set((0i64..4, 0i64..4), 1..9).prop_map(|s| s.into_iter().map(|(x, y)| vec![x, y]).collect())
}

fn apply(u: &[Vec<i64>], p: &[i64], t: &[i64]) -> Vector {
    Vector::from_fn(2, |i, _| (u[i][0] * p[0] + u[i][1] * p[1] + t[i]) as f64)
}

/// Lattice width, widening the direction box until the result is certified.
fn certified_width(k: &ConvexBody) -> plank_core::lattice::LatticeWidth {
    let mut bound = 4;
    loop {
        let w = lattice_width(k, bound).unwrap();
        if w.certified {
            return w;
        }
        assert!(bound < 200, "width not certified");
        bound *= 2;
    }
}

fn planar_arrangement() -> impl Strategy<Value = Vec<(f64, f64, f64)>> {
    prop::collection::vec((0.0..std::f64::consts::PI, -0.8f64..0.8, 0.05f64..0.6), 1..5)
}

fn planks_of(spec: &[(f64, f64, f64)]) -> Vec<Plank> {
    spec.iter()
        .map(|&(a, c, w)| Plank::new(Direction::angle(a), c, w).unwrap())
        .collect()
}

fn disk_area(planks: Vec<Plank>) -> f64 {
    let arr = BallArrangement::unit(2, planks).unwrap();
    union_covered_volume(&arr, UnionMethod::Exact2d).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cover_size_is_unimodular_invariant(pts in point_set(), u in unimodular(), t in prop::collection::vec(-3i64..=3, 2)) {
        let s = LatticePointSet::new(2, pts).unwrap();
        let image = s.transform(&u, &t);
        let a = min_hyperplane_cover(&s, CoverMode::Exact).unwrap();
        let b = min_hyperplane_cover(&image, CoverMode::Exact).unwrap();
        prop_assert!(b.verify(&image));
        prop_assert_eq!(a.len(), b.len());
    }

    #[test]
    fn lattice_width_is_unimodular_invariant(u in unimodular(), t in prop::collection::vec(-3i64..=3, 2)) {
        let verts: Vec<Vec<i64>> = vec![vec![0, 0], vec![3, 1], vec![2, 3], vec![-1, 2]];
        let body = |f: &dyn Fn(&[i64]) -> Vector| {
            ConvexBody::Polytope(Polytope::from_v(verts.iter().map(|p| f(p)).collect()).unwrap())
        };
        let k = body(&|p| apply(&[vec![1, 0], vec![0, 1]], p, &[0, 0]));
        let image = body(&|p| apply(&u, p, &t));
        let a = certified_width(&k);
        let b = certified_width(&image);
        prop_assert!((a.value - b.value).abs() < 1e-9, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn adding_a_plank_never_shrinks_the_union(spec in planar_arrangement(), extra in (0.0..3.1f64, -0.8f64..0.8, 0.05f64..0.6)) {
        let base = disk_area(planks_of(&spec));
        let mut more = spec.clone();
        more.push(extra);
        prop_assert!(disk_area(planks_of(&more)) >= base - 1e-12);
    }

    #[test]
    fn union_ignores_plank_order(spec in planar_arrangement()) {
        let forward = disk_area(planks_of(&spec));
        let mut rev = spec.clone();
        rev.reverse();
        prop_assert!((disk_area(planks_of(&rev)) - forward).abs() < 1e-12);
    }

    #[test]
    fn plank_cylinder_crv_equals_relative_width(angle in 0.0..std::f64::consts::PI, c in -0.5f64..0.5, w in 0.01f64..1.0, seed in 0u64..1000) {
        let plank = Plank::new(Direction::angle(angle), c, w).unwrap();
        let mut rng = stream_rng(seed, 0);
        let verts: Vec<Vector> = (0..6)
            .map(|_| Vector::from_fn(2, |_, _| rng.random_range(-1.0..1.0)))
            .collect();
        for k in [ConvexBody::unit_ball(2), ConvexBody::Polytope(Polytope::from_v(verts).unwrap())] {
            let crv = plank.as_cylinder().crv(&k).unwrap();
            let rw = plank.relative_width(&k).unwrap();
            prop_assert!((crv - rw).abs() <= 1e-12 * rw.max(1.0), "{crv} vs {rw}");
        }
    }
}

#[test]
fn serial_and_parallel_agree() {
    let f = |i: u64| stream_rng(99, i).random::<u64>();
    assert_eq!(map_indexed(Exec::Serial, 500, f), map_indexed(Exec::Parallel, 500, f));
    for i in 0..8 {
        let arr = random_ball_arrangement(&mut stream_rng(5, i), 3, 3, 1.0);
        let m = UnionMethod::MonteCarlo {
            samples: 20_000,
            seed: i,
        };
        let s = union_covered_volume_with(&arr, m, Exec::Serial).unwrap();
        let p = union_covered_volume_with(&arr, m, Exec::Parallel).unwrap();
        assert_eq!(s, p);
    }
}
