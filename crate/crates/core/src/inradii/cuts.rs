//! Hyperplane cut trees, the equally spaced optimal cuts, and randomized
//! searches for cut trees whose pieces are all thin.

use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{c_inradius, erode, ratio_candidates, successive_inradius};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, stream_rng, Exec, Rng};
use crate::geometry::{ConvexBody, Direction, Polytope, Vector};

/// One cut: splits `piece` into `{normal·x <= offset}` (kept at `piece`) and
/// `{normal·x >= offset}` (appended as a new piece).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cut {
    #[serde(rename = "piece-index", alias = "piece", alias = "piece_index")]
    pub piece: usize,
    pub normal: Vec<f64>,
    pub offset: f64,
}

pub type CutTree = Vec<Cut>;

#[derive(Debug, Clone, PartialEq)]
pub struct SliceReport {
    /// `C`-inradius of each piece; `None` for pieces that came out flat.
    pub inradii: Vec<Option<f64>>,
    pub greatest: f64,
    /// Indices of flat pieces.
    pub dropped: Vec<usize>,
}

fn polytope_of(k: &ConvexBody) -> Result<Polytope> {
    match k {
        ConvexBody::Polytope(p) => Ok(p.clone()),
        _ => Err(Error::Unsupported("slicing needs a polytope".into())),
    }
}

fn apply(k: &Polytope, cuts: &[Cut]) -> Result<Vec<Option<Polytope>>> {
    let mut pieces = vec![Some(k.clone())];
    for (i, cut) in cuts.iter().enumerate() {
        let piece = match pieces.get(cut.piece) {
            Some(Some(p)) => p.clone(),
            Some(None) => return Err(Error::BadCutTree(format!("cut {i} targets flat piece {}", cut.piece))),
            None => {
                return Err(Error::BadCutTree(format!(
                    "cut {i} targets missing piece {}",
                    cut.piece
                )))
            }
        };
        if cut.normal.len() != k.dim() {
            return Err(Error::BadCutTree(format!("cut {i} has the wrong dimension")));
        }
        let n = Vector::from_column_slice(&cut.normal);
        pieces[cut.piece] = piece.cut(&n, cut.offset).filter(|p| p.volume() > 1e-12);
        pieces.push(piece.cut(&-&n, -cut.offset).filter(|p| p.volume() > 1e-12));
    }
    Ok(pieces)
}

/// Slices `K` along the tree and measures every piece's `C`-inradius.
pub fn slice_and_measure(k: &ConvexBody, c: &ConvexBody, cuts: &[Cut]) -> Result<SliceReport> {
    let pieces = apply(&polytope_of(k)?, cuts)?;
    let mut inradii = Vec::new();
    let mut dropped = Vec::new();
    for (i, p) in pieces.into_iter().enumerate() {
        match p {
            Some(p) => inradii.push(Some(c_inradius(&ConvexBody::Polytope(p), c)?.lambda)),
            None => {
                inradii.push(None);
                dropped.push(i);
            }
        }
    }
    let greatest = inradii.iter().flatten().copied().fold(0.0, f64::max);
    Ok(SliceReport {
        inradii,
        greatest,
        dropped,
    })
}

fn lex_less(a: &Vector, b: &Vector) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if (x - y).abs() > 1e-12 {
            return x < y;
        }
    }
    false
}

/// The `n − 1` parallel cuts equally spaced across the rounded body of
/// `K` at the `n`-th successive inradius, normal to its minimal relative
/// width direction. Ties go to the lexicographically smallest unit vector
/// among all minimizers (both orientations); the reported normal then has
/// its first nonzero coordinate positive.
pub fn optimal_cuts(k: &ConvexBody, c: &ConvexBody, n: usize) -> Result<(CutTree, f64)> {
    let s = successive_inradius(k, c, n, None)?;
    if n == 1 {
        return Ok((Vec::new(), s.rho));
    }
    let rho = s.rho;
    let e = erode(k, c, rho)?;
    let u = match &e {
        Some(e) => {
            let (cands, _) = ratio_candidates(e, c)?;
            let min = cands.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
            let tie = 1e-9 * min.abs().max(1e-12);
            let mut best: Option<Vector> = None;
            for (dir, val) in &cands {
                if *val > min + tie {
                    continue;
                }
                for v in [dir.as_vector().clone(), -dir.as_vector()] {
                    if best.as_ref().is_none_or(|b| lex_less(&v, b)) {
                        best = Some(v);
                    }
                }
            }
            best.expect("nonempty candidates")
        }
        None => Direction::axis(k.dim(), 0).into_vector(),
    };
    let u = Direction::new(u)?.canonical().into_vector();
    let support = |v: &Vector| match &e {
        Some(e) => e.support(v) + rho * c.support(v),
        None => k.support(v),
    };
    let hi = support(&u);
    let lo = -support(&-&u);
    let cuts = (1..n)
        .map(|j| Cut {
            piece: j - 1,
            normal: u.iter().copied().collect(),
            offset: lo + (hi - lo) * j as f64 / n as f64,
        })
        .collect();
    Ok((cuts, rho))
}

fn gaussian_direction(rng: &mut Rng, d: usize) -> Vector {
    loop {
        let v = Vector::from_fn(d, |_, _| StandardNormal.sample(rng));
        let n = v.norm();
        if n > 1e-9 {
            return v / n;
        }
    }
}

/// Random successive tree with `n − 1` cuts, each strictly inside the piece it splits.
pub fn random_cut_tree(k: &Polytope, n: usize, rng: &mut Rng) -> CutTree {
    let d = k.dim();
    let mut pieces = vec![k.clone()];
    let mut cuts = Vec::new();
    while cuts.len() + 1 < n {
        let idx = rng.random_range(0..pieces.len());
        let p = pieces[idx].clone();
        let u = gaussian_direction(rng, d);
        let hi = p.support(&u);
        let lo = -p.support(&-&u);
        let off = lo + (hi - lo) * (0.02 + 0.96 * rng.random::<f64>());
        let (Some(a), Some(b)) = (p.cut(&u, off), p.cut(&-&u, -off)) else {
            continue;
        };
        pieces[idx] = a;
        pieces.push(b);
        cuts.push(Cut {
            piece: idx,
            normal: u.iter().copied().collect(),
            offset: off,
        });
    }
    cuts
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdversarialReport {
    pub successive_inradius: f64,
    /// Least greatest-piece inradius found, with the seed that produced it.
    pub best: f64,
    pub best_seed: u64,
    pub trials: u64,
    /// Trials whose greatest piece fell below the successive inradius by more than `1e-6`.
    pub violations: u64,
}

/// Searches random successive cut trees for one with all pieces thinner than
/// the `n`-th successive inradius.
pub fn adversarial_search(
    k: &ConvexBody,
    c: &ConvexBody,
    n: usize,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<AdversarialReport> {
    let poly = polytope_of(k)?;
    let r = successive_inradius(k, c, n, None)?.rho;
    let results = map_indexed(exec, trials, |t| {
        let mut rng = stream_rng(seed, t);
        let tree = random_cut_tree(&poly, n, &mut rng);
        slice_and_measure(k, c, &tree).map(|rep| rep.greatest)
    });
    let mut best = (f64::INFINITY, 0u64);
    let mut violations = 0;
    for (t, g) in results.into_iter().enumerate() {
        let g = g?;
        if g < r - 1e-6 {
            violations += 1;
        }
        if g < best.0 {
            best = (g, t as u64);
        }
    }
    Ok(AdversarialReport {
        successive_inradius: r,
        best: best.0,
        best_seed: best.1,
        trials,
        violations,
    })
}

/// Cuts every current piece by each of `n − 1` random hyperplanes and reports
/// the least greatest-piece inradius over the trials. No theorem applies.
pub fn simultaneous_cut_report(
    k: &ConvexBody,
    c: &ConvexBody,
    n: usize,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<AdversarialReport> {
    let poly = polytope_of(k)?;
    let d = poly.dim();
    let r = successive_inradius(k, c, n, None)?.rho;
    let results = map_indexed(exec, trials, |t| -> Result<f64> {
        let mut rng = stream_rng(seed, t);
        let mut pieces = vec![poly.clone()];
        for _ in 1..n {
            let u = gaussian_direction(&mut rng, d);
            let hi = poly.support(&u);
            let lo = -poly.support(&-&u);
            let off = lo + (hi - lo) * (0.02 + 0.96 * rng.random::<f64>());
            pieces = pieces
                .iter()
                .flat_map(|p| [p.cut(&u, off), p.cut(&-&u, -off)])
                .flatten()
                .filter(|p| p.volume() > 1e-12)
                .collect();
        }
        let mut g: f64 = 0.0;
        for p in pieces {
            g = g.max(c_inradius(&ConvexBody::Polytope(p), c)?.lambda);
        }
        Ok(g)
    });
    let mut best = (f64::INFINITY, 0u64);
    let mut below = 0;
    for (t, g) in results.into_iter().enumerate() {
        let g = g?;
        if g < r - 1e-6 {
            below += 1;
        }
        if g < best.0 {
            best = (g, t as u64);
        }
    }
    Ok(AdversarialReport {
        successive_inradius: r,
        best: best.0,
        best_seed: best.1,
        trials,
        violations: below,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexBody {
        ConvexBody::Polytope(Polytope::unit_cube(2))
    }

    #[test]
    fn optimal_cuts_square_disk() {
        let disk = ConvexBody::unit_ball(2);
        let (cuts, rho) = optimal_cuts(&square(), &disk, 2).unwrap();
        assert_eq!(cuts.len(), 1);
        assert!((rho - 0.25).abs() < 1e-9);
        assert!((cuts[0].offset - 0.5).abs() < 1e-9);
        let rep = slice_and_measure(&square(), &disk, &cuts).unwrap();
        assert!((rep.greatest - 0.25).abs() < 1e-9);
        let (none, r1) = optimal_cuts(&square(), &disk, 1).unwrap();
        assert!(none.is_empty() && (r1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn optimal_cuts_square_square() {
        let s = square();
        let (cuts, _) = optimal_cuts(&s, &s, 3).unwrap();
        assert_eq!(cuts.len(), 2);
        assert_eq!(cuts[0].normal, vec![1.0, 0.0]);
        assert!((cuts[0].offset - 1.0 / 3.0).abs() < 1e-9);
        assert!((cuts[1].offset - 2.0 / 3.0).abs() < 1e-9);
        assert_eq!(cuts[1].piece, 1);
        let rep = slice_and_measure(&s, &s, &cuts).unwrap();
        assert!((rep.greatest - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn off_centre_cut() {
        let disk = ConvexBody::unit_ball(2);
        let cuts = vec![Cut {
            piece: 0,
            normal: vec![1.0, 0.0],
            offset: 0.1,
        }];
        let rep = slice_and_measure(&square(), &disk, &cuts).unwrap();
        assert!((rep.greatest - 0.45).abs() < 1e-12);
        let rep = slice_and_measure(&square(), &disk, &[]).unwrap();
        assert!((rep.greatest - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bad_trees_rejected() {
        let disk = ConvexBody::unit_ball(2);
        let cuts = vec![Cut {
            piece: 3,
            normal: vec![1.0, 0.0],
            offset: 0.5,
        }];
        assert!(matches!(
            slice_and_measure(&square(), &disk, &cuts),
            Err(Error::BadCutTree(_))
        ));
        let flat = vec![
            Cut {
                piece: 0,
                normal: vec![1.0, 0.0],
                offset: 2.0,
            },
            Cut {
                piece: 1,
                normal: vec![0.0, 1.0],
                offset: 0.5,
            },
        ];
        assert!(matches!(
            slice_and_measure(&square(), &disk, &flat),
            Err(Error::BadCutTree(_))
        ));
    }

    #[test]
    fn cut_tree_json() {
        let j = r#"[{"piece-index":0,"normal":[1,0],"offset":0.5}]"#;
        let t: CutTree = serde_json::from_str(j).unwrap();
        assert_eq!(t[0].piece, 0);
    }

    #[test]
    fn random_trees_respect_bound() {
        let disk = ConvexBody::unit_ball(2);
        let rep = adversarial_search(&square(), &disk, 3, 40, 1, Exec::default()).unwrap();
        assert_eq!(rep.violations, 0);
        assert!(rep.best >= rep.successive_inradius - 1e-6);
    }
}
