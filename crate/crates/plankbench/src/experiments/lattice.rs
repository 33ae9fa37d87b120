//! Lattice-point covers by hyperplanes.

use plank_core::lattice::{
    conjecture_gap_for_cover, lattice_points, min_hyperplane_cover, parallel_cover, CoverMode, LatticePointSet,
};
use plank_core::{ConvexBody, Polytope, Vector};
use serde_json::{json, Value};

use crate::spec::{self, id_of};
use crate::{HarnessError, Outcome, Result, Table};

/// `[0,k]^d`, `conv{0, k·e1, …, k·ed}`, or the cross-polytope of radius
/// `d/2 + k − 0.01` about `(1/2, …, 1/2)`. The bodies must be full-dimensional,
/// so the `k = 0` square is the box of side `1e-6` at the origin.
pub fn family_body(family: &str, d: usize, k: u64) -> Result<ConvexBody> {
    let kf = k as f64;
    let p = match family {
        "square" => Polytope::boxed(&vec![0.0; d], &vec![kf.max(1e-6); d])?,
        "triangle" => {
            let mut vs = vec![Vector::zeros(d)];
            for i in 0..d {
                let mut v = Vector::zeros(d);
                v[i] = kf;
                vs.push(v);
            }
            Polytope::from_v(vs)?
        }
        "cross" => {
            let r = 0.5 * d as f64 + kf - 0.01;
            let normals: Vec<Vector> = (0..1u32 << d)
                .map(|m| Vector::from_fn(d, |i, _| if m >> i & 1 == 1 { -1.0 } else { 1.0 }))
                .collect();
            let offsets = normals.iter().map(|s| r + 0.5 * s.sum()).collect();
            Polytope::from_h(normals, offsets)?
        }
        other => return Err(HarnessError::Input(format!("unknown family {other:?}"))),
    };
    Ok(ConvexBody::Polytope(p))
}

fn instances(spec: &Value) -> Result<Vec<(String, ConvexBody, Option<LatticePointSet>)>> {
    let mut out = Vec::new();
    if let Some(fams) = spec::array(spec, "families")? {
        for f in fams {
            let name = spec::str_or(f, "family", "")?;
            let d = spec::u64_or(f, "dim", 2)? as usize;
            for k in spec::counts(f, "k", &[1, 2, 3])? {
                out.push((format!("{name}-d{d}-k{k}"), family_body(name, d, k)?, None));
            }
        }
    }
    let items: Vec<Value> = match spec::array(spec, "instances")? {
        Some(list) => list.clone(),
        None if spec.get("body").is_some() => vec![spec.clone()],
        None => Vec::new(),
    };
    for (i, item) in items.iter().enumerate() {
        let body = spec::body(item, "body")?;
        let pts = match item.get("points") {
            None => None,
            Some(_) => {
                let list: Vec<Vec<i64>> = serde_json::from_value(item["points"].clone())?;
                Some(LatticePointSet::new(body.dim(), list)?)
            }
        };
        out.push((id_of(item, i), body, pts));
    }
    if out.is_empty() {
        return Err(HarnessError::Input("no lattice instances".into()));
    }
    Ok(out)
}

pub fn run(spec: &Value) -> Result<Outcome> {
    let bound = spec::u64_or(spec, "bound", 10)? as i64;
    let mut out = Outcome::new(Table::new(&[
        "id",
        "N",
        "w",
        "gap",
        "ratio",
        "width_certified",
        "implied_c",
        "implied_c_symmetric",
    ]));
    let mut covers = serde_json::Map::new();
    for (id, body, pts) in instances(spec)? {
        let s = match pts {
            Some(s) => s,
            None => lattice_points(&body)?,
        };
        let cover = min_hyperplane_cover(&s, CoverMode::Exact)?;
        let rep = conjecture_gap_for_cover(&body, cover.len(), bound)?;
        let ratio = if s.is_empty() {
            None
        } else {
            Some(parallel_cover(&s, bound)?.0 as f64 / cover.len() as f64)
        };
        if rep.violated() {
            out.warnings.push(format!(
                "{id}: COUNTEREXAMPLE CANDIDATE to N >= w - d (N = {}, w = {})",
                rep.cover_size, rep.width.value
            ));
        }
        covers.insert(id.clone(), json!({"points": s.points, "cover": cover}));
        out.table.push(vec![
            id.into(),
            rep.cover_size.into(),
            rep.width.value.into(),
            rep.gap.into(),
            ratio.into(),
            rep.width.certified.into(),
            rep.implied_general_constant.into(),
            rep.implied_symmetric_constant.into(),
        ]);
    }
    out.artifacts.push(("covers".into(), Value::Object(covers)));
    Ok(out)
}
