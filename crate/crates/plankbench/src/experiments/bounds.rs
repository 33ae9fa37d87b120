//! Extremal constants and ball-polyhedra.

use plank_core::bounds::{ball_poly_volume_lb, bound_table, BallPolyhedron};
use plank_core::exec::stream_rng;
use plank_core::geometry::WidthCertainty;
use plank_core::Vector;
use rand::Rng as _;
use serde_json::Value;

use crate::spec::{self, id_of, instance_seed};
use crate::{Cell, HarnessError, Outcome, Result, Table};

pub fn table(spec: &Value) -> Result<Outcome> {
    let (from, to) = match spec::array(spec, "dims")? {
        Some(r) if r.len() == 2 => (
            r[0].as_u64()
                .ok_or_else(|| HarnessError::Input("dims: integers".into()))?,
            r[1].as_u64()
                .ok_or_else(|| HarnessError::Input("dims: integers".into()))?,
        ),
        Some(_) => return Err(HarnessError::Input("dims: expected [from, to]".into())),
        None => (spec::u64_or(spec, "from", 2)?, spec::u64_or(spec, "to", 10)?),
    };
    if from > to || to > 60 {
        return Err(HarnessError::Input(format!("bad dimension range {from}..={to}")));
    }
    let rows = bound_table(from as u32..=to as u32)?;
    let mut out = Outcome::new(Table::new(&[
        "d",
        "f",
        "gRecursive",
        "gClosed",
        "steinhagenR",
        "schrammVol",
        "schrammSurf",
    ]));
    for r in rows {
        if r.d >= 3 && r.g_recursive <= r.f {
            out.violations.push(format!(
                "d = {}: recursive bound {} not above {}",
                r.d, r.g_recursive, r.f
            ));
        }
        out.table.push(vec![
            r.d.into(),
            r.f.into(),
            r.g_recursive.into(),
            r.g_closed.into(),
            r.steinhagen_r.into(),
            r.schramm_volume.into(),
            r.schramm_surface.into(),
        ]);
    }
    Ok(out)
}

/// Centres drawn uniformly from the ball of radius `spread` about the origin.
fn random_centers(seed: u64, i: u64, d: usize, count: usize, spread: f64) -> Vec<Vector> {
    let mut rng = stream_rng(seed, i);
    (0..count)
        .map(|_| loop {
            let v = Vector::from_fn(d, |_, _| rng.random_range(-1.0..1.0));
            if v.norm() <= 1.0 {
                break v * spread;
            }
        })
        .collect()
}

pub fn ball_poly(spec: &Value, seed: u64) -> Result<Outcome> {
    let samples = spec::u64_or(spec, "samples", 200_000)?;
    let mut cases: Vec<(String, Vec<Vector>)> = Vec::new();
    if let Some(r) = spec.get("random") {
        let count = spec::u64_or(r, "instances", 100)?;
        let d = spec::u64_or(r, "dim", 2)? as usize;
        let points = spec::u64_or(r, "points", 5)? as usize;
        let spread = spec::f64_or(r, "spread", 0.45)?;
        for i in 0..count {
            cases.push((format!("random-{i}"), random_centers(seed, i, d, points, spread)));
        }
    }
    if let Some(list) = spec::array(spec, "instances")? {
        for (i, item) in list.iter().enumerate() {
            cases.push((id_of(item, i), spec::points(item, "centers")?));
        }
    }
    if cases.is_empty() {
        return Err(HarnessError::Input("no ball-polyhedra given".into()));
    }

    let mut out = Outcome::new(Table::new(&[
        "id", "width", "diameter", "identity", "volume", "bound", "slack", "source",
    ]));
    for (i, (id, centers)) in cases.into_iter().enumerate() {
        let x = BallPolyhedron::new(centers)?;
        let (w, wc) = x.width()?;
        let (diam, dc) = x.spindle_diameter()?;
        let identity = w + diam;
        let exact = wc == WidthCertainty::Exact && dc == WidthCertainty::Exact;
        if (identity - 2.0).abs() > 1e-6 {
            let msg = format!("{id}: width + spindle diameter = {identity}");
            if exact {
                out.violations.push(msg);
            } else {
                out.warnings.push(msg + " (direction-sampled)");
            }
        }
        let mut row: Vec<Cell> = vec![id.clone().into(), w.into(), diam.into(), identity.into()];
        if (1.0..2.0 - 1e-12).contains(&w) {
            let rep = ball_poly_volume_lb(&x, samples, instance_seed(seed, i as u64))?;
            let slack = rep.volume - rep.bound;
            if slack < -1e-9 - 3.0 * rep.volume_error {
                let msg = format!("{id}: volume {} below the bound {}", rep.volume, rep.bound);
                if rep.volume_error == 0.0 {
                    out.violations.push(msg);
                } else {
                    out.warnings.push(msg + " (sampled)");
                }
            }
            row.extend([
                rep.volume.into(),
                rep.bound.into(),
                slack.into(),
                rep.source.label().into(),
            ]);
        } else {
            row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
        }
        out.table.push(row);
    }
    Ok(out)
}
