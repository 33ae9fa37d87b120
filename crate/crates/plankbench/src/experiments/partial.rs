//! Partial covers of balls and the translate-intersection search.

use plank_core::exec::stream_rng;
use plank_core::partial::{aligned_optimum_gap, random_ball_arrangement, vd_upper_bound, BallArrangement, UnionMethod};
use plank_core::Vector;
use rand::Rng as _;
use serde_json::{json, Value};

use crate::report::config_hash;
use crate::spec::{self, instance_seed};
use crate::{HarnessError, Outcome, Result, Table};

fn arrangement_json(arr: &BallArrangement) -> Value {
    json!({
        "ball": arr.radius,
        "center": arr.center.iter().collect::<Vec<_>>(),
        "planks": arr.planks.iter().map(|p| json!({
            "type": "plank",
            "normal": p.normal.as_vector().iter().collect::<Vec<_>>(),
            "center": p.center,
            "width": p.width,
        })).collect::<Vec<_>>(),
    })
}

fn parse_arrangement(item: &Value) -> Result<BallArrangement> {
    let radius = spec::f64_or(item, "ball", 1.0)?;
    let planks = spec::planks(item, "planks")?;
    let d = match (item.get("center"), item.get("dim"), planks.first()) {
        (Some(c), _, _) => c.as_array().map_or(0, |c| c.len()),
        (None, Some(_), _) => spec::u64_or(item, "dim", 0)? as usize,
        (None, None, Some(p)) => p.normal.dim(),
        (None, None, None) => return Err(HarnessError::Input("cannot infer the dimension".into())),
    };
    let center = match item.get("center") {
        Some(_) => {
            let c: Vec<f64> = serde_json::from_value(item["center"].clone())?;
            Vector::from_vec(c)
        }
        None => Vector::zeros(d),
    };
    Ok(BallArrangement::new(planks, center, radius)?)
}

fn method(name: &str, d: usize, n: usize, samples: u64, seed: u64) -> Result<UnionMethod> {
    Ok(match name {
        "auto" => UnionMethod::auto(d, n, samples, seed),
        "exact2d" => UnionMethod::Exact2d,
        "exact3d" => UnionMethod::Exact3d,
        "montecarlo" => UnionMethod::MonteCarlo { samples, seed },
        other => return Err(HarnessError::Input(format!("unknown method {other:?}"))),
    })
}

pub fn partial_cover(spec: &Value, seed: u64) -> Result<Outcome> {
    let method_name = spec::str_or(spec, "method", "auto")?;
    let samples = spec::u64_or(spec, "samples", 200_000)?;
    let arrangements: Vec<BallArrangement> = if let Some(r) = spec.get("random") {
        let count = spec::u64_or(r, "instances", 100)?;
        let d = spec::u64_or(r, "dim", 3)? as usize;
        let max_planks = spec::u64_or(r, "max_planks", 4)?.max(1) as usize;
        let total = spec::f64_or(r, "total", 1.0)?;
        (0..count)
            .map(|i| {
                let mut rng = stream_rng(seed, i);
                let n = rng.random_range(1..=max_planks);
                random_ball_arrangement(&mut rng, d, n, total)
            })
            .collect()
    } else {
        match spec::array(spec, "arrangements")? {
            Some(list) => list.iter().map(parse_arrangement).collect::<Result<_>>()?,
            None => vec![parse_arrangement(spec)?],
        }
    };

    let mut out = Outcome::new(Table::new(&["config-hash", "covered", "aligned", "gap", "err"]));
    for (i, arr) in arrangements.iter().enumerate() {
        let hash = config_hash(&arrangement_json(arr))[..16].to_string();
        let m = method(
            method_name,
            arr.dim(),
            arr.planks.len(),
            samples,
            instance_seed(seed, i as u64),
        )?;
        let rep = aligned_optimum_gap(arr, m)?;
        if rep.violation {
            out.violations.push(format!(
                "{hash}: covered {} exceeds the aligned plank {} ({}, {})",
                rep.covered,
                rep.aligned,
                rep.method.label(),
                rep.regime.label()
            ));
        } else if rep.gap < -3.0 * rep.error {
            out.warnings.push(format!(
                "{hash}: candidate counterexample, gap {} ({})",
                rep.gap,
                rep.regime.label()
            ));
        }
        if rep.equality_is_centered_plank == Some(false) {
            out.warnings
                .push(format!("{hash}: equality within tolerance without a centred plank"));
        }
        out.table.push(vec![
            hash.into(),
            rep.covered.into(),
            rep.aligned.into(),
            rep.gap.into(),
            rep.error.into(),
        ]);
    }
    Ok(out)
}

pub fn vd_search(spec: &Value, seed: u64) -> Result<Outcome> {
    let gauge = spec::body(spec, "gauge")?;
    let floor = spec::f64_req(spec, "floor")?;
    let iterations = spec::u64_or(spec, "iterations", 2000)?;
    let mut out = Outcome::new(Table::new(&["n", "floor", "value", "width", "exact"]));
    for n in spec::counts(spec, "n", &[0, 1, 2])? {
        let rep = vd_upper_bound(&gauge, floor, n as u32, seed, iterations)?;
        out.table.push(vec![
            n.into(),
            floor.into(),
            rep.value.into(),
            rep.width.into(),
            rep.exact_evaluation.into(),
        ]);
    }
    Ok(out)
}
