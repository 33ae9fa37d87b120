//! Covering-theorem harnesses: bang, ball-plank, cylinder, kadets, annulus.

use plank_core::coverings::{
    annulus_experiment, ball_check, bang_check, certify_cover_with, critical_epsilon, cylinder_bound_check,
    kadets_check, random_cylinder_cover, random_kadets_cover, random_plank_cover, random_polygon, Arrangement,
    CheckReport, CoverageCertificate, RandomCoverConfig,
};
use plank_core::exec::{stream_rng, Exec};
use plank_core::ConvexBody;
use serde_json::Value;

use crate::spec::{self, id_of, instance_seed};
use crate::{Cell, HarnessError, Kind, Outcome, Result, Table};

type Instance = (String, Arrangement, CoverageCertificate);

fn cover_config(r: &Value) -> Result<RandomCoverConfig> {
    let d = RandomCoverConfig::default();
    Ok(RandomCoverConfig {
        max_elements: spec::u64_or(r, "max_elements", d.max_elements as u64)? as usize,
        min_fraction: spec::f64_or(r, "min_fraction", d.min_fraction)?,
        max_fraction: spec::f64_or(r, "max_fraction", d.max_fraction)?,
        directions: None,
        resolution: spec::f64_or(r, "resolution", d.resolution)?,
    })
}

fn generate(kind: Kind, r: &Value, seed: u64) -> Result<Vec<Instance>> {
    let count = spec::u64_or(r, "instances", 20)?;
    let cfg = cover_config(r)?;
    let mut out = Vec::new();
    for i in 0..count {
        let s = instance_seed(seed, i);
        let (arr, cert) = match kind {
            Kind::Bang | Kind::BallPlank => {
                let vertices = spec::u64_or(r, "vertices", 6)? as usize;
                let symmetric = spec::bool_or(r, "symmetric", kind == Kind::BallPlank)?;
                let poly = random_polygon(&mut stream_rng(seed, i), vertices, symmetric);
                random_plank_cover(&ConvexBody::Polytope(poly), &cfg, s)?
            }
            Kind::Cylinder => {
                let d = spec::u64_or(r, "dim", 3)? as usize;
                let k = spec::u64_or(r, "k", 1)? as usize;
                random_cylinder_cover(&ConvexBody::unit_ball(d), k, &cfg, s)?
            }
            Kind::Kadets => {
                let radius = spec::f64_or(r, "radius", 1.0)?;
                let cuts = spec::u64_or(r, "cuts", 3)? as usize;
                random_kadets_cover(radius, cuts, s)?
            }
            _ => unreachable!("not an arrangement kind"),
        };
        out.push((format!("random-{i}"), arr, cert));
    }
    Ok(out)
}

fn instances(kind: Kind, spec: &Value, seed: u64, exec: Exec) -> Result<Vec<Instance>> {
    if let Some(r) = spec.get("random") {
        return generate(kind, r, seed);
    }
    let resolution = spec::f64_or(spec, "resolution", 0.01)?;
    let items: Vec<Value> = match spec::array(spec, "arrangements")? {
        Some(list) => list.clone(),
        None => vec![spec.clone()],
    };
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let arr = Arrangement::from_json(item)?;
            let cert = certify_cover_with(&arr, resolution, seed, exec);
            Ok((id_of(item, i), arr, cert))
        })
        .collect()
}

pub fn run(kind: Kind, spec: &Value, seed: u64, exec: Exec) -> Result<Outcome> {
    let conjecture = spec::bool_or(spec, "conjecture", false)?;
    let mut out = Outcome::new(Table::new(&["id", "sum", "bound", "slack", "certificate"]));
    for (id, arr, cert) in instances(kind, spec, seed, exec)? {
        let rep: CheckReport = match kind {
            Kind::Bang => bang_check(&arr, &cert),
            Kind::BallPlank => ball_check(&arr, &cert, conjecture),
            Kind::Cylinder => cylinder_bound_check(&arr, &cert),
            Kind::Kadets => kadets_check(&arr, &cert),
            _ => unreachable!("not an arrangement kind"),
        }
        .map_err(|e| HarnessError::Input(format!("{id}: {e}")))?;
        if rep.hard_violation() {
            out.violations.push(format!(
                "{id}: sum {} below bound {} on an exact certificate",
                rep.sum, rep.bound
            ));
        } else if rep.violation() {
            out.warnings.push(format!(
                "{id}: sum {} below bound {} on a sampled certificate",
                rep.sum, rep.bound
            ));
        }
        if let Some(b) = rep.open_bound {
            if rep.sum < b {
                out.warnings
                    .push(format!("{id}: sum {} below the conjectured bound {b}", rep.sum));
            }
        }
        out.table.push(vec![
            id.into(),
            rep.sum.into(),
            rep.bound.into(),
            rep.slack.into(),
            rep.certificate.label().into(),
        ]);
    }
    Ok(out)
}

pub fn annulus(spec: &Value) -> Result<Outcome> {
    let items: Vec<Value> = match spec::array(spec, "cases")? {
        Some(list) => list.clone(),
        None => vec![spec.clone()],
    };
    let mut out = Outcome::new(Table::new(&[
        "id", "epsilon", "covered", "sum", "bound", "slack", "backed",
    ]));
    for (i, item) in items.iter().enumerate() {
        let id = id_of(item, i);
        let eps = spec::f64_or(item, "epsilon", critical_epsilon())?;
        let planks = spec::planks(item, "planks")?;
        let rep = annulus_experiment(eps, &planks)?;
        if rep.covered && rep.backed && rep.slack < -1e-9 {
            out.violations
                .push(format!("{id}: annulus covered with total width {}", rep.sum));
        }
        out.table.push(vec![
            id.into(),
            eps.into(),
            rep.covered.into(),
            rep.sum.into(),
            rep.bound.into(),
            if rep.covered { Cell::Num(rep.slack) } else { Cell::Empty },
            rep.backed.into(),
        ]);
    }
    Ok(out)
}
