//! Successive inradii and the cutting game.

use plank_core::exec::Exec;
use plank_core::inradii::{
    adversarial_search, optimal_cuts, simultaneous_cut_report, slice_and_measure, successive_inradius, Cut,
};
use plank_core::ConvexBody;
use serde_json::Value;

use crate::spec;
use crate::{Cell, HarnessError, Outcome, Result, Table};

const BACKSTOP: f64 = 1e-6;

pub fn successive(spec: &Value) -> Result<Outcome> {
    let k = spec::body(spec, "body")?;
    let c = spec::body(spec, "gauge")?;
    let tol = spec.get("tol").map(|_| spec::f64_req(spec, "tol")).transpose()?;
    let ns = spec::counts(spec, "n", &[1, 2, 3, 4, 5, 6])?;
    let mut out = Outcome::new(Table::new(&[
        "n",
        "rho",
        "inradius",
        "residual",
        "greatest_piece",
        "certainty",
    ]));
    for n in ns {
        let n = n as usize;
        let s = successive_inradius(&k, &c, n, tol)?;
        let greatest = match k {
            ConvexBody::Polytope(_) => {
                let (cuts, _) = optimal_cuts(&k, &c, n)?;
                let g = slice_and_measure(&k, &c, &cuts)?.greatest;
                if g < s.rho - BACKSTOP {
                    out.violations
                        .push(format!("n = {n}: optimal cuts leave greatest piece {g} < {}", s.rho));
                }
                Some(g)
            }
            _ => None,
        };
        out.table.push(vec![
            n.into(),
            s.rho.into(),
            s.inradius.into(),
            s.residual.into(),
            greatest.into(),
            s.certainty.label().into(),
        ]);
    }
    Ok(out)
}

pub fn cut_game(spec: &Value, seed: u64, exec: Exec) -> Result<Outcome> {
    let k = spec::body(spec, "body")?;
    let c = spec::body(spec, "gauge")?;
    let n = spec::u64_or(spec, "n", 3)? as usize;
    let trials = spec::u64_or(spec, "trials", 1000)?;
    let simultaneous = spec::bool_or(spec, "simultaneous", true)?;
    let mut out = Outcome::new(Table::new(&[
        "mode",
        "n",
        "successive_inradius",
        "greatest_piece",
        "best_seed",
        "trials",
        "violations",
    ]));

    let (cuts, r) = optimal_cuts(&k, &c, n)?;
    let g = slice_and_measure(&k, &c, &cuts)?.greatest;
    let bad = u64::from(g < r - BACKSTOP);
    if bad > 0 {
        out.violations
            .push(format!("optimal cuts leave greatest piece {g} < {r}"));
    }
    out.table.push(row("optimal", n, r, g, None, 1, bad));
    out.artifacts.push(("cuts".into(), serde_json::to_value(&cuts)?));

    if let Some(given) = spec.get("cuts") {
        let tree: Vec<Cut> =
            serde_json::from_value(given.clone()).map_err(|e| HarnessError::Input(format!("cuts: {e}")))?;
        if tree.len() + 1 != n {
            return Err(HarnessError::Input(format!(
                "{} cuts do not make {n} pieces",
                tree.len()
            )));
        }
        let g = slice_and_measure(&k, &c, &tree)?.greatest;
        let bad = u64::from(g < r - BACKSTOP);
        if bad > 0 {
            out.violations
                .push(format!("given successive cuts leave greatest piece {g} < {r}"));
        }
        out.table.push(row("given", n, r, g, None, 1, bad));
    }

    let adv = adversarial_search(&k, &c, n, trials, seed, exec)?;
    if adv.violations > 0 {
        out.violations.push(format!(
            "{} random successive trees beat the successive inradius (best {} from trial {})",
            adv.violations, adv.best, adv.best_seed
        ));
    }
    out.table.push(row(
        "successive-random",
        n,
        adv.successive_inradius,
        adv.best,
        Some(adv.best_seed),
        adv.trials,
        adv.violations,
    ));

    if simultaneous {
        let sim = simultaneous_cut_report(&k, &c, n, trials, seed, exec)?;
        if sim.violations > 0 {
            out.warnings.push(format!(
                "{} simultaneous cut families beat the successive inradius (no theorem applies)",
                sim.violations
            ));
        }
        out.table.push(row(
            "simultaneous-random",
            n,
            sim.successive_inradius,
            sim.best,
            Some(sim.best_seed),
            sim.trials,
            sim.violations,
        ));
    }
    Ok(out)
}

fn row(mode: &str, n: usize, r: f64, g: f64, seed: Option<u64>, trials: u64, bad: u64) -> Vec<Cell> {
    vec![
        mode.into(),
        n.into(),
        r.into(),
        g.into(),
        seed.into(),
        trials.into(),
        bad.into(),
    ]
}
