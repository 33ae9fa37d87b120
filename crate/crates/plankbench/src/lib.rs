//! Reproducible experiment runner for the plank-covering toolkit.
//!
//! An experiment is a kind, a JSON spec and a seed. Running it produces a CSV
//! table, a JSON provenance record and, for some kinds, extra JSON artifacts.
//! Exit status 0 means every theorem-backed assertion held, 1 means the input
//! was rejected, 2 means a backed assertion failed.

pub mod corpus;
pub mod experiments;
pub mod report;
mod spec;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use plank_core::exec::Exec;

pub use report::{Cell, Provenance, Table};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] plank_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Bang,
    BallPlank,
    Cylinder,
    Kadets,
    Annulus,
    SuccessiveInradii,
    CutGame,
    PartialCover,
    VdSearch,
    Lattice,
    BoundsTable,
    BallPoly,
}

impl Kind {
    pub const ALL: [Kind; 12] = [
        Kind::Bang,
        Kind::BallPlank,
        Kind::Cylinder,
        Kind::Kadets,
        Kind::Annulus,
        Kind::SuccessiveInradii,
        Kind::CutGame,
        Kind::PartialCover,
        Kind::VdSearch,
        Kind::Lattice,
        Kind::BoundsTable,
        Kind::BallPoly,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Bang => "bang",
            Kind::BallPlank => "ball-plank",
            Kind::Cylinder => "cylinder",
            Kind::Kadets => "kadets",
            Kind::Annulus => "annulus",
            Kind::SuccessiveInradii => "successive-inradii",
            Kind::CutGame => "cut-game",
            Kind::PartialCover => "partial-cover",
            Kind::VdSearch => "vd-search",
            Kind::Lattice => "lattice",
            Kind::BoundsTable => "bounds-table",
            Kind::BallPoly => "ball-poly",
        }
    }

    /// Kinds whose output depends on a seed; those refuse to run without one.
    pub fn stochastic(&self) -> bool {
        !matches!(
            self,
            Kind::Annulus | Kind::SuccessiveInradii | Kind::Lattice | Kind::BoundsTable
        )
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| HarnessError::Input(format!("unknown experiment kind {s:?}")))
    }
}

/// Result of one experiment before it is written anywhere.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    /// Failed theorem-backed assertions.
    pub violations: Vec<String>,
    /// Notable findings that carry no guarantee (open problems, sampled certificates).
    pub warnings: Vec<String>,
    /// Extra JSON files, by suffix.
    pub artifacts: Vec<(String, serde_json::Value)>,
}

impl Outcome {
    pub fn new(table: Table) -> Self {
        Outcome {
            table,
            violations: Vec::new(),
            warnings: Vec::new(),
            artifacts: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            0
        } else {
            2
        }
    }
}

/// The seed a run uses: the explicit one, else the spec's `"seed"` field.
pub fn effective_seed(kind: Kind, spec: &serde_json::Value, seed: Option<u64>) -> Result<Option<u64>> {
    let s = seed.or_else(|| spec.get("seed").and_then(|s| s.as_u64()));
    if kind.stochastic() && s.is_none() {
        return Err(HarnessError::Input(format!("{kind} needs a seed")));
    }
    Ok(s)
}

pub fn run_experiment(kind: Kind, spec: &serde_json::Value, seed: Option<u64>) -> Result<Outcome> {
    run_experiment_with(kind, spec, seed, Exec::default())
}

pub fn run_experiment_with(kind: Kind, spec: &serde_json::Value, seed: Option<u64>, exec: Exec) -> Result<Outcome> {
    let seed = effective_seed(kind, spec, seed)?.unwrap_or(0);
    experiments::run(kind, spec, seed, exec)
}

/// Paths written by [`write_outputs`].
#[derive(Debug, Clone)]
pub struct Written {
    pub csv: PathBuf,
    pub provenance: PathBuf,
    pub extra: Vec<PathBuf>,
}

/// Writes `<kind>.csv`, `<kind>.provenance.json`, artifacts and optionally a
/// plotting script into `dir`.
pub fn write_outputs(
    dir: &Path,
    kind: Kind,
    spec: &serde_json::Value,
    seed: Option<u64>,
    outcome: &Outcome,
    plot: bool,
) -> Result<Written> {
    std::fs::create_dir_all(dir)?;
    let csv_bytes = outcome.table.to_csv()?;
    let csv = dir.join(format!("{kind}.csv"));
    std::fs::write(&csv, &csv_bytes)?;
    let mut extra = Vec::new();
    for (suffix, value) in &outcome.artifacts {
        let p = dir.join(format!("{kind}.{suffix}.json"));
        std::fs::write(&p, serde_json::to_string_pretty(value)? + "\n")?;
        extra.push(p);
    }
    if plot {
        let p = dir.join(format!("{kind}.plot.py"));
        std::fs::write(&p, plot_script(kind, &outcome.table))?;
        extra.push(p);
    }
    let rerun = match seed {
        Some(s) => format!("plankbench {kind} --spec <spec.json> --seed {s} --out <dir>"),
        None => format!("plankbench {kind} --spec <spec.json> --out <dir>"),
    };
    let prov = Provenance {
        tool: "plankbench",
        version: env!("CARGO_PKG_VERSION"),
        kind: kind.name().into(),
        seed,
        config_hash: report::config_hash(&serde_json::json!({
            "kind": kind.name(),
            "seed": seed,
            "spec": spec,
        })),
        csv_sha256: report::sha256_hex(&csv_bytes),
        spec: spec.clone(),
        rerun,
    };
    let provenance = dir.join(format!("{kind}.provenance.json"));
    std::fs::write(&provenance, serde_json::to_string_pretty(&prov)? + "\n")?;
    Ok(Written { csv, provenance, extra })
}

/// A matplotlib script plotting every numeric column against the row index.
fn plot_script(kind: Kind, table: &Table) -> String {
    let numeric: Vec<&str> = table
        .columns
        .iter()
        .enumerate()
        .filter(|(i, _)| table.rows.iter().any(|r| matches!(r[*i], Cell::Num(_) | Cell::Int(_))))
        .map(|(_, c)| c.as_str())
        .collect();
    format!(
        r#"import csv
import sys
from pathlib import Path

import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
rows = list(csv.DictReader(open(here / "{kind}.csv")))
columns = {numeric:?}
fig, ax = plt.subplots()
for c in columns:
    ys = [float(r[c]) if r[c] not in ("", "nan") else float("nan") for r in rows]
    ax.plot(range(len(ys)), ys, marker="o", label=c)
ax.set_xlabel("row")
ax.set_title("{kind}")
ax.legend()
out = here / "{kind}.png"
fig.savefig(out, dpi=150)
print(out, file=sys.stderr)
"#
    )
}
