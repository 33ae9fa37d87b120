use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plankbench::corpus::{run_corpus, CaseStatus};
use plankbench::{effective_seed, run_experiment, write_outputs, HarnessError, Kind};

/// Reproducible experiments on plank coverings and related extremal problems.
///
/// Exit status: 0 completed, 1 input error, 2 a theorem-backed assertion
/// failed (or a corpus diff). PLANKBENCH_THREADS caps the worker pool.
#[derive(Parser)]
#[command(name = "plankbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment spec (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Seed; overrides the spec's "seed" field.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Also write a matplotlib script next to the CSV.
    #[arg(long)]
    plot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sum of plank widths against the minimal width.
    Bang(RunArgs),
    /// Sum of relative plank widths against 1.
    BallPlank(RunArgs),
    /// Sum of cross-sectional volumes of cylinder covers.
    Cylinder(RunArgs),
    /// Sum of inradii of convex bodies covering a ball.
    Kadets(RunArgs),
    /// Plank covers of a square annulus.
    Annulus(RunArgs),
    /// Successive relative inradii and optimal cuts.
    SuccessiveInradii(RunArgs),
    /// Optimal, given and random cut trees.
    CutGame(RunArgs),
    /// Covered volume of plank unions in a ball against the aligned plank.
    PartialCover(RunArgs),
    /// Search for small intersections of translates with a width floor.
    VdSearch(RunArgs),
    /// Minimum hyperplane covers of lattice points.
    Lattice(RunArgs),
    /// Table of extremal constants by dimension.
    BoundsTable(RunArgs),
    /// Ball-polyhedra: width, spindle diameter and volume bound.
    BallPoly(RunArgs),
    /// Run the regression corpus against its golden CSVs.
    Corpus {
        #[arg(long, default_value = "tests/corpus")]
        dir: PathBuf,
        /// Rewrite golden files instead of diffing.
        #[arg(long)]
        bless: bool,
    },
}

impl Command {
    fn run_args(self) -> Option<(Kind, RunArgs)> {
        Some(match self {
            Command::Bang(a) => (Kind::Bang, a),
            Command::BallPlank(a) => (Kind::BallPlank, a),
            Command::Cylinder(a) => (Kind::Cylinder, a),
            Command::Kadets(a) => (Kind::Kadets, a),
            Command::Annulus(a) => (Kind::Annulus, a),
            Command::SuccessiveInradii(a) => (Kind::SuccessiveInradii, a),
            Command::CutGame(a) => (Kind::CutGame, a),
            Command::PartialCover(a) => (Kind::PartialCover, a),
            Command::VdSearch(a) => (Kind::VdSearch, a),
            Command::Lattice(a) => (Kind::Lattice, a),
            Command::BoundsTable(a) => (Kind::BoundsTable, a),
            Command::BallPoly(a) => (Kind::BallPoly, a),
            Command::Corpus { .. } => return None,
        })
    }
}

fn configure_threads() -> Result<(), HarnessError> {
    let Ok(v) = std::env::var("PLANKBENCH_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| HarnessError::Input(format!("PLANKBENCH_THREADS={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| HarnessError::Input(format!("thread pool: {e}")))
}

fn run_one(kind: Kind, args: RunArgs) -> Result<i32, HarnessError> {
    let text = std::fs::read_to_string(&args.spec)
        .map_err(|e| HarnessError::Input(format!("{}: {e}", args.spec.display())))?;
    let spec: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| HarnessError::Input(format!("{}: {e}", args.spec.display())))?;
    let seed = effective_seed(kind, &spec, args.seed)?;
    let outcome = run_experiment(kind, &spec, seed)?;
    let written = write_outputs(&args.out, kind, &spec, seed, &outcome, args.plot)?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    for v in &outcome.violations {
        eprintln!("VIOLATION: {v}");
    }
    eprintln!(
        "{kind}: {} rows -> {} ({})",
        outcome.table.rows.len(),
        written.csv.display(),
        written.provenance.display()
    );
    Ok(outcome.exit_code())
}

fn corpus(dir: PathBuf, bless: bool) -> Result<i32, HarnessError> {
    let summary = run_corpus(&dir, bless)?;
    for c in &summary.cases {
        let ms = c.elapsed.as_millis();
        match &c.status {
            CaseStatus::Match => eprintln!("ok       {} ({ms} ms)", c.name),
            CaseStatus::Blessed => eprintln!("blessed  {} ({ms} ms)", c.name),
            CaseStatus::MissingGolden => eprintln!("MISSING  {}: no golden csv", c.name),
            CaseStatus::Error(e) => eprintln!("ERROR    {}: {e}", c.name),
            CaseStatus::Diff(ds) | CaseStatus::Violation(ds) => {
                let tag = if matches!(c.status, CaseStatus::Diff(_)) {
                    "DIFF"
                } else {
                    "VIOLATION"
                };
                eprintln!("{tag:<8} {}", c.name);
                for d in ds.iter().take(20) {
                    eprintln!("    {d}");
                }
            }
        }
    }
    eprintln!(
        "{} cases in {:.1} s",
        summary.cases.len(),
        summary.elapsed.as_secs_f64()
    );
    Ok(summary.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Corpus { dir, bless } => corpus(dir, bless),
        other => {
            let (kind, args) = other.run_args().expect("experiment command");
            run_one(kind, args)
        }
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
