//! One runner per experiment kind.

mod bounds;
mod covers;
mod lattice;
mod partial;
mod slicing;

use plank_core::exec::Exec;
use serde_json::Value;

use crate::{Kind, Outcome, Result};

pub use lattice::family_body;

pub fn run(kind: Kind, spec: &Value, seed: u64, exec: Exec) -> Result<Outcome> {
    match kind {
        Kind::Bang | Kind::BallPlank | Kind::Cylinder | Kind::Kadets => covers::run(kind, spec, seed, exec),
        Kind::Annulus => covers::annulus(spec),
        Kind::SuccessiveInradii => slicing::successive(spec),
        Kind::CutGame => slicing::cut_game(spec, seed, exec),
        Kind::PartialCover => partial::partial_cover(spec, seed),
        Kind::VdSearch => partial::vd_search(spec, seed),
        Kind::Lattice => lattice::run(spec),
        Kind::BoundsTable => bounds::table(spec),
        Kind::BallPoly => bounds::ball_poly(spec, seed),
    }
}
