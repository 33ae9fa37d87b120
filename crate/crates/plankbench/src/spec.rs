//! Field accessors for experiment specs.

use plank_core::coverings::{parse_plank, Plank};
use plank_core::exec::stream_rng;
use plank_core::geometry::io::body_from_value;
use plank_core::{ConvexBody, Vector};
use rand::RngCore;
use serde_json::Value;

use crate::{HarnessError, Result};

fn bad(key: &str, what: &str) -> HarnessError {
    HarnessError::Input(format!("field {key:?}: expected {what}"))
}

pub fn f64_or(spec: &Value, key: &str, default: f64) -> Result<f64> {
    match spec.get(key) {
        None => Ok(default),
        Some(v) => v.as_f64().ok_or_else(|| bad(key, "a number")),
    }
}

pub fn f64_req(spec: &Value, key: &str) -> Result<f64> {
    spec.get(key)
        .ok_or_else(|| bad(key, "a number"))?
        .as_f64()
        .ok_or_else(|| bad(key, "a number"))
}

pub fn u64_or(spec: &Value, key: &str, default: u64) -> Result<u64> {
    match spec.get(key) {
        None => Ok(default),
        Some(v) => v.as_u64().ok_or_else(|| bad(key, "a nonnegative integer")),
    }
}

pub fn bool_or(spec: &Value, key: &str, default: bool) -> Result<bool> {
    match spec.get(key) {
        None => Ok(default),
        Some(v) => v.as_bool().ok_or_else(|| bad(key, "a boolean")),
    }
}

pub fn str_or<'a>(spec: &'a Value, key: &str, default: &'a str) -> Result<&'a str> {
    match spec.get(key) {
        None => Ok(default),
        Some(v) => v.as_str().ok_or_else(|| bad(key, "a string")),
    }
}

pub fn body(spec: &Value, key: &str) -> Result<ConvexBody> {
    Ok(body_from_value(spec.get(key).ok_or_else(|| bad(key, "a body"))?)?)
}

pub fn array<'a>(spec: &'a Value, key: &str) -> Result<Option<&'a Vec<Value>>> {
    match spec.get(key) {
        None => Ok(None),
        Some(v) => v.as_array().map(Some).ok_or_else(|| bad(key, "a list")),
    }
}

pub fn planks(spec: &Value, key: &str) -> Result<Vec<Plank>> {
    let list = array(spec, key)?.ok_or_else(|| bad(key, "a list of planks"))?;
    Ok(list.iter().map(parse_plank).collect::<plank_core::Result<_>>()?)
}

pub fn points(value: &Value, key: &str) -> Result<Vec<Vector>> {
    let list = array(value, key)?.ok_or_else(|| bad(key, "a list of points"))?;
    list.iter()
        .map(|p| {
            let xs: Vec<f64> = serde_json::from_value(p.clone()).map_err(|_| bad(key, "numeric points"))?;
            Ok(Vector::from_vec(xs))
        })
        .collect()
}

/// `"n": 3` or `"n": [1, 2, 3]`.
pub fn counts(spec: &Value, key: &str, default: &[u64]) -> Result<Vec<u64>> {
    match spec.get(key) {
        None => Ok(default.to_vec()),
        Some(Value::Array(xs)) => xs
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| bad(key, "integers")))
            .collect(),
        Some(v) => Ok(vec![v.as_u64().ok_or_else(|| bad(key, "an integer or list"))?]),
    }
}

/// Row identifier: the item's `"id"` or its position.
pub fn id_of(item: &Value, index: usize) -> String {
    item.get("id")
        .and_then(|v| v.as_str())
        .map_or_else(|| index.to_string(), str::to_string)
}

/// Sub-seed for the `i`-th generated instance of a run.
pub fn instance_seed(seed: u64, i: u64) -> u64 {
    stream_rng(seed, i).next_u64()
}
