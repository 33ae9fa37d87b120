//! JSON body descriptions.
//!
//! ```json
//! {"type": "hpolytope", "normals": [[1,0],[0,1],[-1,0],[0,-1]], "offsets": [1,1,0,0]}
//! {"type": "vpolytope", "vertices": [[0,0],[1,0],[0,1]]}
//! {"type": "ball", "center": [0,0,0], "radius": 1}
//! {"type": "ellipsoid", "center": [0,0], "axes": [[2,0],[0,1]]}
//! {"type": "arcpolygon", "vertices": [[1,0],[-1,0]],
//!  "edges": [{"kind":"arc","center":[0,0],"radius":1}, {"kind":"line"}]}
//! {"type": "intersection", "members": [ ... ]}
//! ```
//!
//! Ellipsoid `axes` is the matrix `M` in `{center + M y : |y| <= 1}`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::arc::{ArcPolygon, Edge, Pt2};
use super::body::ConvexBody;
use super::polytope::Polytope;
use super::Vector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BodySpec {
    Hpolytope {
        normals: Vec<Vec<f64>>,
        offsets: Vec<f64>,
    },
    Vpolytope {
        vertices: Vec<Vec<f64>>,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Ellipsoid {
        center: Vec<f64>,
        axes: Vec<Vec<f64>>,
    },
    Arcpolygon {
        vertices: Vec<[f64; 2]>,
        edges: Vec<EdgeSpec>,
    },
    Intersection {
        members: Vec<BodySpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EdgeSpec {
    Line,
    Arc { center: [f64; 2], radius: f64 },
}

fn vector(xs: &[f64]) -> Result<Vector> {
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite coordinate".into()));
    }
    Ok(Vector::from_column_slice(xs))
}

fn same_dim(vs: &[Vec<f64>]) -> Result<usize> {
    let d = vs.first().map(|v| v.len()).unwrap_or(0);
    if d == 0 || vs.iter().any(|v| v.len() != d) {
        return Err(Error::InvalidInput(
            "coordinate lists must share one nonzero length".into(),
        ));
    }
    Ok(d)
}

impl BodySpec {
    pub fn to_body(&self) -> Result<ConvexBody> {
        match self {
            BodySpec::Hpolytope { normals, offsets } => {
                same_dim(normals)?;
                let ns = normals.iter().map(|n| vector(n)).collect::<Result<_>>()?;
                Ok(ConvexBody::Polytope(Polytope::from_h(ns, offsets.clone())?))
            }
            BodySpec::Vpolytope { vertices } => {
                same_dim(vertices)?;
                let vs = vertices.iter().map(|v| vector(v)).collect::<Result<_>>()?;
                Ok(ConvexBody::Polytope(Polytope::from_v(vs)?))
            }
            BodySpec::Ball { center, radius } => ConvexBody::ball(vector(center)?, *radius),
            BodySpec::Ellipsoid { center, axes } => {
                let d = center.len();
                if axes.len() != d || axes.iter().any(|r| r.len() != d) {
                    return Err(Error::InvalidInput("ellipsoid axes must be d×d".into()));
                }
                let m = DMatrix::from_fn(d, d, |r, c| axes[r][c]);
                ConvexBody::ellipsoid(vector(center)?, m)
            }
            BodySpec::Arcpolygon { vertices, edges } => {
                let vs = vertices.iter().map(|v| Pt2::new(v[0], v[1])).collect();
                let es = edges
                    .iter()
                    .map(|e| match e {
                        EdgeSpec::Line => Edge::Line,
                        EdgeSpec::Arc { center, radius } => Edge::Arc {
                            center: Pt2::new(center[0], center[1]),
                            radius: *radius,
                        },
                    })
                    .collect();
                Ok(ConvexBody::Arc(ArcPolygon::new(vs, es)?))
            }
            BodySpec::Intersection { members } => {
                let ms = members.iter().map(|m| m.to_body()).collect::<Result<_>>()?;
                ConvexBody::intersection(ms)
            }
        }
    }

    pub fn from_body(body: &ConvexBody) -> Self {
        let v = |x: &Vector| x.iter().copied().collect::<Vec<f64>>();
        match body {
            ConvexBody::Polytope(p) => BodySpec::Hpolytope {
                normals: p.normals().iter().map(v).collect(),
                offsets: p.offsets().to_vec(),
            },
            ConvexBody::Ball { center, radius } => BodySpec::Ball {
                center: v(center),
                radius: *radius,
            },
            ConvexBody::Ellipsoid { center, map } => BodySpec::Ellipsoid {
                center: v(center),
                axes: (0..map.nrows()).map(|r| map.row(r).iter().copied().collect()).collect(),
            },
            ConvexBody::Arc(a) => BodySpec::Arcpolygon {
                vertices: a.vertices().iter().map(|p| [p.x, p.y]).collect(),
                edges: a
                    .edges()
                    .iter()
                    .map(|e| match e {
                        Edge::Line => EdgeSpec::Line,
                        Edge::Arc { center, radius } => EdgeSpec::Arc {
                            center: [center.x, center.y],
                            radius: *radius,
                        },
                    })
                    .collect(),
            },
            ConvexBody::Intersection(m) => BodySpec::Intersection {
                members: m.iter().map(Self::from_body).collect(),
            },
        }
    }
}

pub fn parse_body(json: &str) -> Result<ConvexBody> {
    let spec: BodySpec = serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("body file: {e}")))?;
    spec.to_body()
}

pub fn body_from_value(value: &serde_json::Value) -> Result<ConvexBody> {
    let spec: BodySpec =
        serde_json::from_value(value.clone()).map_err(|e| Error::InvalidInput(format!("body: {e}")))?;
    spec.to_body()
}
