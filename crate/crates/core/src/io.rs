//! JSON encodings of matrices, partitions, vectors and chains.
//!
//! * matrix: `{"rows": n, "cols": m, "data": [[re, im], ...]}`, row-major
//! * partition: `{"h": h, "classes": [[1-based vertices], ...]}`
//! * vector: `[[re, im], ...]`
//! * chain: `{"eigenvalue": [re, im], "orientation": "right"|"left", "vectors": [vector, ...]}`
//! * chain orbits (reconstruction input): `[{"right": chain, "left": chain}, ...]`
//!
//! Floats written by this module are rounded to 12 significant digits and
//! negative zero is printed as `0`, so output is stable across platforms.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::digraph::CyclicPartition;
use crate::error::{Error, Result};
use crate::jordan::{ChainOrbit, JordanChain, Orientation};
use crate::matrix::{ComplexMatrix, C64};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionJson {
    pub h: usize,
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainJson {
    pub eigenvalue: [f64; 2],
    pub orientation: String,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitJson {
    pub right: ChainJson,
    pub left: ChainJson,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("malformed {what} JSON: {e}")))
}

fn complex(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

fn to_vector(v: &[[f64; 2]]) -> Vec<C64> {
    v.iter().copied().map(complex).collect()
}

pub fn matrix_from_json(text: &str) -> Result<ComplexMatrix> {
    let m: MatrixJson = parse(text, "matrix")?;
    ComplexMatrix::new(m.rows, m.cols, to_vector(&m.data))
}

pub fn partition_from_json(text: &str) -> Result<CyclicPartition> {
    let p: PartitionJson = parse(text, "partition")?;
    if p.h != p.classes.len() {
        return Err(Error::InvalidPartition(format!(
            "h = {} but {} classes listed",
            p.h,
            p.classes.len()
        )));
    }
    CyclicPartition::new(p.classes)
}

pub fn vector_from_json(text: &str) -> Result<Vec<C64>> {
    let v: Vec<[f64; 2]> = parse(text, "vector")?;
    let v = to_vector(&v);
    if v.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidArgument("vector contains non-finite values".into()));
    }
    Ok(v)
}

fn chain_from_parsed(c: ChainJson) -> Result<JordanChain> {
    let orientation = match c.orientation.as_str() {
        "right" => Orientation::Right,
        "left" => Orientation::Left,
        other => {
            return Err(Error::InvalidArgument(format!(
                "orientation must be \"right\" or \"left\", got {other:?}"
            )))
        }
    };
    JordanChain::new(
        complex(c.eigenvalue),
        orientation,
        c.vectors.iter().map(|v| to_vector(v)).collect(),
    )
}

pub fn chain_from_json(text: &str) -> Result<JordanChain> {
    chain_from_parsed(parse(text, "chain")?)
}

pub fn orbits_from_json(text: &str) -> Result<Vec<ChainOrbit>> {
    let list: Vec<OrbitJson> = parse(text, "chain orbit list")?;
    list.into_iter()
        .map(|o| {
            Ok(ChainOrbit {
                right: chain_from_parsed(o.right)?,
                left: chain_from_parsed(o.left)?,
            })
        })
        .collect()
}

/// Rounds to 12 significant digits and maps `-0` to `0`.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn real_value(x: f64) -> Value {
    json!(round_sig(x))
}

pub fn complex_value(z: C64) -> Value {
    json!([round_sig(z.re), round_sig(z.im)])
}

pub fn vector_value(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|&z| complex_value(z)).collect())
}

pub fn matrix_value(m: &ComplexMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "data": m.data().iter().map(|&z| complex_value(z)).collect::<Vec<_>>(),
    })
}

pub fn partition_value(p: &CyclicPartition) -> Value {
    json!({ "h": p.h(), "classes": p.classes() })
}

pub fn chain_value(c: &JordanChain) -> Value {
    json!({
        "eigenvalue": complex_value(c.eigenvalue()),
        "orientation": c.orientation().as_str(),
        "vectors": c.vectors().iter().map(|v| vector_value(v)).collect::<Vec<_>>(),
    })
}
