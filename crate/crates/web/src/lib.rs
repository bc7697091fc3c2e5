//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes plain numbers or a JSON string and returns a JSON
//! string, so the page needs no bundler or generated type glue beyond the
//! `wasm-bindgen` loader. The `*_json` functions hold the logic and are
//! usable (and tested) natively.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use hcyclic::blocks::mirsky_spectrum;
use hcyclic::digraph::{cyclic_index, digraph_of, feasible_partitions};
use hcyclic::eigen::{eigen, eigenvalues};
use hcyclic::io::{chain_value, complex_value, matrix_from_json, matrix_value, partition_value, real_value};
use hcyclic::jordan::{chain_check, rotate_right_chain, weyr_zero, JordanChain};
use hcyclic::random::{random_h_cyclic, random_sizes};
use hcyclic::{Error, Tolerance, C64};

const MAX_H: usize = 8;
const MAX_CLASS: usize = 6;

fn check_shape(h: usize, max_size: usize) -> Result<(), Error> {
    if !(1..=MAX_H).contains(&h) || !(1..=MAX_CLASS).contains(&max_size) {
        return Err(Error::InvalidArgument(format!(
            "h must be in 1..={MAX_H} and class size in 1..={MAX_CLASS}"
        )));
    }
    Ok(())
}

/// Random h-cyclic matrix with its predicted and directly computed spectra.
/// The `z` smallest direct eigenvalues are set to zero, `z` being the
/// algebraic multiplicity of zero, since QR smears defective zeros.
pub fn spectrum_json(h: usize, max_size: usize, seed: u64) -> Result<Value, Error> {
    check_shape(h, max_size)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes = random_sizes(&mut rng, h, max_size);
    let (a, p) = random_h_cyclic(&mut rng, &sizes, 1.0);
    let tol = Tolerance::default();
    let predicted = mirsky_spectrum(&a, &p, tol)?;
    let mut direct = eigenvalues(&a)?;
    direct.sort_by(|x, y| x.norm().total_cmp(&y.norm()));
    let zeros = weyr_zero(&a, tol)?;
    for z in direct.iter_mut().take(zeros.multiplicity()) {
        *z = C64::new(0.0, 0.0);
    }
    Ok(json!({
        "n": a.rows(),
        "sizes": sizes,
        "partition": partition_value(&p),
        "zero_count": predicted.zero_count,
        "zero_blocks": zeros.conjugate(),
        "predicted": predicted.eigenvalues().into_iter().map(complex_value).collect::<Vec<_>>(),
        "direct": direct.into_iter().map(complex_value).collect::<Vec<_>>(),
        "matrix": matrix_value(&a),
    }))
}

/// Cyclic index and one partition per feasible h for a matrix given as JSON.
pub fn detect_json(matrix: &str, tol: f64) -> Result<Value, Error> {
    let a = matrix_from_json(matrix)?;
    let g = digraph_of(&a, Tolerance::new(tol)?)?;
    let partitions: serde_json::Map<String, Value> = feasible_partitions(&g)
        .into_iter()
        .map(|p| (p.h().to_string(), json!(p.classes())))
        .collect();
    Ok(json!({ "n": g.n(), "cyclic_index": cyclic_index(&g), "partitions": partitions }))
}

/// Dominant eigenvector of a random h-cyclic matrix rotated to `λω^k`, with
/// the residual of the rotated pair.
pub fn rotate_json(h: usize, max_size: usize, k: i64, seed: u64) -> Result<Value, Error> {
    check_shape(h, max_size)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes = random_sizes(&mut rng, h, max_size);
    let (a, p) = random_h_cyclic(&mut rng, &sizes, 1.0);
    let e = eigen(&a)?;
    let top = (0..a.rows())
        .max_by(|&i, &j| e.values[i].norm().total_cmp(&e.values[j].norm()))
        .expect("matrix has at least one eigenvalue");
    let chain = JordanChain::right(e.values[top], vec![e.vector(top)])?;
    let rotated = rotate_right_chain(&chain, &p, k)?;
    let check = chain_check(&a, &rotated, Tolerance::default())?;
    Ok(json!({
        "partition": partition_value(&p),
        "original": chain_value(&chain),
        "rotated": chain_value(&rotated),
        "residual": real_value(check.recursion_residual),
        "spectrum": e.values.iter().map(|&z| complex_value(z)).collect::<Vec<_>>(),
    }))
}

fn to_js(r: Result<Value, Error>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn spectrum(h: usize, max_size: usize, seed: u32) -> Result<String, JsError> {
    to_js(spectrum_json(h, max_size, seed as u64))
}

#[wasm_bindgen]
pub fn detect(matrix: &str, tol: f64) -> Result<String, JsError> {
    to_js(detect_json(matrix, tol))
}

#[wasm_bindgen]
pub fn rotate(h: usize, max_size: usize, k: i32, seed: u32) -> Result<String, JsError> {
    to_js(rotate_json(h, max_size, k as i64, seed as u64))
}

/// The 3-cyclic 6x6 sample with its vertices relabelled by a seeded shuffle.
#[wasm_bindgen]
pub fn shuffled_sample(seed: u32) -> String {
    use rand::seq::SliceRandom;
    let mut sigma: Vec<usize> = (1..=6).collect();
    sigma.shuffle(&mut ChaCha8Rng::seed_from_u64(seed as u64));
    let a = hcyclic::samples::six_by_six()
        .permute_symmetric(&sigma)
        .expect("valid permutation");
    matrix_value(&a).to_string()
}
