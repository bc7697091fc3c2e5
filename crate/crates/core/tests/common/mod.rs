//! Oracles shared by the integration tests and the acceptance suite. Nothing
//! here calls the routine it is used to check.
#![allow(dead_code)]

use hcyclic::digraph::{CyclicPartition, Digraph};
use hcyclic::eigen::eigen;
use hcyclic::jordan::{zero_chains_all, JordanChain};
use hcyclic::{ComplexMatrix, Tolerance, C64};

/// Exhaustive search over all `h^n` labellings for one with every class
/// nonempty and every arc going from label `ℓ` to `ℓ + 1 mod h`.
pub fn brute_force_partition_exists(g: &Digraph, h: usize) -> bool {
    let n = g.n();
    if h == 0 || h > n {
        return false;
    }
    let arcs: Vec<(usize, usize)> = g.arcs().collect();
    let mut labels = vec![0usize; n];
    loop {
        let covered = (0..h).all(|c| labels.contains(&c));
        if covered && arcs.iter().all(|&(i, j)| (labels[i - 1] + 1) % h == labels[j - 1]) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == n {
                return false;
            }
            labels[k] += 1;
            if labels[k] < h {
                break;
            }
            labels[k] = 0;
            k += 1;
        }
    }
}

/// Largest deviation after pairing each expected value with the nearest
/// still-unused actual value. `None` when the lengths differ.
pub fn greedy_match(expected: &[C64], actual: &[C64]) -> Option<f64> {
    if expected.len() != actual.len() {
        return None;
    }
    let mut used = vec![false; actual.len()];
    let mut worst: f64 = 0.0;
    for e in expected {
        let (idx, d) = actual
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, a)| (i, (a - e).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        used[idx] = true;
        worst = worst.max(d);
    }
    Some(worst)
}

/// The partition of `Aᵀ` induced by `P`: arcs reverse, so the classes run in
/// the opposite cyclic order.
pub fn transpose_partition(p: &CyclicPartition) -> CyclicPartition {
    let mut classes = p.classes().to_vec();
    classes.reverse();
    CyclicPartition::new(classes).unwrap()
}

/// Right eigenvectors of `A` as length-one chains.
pub fn right_eigen_chains(a: &ComplexMatrix) -> Vec<JordanChain> {
    let e = eigen(a).unwrap();
    (0..a.rows())
        .map(|k| JordanChain::right(e.values[k], vec![e.vector(k)]).unwrap())
        .collect()
}

/// Left eigenvectors of `A`, taken as right eigenvectors of `Aᵀ`.
pub fn left_eigen_chains(a: &ComplexMatrix) -> Vec<JordanChain> {
    let e = eigen(&a.transpose()).unwrap();
    (0..a.rows())
        .map(|k| JordanChain::left(e.values[k], vec![e.vector(k)]).unwrap())
        .collect()
}

/// Left zero chains of `A` obtained from right zero chains of `Aᵀ`, read in
/// reverse order.
pub fn left_zero_chains(a: &ComplexMatrix, p: &CyclicPartition, tol: Tolerance) -> Vec<JordanChain> {
    let at = a.transpose();
    let pt = transpose_partition(p);
    zero_chains_all(&at, &pt, tol)
        .unwrap()
        .classes
        .into_iter()
        .flat_map(|c| c.reports)
        .map(|r| {
            let mut v = r.chain.vectors().to_vec();
            v.reverse();
            JordanChain::left(C64::new(0.0, 0.0), v).unwrap()
        })
        .collect()
}

pub fn right_zero_chains(a: &ComplexMatrix, p: &CyclicPartition, tol: Tolerance) -> Vec<JordanChain> {
    zero_chains_all(a, p, tol)
        .unwrap()
        .classes
        .into_iter()
        .flat_map(|c| c.reports)
        .map(|r| r.chain)
        .collect()
}
