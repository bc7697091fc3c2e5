//! Random h-cyclic matrices for property tests, the acceptance suite and the
//! demo. Entries are drawn uniformly from the unit square of the complex plane.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::digraph::CyclicPartition;
use crate::matrix::{ComplexMatrix, C64};

pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n).map(|_| random_scalar(rng)).collect()
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_scalar(rng))
}

/// `h` class sizes, each in `1..=max_size`.
pub fn random_sizes<R: Rng + ?Sized>(rng: &mut R, h: usize, max_size: usize) -> Vec<usize> {
    (0..h).map(|_| rng.gen_range(1..=max_size.max(1))).collect()
}

/// Dense consecutive h-cyclic matrix with the given class sizes.
///
/// Every entry of every block `A_{ℓ,ℓ+1}` is drawn independently; with
/// `density < 1` each entry is kept with that probability.
pub fn random_h_cyclic<R: Rng + ?Sized>(
    rng: &mut R,
    sizes: &[usize],
    density: f64,
) -> (ComplexMatrix, CyclicPartition) {
    let p = CyclicPartition::consecutive(sizes).expect("class sizes must be positive");
    let a = fill_pattern(rng, &p, density);
    (a, p)
}

/// Like [`random_h_cyclic`] but on a random (generally non-consecutive)
/// partition of `1..=n`.
pub fn random_shuffled_h_cyclic<R: Rng + ?Sized>(
    rng: &mut R,
    sizes: &[usize],
    density: f64,
) -> (ComplexMatrix, CyclicPartition) {
    let n: usize = sizes.iter().sum();
    let mut vertices: Vec<usize> = (1..=n).collect();
    vertices.shuffle(rng);
    let mut classes = Vec::with_capacity(sizes.len());
    let mut rest = &vertices[..];
    for &s in sizes {
        let (head, tail) = rest.split_at(s);
        classes.push(head.to_vec());
        rest = tail;
    }
    let p = CyclicPartition::new(classes).expect("shuffled classes cover 1..=n");
    let a = fill_pattern(rng, &p, density);
    (a, p)
}

fn fill_pattern<R: Rng + ?Sized>(rng: &mut R, p: &CyclicPartition, density: f64) -> ComplexMatrix {
    let n = p.n();
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 1..=p.h() {
        for &r in p.class(i) {
            for &c in p.class(p.alpha(i)) {
                if density >= 1.0 || rng.gen_bool(density.max(0.0)) {
                    a[(r - 1, c - 1)] = random_scalar(rng);
                }
            }
        }
    }
    a
}

/// h-cyclic matrix with all classes of size `m`; square random blocks are
/// nonsingular with probability one.
pub fn random_nonsingular_h_cyclic<R: Rng + ?Sized>(
    rng: &mut R,
    h: usize,
    m: usize,
) -> (ComplexMatrix, CyclicPartition) {
    random_h_cyclic(rng, &vec![m; h], 1.0)
}
