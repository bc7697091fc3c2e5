//! Small worked matrices used throughout the tests, the CLI fixtures and the
//! browser demo.

use crate::digraph::CyclicPartition;
use crate::matrix::ComplexMatrix;

/// 3-cyclic 6x6 matrix with classes `{1}, {2,3,4}, {5,6}` and `B_1 = [4]`.
pub fn six_by_six() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [0.0, 1.0, 1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 1.0],
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    ])
    .expect("static matrix")
}

pub fn six_by_six_partition() -> CyclicPartition {
    CyclicPartition::consecutive(&[1, 3, 2]).expect("static partition")
}

/// 3-cyclic 12x12 matrix with `A_12 = J_4` (all ones), `A_31 = I_4` and
/// `A_23` mapping `e_1 ↦ rows 1..3`, `e_4 ↦ row 4`.
pub fn twelve_by_twelve() -> ComplexMatrix {
    let a23 = [
        [1.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ];
    ComplexMatrix::from_fn(12, 12, |i, j| {
        let v = match (i / 4, j / 4) {
            (0, 1) => 1.0,
            (1, 2) => a23[i % 4][j % 4],
            (2, 0) if i % 4 == j % 4 => 1.0,
            _ => 0.0,
        };
        crate::matrix::re(v)
    })
}

pub fn twelve_by_twelve_partition() -> CyclicPartition {
    CyclicPartition::consecutive(&[4, 4, 4]).expect("static partition")
}

/// Singular bipartite matrix with equal class sizes.
pub fn bipartite_remark() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 1.0, 1.0],
        [1.0, 1.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0],
    ])
    .expect("static matrix")
}
