//! Block algebra of h-cyclic matrices in consecutive form.
//!
//! With classes `V_1, …, V_h` laid out consecutively the only nonzero blocks
//! are `A_{i,i+1} = A(V_i, V_{i+1})` (and the corner block `A_{h,1}`). The
//! partial products
//!
//! ```text
//! B_{ip} = A_{α^{h-p}(i), α^{h-p+1}(i)} ⋯ A_{α^{h-1}(i), i}
//! ```
//!
//! walk `p` steps backwards around the cycle and end in class `i`; `B_i = B_{ih}`
//! is square and is the `i`-th diagonal block of `A^h`.

use crate::digraph::{ensure_h_cyclic, CyclicPartition};
use crate::eigen;
use crate::error::{Error, Result};
use crate::matrix::{null_space, submatrix, C64, ComplexMatrix, Tolerance};

/// The `h` nonzero blocks of a consecutive h-cyclic matrix; `block(i)` is
/// `A_{i,α(i)}` so `block(h)` is the corner block `A_{h,1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCycle {
    sizes: Vec<usize>,
    blocks: Vec<ComplexMatrix>,
}

impl BlockCycle {
    pub fn new(blocks: Vec<ComplexMatrix>) -> Result<Self> {
        let h = blocks.len();
        if h == 0 {
            return Err(Error::InvalidArgument("empty block cycle".into()));
        }
        for i in 0..h {
            let next = &blocks[(i + 1) % h];
            if blocks[i].cols() != next.rows() {
                return Err(Error::DimensionMismatch(format!(
                    "block {} has {} columns but block {} has {} rows",
                    i + 1,
                    blocks[i].cols(),
                    (i + 1) % h + 1,
                    next.rows()
                )));
            }
        }
        let sizes = blocks.iter().map(ComplexMatrix::rows).collect();
        Ok(BlockCycle { sizes, blocks })
    }

    pub fn h(&self) -> usize {
        self.blocks.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `A_{i,α(i)}` for 1-based `i`.
    pub fn block(&self, i: usize) -> &ComplexMatrix {
        &self.blocks[i - 1]
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    fn alpha_pow(&self, i: usize, p: i64) -> usize {
        ((i as i64 - 1 + p).rem_euclid(self.h() as i64) + 1) as usize
    }

    /// Assembles the consecutive h-cyclic matrix these blocks describe.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = self.n();
        let offsets: Vec<usize> = self
            .sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        let mut a = ComplexMatrix::zeros(n, n);
        for (i, b) in self.blocks.iter().enumerate() {
            let (r0, c0) = (offsets[i], offsets[(i + 1) % self.h()]);
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    a[(r0 + r, c0 + c)] = b[(r, c)];
                }
            }
        }
        a
    }
}

/// Reads `A(V_i, V_{α(i)})` for every class without checking the zero pattern.
pub(crate) fn collect_blocks(a: &ComplexMatrix, p: &CyclicPartition) -> Result<BlockCycle> {
    p.check_order(a.rows())?;
    let blocks = (1..=p.h())
        .map(|i| submatrix(a, p.class(i), p.class(p.alpha(i))))
        .collect::<Result<Vec<_>>>()?;
    BlockCycle::new(blocks)
}

/// The off-diagonal blocks of a consecutive h-cyclic matrix.
///
/// Fails when `P` is not consecutive or some arc leaves the block pattern.
pub fn extract_blocks(a: &ComplexMatrix, p: &CyclicPartition, tol: Tolerance) -> Result<BlockCycle> {
    p.check_order(a.rows())?;
    if !p.is_consecutive() {
        return Err(Error::NotConsecutive);
    }
    ensure_h_cyclic(a, p, tol)?;
    collect_blocks(a, p)
}

/// `B_{ip}` for class `i ∈ 1..=h` and `p ∈ 1..=h`.
pub fn partial_product(b: &BlockCycle, i: usize, p: usize) -> Result<ComplexMatrix> {
    let h = b.h();
    if i == 0 || i > h {
        return Err(Error::IndexOutOfRange(format!("class {i} not in 1..={h}")));
    }
    if p == 0 || p > h {
        return Err(Error::IndexOutOfRange(format!("product length {p} not in 1..={h}")));
    }
    let first = h + 1 - p;
    let mut prod = b.block(b.alpha_pow(i, first as i64 - 1)).clone();
    for j in (first + 1)..=h {
        prod = prod.matmul(b.block(b.alpha_pow(i, j as i64 - 1)))?;
    }
    Ok(prod)
}

/// `(B_1, …, B_h)` from a direct computation of `A^h`, checked against the
/// block products. The off-diagonal blocks of `A^h` must vanish.
pub fn block_diagonal_power(
    a: &ComplexMatrix,
    p: &CyclicPartition,
    tol: Tolerance,
) -> Result<Vec<ComplexMatrix>> {
    let cycle = extract_blocks(a, p, tol)?;
    let h = p.h();
    let ah = a.pow(h as u32)?;
    let limit = tol.eps() * a.norm_inf().max(1.0).powi(h as i32);

    let mut out = Vec::with_capacity(h);
    for i in 1..=h {
        for j in 1..=h {
            let blk = submatrix(&ah, p.class(i), p.class(j))?;
            if i == j {
                let expected = partial_product(&cycle, i, h)?;
                let diff = blk.max_abs_diff(&expected)?;
                if diff > limit {
                    return Err(Error::Numerical(format!(
                        "diagonal block {i} of A^h differs from B_{i} by {diff:.3e}"
                    )));
                }
                out.push(blk);
            } else if blk.max_abs() > limit {
                return Err(Error::Numerical(format!(
                    "block ({i}, {j}) of A^h has magnitude {:.3e}",
                    blk.max_abs()
                )));
            }
        }
    }
    Ok(out)
}

/// Spectrum of an h-cyclic matrix predicted from `B_1`: `zero_count` zeros and,
/// for each nonzero eigenvalue of `B_1`, its `h` distinct h-th roots.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPrediction {
    pub h: usize,
    pub zero_count: usize,
    /// Nonzero eigenvalues of `B_1`, largest modulus first.
    pub base: Vec<C64>,
    /// `root_orbits[j][k]` is the `k`-th h-th root of `base[j]`.
    pub root_orbits: Vec<Vec<C64>>,
}

impl SpectrumPrediction {
    /// All `n` eigenvalues, zeros first.
    pub fn eigenvalues(&self) -> Vec<C64> {
        std::iter::repeat_n(C64::new(0.0, 0.0), self.zero_count)
            .chain(self.root_orbits.iter().flatten().copied())
            .collect()
    }
}

/// The h-th roots `|λ|^{1/h} exp(i(arg λ + 2πk)/h)`, `k = 0..h`, with the
/// principal argument taken in `(−π, π]`.
pub fn h_th_roots(lambda: C64, h: usize) -> Vec<C64> {
    let mut arg = lambda.arg();
    if arg <= -std::f64::consts::PI {
        arg = std::f64::consts::PI;
    }
    let r = lambda.norm().powf(1.0 / h as f64);
    (0..h)
        .map(|k| C64::from_polar(r, (arg + 2.0 * std::f64::consts::PI * k as f64) / h as f64))
        .collect()
}

pub fn mirsky_spectrum(
    a: &ComplexMatrix,
    p: &CyclicPartition,
    tol: Tolerance,
) -> Result<SpectrumPrediction> {
    ensure_h_cyclic(a, p, tol)?;
    let cycle = collect_blocks(a, p)?;
    let h = p.h();
    let b1 = partial_product(&cycle, 1, h)?;
    let cutoff = tol.eps() * b1.norm_inf().max(1.0);
    let mut base: Vec<C64> = eigen::eigenvalues(&b1)?
        .into_iter()
        .filter(|z| z.norm() > cutoff)
        .collect();
    base.sort_by(|x, y| {
        y.norm()
            .total_cmp(&x.norm())
            .then(x.arg().total_cmp(&y.arg()))
    });
    let n = a.rows();
    let zero_count = n
        .checked_sub(h * base.len())
        .ok_or_else(|| Error::Numerical("B_1 has more nonzero eigenvalues than n / h".into()))?;
    let root_orbits = base.iter().map(|&l| h_th_roots(l, h)).collect();
    Ok(SpectrumPrediction {
        h,
        zero_count,
        base,
        root_orbits,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub singular: bool,
    /// 1-based classes whose `B_i` is rank deficient.
    pub singular_blocks: Vec<usize>,
    pub sizes_equal: bool,
    pub h_divides_n: bool,
}

/// Singularity of `A` read off the `B_i`, together with the class-size facts
/// every nonsingular h-cyclic matrix must satisfy (equal classes, `h | n`).
pub fn nonsingular_structure_check(
    a: &ComplexMatrix,
    p: &CyclicPartition,
    tol: Tolerance,
) -> Result<StructureReport> {
    ensure_h_cyclic(a, p, tol)?;
    let cycle = collect_blocks(a, p)?;
    let h = p.h();
    let mut singular_blocks = Vec::new();
    for i in 1..=h {
        let bi = partial_product(&cycle, i, h)?;
        if null_space(&bi, tol).rank < bi.rows() {
            singular_blocks.push(i);
        }
    }
    let sizes = p.sizes();
    let report = StructureReport {
        singular: !singular_blocks.is_empty(),
        singular_blocks,
        sizes_equal: sizes.windows(2).all(|w| w[0] == w[1]),
        h_divides_n: a.rows().is_multiple_of(h),
    };
    if !report.singular && !(report.sizes_equal && report.h_divides_n) {
        return Err(Error::Numerical(
            "nonsingular h-cyclic matrix reported with unequal classes".into(),
        ));
    }
    Ok(report)
}
