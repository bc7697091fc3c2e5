//! Jordan chains of h-cyclic matrices: checking them, rotating them through
//! the h-th roots of unity, building zero-eigenvalue chains from kernels of
//! the block products, and synthesizing an h-cyclic matrix back from
//! rotation-symmetric chain data.
//!
//! Right chains follow `A x_1 = λ x_1`, `A x_j = λ x_j + x_{j−1}`. Left chains
//! run the other way, `y_pᵀA = λ y_pᵀ`, `y_jᵀA = λ y_jᵀ + y_{j+1}ᵀ`, so that the
//! rows of `S⁻¹` in `A = S J S⁻¹` form left chains in the same order as the
//! columns of `S`.

use crate::blocks::{collect_blocks, partial_product};
use crate::circulant::omega_pow;
use crate::digraph::{ensure_h_cyclic, CyclicPartition};
use crate::error::{Error, Result};
use crate::matrix::{
    hadamard, jordan_block, null_space, null_space_below, re, vec_norm_inf, C64, ComplexMatrix,
    Tolerance,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Right,
    Left,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Right => "right",
            Orientation::Left => "left",
        }
    }
}

/// An eigenvalue with an ordered list of chain vectors `(x_1, …, x_p)`.
///
/// Construction only checks shapes; use [`verify_chain`] for the recursion.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanChain {
    eigenvalue: C64,
    orientation: Orientation,
    vectors: Vec<Vec<C64>>,
}

impl JordanChain {
    pub fn new(eigenvalue: C64, orientation: Orientation, vectors: Vec<Vec<C64>>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidArgument("a chain needs at least one vector".into()));
        };
        let n = first.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("chain vectors are empty".into()));
        }
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch("chain vectors have different lengths".into()));
        }
        if !(eigenvalue.re.is_finite() && eigenvalue.im.is_finite())
            || vectors.iter().flatten().any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::InvalidArgument("chain contains non-finite values".into()));
        }
        Ok(JordanChain {
            eigenvalue,
            orientation,
            vectors,
        })
    }

    pub fn right(eigenvalue: C64, vectors: Vec<Vec<C64>>) -> Result<Self> {
        Self::new(eigenvalue, Orientation::Right, vectors)
    }

    pub fn left(eigenvalue: C64, vectors: Vec<Vec<C64>>) -> Result<Self> {
        Self::new(eigenvalue, Orientation::Left, vectors)
    }

    pub fn eigenvalue(&self) -> C64 {
        self.eigenvalue
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    /// `x_j`, 1-based.
    pub fn vector(&self, j: usize) -> &[C64] {
        &self.vectors[j - 1]
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    /// Always false; a chain has at least one vector.
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Order of the vectors.
    pub fn n(&self) -> usize {
        self.vectors[0].len()
    }

    fn expect(&self, o: Orientation) -> Result<()> {
        if self.orientation == o {
            Ok(())
        } else {
            Err(Error::Orientation {
                expected: o.as_str(),
            })
        }
    }
}

/// Scaled residuals behind [`verify_chain`].
///
/// The recursion residual is divided by `max(1, ‖A‖_∞ + |λ|)·max_j ‖x_j‖_∞`.
/// The power residual compares `x_k` with `(A − λ)^{p−k} x_p`, divided by
/// `max(1, ‖A‖_∞ + |λ|)^{p−k}·max_j ‖x_j‖_∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainCheck {
    pub recursion_residual: f64,
    pub power_residual: f64,
    pub rank: usize,
    pub length: usize,
}

impl ChainCheck {
    pub fn passes(&self, tol: Tolerance) -> bool {
        self.rank == self.length
            && self.recursion_residual <= tol.eps()
            && self.power_residual <= tol.eps()
    }
}

fn apply(a: &ComplexMatrix, o: Orientation, v: &[C64]) -> Result<Vec<C64>> {
    match o {
        Orientation::Right => a.mul_vec(v),
        Orientation::Left => a.vec_mul(v),
    }
}

fn axpy(y: &mut [C64], c: C64, x: &[C64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

pub fn chain_check(a: &ComplexMatrix, c: &JordanChain, tol: Tolerance) -> Result<ChainCheck> {
    if !a.is_square() || a.rows() != c.n() {
        return Err(Error::DimensionMismatch(format!(
            "chain vectors of length {} against a {}x{} matrix",
            c.n(),
            a.rows(),
            a.cols()
        )));
    }
    let p = c.len();
    let lambda = c.eigenvalue;
    let xmax = c.vectors.iter().map(|v| vec_norm_inf(v)).fold(0.0, f64::max);
    let mscale = (a.norm_inf() + lambda.norm()).max(1.0);
    let scale = mscale * xmax;
    let rel = |r: f64| if scale > 0.0 { r / scale } else { r };

    // (A − λ)x_j − x_{j−1} for right chains, yᵀ(A − λ) − y_{j+1}ᵀ for left ones.
    let predecessor = |j: usize| -> Option<usize> {
        match c.orientation {
            Orientation::Right => (j > 0).then(|| j - 1),
            Orientation::Left => (j + 1 < p).then_some(j + 1),
        }
    };
    let mut recursion: f64 = 0.0;
    for j in 0..p {
        let mut r = apply(a, c.orientation, &c.vectors[j])?;
        axpy(&mut r, -lambda, &c.vectors[j]);
        if let Some(k) = predecessor(j) {
            axpy(&mut r, re(-1.0), &c.vectors[k]);
        }
        recursion = recursion.max(vec_norm_inf(&r));
    }

    // x_k = (A − λ)^{p−k} x_p, or y_j = y_1 (A − λ)^{j−1} for left chains.
    let (start, order): (usize, Vec<usize>) = match c.orientation {
        Orientation::Right => (p - 1, (0..p - 1).rev().collect()),
        Orientation::Left => (0, (1..p).collect()),
    };
    let mut power: f64 = 0.0;
    let mut w = c.vectors[start].clone();
    let mut growth = 1.0;
    for k in order {
        let mut next = apply(a, c.orientation, &w)?;
        axpy(&mut next, -lambda, &w);
        w = next;
        growth *= mscale;
        let diff = w
            .iter()
            .zip(&c.vectors[k])
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        power = power.max(diff / growth);
    }

    let stacked = ComplexMatrix::from_columns(&c.vectors)?;
    let rank = null_space(&stacked, tol).rank;
    Ok(ChainCheck {
        recursion_residual: rel(recursion),
        power_residual: if xmax > 0.0 { power / xmax } else { power },
        rank,
        length: p,
    })
}

/// True when the chain recursion holds to within eps (after scaling) and the
/// vectors are numerically independent.
pub fn verify_chain(a: &ComplexMatrix, c: &JordanChain, tol: Tolerance) -> Result<bool> {
    Ok(chain_check(a, c, tol)?.passes(tol))
}

fn rotate(c: &JordanChain, p: &CyclicPartition, k: i64, transposed: bool) -> Result<JordanChain> {
    p.check_order(c.n())?;
    let h = p.h();
    let vectors = c
        .vectors
        .iter()
        .enumerate()
        .map(|(jj, v)| {
            let j = jj as i64 + 1;
            v.iter()
                .enumerate()
                .map(|(idx, &z)| {
                    let i = p.class_of(idx + 1) as i64;
                    let e = if transposed { p.exponent(j, i) } else { p.exponent(i, j) };
                    z * omega_pow(h, k * e as i64)
                })
                .collect()
        })
        .collect();
    JordanChain::new(c.eigenvalue * omega_pow(h, k), c.orientation, vectors)
}

/// Right chain at `λω^k`: block `i` of `x_j` picks up `(ω^k)^{(i−j) mod h}`.
pub fn rotate_right_chain(c: &JordanChain, p: &CyclicPartition, k: i64) -> Result<JordanChain> {
    c.expect(Orientation::Right)?;
    if k.rem_euclid(p.h() as i64) == 0 {
        p.check_order(c.n())?;
        return Ok(c.clone());
    }
    rotate(c, p, k, false)
}

/// Left chain at `λω^k`: block `i` of `y_j` picks up `(ω^k)^{(j−i) mod h}`.
pub fn rotate_left_chain(c: &JordanChain, p: &CyclicPartition, k: i64) -> Result<JordanChain> {
    c.expect(Orientation::Left)?;
    if k.rem_euclid(p.h() as i64) == 0 {
        p.check_order(c.n())?;
        return Ok(c.clone());
    }
    rotate(c, p, k, true)
}

/// The length-`n` vector equal to `x` on class `i` and zero elsewhere.
pub fn embed_null_vector(x: &[C64], i: usize, p: &CyclicPartition) -> Result<Vec<C64>> {
    if i == 0 || i > p.h() {
        return Err(Error::IndexOutOfRange(format!("class {i} not in 1..={}", p.h())));
    }
    let class = p.class(i);
    if x.len() != class.len() {
        return Err(Error::DimensionMismatch(format!(
            "class {i} has {} vertices, vector has {} entries",
            class.len(),
            x.len()
        )));
    }
    let mut v = vec![C64::new(0.0, 0.0); p.n()];
    for (&vertex, &z) in class.iter().zip(x) {
        v[vertex - 1] = z;
    }
    Ok(v)
}

/// A zero-eigenvalue chain grown from a kernel vector of `B_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroChainReport {
    pub class: usize,
    pub seed: Vec<C64>,
    pub length: usize,
    pub chain: JordanChain,
}

/// Builds `w_k = A^{p−k} v` for the smallest `p` with `A^p v = 0`.
///
/// `x` must lie in the kernel of `B_i`; the minimal `p` is cross-checked
/// against the partial products `B_iq x`.
pub fn zero_chain_from_null_vector(
    a: &ComplexMatrix,
    p: &CyclicPartition,
    i: usize,
    x: &[C64],
    tol: Tolerance,
) -> Result<ZeroChainReport> {
    ensure_h_cyclic(a, p, tol)?;
    let v = embed_null_vector(x, i, p)?;
    let xnorm = vec_norm_inf(x);
    if xnorm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let h = p.h();
    let cycle = collect_blocks(a, p)?;
    let bi = partial_product(&cycle, i, h)?;
    let residual = vec_norm_inf(&bi.mul_vec(x)?);
    if residual > tol.eps() * bi.norm_inf() * xnorm {
        return Err(Error::NotInNullSpace {
            class: i,
            residual,
        });
    }

    let anorm = a.norm_inf();
    let mut powers = vec![v];
    let mut length = None;
    for q in 1..=h {
        let w = a.mul_vec(powers.last().expect("nonempty"))?;
        let limit = tol.eps() * anorm.powi(q as i32) * xnorm;
        let via_blocks = vec_norm_inf(&partial_product(&cycle, i, q)?.mul_vec(x)?) <= limit;
        let direct = vec_norm_inf(&w) <= limit;
        if via_blocks != direct {
            return Err(Error::Numerical(format!(
                "A^{q} v and B_{i}{q} x disagree about vanishing"
            )));
        }
        if direct {
            length = Some(q);
            break;
        }
        powers.push(w);
    }
    let length = length.ok_or_else(|| {
        Error::Numerical(format!("A^{h} v does not vanish for a kernel vector of B_{i}"))
    })?;

    // powers = [v, Av, …, A^{p−1}v]; w_1 = A^{p−1}v comes first.
    powers.reverse();
    let chain = JordanChain::right(C64::new(0.0, 0.0), powers)?;
    let check = chain_check(a, &chain, tol)?;
    if !check.passes(tol) {
        return Err(Error::Numerical(format!(
            "zero chain from class {i} fails verification (rank {} of {}, residual {:.3e})",
            check.rank, check.length, check.recursion_residual
        )));
    }
    Ok(ZeroChainReport {
        class: i,
        seed: x.to_vec(),
        length,
        chain,
    })
}

/// `w_k = nullity(A^k) − nullity(A^{k−1})` for `k = 1, 2, …` until it vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeyrCharacteristic {
    pub weights: Vec<usize>,
}

impl WeyrCharacteristic {
    /// Algebraic multiplicity of zero.
    pub fn multiplicity(&self) -> usize {
        self.weights.iter().sum()
    }

    /// Sizes of the zero Jordan blocks, largest first.
    pub fn conjugate(&self) -> Vec<usize> {
        conjugate_partition(&self.weights)
    }
}

/// Conjugate of a weakly decreasing partition.
pub fn conjugate_partition(parts: &[usize]) -> Vec<usize> {
    let largest = parts.iter().copied().max().unwrap_or(0);
    (1..=largest)
        .map(|t| parts.iter().filter(|&&w| w >= t).count())
        .collect()
}

fn normalized(v: Vec<C64>) -> Vec<C64> {
    let s = vec_norm_inf(&v);
    if s > 0.0 {
        v.into_iter().map(|z| z / s).collect()
    } else {
        v
    }
}

/// Weyr characteristic of `A` at zero.
///
/// `ker A^k` is grown one step at a time as `{x : A x ∈ ker A^{k−1}}`, i.e. the
/// kernel of `[A | −K]` with `K` a basis of the previous kernel. This keeps
/// every rank decision on a matrix of the same scale as `A` instead of on the
/// powers themselves.
pub fn weyr_zero(a: &ComplexMatrix, tol: Tolerance) -> Result<WeyrCharacteristic> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("Weyr characteristic of a non-square matrix".into()));
    }
    let n = a.rows();
    let mut kernel: Vec<Vec<C64>> = Vec::new();
    let mut weights = Vec::new();
    loop {
        let d = kernel.len();
        let m = ComplexMatrix::from_fn(n, n + d, |r, c| {
            if c < n {
                a[(r, c)]
            } else {
                -kernel[c - n][r]
            }
        });
        let ns = null_space_below(&m, tol.eps() * m.max_abs());
        let next: Vec<Vec<C64>> = ns
            .basis
            .into_iter()
            .map(|b| normalized(b[..n].to_vec()))
            .collect();
        if next.len() <= d {
            break;
        }
        weights.push(next.len() - d);
        kernel = next;
        if kernel.len() == n {
            break;
        }
    }
    Ok(WeyrCharacteristic { weights })
}

/// Zero chains found in one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassChains {
    pub class: usize,
    pub reports: Vec<ZeroChainReport>,
}

impl ClassChains {
    pub fn lengths(&self) -> Vec<usize> {
        self.reports.iter().map(|r| r.length).collect()
    }
}

/// Raw per-class zero chains plus the Weyr characteristic of the whole matrix.
///
/// Chains from different classes can span overlapping subspaces, so the
/// per-class lengths are not a Jordan structure by themselves;
/// `block_sizes` (the conjugate of `weyr`) is.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroChainSummary {
    pub classes: Vec<ClassChains>,
    pub weyr: WeyrCharacteristic,
    pub block_sizes: Vec<usize>,
    pub may_be_redundant: bool,
}

impl ZeroChainSummary {
    pub fn is_empty(&self) -> bool {
        self.classes.iter().all(|c| c.reports.is_empty())
    }

    pub fn lengths(&self, class: usize) -> Vec<usize> {
        self.classes
            .iter()
            .find(|c| c.class == class)
            .map(ClassChains::lengths)
            .unwrap_or_default()
    }
}

/// One chain per kernel basis vector of each singular `B_i`.
pub fn zero_chains_all(
    a: &ComplexMatrix,
    p: &CyclicPartition,
    tol: Tolerance,
) -> Result<ZeroChainSummary> {
    ensure_h_cyclic(a, p, tol)?;
    let cycle = collect_blocks(a, p)?;
    let mut classes = Vec::new();
    for i in 1..=p.h() {
        let bi = partial_product(&cycle, i, p.h())?;
        let reports = null_space(&bi, tol)
            .basis
            .iter()
            .map(|x| zero_chain_from_null_vector(a, p, i, x, tol))
            .collect::<Result<Vec<_>>>()?;
        if !reports.is_empty() {
            classes.push(ClassChains { class: i, reports });
        }
    }
    let weyr = weyr_zero(a, tol)?;
    let block_sizes = weyr.conjugate();
    let may_be_redundant = classes.len() > 1;
    Ok(ZeroChainSummary {
        classes,
        weyr,
        block_sizes,
        may_be_redundant,
    })
}

/// Base right and left chains for one eigenvalue orbit `{λω^k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOrbit {
    pub right: JordanChain,
    pub left: JordanChain,
}

/// `S` (columns), `Y` (rows) and `J` for a list of orbits: orbit by orbit,
/// then `k = 0..h`, then chain position.
fn assemble(
    orbits: &[ChainOrbit],
    p: &CyclicPartition,
) -> Result<(ComplexMatrix, ComplexMatrix, ComplexMatrix)> {
    let h = p.h();
    let n = p.n();
    let mut columns = Vec::with_capacity(n);
    let mut rows = Vec::with_capacity(n);
    let mut diag = Vec::new();
    for o in orbits {
        for k in 0..h as i64 {
            let r = rotate_right_chain(&o.right, p, k)?;
            let l = rotate_left_chain(&o.left, p, k)?;
            columns.extend(r.vectors.iter().cloned());
            rows.extend(l.vectors.iter().cloned());
            diag.push(jordan_block(r.len(), r.eigenvalue)?);
        }
    }
    let s = ComplexMatrix::from_columns(&columns)?;
    let y = ComplexMatrix::from_rows(&rows)?;
    let mut j = ComplexMatrix::zeros(n, n);
    let mut off = 0;
    for b in diag {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                j[(off + r, off + c)] = b[(r, c)];
            }
        }
        off += b.rows();
    }
    Ok((s, y, j))
}

/// Synthesizes `A = Σ_i A_i` from one base right/left chain pair per orbit,
/// where each `A_i` keeps only the block pattern of `P` (scaled by `h`) of
/// `λ_i Σ_j x_j y_jᵀ + Σ_{j<p} x_j y_{j+1}ᵀ`.
///
/// The rotated chains must form a biorthogonal basis (`Y S = I`); the result
/// is checked to satisfy `A S = S J` and `Y A = J Y`.
pub fn reconstruct_from_chains(
    orbits: &[ChainOrbit],
    p: &CyclicPartition,
    tol: Tolerance,
) -> Result<ComplexMatrix> {
    let h = p.h();
    let n = p.n();
    if orbits.is_empty() {
        return Err(Error::InvalidArgument("no chains given".into()));
    }
    for (idx, o) in orbits.iter().enumerate() {
        o.right.expect(Orientation::Right)?;
        o.left.expect(Orientation::Left)?;
        if o.right.n() != n || o.left.n() != n {
            return Err(Error::DimensionMismatch(format!(
                "orbit {} has vectors of length {}/{}, partition covers {n}",
                idx + 1,
                o.right.n(),
                o.left.n()
            )));
        }
        if o.right.len() != o.left.len() {
            return Err(Error::Hypothesis(format!(
                "orbit {}: right chain has {} vectors, left chain {}",
                idx + 1,
                o.right.len(),
                o.left.len()
            )));
        }
        if !tol.eq(o.right.eigenvalue, o.left.eigenvalue) {
            return Err(Error::Hypothesis(format!(
                "orbit {}: right and left eigenvalues differ",
                idx + 1
            )));
        }
    }
    let total: usize = orbits.iter().map(|o| h * o.right.len()).sum();
    if total != n {
        return Err(Error::Hypothesis(format!(
            "rotated chains supply {total} vectors for order {n}"
        )));
    }

    let (s, y, j) = assemble(orbits, p)?;
    if null_space(&s, tol).rank < n {
        return Err(Error::Singular);
    }
    let scale = (y.norm_inf() * s.norm_inf()).max(1.0);
    let ys = y.matmul(&s)?;
    let bio = ys.max_abs_diff(&ComplexMatrix::identity(n))?;
    if bio > tol.eps() * scale {
        return Err(Error::Hypothesis(format!(
            "left chains are not biorthogonal to the right chains (‖YS − I‖ = {bio:.3e})"
        )));
    }

    let mask = ComplexMatrix::from_fn(n, n, |r, c| {
        if p.class_of(c + 1) == p.alpha(p.class_of(r + 1)) {
            re(h as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let mut a = ComplexMatrix::zeros(n, n);
    for o in orbits {
        let len = o.right.len();
        let lambda = o.right.eigenvalue;
        for jj in 1..=len {
            let x = o.right.vector(jj);
            let mut outer = ComplexMatrix::from_fn(n, n, |r, c| lambda * x[r] * o.left.vector(jj)[c]);
            if jj < len {
                let y_next = o.left.vector(jj + 1);
                outer = &outer + &ComplexMatrix::from_fn(n, n, |r, c| x[r] * y_next[c]);
            }
            a = &a + &hadamard(&mask, &outer)?;
        }
    }

    let res_scale = (a.norm_inf() + j.norm_inf()).max(1.0) * s.norm_inf().max(y.norm_inf());
    let right_res = a.matmul(&s)?.max_abs_diff(&s.matmul(&j)?)?;
    let left_res = y.matmul(&a)?.max_abs_diff(&j.matmul(&y)?)?;
    if right_res.max(left_res) > tol.eps() * res_scale {
        return Err(Error::Hypothesis(format!(
            "rotated chains are not Jordan chains of the synthesized matrix (residual {:.3e})",
            right_res.max(left_res)
        )));
    }
    ensure_h_cyclic(&a, p, tol).map_err(|e| match e {
        Error::NotCyclic(r, c) => {
            Error::Numerical(format!("synthesized matrix has an arc ({r}, {c}) off the pattern"))
        }
        other => other,
    })?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn rv(x: &[f64]) -> Vec<C64> {
        x.iter().map(|&t| re(t)).collect()
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn six_by_six_chain_and_rotation() {
        let a = samples::six_by_six();
        let p = samples::six_by_six_partition();
        let c = JordanChain::right(
            re(0.0),
            vec![rv(&[0., 1., -1., 0., 0., 0.]), rv(&[0., 0., 0., 0., 1., -1.])],
        )
        .unwrap();
        assert!(verify_chain(&a, &c, tol()).unwrap());

        let r = rotate_right_chain(&c, &p, 1).unwrap();
        let w = omega_pow(3, 1);
        let z = C64::new(0.0, 0.0);
        let x1 = [z, w, -w, z, z, z];
        let x2 = [z, z, z, z, w, -w];
        for (got, want) in r.vectors().iter().zip([&x1[..], &x2[..]]) {
            for (g, e) in got.iter().zip(want) {
                assert!((g - e).norm() <= 1e-12);
            }
        }
        assert!(tol().is_zero(r.eigenvalue()));
        assert!(verify_chain(&a, &r, tol()).unwrap());
        assert_eq!(rotate_right_chain(&c, &p, 0).unwrap(), c);
        assert_eq!(rotate_right_chain(&c, &p, 3).unwrap(), c);
    }

    #[test]
    fn verify_examples() {
        let k3 = crate::circulant::basic_circulant(3).unwrap();
        let ones = JordanChain::right(re(1.0), vec![rv(&[1., 1., 1.])]).unwrap();
        assert!(verify_chain(&k3, &ones, tol()).unwrap());
        let x = rv(&[1., 1., 1.]);
        let dup = JordanChain::right(re(1.0), vec![x.clone(), x]).unwrap();
        assert!(!verify_chain(&k3, &dup, tol()).unwrap());
        let short = JordanChain::right(re(1.0), vec![rv(&[1., 1.])]).unwrap();
        assert!(verify_chain(&k3, &short, tol()).is_err());
        let zero = JordanChain::right(re(0.0), vec![rv(&[0., 0., 0.])]).unwrap();
        assert!(!verify_chain(&k3, &zero, tol()).unwrap());
    }

    #[test]
    fn left_chain_on_jordan_block() {
        // rows of the identity are a left chain of J_3(λ) read in reverse roles
        let lam = C64::new(0.5, -1.0);
        let j = jordan_block(3, lam).unwrap();
        let left = JordanChain::left(lam, vec![rv(&[1., 0., 0.]), rv(&[0., 1., 0.]), rv(&[0., 0., 1.])])
            .unwrap();
        assert!(verify_chain(&j, &left, tol()).unwrap());
        let right = JordanChain::right(lam, left.vectors().to_vec()).unwrap();
        assert!(verify_chain(&j, &right, tol()).unwrap());
        let wrong = JordanChain::left(lam, vec![rv(&[0., 0., 1.]), rv(&[0., 1., 0.]), rv(&[1., 0., 0.])])
            .unwrap();
        assert!(!verify_chain(&j, &wrong, tol()).unwrap());
    }

    #[test]
    fn orientation_is_enforced() {
        let p = samples::six_by_six_partition();
        let c = JordanChain::left(re(0.0), vec![rv(&[1., 0., 0., 0., 0., 0.])]).unwrap();
        assert!(matches!(rotate_right_chain(&c, &p, 1), Err(Error::Orientation { .. })));
        let c = JordanChain::right(re(0.0), vec![rv(&[1., 0., 0., 0., 0., 0.])]).unwrap();
        assert!(matches!(rotate_left_chain(&c, &p, 1), Err(Error::Orientation { .. })));
    }

    #[test]
    fn embed_examples() {
        let p = samples::twelve_by_twelve_partition();
        let x = rv(&[-1. / 3., 0., 0., 1.]);
        let v = embed_null_vector(&x, 1, &p).unwrap();
        assert_eq!(&v[..4], &x[..]);
        assert!(v[4..].iter().all(|z| *z == C64::new(0.0, 0.0)));
        let v = embed_null_vector(&x, 3, &p).unwrap();
        assert!(v[..8].iter().all(|z| *z == C64::new(0.0, 0.0)));
        assert_eq!(&v[8..], &x[..]);
        let v = embed_null_vector(&rv(&[0.; 4]), 2, &p).unwrap();
        assert!(v.iter().all(|z| *z == C64::new(0.0, 0.0)));
        assert!(embed_null_vector(&rv(&[1.; 3]), 1, &p).is_err());
        assert!(embed_null_vector(&x, 4, &p).is_err());
    }

    #[test]
    fn twelve_by_twelve_zero_chains() {
        let a = samples::twelve_by_twelve();
        let p = samples::twelve_by_twelve_partition();
        let len = |i, x: &[f64]| zero_chain_from_null_vector(&a, &p, i, &rv(x), tol()).unwrap().length;
        assert_eq!(len(1, &[-1. / 3., 0., 0., 1.]), 3);
        assert_eq!(len(1, &[0., 1., 0., 0.]), 2);
        assert_eq!(len(1, &[0., 0., 1., 0.]), 2);

        let all = zero_chains_all(&a, &p, tol()).unwrap();
        let mut l1 = all.lengths(1);
        l1.sort_unstable();
        assert_eq!(l1, vec![2, 2, 3]);
        assert_eq!(all.lengths(2), vec![1, 1, 1]);
        let l3 = all.lengths(3);
        assert!(!l3.is_empty() && l3.iter().all(|l| [1, 2].contains(l)));
        assert_eq!(all.weyr.weights, vec![5, 3, 1]);
        assert_eq!(all.block_sizes, vec![3, 2, 2, 1, 1]);
        assert!(all.may_be_redundant);
    }

    #[test]
    fn zero_chain_errors() {
        let a = samples::twelve_by_twelve();
        let p = samples::twelve_by_twelve_partition();
        assert!(matches!(
            zero_chain_from_null_vector(&a, &p, 1, &rv(&[0.; 4]), tol()),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            zero_chain_from_null_vector(&a, &p, 1, &rv(&[1., 0., 0., 0.]), tol()),
            Err(Error::NotInNullSpace { class: 1, .. })
        ));
    }

    #[test]
    fn weyr_examples() {
        assert_eq!(weyr_zero(&samples::six_by_six(), tol()).unwrap().weights, vec![2, 1]);
        assert_eq!(weyr_zero(&samples::twelve_by_twelve(), tol()).unwrap().weights, vec![5, 3, 1]);
        let k3 = crate::circulant::basic_circulant(3).unwrap();
        assert!(weyr_zero(&k3, tol()).unwrap().weights.is_empty());
        assert_eq!(weyr_zero(&ComplexMatrix::zeros(3, 3), tol()).unwrap().weights, vec![3]);
        assert_eq!(weyr_zero(&jordan_block(4, re(0.0)).unwrap(), tol()).unwrap().weights, vec![1; 4]);
        assert_eq!(conjugate_partition(&[5, 3, 1]), vec![3, 2, 2, 1, 1]);
    }

    #[test]
    fn nonsingular_has_no_zero_chains() {
        let k3 = crate::circulant::basic_circulant(3).unwrap();
        let p = CyclicPartition::consecutive(&[1, 1, 1]).unwrap();
        assert!(zero_chains_all(&k3, &p, tol()).unwrap().is_empty());
    }

    fn bipartite_orbits() -> (Vec<ChainOrbit>, CyclicPartition) {
        // S = [x01 x02 x11 x12] with a = 0, b = 1, c = 0, d = 1 and x = 1, y = 0, z = 1, w = 0
        let p = CyclicPartition::consecutive(&[2, 2]).unwrap();
        let s = ComplexMatrix::from_real_rows(&[
            [1., 0., 1., 0.],
            [0., 1., 0., -1.],
            [1., 0., -1., 0.],
            [0., 1., 0., 1.],
        ])
        .unwrap();
        let y = s.inverse().unwrap();
        let right = JordanChain::right(re(0.0), vec![s.col(0), s.col(1)]).unwrap();
        let left = JordanChain::left(re(0.0), vec![y.row(0).to_vec(), y.row(1).to_vec()]).unwrap();
        (vec![ChainOrbit { right, left }], p)
    }

    #[test]
    fn bipartite_reconstruction() {
        let (orbits, p) = bipartite_orbits();
        let a = reconstruct_from_chains(&orbits, &p, tol()).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            [0., 0., 0., 1.],
            [0., 0., 0., 0.],
            [0., 1., 0., 0.],
            [0., 0., 0., 0.],
        ])
        .unwrap();
        assert!(a.max_abs_diff(&expected).unwrap() <= 1e-12);
    }

    #[test]
    fn trivial_partition_is_plain_synthesis() {
        let lam = C64::new(2.0, 1.0);
        let s = ComplexMatrix::from_real_rows(&[[2., 1.], [1., 1.]]).unwrap();
        let y = s.inverse().unwrap();
        let p = CyclicPartition::trivial(2).unwrap();
        let orbit = ChainOrbit {
            right: JordanChain::right(lam, vec![s.col(0), s.col(1)]).unwrap(),
            left: JordanChain::left(lam, vec![y.row(0).to_vec(), y.row(1).to_vec()]).unwrap(),
        };
        let a = reconstruct_from_chains(&[orbit], &p, tol()).unwrap();
        let expected = s
            .matmul(&jordan_block(2, lam).unwrap())
            .unwrap()
            .matmul(&y)
            .unwrap();
        assert!(a.max_abs_diff(&expected).unwrap() <= 1e-12);
    }

    #[test]
    fn reconstruction_rejects_bad_input() {
        let (mut orbits, p) = bipartite_orbits();
        let good = orbits[0].clone();
        orbits[0].left = JordanChain::left(re(0.0), good.right.vectors().to_vec()).unwrap();
        assert!(matches!(
            reconstruct_from_chains(&orbits, &p, tol()),
            Err(Error::Hypothesis(_))
        ));
        let short = ChainOrbit {
            right: JordanChain::right(re(0.0), vec![good.right.vector(1).to_vec()]).unwrap(),
            left: JordanChain::left(re(0.0), vec![good.left.vector(1).to_vec()]).unwrap(),
        };
        assert!(matches!(
            reconstruct_from_chains(&[short], &p, tol()),
            Err(Error::Hypothesis(_))
        ));
        let dup = ChainOrbit {
            right: JordanChain::right(re(0.0), vec![good.right.vector(1).to_vec(); 2]).unwrap(),
            left: good.left.clone(),
        };
        assert!(matches!(reconstruct_from_chains(&[dup], &p, tol()), Err(Error::Singular)));
    }
}
