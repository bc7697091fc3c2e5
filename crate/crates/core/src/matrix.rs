//! Dense complex matrices and the handful of primitives the rest of the crate
//! is built on: Hadamard products, Jordan blocks, index-set submatrices and a
//! tolerance-based rank / kernel computation.
//!
//! Indices handed to the public operations in this module (`submatrix`,
//! permutations) are 1-based so they can be compared against hand-written
//! vertex sets. Element access through `Index` is 0-based like any Rust
//! container.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Shorthand for a real-valued complex scalar.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Zero threshold used by every rank, residual and pattern test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if !eps.is_finite() || eps < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be finite and nonnegative, got {eps}"
            )));
        }
        Ok(Tolerance(eps))
    }

    #[inline]
    pub fn eps(self) -> f64 {
        self.0
    }

    /// Complex scalars are equal when the modulus of their difference is at most eps.
    #[inline]
    pub fn eq(self, a: C64, b: C64) -> bool {
        (a - b).norm() <= self.0
    }

    #[inline]
    pub fn is_zero(self, a: C64) -> bool {
        a.norm() <= self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(Self::DEFAULT_EPS)
    }
}

/// Row-major dense matrix of complex scalars. Always at least 1x1.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(pos));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Builds a matrix from real entries given row by row.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(r.iter().map(|&x| re(x)));
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<V: AsRef<[C64]>>(columns: &[V]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.as_ref().len());
        let cols = columns.len();
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("no columns".into()));
        }
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::DimensionMismatch("ragged columns".into()));
            }
            for (i, &z) in c.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        Ok(m)
    }

    /// Column vector (n x 1).
    pub fn column(v: &[C64]) -> Result<Self> {
        Self::new(v.len(), 1, v.to_vec())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be at least 1x1");
        ComplexMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.data.fill(re(1.0));
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = re(1.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// `yᵀ A`, returned as a plain vector (no conjugation).
    pub fn vec_mul(&self, y: &[C64]) -> Result<Vec<C64>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                y.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![C64::new(0.0, 0.0); self.cols];
        for (i, &yi) in y.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += yi * a;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other, "comparison")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol.eps())
    }

    /// Relabels vertex `v` as `perm[v-1]` (1-based), i.e. returns `Qᵀ A Q` for
    /// the permutation matrix `Q` with `Q[v, perm(v)] = 1`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Result<Self> {
        if !self.is_square() || perm.len() != self.rows {
            return Err(Error::DimensionMismatch(
                "permutation length must equal the matrix order".into(),
            ));
        }
        validate_permutation(perm)?;
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(perm[i] - 1, perm[j] - 1)] = self[(i, j)];
            }
        }
        Ok(out)
    }

    /// Numerical rank under the same elimination used by [`null_space`].
    pub fn rank(&self, tol: Tolerance) -> usize {
        null_space(self, tol).rank
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let thresh = self.max_abs() * (n as f64) * f64::EPSILON;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let (p, pmag) = (c..n)
                .map(|r| (r, a[(r, c)].norm()))
                .fold((c, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmag <= thresh || pmag == 0.0 {
                return Err(Error::Singular);
            }
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let piv = a[(c, c)].inv();
            a.scale_row(c, piv);
            inv.scale_row(c, piv);
            for r in 0..n {
                if r != c {
                    let f = a[(r, c)];
                    if f != C64::new(0.0, 0.0) {
                        a.axpy_row(r, c, -f);
                        inv.axpy_row(r, c, -f);
                    }
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: C64) {
        for z in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *z *= c;
        }
    }

    /// row[dst] += f * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, f: C64) {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += f * s;
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("shape mismatch in matrix addition")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("shape mismatch in matrix subtraction")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("shape mismatch in matrix product")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale(re(-1.0))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for z in self.row(i) {
                write!(f, " {:>8.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn validate_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p == 0 || p > perm.len() || seen[p - 1] {
            return Err(Error::InvalidArgument(format!(
                "not a permutation of 1..={}",
                perm.len()
            )));
        }
        seen[p - 1] = true;
    }
    Ok(())
}

/// Entrywise product `A ∘ B`.
pub fn hadamard(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_same_shape(b, "hadamard")?;
    Ok(a.zip_with(b, |x, y| x * y))
}

/// `J_n(λ)`: λ on the diagonal, ones on the superdiagonal.
pub fn jordan_block(n: usize, lambda: C64) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("Jordan block order must be positive".into()));
    }
    let mut j = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = lambda;
        if i + 1 < n {
            j[(i, i + 1)] = re(1.0);
        }
    }
    Ok(j)
}

/// `A(R, C)` with 1-based row and column index lists, order preserved.
pub fn submatrix(a: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> Result<ComplexMatrix> {
    if rows.is_empty() || cols.is_empty() {
        return Err(Error::InvalidArgument("empty index set".into()));
    }
    for &r in rows {
        if r == 0 || r > a.rows {
            return Err(Error::IndexOutOfRange(format!("row {r} not in 1..={}", a.rows)));
        }
    }
    for &c in cols {
        if c == 0 || c > a.cols {
            return Err(Error::IndexOutOfRange(format!("column {c} not in 1..={}", a.cols)));
        }
    }
    Ok(ComplexMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        a[(rows[i] - 1, cols[j] - 1)]
    }))
}

/// Numerical rank and a kernel basis.
#[derive(Debug, Clone, PartialEq)]
pub struct NullSpace {
    pub rank: usize,
    pub basis: Vec<Vec<C64>>,
}

impl NullSpace {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }
}

/// Row-reduces `a` with partial pivoting and reads the kernel off the reduced
/// echelon form, one basis vector per free column (1 in the free slot, minus
/// the reduced coefficients in the pivot slots).
///
/// A pivot counts as zero when its modulus is at most `eps · max|a_ij|`.
pub fn null_space(a: &ComplexMatrix, tol: Tolerance) -> NullSpace {
    null_space_below(a, tol.eps() * a.max_abs())
}

/// [`null_space`] with an explicit absolute pivot threshold.
pub(crate) fn null_space_below(a: &ComplexMatrix, thresh: f64) -> NullSpace {
    let (m, n) = (a.rows, a.cols);
    let mut r = a.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for c in 0..n {
        if row == m {
            break;
        }
        let (p, pmag) = (row..m)
            .map(|i| (i, r[(i, c)].norm()))
            .fold((row, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmag <= thresh || pmag == 0.0 {
            continue;
        }
        r.swap_rows(row, p);
        let inv = r[(row, c)].inv();
        r.scale_row(row, inv);
        r[(row, c)] = re(1.0);
        for i in 0..m {
            if i != row {
                let f = r[(i, c)];
                if f != C64::new(0.0, 0.0) {
                    r.axpy_row(i, row, -f);
                    r[(i, c)] = C64::new(0.0, 0.0);
                }
            }
        }
        pivots.push((row, c));
        row += 1;
    }

    let mut is_pivot = vec![false; n];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    let basis = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut b = vec![C64::new(0.0, 0.0); n];
            b[f] = re(1.0);
            for &(pr, pc) in &pivots {
                b[pc] = -r[(pr, f)];
            }
            b
        })
        .collect();
    NullSpace {
        rank: pivots.len(),
        basis,
    }
}

pub fn vec_norm_inf(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn vec_max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
