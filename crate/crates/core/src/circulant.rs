//! Circulant matrices, roots of unity and the rank-one circulant identities
//! behind chain rotation.
//!
//! A circulant with reference vector `r` has `c_ij = r_{((j−i) mod n)+1}`, so
//! it is constant along each wrapped diagonal. [`c_k_matrix`] builds
//! `C_k = circulant(ω^k, 1, (ω^k)^{h−1}, …, (ω^k)^2)`; summing `C_k` over
//! `k ∈ 0..h` leaves `h K_h`, the mask that keeps exactly the block pattern
//! of an h-cyclic matrix.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matrix::{re, C64, ComplexMatrix, Tolerance};

/// `ω^k` for `ω = exp(2πi/h)`, with `k` kept reduced mod `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOfUnityPower {
    h: usize,
    k: usize,
}

impl RootOfUnityPower {
    pub fn new(h: usize, k: i64) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidArgument("root of unity order must be positive".into()));
        }
        Ok(RootOfUnityPower {
            h,
            k: k.rem_euclid(h as i64) as usize,
        })
    }

    pub fn h(self) -> usize {
        self.h
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn value(self) -> C64 {
        omega_pow(self.h, self.k as i64)
    }

    /// `(ω^k)^e`, reduced to a single exponent mod `h` before evaluating.
    pub fn pow(self, e: i64) -> C64 {
        omega_pow(self.h, self.k as i64 * e)
    }
}

/// `exp(2πi e / h)` with `e` reduced mod `h` first. Quarter turns are exact.
pub fn omega_pow(h: usize, e: i64) -> C64 {
    let h = h as i64;
    let e = e.rem_euclid(h);
    if (4 * e) % h == 0 {
        return match 4 * e / h {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    C64::from_polar(1.0, 2.0 * PI * e as f64 / h as f64)
}

/// `Σ_{k=0}^{h−1} (ω^k)^p`: `h` when `h | p`, zero otherwise.
pub fn root_power_sum(h: usize, p: i64) -> C64 {
    (0..h as i64).map(|k| omega_pow(h, k * p)).sum()
}

/// Reference-vector form of a circulant matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Circulant {
    reference: Vec<C64>,
}

impl Circulant {
    pub fn new(reference: Vec<C64>) -> Result<Self> {
        if reference.is_empty() {
            return Err(Error::InvalidArgument("empty reference vector".into()));
        }
        Ok(Circulant { reference })
    }

    pub fn n(&self) -> usize {
        self.reference.len()
    }

    pub fn reference(&self) -> &[C64] {
        &self.reference
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = self.n();
        ComplexMatrix::from_fn(n, n, |i, j| self.reference[(j + n - i) % n])
    }
}

pub fn circulant_from_reference(r: &[C64]) -> Result<ComplexMatrix> {
    Ok(Circulant::new(r.to_vec())?.to_matrix())
}

/// First row of `c` if every wrapped diagonal is constant (within eps),
/// `None` otherwise.
pub fn recognize_circulant(c: &ComplexMatrix, tol: Tolerance) -> Result<Option<Vec<C64>>> {
    if !c.is_square() {
        return Err(Error::DimensionMismatch("circulant test on a non-square matrix".into()));
    }
    let n = c.rows();
    let reference = c.row(0).to_vec();
    for i in 1..n {
        for j in 0..n {
            if !tol.eq(c[(i, j)], reference[(j + n - i) % n]) {
                return Ok(None);
            }
        }
    }
    Ok(Some(reference))
}

/// `K_n = circulant(e_2)`, the cyclic shift.
pub fn basic_circulant(n: usize) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "basic circulant needs order at least 2, got {n}"
        )));
    }
    let mut r = vec![C64::new(0.0, 0.0); n];
    r[1] = re(1.0);
    circulant_from_reference(&r)
}

/// Reference vector `(ω^k, 1, (ω^k)^{h−1}, …, (ω^k)^2)`, i.e. entry `m` (1-based)
/// is `(ω^k)^{(2−m) mod h}`.
pub fn c_k_reference(h: usize, k: i64) -> Result<Vec<C64>> {
    let w = RootOfUnityPower::new(h, k)?;
    Ok((1..=h as i64).map(|m| w.pow(2 - m)).collect())
}

pub fn c_k_matrix(h: usize, k: i64) -> Result<ComplexMatrix> {
    circulant_from_reference(&c_k_reference(h, k)?)
}

/// Which rank-one outer product to build in [`w_matrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WVariant {
    /// `ω^k · col((ω^k)^{α_iℓ}) · row((ω^k)^{α_ℓj})`
    Scaled,
    /// `col((ω^k)^{α_iℓ}) · row((ω^k)^{α_(ℓ+1)j})`
    Shifted,
}

/// Rank-one matrices that turn out to equal `C_k` for every `ℓ`.
pub fn w_matrix(h: usize, k: i64, ell: i64, variant: WVariant) -> Result<ComplexMatrix> {
    if ell < 1 {
        return Err(Error::IndexOutOfRange(format!("ℓ must be positive, got {ell}")));
    }
    let w = RootOfUnityPower::new(h, k)?;
    let hh = h as i64;
    let alpha = |i: i64, j: i64| (i - j).rem_euclid(hh);
    let col: Vec<C64> = (1..=hh).map(|i| w.pow(alpha(i, ell))).collect();
    let (prefactor, row_ell) = match variant {
        WVariant::Scaled => (w.value(), ell),
        WVariant::Shifted => (re(1.0), ell + 1),
    };
    let row: Vec<C64> = (1..=hh).map(|j| w.pow(alpha(row_ell, j))).collect();
    Ok(ComplexMatrix::from_fn(h, h, |i, j| prefactor * col[i] * row[j]))
}
