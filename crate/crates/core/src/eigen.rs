//! Complex Schur decomposition for small dense matrices.
//!
//! Householder reduction to upper Hessenberg form followed by single-shift
//! QR sweeps (Wilkinson shift, Givens rotations) with deflation on small
//! subdiagonal entries. Eigenvectors come from back substitution on the
//! triangular factor. Intended for orders up to a few dozen.

use crate::error::{Error, Result};
use crate::matrix::{re, C64, ComplexMatrix};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// `A = Z T Z*` with `T` upper triangular and `Z` unitary.
#[derive(Debug, Clone)]
pub struct Schur {
    pub t: ComplexMatrix,
    pub z: ComplexMatrix,
}

/// Eigenvalues with unit-norm right eigenvectors stored as matrix columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<C64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.col(k)
    }
}

pub fn schur(a: &ComplexMatrix) -> Result<Schur> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("eigenvalues of a non-square matrix".into()));
    }
    let (mut h, mut z) = hessenberg(a);
    qr_sweeps(&mut h, &mut z)?;
    // clear the (already negligible) strictly lower part
    let n = h.rows();
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    Ok(Schur { t: h, z })
}

pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C64>> {
    let s = schur(a)?;
    Ok((0..a.rows()).map(|i| s.t[(i, i)]).collect())
}

pub fn eigen(a: &ComplexMatrix) -> Result<Eigen> {
    let s = schur(a)?;
    let n = a.rows();
    let t = &s.t;
    let small = f64::EPSILON * t.norm_inf().max(f64::MIN_POSITIVE);
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[k] = re(1.0);
        for i in (0..k).rev() {
            let s: C64 = ((i + 1)..=k).map(|j| t[(i, j)] * v[j]).sum();
            let mut den = t[(i, i)] - lambda;
            if den.norm() < small {
                den = re(small);
            }
            v[i] = -s / den;
        }
        let mut x = s.z.mul_vec(&v)?;
        let nrm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            for c in &mut x {
                *c /= nrm;
            }
        }
        cols.push(x);
    }
    Ok(Eigen {
        values: (0..n).map(|i| t[(i, i)]).collect(),
        vectors: ComplexMatrix::from_columns(&cols)?,
    })
}

fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            re(1.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for c in &mut v {
            *c /= vnorm;
        }
        // H <- (I - 2 v v*) H
        for j in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)])
                .sum();
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= re(2.0) * vr * dot;
            }
        }
        // H <- H (I - 2 v v*), Q <- Q (I - 2 v v*)
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let dot: C64 = v
                    .iter()
                    .enumerate()
                    .map(|(c, vc)| m[(i, k + 1 + c)] * vc)
                    .sum();
                for (c, vc) in v.iter().enumerate() {
                    m[(i, k + 1 + c)] -= re(2.0) * dot * vc.conj();
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    (h, q)
}

/// Rotation `[[c, s], [-conj(s), c]]` mapping `(a, b)` onto `(r, 0)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let na = a.norm();
    let nb = b.norm();
    let norm = na.hypot(nb);
    if norm == 0.0 {
        (1.0, C64::new(0.0, 0.0))
    } else if na == 0.0 {
        (0.0, re(1.0))
    } else {
        (na / norm, (a / na) * b.conj() / norm)
    }
}

fn rotate_rows(m: &mut ComplexMatrix, k: usize, cols: std::ops::Range<usize>, c: f64, s: C64) {
    for j in cols {
        let x = m[(k, j)];
        let y = m[(k + 1, j)];
        m[(k, j)] = x * c + s * y;
        m[(k + 1, j)] = -s.conj() * x + y * c;
    }
}

/// Right-multiplies columns (k, k+1) by the adjoint rotation.
fn rotate_cols(m: &mut ComplexMatrix, k: usize, rows: std::ops::Range<usize>, c: f64, s: C64) {
    for i in rows {
        let x = m[(i, k)];
        let y = m[(i, k + 1)];
        m[(i, k)] = x * c + y * s.conj();
        m[(i, k + 1)] = -x * s + y * c;
    }
}

fn qr_sweeps(h: &mut ComplexMatrix, z: &mut ComplexMatrix) -> Result<()> {
    let n = h.rows();
    if n == 1 {
        return Ok(());
    }
    let anorm = h.norm_inf();
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let budget = MAX_SWEEPS_PER_EIGENVALUE * n;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = anorm;
            }
            if h[(l, l - 1)].norm() <= f64::EPSILON * s {
                h[(l, l - 1)] = C64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > budget {
            return Err(Error::NoConvergence(total));
        }

        let mu = if iter % 11 == 10 {
            // exceptional shift to break cycles
            h[(hi, hi)] + re(1.5 * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for i in l..=hi {
            h[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rotate_rows(h, k, l..n, c, s);
            h[(k + 1, k)] = C64::new(0.0, 0.0);
            rots.push((k, c, s));
        }
        for &(k, c, s) in &rots {
            rotate_cols(h, k, 0..k + 2, c, s);
            rotate_cols(z, k, 0..n, c, s);
        }
        for i in l..=hi {
            h[(i, i)] += mu;
        }
    }
    Ok(())
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Tolerance;

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn triangular_and_diagonal_inputs() {
        let a = ComplexMatrix::from_real_rows(&[[2.0, 1.0, 0.0], [0.0, -1.0, 4.0], [0.0, 0.0, 3.0]])
            .unwrap();
        let ev = sorted(eigenvalues(&a).unwrap());
        for (got, want) in ev.iter().zip([-1.0, 2.0, 3.0]) {
            assert!((got - re(want)).norm() < 1e-12);
        }
        assert_eq!(eigenvalues(&ComplexMatrix::zeros(1, 1)).unwrap(), vec![re(0.0)]);
    }

    #[test]
    fn rotation_matrix_has_unit_circle_spectrum() {
        let a = ComplexMatrix::from_real_rows(&[[0.0, -1.0], [1.0, 0.0]]).unwrap();
        let ev = sorted(eigenvalues(&a).unwrap());
        assert!((ev[0] - C64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - C64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn schur_reconstructs_input() {
        let a = ComplexMatrix::from_fn(6, 6, |i, j| {
            C64::new(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64 - 1.0)
        });
        let s = schur(&a).unwrap();
        let zh = ComplexMatrix::from_fn(6, 6, |i, j| s.z[(j, i)].conj());
        let back = &(&s.z * &s.t) * &zh;
        assert!(back.approx_eq(&a, Tolerance::new(1e-11).unwrap()));
        let ztz = &zh * &s.z;
        assert!(ztz.approx_eq(&ComplexMatrix::identity(6), Tolerance::new(1e-12).unwrap()));
    }

    #[test]
    fn eigenvectors_satisfy_the_eigen_equation() {
        let a = ComplexMatrix::from_fn(5, 5, |i, j| C64::new((i as f64 - j as f64).sin(), (i * j) as f64 * 0.1));
        let e = eigen(&a).unwrap();
        for k in 0..5 {
            let x = e.vector(k);
            let ax = a.mul_vec(&x).unwrap();
            let res = ax
                .iter()
                .zip(&x)
                .map(|(u, v)| (u - e.values[k] * v).norm())
                .fold(0.0, f64::max);
            assert!(res < 1e-10, "residual {res}");
        }
    }
}
