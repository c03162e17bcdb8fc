//! General complex eigensolver: Householder reduction to upper Hessenberg
//! form, shifted QR iteration to complex Schur form, and back substitution
//! for the eigenvectors of the triangular factor.

use super::{vec_norm, ComplexMatrix};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::cmp::Ordering;

/// Residual bound `||A v - lambda v|| <= RESIDUAL_TOL * ||A||_F` that every
/// returned eigenpair satisfies.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// Eigenvector matrices with a 1-norm condition number above this value are
/// flagged as near-defective.
pub const DEFECTIVE_CONDITION: f64 = 1e10;

const SWEEPS_PER_DIM: usize = 100;

/// Eigenvalues and unit-norm right eigenvectors of a general complex matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Sorted ascending by real part, then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// Column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: ComplexMatrix,
    /// 1-norm condition number of the eigenvector matrix.
    pub condition: f64,
    /// Set when `condition` exceeds [`DEFECTIVE_CONDITION`].
    pub near_defective: bool,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, j: usize) -> Vec<Complex64> {
        self.eigenvectors.column(j)
    }

    /// `V diag(f(lambda)) V^-1`.
    pub fn reconstruct_with(&self, f: impl Fn(Complex64) -> Complex64) -> Result<ComplexMatrix> {
        let v = &self.eigenvectors;
        let vinv = v.inverse()?;
        let mut scaled = v.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let fl = f(lambda);
            for i in 0..v.dim() {
                scaled[(i, j)] *= fl;
            }
        }
        Ok(&scaled * &vinv)
    }

    /// Largest `||A v_j - lambda_j v_j||_2` over all pairs.
    pub fn max_residual(&self, a: &ComplexMatrix) -> f64 {
        (0..self.dim())
            .map(|j| {
                let v = self.eigenvector(j);
                let av = a.mul_vec(&v);
                let r: Vec<Complex64> = av
                    .iter()
                    .zip(&v)
                    .map(|(x, y)| x - self.eigenvalues[j] * y)
                    .collect();
                vec_norm(&r)
            })
            .fold(0.0, f64::max)
    }
}

/// Full eigendecomposition of a general complex matrix.
pub fn eig_dense(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    let mut h = a.as_inner().clone();
    let mut z = DMatrix::identity(n, n);
    hessenberg(&mut h, Some(&mut z));
    schur_iterate(&mut h, Some(&mut z), true)?;

    let mut pairs: Vec<(Complex64, Vec<Complex64>)> = (0..n)
        .map(|k| {
            let y = triangular_eigenvector(&h, k);
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            for (i, vi) in v.iter_mut().enumerate() {
                for (j, &yj) in y.iter().enumerate().take(k + 1) {
                    *vi += z[(i, j)] * yj;
                }
            }
            let norm = vec_norm(&v);
            v.iter_mut().for_each(|x| *x /= norm);
            (h[(k, k)], v)
        })
        .collect();
    pairs.sort_by(|a, b| cmp_complex(a.0, b.0));

    let eigenvalues: Vec<Complex64> = pairs.iter().map(|p| p.0).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| pairs[j].1[i]);
    let eigenvectors = ComplexMatrix::from_inner(vectors);
    let condition = eigenvectors.condition_one();
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        condition,
        near_defective: !(condition <= DEFECTIVE_CONDITION),
    })
}

/// Eigenvalues only, sorted by (Re, Im).
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let mut h = a.as_inner().clone();
    hessenberg(&mut h, None);
    schur_iterate(&mut h, None, false)?;
    let mut values: Vec<Complex64> = (0..a.dim()).map(|k| h[(k, k)]).collect();
    values.sort_by(|a, b| cmp_complex(*a, *b));
    Ok(values)
}

pub(crate) fn cmp_complex(a: Complex64, b: Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn cabs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// In-place Householder reduction to upper Hessenberg form, `A = Q H Q^H`.
/// When `q` is given it is right-multiplied by the accumulated reflectors.
fn hessenberg(h: &mut DMatrix<Complex64>, mut q: Option<&mut DMatrix<Complex64>>) {
    let n = h.nrows();
    for k in 0..n.saturating_sub(2) {
        let xnorm = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // H <- P H, rows k+1..n
        for j in k..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)])
                .sum();
            let f = s * beta;
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= f * vi;
            }
        }
        // H <- H P, columns k+1..n
        apply_reflector_right(h, &v, beta, k + 1);
        if let Some(q) = q.as_deref_mut() {
            apply_reflector_right(q, &v, beta, k + 1);
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

fn apply_reflector_right(m: &mut DMatrix<Complex64>, v: &[Complex64], beta: f64, offset: usize) {
    for i in 0..m.nrows() {
        let s: Complex64 = v
            .iter()
            .enumerate()
            .map(|(j, vj)| m[(i, offset + j)] * vj)
            .sum();
        let f = s * beta;
        for (j, vj) in v.iter().enumerate() {
            m[(i, offset + j)] -= f * vj.conj();
        }
    }
}

/// Rotation `[c, s; -conj(s), c]` (c real) mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    if y == Complex64::new(0.0, 0.0) {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if x == Complex64::new(0.0, 0.0) {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let ax = x.norm();
    let norm = ax.hypot(y.norm());
    (ax / norm, (x / ax) * y.conj() / norm)
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(h: &DMatrix<Complex64>, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let p = (a - d) * 0.5;
    let bc = b * c;
    let root = (p * p + bc).sqrt();
    let denom = if (p.conj() * root).re >= 0.0 {
        p + root
    } else {
        p - root
    };
    if denom.norm() == 0.0 {
        d
    } else {
        d - bc / denom
    }
}

/// Shifted QR iteration on an upper Hessenberg matrix. On success `h` is
/// upper triangular (when `full` is set; otherwise only its diagonal is
/// meaningful) and `z` has been right-multiplied by the Schur vectors.
fn schur_iterate(
    h: &mut DMatrix<Complex64>,
    mut z: Option<&mut DMatrix<Complex64>>,
    full: bool,
) -> Result<()> {
    let n = h.nrows();
    if n == 1 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let smlnum = f64::MIN_POSITIVE * (n as f64 / eps);
    let cap = SWEEPS_PER_DIM * n;
    let mut sweeps = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;

    while hi > 0 {
        // Look for a negligible subdiagonal entry in the active block.
        let mut l = hi;
        while l > 0 {
            let sub = cabs1(h[(l, l - 1)]);
            if sub <= smlnum {
                break;
            }
            let mut tst = cabs1(h[(l - 1, l - 1)]) + cabs1(h[(l, l)]);
            if tst == 0.0 {
                if l >= 2 {
                    tst += h[(l - 1, l - 2)].re.abs();
                }
                if l < hi {
                    tst += h[(l + 1, l)].re.abs();
                }
            }
            if sub <= eps * tst {
                // Ahues & Tisseur deflation criterion.
                let ab = sub.max(cabs1(h[(l - 1, l)]));
                let ba = sub.min(cabs1(h[(l - 1, l)]));
                let diff = cabs1(h[(l - 1, l - 1)] - h[(l, l)]);
                let aa = cabs1(h[(l, l)]).max(diff);
                let bb = cabs1(h[(l, l)]).min(diff);
                let s = aa + ab;
                if ba * (ab / s) <= smlnum.max(eps * (bb * (aa / s))) {
                    break;
                }
            }
            l -= 1;
        }
        if l > 0 {
            h[(l, l - 1)] = Complex64::new(0.0, 0.0);
        }
        if l == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        sweeps += 1;
        since_deflation += 1;
        if sweeps > cap {
            return Err(Error::NonConvergence { iterations: cap });
        }

        let shift = if since_deflation.is_multiple_of(10) {
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].re.abs()
        } else {
            wilkinson_shift(h, hi)
        };

        let col_end = if full { n } else { hi + 1 };
        let row_start = if full { 0 } else { l };
        for k in l..hi {
            let (x, y) = if k == l {
                (h[(l, l)] - shift, h[(l + 1, l)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let (c, s) = givens(x, y);
            let j0 = if k == l { l } else { k - 1 };
            for j in j0..col_end {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = c * a + s * b;
                h[(k + 1, j)] = -s.conj() * a + c * b;
            }
            let i_end = (k + 2).min(hi);
            for i in row_start..=i_end {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = c * a + s.conj() * b;
                h[(i, k + 1)] = -s * a + c * b;
            }
            if let Some(z) = z.as_deref_mut() {
                for i in 0..n {
                    let a = z[(i, k)];
                    let b = z[(i, k + 1)];
                    z[(i, k)] = c * a + s.conj() * b;
                    z[(i, k + 1)] = -s * a + c * b;
                }
            }
            if k > l {
                h[(k + 1, k - 1)] = Complex64::new(0.0, 0.0);
            }
        }
    }
    Ok(())
}

/// Eigenvector of upper-triangular `t` for its `k`-th diagonal entry; only
/// the first `k + 1` components are non-zero.
fn triangular_eigenvector(t: &DMatrix<Complex64>, k: usize) -> Vec<Complex64> {
    const RESCALE: f64 = 1e150;
    let n = t.nrows();
    let eps = f64::EPSILON;
    let smlnum = f64::MIN_POSITIVE * (n as f64 / eps);
    let lambda = t[(k, k)];
    let tnorm = (0..n)
        .flat_map(|j| (0..=j).map(move |i| (i, j)))
        .map(|ij| cabs1(t[ij]))
        .fold(0.0, f64::max);
    let smin = (eps * tnorm).max(smlnum);

    let mut y = vec![Complex64::new(0.0, 0.0); k + 1];
    y[k] = Complex64::new(1.0, 0.0);
    for i in (0..k).rev() {
        let s: Complex64 = (i + 1..=k).map(|j| t[(i, j)] * y[j]).sum();
        let mut d = t[(i, i)] - lambda;
        if cabs1(d) < smin {
            d = Complex64::new(smin, 0.0);
        }
        y[i] = -s / d;
        let big = cabs1(y[i]);
        if big > RESCALE {
            y.iter_mut().for_each(|x| *x /= big);
        }
    }
    y
}
