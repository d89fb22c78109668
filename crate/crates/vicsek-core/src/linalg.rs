//! Dense linear algebra for the spectral oracle.
//!
//! The only solver here is cyclic Jacobi on symmetric matrices. It is slow
//! past a few thousand rows but bit-for-bit deterministic and accurate to a
//! few ulps, which is exactly what an oracle needs. Larger levels go through
//! the matrix-free Laplacian application instead.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Hard cap on the dimension accepted by [`jacobi_eigen`]. A level-4 graph
/// (1876 vertices) solves in seconds; level 5 (9376) would take hours.
pub const DENSE_DIM_CAP: usize = 4000;

/// Relative gap under which adjacent eigenvalues are grouped into one
/// multiplicity class. Spectral gaps at the levels we solve densely are
/// many orders larger.
pub const MULTIPLICITY_REL_GAP: f64 = 1e-8;

/// Row-major dense square matrix.
#[derive(Debug, Clone)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> DenseMatrix {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max(libm::fabs(self.get(i, j) - self.get(j, i)));
            }
        }
        worst
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Eigenvalues (ascending) and the matching orthonormal eigenvectors.
/// `vectors[k]` is the eigenvector of `values[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    /// Groups the sorted eigenvalues into `(representative, multiplicity)`
    /// classes using the given relative gap.
    pub fn multiplicities(&self, rel_gap: f64) -> Vec<(f64, usize)> {
        group_multiplicities(&self.values, rel_gap)
    }
}

pub fn group_multiplicities(sorted: &[f64], rel_gap: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some((rep, count)) if libm::fabs(v - *rep) <= rel_gap * libm::fabs(v).max(1.0) => {
                *count += 1;
                *rep = v;
            }
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Cyclic Jacobi eigensolver for a symmetric matrix.
///
/// Fails if the matrix is visibly asymmetric, over the dimension cap, or if
/// the off-diagonal mass does not vanish within the sweep budget.
pub fn jacobi_eigen(mat: &DenseMatrix) -> Result<EigenDecomposition> {
    let n = mat.dim();
    if n > DENSE_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: n,
            cap: DENSE_DIM_CAP,
        });
    }
    assert!(
        mat.max_asymmetry() < 1e-12,
        "jacobi_eigen requires a symmetric matrix"
    );
    let mut a = mat.clone();
    // v holds the accumulated rotations, row-major: v[i*n+j] = V_ij, columns
    // are eigenvectors.
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    if n > 1 {
        let mut scale = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                scale = scale.max(libm::fabs(a.get(i, j)));
            }
        }
        let tol = 1e-15 * scale.max(1.0);
        let max_sweeps = 60;
        let mut converged = false;
        for _ in 0..max_sweeps {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(libm::fabs(a.get(p, q)));
                }
            }
            if off <= tol {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    if libm::fabs(apq) <= tol * 1e-2 {
                        continue;
                    }
                    let app = a.get(p, p);
                    let aqq = a.get(q, q);
                    let theta = (aqq - app) / (2.0 * apq);
                    // Stable tangent of the rotation angle.
                    let t = if theta >= 0.0 {
                        1.0 / (theta + libm::sqrt(1.0 + theta * theta))
                    } else {
                        -1.0 / (-theta + libm::sqrt(1.0 + theta * theta))
                    };
                    let c = 1.0 / libm::sqrt(1.0 + t * t);
                    let s = t * c;
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, c * akp - s * akq);
                        a.set(k, q, s * akp + c * akq);
                    }
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, c * apk - s * aqk);
                        a.set(q, k, s * apk + c * aqk);
                    }
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        if !converged {
            // Check once more; the final sweep may have finished the job.
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(libm::fabs(a.get(p, q)));
                }
            }
            if off > tol {
                return Err(Error::NoConvergence {
                    context: "jacobi sweeps exhausted",
                });
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).unwrap());
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    Ok(EigenDecomposition { values, vectors })
}
