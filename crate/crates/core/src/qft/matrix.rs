//! Dense complex matrices and permutation index maps.
//!
//! Tensor products put the first factor in the most significant position:
//! `(A ⊗ B)[i_a * n_b + i_b, j_a * n_b + j_b] = A[i_a, j_a] B[i_b, j_b]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `exp(2 pi i k / n)` with `k` reduced mod `n` before the angle is formed.
pub fn root_of_unity(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

/// All `n`-th roots of unity, indexed by exponent.
pub fn roots_of_unity(n: u64) -> Vec<Complex64> {
    (0..n).map(|k| root_of_unity(k, n)).collect()
}

/// Square dense matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64 + Sync) -> Self {
        let data = (0..dim * dim)
            .into_par_iter()
            .map(|k| f(k / dim, k % dim))
            .collect();
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch {
                expected: dim,
                got: r.len(),
            });
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    fn ensure_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    /// `self * other`, parallel over output rows.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.ensure_same_dim(other)?;
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        data.par_chunks_mut(n.max(1))
            .enumerate()
            .for_each(|(i, out)| {
                for k in 0..n {
                    let a = self.data[i * n + k];
                    if a.re == 0.0 && a.im == 0.0 {
                        continue;
                    }
                    for (o, &b) in out.iter_mut().zip(other.row(k)) {
                        *o += a * b;
                    }
                }
            });
        Ok(Self { dim: n, data })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self.get(j, i).conj())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.ensure_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max(|M M^† - I|_max, |M^† M - I|_max)`.
    pub fn unitarity_deviation(&self) -> f64 {
        let id = Self::identity(self.dim);
        let d = self.dagger();
        let left = self
            .matmul(&d)
            .expect("same dim")
            .max_abs_diff(&id)
            .expect("same dim");
        let right = d
            .matmul(self)
            .expect("same dim")
            .max_abs_diff(&id)
            .expect("same dim");
        left.max(right)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let nb = other.dim;
        Self::from_fn(self.dim * nb, |i, j| {
            self.get(i / nb, j / nb) * other.get(i % nb, j % nb)
        })
    }

    /// `self * P`: column `c` of the result is column `P(c)` of `self`.
    pub fn mul_perm(&self, perm: &Permutation) -> Result<Self> {
        if perm.dim() != self.dim {
            return Err(Error::ShapeMismatch {
                expected: self.dim,
                got: perm.dim(),
            });
        }
        Ok(Self::from_fn(self.dim, |r, c| self.get(r, perm.map[c])))
    }

    /// `P * self`: row `P(i)` of the result is row `i` of `self`.
    pub fn perm_mul(perm: &Permutation, m: &Self) -> Result<Self> {
        if perm.dim() != m.dim {
            return Err(Error::ShapeMismatch {
                expected: m.dim,
                got: perm.dim(),
            });
        }
        let inv = perm.inverse();
        Ok(Self::from_fn(m.dim, |r, c| m.get(inv.map[r], c)))
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::ShapeMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok((0..self.dim)
            .into_par_iter()
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// Kronecker product of a sequence; the first factor is most significant.
pub fn tensor(ms: &[ComplexMatrix]) -> ComplexMatrix {
    ms.iter()
        .fold(ComplexMatrix::identity(1), |acc, m| acc.kron(m))
}

/// `(A ⊗ B) v` without forming the Kronecker product.
pub fn kron_apply(a: &ComplexMatrix, b: &ComplexMatrix, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let (na, nb) = (a.dim(), b.dim());
    if v.len() != na * nb {
        return Err(Error::ShapeMismatch {
            expected: na * nb,
            got: v.len(),
        });
    }
    // W = V B^T, row by row (V is v reshaped na x nb).
    let w: Vec<Complex64> = (0..na)
        .into_par_iter()
        .flat_map_iter(|i| {
            let vi = &v[i * nb..(i + 1) * nb];
            (0..nb).map(move |j| {
                b.row(j)
                    .iter()
                    .zip(vi)
                    .map(|(x, y)| x * y)
                    .sum::<Complex64>()
            })
        })
        .collect();
    // A W.
    Ok((0..na * nb)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / nb, k % nb);
            (0..na).map(|l| a.get(i, l) * w[l * nb + j]).sum()
        })
        .collect())
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<[f64; 2]> = self.data.iter().map(|z| [z.re, z.im]).collect();
        let mut st = serializer.serialize_struct("ComplexMatrix", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Permutation of basis states: `|i> -> |map[i]>`. As a matrix, column `i` has its
/// single 1 in row `map[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Permutation {
    dim: usize,
    map: Vec<usize>,
}

impl Permutation {
    /// Fails unless `map` is a bijection on `0..map.len()`.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let dim = map.len();
        let mut seen = vec![false; dim];
        for &t in &map {
            if t >= dim || seen[t] {
                return Err(Error::InvalidSpec(format!(
                    "index map is not a bijection at {t}"
                )));
            }
            seen[t] = true;
        }
        Ok(Self { dim, map })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            map: (0..dim).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.dim];
        for (i, &t) in self.map.iter().enumerate() {
            inv[t] = i;
        }
        Self {
            dim: self.dim,
            map: inv,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(Self {
            dim: self.dim,
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim);
        for (col, &row) in self.map.iter().enumerate() {
            m.data[row * self.dim + col] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::ShapeMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (i, &t) in self.map.iter().enumerate() {
            out[t] = v[i];
        }
        Ok(out)
    }
}
