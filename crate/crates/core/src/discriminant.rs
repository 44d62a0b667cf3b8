//! Powers of `xi`, the trace table `Tr(xi^0) .. Tr(xi^{2m-2})`, and the discriminant
//! matrix `D_ij = Tr(xi^{i+j})` with its inverse over `Z_{p^s}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois_ring::zmod::{add_mod, inv_mod, mul_mod, sub_mod};
use crate::galois_ring::{GrElement, RingContext};

/// Square matrix of residues, row-major as nested rows.
pub type ResidueMatrix = Vec<Vec<u64>>;

/// `xi^k`, by repeated multiplication by `xi` with reduction modulo `h`.
///
/// `k` is first reduced modulo the order `p^m - 1` of `xi`.
pub fn xi_power(ring: &RingContext, k: u64) -> GrElement {
    let order = ring.spec().residue_field_size().expect("validated ring") - 1;
    let arith = ring.arith();
    let mut cur = arith.one();
    for _ in 0..k % order {
        cur = arith.mul_x(&cur);
    }
    ring.element(&cur).expect("length m")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceTable {
    pub modulus: u64,
    /// `Tr(xi^i)` for `i = 0 ..= 2m - 2`.
    pub values: Vec<u64>,
}

/// Trace table via the Frobenius-sum definition of the trace.
pub fn trace_table(ring: &RingContext) -> Result<TraceTable> {
    let m = ring.m();
    let values = (0..2 * m - 1)
        .map(|i| ring.trace(&xi_power(ring, i as u64)).map(|t| t.value()))
        .collect::<Result<Vec<_>>>()?;
    Ok(TraceTable {
        modulus: ring.modulus(),
        values,
    })
}

/// Trace table via root sums and basis expansion:
/// `Tr(xi^i) = sum_j xi^{i p^j}` for `i < m`, then `Tr(xi^i) = sum_k c_k Tr(xi^k)` for
/// `i >= m` where `xi^i = sum_k c_k xi^k`.
pub fn trace_table_recursive(ring: &RingContext) -> Result<TraceTable> {
    let m = ring.m();
    let q = ring.modulus();
    let p = ring.p();
    let order = ring.spec().residue_field_size()? - 1;
    let mut values = Vec::with_capacity(2 * m - 1);
    for i in 0..m as u64 {
        let mut acc = ring.zero();
        let mut exp = i % order;
        for _ in 0..m {
            acc = ring.add(&acc, &xi_power(ring, exp))?;
            exp = mul_mod(exp, p, order);
        }
        if let Some(index) = acc.coeffs().iter().skip(1).position(|&c| c != 0) {
            return Err(Error::TraceNotInBaseRing { index: index + 1 });
        }
        values.push(acc.coeffs()[0]);
    }
    for i in m..2 * m - 1 {
        let expansion = xi_power(ring, i as u64);
        let t = expansion
            .coeffs()
            .iter()
            .zip(&values[..m])
            .fold(0, |acc, (&c, &tr)| add_mod(acc, mul_mod(c, tr, q), q));
        values.push(t);
    }
    Ok(TraceTable { modulus: q, values })
}

/// The discriminant matrix of the basis `{xi^i}` and its inverse mod `p^s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscriminantMatrix {
    pub modulus: u64,
    pub entries: ResidueMatrix,
    pub inverse: ResidueMatrix,
}

impl DiscriminantMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `D_ij = D_{i+1, j-1}`.
    pub fn is_hankel(&self) -> bool {
        let n = self.dim();
        (0..n.saturating_sub(1))
            .all(|i| (1..n).all(|j| self.entries[i][j] == self.entries[i + 1][j - 1]))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

pub fn build_discriminant(ring: &RingContext) -> Result<DiscriminantMatrix> {
    let table = trace_table(ring)?;
    let m = ring.m();
    let entries: ResidueMatrix = (0..m)
        .map(|i| (0..m).map(|j| table.values[i + j]).collect())
        .collect();
    let inverse = invert_mod(&entries, ring.modulus())?;
    Ok(DiscriminantMatrix {
        modulus: ring.modulus(),
        entries,
        inverse,
    })
}

/// Gauss-Jordan inversion over `Z_n`. Each pivot must be a unit mod `n`; rows may be swapped.
pub fn invert_mod(mat: &[Vec<u64>], n: u64) -> Result<ResidueMatrix> {
    let size = mat.len();
    if let Some(row) = mat.iter().find(|r| r.len() != size) {
        return Err(Error::ShapeMismatch {
            expected: size,
            got: row.len(),
        });
    }
    let mut a: ResidueMatrix = mat
        .iter()
        .map(|r| r.iter().map(|&x| x % n).collect())
        .collect();
    let mut inv: ResidueMatrix = (0..size)
        .map(|i| (0..size).map(|j| u64::from(i == j) % n).collect())
        .collect();

    for col in 0..size {
        let (pivot_row, pivot_inv) = (col..size)
            .find_map(|r| inv_mod(a[r][col], n).map(|u| (r, u)))
            .ok_or(Error::NotInvertible { modulus: n })?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        for j in 0..size {
            a[col][j] = mul_mod(a[col][j], pivot_inv, n);
            inv[col][j] = mul_mod(inv[col][j], pivot_inv, n);
        }
        for r in 0..size {
            if r == col || a[r][col] == 0 {
                continue;
            }
            let f = a[r][col];
            for j in 0..size {
                a[r][j] = sub_mod(a[r][j], mul_mod(f, a[col][j], n), n);
                inv[r][j] = sub_mod(inv[r][j], mul_mod(f, inv[col][j], n), n);
            }
        }
    }
    Ok(inv)
}

pub fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], n: u64) -> ResidueMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |acc, k| add_mod(acc, mul_mod(row[k], b[k][j], n), n)))
                .collect()
        })
        .collect()
}

/// `M x mod n`, also returning the number of scalar multiply-adds performed.
pub fn mat_vec_mod_counted(mat: &[Vec<u64>], x: &[u64], n: u64) -> (Vec<u64>, usize) {
    let mut ops = 0;
    let out = mat
        .iter()
        .map(|row| {
            row.iter().zip(x).fold(0, |acc, (&a, &b)| {
                ops += 1;
                add_mod(acc, mul_mod(a, b, n), n)
            })
        })
        .collect();
    (out, ops)
}

pub fn mat_vec_mod(mat: &[Vec<u64>], x: &[u64], n: u64) -> Vec<u64> {
    mat_vec_mod_counted(mat, x, n).0
}

/// `x'` with coefficient vector `D x`; equivalently `x'_i = Tr(x xi^i)`.
pub fn apply_d(ring: &RingContext, d: &DiscriminantMatrix, x: &GrElement) -> Result<GrElement> {
    ring.element(&mat_vec_mod(&d.entries, x.coeffs(), d.modulus))
}

pub fn apply_d_inverse(
    ring: &RingContext,
    d: &DiscriminantMatrix,
    x: &GrElement,
) -> Result<GrElement> {
    ring.element(&mat_vec_mod(&d.inverse, x.coeffs(), d.modulus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_ring::{make_ring, RingSpec};

    fn gr16() -> RingContext {
        make_ring(RingSpec::new(2, 2, 2, vec![1, 1])).unwrap()
    }

    fn identity(n: usize) -> ResidueMatrix {
        (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect()
    }

    #[test]
    fn xi_power_examples() {
        let r = gr16();
        assert_eq!(xi_power(&r, 2).coeffs(), &[3, 3]);
        assert_eq!(xi_power(&r, 0).coeffs(), &[1, 0]);
        assert_eq!(xi_power(&r, 3).coeffs(), &[1, 0]);
        assert_eq!(xi_power(&r, 7), r.xi());
    }

    #[test]
    fn trace_table_examples() {
        assert_eq!(trace_table(&gr16()).unwrap().values, vec![2, 3, 3]);
        let z9 = make_ring(RingSpec::search(3, 2, 1)).unwrap();
        assert_eq!(trace_table(&z9).unwrap().values, vec![1]);
        let f4 = make_ring(RingSpec::new(2, 1, 2, vec![1, 1])).unwrap();
        assert_eq!(trace_table(&f4).unwrap().values, vec![0, 1, 1]);
    }

    #[test]
    fn trace_table_routes_agree() {
        for spec in [
            RingSpec::new(2, 2, 2, vec![1, 1]),
            RingSpec::search(2, 2, 3),
            RingSpec::search(3, 2, 2),
            RingSpec::search(2, 3, 2),
            RingSpec::search(3, 1, 3),
            RingSpec::search(5, 1, 1),
        ] {
            let r = make_ring(spec).unwrap();
            assert_eq!(trace_table(&r).unwrap(), trace_table_recursive(&r).unwrap());
        }
    }

    #[test]
    fn discriminant_examples() {
        let d = build_discriminant(&gr16()).unwrap();
        assert_eq!(d.entries, vec![vec![2, 3], vec![3, 3]]);
        assert_eq!(d.inverse, vec![vec![3, 1], vec![1, 2]]);
        assert!(d.is_hankel() && d.is_symmetric());

        let z4 = make_ring(RingSpec::search(2, 2, 1)).unwrap();
        let d = build_discriminant(&z4).unwrap();
        assert_eq!(
            (d.entries.clone(), d.inverse.clone()),
            (vec![vec![1]], vec![vec![1]])
        );

        let f4 = make_ring(RingSpec::new(2, 1, 2, vec![1, 1])).unwrap();
        let d = build_discriminant(&f4).unwrap();
        assert_eq!(d.entries, vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(mat_mul_mod(&d.entries, &d.inverse, 2), identity(2));
    }

    #[test]
    fn invert_mod_examples() {
        let inv = invert_mod(&[vec![2, 3], vec![3, 3]], 4).unwrap();
        assert_eq!(inv, vec![vec![3, 1], vec![1, 2]]);
        assert_eq!(invert_mod(&identity(3), 9).unwrap(), identity(3));
        assert_eq!(
            invert_mod(&[vec![2, 0], vec![0, 2]], 4),
            Err(Error::NotInvertible { modulus: 4 })
        );
        assert!(matches!(
            invert_mod(&[vec![1, 0], vec![0]], 4),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn invert_needs_row_swap() {
        let m = vec![vec![2, 1], vec![1, 0]];
        let inv = invert_mod(&m, 4).unwrap();
        assert_eq!(mat_mul_mod(&m, &inv, 4), identity(2));
        assert_eq!(mat_mul_mod(&inv, &m, 4), identity(2));
    }

    #[test]
    fn apply_d_examples() {
        let r = gr16();
        let d = build_discriminant(&r).unwrap();
        assert_eq!(apply_d(&r, &d, &r.one()).unwrap().coeffs(), &[2, 3]);
        assert_eq!(apply_d(&r, &d, &r.zero()).unwrap(), r.zero());
        assert_eq!(apply_d(&r, &d, &r.xi()).unwrap().coeffs(), &[3, 3]);
    }

    #[test]
    fn matvec_costs_m_squared() {
        for m in 1..6usize {
            let mat: ResidueMatrix = (0..m)
                .map(|i| (0..m).map(|j| (i + j) as u64).collect())
                .collect();
            let x: Vec<u64> = (0..m as u64).collect();
            let (_, ops) = mat_vec_mod_counted(&mat, &x, 7);
            assert_eq!(ops, m * m);
        }
    }
}
