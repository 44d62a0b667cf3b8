//! Unitaries over `GR(p^s, p^{sm})`: additive characters, the QFT built directly from
//! characters and in factored form, shift operators and control additive gates.
//!
//! Basis ordering: element `x = sum_i x_i xi^i` sits at index `sum_i x_i (p^s)^i`, so `x_0`
//! is the least significant digit. Two-register states `|x>|y>` sit at
//! `index(x) * p^{sm} + index(y)`, first register most significant.

pub mod matrix;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::discriminant::{build_discriminant, mat_vec_mod, DiscriminantMatrix};
use crate::error::{Error, Result};
use crate::galois_ring::zmod::is_prime;
use crate::galois_ring::{GrElement, RingContext, DEFAULT_DIM_CAP};

pub use matrix::{kron_apply, root_of_unity, roots_of_unity, tensor, ComplexMatrix, Permutation};

/// Default bound on the dimension `p^{2sm}` of dense two-register matrices.
pub const DEFAULT_GATE_CAP: usize = 1024;

/// `chi_alpha(u) = exp(2 pi i Tr(alpha u) / p^s)`.
pub fn character(ring: &RingContext, alpha: &GrElement, u: &GrElement) -> Result<Complex64> {
    let prod = ring.mul(alpha, u)?;
    Ok(root_of_unity(ring.trace_linear(&prod), ring.modulus()))
}

/// `F = p^{-sm/2} sum_{alpha,u} chi_alpha(u) |alpha><u|`, entry by entry.
pub fn qft_direct(ring: &RingContext) -> Result<ComplexMatrix> {
    let n = ring.dim()?;
    let q = ring.modulus();
    let roots = roots_of_unity(q);
    let scale = 1.0 / (n as f64).sqrt();
    let elements: Vec<GrElement> = ring.elements()?.collect();
    let rows: Vec<Vec<Complex64>> = elements
        .par_iter()
        .map(|alpha| {
            elements
                .iter()
                .map(|u| roots[ring.trace_linear(&ring.mul_raw(alpha, u)) as usize] * scale)
                .collect()
        })
        .collect();
    ComplexMatrix::from_rows(rows)
}

fn dft_matrix(q: u64) -> ComplexMatrix {
    let roots = roots_of_unity(q);
    let scale = 1.0 / (q as f64).sqrt();
    ComplexMatrix::from_fn(q as usize, |x, y| {
        roots[((x as u128 * y as u128) % q as u128) as usize] * scale
    })
}

/// The `p^s`-point discrete Fourier matrix, entry `(x, y) = omega^{xy} / sqrt(p^s)`.
pub fn qft_base(p: u64, s: u32) -> Result<ComplexMatrix> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = p
        .checked_pow(s)
        .ok_or_else(|| Error::InvalidSpec("p^s overflows".into()))?;
    if q > DEFAULT_DIM_CAP {
        return Err(Error::DimensionCapExceeded {
            dim: q,
            cap: DEFAULT_DIM_CAP,
        });
    }
    Ok(dft_matrix(q))
}

/// `U_D = sum_x |x'><x|` with `x' = D x`, as an index map.
pub fn permutation_ud(ring: &RingContext, d: &DiscriminantMatrix) -> Result<Permutation> {
    permutation_from_matrix(ring, &d.entries)
}

/// `U_{D^{-1}}`, which equals `U_D^†`.
pub fn permutation_ud_inverse(ring: &RingContext, d: &DiscriminantMatrix) -> Result<Permutation> {
    permutation_from_matrix(ring, &d.inverse)
}

fn permutation_from_matrix(ring: &RingContext, mat: &[Vec<u64>]) -> Result<Permutation> {
    let q = ring.modulus();
    let map = ring
        .elements()?
        .map(|x| {
            let image = ring.element(&mat_vec_mod(mat, x.coeffs(), q))?;
            Ok(ring.index_of(&image))
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::new(map)
}

/// `(F_R)^{⊗m} ∘ U_D`.
pub fn qft_factored(ring: &RingContext) -> Result<ComplexMatrix> {
    ring.dim()?;
    let d = build_discriminant(ring)?;
    qft_factored_with(ring, &d)
}

pub fn qft_factored_with(ring: &RingContext, d: &DiscriminantMatrix) -> Result<ComplexMatrix> {
    ring.dim()?;
    let base = dft_matrix(ring.modulus());
    let power = tensor(&vec![base; ring.m()]);
    power.mul_perm(&permutation_ud(ring, d)?)
}

/// `S_alpha = sum_u |u + alpha><u|`.
pub fn shift_operator(ring: &RingContext, alpha: &GrElement) -> Result<Permutation> {
    let map = ring
        .elements()?
        .map(|u| Ok(ring.index_of(&ring.add(&u, alpha)?)))
        .collect::<Result<Vec<_>>>()?;
    Permutation::new(map)
}

fn two_register_map(
    ring: &RingContext,
    r: &GrElement,
    f: impl Fn(&GrElement, &GrElement, &GrElement) -> (GrElement, GrElement) + Sync,
) -> Result<Permutation> {
    let n = ring.dim()?;
    ring.check(r)?;
    let elements: Vec<GrElement> = ring.elements()?.collect();
    let map: Vec<usize> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (x, y) = (&elements[k / n], &elements[k % n]);
            let (x2, y2) = f(r, x, y);
            ring.index_of(&x2) * n + ring.index_of(&y2)
        })
        .collect();
    Permutation::new(map)
}

/// `A_r |x>|y> = |x>|y + r x>` as an index map.
pub fn gate_a(ring: &RingContext, r: &GrElement) -> Result<Permutation> {
    two_register_map(ring, r, |r, x, y| {
        (x.clone(), ring.add_raw(y, &ring.mul_raw(r, x)))
    })
}

/// `B_r |x>|y> = |x + r y>|y>` as an index map.
pub fn gate_b(ring: &RingContext, r: &GrElement) -> Result<Permutation> {
    two_register_map(ring, r, |r, x, y| {
        (ring.add_raw(x, &ring.mul_raw(r, y)), y.clone())
    })
}

/// Dense form of a two-register permutation, subject to `gate_cap`.
pub fn dense_gate(perm: &Permutation, gate_cap: usize) -> Result<ComplexMatrix> {
    if perm.dim() > gate_cap {
        return Err(Error::DimensionCapExceeded {
            dim: perm.dim() as u64,
            cap: gate_cap as u64,
        });
    }
    Ok(perm.to_dense())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_ring::{make_ring, RingSpec};

    const TOL: f64 = 1e-12;

    fn gr16() -> RingContext {
        make_ring(RingSpec::new(2, 2, 2, vec![1, 1])).unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < TOL
    }

    #[test]
    fn character_examples() {
        let r = gr16();
        let i = Complex64::new(0.0, 1.0);
        assert!(close(
            character(&r, &r.one(), &r.one()).unwrap(),
            Complex64::new(-1.0, 0.0)
        ));
        assert!(close(character(&r, &r.one(), &r.xi()).unwrap(), -i));
        for u in r.elements().unwrap() {
            assert_eq!(
                character(&r, &r.zero(), &u).unwrap(),
                Complex64::new(1.0, 0.0)
            );
        }
    }

    #[test]
    fn direct_qft_small_cases() {
        let z2 = make_ring(RingSpec::search(2, 1, 1)).unwrap();
        let f = qft_direct(&z2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            vec![Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        ])
        .unwrap();
        assert!(f.max_abs_diff(&expected).unwrap() < 1e-15);

        let r = gr16();
        let f = qft_direct(&r).unwrap();
        assert_eq!(f.dim(), 16);
        assert!(f
            .row(0)
            .iter()
            .all(|z| close(*z, Complex64::new(0.25, 0.0))));
        assert!(f.unitarity_deviation() < TOL);
    }

    #[test]
    fn base_qft() {
        let f4 = qft_base(2, 2).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let expected = Complex64::new(0.0, 1.0).powu((x * y) as u32) * 0.5;
                assert!(close(f4.get(x, y), expected));
            }
        }
        for (p, s) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)] {
            assert!(qft_base(p, s).unwrap().unitarity_deviation() < TOL);
        }
        assert_eq!(qft_base(4, 1).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn ud_examples() {
        let z4 = make_ring(RingSpec::search(2, 2, 1)).unwrap();
        let d = build_discriminant(&z4).unwrap();
        assert_eq!(permutation_ud(&z4, &d).unwrap(), Permutation::identity(4));

        let r = gr16();
        let d = build_discriminant(&r).unwrap();
        let ud = permutation_ud(&r, &d).unwrap();
        let target = r.index_of(&r.element(&[2, 3]).unwrap());
        assert_eq!(ud.image(r.index_of(&r.one())), target);
        let inv = permutation_ud_inverse(&r, &d).unwrap();
        assert_eq!(ud.compose(&inv).unwrap(), Permutation::identity(16));
        assert_eq!(inv, ud.inverse());
    }

    #[test]
    fn factored_matches_direct() {
        let r = gr16();
        let diff = qft_factored(&r)
            .unwrap()
            .max_abs_diff(&qft_direct(&r).unwrap())
            .unwrap();
        assert!(diff < TOL, "{diff}");

        let z8 = make_ring(RingSpec::search(2, 3, 1)).unwrap();
        assert_eq!(qft_factored(&z8).unwrap(), qft_base(2, 3).unwrap());
    }

    #[test]
    fn shift_examples() {
        let r = gr16();
        assert_eq!(
            shift_operator(&r, &r.zero()).unwrap(),
            Permutation::identity(16)
        );
        let a = r.element(&[1, 2]).unwrap();
        let b = r.element(&[3, 1]).unwrap();
        let sab = shift_operator(&r, &r.add(&a, &b).unwrap()).unwrap();
        let composed = shift_operator(&r, &a)
            .unwrap()
            .compose(&shift_operator(&r, &b).unwrap())
            .unwrap();
        assert_eq!(sab, composed);
        let s1 = shift_operator(&r, &r.one()).unwrap();
        for u in r.elements().unwrap() {
            let moved = r.add(&u, &r.one()).unwrap();
            assert_eq!(s1.image(r.index_of(&u)), r.index_of(&moved));
        }
    }

    #[test]
    fn gate_examples() {
        let r = gr16();
        let n = 16;
        assert_eq!(gate_a(&r, &r.zero()).unwrap(), Permutation::identity(n * n));
        assert_eq!(gate_b(&r, &r.zero()).unwrap(), Permutation::identity(n * n));
        let a1 = gate_a(&r, &r.one()).unwrap();
        for x in r.elements().unwrap() {
            let ix = r.index_of(&x);
            assert_eq!(a1.image(ix * n), ix * n + ix);
        }
        let axi = gate_a(&r, &r.xi()).unwrap();
        let one = r.index_of(&r.one());
        assert_eq!(axi.image(one * n), one * n + r.index_of(&r.xi()));
        assert!(dense_gate(&axi, 255).is_err());
        assert_eq!(dense_gate(&axi, 256).unwrap().dim(), 256);
    }

    #[test]
    fn rejects_oversized_ring() {
        let r = crate::galois_ring::RingContext::with_cap(RingSpec::new(2, 3, 2, vec![1, 1]), 16)
            .unwrap();
        assert!(matches!(
            qft_direct(&r),
            Err(Error::DimensionCapExceeded { .. })
        ));
        assert!(matches!(
            qft_factored(&r),
            Err(Error::DimensionCapExceeded { .. })
        ));
    }
}
