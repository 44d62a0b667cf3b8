//! One-query recovery of the hidden `r` behind a control additive gate `A_r`.
//!
//! Conjugating `A_r` by `F ⊗ F^†` turns it into `B_r`, and `B_r |0>|1> = |r>|1>`, so a single
//! query on a Fourier-prepared state leaves `r` in the first register.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois_ring::{GrElement, RingContext};
use crate::qft::{gate_a, kron_apply, qft_direct, ComplexMatrix, Permutation};

/// Readout threshold on the dominant amplitude magnitude.
pub const READOUT_THRESHOLD: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// Index and magnitude of the largest amplitude.
    pub fn dominant(&self) -> (usize, f64) {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| (i, a.norm()))
            .fold((0, f64::NEG_INFINITY), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Something that can act on a state vector.
#[derive(Debug, Clone, Copy)]
pub enum Operator<'a> {
    Dense(&'a ComplexMatrix),
    Permutation(&'a Permutation),
    /// `A ⊗ B`, applied without materializing the product.
    Kron(&'a ComplexMatrix, &'a ComplexMatrix),
}

pub fn apply_unitary(state: &StateVector, op: Operator<'_>) -> Result<StateVector> {
    let amplitudes = match op {
        Operator::Dense(m) => m.mul_vec(&state.amplitudes)?,
        Operator::Permutation(p) => p.apply(&state.amplitudes)?,
        Operator::Kron(a, b) => kron_apply(a, b, &state.amplitudes)?,
    };
    Ok(StateVector { amplitudes })
}

/// Black box for `A_r`. Holds only the index map; `r` itself is not stored.
#[derive(Debug)]
pub struct Oracle {
    map: Permutation,
    queries: usize,
}

impl Oracle {
    pub fn apply(&mut self, state: &StateVector) -> Result<StateVector> {
        let out = apply_unitary(state, Operator::Permutation(&self.map))?;
        self.queries += 1;
        Ok(out)
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }
}

pub fn make_oracle(ring: &RingContext, r: &GrElement) -> Result<Oracle> {
    Ok(Oracle {
        map: gate_a(ring, r)?,
        queries: 0,
    })
}

#[derive(Debug, Clone)]
pub struct Recovery {
    pub r: GrElement,
    /// Magnitude of the amplitude that was read out.
    pub amplitude: f64,
    pub final_state: StateVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoveryRecord {
    pub ring: crate::galois_ring::RingSpec,
    pub r_hidden: Vec<u64>,
    pub r_recovered: Vec<u64>,
    pub queries: usize,
    pub amplitude: f64,
}

/// `|0>|1>` in the two-register basis.
pub fn initial_state(ring: &RingContext) -> Result<StateVector> {
    let n = ring.dim()?;
    Ok(StateVector::basis(
        n * n,
        ring.index_of(&ring.zero()) * n + ring.index_of(&ring.one()),
    ))
}

/// Prepares `|0>|1>`, applies `F ⊗ F^†`, queries the oracle once, applies `F^† ⊗ F`, and
/// reads the first register.
pub fn recover_r(ring: &RingContext, oracle: &mut Oracle) -> Result<Recovery> {
    if oracle.queries() != 0 {
        return Err(Error::OracleAlreadyQueried(oracle.queries()));
    }
    let n = ring.dim()?;
    if oracle.dim() != n * n {
        return Err(Error::ShapeMismatch {
            expected: n * n,
            got: oracle.dim(),
        });
    }
    let f = qft_direct(ring)?;
    let fd = f.dagger();

    let state = initial_state(ring)?;
    let state = apply_unitary(&state, Operator::Kron(&f, &fd))?;
    let state = oracle.apply(&state)?;
    let state = apply_unitary(&state, Operator::Kron(&fd, &f))?;

    let (index, amplitude) = state.dominant();
    if amplitude < READOUT_THRESHOLD {
        return Err(Error::AmbiguousMeasurement {
            threshold: READOUT_THRESHOLD,
            largest: amplitude,
        });
    }
    Ok(Recovery {
        r: ring.element_at(index / n),
        amplitude,
        final_state: state,
    })
}
