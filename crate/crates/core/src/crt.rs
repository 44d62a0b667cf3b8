//! Prime-power splitting `Z_n ≅ Z_{p_1^{e_1}} ⊕ ... ⊕ Z_{p_k^{e_k}}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois_ring::zmod::factorize;

/// Largest accepted modulus.
pub const MAX_CRT_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimePowerFactor {
    pub prime: u64,
    pub exponent: u32,
    pub modulus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrtDecomposition {
    pub modulus: u64,
    pub factors: Vec<PrimePowerFactor>,
    pub isomorphism: String,
}

impl CrtDecomposition {
    /// Image of `x` under `Z_n -> prod Z_{p_i^{e_i}}`.
    pub fn split(&self, x: u64) -> Vec<u64> {
        self.factors.iter().map(|f| x % f.modulus).collect()
    }
}

pub fn crt_decompose(n: u64) -> Result<CrtDecomposition> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("modulus must be >= 2, got {n}")));
    }
    if n > MAX_CRT_MODULUS {
        return Err(Error::InvalidSpec(format!(
            "modulus must be <= {MAX_CRT_MODULUS}"
        )));
    }
    let factors: Vec<PrimePowerFactor> = factorize(n)
        .into_iter()
        .map(|(prime, exponent)| PrimePowerFactor {
            prime,
            exponent,
            modulus: prime.pow(exponent),
        })
        .collect();
    let parts: Vec<String> = factors.iter().map(|f| format!("Z_{}", f.modulus)).collect();
    Ok(CrtDecomposition {
        modulus: n,
        isomorphism: format!("Z_{n} ≅ {}", parts.join(" ⊕ ")),
        factors,
    })
}
