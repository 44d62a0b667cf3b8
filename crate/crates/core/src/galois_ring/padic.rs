use serde::{Serialize, Serializer};

use super::zmod::{add_mod, mul_mod, sub_mod};
use super::{GrElement, RingContext};
use crate::error::{Error, Result};

/// `a = t_0 + t_1 p + ... + t_{s-1} p^{s-1}` with every digit in the Teichmuller set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicForm {
    pub digits: Vec<GrElement>,
}

impl Serialize for PadicForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits: Vec<&[u64]> = self.digits.iter().map(GrElement::coeffs).collect();
        digits.serialize(serializer)
    }
}

pub(super) fn decompose(ring: &RingContext, a: &GrElement) -> Result<PadicForm> {
    ring.check(a)?;
    let p = ring.p();
    let q = ring.modulus();
    let mut rest = a.clone();
    let mut digits = Vec::with_capacity(ring.s() as usize);
    for _ in 0..ring.s() {
        let t = ring.teichmuller_lift(&rest)?;
        // rest - t is divisible by p coefficientwise.
        let diff: Vec<u64> = rest
            .coeffs
            .iter()
            .zip(&t.coeffs)
            .map(|(&x, &y)| sub_mod(x, y, q))
            .collect();
        debug_assert!(diff.iter().all(|c| c % p == 0));
        rest = ring.wrap(diff.into_iter().map(|c| c / p).collect());
        digits.push(t);
    }
    Ok(PadicForm { digits })
}

pub(super) fn compose(ring: &RingContext, form: &PadicForm) -> Result<GrElement> {
    if form.digits.len() != ring.s() as usize {
        return Err(Error::ShapeMismatch {
            expected: ring.s() as usize,
            got: form.digits.len(),
        });
    }
    let q = ring.modulus();
    let mut acc = vec![0u64; ring.m()];
    let mut weight = 1u64;
    for t in &form.digits {
        ring.check(t)?;
        for (x, &c) in acc.iter_mut().zip(&t.coeffs) {
            *x = add_mod(*x, mul_mod(weight, c, q), q);
        }
        weight = mul_mod(weight, ring.p(), q);
    }
    Ok(ring.wrap(acc))
}
