//! Quotient arithmetic `Z_q[X]/(h)` and the basic-primitive polynomial checks.

use serde::Serialize;

use super::zmod::{add_mod, factorize, is_prime, mul_mod, neg_mod, sub_mod};
use super::RingSpec;
use crate::error::{Error, Result};

/// Multiplication in `Z_q[X]/(h)` for a monic `h` of degree `m`, given by its low
/// coefficients `h_0 .. h_{m-1}`.
///
/// Reduction uses `X^m = -(h_0 + h_1 X + ... + h_{m-1} X^{m-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyQuotient {
    q: u64,
    h: Vec<u64>,
}

impl PolyQuotient {
    pub fn new(q: u64, h: &[u64]) -> Self {
        assert!(!h.is_empty(), "defining polynomial must have degree >= 1");
        Self {
            q,
            h: h.iter().map(|&c| c % q).collect(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.h.len()
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = 1 % self.q;
        v
    }

    /// The class of `X`.
    pub fn x(&self) -> Vec<u64> {
        let m = self.degree();
        if m == 1 {
            vec![neg_mod(self.h[0], self.q)]
        } else {
            let mut v = vec![0; m];
            v[1] = 1;
            v
        }
    }

    /// Reduces a coefficient vector of any length modulo `h`.
    pub fn reduce(&self, mut poly: Vec<u64>) -> Vec<u64> {
        let m = self.degree();
        let q = self.q;
        for c in poly.iter_mut() {
            *c %= q;
        }
        for k in (m..poly.len()).rev() {
            let lead = poly[k];
            if lead == 0 {
                continue;
            }
            poly[k] = 0;
            for (i, &hi) in self.h.iter().enumerate() {
                poly[k - m + i] = sub_mod(poly[k - m + i], mul_mod(lead, hi, q), q);
            }
        }
        poly.resize(m, 0);
        poly
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.degree();
        let q = self.q;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(ai, bj, q), q);
            }
        }
        self.reduce(prod)
    }

    /// Multiplication by `X`: a shift followed by one reduction step.
    pub fn mul_x(&self, a: &[u64]) -> Vec<u64> {
        let mut shifted = Vec::with_capacity(a.len() + 1);
        shifted.push(0);
        shifted.extend_from_slice(a);
        self.reduce(shifted)
    }

    pub fn pow(&self, a: &[u64], mut exp: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_one(&self, a: &[u64]) -> bool {
        a == self.one().as_slice()
    }
}

/// Outcome of one named sub-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Results of the three basic-primitive sub-checks, in order:
/// irreducibility mod `p`, root order in the residue field, root order in the Galois ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<SubCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&SubCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub const CHECK_IRREDUCIBLE: &str = "irreducible_mod_p";
pub const CHECK_RESIDUE_ORDER: &str = "root_order_mod_p";
pub const CHECK_LIFTED_ORDER: &str = "root_order_in_ring";

/// Remainder of `num` divided by the monic `den` over `F_p`. Coefficients low-to-high;
/// `den` includes its leading 1.
fn poly_rem_fp(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let mut r = num.to_vec();
    let d = den.len() - 1;
    while r.len() > d {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - d;
            for i in 0..d {
                r[shift + i] = sub_mod(r[shift + i], mul_mod(lead, den[i], p), p);
            }
        }
    }
    r
}

/// Brute-force irreducibility over `F_p`: no monic factor of degree `1..=m/2` divides.
fn irreducible_mod_p(hbar: &[u64], p: u64) -> (bool, String) {
    let m = hbar.len();
    let mut full = hbar.to_vec();
    full.push(1);
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem_fp(&full, &g, p).iter().all(|&x| x == 0) {
                return (
                    false,
                    format!("divisible by monic factor {g:?} (low-to-high)"),
                );
            }
        }
    }
    (true, "no factor of degree <= m/2".to_string())
}

/// Checks that `X` has multiplicative order exactly `order` in `arith`.
fn root_has_order(arith: &PolyQuotient, order: u64) -> (bool, String) {
    let x = arith.x();
    if !arith.is_one(&arith.pow(&x, order)) {
        return (false, format!("xi^{order} != 1"));
    }
    for (prime, _) in factorize(order) {
        let d = order / prime;
        if arith.is_one(&arith.pow(&x, d)) {
            return (false, format!("xi^{d} = 1 for proper divisor {d}"));
        }
    }
    (true, format!("order {order}"))
}

/// Runs the three basic-primitive sub-checks. Ill-formed specs are errors; a well-formed
/// spec with a bad polynomial produces a report with failures.
pub fn validate_basic_primitive(spec: &RingSpec) -> Result<ValidationReport> {
    spec.check_well_formed()?;
    let p = spec.p;
    let q = spec.modulus()?;
    let order = spec.residue_field_size()? - 1;

    let hbar: Vec<u64> = spec.h.iter().map(|&c| c % p).collect();
    let (irr, irr_detail) = irreducible_mod_p(&hbar, p);
    let (res_ok, res_detail) = root_has_order(&PolyQuotient::new(p, &hbar), order);
    let (lift_ok, lift_detail) = root_has_order(&PolyQuotient::new(q, &spec.h), order);

    Ok(ValidationReport {
        checks: vec![
            SubCheck {
                name: CHECK_IRREDUCIBLE,
                passed: irr,
                detail: irr_detail,
            },
            SubCheck {
                name: CHECK_RESIDUE_ORDER,
                passed: res_ok,
                detail: res_detail,
            },
            SubCheck {
                name: CHECK_LIFTED_ORDER,
                passed: lift_ok,
                detail: lift_detail,
            },
        ],
    })
}

/// Exhaustive lexicographic search (on `h_0, h_1, ...`) for the smallest basic primitive
/// polynomial of degree `m` over `Z_{p^s}`. The search space has `p^{sm}` candidates and
/// must fit under `cap`.
pub fn find_basic_primitive(p: u64, s: u32, m: usize, cap: u64) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let probe = RingSpec::new(p, s, m, vec![0; m]);
    probe.check_well_formed()?;
    let q = probe.modulus()?;
    let space = probe
        .cardinality()
        .ok_or(Error::DimensionCapExceeded { dim: u64::MAX, cap })?;
    if space > cap {
        return Err(Error::DimensionCapExceeded { dim: space, cap });
    }
    let order = probe.residue_field_size()? - 1;

    let mut h = vec![0u64; m];
    loop {
        let hbar: Vec<u64> = h.iter().map(|&c| c % p).collect();
        // Cheap residue-field test first; only survivors get the full report.
        if root_has_order(&PolyQuotient::new(p, &hbar), order).0 {
            let candidate = RingSpec::new(p, s, m, h.clone());
            if validate_basic_primitive(&candidate)?.passed() {
                return Ok(h);
            }
        }
        // Odometer with h_0 as the most significant digit.
        let mut pos = m;
        loop {
            if pos == 0 {
                return Err(Error::SearchSpaceExhausted { p, s, m });
            }
            pos -= 1;
            h[pos] += 1;
            if h[pos] < q {
                break;
            }
            h[pos] = 0;
        }
    }
}
