//! Exact arithmetic in the Galois ring `GR(p^s, p^{sm}) = Z_{p^s}[X]/(h)`.
//!
//! Elements are stored in the additive basis `1, xi, ..., xi^{m-1}` where `xi` is the class
//! of `X`. The defining polynomial must be basic primitive *and* its root must have order
//! `p^m - 1` in the ring, so that `{0, 1, xi, ..., xi^{p^m - 2}}` is the Teichmuller set.

mod padic;
pub mod poly;
pub mod zmod;

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::discriminant::invert_mod;
use crate::error::{Error, Result};

pub use padic::PadicForm;
pub use poly::{find_basic_primitive, validate_basic_primitive, PolyQuotient, ValidationReport};
pub use zmod::ZmodElem;

use zmod::{add_mod, is_prime, mul_mod, neg_mod, sub_mod, valuation};

/// Default bound on `p^{sm}` for anything that enumerates the ring or builds matrices over it.
pub const DEFAULT_DIM_CAP: u64 = 4096;

/// Largest supported characteristic `p^s`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Parameters of `GR(p^s, p^{sm})`. `h` holds `h_0 .. h_{m-1}`; the leading `X^m` is implied.
///
/// An empty `h` asks [`RingContext::new`] to search for the smallest valid polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u64,
    pub s: u32,
    pub m: usize,
    #[serde(default)]
    pub h: Vec<u64>,
}

impl RingSpec {
    pub fn new(p: u64, s: u32, m: usize, h: Vec<u64>) -> Self {
        Self { p, s, m, h }
    }

    /// Spec with an unresolved polynomial.
    pub fn search(p: u64, s: u32, m: usize) -> Self {
        Self::new(p, s, m, Vec::new())
    }

    pub fn modulus(&self) -> Result<u64> {
        self.p
            .checked_pow(self.s)
            .filter(|&q| q <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidSpec(format!("p^s exceeds {MAX_MODULUS}")))
    }

    pub fn residue_field_size(&self) -> Result<u64> {
        u32::try_from(self.m)
            .ok()
            .and_then(|m| self.p.checked_pow(m))
            .ok_or_else(|| Error::InvalidSpec("p^m overflows 64 bits".into()))
    }

    /// `p^{sm}`, or `None` on overflow.
    pub fn cardinality(&self) -> Option<u64> {
        let e = (self.s as u64).checked_mul(self.m as u64)?;
        self.p.checked_pow(u32::try_from(e).ok()?)
    }

    pub fn check_well_formed(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        if self.s == 0 {
            return Err(Error::InvalidSpec("s must be >= 1".into()));
        }
        if self.m == 0 {
            return Err(Error::InvalidSpec("m must be >= 1".into()));
        }
        let q = self.modulus()?;
        if self.h.len() != self.m {
            return Err(Error::InvalidSpec(format!(
                "h has {} coefficients, expected m = {}",
                self.h.len(),
                self.m
            )));
        }
        if let Some(&c) = self.h.iter().find(|&&c| c >= q) {
            return Err(Error::InvalidSpec(format!(
                "coefficient {c} not reduced mod {q}"
            )));
        }
        Ok(())
    }

    /// Human-readable name such as `GR(4,16)`.
    pub fn label(&self) -> String {
        match (self.p.checked_pow(self.s), self.cardinality()) {
            (Some(q), Some(n)) => format!("GR({q},{n})"),
            _ => format!(
                "GR({}^{},{}^{})",
                self.p,
                self.s,
                self.p,
                self.s as u64 * self.m as u64
            ),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} h={:?}", self.label(), self.h)
    }
}

/// An element `a_0 + a_1 xi + ... + a_{m-1} xi^{m-1}` of a particular ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrElement {
    coeffs: Vec<u64>,
    ring_id: u64,
}

impl GrElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementClass {
    Zero,
    Unit,
    ZeroDivisor,
}

#[derive(Debug, Clone)]
struct Tables {
    /// `xi^0 .. xi^{p^m - 2}`.
    xi_powers: Vec<GrElement>,
    teichmuller: Vec<GrElement>,
    /// Residue vector mod `p` to position in `teichmuller`.
    lookup: HashMap<Vec<u64>, usize>,
}

/// A validated ring plus precomputed data. Immutable after construction.
#[derive(Debug, Clone)]
pub struct RingContext {
    spec: RingSpec,
    q: u64,
    arith: PolyQuotient,
    id: u64,
    cap: u64,
    /// `phi(xi^i) = xi^{p i}` for `i < m`.
    frob_basis: Vec<Vec<u64>>,
    /// `Tr(xi^i)` for `i < m`, via Frobenius sums.
    basis_traces: Vec<u64>,
    tables: Option<Tables>,
}

/// Builds a ring context with the default dimension cap.
pub fn make_ring(spec: RingSpec) -> Result<RingContext> {
    RingContext::new(spec)
}

impl RingContext {
    pub fn new(spec: RingSpec) -> Result<Self> {
        Self::with_cap(spec, DEFAULT_DIM_CAP)
    }

    /// Validates `spec` and precomputes Frobenius and trace data. The Teichmuller and
    /// power tables are built only when `p^m <= cap`.
    pub fn with_cap(mut spec: RingSpec, cap: u64) -> Result<Self> {
        if !is_prime(spec.p) {
            return Err(Error::NotPrime(spec.p));
        }
        if spec.h.is_empty() && spec.m >= 1 {
            spec.h = find_basic_primitive(spec.p, spec.s, spec.m, cap.max(DEFAULT_DIM_CAP))?;
        }
        let report = validate_basic_primitive(&spec)?;
        if let Some(fail) = report.first_failure() {
            return Err(Error::NotBasicPrimitive {
                check: format!("{} ({})", fail.name, fail.detail),
            });
        }
        let q = spec.modulus()?;
        let arith = PolyQuotient::new(q, &spec.h);
        let mut hasher = DefaultHasher::new();
        spec.hash(&mut hasher);
        let id = hasher.finish();

        let xi_p = arith.pow(&arith.x(), spec.p);
        let mut frob_basis = Vec::with_capacity(spec.m);
        let mut cur = arith.one();
        for _ in 0..spec.m {
            frob_basis.push(cur.clone());
            cur = arith.mul(&cur, &xi_p);
        }

        let mut ring = Self {
            spec,
            q,
            arith,
            id,
            cap,
            frob_basis,
            basis_traces: Vec::new(),
            tables: None,
        };

        let mut traces = Vec::with_capacity(ring.m());
        for i in 0..ring.m() {
            let mut e = vec![0; ring.m()];
            e[i] = 1;
            traces.push(ring.trace(&ring.wrap(e))?.value());
        }
        ring.basis_traces = traces;

        let field_size = ring.spec.residue_field_size()?;
        if field_size <= cap {
            ring.tables = Some(ring.build_tables(field_size));
        }
        Ok(ring)
    }

    fn build_tables(&self, field_size: u64) -> Tables {
        let order = (field_size - 1) as usize;
        let mut xi_powers = Vec::with_capacity(order);
        let mut cur = self.arith.one();
        for _ in 0..order {
            xi_powers.push(self.wrap(cur.clone()));
            cur = self.arith.mul_x(&cur);
        }
        let mut teichmuller = Vec::with_capacity(order + 1);
        teichmuller.push(self.zero());
        teichmuller.extend(xi_powers.iter().cloned());
        let lookup = teichmuller
            .iter()
            .enumerate()
            .map(|(i, t)| (self.residue_mod_p(t), i))
            .collect();
        Tables {
            xi_powers,
            teichmuller,
            lookup,
        }
    }

    fn wrap(&self, coeffs: Vec<u64>) -> GrElement {
        debug_assert_eq!(coeffs.len(), self.m());
        GrElement {
            coeffs,
            ring_id: self.id,
        }
    }

    pub(crate) fn check(&self, a: &GrElement) -> Result<()> {
        if a.ring_id != self.id || a.coeffs.len() != self.m() {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn s(&self) -> u32 {
        self.spec.s
    }

    pub fn m(&self) -> usize {
        self.spec.m
    }

    /// The characteristic `p^s`.
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn arith(&self) -> &PolyQuotient {
        &self.arith
    }

    /// `p^{sm}`, or `None` if it does not fit in 64 bits.
    pub fn cardinality(&self) -> Option<u64> {
        self.spec.cardinality()
    }

    /// `p^{sm}` as a matrix dimension, enforcing the cap.
    pub fn dim(&self) -> Result<usize> {
        let n = self.cardinality().ok_or(Error::DimensionCapExceeded {
            dim: u64::MAX,
            cap: self.cap,
        })?;
        if n > self.cap {
            return Err(Error::DimensionCapExceeded {
                dim: n,
                cap: self.cap,
            });
        }
        Ok(n as usize)
    }

    /// Builds an element from coefficients, reducing each mod `p^s`.
    pub fn element(&self, coeffs: &[u64]) -> Result<GrElement> {
        if coeffs.len() != self.m() {
            return Err(Error::ShapeMismatch {
                expected: self.m(),
                got: coeffs.len(),
            });
        }
        Ok(self.wrap(coeffs.iter().map(|&c| c % self.q).collect()))
    }

    pub fn zero(&self) -> GrElement {
        self.wrap(vec![0; self.m()])
    }

    pub fn one(&self) -> GrElement {
        self.wrap(self.arith.one())
    }

    pub fn xi(&self) -> GrElement {
        self.wrap(self.arith.x())
    }

    /// Embeds `r in Z_{p^s}`.
    pub fn from_base(&self, r: u64) -> GrElement {
        let mut c = vec![0; self.m()];
        c[0] = r % self.q;
        self.wrap(c)
    }

    /// Element with mixed-radix index `sum_i a_i (p^s)^i` (`a_0` least significant).
    pub fn element_at(&self, mut index: usize) -> GrElement {
        let q = self.q as usize;
        let coeffs = (0..self.m())
            .map(|_| {
                let d = index % q;
                index /= q;
                d as u64
            })
            .collect();
        self.wrap(coeffs)
    }

    pub fn index_of(&self, a: &GrElement) -> usize {
        let q = self.q as usize;
        a.coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * q + c as usize)
    }

    /// All elements in index order. Subject to the dimension cap.
    pub fn elements(&self) -> Result<impl Iterator<Item = GrElement> + '_> {
        let n = self.dim()?;
        Ok((0..n).map(move |i| self.element_at(i)))
    }

    pub fn add(&self, a: &GrElement, b: &GrElement) -> Result<GrElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    pub(crate) fn add_raw(&self, a: &GrElement, b: &GrElement) -> GrElement {
        let q = self.q;
        self.wrap(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| add_mod(x, y, q))
                .collect(),
        )
    }

    pub fn neg(&self, a: &GrElement) -> Result<GrElement> {
        self.check(a)?;
        Ok(self.wrap(a.coeffs.iter().map(|&x| neg_mod(x, self.q)).collect()))
    }

    pub fn sub(&self, a: &GrElement, b: &GrElement) -> Result<GrElement> {
        self.check(a)?;
        self.check(b)?;
        let q = self.q;
        Ok(self.wrap(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| sub_mod(x, y, q))
                .collect(),
        ))
    }

    pub fn mul(&self, a: &GrElement, b: &GrElement) -> Result<GrElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_raw(a, b))
    }

    pub(crate) fn mul_raw(&self, a: &GrElement, b: &GrElement) -> GrElement {
        self.wrap(self.arith.mul(&a.coeffs, &b.coeffs))
    }

    /// `r * a` for `r` in the base ring.
    pub fn scale(&self, r: u64, a: &GrElement) -> Result<GrElement> {
        self.check(a)?;
        let q = self.q;
        Ok(self.wrap(a.coeffs.iter().map(|&x| mul_mod(r % q, x, q)).collect()))
    }

    pub fn pow(&self, a: &GrElement, k: u64) -> Result<GrElement> {
        self.check(a)?;
        Ok(self.wrap(self.arith.pow(&a.coeffs, k)))
    }

    fn frobenius_once(&self, a: &[u64]) -> Vec<u64> {
        let q = self.q;
        let mut out = vec![0u64; self.m()];
        for (&ai, img) in a.iter().zip(&self.frob_basis) {
            if ai == 0 {
                continue;
            }
            for (o, &c) in out.iter_mut().zip(img) {
                *o = add_mod(*o, mul_mod(ai, c, q), q);
            }
        }
        out
    }

    /// `phi^i(a)` where `phi` fixes `Z_{p^s}` and sends `xi` to `xi^p`.
    pub fn frobenius(&self, a: &GrElement, i: u64) -> Result<GrElement> {
        self.check(a)?;
        let mut cur = a.coeffs.clone();
        for _ in 0..(i % self.m() as u64) {
            cur = self.frobenius_once(&cur);
        }
        Ok(self.wrap(cur))
    }

    /// `Tr(a) = sum_{j < m} phi^j(a)`, computed literally.
    pub fn trace(&self, a: &GrElement) -> Result<ZmodElem> {
        self.check(a)?;
        let q = self.q;
        let mut cur = a.coeffs.clone();
        let mut acc = cur.clone();
        for _ in 1..self.m() {
            cur = self.frobenius_once(&cur);
            for (x, &c) in acc.iter_mut().zip(&cur) {
                *x = add_mod(*x, c, q);
            }
        }
        if let Some(index) = acc.iter().skip(1).position(|&c| c != 0) {
            return Err(Error::TraceNotInBaseRing { index: index + 1 });
        }
        Ok(ZmodElem::new(acc[0], q))
    }

    /// Trace by linearity from the cached `Tr(xi^i)`. Agrees with [`Self::trace`].
    pub fn trace_linear(&self, a: &GrElement) -> u64 {
        let q = self.q;
        a.coeffs
            .iter()
            .zip(&self.basis_traces)
            .fold(0, |acc, (&c, &t)| add_mod(acc, mul_mod(c, t, q), q))
    }

    /// `Tr(xi^i)` for `i < m`.
    pub fn basis_traces(&self) -> &[u64] {
        &self.basis_traces
    }

    /// Unit iff the image in the residue field is nonzero.
    pub fn classify(&self, a: &GrElement) -> ElementClass {
        if a.is_zero() {
            ElementClass::Zero
        } else if a.coeffs.iter().any(|&c| c % self.p() != 0) {
            ElementClass::Unit
        } else {
            ElementClass::ZeroDivisor
        }
    }

    /// Multiplicative inverse of a unit, by solving `M_a b = 1` where `M_a` is the
    /// multiplication-by-`a` matrix over `Z_{p^s}`.
    pub fn inverse(&self, a: &GrElement) -> Result<GrElement> {
        self.check(a)?;
        if self.classify(a) != ElementClass::Unit {
            return Err(Error::NotAUnit);
        }
        let m = self.m();
        // Column j holds a * xi^j.
        let mut cols = Vec::with_capacity(m);
        let mut cur = a.coeffs.clone();
        for _ in 0..m {
            cols.push(cur.clone());
            cur = self.arith.mul_x(&cur);
        }
        let mat: Vec<Vec<u64>> = (0..m)
            .map(|i| (0..m).map(|j| cols[j][i]).collect())
            .collect();
        let inv = invert_mod(&mat, self.q)?;
        Ok(self.wrap((0..m).map(|i| inv[i][0]).collect()))
    }

    /// Writes a zero divisor as `p^j * u` with `u` a unit and `1 <= j <= s-1`.
    pub fn zero_divisor_factor(&self, a: &GrElement) -> Result<(u32, GrElement)> {
        self.check(a)?;
        if self.classify(a) != ElementClass::ZeroDivisor {
            return Err(Error::NotAZeroDivisor);
        }
        let p = self.p();
        let j = a
            .coeffs
            .iter()
            .filter_map(|&c| valuation(c, p))
            .min()
            .expect("zero divisor has a nonzero coefficient");
        let pj = p.pow(j);
        Ok((j, self.wrap(a.coeffs.iter().map(|&c| c / pj).collect())))
    }

    fn residue_mod_p(&self, a: &GrElement) -> Vec<u64> {
        a.coeffs.iter().map(|&c| c % self.p()).collect()
    }

    /// The Teichmuller element congruent to `a` mod `p`, via table lookup when tables exist.
    pub fn teichmuller_lift(&self, a: &GrElement) -> Result<GrElement> {
        self.check(a)?;
        match &self.tables {
            Some(t) => Ok(t.teichmuller[t.lookup[&self.residue_mod_p(a)]].clone()),
            None => Ok(self.teichmuller_lift_by_power(a)),
        }
    }

    /// `a^{(p^m)^{s-1}}`, which depends only on `a mod p` and lies in the Teichmuller set.
    pub fn teichmuller_lift_by_power(&self, a: &GrElement) -> GrElement {
        let mut cur = a.coeffs.clone();
        for _ in 0..(self.s() as usize - 1) * self.m() {
            cur = self.arith.pow(&cur, self.p());
        }
        self.wrap(cur)
    }

    /// `{0, 1, xi, ..., xi^{p^m - 2}}` in that order.
    pub fn teichmuller_set(&self) -> Result<Vec<GrElement>> {
        self.tables
            .as_ref()
            .map(|t| t.teichmuller.clone())
            .ok_or_else(|| self.table_cap_error())
    }

    /// Cached `xi^0 .. xi^{p^m - 2}`.
    pub fn xi_powers(&self) -> Result<&[GrElement]> {
        self.tables
            .as_ref()
            .map(|t| t.xi_powers.as_slice())
            .ok_or_else(|| self.table_cap_error())
    }

    fn table_cap_error(&self) -> Error {
        Error::DimensionCapExceeded {
            dim: self.spec.residue_field_size().unwrap_or(u64::MAX),
            cap: self.cap,
        }
    }

    pub fn padic_decompose(&self, a: &GrElement) -> Result<PadicForm> {
        padic::decompose(self, a)
    }

    pub fn padic_compose(&self, form: &PadicForm) -> Result<GrElement> {
        padic::compose(self, form)
    }
}
