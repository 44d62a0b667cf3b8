//! Structured checks of the character-sum lemma and its corollaries, run per ring and
//! collected into a [`VerificationReport`].

use std::time::Instant;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::discriminant::{build_discriminant, mat_mul_mod, mat_vec_mod};
use crate::error::{Error, Result};
use crate::galois_ring::{ElementClass, GrElement, RingContext, RingSpec, DEFAULT_DIM_CAP};
use crate::qft::{
    gate_a, gate_b, qft_base, qft_direct, qft_factored_with, root_of_unity, roots_of_unity,
    shift_operator, tensor, ComplexMatrix, DEFAULT_GATE_CAP,
};

/// Tolerance for single-register matrix identities.
pub const MATRIX_TOL: f64 = 1e-12;
/// Tolerance for two-register (gate) identities.
pub const GATE_TOL: f64 = 1e-10;
/// Per-term tolerance for character sums; multiplied by the number of terms.
pub const SUM_TOL_PER_TERM: f64 = 1e-9;
/// Tolerance for inner products of normalized character vectors.
pub const INNER_PRODUCT_TOL: f64 = 1e-9;
/// Entrywise tolerance for the `m = 1` and `s = 1` reductions.
pub const REDUCTION_TOL: f64 = 1e-14;

/// Rings up to this size get exhaustive pair checks for orthonormality.
const EXHAUSTIVE_PAIR_LIMIT: usize = 81;
const SAMPLED_PAIRS: usize = 10_000;
/// Rings up to this size get every shift checked; larger rings get a seeded sample.
const EXHAUSTIVE_SHIFT_LIMIT: usize = 256;
const SAMPLED_SHIFTS: usize = 8;
/// Rings up to this size get every `r` checked for control inversion.
const EXHAUSTIVE_GATE_LIMIT: usize = 16;
const SAMPLED_GATES: usize = 3;

/// The ring set used when none is given.
pub fn default_specs() -> Vec<RingSpec> {
    vec![
        RingSpec::search(2, 2, 2),
        RingSpec::search(2, 1, 2),
        RingSpec::search(3, 2, 1),
        RingSpec::search(2, 3, 2),
        RingSpec::search(3, 1, 2),
    ]
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Cap on `p^{sm}`.
    pub cap: u64,
    /// Cap on the dense two-register dimension `p^{2sm}`.
    pub gate_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            cap: DEFAULT_DIM_CAP,
            gate_cap: DEFAULT_GATE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubResult {
    pub label: String,
    pub passed: bool,
    pub count: usize,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub ring: String,
    pub spec: Option<RingSpec>,
    pub status: CheckStatus,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sub_results: Vec<SubResult>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub entries: Vec<CheckRecord>,
}

impl VerificationReport {
    /// True iff no entry failed. Skipped entries are visible but do not fail the report.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(CheckRecord::passed)
    }

    pub fn find(&self, name: &str, ring: &str) -> Option<&CheckRecord> {
        self.entries
            .iter()
            .find(|e| e.name == name && e.ring == ring)
    }

    /// JSON array of entries; timings are dropped unless requested so that output is
    /// reproducible.
    pub fn to_json(&self, include_timings: bool) -> serde_json::Value {
        let mut v = serde_json::to_value(&self.entries).expect("serializable");
        if !include_timings {
            for e in v.as_array_mut().expect("array") {
                e.as_object_mut().expect("object").remove("elapsed_ms");
            }
        }
        v
    }
}

struct Outcome {
    passed: bool,
    deviation: f64,
    tolerance: f64,
    seed: Option<u64>,
    detail: String,
    sub_results: Vec<SubResult>,
}

impl Outcome {
    fn new(deviation: f64, tolerance: f64) -> Self {
        Self {
            passed: deviation < tolerance,
            deviation,
            tolerance,
            seed: None,
            detail: String::new(),
            sub_results: Vec::new(),
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    fn seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }
}

fn run_check(name: &str, ring: &RingContext, f: impl FnOnce() -> Result<Outcome>) -> CheckRecord {
    let start = Instant::now();
    let result = f();
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut rec = CheckRecord {
        name: name.to_string(),
        ring: ring.spec().label(),
        spec: Some(ring.spec().clone()),
        status: CheckStatus::Fail,
        max_deviation: 0.0,
        tolerance: 0.0,
        elapsed_ms,
        seed: None,
        detail: String::new(),
        sub_results: Vec::new(),
    };
    match result {
        Ok(o) => {
            rec.status = if o.passed {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            rec.max_deviation = o.deviation;
            rec.tolerance = o.tolerance;
            rec.seed = o.seed;
            rec.detail = o.detail;
            rec.sub_results = o.sub_results;
        }
        Err(e @ Error::DimensionCapExceeded { .. }) => {
            rec.status = CheckStatus::Skipped;
            rec.detail = format!("skipped: {e}");
        }
        Err(e) => rec.detail = format!("error: {e}"),
    }
    rec
}

/// `Tr(alpha u)` for every `u`, in index order.
fn trace_row(ring: &RingContext, alpha: &GrElement, elements: &[GrElement]) -> Vec<u64> {
    elements
        .iter()
        .map(|u| ring.trace_linear(&ring.mul_raw(alpha, u)))
        .collect()
}

fn character_sum(
    ring: &RingContext,
    alpha: &GrElement,
    elements: &[GrElement],
    roots: &[Complex64],
) -> Complex64 {
    trace_row(ring, alpha, elements)
        .into_iter()
        .map(|t| roots[t as usize])
        .sum()
}

/// `sum_u chi_alpha(u) = p^{sm} delta_{alpha,0}` for every `alpha`.
pub fn check_character_sum(ring: &RingContext) -> CheckRecord {
    run_check("character_sum", ring, || {
        let n = ring.dim()?;
        let elements: Vec<GrElement> = ring.elements()?.collect();
        let roots = roots_of_unity(ring.modulus());
        let mut worst = 0.0f64;
        for alpha in &elements {
            let sum = character_sum(ring, alpha, &elements, &roots);
            let expected = if alpha.is_zero() { n as f64 } else { 0.0 };
            worst = worst.max((sum - expected).norm());
        }
        Ok(Outcome::new(worst, SUM_TOL_PER_TERM * n as f64).detail(format!("{n} characters")))
    })
}

/// Fiber sizes `|Tr^{-1}(i)|` for `i in Z_{p^s}`, by exhaustive enumeration.
pub fn trace_fibers(ring: &RingContext) -> Result<Vec<u64>> {
    let mut fibers = vec![0u64; ring.modulus() as usize];
    for v in ring.elements()? {
        fibers[ring.trace(&v)?.value() as usize] += 1;
    }
    Ok(fibers)
}

/// `|ker Tr| = p^{(m-1)s}` and every fiber has that size.
pub fn check_trace_kernel(ring: &RingContext) -> CheckRecord {
    run_check("trace_kernel", ring, || {
        let fibers = trace_fibers(ring)?;
        let expected = ring.modulus().pow(ring.m() as u32 - 1);
        let worst = fibers
            .iter()
            .map(|&f| f.abs_diff(expected))
            .max()
            .unwrap_or(0);
        let mut o = Outcome::new(worst as f64, 0.5);
        o.passed = worst == 0;
        Ok(o.detail(format!("kernel size {}, expected {expected}", fibers[0])))
    })
}

/// The character-sum lemma split by the class of `alpha`: zero, one, other units, zero
/// divisors. Zero divisors `p^j u` are also summed as `sum_v omega_{p^{s-j}}^{Tr(u v)}`.
pub fn check_character_sum_by_class(ring: &RingContext) -> CheckRecord {
    run_check("character_sum_by_class", ring, || {
        let n = ring.dim()?;
        let q = ring.modulus();
        let tol = SUM_TOL_PER_TERM * n as f64;
        let elements: Vec<GrElement> = ring.elements()?.collect();
        let roots = roots_of_unity(q);

        let zero_sum = character_sum(ring, &ring.zero(), &elements, &roots);
        let zero_dev = (zero_sum - n as f64).norm();

        let one_direct = character_sum(ring, &ring.one(), &elements, &roots);
        let fibers = trace_fibers(ring)?;
        let one_cosets: Complex64 = fibers
            .iter()
            .enumerate()
            .map(|(i, &c)| roots[i] * c as f64)
            .sum();
        let one_dev = one_direct
            .norm()
            .max(one_cosets.norm())
            .max((one_direct - one_cosets).norm());

        let (mut units, mut unit_dev) = (0usize, 0.0f64);
        let (mut zds, mut zd_dev) = (0usize, 0.0f64);
        for alpha in &elements {
            match ring.classify(alpha) {
                ElementClass::Zero => {}
                ElementClass::Unit => {
                    if *alpha != ring.one() {
                        units += 1;
                        unit_dev =
                            unit_dev.max(character_sum(ring, alpha, &elements, &roots).norm());
                    }
                }
                ElementClass::ZeroDivisor => {
                    zds += 1;
                    let direct = character_sum(ring, alpha, &elements, &roots);
                    let (j, unit) = ring.zero_divisor_factor(alpha)?;
                    let reduced_modulus = ring.p().pow(ring.s() - j);
                    let factored: Complex64 = trace_row(ring, &unit, &elements)
                        .into_iter()
                        .map(|t| root_of_unity(t, reduced_modulus))
                        .sum();
                    zd_dev = zd_dev
                        .max(direct.norm())
                        .max(factored.norm())
                        .max((direct - factored).norm());
                }
            }
        }

        let sub = |label: &str, count: usize, dev: f64| SubResult {
            label: label.to_string(),
            passed: dev < tol,
            count,
            max_deviation: dev,
        };
        let sub_results = vec![
            sub("alpha=0", 1, zero_dev),
            sub("alpha=1", 1, one_dev),
            sub("unit", units, unit_dev),
            sub("zero_divisor", zds, zd_dev),
        ];
        let worst = sub_results
            .iter()
            .map(|s| s.max_deviation)
            .fold(0.0, f64::max);
        let mut o = Outcome::new(worst, tol).detail(format!(
            "{} units (incl. 1), {zds} zero divisors",
            units + 1
        ));
        o.passed = sub_results.iter().all(|s| s.passed);
        o.sub_results = sub_results;
        Ok(o)
    })
}

/// Normalized character vectors are orthonormal. Exhaustive for small rings, otherwise
/// `SAMPLED_PAIRS` seeded random pairs.
pub fn check_orthonormality(ring: &RingContext, seed: u64) -> CheckRecord {
    run_check("orthonormality", ring, || {
        let n = ring.dim()?;
        let elements: Vec<GrElement> = ring.elements()?.collect();
        let roots = roots_of_unity(ring.modulus());
        let q = ring.modulus() as usize;
        let inner = |ta: &[u64], tb: &[u64]| -> Complex64 {
            ta.iter()
                .zip(tb)
                .map(|(&a, &b)| roots[(a as usize + q - b as usize) % q])
                .sum::<Complex64>()
                / n as f64
        };
        let mut worst = 0.0f64;
        let (pairs, used_seed) = if n <= EXHAUSTIVE_PAIR_LIMIT {
            let rows: Vec<Vec<u64>> = elements
                .iter()
                .map(|a| trace_row(ring, a, &elements))
                .collect();
            for (i, ta) in rows.iter().enumerate() {
                for (j, tb) in rows.iter().enumerate() {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((inner(ta, tb) - delta).norm());
                }
            }
            (n * n, None)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_PAIRS {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let ta = trace_row(ring, &elements[i], &elements);
                let tb = trace_row(ring, &elements[j], &elements);
                let delta = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((inner(&ta, &tb) - delta).norm());
            }
            (SAMPLED_PAIRS, Some(seed))
        };
        Ok(Outcome::new(worst, INNER_PRODUCT_TOL)
            .detail(format!("{pairs} pairs"))
            .seed(used_seed))
    })
}

pub fn check_unitarity(ring: &RingContext) -> CheckRecord {
    run_check("unitarity", ring, || {
        let f = qft_direct(ring)?;
        Ok(Outcome::new(f.unitarity_deviation(), MATRIX_TOL).detail(format!("dim {}", f.dim())))
    })
}

pub fn check_factorization(ring: &RingContext) -> CheckRecord {
    run_check("factorization", ring, || {
        let d = build_discriminant(ring)?;
        let direct = qft_direct(ring)?;
        let factored = qft_factored_with(ring, &d)?;
        Ok(Outcome::new(direct.max_abs_diff(&factored)?, MATRIX_TOL)
            .detail(format!("D = {:?}", d.entries)))
    })
}

/// `F S_alpha F^† = diag(chi_alpha(u))`.
pub fn check_shift_diagonalization(ring: &RingContext, seed: u64) -> CheckRecord {
    run_check("shift_diagonalization", ring, || {
        let n = ring.dim()?;
        let f = qft_direct(ring)?;
        let fd = f.dagger();
        let elements: Vec<GrElement> = ring.elements()?.collect();
        let roots = roots_of_unity(ring.modulus());
        let (alphas, used_seed): (Vec<&GrElement>, _) = if n <= EXHAUSTIVE_SHIFT_LIMIT {
            (elements.iter().collect(), None)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (
                elements.choose_multiple(&mut rng, SAMPLED_SHIFTS).collect(),
                Some(seed),
            )
        };
        let mut worst = 0.0f64;
        for alpha in &alphas {
            let s = shift_operator(ring, alpha)?;
            let conj = f.mul_perm(&s)?.matmul(&fd)?;
            let diag: Vec<Complex64> = trace_row(ring, alpha, &elements)
                .into_iter()
                .map(|t| roots[t as usize])
                .collect();
            worst = worst.max(conj.max_abs_diff(&ComplexMatrix::diagonal(&diag))?);
        }
        Ok(Outcome::new(worst, MATRIX_TOL)
            .detail(format!("{} shifts", alphas.len()))
            .seed(used_seed))
    })
}

/// `(F^† ⊗ F) A_r (F ⊗ F^†) = B_r` with dense two-register matrices.
pub fn check_control_inversion(ring: &RingContext, seed: u64, gate_cap: usize) -> CheckRecord {
    run_check("control_inversion", ring, || {
        let n = ring.dim()?;
        if n * n > gate_cap {
            return Err(Error::DimensionCapExceeded {
                dim: (n * n) as u64,
                cap: gate_cap as u64,
            });
        }
        let f = qft_direct(ring)?;
        let fd = f.dagger();
        let left = tensor(&[fd.clone(), f.clone()]);
        let right = tensor(&[f, fd]);
        let elements: Vec<GrElement> = ring.elements()?.collect();
        let (rs, used_seed): (Vec<&GrElement>, _) = if n <= EXHAUSTIVE_GATE_LIMIT {
            (elements.iter().collect(), None)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (
                elements.choose_multiple(&mut rng, SAMPLED_GATES).collect(),
                Some(seed),
            )
        };
        let mut worst = 0.0f64;
        for r in &rs {
            let conj = left.mul_perm(&gate_a(ring, r)?)?.matmul(&right)?;
            worst = worst.max(conj.max_abs_diff(&gate_b(ring, r)?.to_dense())?);
        }
        Ok(Outcome::new(worst, GATE_TOL)
            .detail(format!("{} values of r, gate dim {}", rs.len(), n * n))
            .seed(used_seed))
    })
}

/// Finite-field QFT over `F_{p^m}` using the absolute trace `Tr(x) = sum_j x^{p^j}`
/// computed by exponentiation. `ring` must have `s = 1`.
pub fn finite_field_qft(ring: &RingContext) -> Result<ComplexMatrix> {
    if ring.s() != 1 {
        return Err(Error::InvalidSpec("finite-field QFT needs s = 1".into()));
    }
    let n = ring.dim()?;
    let p = ring.p();
    let roots = roots_of_unity(p);
    let scale = 1.0 / (n as f64).sqrt();
    let elements: Vec<GrElement> = ring.elements()?.collect();
    let field_trace = |x: &GrElement| -> Result<u64> {
        let mut acc = ring.zero();
        let mut power = x.clone();
        for _ in 0..ring.m() {
            acc = ring.add(&acc, &power)?;
            power = ring.pow(&power, p)?;
        }
        if acc.coeffs()[1..].iter().any(|&c| c != 0) {
            return Err(Error::TraceNotInBaseRing { index: 1 });
        }
        Ok(acc.coeffs()[0])
    };
    let rows = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|u| Ok(roots[field_trace(&ring.mul(a, u)?)? as usize] * scale))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ComplexMatrix::from_rows(rows)
}

/// At `m = 1` the QFT is the `Z_{p^s}` DFT; at `s = 1` it is the finite-field QFT.
/// Both reductions of the given ring's parameters are checked.
pub fn check_reductions(ring: &RingContext) -> CheckRecord {
    run_check("reductions", ring, || {
        let (p, s, m) = (ring.p(), ring.s(), ring.m());
        let base_ring = RingContext::with_cap(RingSpec::search(p, s, 1), ring.cap())?;
        let dev_m1 = qft_direct(&base_ring)?.max_abs_diff(&qft_base(p, s)?)?;

        let hbar: Vec<u64> = ring.spec().h.iter().map(|&c| c % p).collect();
        let field = RingContext::with_cap(RingSpec::new(p, 1, m, hbar), ring.cap())?;
        let dev_s1 = qft_direct(&field)?.max_abs_diff(&finite_field_qft(&field)?)?;

        let mut o = Outcome::new(dev_m1.max(dev_s1), REDUCTION_TOL).detail(format!(
            "m=1 vs DFT: {dev_m1:e}; s=1 vs field QFT: {dev_s1:e}"
        ));
        o.sub_results = vec![
            SubResult {
                label: "m=1".into(),
                passed: dev_m1 < REDUCTION_TOL,
                count: 1,
                max_deviation: dev_m1,
            },
            SubResult {
                label: "s=1".into(),
                passed: dev_s1 < REDUCTION_TOL,
                count: 1,
                max_deviation: dev_s1,
            },
        ];
        Ok(o)
    })
}

/// `D D^{-1} = I`, Hankel and symmetric structure, and `Tr(xy) = x^T D y` (exhaustive up to
/// 64 elements, seeded sample above).
pub fn check_discriminant(ring: &RingContext, seed: u64) -> CheckRecord {
    run_check("discriminant", ring, || {
        let n = ring.dim()?;
        let q = ring.modulus();
        let d = build_discriminant(ring)?;
        let m = ring.m();
        let id: Vec<Vec<u64>> = (0..m)
            .map(|i| (0..m).map(|j| u64::from(i == j)).collect())
            .collect();
        let mut failures = 0usize;
        if mat_mul_mod(&d.entries, &d.inverse, q) != id
            || mat_mul_mod(&d.inverse, &d.entries, q) != id
        {
            failures += 1;
        }
        if !d.is_hankel() || !d.is_symmetric() {
            failures += 1;
        }
        let elements: Vec<GrElement> = ring.elements()?.collect();
        let bilinear = |x: &GrElement, y: &GrElement| -> Result<bool> {
            let dy = mat_vec_mod(&d.entries, y.coeffs(), q);
            let form = x
                .coeffs()
                .iter()
                .zip(&dy)
                .fold(0u64, |acc, (&a, &b)| (acc + a * b % q) % q);
            Ok(ring.trace(&ring.mul(x, y)?)?.value() == form)
        };
        let (pairs, used_seed) = if n <= 64 {
            for x in &elements {
                for y in &elements {
                    failures += usize::from(!bilinear(x, y)?);
                }
            }
            (n * n, None)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_PAIRS {
                let x = &elements[rng.gen_range(0..n)];
                let y = &elements[rng.gen_range(0..n)];
                failures += usize::from(!bilinear(x, y)?);
            }
            (SAMPLED_PAIRS, Some(seed))
        };
        let mut o = Outcome::new(failures as f64, 0.5)
            .detail(format!("{pairs} bilinear pairs, {failures} failures"))
            .seed(used_seed);
        o.passed = failures == 0;
        Ok(o)
    })
}

/// Every check on one ring, in a fixed order.
pub fn run_ring(ring: &RingContext, cfg: &VerifyConfig) -> Vec<CheckRecord> {
    vec![
        check_character_sum(ring),
        check_character_sum_by_class(ring),
        check_trace_kernel(ring),
        check_orthonormality(ring, cfg.seed),
        check_discriminant(ring, cfg.seed),
        check_unitarity(ring),
        check_factorization(ring),
        check_shift_diagonalization(ring, cfg.seed),
        check_control_inversion(ring, cfg.seed, cfg.gate_cap),
        check_reductions(ring),
    ]
}

/// Runs every check against every spec. A spec that fails to construct yields one failed
/// `construct` entry and does not affect the others. Entries are stably sorted by name.
pub fn run_all(specs: &[RingSpec], cfg: &VerifyConfig) -> VerificationReport {
    let mut entries = Vec::new();
    for spec in specs {
        match RingContext::with_cap(spec.clone(), cfg.cap) {
            Ok(ring) => entries.extend(run_ring(&ring, cfg)),
            Err(e) => entries.push(CheckRecord {
                name: "construct".into(),
                ring: spec.label(),
                spec: Some(spec.clone()),
                status: CheckStatus::Fail,
                max_deviation: 0.0,
                tolerance: 0.0,
                elapsed_ms: 0.0,
                seed: None,
                detail: format!("error: {e}"),
                sub_results: Vec::new(),
            }),
        }
    }
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    VerificationReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_ring::make_ring;

    fn gr16() -> RingContext {
        make_ring(RingSpec::new(2, 2, 2, vec![1, 1])).unwrap()
    }

    #[test]
    fn character_sum_examples() {
        let r = gr16();
        let elements: Vec<GrElement> = r.elements().unwrap().collect();
        let roots = roots_of_unity(4);
        let s0 = character_sum(&r, &r.zero(), &elements, &roots);
        assert_eq!(s0, Complex64::new(16.0, 0.0));
        assert!(character_sum(&r, &r.one(), &elements, &roots).norm() < 1e-8);
        let zd = r.element(&[2, 0]).unwrap();
        assert!(character_sum(&r, &zd, &elements, &roots).norm() < 1e-8);
        assert_eq!(check_character_sum(&r).status, CheckStatus::Pass);
    }

    #[test]
    fn by_class_counts() {
        let rec = check_character_sum_by_class(&gr16());
        assert_eq!(rec.status, CheckStatus::Pass, "{rec:?}");
        let unit = rec.sub_results.iter().find(|s| s.label == "unit").unwrap();
        // 12 units, excluding 1.
        assert_eq!(unit.count, 11);
        let zd = rec
            .sub_results
            .iter()
            .find(|s| s.label == "zero_divisor")
            .unwrap();
        assert_eq!(zd.count, 3);
    }

    #[test]
    fn trace_kernel_examples() {
        assert_eq!(trace_fibers(&gr16()).unwrap(), vec![4, 4, 4, 4]);
        let z4 = make_ring(RingSpec::search(2, 2, 1)).unwrap();
        assert_eq!(trace_fibers(&z4).unwrap(), vec![1, 1, 1, 1]);
        let f4 = make_ring(RingSpec::new(2, 1, 2, vec![1, 1])).unwrap();
        assert_eq!(trace_fibers(&f4).unwrap(), vec![2, 2]);
        assert_eq!(check_trace_kernel(&f4).status, CheckStatus::Pass);
    }

    #[test]
    fn orthonormality_exhaustive_and_sampled() {
        let rec = check_orthonormality(&gr16(), 1);
        assert_eq!(rec.status, CheckStatus::Pass);
        assert_eq!(rec.detail, "256 pairs");
        assert_eq!(rec.seed, None);
        let big = make_ring(RingSpec::search(2, 2, 4)).unwrap();
        let rec = check_orthonormality(&big, 5);
        assert_eq!(rec.status, CheckStatus::Pass);
        assert_eq!(rec.seed, Some(5));
    }

    #[test]
    fn matrix_checks_on_gr16() {
        let r = gr16();
        for rec in [
            check_unitarity(&r),
            check_factorization(&r),
            check_shift_diagonalization(&r, 0),
            check_control_inversion(&r, 0, DEFAULT_GATE_CAP),
            check_reductions(&r),
            check_discriminant(&r, 0),
        ] {
            assert_eq!(rec.status, CheckStatus::Pass, "{rec:?}");
        }
    }

    #[test]
    fn gate_cap_skips_visibly() {
        let rec = check_control_inversion(&gr16(), 0, 100);
        assert_eq!(rec.status, CheckStatus::Skipped);
        assert!(rec.detail.contains("cap 100"), "{}", rec.detail);
        assert!(rec.passed());
    }

    #[test]
    fn reductions_for_small_parameters() {
        for spec in [
            RingSpec::search(2, 2, 1),
            RingSpec::search(2, 1, 2),
            RingSpec::search(3, 1, 1),
        ] {
            let rec = check_reductions(&make_ring(spec).unwrap());
            assert_eq!(rec.status, CheckStatus::Pass, "{rec:?}");
        }
    }

    #[test]
    fn run_all_edge_cases() {
        let empty = run_all(&[], &VerifyConfig::default());
        assert!(empty.entries.is_empty() && empty.passed());

        let specs = vec![
            RingSpec::new(2, 2, 2, vec![0, 0]),
            RingSpec::search(2, 1, 2),
        ];
        let report = run_all(&specs, &VerifyConfig::default());
        assert!(!report.passed());
        let construct = report.find("construct", "GR(4,16)").unwrap();
        assert_eq!(construct.status, CheckStatus::Fail);
        let others: Vec<_> = report
            .entries
            .iter()
            .filter(|e| e.ring == "GR(2,4)")
            .collect();
        assert_eq!(others.len(), 10);
        assert!(others.iter().all(|e| e.status == CheckStatus::Pass));
        let names: Vec<&str> = report.entries.iter().map(|e| e.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn json_omits_timings_by_default() {
        let report = run_all(&[RingSpec::search(2, 1, 1)], &VerifyConfig::default());
        let v = report.to_json(false);
        assert!(v[0].get("elapsed_ms").is_none());
        assert!(report.to_json(true)[0].get("elapsed_ms").is_some());
    }
}
