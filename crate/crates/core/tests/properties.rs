use galois_qft::discriminant::{apply_d, apply_d_inverse, build_discriminant, mat_vec_mod_counted};
use galois_qft::galois_ring::{make_ring, ElementClass, GrElement, RingContext, RingSpec};
use proptest::prelude::*;
use std::collections::HashSet;

fn rings() -> Vec<RingContext> {
    [
        RingSpec::new(2, 2, 2, vec![1, 1]),
        RingSpec::search(3, 2, 2),
        RingSpec::search(2, 3, 3),
        RingSpec::search(5, 2, 2),
        RingSpec::search(3, 2, 3),
    ]
    .into_iter()
    .map(|s| make_ring(s).unwrap())
    .collect()
}

fn elem(ring: &RingContext, raw: &[u64]) -> GrElement {
    ring.element(&raw[..ring.m()]).unwrap()
}

fn raw() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..1 << 20, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(which in 0usize..5, a in raw(), b in raw(), c in raw()) {
        let ring = &rings()[which];
        let (a, b, c) = (elem(ring, &a), elem(ring, &b), elem(ring, &c));
        let ab = ring.mul(&a, &b).unwrap();
        prop_assert_eq!(ring.mul(&ab, &c).unwrap(), ring.mul(&a, &ring.mul(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(&ab, &ring.mul(&b, &a).unwrap());
        let lhs = ring.mul(&a, &ring.add(&b, &c).unwrap()).unwrap();
        let rhs = ring.add(&ab, &ring.mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ring.sub(&ring.add(&a, &b).unwrap(), &b).unwrap(), a.clone());
        prop_assert_eq!(ring.mul(&a, &ring.one()).unwrap(), a);
    }

    #[test]
    fn frobenius_is_an_automorphism(which in 0usize..5, a in raw(), b in raw()) {
        let ring = &rings()[which];
        let (a, b) = (elem(ring, &a), elem(ring, &b));
        let phi = |x: &GrElement| ring.frobenius(x, 1).unwrap();
        prop_assert_eq!(phi(&ring.mul(&a, &b).unwrap()), ring.mul(&phi(&a), &phi(&b)).unwrap());
        prop_assert_eq!(phi(&ring.add(&a, &b).unwrap()), ring.add(&phi(&a), &phi(&b)).unwrap());
        prop_assert_eq!(ring.frobenius(&a, ring.m() as u64).unwrap(), a);
    }

    #[test]
    fn trace_is_linear_and_frobenius_invariant(which in 0usize..5, a in raw(), b in raw(), r in 0u64..1 << 20) {
        let ring = &rings()[which];
        let q = ring.modulus();
        let (a, b) = (elem(ring, &a), elem(ring, &b));
        let tr = |x: &GrElement| ring.trace(x).unwrap().value();
        prop_assert_eq!(tr(&ring.add(&a, &b).unwrap()), (tr(&a) + tr(&b)) % q);
        prop_assert_eq!(tr(&ring.frobenius(&a, 1).unwrap()), tr(&a));
        prop_assert_eq!(tr(&ring.scale(r, &a).unwrap()), (r % q) * tr(&a) % q);
        prop_assert_eq!(tr(&a), ring.trace_linear(&a));
    }

    #[test]
    fn padic_round_trip(which in 0usize..5, a in raw()) {
        let ring = &rings()[which];
        let a = elem(ring, &a);
        let form = ring.padic_decompose(&a).unwrap();
        prop_assert_eq!(form.digits.len(), ring.s() as usize);
        let order = ring.p().pow(ring.m() as u32) - 1;
        for t in &form.digits {
            prop_assert!(t.is_zero() || ring.pow(t, order).unwrap() == ring.one());
        }
        let is_unit = ring.classify(&a) == ElementClass::Unit;
        prop_assert_eq!(is_unit, !form.digits[0].is_zero());
        prop_assert_eq!(ring.padic_compose(&form).unwrap(), a);
    }

    #[test]
    fn units_invert_and_zero_divisors_factor(which in 0usize..5, a in raw()) {
        let ring = &rings()[which];
        let a = elem(ring, &a);
        match ring.classify(&a) {
            ElementClass::Zero => prop_assert!(a.is_zero()),
            ElementClass::Unit => {
                let inv = ring.inverse(&a).unwrap();
                prop_assert_eq!(ring.mul(&a, &inv).unwrap(), ring.one());
            }
            ElementClass::ZeroDivisor => {
                prop_assert!(ring.inverse(&a).is_err());
                let (j, u) = ring.zero_divisor_factor(&a).unwrap();
                prop_assert!(j >= 1 && j < ring.s());
                prop_assert_eq!(ring.classify(&u), ElementClass::Unit);
                prop_assert_eq!(ring.scale(ring.p().pow(j), &u).unwrap(), a);
            }
        }
    }

    #[test]
    fn apply_d_is_a_bijection(which in 0usize..5, a in raw()) {
        let ring = &rings()[which];
        let d = build_discriminant(ring).unwrap();
        let a = elem(ring, &a);
        let there = apply_d(ring, &d, &a).unwrap();
        prop_assert_eq!(apply_d_inverse(ring, &d, &there).unwrap(), a.clone());
        let (_, ops) = mat_vec_mod_counted(&d.entries, a.coeffs(), ring.modulus());
        prop_assert_eq!(ops, ring.m() * ring.m());
    }
}

#[test]
fn exhaustive_ring_facts() {
    for ring in rings().iter().filter(|r| r.cardinality().unwrap() <= 4096) {
        let (p, s, m) = (ring.p(), ring.s(), ring.m() as u32);
        let mut units = 0u64;
        let mut zds = 0u64;
        let mut image = HashSet::new();
        let d = build_discriminant(ring).unwrap();
        let mut seen = HashSet::new();
        for a in ring.elements().unwrap() {
            match ring.classify(&a) {
                ElementClass::Unit => units += 1,
                ElementClass::ZeroDivisor => {
                    zds += 1;
                    let (j, u) = ring.zero_divisor_factor(&a).unwrap();
                    assert_eq!(ring.scale(p.pow(j), &u).unwrap(), a);
                }
                ElementClass::Zero => {}
            }
            image.insert(ring.trace(&a).unwrap().value());
            seen.insert(apply_d(ring, &d, &a).unwrap());
        }
        assert_eq!(units, p.pow(s * m) - p.pow((s - 1) * m));
        assert_eq!(units + zds + 1, p.pow(s * m));
        assert_eq!(image.len() as u64, ring.modulus(), "trace is surjective");
        assert_eq!(seen.len() as u64, p.pow(s * m), "apply_D is injective");
    }
}
