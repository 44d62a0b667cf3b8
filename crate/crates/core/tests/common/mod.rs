//! Reference arithmetic written from scratch, sharing no code with the library.
#![allow(dead_code)]

/// Schoolbook product of `a` and `b` reduced by the monic polynomial `X^m + sum h_i X^i`,
/// coefficients mod `q`.
pub fn naive_mul(a: &[u64], b: &[u64], h: &[u64], q: u64) -> Vec<u64> {
    let m = h.len();
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % q;
        }
    }
    naive_reduce(prod, h, q)
}

/// Long division by the monic `h`, highest degree first.
pub fn naive_reduce(mut poly: Vec<u64>, h: &[u64], q: u64) -> Vec<u64> {
    let m = h.len();
    while poly.len() > m {
        let top = poly.pop().unwrap() % q;
        let shift = poly.len() - m;
        for (i, &hi) in h.iter().enumerate() {
            poly[shift + i] = (poly[shift + i] + q - top * hi % q) % q;
        }
    }
    poly.resize(m, 0);
    poly.iter().map(|c| c % q).collect()
}

pub fn naive_pow(a: &[u64], k: u64, h: &[u64], q: u64) -> Vec<u64> {
    let mut acc = one(h.len());
    for _ in 0..k {
        acc = naive_mul(&acc, a, h, q);
    }
    acc
}

pub fn one(m: usize) -> Vec<u64> {
    let mut v = vec![0; m];
    v[0] = 1;
    v
}

pub fn x(h: &[u64], q: u64) -> Vec<u64> {
    let mut v = vec![0; h.len() + 1];
    v[1] = 1;
    naive_reduce(v, h, q)
}

/// Multiplicative order of `X` modulo `h` over `Z_q`, or `None` if it exceeds `limit`.
pub fn order_of_x(h: &[u64], q: u64, limit: u64) -> Option<u64> {
    let xv = x(h, q);
    let target = one(h.len());
    let mut acc = xv.clone();
    for k in 1..=limit {
        if acc == target {
            return Some(k);
        }
        acc = naive_mul(&acc, &xv, h, q);
    }
    None
}

/// Basic primitive test by orders alone: `X` has order exactly `p^m - 1` mod `p` (which
/// forces irreducibility) and `X^{p^m - 1} = 1` mod `p^s`.
pub fn is_basic_primitive(p: u64, s: u32, h: &[u64]) -> bool {
    let m = h.len() as u32;
    let target = p.pow(m) - 1;
    let hbar: Vec<u64> = h.iter().map(|c| c % p).collect();
    if order_of_x(&hbar, p, target) != Some(target) {
        return false;
    }
    let q = p.pow(s);
    naive_pow(&x(h, q), target, h, q) == one(h.len())
}

/// Lexicographically smallest valid `h` (first coefficient most significant).
pub fn brute_force_search(p: u64, s: u32, m: usize) -> Option<Vec<u64>> {
    let q = p.pow(s);
    let total = q.pow(m as u32);
    (0..total)
        .map(|mut k| {
            let mut h = vec![0; m];
            for slot in h.iter_mut().rev() {
                *slot = k % q;
                k /= q;
            }
            h
        })
        .find(|h| is_basic_primitive(p, s, h))
}

/// `Tr(a) = sum_j phi^j(a)` where `phi` substitutes `X -> X^p` in the coefficient
/// expansion. Returns the full vector so callers can confirm it lies in the base ring.
pub fn naive_trace(a: &[u64], p: u64, h: &[u64], q: u64) -> Vec<u64> {
    let m = h.len();
    let xv = x(h, q);
    let mut sum = vec![0u64; m];
    for j in 0..m as u32 {
        let root = naive_pow(&xv, p.pow(j), h, q);
        let mut power = one(m);
        for &c in a {
            for (s, v) in sum.iter_mut().zip(&power) {
                *s = (*s + c * v) % q;
            }
            power = naive_mul(&power, &root, h, q);
        }
    }
    sum
}

/// Mixed-radix index with `a_0` least significant.
pub fn index_of(a: &[u64], q: u64) -> usize {
    a.iter()
        .rev()
        .fold(0, |acc, &c| acc * q as usize + c as usize)
}

pub fn element_at(mut k: usize, m: usize, q: u64) -> Vec<u64> {
    (0..m)
        .map(|_| {
            let c = (k % q as usize) as u64;
            k /= q as usize;
            c
        })
        .collect()
}
