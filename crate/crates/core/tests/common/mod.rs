#![allow(dead_code)]

pub mod identities;

use proptest::prelude::*;
use qc2_core::{CodeVector, Elem, Field, Poly, Qc2Code};

pub fn field(q: u32) -> Field {
    Field::with_order(q, None).unwrap()
}

pub fn poly_from(f: &Field, coeffs: &[u32]) -> Poly {
    let q = f.order();
    Poly::new(f, coeffs.iter().map(|&c| Elem(c % q)).collect())
}

/// A code generated by one or two random pairs of degree below m.
pub fn arb_code(qs: &'static [u32], ms: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Qc2Code> {
    (prop::sample::select(qs), ms).prop_flat_map(|(q, m)| {
        let gens = prop::collection::vec(
            (prop::collection::vec(0..q, m), prop::collection::vec(0..q, m)),
            1..=2,
        );
        (Just(q), Just(m), gens, any::<bool>()).prop_map(|(q, m, gens, sparse)| {
            let f = field(q);
            let xm1 = Poly::xm_minus_one(&f, m);
            let vs: Vec<CodeVector> = gens
                .iter()
                .map(|(a, b)| {
                    let (mut a, mut b) = (poly_from(&f, a), poly_from(&f, b));
                    if sparse {
                        // push toward divisors of x^m-1 so that non-trivial codes are common
                        a = a.gcd(&xm1).unwrap_or(a);
                        b = &b * &a;
                    }
                    CodeVector::new(m, a, b)
                })
                .collect();
            Qc2Code::canonicalize(&f, m, &vs).unwrap()
        })
    })
}

pub fn random_vector(f: &Field, m: usize, seed: &[u32]) -> CodeVector {
    let q = f.order();
    let a: Vec<Elem> = (0..m).map(|i| Elem(seed[i % seed.len()].wrapping_mul(i as u32 + 7) % q)).collect();
    let b: Vec<Elem> = (0..m).map(|i| Elem(seed[(i + 3) % seed.len()].wrapping_mul(i as u32 + 3) % q)).collect();
    CodeVector::new(m, Poly::new(f, a), Poly::new(f, b))
}

/// Whether the shifts `x^j c` alone span a space of dimension `dim`,
/// by rank over the base field of the interleaved vectors.
pub fn generates_alone(field: &Field, c: &CodeVector, dim: usize) -> bool {
    let mut rows = Vec::with_capacity(c.m());
    let mut v = c.expand();
    for _ in 0..c.m() {
        rows.push(v.clone());
        v.rotate_right(2);
    }
    // Shifts of c and their F-multiples are all the R-multiples of c.
    qc2_core::linalg::rank(field, &rows) == dim
}

/// Exhaustive search for a single generator among all codewords.
pub fn has_single_generator(code: &Qc2Code) -> bool {
    let dim = code.dimension();
    code.enumerate_codewords(u64::MAX)
        .unwrap()
        .any(|c| generates_alone(code.field(), &c, dim))
}
