//! Operator identities for transposes and the three forms, each checked
//! against coefficient-level oracles. Every function draws its own inputs
//! from `rng` and returns a description of the first mismatch.

use qc2_core::duality::{euclidean_ring, hermitian_ring, inner_product};
use qc2_core::factor::factorize;
use qc2_core::{CodeVector, Elem, Field, FormKind, Poly, RingElem};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Check = Result<(), String>;
type Identity = fn(&mut rand_chacha::ChaCha8Rng) -> Check;

pub const FIELDS: &[u32] = &[2, 3, 4, 5, 7, 8, 9, 16, 25];
pub const SQUARE_FIELDS: &[u32] = &[4, 9, 16, 25];

pub fn pick_field<R: Rng>(rng: &mut R, orders: &[u32]) -> Field {
    Field::with_order(*orders.choose(rng).unwrap(), None).unwrap()
}

/// Uniform polynomial with `len` coefficients (degree below `len`).
pub fn random_poly<R: Rng>(rng: &mut R, f: &Field, len: usize) -> Poly {
    let q = f.order();
    Poly::new(f, (0..len).map(|_| Elem(rng.gen_range(0..q))).collect())
}

/// `x^m f(1/x)` by moving coefficient i to position m - i.
fn flip(f: &Poly, m: usize) -> Poly {
    let mut out = vec![Elem::ZERO; m + 1];
    for (i, &c) in f.coeffs().iter().enumerate() {
        out[m - i] = c;
    }
    Poly::new(f.field(), out)
}

/// The reduced formula `(a0 + am) + a_{m-1} x + ... + a1 x^{m-1}`.
fn folded(f: &Poly, m: usize) -> Poly {
    let field = f.field();
    let mut out = vec![Elem::ZERO; m];
    out[0] = field.add(f.coeff(0), f.coeff(m));
    for (i, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = f.coeff(m - i);
    }
    Poly::new(field, out)
}

fn ring(m: usize, p: &Poly) -> RingElem {
    RingElem::new(m, p.clone())
}

fn eq(what: &str, left: &Poly, right: &Poly) -> Check {
    if left == right {
        Ok(())
    } else {
        Err(format!("{what}: {left} != {right}"))
    }
}

fn conj(p: &Poly) -> Poly {
    p.conj().expect("square field")
}

/// `f° = x^{m - deg f} f*` and the folded form modulo `x^m - 1`.
pub fn transpose_shape<R: Rng>(rng: &mut R) -> Check {
    let f = pick_field(rng, FIELDS);
    let m = rng.gen_range(1..=24);
    let p = random_poly(rng, &f, m + 1);
    let raw = p.transpose_raw(m).map_err(|e| e.to_string())?;
    eq("raw transpose", &raw, &flip(&p, m))?;
    if let Some(d) = p.degree() {
        eq("x^(m-deg f) f*", &raw, &p.reciprocal().shift(m - d))?;
    }
    let reduced = p.transpose(m).map_err(|e| e.to_string())?;
    eq("reduced transpose", reduced.poly(), &folded(&p, m))
}

/// `x^m (fh)° = f° h°` when `deg fh <= m`, and `(fh)° = f° h°` in R.
pub fn transpose_product<R: Rng>(rng: &mut R) -> Check {
    let f = pick_field(rng, FIELDS);
    let m = rng.gen_range(1..=24);
    let df = rng.gen_range(0..=m);
    let a = random_poly(rng, &f, df + 1);
    let b = random_poly(rng, &f, m - df + 1);
    let ab = &a * &b;
    let lhs = flip(&ab, m).shift(m);
    let rhs = &flip(&a, m) * &flip(&b, m);
    eq("x^m (fh)° = f° h°", &lhs, &rhs)?;
    // In R the degree restriction disappears.
    let a = random_poly(rng, &f, m);
    let b = random_poly(rng, &f, m);
    let prod = ring(m, &(&a * &b)).transpose();
    let rhs = ring(m, &a).transpose().mul(&ring(m, &b).transpose()).unwrap();
    eq("(fh)° in R", prod.poly(), rhs.poly())
}

/// `<c a, b>_e = <a, c° b>_e` in R.
pub fn euclidean_adjoint<R: Rng>(rng: &mut R) -> Check {
    let f = pick_field(rng, FIELDS);
    let m = rng.gen_range(1..=24);
    let [a, b, c] = [0; 3].map(|_| ring(m, &random_poly(rng, &f, m)));
    let lhs = euclidean_ring(&c.mul(&a).unwrap(), &b).unwrap();
    let rhs = euclidean_ring(&a, &c.transpose().mul(&b).unwrap()).unwrap();
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("<ca,b> = {lhs:?}, <a,c°b> = {rhs:?} for a={:?} b={:?} c={:?}", a.poly(), b.poly(), c.poly()))
    }
}

/// A random monic divisor of `x^m - 1` from its factorization.
pub fn random_divisor<R: Rng>(rng: &mut R, f: &Field, m: usize) -> Poly {
    let factors = factorize(&Poly::xm_minus_one(f, m)).unwrap();
    let mut d = Poly::one(f);
    for (p, e) in &factors {
        for _ in 0..rng.gen_range(0..=*e) {
            d = &d * p;
        }
    }
    d
}

/// Both quotient identities for `f | x^m - 1`, plus `f°` dividing `x^m(1 - x^m)`.
/// `star` is the raw transpose or the raw conjugate transpose.
fn quotient_identities<R: Rng>(rng: &mut R, orders: &[u32], star: fn(&Poly, usize) -> Poly) -> Check {
    let f = pick_field(rng, orders);
    let m = rng.gen_range(1..=20);
    let xm1 = Poly::xm_minus_one(&f, m);
    // x^m (1 - x^m)
    let target = (&Poly::zero(&f) - &xm1).shift(m);
    let g = random_divisor(rng, &f, m);
    let gs = star(&g, m);
    if !gs.divides(&target) {
        return Err(format!("transpose of {g} does not divide x^m(1-x^m), m={m}"));
    }
    let cofactor = xm1.div_exact(&g).unwrap();
    eq("((x^m-1)/f)°", &star(&cofactor, m), &target.div_exact(&gs).unwrap())?;

    // The second identity needs g11 g22 | (x^m - 1) g12 with deg g12 < deg g22.
    let g11 = random_divisor(rng, &f, m);
    let g22 = random_divisor(rng, &f, m);
    let prod = &g11 * &g22;
    let step = prod.div_exact(&prod.gcd(&xm1).unwrap()).unwrap();
    let room = g22.deg0() as isize - step.deg0() as isize;
    let g12 = if room > 0 {
        &step * &random_poly(rng, &f, room as usize)
    } else {
        Poly::zero(&f)
    };
    let h = (&xm1 * &g12).div_exact(&prod).ok_or("constructed g12 violates the divisibility")?;
    let denom = &star(&g11, m) * &star(&g22, m);
    let rhs = (&target * &star(&g12, m))
        .div_exact(&denom)
        .ok_or_else(|| format!("x^m(1-x^m) g12° not divisible, g11={g11} g12={g12} g22={g22} m={m}"))?;
    eq("((x^m-1) g12/(g11 g22))°", &star(&h, m), &rhs)
}

pub fn transpose_quotients<R: Rng>(rng: &mut R) -> Check {
    quotient_identities(rng, FIELDS, flip)
}

pub fn conj_transpose_quotients<R: Rng>(rng: &mut R) -> Check {
    quotient_identities(rng, SQUARE_FIELDS, |p, m| flip(&conj(p), m))
}

/// The four conjugate-transpose statements: shape, raw product, folded
/// form, product in R.
pub fn conj_transpose_rules<R: Rng>(rng: &mut R) -> Check {
    let f = pick_field(rng, SQUARE_FIELDS);
    let m = rng.gen_range(1..=24);
    let p = random_poly(rng, &f, m + 1);
    let raw = p.conj_transpose_raw(m).map_err(|e| e.to_string())?;
    eq("raw conjugate transpose", &raw, &flip(&conj(&p), m))?;
    if let Some(d) = p.degree() {
        eq("x^(m-deg f) conj(f)*", &raw, &conj(&p).reciprocal().shift(m - d))?;
    }
    let reduced = p.conj_transpose(m).map_err(|e| e.to_string())?;
    eq("reduced conjugate transpose", reduced.poly(), &folded(&conj(&p), m))?;
    let df = rng.gen_range(0..=m);
    let a = random_poly(rng, &f, df + 1);
    let b = random_poly(rng, &f, m - df + 1);
    let lhs = flip(&conj(&(&a * &b)), m).shift(m);
    let rhs = &a.conj_transpose_raw(m).unwrap() * &b.conj_transpose_raw(m).unwrap();
    eq("x^m (fh)† = f† h†", &lhs, &rhs)?;
    let a = random_poly(rng, &f, m);
    let b = random_poly(rng, &f, m);
    let prod = ring(m, &(&a * &b)).conj_transpose().unwrap();
    let rhs = ring(m, &a)
        .conj_transpose()
        .unwrap()
        .mul(&ring(m, &b).conj_transpose().unwrap())
        .unwrap();
    eq("(fh)† in R", prod.poly(), rhs.poly())
}

/// `<a c, b>_h = <a, b c†>_h` and conjugate symmetry.
pub fn hermitian_adjoint<R: Rng>(rng: &mut R) -> Check {
    let f = pick_field(rng, SQUARE_FIELDS);
    let m = rng.gen_range(1..=24);
    let [a, b, c] = [0; 3].map(|_| ring(m, &random_poly(rng, &f, m)));
    let lhs = hermitian_ring(&a.mul(&c).unwrap(), &b).unwrap();
    let rhs = hermitian_ring(&a, &b.mul(&c.conj_transpose().unwrap()).unwrap()).unwrap();
    if lhs != rhs {
        return Err(format!("<ac,b>_h = {lhs:?}, <a,bc†>_h = {rhs:?}"));
    }
    let ab = hermitian_ring(&a, &b).unwrap();
    let ba = hermitian_ring(&b, &a).unwrap();
    if ab != ba.conj().unwrap() {
        return Err(format!("<a,b>_h = {ab:?} but conj(<b,a>_h) = {:?}", ba.conj().unwrap()));
    }
    Ok(())
}

/// `(f°)° = f` and `(f†)† = f` in R.
pub fn transpose_involution<R: Rng>(rng: &mut R) -> Check {
    let f = pick_field(rng, FIELDS);
    let m = rng.gen_range(1..=24);
    let a = ring(m, &random_poly(rng, &f, m));
    eq("(f°)°", a.transpose().transpose().poly(), a.poly())?;
    if f.is_square_order() {
        let back = a.conj_transpose().unwrap().conj_transpose().unwrap();
        eq("(f†)†", back.poly(), a.poly())?;
    }
    Ok(())
}

/// `<u, u>_s = 0` and `<u, v>_s = -<v, u>_s`.
pub fn symplectic_alternation<R: Rng>(rng: &mut R) -> Check {
    let f = pick_field(rng, FIELDS);
    let m = rng.gen_range(1..=24);
    let u = CodeVector::new(m, random_poly(rng, &f, m), random_poly(rng, &f, m));
    let v = CodeVector::new(m, random_poly(rng, &f, m), random_poly(rng, &f, m));
    let uu = inner_product(FormKind::Symplectic, &u, &u).unwrap();
    if !uu.value.is_zero() {
        return Err(format!("<u,u>_s = {uu:?} for {u:?}"));
    }
    let uv = inner_product(FormKind::Symplectic, &u, &v).unwrap();
    let vu = inner_product(FormKind::Symplectic, &v, &u).unwrap();
    if uv != vu.neg() {
        return Err(format!("<u,v>_s = {uv:?}, <v,u>_s = {vu:?}"));
    }
    Ok(())
}

/// `x·` on both components is the shift by two in the interleaved layout.
pub fn shift_matches_expansion<R: Rng>(rng: &mut R) -> Check {
    let f = pick_field(rng, FIELDS);
    let m = rng.gen_range(1..=24);
    let u = CodeVector::new(m, random_poly(rng, &f, m), random_poly(rng, &f, m));
    let x = ring(m, &Poly::x(&f));
    let xu = CodeVector {
        a: x.mul(&u.a).unwrap(),
        b: x.mul(&u.b).unwrap(),
    };
    let mut shifted = u.expand();
    shifted.rotate_right(2);
    if xu.expand() == shifted {
        Ok(())
    } else {
        Err(format!("T^2 expand != expand x· for {u:?}"))
    }
}

/// Named identities, in report order.
pub const ALL: &[(&str, Identity)] = &[
    ("transpose shape, raw and reduced", transpose_shape),
    ("transpose of a product, raw and reduced", transpose_product),
    ("Euclidean adjoint", euclidean_adjoint),
    ("transpose of quotients of x^m-1", transpose_quotients),
    ("conjugate transpose rules", conj_transpose_rules),
    ("Hermitian adjoint and conjugate symmetry", hermitian_adjoint),
    ("conjugate transpose of quotients of x^m-1", conj_transpose_quotients),
    ("transpose involution", transpose_involution),
    ("symplectic alternation", symplectic_alternation),
    ("shift matches expansion", shift_matches_expansion),
];
