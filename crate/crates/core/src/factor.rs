//! Factorization of polynomials over small finite fields.
//!
//! Square-free decomposition first (so repeated factors such as those of
//! `x^18 - 1` over GF(2) are handled), then distinct-degree splitting, then
//! trial division by enumerated monic polynomials of the split degree. When
//! that enumeration would exceed `TRIAL_LIMIT` candidates the equal-degree
//! split falls back to Cantor-Zassenhaus with a fixed seed, so results stay
//! deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::Poly;

const TRIAL_LIMIT: u64 = 1 << 16;

/// Monic irreducible factors with multiplicities, sorted by degree then by
/// coefficient tuple. The product of the factors times `f.lead()` is `f`.
pub fn factorize(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in square_free(&f.monic()) {
        for factor in split_square_free(&part) {
            out.push((factor, mult));
        }
    }
    out.sort();
    Ok(out)
}

/// Reassembles a factor list.
pub fn expand(field: &Field, factors: &[(Poly, u32)]) -> Poly {
    factors
        .iter()
        .fold(Poly::one(field), |acc, (p, e)| &acc * &p.pow(*e))
}

/// True when `f` (nonconstant) is irreducible.
pub fn is_irreducible(f: &Poly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(_) => {
            let parts = factorize(f).expect("nonzero");
            parts.len() == 1 && parts[0].1 == 1
        }
    }
}

/// Monic divisors of `f`, sorted.
pub fn divisors(f: &Poly) -> Result<Vec<Poly>> {
    let field = f.field().clone();
    let factors = factorize(f)?;
    let mut out = vec![Poly::one(&field)];
    for (p, e) in &factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = &acc * p;
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// Square-free decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = prod g_i^i` and each `g_i` square-free.
fn square_free(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field().clone();
    let p = field.characteristic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, j) in square_free(&f.pth_root()) {
            out.push((g, j * p));
        }
        return out;
    }
    let mut c = f.gcd(&df).expect("f nonzero");
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c).expect("w nonzero");
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        for (g, j) in square_free(&c.pth_root()) {
            out.push((g, j * p));
        }
    }
    out
}

fn powmod(base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = Poly::one(base.field());
    let mut b = base.rem(m).expect("nonzero modulus");
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).rem(m).expect("nonzero modulus");
        }
        b = (&b * &b).rem(m).expect("nonzero modulus");
        e >>= 1;
    }
    acc
}

fn split_square_free(f: &Poly) -> Vec<Poly> {
    let field = f.field().clone();
    let q = field.order() as u64;
    let x = Poly::x(&field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1usize;
    while rest.deg0() >= 2 * d {
        h = powmod(&h, q, &rest);
        let g = (&h - &x).gcd(&rest).expect("rest nonzero");
        if !g.is_one() {
            out.extend(equal_degree(&g, d));
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
        }
        d += 1;
    }
    if rest.deg0() > 0 {
        out.push(rest);
    }
    out
}

/// Splits a product of distinct monic irreducibles, all of degree `d`.
fn equal_degree(f: &Poly, d: usize) -> Vec<Poly> {
    let n = f.deg0();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let q = field.order() as u64;
    let candidates = q.checked_pow(d as u32).unwrap_or(u64::MAX);
    if candidates <= TRIAL_LIMIT {
        return trial_split(f, d);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    let mut pending = vec![f.clone()];
    let mut done = Vec::new();
    while let Some(g) = pending.pop() {
        if g.deg0() == d {
            done.push(g);
            continue;
        }
        loop {
            let a = random_poly(&field, g.deg0(), &mut rng);
            if a.deg0() == 0 {
                continue;
            }
            let b = splitting_element(&a, &g, d);
            let s = b.gcd(&g).expect("g nonzero");
            if !s.is_one() && s.deg0() < g.deg0() {
                let t = g.div_exact(&s).expect("gcd divides");
                pending.push(s);
                pending.push(t);
                break;
            }
        }
    }
    done
}

fn random_poly(field: &Field, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = field.order();
    let coeffs = (0..below).map(|_| Elem(rng.gen_range(0..q))).collect();
    Poly::new(field, coeffs)
}

fn splitting_element(a: &Poly, g: &Poly, d: usize) -> Poly {
    let field = g.field();
    let q = field.order() as u64;
    if field.characteristic() == 2 {
        // trace map from GF(q^d) down to GF(2)
        let steps = field.degree() as usize * d;
        let mut term = a.rem(g).expect("nonzero");
        let mut acc = term.clone();
        for _ in 1..steps {
            term = (&term * &term).rem(g).expect("nonzero");
            acc = &acc + &term;
        }
        acc
    } else {
        // a^{(q^d - 1)/2} = (a * a^q * ... * a^{q^{d-1}})^{(q-1)/2}
        let mut frob = a.rem(g).expect("nonzero");
        let mut norm = frob.clone();
        for _ in 1..d {
            frob = powmod(&frob, q, g);
            norm = (&norm * &frob).rem(g).expect("nonzero");
        }
        let r = powmod(&norm, (q - 1) / 2, g);
        &r - &Poly::one(field)
    }
}

fn trial_split(f: &Poly, d: usize) -> Vec<Poly> {
    let field = f.field().clone();
    let q = field.order() as u64;
    let mut rest = f.clone();
    let mut out = Vec::new();
    for n in 0..q.pow(d as u32) {
        if rest.deg0() == d {
            out.push(rest);
            return out;
        }
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut v = n;
        for _ in 0..d {
            coeffs.push(Elem((v % q) as u32));
            v /= q;
        }
        coeffs.push(Elem::ONE);
        let cand = Poly::new(&field, coeffs);
        if let Some(quot) = rest.div_exact(&cand) {
            out.push(cand);
            rest = quot;
        }
    }
    if rest.deg0() > 0 {
        out.push(rest);
    }
    out
}
