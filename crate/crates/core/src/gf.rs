//! Finite fields GF(p^k) for small p and k.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where
//! `c_i` are the coefficients of the element in the polynomial basis
//! `1, w, ..., w^{k-1}` and `w` is the class of `x` modulo the field modulus.
//! With this encoding zero is `0`, one is `1` and the prime subfield is `0..p`.
//!
//! Multiplication goes through log/exp tables built from a primitive element.
//! Addition is XOR over characteristic 2, a table lookup for `q <= 256`, and
//! digit-wise otherwise.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u32 = 1 << 16;
/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 256;

/// An element of some [`Field`], as an index into the field's encoding.
///
/// `Elem` carries no field reference; mixing elements from different fields
/// is caught by the checked [`FieldElem`] wrapper and by [`crate::Poly`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

struct FieldInner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    conj_power: Option<u32>,
}

/// The finite field GF(p^k) with a fixed monic irreducible modulus.
///
/// Cloning is cheap; all clones share the precomputed tables.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}, modulus={:?})", self.0.p, self.0.k, self.0.modulus)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.notation())
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over GF(p) as ascending coefficient vectors. Only used while
// constructing a field, before any `Field` value exists.
mod prime_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
        trim(&mut a);
        let db = b.len() - 1;
        let lead_inv = inv(b[db], p);
        while a.len() > db && !a.is_empty() {
            let shift = a.len() - 1 - db;
            let c = (a[a.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &bi) in b.iter().enumerate() {
                let t = (c as u64 * bi as u64 % p as u64) as u32;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
            trim(&mut a);
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        trim(&mut out);
        out
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(mul(a, b, p), m, p)
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        // Fermat; p is prime.
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    pub fn gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin-style test: f of degree k is irreducible iff gcd(x^{p^i} - x, f) = 1
    /// for all 1 <= i <= k/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 1..=k / 2 {
            // xp <- xp^p mod f
            let mut acc = vec![1u32];
            let mut base = xp.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, f, p);
                }
                base = mulmod(&base, &base, f, p);
                e >>= 1;
            }
            xp = acc;
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(f.to_vec(), diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// Builds GF(p^k). Without a modulus, the lexicographically smallest monic
    /// irreducible of degree k is used, comparing coefficient tuples
    /// `(c_0, c_1, ..., c_{k-1})` from the constant term upwards.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(Error::UnsupportedField(format!(
                "characteristic {p} exceeds {MAX_CHARACTERISTIC}"
            )));
        }
        if k == 0 {
            return Err(Error::DegreeMismatch {
                expected: 0,
                found: 0,
            });
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or_else(|| {
                Error::UnsupportedField(format!("order {p}^{k} exceeds {MAX_ORDER}"))
            })? as u32;

        let modulus = match modulus {
            Some(m) => {
                let mut m = m.to_vec();
                if m.iter().any(|&c| c >= p) {
                    m.iter_mut().for_each(|c| *c %= p);
                }
                prime_poly::trim(&mut m);
                let found = m.len() as isize - 1;
                if found != k as isize || m[k as usize] != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: k as usize,
                        found,
                    });
                }
                if !prime_poly::is_irreducible(&m, p) {
                    return Err(Error::NotIrreducible(p));
                }
                m
            }
            None => Self::smallest_irreducible(p, k),
        };
        Ok(Self::from_parts(p, k, q, modulus))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u32, modulus: Option<&[u32]>) -> Result<Field> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::UnsupportedField(format!("{q} is not a prime power")))?;
        Field::new(p, k, modulus)
    }

    /// Parses the field notation `q=4`, `q=2^2`, `4` or `2^2`.
    pub fn parse(notation: &str, modulus: Option<&[u32]>) -> Result<Field> {
        let s: String = notation.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.strip_prefix("q=").unwrap_or(&s);
        let bad = || Error::UnsupportedField(format!("cannot parse field notation {notation:?}"));
        match s.split_once('^') {
            Some((p, k)) => {
                let p: u32 = p.parse().map_err(|_| bad())?;
                let k: u32 = k.parse().map_err(|_| bad())?;
                Field::new(p, k, modulus)
            }
            None => Field::with_order(s.parse().map_err(|_| bad())?, modulus),
        }
    }

    fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
        if k == 1 {
            return vec![0, 1];
        }
        let count = (p as u64).pow(k);
        for n in 0..count {
            // c_0 is the most significant digit of n.
            let mut coeffs = vec![0u32; k as usize + 1];
            let mut rest = n;
            for i in (0..k as usize).rev() {
                coeffs[i] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            coeffs[k as usize] = 1;
            if coeffs[0] != 0 && prime_poly::is_irreducible(&coeffs, p) {
                return coeffs;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn from_parts(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Field {
        let to_digits = |mut v: u32| {
            let mut d = vec![0u32; k as usize];
            for slot in d.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            d
        };
        let from_digits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);

        let (exp, log) = if q == 2 {
            (vec![1], vec![0, 0])
        } else {
            let mut found = None;
            'search: for cand in 2..q {
                let g = to_digits(cand);
                let mut exp = Vec::with_capacity(q as usize - 1);
                let mut cur = vec![1u32];
                for i in 0..q - 1 {
                    let mut padded = cur.clone();
                    padded.resize(k as usize, 0);
                    let v = from_digits(&padded);
                    if i > 0 && v == 1 {
                        continue 'search;
                    }
                    exp.push(v);
                    cur = prime_poly::mulmod(&cur, &g, &modulus, p);
                }
                found = Some(exp);
                break;
            }
            let exp = found.expect("multiplicative group of a finite field is cyclic");
            let mut log = vec![0u32; q as usize];
            for (i, &v) in exp.iter().enumerate() {
                log[v as usize] = i as u32;
            }
            (exp, log)
        };

        let neg: Vec<u32> = (0..q)
            .map(|v| {
                let d: Vec<u32> = to_digits(v).iter().map(|&c| (p - c) % p).collect();
                from_digits(&d)
            })
            .collect();
        let add = (p != 2 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = to_digits(a);
                for b in 0..q {
                    let db = to_digits(b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = from_digits(&s);
                }
            }
            t
        });
        let conj_power = k.is_multiple_of(2).then(|| p.pow(k / 2));
        Field(Arc::new(FieldInner {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            neg,
            add,
            conj_power,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Ascending coefficients of the modulus, ending in 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_binary(&self) -> bool {
        self.0.q == 2
    }

    /// True when the order is a square, i.e. conjugation `c -> c^sqrt(order)` exists.
    pub fn is_square_order(&self) -> bool {
        self.0.conj_power.is_some()
    }

    /// `q=p^k` notation.
    pub fn notation(&self) -> String {
        if self.0.k == 1 {
            format!("q={}", self.0.p)
        } else {
            format!("q={}^{}", self.0.p, self.0.k)
        }
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The class of `n` in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// The generator `w` of the polynomial basis (equal to the prime-field
    /// element `0` + 1·w; for prime fields `w` is the root of `x`, i.e. zero).
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            Elem::ZERO
        } else {
            Elem(self.0.p)
        }
    }

    /// Element from its basis coordinates (ascending powers of `w`).
    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() > self.0.k as usize {
            return Err(Error::UnsupportedField(format!(
                "{} coordinates for a degree-{} field",
                digits.len(),
                self.0.k
            )));
        }
        let p = self.0.p;
        Ok(Elem(digits.iter().rev().fold(0u32, |acc, &c| acc * p + c % p)))
    }

    /// Basis coordinates of `a` (length k).
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a.0;
        (0..self.0.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// Checked conversion from an encoded index.
    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.0.q {
            Ok(Elem(index))
        } else {
            Err(Error::UnsupportedField(format!(
                "element index {index} out of range for order {}",
                self.0.q
            )))
        }
    }

    /// All q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.0;
        if f.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if let Some(t) = &f.add {
            return Elem(t[(a.0 * f.q + b.0) as usize]);
        }
        if f.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= f.p { s - f.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..f.k {
            out += ((x % f.p + y % f.p) % f.p) * place;
            x /= f.p;
            y /= f.p;
            place = place.wrapping_mul(f.p);
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let f = &*self.0;
        let n = f.q - 1;
        let s = f.log[a.index()] + f.log[b.index()];
        Elem(f.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &*self.0;
        let n = f.q - 1;
        let l = f.log[a.index()];
        Ok(Elem(f.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let f = &*self.0;
        let n = (f.q - 1) as u64;
        let l = f.log[a.index()] as u64;
        Elem(f.exp[((l * (e % n)) % n) as usize])
    }

    /// `a^r` where the field has order `r^2`.
    pub fn conj(&self, a: Elem) -> Result<Elem> {
        let r = self.0.conj_power.ok_or(Error::NotSquareField)?;
        Ok(self.pow(a, r as u64))
    }

    /// Wraps `a` into a field-tagged value for checked arithmetic.
    pub fn wrap(&self, a: Elem) -> FieldElem {
        FieldElem {
            field: self.clone(),
            value: a,
        }
    }

    /// Formats `a` as a sum of `c*w^j` terms (`0` for zero).
    pub fn format_elem(&self, a: Elem) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        if a.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (j, &d) in self.digits(a).iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let w = match j {
                0 => String::new(),
                1 => "w".into(),
                _ => format!("w^{j}"),
            };
            parts.push(match (d, j) {
                (_, 0) => d.to_string(),
                (1, _) => w,
                _ => format!("{d}*{w}"),
            });
        }
        parts.join("+")
    }
}

/// Decomposes `q = p^k` with p prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u32;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut k) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// A field element bundled with its field, with arithmetic that rejects
/// operands from different fields.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    pub field: Field,
    pub value: Elem,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_elem(self.value))
    }
}

impl FieldElem {
    fn same(&self, other: &FieldElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.field.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.field.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.field.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElem {
        self.field.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        Ok(self.field.wrap(self.field.inv(self.value)?))
    }

    pub fn conj(&self) -> Result<FieldElem> {
        Ok(self.field.wrap(self.field.conj(self.value)?))
    }
}
