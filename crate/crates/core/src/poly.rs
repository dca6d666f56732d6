//! Univariate polynomials over a [`Field`] and the quotient ring
//! `R = F[x]/(x^m - 1)`.
//!
//! Besides ring arithmetic this module hosts the three coefficient-reversal
//! operators used by the duality theory:
//!
//! * [`Poly::reciprocal`]: `f* = x^deg(f) f(1/x)`,
//! * [`Poly::transpose_raw`]: `f° = x^m f(1/x)` as a polynomial of degree `<= m`,
//! * [`Poly::conj_transpose_raw`]: `f† = x^m conj(f)(1/x)`.
//!
//! The reduced forms ([`Poly::transpose`], [`Poly::conj_transpose`]) live in `R`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// A polynomial with no trailing zero coefficients. The zero polynomial has
/// an empty coefficient vector and degree `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From integer coefficients in the prime subfield (ascending).
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Polynomial with coefficient one at each listed exponent.
    pub fn from_exponents(field: &Field, exps: &[usize]) -> Poly {
        let mut p = Poly::zero(field);
        for &e in exps {
            p = &p + &Poly::monomial(field, Elem::ONE, e);
        }
        p
    }

    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn monomial(field: &Field, c: Elem, exp: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![Elem::ZERO; exp + 1];
        coeffs[exp] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    /// `x^m - 1`.
    pub fn xm_minus_one(field: &Field, m: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; m + 1];
        coeffs[0] = field.neg(Elem::ONE);
        coeffs[m] = field.add(coeffs[m], Elem::ONE);
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Elem::ONE]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for size bookkeeping.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(b)?;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(b.lead())?;
        let mut r = self.coeffs.clone();
        let qlen = r.len().saturating_sub(db);
        let mut q = vec![Elem::ZERO; qlen];
        for i in (0..qlen).rev() {
            let c = f.mul(r[i + db], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[i] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, bj));
            }
        }
        r.truncate(db);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// `self / b`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        match self.divmod(b) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// True when `self` divides `other` in F[x] (0 divides only 0).
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero lead");
        self.scale(inv)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, u, v)` with `g` monic and `u*self + v*other = g`.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.lead())?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// Inverse of `self` modulo `modulus`, if it exists.
    pub fn inv_mod(&self, modulus: &Poly) -> Option<Poly> {
        let (g, u, _) = self.xgcd(modulus).ok()?;
        g.is_one().then(|| u.rem(modulus).expect("nonzero modulus"))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Coefficient-wise conjugation `c -> c^r` over a field of order `r^2`.
    pub fn conj(&self) -> Result<Poly> {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| f.conj(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(f, coeffs))
    }

    /// `f* = x^deg(f) f(1/x)`; the reciprocal of zero is zero.
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(&self.field, c)
    }

    /// `x^m f(1/x)` as a polynomial of degree at most m.
    pub fn transpose_raw(&self, m: usize) -> Result<Poly> {
        match self.degree() {
            None => Ok(self.clone()),
            Some(d) if d > m => Err(Error::DegreeTooLarge { degree: d, m }),
            Some(d) => Ok(self.reciprocal().shift(m - d)),
        }
    }

    /// The transpose in `R = F[x]/(x^m - 1)`, i.e. exponent map `i -> (m - i) mod m`.
    pub fn transpose(&self, m: usize) -> Result<RingElem> {
        Ok(RingElem::new(m, self.transpose_raw(m)?))
    }

    /// `x^m conj(f)(1/x)` as a polynomial of degree at most m.
    pub fn conj_transpose_raw(&self, m: usize) -> Result<Poly> {
        self.conj()?.transpose_raw(m)
    }

    pub fn conj_transpose(&self, m: usize) -> Result<RingElem> {
        Ok(RingElem::new(m, self.conj_transpose_raw(m)?))
    }

    /// Reduction modulo `x^m - 1` by folding exponents.
    pub fn reduce_xm1(&self, m: usize) -> Poly {
        if self.coeffs.len() <= m {
            return self.clone();
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % m] = f.add(out[i % m], c);
        }
        Poly::new(f, out)
    }

    /// Polynomial with coefficients `c_i^{1/p}` in place of the coefficients of
    /// `x^{ip}`; defined when every exponent of `self` is a multiple of p.
    pub(crate) fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        // c^{1/p} = c^{q/p} in GF(q)
        let root_exp = (f.order() / f.characteristic()) as u64;
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pow(c, root_exp))
            .collect();
        Poly::new(f, coeffs)
    }

    /// Coefficients as encoded integers, ascending.
    pub fn to_indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }
}

impl Ord for Poly {
    /// Degree first, then ascending coefficient tuples.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl fmt::Display for Poly {
    /// Prints in the polynomial text grammar, highest degree first. Extension
    /// field coefficients expand into one `d*w^j*x^i` term per basis digit.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let digits: Vec<(usize, u32)> = if f.degree() == 1 {
                vec![(0, c.0)]
            } else {
                f.digits(c)
                    .into_iter()
                    .enumerate()
                    .rev()
                    .filter(|&(_, d)| d != 0)
                    .collect()
            };
            for (j, d) in digits {
                let mut factors = Vec::new();
                if d != 1 || (j == 0 && i == 0) {
                    factors.push(d.to_string());
                }
                match j {
                    0 => {}
                    1 => factors.push("w".into()),
                    _ => factors.push(format!("w^{j}")),
                }
                if !mono.is_empty() {
                    factors.push(mono.clone());
                }
                terms.push(factors.join("*"));
            }
        }
        write!(out, "{}", terms.join("+"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of `R = F[x]/(x^m - 1)`, stored as its reduced representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElem {
    m: usize,
    value: Poly,
}

impl RingElem {
    pub fn new(m: usize, value: Poly) -> RingElem {
        RingElem {
            m,
            value: value.reduce_xm1(m),
        }
    }

    pub fn zero(field: &Field, m: usize) -> RingElem {
        RingElem {
            m,
            value: Poly::zero(field),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn poly(&self) -> &Poly {
        &self.value
    }

    pub fn into_poly(self) -> Poly {
        self.value
    }

    pub fn field(&self) -> &Field {
        self.value.field()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &RingElem) -> Result<()> {
        if self.m != other.m {
            return Err(Error::ModulusMismatch(self.m, other.m));
        }
        self.value.check_field(&other.value)
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(RingElem::new(self.m, &self.value + &other.value))
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(RingElem::new(self.m, &self.value - &other.value))
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(RingElem::new(self.m, &self.value * &other.value))
    }

    /// Coefficient vector of length m.
    pub fn dense(&self) -> Vec<Elem> {
        (0..self.m).map(|i| self.value.coeff(i)).collect()
    }

    pub fn transpose(&self) -> RingElem {
        self.value
            .transpose(self.m)
            .expect("reduced representative has degree < m")
    }

    pub fn conj_transpose(&self) -> Result<RingElem> {
        self.value.conj_transpose(self.m)
    }
}
