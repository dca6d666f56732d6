//! Index-2 quasi-cyclic codes as submodules of `R^2`, `R = F[x]/(x^m - 1)`.
//!
//! Every such code has a unique generating pair `g1 = (g11, g12)`,
//! `g2 = (0, g22)` with `g11`, `g22` monic divisors of `x^m - 1`,
//! `deg g12 < deg g22` and `g11 g22 | (x^m - 1) g12`. [`Qc2Code`] always holds
//! this canonical triple; the zero second generator is encoded as
//! `g22 = x^m - 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::gf::{Elem, Field};
use crate::linalg;
use crate::poly::{Poly, RingElem};

/// A pair `(a(x), b(x))` in `R^2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeVector {
    pub a: RingElem,
    pub b: RingElem,
}

impl CodeVector {
    /// Builds the pair, reducing both components modulo `x^m - 1`.
    pub fn new(m: usize, a: Poly, b: Poly) -> CodeVector {
        CodeVector {
            a: RingElem::new(m, a),
            b: RingElem::new(m, b),
        }
    }

    pub fn zero(field: &Field, m: usize) -> CodeVector {
        CodeVector::new(m, Poly::zero(field), Poly::zero(field))
    }

    pub fn m(&self) -> usize {
        self.a.m()
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Interleaved coordinates `(a_0, b_0, a_1, b_1, ...)` of length `2m`.
    pub fn expand(&self) -> Vec<Elem> {
        let m = self.m();
        let mut out = Vec::with_capacity(2 * m);
        for i in 0..m {
            out.push(self.a.poly().coeff(i));
            out.push(self.b.poly().coeff(i));
        }
        out
    }

    /// Inverse of [`CodeVector::expand`].
    pub fn from_expanded(field: &Field, v: &[Elem]) -> CodeVector {
        let m = v.len() / 2;
        let a = Poly::new(field, v.iter().step_by(2).copied().collect());
        let b = Poly::new(field, v.iter().skip(1).step_by(2).copied().collect());
        CodeVector::new(m, a, b)
    }

    /// Multiplication of both components by `s(x)`.
    pub fn scale(&self, s: &Poly) -> CodeVector {
        CodeVector::new(self.m(), s * self.a.poly(), s * self.b.poly())
    }

    pub fn add(&self, other: &CodeVector) -> CodeVector {
        CodeVector::new(
            self.m(),
            self.a.poly() + other.a.poly(),
            self.b.poly() + other.b.poly(),
        )
    }
}

/// Result of the one-generator test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OneGeneratorVerdict {
    /// Truth of the divisibility condition.
    pub holds: bool,
    /// Whether the condition is known to be sufficient, i.e. `gcd(q, m) = 1`.
    /// A `false` verdict is conclusive either way.
    pub sufficiency_proven: bool,
}

/// An index-2 quasi-cyclic code in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Qc2Code {
    field: Field,
    m: usize,
    g11: Poly,
    g12: Poly,
    g22: Poly,
}

impl fmt::Debug for Qc2Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Qc2Code({}, m={}, g11={}, g12={}, g22={})",
            self.field, self.m, self.g11, self.g12, self.g22
        )
    }
}

impl Qc2Code {
    /// Canonical triple of the `R`-submodule generated by `generators`.
    ///
    /// The generators are lifted to `F[x]^2` together with the rows
    /// `(x^m - 1, 0)` and `(0, x^m - 1)`, and brought to upper-triangular
    /// Hermite form by extended-gcd elimination on the first column; the
    /// second-column residues of the eliminated rows are then folded into a
    /// single gcd.
    pub fn canonicalize(field: &Field, m: usize, generators: &[CodeVector]) -> Result<Qc2Code> {
        if m == 0 {
            return Err(Error::ModulusMismatch(0, 1));
        }
        let xm1 = Poly::xm_minus_one(field, m);
        let mut p1 = xm1.clone();
        let mut p2 = Poly::zero(field);
        let mut col2 = xm1.clone();
        for v in generators {
            if v.m() != m {
                return Err(Error::ModulusMismatch(v.m(), m));
            }
            if v.field() != field || v.b.field() != field {
                return Err(Error::FieldMismatch);
            }
            let (a, b) = (v.a.poly(), v.b.poly());
            if a.is_zero() {
                if !b.is_zero() {
                    col2 = col2.gcd(b)?;
                }
                continue;
            }
            let (g, u, w) = p1.xgcd(a)?;
            let a_g = a.div_exact(&g).expect("gcd divides");
            let p1_g = p1.div_exact(&g).expect("gcd divides");
            let new_p2 = (&(&u * &p2) + &(&w * b)).reduce_xm1(m);
            let residue = (&(&a_g * &p2) - &(&p1_g * b)).reduce_xm1(m);
            if !residue.is_zero() {
                col2 = col2.gcd(&residue)?;
            }
            p1 = g;
            p2 = new_p2;
        }
        let g22 = col2;
        let g12 = p2.rem(&g22)?;
        Ok(Qc2Code {
            field: field.clone(),
            m,
            g11: p1,
            g12,
            g22,
        })
    }

    /// Accepts a triple only if it already satisfies the canonical conditions;
    /// the error names the first violated condition.
    pub fn from_triple(field: &Field, m: usize, g11: Poly, g12: Poly, g22: Poly) -> Result<Qc2Code> {
        let fail = |condition: &str, message: String| {
            Err(Error::Validation {
                condition: condition.into(),
                message,
            })
        };
        if m == 0 {
            return fail("m", "block length must be at least 1".into());
        }
        for (name, g) in [("g11", &g11), ("g12", &g12), ("g22", &g22)] {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if g.degree().is_some_and(|d| d > m) {
                return fail("degree", format!("deg {name} = {} exceeds m = {m}", g.deg0()));
            }
        }
        for (name, g) in [("g11", &g11), ("g22", &g22)] {
            if g.is_zero() || g.lead() != Elem::ONE {
                return fail("monic", format!("{name} = {g} must be monic"));
            }
        }
        let xm1 = Poly::xm_minus_one(field, m);
        for (name, g) in [("g11", &g11), ("g22", &g22)] {
            if !g.divides(&xm1) {
                return fail("(*) line 1", format!("{name} = {g} does not divide x^{m}-1"));
            }
        }
        if !g12.is_zero() && g12.degree() >= g22.degree() {
            return fail(
                "(*) line 2",
                format!("deg g12 = {} is not below deg g22 = {}", g12.deg0(), g22.deg0()),
            );
        }
        if !(&g11 * &g22).divides(&(&xm1 * &g12)) {
            return fail("(*) line 3", "g11*g22 does not divide (x^m-1)*g12".into());
        }
        Ok(Qc2Code {
            field: field.clone(),
            m,
            g11,
            g12,
            g22,
        })
    }

    /// The code `{0}`.
    pub fn zero(field: &Field, m: usize) -> Qc2Code {
        let xm1 = Poly::xm_minus_one(field, m);
        Qc2Code {
            field: field.clone(),
            m,
            g11: xm1.clone(),
            g12: Poly::zero(field),
            g22: xm1,
        }
    }

    /// The whole of `R^2`.
    pub fn full(field: &Field, m: usize) -> Qc2Code {
        Qc2Code {
            field: field.clone(),
            m,
            g11: Poly::one(field),
            g12: Poly::zero(field),
            g22: Poly::one(field),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn g11(&self) -> &Poly {
        &self.g11
    }

    pub fn g12(&self) -> &Poly {
        &self.g12
    }

    pub fn g22(&self) -> &Poly {
        &self.g22
    }

    pub fn xm1(&self) -> Poly {
        Poly::xm_minus_one(&self.field, self.m)
    }

    /// `(g11, g12)`.
    pub fn g1(&self) -> CodeVector {
        CodeVector::new(self.m, self.g11.clone(), self.g12.clone())
    }

    /// `(0, g22)`.
    pub fn g2(&self) -> CodeVector {
        CodeVector::new(self.m, Poly::zero(&self.field), self.g22.clone())
    }

    /// `2m - deg g11 - deg g22`.
    pub fn dimension(&self) -> usize {
        2 * self.m - self.g11.deg0() - self.g22.deg0()
    }

    /// Membership test through the canonical triple.
    pub fn contains(&self, v: &CodeVector) -> Result<bool> {
        if v.m() != self.m {
            return Err(Error::ModulusMismatch(v.m(), self.m));
        }
        if v.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let Some(f) = v.a.poly().div_exact(&self.g11) else {
            return Ok(false);
        };
        let r = (v.b.poly() - &(&f * &self.g12)).reduce_xm1(self.m);
        Ok(self.g22.divides(&r))
    }

    /// True when every codeword of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &Qc2Code) -> Result<bool> {
        Ok(other.contains(&self.g1())? && other.contains(&self.g2())?)
    }

    /// The F-basis `{x^i g1 : i < m - deg g11} ∪ {x^j g2 : j < m - deg g22}`.
    pub fn basis(&self) -> Vec<CodeVector> {
        let g1 = self.g1();
        let g2 = self.g2();
        let mut out = Vec::with_capacity(self.dimension());
        for i in 0..self.m - self.g11.deg0() {
            out.push(CodeVector::new(self.m, g1.a.poly().shift(i), g1.b.poly().shift(i)));
        }
        for j in 0..self.m - self.g22.deg0() {
            out.push(CodeVector::new(self.m, Poly::zero(&self.field), g2.b.poly().shift(j)));
        }
        out
    }

    /// Expanded basis rows of length `2m`.
    pub fn generator_matrix(&self) -> Vec<Vec<Elem>> {
        self.basis().iter().map(CodeVector::expand).collect()
    }

    /// Rank of the expanded generator matrix, computed by elimination.
    pub fn rank_oracle(&self) -> usize {
        linalg::rank(&self.field, &self.generator_matrix())
    }

    /// Every codeword exactly once, in odometer order over the basis
    /// coefficients. Fails when `q^dim` exceeds `cap`.
    pub fn enumerate_codewords(&self, cap: u64) -> Result<impl Iterator<Item = CodeVector> + '_> {
        let q = self.field.order();
        let dim = self.dimension();
        let total = checked_count(q, dim)
            .filter(|&t| t <= cap)
            .ok_or(Error::EnumerationTooLarge { q, dim, cap })?;
        let rows = self.generator_matrix();
        let field = self.field.clone();
        Ok((0..total).map(move |mut n| {
            let mut v = vec![Elem::ZERO; 2 * self.m];
            for row in &rows {
                let c = Elem((n % q as u64) as u32);
                n /= q as u64;
                if c.is_zero() {
                    continue;
                }
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(c, r));
                }
            }
            CodeVector::from_expanded(&field, &v)
        }))
    }

    /// Whether the code is generated by a single element: `g11 g22 ≡ 0 (mod x^m - 1)`.
    pub fn is_one_generator(&self) -> OneGeneratorVerdict {
        let prod = (&self.g11 * &self.g22).reduce_xm1(self.m);
        OneGeneratorVerdict {
            holds: prod.is_zero(),
            sufficiency_proven: self.coprime_characteristic(),
        }
    }

    pub(crate) fn coprime_characteristic(&self) -> bool {
        !self.m.is_multiple_of(self.field.characteristic() as usize)
    }

    /// A single generator `A = (g11, g12 + b g22)` of the code, following the
    /// constructive proof of the one-generator criterion. Requires `gcd(q, m) = 1`.
    pub fn single_generator(&self) -> Result<CodeVector> {
        if !self.coprime_characteristic() {
            return Err(Error::NotCoprimeCharacteristic {
                q: self.field.order(),
                m: self.m,
            });
        }
        if !self.is_one_generator().holds {
            return Err(Error::NotOneGenerator);
        }
        let m = self.m;
        let xm1 = self.xm1();
        let cofactor11 = xm1.div_exact(&self.g11).expect("g11 divides x^m-1");
        let h = (&cofactor11 * &self.g12)
            .div_exact(&self.g22)
            .expect("canonical condition (*) line 3");
        let g22h = &self.g22 * &h;
        let span_g22h = if g22h.reduce_xm1(m).is_zero() {
            xm1.clone()
        } else {
            g22h.gcd(&xm1)?
        };
        let b = if span_g22h == self.g22 {
            Poly::zero(&self.field)
        } else {
            let d = self.g11.gcd(&self.g22)?;
            let g11p = self.g11.div_exact(&d).expect("gcd divides");
            let g22p = self.g22.div_exact(&d).expect("gcd divides");
            let cofactor22 = xm1.div_exact(&self.g22).expect("g22 divides x^m-1");
            let f = if cofactor22.is_one() {
                Poly::zero(&self.field)
            } else {
                g22p.inv_mod(&cofactor22).ok_or(Error::NotOneGenerator)?
            };
            let mut sum = Poly::zero(&self.field);
            for (a, _) in factorize(&g11p)? {
                sum = &sum + &g11p.div_exact(&a).expect("factor divides");
            }
            (&f * &(&sum - &h)).reduce_xm1(m)
        };
        let gen = CodeVector::new(m, self.g11.clone(), &self.g12 + &(&b * &self.g22));
        let check = Qc2Code::canonicalize(&self.field, m, std::slice::from_ref(&gen))?;
        if &check != self {
            return Err(Error::NotOneGenerator);
        }
        Ok(gen)
    }

    /// Canonical code generated by the union of both codes' generators.
    pub fn sum(&self, other: &Qc2Code) -> Result<Qc2Code> {
        if other.m != self.m {
            return Err(Error::ModulusMismatch(other.m, self.m));
        }
        Qc2Code::canonicalize(
            &self.field,
            self.m,
            &[self.g1(), self.g2(), other.g1(), other.g2()],
        )
    }
}

/// `q^dim` when it fits in a u64.
pub fn checked_count(q: u32, dim: usize) -> Option<u64> {
    (q as u64).checked_pow(u32::try_from(dim).ok()?)
}
