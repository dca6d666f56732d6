//! Hamming and symplectic minimum distances.
//!
//! Exact values come from exhaustive enumeration. Codewords are visited in
//! modular p-ary Gray order over a basis of the code as a GF(p)-space
//! (`v * w^j` for every F-basis row `v` and `j < k`), so consecutive words
//! differ by exactly one added row. Ranges of the Gray index are scanned in
//! parallel and merged with `min`, which makes results independent of the
//! split. Over GF(2) with `m <= 64` the two components are bit-packed.

use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::code::{checked_count, CodeVector, Qc2Code};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg;
use crate::poly::Poly;

/// Default enumeration cap in codewords.
pub const DEFAULT_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Hamming,
    Symplectic,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Hamming => "hamming",
            Metric::Symplectic => "symplectic",
        })
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Metric> {
        match s {
            "hamming" | "h" => Ok(Metric::Hamming),
            "symplectic" | "s" => Ok(Metric::Symplectic),
            _ => Err(Error::InvalidArgument(format!("unknown metric `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Exact,
    LowerBound,
    UpperBound,
}

/// A distance with the `d({0}) = ∞` convention; serialized as a number or
/// the string `inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    fn from_min(w: usize) -> Distance {
        if w == usize::MAX {
            Distance::Infinite
        } else {
            Distance::Finite(w)
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// `∞ + x = ∞`.
    pub fn plus(self, other: Distance) -> Distance {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceReport {
    pub metric: Metric,
    pub kind: ReportKind,
    pub value: Distance,
    pub method: String,
    /// Codewords (or candidate vectors) examined.
    pub work: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Component>,
    pub elapsed_ms: f64,
}

impl DistanceReport {
    /// The report with its timing zeroed, for comparisons.
    pub fn without_timing(&self) -> DistanceReport {
        DistanceReport {
            elapsed_ms: 0.0,
            ..self.clone()
        }
    }
}

/// One cyclic code entering a bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Component {
    pub name: &'static str,
    pub generator: String,
    pub distance: Distance,
}

/// Enumeration budget and parallelism.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub cap: u64,
    /// Number of index ranges the enumeration is cut into.
    pub splits: usize,
    /// Worker thread limit; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            cap: DEFAULT_CAP,
            splits: 64,
            jobs: None,
        }
    }
}

impl EnumOptions {
    pub fn with_cap(cap: u64) -> EnumOptions {
        EnumOptions {
            cap,
            ..Default::default()
        }
    }
}

pub fn wt_hamming(v: &CodeVector) -> usize {
    v.a.poly().weight() + v.b.poly().weight()
}

pub fn wt_symplectic(v: &CodeVector) -> usize {
    (0..v.m())
        .filter(|&i| !v.a.poly().coeff(i).is_zero() || !v.b.poly().coeff(i).is_zero())
        .count()
}

/// Weight of an interleaved vector.
pub fn expanded_weight(metric: Metric, v: &[Elem]) -> usize {
    match metric {
        Metric::Hamming => v.iter().filter(|c| !c.is_zero()).count(),
        Metric::Symplectic => v
            .chunks(2)
            .filter(|p| p.iter().any(|c| !c.is_zero()))
            .count(),
    }
}

/// Minimum Hamming and symplectic weights seen; `usize::MAX` when none.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Minima {
    hamming: usize,
    symplectic: usize,
}

impl Minima {
    const NONE: Minima = Minima {
        hamming: usize::MAX,
        symplectic: usize::MAX,
    };

    fn merge(self, o: Minima) -> Minima {
        Minima {
            hamming: self.hamming.min(o.hamming),
            symplectic: self.symplectic.min(o.symplectic),
        }
    }

    fn get(self, metric: Metric) -> usize {
        match metric {
            Metric::Hamming => self.hamming,
            Metric::Symplectic => self.symplectic,
        }
    }
}

/// GF(p)-basis rows in Gray-walk order.
enum Kernel {
    Binary(Vec<(u64, u64)>),
    Generic { field: Field, rows: Vec<Vec<Elem>> },
}

impl Kernel {
    /// `rows` are F-linearly independent interleaved vectors.
    fn new(field: &Field, rows: &[Vec<Elem>]) -> Kernel {
        let m = rows.first().map_or(0, |r| r.len() / 2);
        if field.order() == 2 && m <= 64 {
            let packed = rows
                .iter()
                .map(|r| {
                    let (mut a, mut b) = (0u64, 0u64);
                    for i in 0..m {
                        a |= (r[2 * i].0 as u64) << i;
                        b |= (r[2 * i + 1].0 as u64) << i;
                    }
                    (a, b)
                })
                .collect();
            return Kernel::Binary(packed);
        }
        let k = field.degree();
        let mut prime_rows = Vec::with_capacity(rows.len() * k as usize);
        for r in rows {
            let mut scale = Elem::ONE;
            for _ in 0..k {
                prime_rows.push(r.iter().map(|&c| field.mul(c, scale)).collect());
                scale = field.mul(scale, field.generator());
            }
        }
        Kernel::Generic {
            field: field.clone(),
            rows: prime_rows,
        }
    }

    fn digits(&self) -> usize {
        match self {
            Kernel::Binary(r) => r.len(),
            Kernel::Generic { rows, .. } => rows.len(),
        }
    }

    fn base(&self) -> u64 {
        match self {
            Kernel::Binary(_) => 2,
            Kernel::Generic { field, .. } => field.characteristic() as u64,
        }
    }

    /// Minimum weights over Gray indices `start..end`, skipping the zero word.
    fn scan(&self, start: u64, end: u64) -> Minima {
        if start >= end {
            return Minima::NONE;
        }
        match self {
            Kernel::Binary(rows) => scan_binary(rows, start, end),
            Kernel::Generic { field, rows } => scan_generic(field, rows, start, end),
        }
    }

    fn scan_parallel(&self, start: u64, end: u64, opts: &EnumOptions) -> Result<Minima> {
        let splits = opts.splits.max(1) as u64;
        let len = end.saturating_sub(start);
        let chunk = len.div_ceil(splits).max(1);
        let work = || {
            (0..splits)
                .into_par_iter()
                .map(|i| {
                    let s = (start + i * chunk).min(end);
                    let e = (s + chunk).min(end);
                    self.scan(s, e)
                })
                .reduce(|| Minima::NONE, Minima::merge)
        };
        match opts.jobs {
            Some(j) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build()
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?;
                Ok(pool.install(work))
            }
            None => Ok(work()),
        }
    }
}

fn scan_binary(rows: &[(u64, u64)], start: u64, end: u64) -> Minima {
    let gray = start ^ (start >> 1);
    let (mut a, mut b) = (0u64, 0u64);
    for (i, &(ra, rb)) in rows.iter().enumerate() {
        if gray >> i & 1 == 1 {
            a ^= ra;
            b ^= rb;
        }
    }
    let mut best = Minima::NONE;
    let mut n = start;
    loop {
        if a | b != 0 {
            let h = (a.count_ones() + b.count_ones()) as usize;
            let s = (a | b).count_ones() as usize;
            best.hamming = best.hamming.min(h);
            best.symplectic = best.symplectic.min(s);
        }
        if n + 1 >= end {
            return best;
        }
        let t = (!n).trailing_zeros() as usize;
        let (ra, rb) = rows[t];
        a ^= ra;
        b ^= rb;
        n += 1;
    }
}

fn scan_generic(field: &Field, rows: &[Vec<Elem>], start: u64, end: u64) -> Minima {
    let p = field.characteristic() as u64;
    let len = rows.first().map_or(0, |r| r.len());
    let mut v = vec![Elem::ZERO; len];
    let mut n = start;
    for row in rows {
        let digit = n % p;
        let next = (n / p) % p;
        let g = (digit + p - next) % p;
        if g != 0 {
            let c = field.from_int(g as i64);
            for (x, &r) in v.iter_mut().zip(row) {
                *x = field.add(*x, field.mul(c, r));
            }
        }
        n /= p;
    }
    let mut best = Minima::NONE;
    let mut n = start;
    loop {
        let h = expanded_weight(Metric::Hamming, &v);
        if h != 0 {
            best.hamming = best.hamming.min(h);
            best.symplectic = best.symplectic.min(expanded_weight(Metric::Symplectic, &v));
        }
        if n + 1 >= end {
            return best;
        }
        let mut t = 0;
        let mut r = n;
        while r % p == p - 1 {
            r /= p;
            t += 1;
        }
        for (x, &c) in v.iter_mut().zip(&rows[t]) {
            *x = field.add(*x, c);
        }
        n += 1;
    }
}

fn total_words(field: &Field, dim: usize, cap: u64) -> Result<u64> {
    let q = field.order();
    checked_count(q, dim)
        .filter(|&t| t <= cap)
        .ok_or(Error::EnumerationTooLarge { q, dim, cap })
}

/// Minimum weights over the nonzero words spanned by independent rows.
fn enumerate_rows(field: &Field, rows: &[Vec<Elem>], opts: &EnumOptions) -> Result<(Minima, u64)> {
    let total = total_words(field, rows.len(), opts.cap)?;
    if rows.is_empty() {
        return Ok((Minima::NONE, 0));
    }
    let kernel = Kernel::new(field, rows);
    let best = kernel.scan_parallel(1, total, opts)?;
    Ok((best, total - 1))
}

fn report(metric: Metric, kind: ReportKind, value: Distance, method: String, work: u64, t0: Instant) -> DistanceReport {
    DistanceReport {
        metric,
        kind,
        value,
        method,
        work,
        components: Vec::new(),
        elapsed_ms: t0.elapsed().as_secs_f64() * 1e3,
    }
}

/// Exact minimum Hamming weight of the cyclic code `<genpoly>` in `R`
/// (the ideal generated by `gcd(genpoly, x^m - 1)`).
pub fn cyclic_distance(genpoly: &Poly, m: usize, opts: &EnumOptions) -> Result<DistanceReport> {
    let t0 = Instant::now();
    let field = genpoly.field();
    let g = cyclic_generator(genpoly, m)?;
    let k = m - g.deg0();
    let rows: Vec<Vec<Elem>> = (0..k)
        .map(|i| CodeVector::new(m, g.shift(i), Poly::zero(field)).expand())
        .collect();
    let (best, work) = enumerate_rows(field, &rows, opts)?;
    Ok(report(
        Metric::Hamming,
        ReportKind::Exact,
        Distance::from_min(best.hamming),
        "exhaustive enumeration of the cyclic code".into(),
        work,
        t0,
    ))
}

fn cyclic_generator(f: &Poly, m: usize) -> Result<Poly> {
    let xm1 = Poly::xm_minus_one(f.field(), m);
    let r = f.reduce_xm1(m);
    if r.is_zero() {
        Ok(xm1)
    } else {
        r.gcd(&xm1)
    }
}

/// Generators of the four cyclic codes behind the distance bounds:
/// `<g11>`, `<g22>`, `<gcd(g12, g22)>` and `<g11 g22 / gcd(g12, g22)>`,
/// each replaced by its gcd with `x^m - 1` (the same ideal of `R`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicQuadruple {
    pub c1: Poly,
    pub c2: Poly,
    pub c3: Poly,
    pub c4: Poly,
}

impl CyclicQuadruple {
    pub fn of(code: &Qc2Code) -> Result<CyclicQuadruple> {
        let m = code.m();
        let g3 = code.g12().gcd(code.g22())?;
        let g4 = (code.g11() * code.g22())
            .div_exact(&g3)
            .expect("gcd divides g22");
        Ok(CyclicQuadruple {
            c1: cyclic_generator(code.g11(), m)?,
            c2: cyclic_generator(code.g22(), m)?,
            c3: cyclic_generator(&g3, m)?,
            c4: cyclic_generator(&g4, m)?,
        })
    }
}

fn bound(code: &Qc2Code, metric: Metric, opts: &EnumOptions) -> Result<DistanceReport> {
    let t0 = Instant::now();
    let q = CyclicQuadruple::of(code)?;
    let m = code.m();
    let mut work = 0;
    let mut comps = Vec::new();
    for (name, g) in [("C1", &q.c1), ("C2", &q.c2), ("C3", &q.c3), ("C4", &q.c4)] {
        let r = cyclic_distance(g, m, opts)?;
        work += r.work;
        comps.push(Component {
            name,
            generator: g.to_string(),
            distance: r.value,
        });
    }
    let d: Vec<Distance> = comps.iter().map(|c| c.distance).collect();
    let (value, method) = match metric {
        Metric::Hamming => (
            d[1].min(d[3]).min(d[0].plus(d[2])),
            "min{d(C2), d(C4), d(C1)+d(C3)}",
        ),
        Metric::Symplectic => (
            d[1].min(d[3]).min(d[0].max(d[2])),
            "min{d(C2), d(C4), max{d(C1), d(C3)}}",
        ),
    };
    let mut r = report(metric, ReportKind::LowerBound, value, method.into(), work, t0);
    r.components = comps;
    Ok(r)
}

/// `min{d(C2), d(C4), d(C1) + d(C3)} <= d(C)`.
pub fn bound_hamming(code: &Qc2Code, opts: &EnumOptions) -> Result<DistanceReport> {
    bound(code, Metric::Hamming, opts)
}

/// `min{d(C2), d(C4), max{d(C1), d(C3)}} <= d_s(C)`.
pub fn bound_symplectic(code: &Qc2Code, opts: &EnumOptions) -> Result<DistanceReport> {
    bound(code, Metric::Symplectic, opts)
}

/// Exact minimum distance by enumeration of all `q^dim` codewords.
pub fn exact_distance(code: &Qc2Code, metric: Metric, opts: &EnumOptions) -> Result<DistanceReport> {
    let [h, s] = exact_distances(code, opts)?;
    Ok(match metric {
        Metric::Hamming => h,
        Metric::Symplectic => s,
    })
}

/// Both exact distances from a single enumeration.
pub fn exact_distances(code: &Qc2Code, opts: &EnumOptions) -> Result<[DistanceReport; 2]> {
    let t0 = Instant::now();
    let (best, work) = enumerate_rows(code.field(), &code.generator_matrix(), opts)?;
    Ok([Metric::Hamming, Metric::Symplectic].map(|metric| {
        report(
            metric,
            ReportKind::Exact,
            Distance::from_min(best.get(metric)),
            "exhaustive enumeration".into(),
            work,
            t0,
        )
    }))
}

/// Minimum weight over `big ∖ small`, or over all of `big` when the two
/// codes are equal.
pub fn min_weight_coset(
    big: &Qc2Code,
    small: &Qc2Code,
    metric: Metric,
    opts: &EnumOptions,
) -> Result<DistanceReport> {
    let t0 = Instant::now();
    if big.m() != small.m() {
        return Err(Error::ModulusMismatch(small.m(), big.m()));
    }
    if big.field() != small.field() {
        return Err(Error::FieldMismatch);
    }
    if !small.is_subcode_of(big)? {
        return Err(Error::NotSubcode);
    }
    if big == small {
        let mut r = exact_distance(big, metric, opts)?;
        r.method = "exhaustive enumeration (subcode equals code)".into();
        return Ok(r);
    }
    let field = big.field();
    total_words(field, big.dimension(), opts.cap)?;
    let mut rows = small.generator_matrix();
    let extra = big.generator_matrix();
    for i in linalg::extend_basis(field, &rows, &extra) {
        rows.push(extra[i].clone());
    }
    let kernel = Kernel::new(field, &rows);
    let p = kernel.base();
    let low = p.pow(small.dimension() as u32 * field.degree());
    let high = p.pow(kernel.digits() as u32);
    let best = kernel.scan_parallel(low, high, opts)?;
    Ok(report(
        metric,
        ReportKind::Exact,
        Distance::from_min(best.get(metric)),
        "exhaustive enumeration of the coset complement".into(),
        high - low,
        t0,
    ))
}

/// Best-effort upper bound: the basis rows, then for each trial the reduced
/// echelon rows (and their pairwise combinations) after a random coordinate
/// permutation. Vectors of `exclude` are skipped when given.
pub fn random_upper_bound(
    code: &Qc2Code,
    exclude: Option<&Qc2Code>,
    metric: Metric,
    trials: usize,
    seed: u64,
) -> Result<DistanceReport> {
    let t0 = Instant::now();
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let field = code.field().clone();
    let m = code.m();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = usize::MAX;
    let mut work = 0u64;
    let scalars: Vec<Elem> = if field.order() <= 16 {
        field.elements().filter(|e| !e.is_zero()).collect()
    } else {
        vec![Elem::ONE]
    };
    let consider = |v: &[Elem], best: &mut usize, work: &mut u64| {
        *work += 1;
        let w = expanded_weight(metric, v);
        if w == 0 || w >= *best {
            return;
        }
        if let Some(ex) = exclude {
            if ex.contains(&CodeVector::from_expanded(&field, v)).unwrap_or(false) {
                return;
            }
        }
        *best = w;
    };
    let basis = code.generator_matrix();
    for r in &basis {
        consider(r, &mut best, &mut work);
    }
    for _ in 1..trials.max(1) {
        let mut pairs: Vec<usize> = (0..m).collect();
        pairs.shuffle(&mut rng);
        let perm: Vec<usize> = match metric {
            Metric::Symplectic => pairs.iter().flat_map(|&i| [2 * i, 2 * i + 1]).collect(),
            Metric::Hamming => {
                let mut all: Vec<usize> = (0..2 * m).collect();
                all.shuffle(&mut rng);
                all
            }
        };
        let mut rows: Vec<Vec<Elem>> = basis
            .iter()
            .map(|r| perm.iter().map(|&j| r[j]).collect())
            .collect();
        linalg::rref(&field, &mut rows);
        // undo the permutation so exclusion tests see true coordinates
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| {
                let mut out = vec![Elem::ZERO; 2 * m];
                for (pos, &j) in perm.iter().enumerate() {
                    out[j] = r[pos];
                }
                out
            })
            .collect();
        for (i, r) in rows.iter().enumerate() {
            consider(r, &mut best, &mut work);
            for s in &rows[i + 1..] {
                for &c in &scalars {
                    let v: Vec<Elem> = r
                        .iter()
                        .zip(s)
                        .map(|(&x, &y)| field.add(x, field.mul(c, y)))
                        .collect();
                    consider(&v, &mut best, &mut work);
                }
            }
        }
    }
    Ok(report(
        metric,
        ReportKind::UpperBound,
        Distance::from_min(best),
        format!("random information sets, {trials} trials, seed {seed}"),
        work,
        t0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn weights() {
        let f = gf2();
        let v = CodeVector::new(4, Poly::from_ints(&f, &[1, 1]), Poly::zero(&f));
        assert_eq!((wt_hamming(&v), wt_symplectic(&v)), (2, 2));
        let v = CodeVector::new(4, Poly::one(&f), Poly::one(&f));
        assert_eq!((wt_hamming(&v), wt_symplectic(&v)), (2, 1));
        assert_eq!(expanded_weight(Metric::Symplectic, &v.expand()), 1);
    }

    #[test]
    fn cyclic_examples() {
        let f = gf2();
        let opts = EnumOptions::default();
        let r = cyclic_distance(&Poly::from_ints(&f, &[1, 1, 0, 1]), 7, &opts).unwrap();
        assert_eq!(r.value, Distance::Finite(3));
        assert_eq!(r.work, 15);
        let r = cyclic_distance(&Poly::xm_minus_one(&f, 7), 7, &opts).unwrap();
        assert_eq!(r.value, Distance::Infinite);
        let r = cyclic_distance(&Poly::one(&f), 7, &opts).unwrap();
        assert_eq!(r.value, Distance::Finite(1));
        let f3 = Field::prime(3).unwrap();
        let r = cyclic_distance(&Poly::from_ints(&f3, &[2, 1]), 4, &opts).unwrap();
        assert_eq!(r.value, Distance::Finite(2));
    }

    #[test]
    fn infinity_serializes_as_inf() {
        assert_eq!(serde_json::to_string(&Distance::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Distance::Finite(5)).unwrap(), "5");
        assert!(Distance::Finite(100) < Distance::Infinite);
        assert_eq!(Distance::Finite(1).plus(Distance::Infinite), Distance::Infinite);
    }

    #[test]
    fn gray_walk_visits_every_word_once() {
        for (q, m) in [(2u32, 3usize), (3, 2), (4, 2), (5, 2)] {
            let f = Field::with_order(q, None).unwrap();
            let code = Qc2Code::full(&f, m);
            let [h, s] = exact_distances(&code, &EnumOptions::with_cap(1 << 20)).unwrap();
            assert_eq!(h.value, Distance::Finite(1));
            assert_eq!(s.value, Distance::Finite(1));
            assert_eq!(h.work, (q as u64).pow(2 * m as u32) - 1);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = gf2();
        let code = Qc2Code::full(&f, 8);
        assert_eq!(
            exact_distance(&code, Metric::Hamming, &EnumOptions::with_cap(1000)).unwrap_err(),
            Error::EnumerationTooLarge { q: 2, dim: 16, cap: 1000 }
        );
    }
}
