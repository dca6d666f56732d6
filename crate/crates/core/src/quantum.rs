//! Stabilizer-code parameters `[[m, m - k, d_s]]_q` from symplectic
//! self-orthogonal codes, and a replay of the published qubit examples.

use std::time::Instant;

use serde::Serialize;

use crate::code::{CodeVector, Qc2Code};
use crate::distance::{self, Distance, DistanceReport, EnumOptions, Metric, ReportKind};
use crate::duality::{self, FormKind};
use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::gf::Field;
use crate::parse::parse_poly;
use crate::poly::Poly;

/// The canonical triple, printed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleText {
    pub q: u32,
    pub m: usize,
    pub g11: String,
    pub g12: String,
    pub g22: String,
}

impl TripleText {
    pub fn of(code: &Qc2Code) -> TripleText {
        TripleText {
            q: code.field().order(),
            m: code.m(),
            g11: code.g11().to_string(),
            g12: code.g12().to_string(),
            g22: code.g22().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilizerParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    /// Exact when enumerable, otherwise an upper bound from random search.
    pub d: DistanceReport,
    pub verified: bool,
    pub classical_dimension: usize,
    pub source: TripleText,
}

impl StabilizerParams {
    /// `[[n,k,d]]_q`, with `d` prefixed by `<=` when it is only a bound.
    pub fn notation(&self) -> String {
        let d = match self.d.kind {
            ReportKind::Exact => self.d.value.to_string(),
            _ => format!("<={}", self.d.value),
        };
        format!("[[{},{},{}]]_{}", self.n, self.k, d, self.q)
    }
}

/// Random-search budget used when the coset is too large to enumerate.
#[derive(Clone, Copy, Debug)]
pub struct Fallback {
    pub trials: usize,
    pub seed: u64,
}

impl Default for Fallback {
    fn default() -> Self {
        Fallback { trials: 50, seed: 0 }
    }
}

/// `n = m`, `k = m - dim C`, `d` = minimum symplectic weight of
/// `C^⊥s ∖ C` (of `C` itself when `C` is self-dual).
pub fn stabilizer_params(code: &Qc2Code, opts: &EnumOptions, fallback: Fallback) -> Result<StabilizerParams> {
    if !duality::is_self_orthogonal(FormKind::Symplectic, code)? {
        return Err(Error::NotSelfOrthogonal);
    }
    let dual = duality::dual(FormKind::Symplectic, code)?;
    let d = match distance::min_weight_coset(&dual, code, Metric::Symplectic, opts) {
        Ok(r) => r,
        Err(Error::EnumerationTooLarge { .. }) => {
            let exclude = (&dual != code).then_some(code);
            let mut r = distance::random_upper_bound(&dual, exclude, Metric::Symplectic, fallback.trials, fallback.seed)?;
            r.method = format!("unverified: {}", r.method);
            r
        }
        Err(e) => return Err(e),
    };
    Ok(StabilizerParams {
        q: code.field().order(),
        n: code.m(),
        k: code.m() - code.dimension(),
        verified: d.kind == ReportKind::Exact,
        d,
        classical_dimension: code.dimension(),
        source: TripleText::of(code),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Tag {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "NOT-SPECIFIED-IN-PAPER")]
    NotSpecified,
    #[serde(rename = "UNVERIFIED")]
    Unverified,
    #[serde(rename = "DISCREPANCY")]
    Discrepancy,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Pass => "PASS",
            Tag::NotSpecified => "NOT-SPECIFIED-IN-PAPER",
            Tag::Unverified => "UNVERIFIED",
            Tag::Discrepancy => "DISCREPANCY",
            Tag::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub tag: Tag,
    pub claimed: String,
    pub computed: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleRecord {
    pub id: &'static str,
    pub description: String,
    pub claim: &'static str,
    pub checks: Vec<Check>,
    /// The most severe tag among the checks.
    pub tag: Tag,
    pub elapsed_ms: f64,
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn push(&mut self, name: &str, tag: Tag, claimed: impl ToString, computed: impl ToString, note: &str) {
        self.checks.push(Check {
            name: name.into(),
            tag,
            claimed: claimed.to_string(),
            computed: computed.to_string(),
            note: note.into(),
        });
    }

    fn compare(&mut self, name: &str, claimed: impl ToString, computed: impl ToString) {
        let (c, v) = (claimed.to_string(), computed.to_string());
        let tag = if c == v { Tag::Pass } else { Tag::Fail };
        self.push(name, tag, c, v, "");
    }

    fn finish(self, id: &'static str, description: String, claim: &'static str, t0: Instant) -> ExampleRecord {
        let tag = if self.checks.iter().all(|c| c.tag == Tag::NotSpecified) {
            Tag::NotSpecified
        } else {
            self.checks
                .iter()
                .map(|c| c.tag)
                .filter(|&t| t != Tag::NotSpecified)
                .max()
                .unwrap_or(Tag::Pass)
        };
        ExampleRecord {
            id,
            description,
            claim,
            checks: self.checks,
            tag,
            elapsed_ms: t0.elapsed().as_secs_f64() * 1e3,
        }
    }
}

fn gf2() -> Field {
    Field::prime(2).expect("2 is prime")
}

fn poly(f: &Field, s: &str) -> Poly {
    parse_poly(f, s).expect("well-formed literal")
}

fn product(f: &Field, ps: &[&Poly]) -> Poly {
    ps.iter().fold(Poly::one(f), |acc, p| &acc * p)
}

fn factor_list(f: &Poly) -> String {
    factorize(f)
        .expect("nonzero")
        .iter()
        .map(|(p, e)| if *e == 1 { format!("({p})") } else { format!("({p})^{e}") })
        .collect::<Vec<_>>()
        .join("")
}

fn same_factors(target: &Poly, parts: &[Poly]) -> bool {
    let f = target.field();
    let refs: Vec<&Poly> = parts.iter().collect();
    &product(f, &refs) == target
        && parts.iter().all(crate::factor::is_irreducible)
}

/// Options shared by every replayed example.
#[derive(Clone, Copy, Debug)]
pub struct ReplayOptions {
    pub enumeration: EnumOptions,
    pub fallback: Fallback,
    /// Run the random upper-bound search for instances beyond the cap.
    pub search: bool,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        ReplayOptions {
            enumeration: EnumOptions::default(),
            fallback: Fallback::default(),
            search: true,
        }
    }
}

/// Re-derives each published qubit example; disagreements are recorded in
/// the returned checks rather than raised.
pub fn replay_paper_examples(opts: &ReplayOptions) -> Result<Vec<ExampleRecord>> {
    Ok(vec![
        replay_m45(opts, true)?,
        replay_m45(opts, false)?,
        replay_m18(opts)?,
        replay_m23(opts)?,
        replay_family(),
    ])
}

/// The two `m = 45` binary codes.
pub fn m45_factors() -> Vec<Poly> {
    let f = gf2();
    [
        "x+1",
        "x^2+x+1",
        "x^4+x+1",
        "x^4+x^3+1",
        "x^4+x^3+x^2+x+1",
        "x^6+x^3+1",
        "x^12+x^3+1",
        "x^12+x^9+1",
    ]
    .iter()
    .map(|s| poly(&f, s))
    .collect()
}

/// `(g11, g12, g22, h)` of the first (`first = true`) or second `m = 45` code.
pub fn m45_triple(first: bool) -> (Poly, Poly, Poly, Poly) {
    let f = gf2();
    let p = m45_factors();
    let g11 = product(&f, &[&p[0], &p[1], &p[2]]);
    if first {
        let h = poly(&f, "x^25+x^23+x^21+x^20+x^18+x^17+x^16+x^15+x^13+x^12+x^6+x^5+x^3+x^2");
        let g22 = product(&f, &[&p[2], &p[3], &p[4], &p[5], &p[6], &p[7]]);
        let g12 = &p[2] * &h;
        (g11, g12, g22, h)
    } else {
        let h = poly(&f, "x^24+x^22+x^19+x^18+x^17+x^14+x^13+x^12+x^4+x^3+x^2");
        let g22 = product(&f, &[&p[1], &p[2], &p[3], &p[4], &p[5], &p[6], &p[7]]);
        let g12 = product(&f, &[&p[1], &p[2], &h]);
        (g11, g12, g22, h)
    }
}

fn load(rec: &mut Recorder, f: &Field, m: usize, g11: &Poly, g12: &Poly, g22: &Poly) -> Result<Qc2Code> {
    let generated = Qc2Code::canonicalize(
        f,
        m,
        &[
            CodeVector::new(m, g11.clone(), g12.clone()),
            CodeVector::new(m, Poly::zero(f), g22.clone()),
        ],
    )?;
    match Qc2Code::from_triple(f, m, g11.clone(), g12.clone(), g22.clone()) {
        Ok(c) => {
            let same = c == generated;
            rec.push(
                "stated generators satisfy the canonical conditions",
                if same { Tag::Pass } else { Tag::Fail },
                "canonical",
                if same { "canonical" } else { "not canonical" },
                "",
            );
            Ok(c)
        }
        Err(e) => {
            rec.push(
                "stated generators satisfy the canonical conditions",
                Tag::Fail,
                "canonical",
                e.to_string(),
                "continuing with the canonical form of the generated code",
            );
            Ok(generated)
        }
    }
}

fn record_self_orthogonality(rec: &mut Recorder, code: &Qc2Code) -> Result<()> {
    let report = duality::self_orthogonality(FormKind::Symplectic, code)?;
    for c in &report.conditions {
        rec.push(
            &format!("symplectic self-orthogonality: {}", c.statement),
            if c.holds { Tag::Pass } else { Tag::Fail },
            true,
            c.holds,
            "",
        );
    }
    let def = duality::definitional_self_orthogonal(FormKind::Symplectic, code)?;
    rec.push(
        "condition verdict agrees with pairwise inner products",
        if def == report.holds { Tag::Pass } else { Tag::Fail },
        report.holds,
        def,
        "",
    );
    Ok(())
}

fn record_distance(rec: &mut Recorder, name: &str, claimed: usize, r: &DistanceReport) {
    let computed = match r.kind {
        ReportKind::Exact => r.value.to_string(),
        _ => format!("<= {}", r.value),
    };
    let tag = match (r.kind, r.value) {
        (ReportKind::Exact, v) if v == Distance::Finite(claimed) => Tag::Pass,
        (ReportKind::Exact, _) => Tag::Fail,
        (_, Distance::Finite(u)) if u < claimed => Tag::Fail,
        _ => Tag::Unverified,
    };
    let note = match r.kind {
        ReportKind::Exact => String::new(),
        _ => format!("not desk-verifiable; {}", r.method),
    };
    rec.push(name, tag, claimed, computed, &note);
}

fn replay_m45(opts: &ReplayOptions, first: bool) -> Result<ExampleRecord> {
    let t0 = Instant::now();
    let f = gf2();
    let m = 45;
    let mut rec = Recorder { checks: Vec::new() };
    let p = m45_factors();
    let xm1 = Poly::xm_minus_one(&f, m);
    rec.push(
        "x^45-1 factors as p1...p8",
        if same_factors(&xm1, &p) { Tag::Pass } else { Tag::Fail },
        p.iter().map(|q| format!("({q})")).collect::<String>(),
        factor_list(&xm1),
        "",
    );
    let (g11, g12, g22, h) = m45_triple(first);
    let code = load(&mut rec, &f, m, &g11, &g12, &g22)?;
    let (dim, d_code, d_coset, k) = if first { (41, 13, 11, 4) } else { (39, 14, 10, 6) };
    rec.compare("dimension", dim, code.dimension());
    record_self_orthogonality(&mut rec, &code)?;
    let dual = duality::dual(FormKind::Symplectic, &code)?;
    if first {
        rec.compare("dual g'11 = p1p2", &p[0] * &p[1], dual.g11());
        rec.compare(
            "dual g'22 = p3p5p6p7p8",
            product(&f, &[&p[2], &p[4], &p[5], &p[6], &p[7]]),
            dual.g22(),
        );
        let rel = h.reciprocal().shift(23).reduce_xm1(m).rem(dual.g22())?;
        rec.compare("dual g'12 = x^23 h* (mod x^m-1, reduced by g'22)", rel, dual.g12());
    }
    rec.compare("stabilizer length and dimension", format!("[[45,{k}]]"), format!("[[{},{}]]", m, m - code.dimension()));
    if opts.search {
        let fb = opts.fallback;
        let r = distance::random_upper_bound(&code, None, Metric::Symplectic, fb.trials, fb.seed)?;
        record_distance(&mut rec, "d_s(C)", d_code, &r);
        let r = distance::random_upper_bound(&dual, Some(&code), Metric::Symplectic, fb.trials, fb.seed)?;
        record_distance(&mut rec, "minimum symplectic weight of C^⊥s ∖ C", d_coset, &r);
    } else {
        for (name, claimed) in [("d_s(C)", d_code), ("minimum symplectic weight of C^⊥s ∖ C", d_coset)] {
            rec.push(name, Tag::Unverified, claimed, "not computed", "not desk-verifiable; search disabled");
        }
    }
    let (id, claim) = if first {
        ("qubit-45-4", "[[45,4,11]]")
    } else {
        ("qubit-45-6", "[[45,6,10]]")
    };
    Ok(rec.finish(id, format!("q=2, m=45, {}", TripleText::of(&code).describe()), claim, t0))
}

impl TripleText {
    fn describe(&self) -> String {
        format!("g11={}, g12={}, g22={}", self.g11, self.g12, self.g22)
    }
}

/// `(g11, g12, g22)` of the `m = 18` binary code.
pub fn m18_triple() -> (Poly, Poly, Poly) {
    let f = gf2();
    let p1 = poly(&f, "x+1");
    let p2 = poly(&f, "x^2+x+1");
    let p3 = poly(&f, "x^6+x^3+1");
    let h = poly(&f, "x^9+x^4+x^3");
    (
        product(&f, &[&p1, &p1, &p2]),
        product(&f, &[&p1, &p2, &h]),
        product(&f, &[&p1, &p2, &p2, &p3, &p3]),
    )
}

fn replay_m18(opts: &ReplayOptions) -> Result<ExampleRecord> {
    let t0 = Instant::now();
    let f = gf2();
    let m = 18;
    let mut rec = Recorder { checks: Vec::new() };
    let parts = ["x+1", "x^2+x+1", "x^6+x^3+1"].map(|s| poly(&f, s));
    let root = product(&f, &[&parts[0], &parts[1], &parts[2]]);
    let xm1 = Poly::xm_minus_one(&f, m);
    rec.push(
        "x^18-1 = (p1p2p3)^2",
        if &root * &root == xm1 && parts.iter().all(crate::factor::is_irreducible) {
            Tag::Pass
        } else {
            Tag::Fail
        },
        "(x+1)^2(x^2+x+1)^2(x^6+x^3+1)^2",
        factor_list(&xm1),
        "",
    );
    let (g11, g12, g22) = m18_triple();
    let code = load(&mut rec, &f, m, &g11, &g12, &g22)?;
    let dim = code.dimension();
    rec.push(
        "dimension",
        if dim == 12 { Tag::Pass } else { Tag::Discrepancy },
        12,
        dim,
        "the stated quantum parameters correspond to the computed dimension (18 - 15 = 3)",
    );
    rec.compare("dimension equals rank of the expanded generator matrix", dim, code.rank_oracle());
    record_self_orthogonality(&mut rec, &code)?;
    rec.push(
        "gcd(q, m)",
        Tag::Pass,
        "not 1",
        if code.is_one_generator().sufficiency_proven { "1" } else { "2" },
        "",
    );
    let e = &opts.enumeration;
    match distance::exact_distance(&code, Metric::Symplectic, e) {
        Ok(r) => record_distance(&mut rec, "d_s(C)", 8, &r),
        Err(err) => rec.push("d_s(C)", Tag::Unverified, 8, err.to_string(), ""),
    }
    let params = stabilizer_params(&code, e, opts.fallback)?;
    record_distance(&mut rec, "minimum symplectic weight of C^⊥s ∖ C", 5, &params.d);
    rec.compare("stabilizer parameters", "[[18,3,5]]_2", params.notation());
    Ok(rec.finish("qubit-18-3", format!("q=2, m=18, {}", TripleText::of(&code).describe()), "[[18,3,5]]", t0))
}

/// The printed 7-term `g12` of the `m = 23` code and its symmetric 8-term
/// repair (the exponent 12 closes the orbit of 11 under `i -> 23 - i`).
pub fn m23_candidates() -> (Poly, Poly) {
    let f = gf2();
    (
        poly(&f, "x^22+x^18+x^14+x^11+x^9+x^5+x"),
        poly(&f, "x^22+x^18+x^14+x^12+x^11+x^9+x^5+x"),
    )
}

fn replay_m23(opts: &ReplayOptions) -> Result<ExampleRecord> {
    let t0 = Instant::now();
    let f = gf2();
    let m = 23;
    let mut rec = Recorder { checks: Vec::new() };
    let (printed, repaired) = m23_candidates();
    let one_gen = |g: &Poly| Qc2Code::canonicalize(&f, m, &[CodeVector::new(m, Poly::one(&f), g.clone())]);
    let printed_code = one_gen(&printed)?;
    let printed_sd = duality::is_self_dual(FormKind::Symplectic, &printed_code)?;
    rec.push(
        "printed g12 gives a symplectic self-dual code",
        if printed_sd { Tag::Pass } else { Tag::Discrepancy },
        true,
        printed_sd,
        "the printed exponent set {1,5,9,11,14,18,22} is not symmetric under i -> 23-i",
    );
    let symmetric = printed.transpose(m)?.poly() == &printed;
    rec.push("printed g12 = g12°", if symmetric { Tag::Pass } else { Tag::Discrepancy }, true, symmetric, "");
    let code = one_gen(&repaired)?;
    let sd = duality::is_self_dual(FormKind::Symplectic, &code)?;
    rec.push(
        "repaired g12 gives a symplectic self-dual code",
        if sd { Tag::Pass } else { Tag::Fail },
        true,
        sd,
        "repair adds x^12",
    );
    let check = duality::symplectic_self_dual_check(&code);
    rec.push(
        "reciprocal-polynomial characterization agrees",
        if check.holds == sd { Tag::Pass } else { Tag::Fail },
        sd,
        check.holds,
        "",
    );
    if sd {
        let params = stabilizer_params(&code, &opts.enumeration, opts.fallback)?;
        record_distance(&mut rec, "minimum symplectic weight (repaired)", 8, &params.d);
        rec.compare("stabilizer parameters (repaired)", "[[23,0,8]]_2", params.notation());
    }
    match distance::exact_distance(&printed_code, Metric::Symplectic, &opts.enumeration) {
        Ok(r) => record_distance(&mut rec, "minimum symplectic weight (printed)", 8, &r),
        Err(Error::EnumerationTooLarge { .. }) => {
            rec.push("minimum symplectic weight (printed)", Tag::Unverified, 8, "beyond cap", "")
        }
        Err(e) => return Err(e),
    }
    if printed_sd {
        let params = stabilizer_params(&printed_code, &opts.enumeration, opts.fallback)?;
        rec.compare("stabilizer parameters (printed)", "[[23,0,8]]_2", params.notation());
    }
    Ok(rec.finish(
        "qubit-23-0",
        format!("q=2, m=23, generator (1, g12) with printed g12={printed} and repair {repaired}"),
        "[[23,0,8]]",
        t0,
    ))
}

fn replay_family() -> ExampleRecord {
    let t0 = Instant::now();
    let mut rec = Recorder { checks: Vec::new() };
    for n in [24, 25, 26] {
        rec.push(
            &format!("[[{n},0,8]] construction"),
            Tag::NotSpecified,
            format!("[[{n},0,8]]"),
            "no generators given",
            "",
        );
    }
    rec.finish("qubit-24-26-0", "self-dual codes of lengths 24, 25, 26".into(), "[[24,0,8]], [[25,0,8]], [[26,0,8]]", t0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_self_dual_gives_k_zero() {
        let f = gf2();
        // (1, 1) generates a symplectic self-dual code over any m
        let code = Qc2Code::canonicalize(&f, 3, &[CodeVector::new(3, Poly::one(&f), Poly::one(&f))]).unwrap();
        let p = stabilizer_params(&code, &EnumOptions::default(), Fallback::default()).unwrap();
        assert_eq!((p.n, p.k), (3, 0));
        assert_eq!(p.d.value, Distance::Finite(1));
        assert!(p.verified);
    }

    #[test]
    fn rejects_non_self_orthogonal() {
        let f = gf2();
        let code = Qc2Code::full(&f, 3);
        assert_eq!(
            stabilizer_params(&code, &EnumOptions::default(), Fallback::default()).unwrap_err(),
            Error::NotSelfOrthogonal
        );
    }

    #[test]
    fn zero_code_gives_trivial_stabilizer() {
        let f = gf2();
        let p = stabilizer_params(&Qc2Code::zero(&f, 3), &EnumOptions::default(), Fallback::default()).unwrap();
        assert_eq!((p.n, p.k), (3, 3));
        assert_eq!(p.d.value, Distance::Finite(1));
    }
}
