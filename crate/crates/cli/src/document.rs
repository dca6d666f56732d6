//! Code-spec documents.
//!
//! A document names a field, a block length and either a canonical triple or
//! a generator list:
//!
//! ```text
//! {q: 2, m: 7, canonical: {g11: "x^4+x^3+x^2+1", g12: "1", g22: "x^3+x^2+1"}}
//! {q: "2^2", modulus: [1, 1, 1], m: 3, generators: [["w*x+1", [0, 1]]]}
//! ```
//!
//! Documents are JSON5, so plain JSON is accepted. Polynomials are grammar
//! strings or ascending coefficient arrays. Array entries are element indices
//! in `[0, q)` whose base-p digits are the coordinates over GF(p); over a
//! prime field any integer is reduced mod p.

use std::cell::RefCell;
use std::fmt;

use qc2_core::{parse::parse_poly, CodeVector, Elem, Error, Field, Poly, Qc2Code};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// A resolved document.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    pub label: Option<String>,
    pub code: Qc2Code,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    q: FieldText,
    #[serde(default)]
    modulus: Option<Vec<u32>>,
    m: usize,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    canonical: Option<RawTriple>,
    #[serde(default)]
    generators: Option<Vec<(PolyValue, PolyValue)>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriple {
    g11: PolyValue,
    g12: PolyValue,
    g22: PolyValue,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FieldText {
    Order(u32),
    Notation(String),
}

thread_local! {
    // Field used by `PolyValue` while a document is deserialized a second time.
    static ACTIVE_FIELD: RefCell<Option<Field>> = const { RefCell::new(None) };
    // Column of the offending character inside the last rejected string.
    static INNER_COLUMN: RefCell<Option<usize>> = const { RefCell::new(None) };
}

struct ActiveField;

impl ActiveField {
    fn set(field: &Field) -> ActiveField {
        ACTIVE_FIELD.with(|f| *f.borrow_mut() = Some(field.clone()));
        ActiveField
    }
}

impl Drop for ActiveField {
    fn drop(&mut self) {
        ACTIVE_FIELD.with(|f| *f.borrow_mut() = None);
    }
}

/// `None` until a field is active.
struct PolyValue(Option<Poly>);

impl<'de> Deserialize<'de> for PolyValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(PolyVisitor)
    }
}

struct PolyVisitor;

impl<'de> Visitor<'de> for PolyVisitor {
    type Value = PolyValue;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a polynomial string or an array of coefficients")
    }

    fn visit_str<E: de::Error>(self, text: &str) -> Result<PolyValue, E> {
        let Some(field) = ACTIVE_FIELD.with(|f| f.borrow().clone()) else {
            return Ok(PolyValue(None));
        };
        match parse_poly(&field, text) {
            Ok(p) => Ok(PolyValue(Some(p))),
            Err(Error::Syntax {
                line,
                column,
                message,
            }) => {
                if line == 1 {
                    INNER_COLUMN.with(|c| *c.borrow_mut() = Some(column));
                }
                Err(E::custom(message))
            }
            Err(e) => Err(E::custom(e)),
        }
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<PolyValue, E> {
        self.visit_seq(de::value::SeqDeserializer::new(std::iter::once(v)))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<PolyValue, E> {
        self.visit_seq(de::value::SeqDeserializer::new(std::iter::once(v)))
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<PolyValue, A::Error> {
        let mut coeffs = Vec::new();
        while let Some(c) = seq.next_element::<i64>()? {
            coeffs.push(c);
        }
        let Some(field) = ACTIVE_FIELD.with(|f| f.borrow().clone()) else {
            return Ok(PolyValue(None));
        };
        let q = field.order() as i64;
        let mut elems = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if field.degree() == 1 {
                elems.push(field.from_int(c));
            } else if (0..q).contains(&c) {
                elems.push(Elem(c as u32));
            } else {
                return Err(de::Error::custom(format!(
                    "coefficient {c} is not an element index in [0, {q})"
                )));
            }
        }
        Ok(PolyValue(Some(Poly::new(&field, elems))))
    }
}

fn syntax(err: json5::Error) -> Error {
    let (line, column) = match err.position() {
        Some(p) => (p.line + 1, p.column + 1),
        None => (1, 1),
    };
    // Strings are reported at their opening quote; shift to the offending character.
    let column = match INNER_COLUMN.with(|c| c.borrow_mut().take()) {
        Some(inner) => column + inner,
        None => column,
    };
    let message = err.to_string();
    let message = match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    };
    Error::Syntax {
        line,
        column,
        message,
    }
}

/// Parses and resolves a document. Canonical triples are validated, generator
/// lists are canonicalized.
pub fn parse_code_spec(text: &str) -> Result<CodeSpec, Error> {
    INNER_COLUMN.with(|c| *c.borrow_mut() = None);
    let raw: RawDoc = json5::from_str(text).map_err(syntax)?;
    let field = match &raw.q {
        FieldText::Order(q) => Field::with_order(*q, raw.modulus.as_deref())?,
        FieldText::Notation(s) => Field::parse(s, raw.modulus.as_deref())?,
    };
    let raw: RawDoc = {
        let _guard = ActiveField::set(&field);
        json5::from_str(text).map_err(syntax)?
    };
    let m = raw.m;
    if m == 0 {
        return Err(Error::Validation {
            condition: "m".into(),
            message: "block length must be at least 1".into(),
        });
    }
    let take = |p: PolyValue| p.0.expect("field is active on the second pass");
    let code = match (raw.canonical, raw.generators) {
        (Some(t), None) => Qc2Code::from_triple(&field, m, take(t.g11), take(t.g12), take(t.g22))?,
        (None, Some(gens)) => {
            let vectors: Vec<CodeVector> = gens
                .into_iter()
                .map(|(a, b)| CodeVector::new(m, take(a), take(b)))
                .collect();
            Qc2Code::canonicalize(&field, m, &vectors)?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "a document needs exactly one of `canonical` or `generators`".into(),
            ))
        }
    };
    Ok(CodeSpec {
        label: raw.label,
        code,
    })
}

/// The field descriptor of a document.
pub fn field_json(field: &Field) -> Value {
    json!({
        "q": field.notation(),
        "modulus": field.modulus(),
    })
}

/// Prints a code as a canonical-triple document that parses back to it.
pub fn to_document(code: &Qc2Code, label: Option<&str>) -> Value {
    let mut doc = json!({
        "q": code.field().notation(),
        "modulus": code.field().modulus(),
        "m": code.m(),
        "canonical": triple_json(code),
    });
    if let Some(label) = label {
        doc["label"] = Value::String(label.into());
    }
    doc
}

pub fn triple_json(code: &Qc2Code) -> Value {
    json!({
        "g11": code.g11().to_string(),
        "g12": code.g12().to_string(),
        "g22": code.g22().to_string(),
    })
}

/// Echo of a parsed document, used in reports.
#[derive(Serialize)]
pub struct DocumentEcho {
    pub label: Option<String>,
    pub document: Value,
}

#[cfg(test)]
mod tests {
    use super::*;

    const REMARK: &str =
        r#"{q: 2, m: 7, canonical: {g11: "x^4+x^3+x^2+1", g12: "1", g22: "x^3+x^2+1"}}"#;

    #[test]
    fn canonical_triple_loads() {
        let spec = parse_code_spec(REMARK).unwrap();
        assert_eq!(spec.code.dimension(), 7);
        assert_eq!(spec.code.g12().to_string(), "1");
    }

    #[test]
    fn generator_list_is_canonicalized() {
        let doc = r#"{q: "q=2", m: 7, generators: [["x^4+x^3+x^2+1", "1"], [0, "x^4+x^2+x+1"]]}"#;
        let from_gens = parse_code_spec(doc).unwrap().code;
        // (0, p1*p3) spans the same code as (0, p3) next to (p1*p2, 1).
        assert_eq!(from_gens, parse_code_spec(REMARK).unwrap().code);
    }

    #[test]
    fn coefficient_arrays_match_strings() {
        let a = parse_code_spec(r#"{q: 3, m: 2, generators: [["2x+1", [1, 2]]]}"#).unwrap();
        let b = parse_code_spec(r#"{q: 3, m: 2, generators: [[[1, 2], [-2, -1]]]}"#).unwrap();
        assert_eq!(a.code, b.code);
    }

    #[test]
    fn extension_field_indices() {
        let doc = r#"{q: "2^2", m: 3, generators: [[[2], "w"]]}"#;
        let spec = parse_code_spec(doc).unwrap();
        assert_eq!(spec.code.dimension(), 3);
        let bad = r#"{q: 4, m: 3, generators: [[[4], "w"]]}"#;
        assert!(matches!(parse_code_spec(bad), Err(Error::Syntax { .. })));
    }

    #[test]
    fn caret_error_position() {
        let doc = "{q: 2, m: 3,\n canonical: {g11: \"x^^2\", g12: 0, g22: 1}}";
        match parse_code_spec(doc) {
            Err(Error::Syntax { line, column, .. }) => {
                assert_eq!(line, 2);
                // `"` sits at column 19, the second caret at 22.
                assert_eq!(column, 22);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn g12_degree_names_line_two() {
        let doc = r#"{q: 2, m: 7, canonical: {g11: "x^4+x^3+x^2+1", g12: "x^3", g22: "x^3+x^2+1"}}"#;
        match parse_code_spec(doc) {
            Err(Error::Validation { condition, .. }) => assert_eq!(condition, "(*) line 2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn payload_must_be_unique() {
        let doc = r#"{q: 2, m: 3}"#;
        assert!(matches!(parse_code_spec(doc), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn unsupported_field() {
        assert!(matches!(
            parse_code_spec(r#"{q: 6, m: 3, generators: []}"#),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn round_trip_through_print() {
        let code = parse_code_spec(REMARK).unwrap().code;
        let text = to_document(&code, Some("remark")).to_string();
        let back = parse_code_spec(&text).unwrap();
        assert_eq!(back.code, code);
        assert_eq!(back.label.as_deref(), Some("remark"));
    }
}
