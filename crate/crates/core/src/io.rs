//! Canonical JSON for fields, elements, matrices, codes and certificates.
//!
//! Output is compact with object keys sorted, so a canonical file survives a
//! read/write cycle byte for byte. Numbers are always integers.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::certify::Certificate;
use crate::code::{EvalCode, EvalSet, ExponentSet};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::matrix::MatrixFq;

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| fmt_err(format!("{what}: expected a non-negative integer, got {v}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| fmt_err(format!("{what}: expected an array")))
}

fn field_of<'a>(obj: &'a serde_json::Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| fmt_err(format!("{what}: missing key {key:?}")))
}

fn reject_floats(v: &Value) -> Result<()> {
    match v {
        Value::Number(n) if !n.is_u64() && !n.is_i64() => Err(fmt_err(format!("non-integer number {n}"))),
        Value::Array(a) => a.iter().try_for_each(reject_floats),
        Value::Object(o) => o.values().try_for_each(reject_floats),
        _ => Ok(()),
    }
}

/// Compact JSON with sorted keys.
pub fn to_canonical_string(v: &Value) -> String {
    // serde_json's default map is ordered by key
    serde_json::to_string(v).expect("values always serialize")
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| fmt_err(format!("invalid JSON: {e}")))
}

pub fn field_to_value(ctx: &FieldContext) -> Value {
    json!({ "p": ctx.p(), "m": ctx.m(), "modulus": ctx.modulus() })
}

pub fn field_from_value(v: &Value) -> Result<FieldContext> {
    let obj = v.as_object().ok_or_else(|| fmt_err("field: expected an object"))?;
    let p = as_u64(field_of(obj, "p", "field")?, "field.p")?;
    let m = as_u64(field_of(obj, "m", "field")?, "field.m")? as usize;
    let modulus = as_array(field_of(obj, "modulus", "field")?, "field.modulus")?
        .iter()
        .map(|c| as_u64(c, "field.modulus"))
        .collect::<Result<Vec<u64>>>()?;
    if modulus.len() != m + 1 {
        return Err(fmt_err(format!("field: modulus has degree {} but m = {m}", modulus.len().saturating_sub(1))));
    }
    FieldContext::with_modulus(p, &modulus)
}

pub fn element_to_value(e: &FieldElement) -> Value {
    json!(e.digits())
}

/// A digit array of length m; a bare integer is accepted when m = 1.
pub fn element_from_value(ctx: &FieldContext, v: &Value) -> Result<FieldElement> {
    let digits: Vec<u64> = match v {
        Value::Number(_) if ctx.m() == 1 => vec![as_u64(v, "element")?],
        Value::Array(a) => a.iter().map(|d| as_u64(d, "element digit")).collect::<Result<_>>()?,
        _ => return Err(fmt_err(format!("element: expected a digit array, got {v}"))),
    };
    if digits.len() != ctx.m() {
        return Err(Error::InvalidElement(format!("{} digits for a degree-{} field", digits.len(), ctx.m())));
    }
    ctx.element(&digits)
}

pub fn elements_to_value(es: &[FieldElement]) -> Value {
    Value::Array(es.iter().map(element_to_value).collect())
}

pub fn elements_from_value(ctx: &FieldContext, v: &Value) -> Result<Vec<FieldElement>> {
    as_array(v, "elements")?.iter().map(|e| element_from_value(ctx, e)).collect()
}

/// Like [`elements_from_value`] but `null` entries become `None`.
pub fn optional_elements_from_value(ctx: &FieldContext, v: &Value) -> Result<Vec<Option<FieldElement>>> {
    as_array(v, "elements")?
        .iter()
        .map(|e| if e.is_null() { Ok(None) } else { element_from_value(ctx, e).map(Some) })
        .collect()
}

pub fn matrix_to_value(m: &MatrixFq) -> Value {
    let entries: Vec<Value> = (0..m.rows()).map(|r| elements_to_value(m.row(r))).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn matrix_from_value(ctx: &FieldContext, v: &Value) -> Result<MatrixFq> {
    let obj = v.as_object().ok_or_else(|| fmt_err("matrix: expected an object"))?;
    let rows = as_u64(field_of(obj, "rows", "matrix")?, "matrix.rows")? as usize;
    let cols = as_u64(field_of(obj, "cols", "matrix")?, "matrix.cols")? as usize;
    let entries = as_array(field_of(obj, "entries", "matrix")?, "matrix.entries")?
        .iter()
        .map(|row| elements_from_value(ctx, row))
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != rows {
        return Err(Error::DimensionMismatch { expected: rows, found: entries.len() });
    }
    MatrixFq::from_rows(ctx, cols, entries)
}

pub fn certificate_to_value(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("certificates always serialize")
}

pub fn certificate_from_value(v: &Value) -> Result<Certificate> {
    serde_json::from_value(v.clone()).map_err(|e| fmt_err(format!("certificate: {e}")))
}

/// A code plus an optional certificate, as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeFile {
    pub code: EvalCode,
    pub certificate: Option<Certificate>,
}

impl CodeFile {
    pub fn new(code: EvalCode) -> Self {
        CodeFile { code, certificate: None }
    }

    pub fn to_value(&self) -> Value {
        let c = &self.code;
        let mut obj = serde_json::Map::new();
        obj.insert("field".into(), field_to_value(c.ctx()));
        obj.insert("points".into(), elements_to_value(c.points().points()));
        obj.insert("exponents".into(), json!(c.exponents().exps()));
        obj.insert("family".into(), json!(c.family()));
        obj.insert("params".into(), Value::Object(c.params().clone().into_iter().collect()));
        if let Some(cert) = &self.certificate {
            obj.insert("certificate".into(), certificate_to_value(cert));
        }
        Value::Object(obj)
    }

    pub fn to_canonical_string(&self) -> String {
        to_canonical_string(&self.to_value())
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        reject_floats(v)?;
        let obj = v.as_object().ok_or_else(|| fmt_err("code file: expected an object"))?;
        if let Some(extra) = obj.keys().find(|k| !["field", "points", "exponents", "family", "params", "certificate"].contains(&k.as_str())) {
            return Err(fmt_err(format!("code file: unknown key {extra:?}")));
        }
        let ctx = field_from_value(field_of(obj, "field", "code file")?)?;
        let points = elements_from_value(&ctx, field_of(obj, "points", "code file")?)?;
        let exps = as_array(field_of(obj, "exponents", "code file")?, "exponents")?
            .iter()
            .map(|e| as_u64(e, "exponent"))
            .collect::<Result<Vec<u64>>>()?;
        let family = match obj.get("family") {
            None => "custom".to_string(),
            Some(f) => f.as_str().ok_or_else(|| fmt_err("family: expected a string"))?.to_string(),
        };
        let params: BTreeMap<String, Value> = match obj.get("params") {
            None => BTreeMap::new(),
            Some(Value::Object(o)) => o.clone().into_iter().collect(),
            Some(_) => return Err(fmt_err("params: expected an object")),
        };
        let code = EvalCode::tagged(&ctx, EvalSet::new(&ctx, points)?, ExponentSet::new(exps)?, &family, params)?;
        let certificate = match obj.get("certificate") {
            None | Some(Value::Null) => None,
            Some(c) => Some(certificate_from_value(c)?),
        };
        Ok(CodeFile { code, certificate })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_value(&parse_json(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::non_rs_certificate;
    use crate::families::{cor44, thm412};
    use crate::field::make_field;
    use crate::limits::Limits;

    #[test]
    fn field_roundtrip() {
        let f = make_field(2, 4).unwrap();
        let v = field_to_value(&f);
        assert_eq!(to_canonical_string(&v), r#"{"m":4,"modulus":[1,1,0,0,1],"p":2}"#);
        assert_eq!(field_from_value(&v).unwrap(), f);
        let bad = json!({"p": 2, "m": 2, "modulus": [1, 0, 1]});
        assert!(field_from_value(&bad).is_err());
        let wrong_m = json!({"p": 2, "m": 3, "modulus": [1, 1, 1]});
        assert!(matches!(field_from_value(&wrong_m), Err(Error::Format(_))));
    }

    #[test]
    fn elements() {
        let f = make_field(3, 2).unwrap();
        let z = f.zeta();
        assert_eq!(element_to_value(&z), json!([0, 1]));
        assert_eq!(element_from_value(&f, &json!([0, 1])).unwrap(), z);
        assert!(element_from_value(&f, &json!([0])).is_err());
        assert!(element_from_value(&f, &json!([3, 0])).is_err());
        assert!(element_from_value(&f, &json!(1)).is_err());
        let p = make_field(13, 1).unwrap();
        assert_eq!(element_from_value(&p, &json!(5)).unwrap(), p.constant(5));
        let opt = optional_elements_from_value(&p, &json!([[1], null, 2])).unwrap();
        assert_eq!(opt, vec![Some(p.constant(1)), None, Some(p.constant(2))]);
    }

    #[test]
    fn matrix_roundtrip() {
        let code = thm412(3, 3, 4, 9).unwrap();
        let g = code.generator_matrix();
        let v = matrix_to_value(&g);
        assert_eq!(matrix_from_value(code.ctx(), &v).unwrap(), g);
        let mut bad = v.clone();
        bad["rows"] = json!(5);
        assert!(matrix_from_value(code.ctx(), &bad).is_err());
    }

    #[test]
    fn code_file_is_canonical() {
        let code = cor44(13, 3, 6).unwrap();
        let cert = non_rs_certificate(&code, &Limits::default(), true).unwrap();
        let file = CodeFile { code, certificate: Some(cert) };
        let text = file.to_canonical_string();
        assert!(text.starts_with(r#"{"certificate":{"#));
        assert!(text.contains(r#""exponents":[0,1,3],"family":"cor44","field":{"m":1,"modulus":[0,1],"p":13},"params":{"k":3,"n":6,"p":13},"points":[[0],[1],[2],[3],[4],[5]]"#));
        let back = CodeFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_canonical_string(), text);
        // the same code in a different layout normalizes to the same bytes
        let pretty = serde_json::to_string_pretty(&parse_json(&text).unwrap()).unwrap();
        assert_eq!(CodeFile::parse(&pretty).unwrap().to_canonical_string(), text);
    }

    #[test]
    fn code_file_rejects_bad_input() {
        let base = CodeFile::new(cor44(13, 3, 6).unwrap()).to_value();
        let mut v = base.clone();
        v["points"] = json!([[0], [0], [1], [2], [3], [4]]);
        assert!(CodeFile::from_value(&v).is_err());
        let mut v = base.clone();
        v["params"] = json!({"p": 1.5});
        assert!(matches!(CodeFile::from_value(&v), Err(Error::Format(_))));
        let mut v = base.clone();
        v["bogus"] = json!(1);
        assert!(CodeFile::from_value(&v).is_err());
        assert!(CodeFile::parse("{").is_err());
        let mut v = base;
        v["exponents"] = json!([0, 1, 2, 3, 4, 5, 6]);
        assert!(CodeFile::from_value(&v).is_err());
    }
}
