//! On-disk formats: polynomial JSON, bound reports, count CSV and the
//! plain-text animal format. Every JSON document carries `"format": 1`.
//! Key order is fixed, so equal inputs serialise to equal bytes.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::bounds::{BoundResult, Certificate};
use crate::geom::{Animal, AnimalError, Cell};
use crate::polyalg::{to_decimal, BiPoly, RootInterval, ZPoly};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unsupported format version {0}")]
    Version(u64),
    #[error("missing or malformed field {0:?}")]
    Field(&'static str),
    #[error(transparent)]
    Animal(#[from] AnimalError),
}

fn check_version(v: &Value) -> Result<(), FormatError> {
    match v.get("format").and_then(Value::as_u64) {
        Some(FORMAT_VERSION) => Ok(()),
        Some(n) => Err(FormatError::Version(n)),
        None => Err(FormatError::Field("format")),
    }
}

fn big(v: &Value, field: &'static str) -> Result<BigInt, FormatError> {
    let s = v.get(field).and_then(Value::as_str).ok_or(FormatError::Field(field))?;
    BigInt::from_str(s).map_err(|_| FormatError::Field(field))
}

fn exponent(v: &Value, field: &'static str) -> Result<u32, FormatError> {
    v.get(field).and_then(Value::as_u64).and_then(|e| u32::try_from(e).ok()).ok_or(FormatError::Field(field))
}

/// Terms of a bivariate polynomial, ordered by `y` then `x`.
pub fn bipoly_terms_json(p: &BiPoly) -> Value {
    // BiPoly iterates in (b, a) order already
    Value::Array(p.terms().map(|(a, b, c)| json!({"x": a, "y": b, "c": c.to_string()})).collect())
}

pub fn bipoly_to_json(p: &BiPoly) -> Value {
    json!({"format": FORMAT_VERSION, "vars": ["x", "y"], "terms": bipoly_terms_json(p)})
}

fn bipoly_from_terms(terms: &Value) -> Result<BiPoly, FormatError> {
    let terms = terms.as_array().ok_or(FormatError::Field("terms"))?;
    let mut p = BiPoly::zero();
    for t in terms {
        p.add_term(exponent(t, "x")?, exponent(t, "y")?, big(t, "c")?);
    }
    Ok(p)
}

pub fn bipoly_from_json(v: &Value) -> Result<BiPoly, FormatError> {
    check_version(v)?;
    if v.get("vars") != Some(&json!(["x", "y"])) {
        return Err(FormatError::Field("vars"));
    }
    bipoly_from_terms(v.get("terms").ok_or(FormatError::Field("terms"))?)
}

pub fn zpoly_to_json(p: &ZPoly) -> Value {
    let terms: Vec<Value> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(k, c)| json!({"z": k, "c": c.to_string()}))
        .collect();
    json!({"format": FORMAT_VERSION, "vars": ["z"], "terms": terms})
}

pub fn zpoly_from_json(v: &Value) -> Result<ZPoly, FormatError> {
    check_version(v)?;
    if v.get("vars") != Some(&json!(["z"])) {
        return Err(FormatError::Field("vars"));
    }
    let terms = v.get("terms").and_then(Value::as_array).ok_or(FormatError::Field("terms"))?;
    let mut c: Vec<BigInt> = Vec::new();
    for t in terms {
        let k = exponent(t, "z")? as usize;
        if c.len() <= k {
            c.resize(k + 1, BigInt::default());
        }
        c[k] += big(t, "c")?;
    }
    Ok(ZPoly::new(c))
}

/// A bundle of weight polynomials `W_i` for one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightBundle {
    pub d: usize,
    pub polys: Vec<(usize, BiPoly)>,
}

impl WeightBundle {
    pub fn get(&self, i: usize) -> Option<&BiPoly> {
        self.polys.iter().find(|(k, _)| *k == i).map(|(_, p)| p)
    }
}

pub fn weight_bundle_from_json(text: &str) -> Result<WeightBundle, FormatError> {
    let v: Value = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    check_version(&v)?;
    let d = v.get("d").and_then(Value::as_u64).ok_or(FormatError::Field("d"))? as usize;
    let mut polys = Vec::new();
    for p in v.get("polys").and_then(Value::as_array).ok_or(FormatError::Field("polys"))? {
        let i = p.get("i").and_then(Value::as_u64).ok_or(FormatError::Field("i"))? as usize;
        polys.push((i, bipoly_from_terms(p.get("terms").ok_or(FormatError::Field("terms"))?)?));
    }
    Ok(WeightBundle { d, polys })
}

fn interval_json(r: &RootInterval, places: usize) -> Value {
    json!({"lo": to_decimal(&r.lo, places), "hi": to_decimal(&r.hi, places)})
}

pub fn certificate_json(c: &Certificate, places: usize) -> Value {
    match c {
        Certificate::Exact => json!({"kind": "exact"}),
        Certificate::Algebraic { poly, root } => {
            json!({"kind": "algebraic", "poly": zpoly_to_json(poly), "root": interval_json(root, places)})
        }
        Certificate::Discriminant { disc, root } => {
            json!({"kind": "discriminant", "disc": zpoly_to_json(disc), "root": interval_json(root, places)})
        }
        Certificate::Minimizer { b0, f_b0 } => {
            json!({"kind": "minimizer", "b0": to_decimal(b0, places), "f_b0": to_decimal(f_b0, places)})
        }
        Certificate::None => Value::Null,
    }
}

/// Bound report. `runtime_ms` is only included when asked for, so that
/// reports stay byte-identical across reruns by default.
pub fn bound_report(r: &BoundResult, precision: usize, runtime_ms: Option<u128>) -> Value {
    let mut m = Map::new();
    m.insert("format".into(), json!(FORMAT_VERSION));
    m.insert("method".into(), json!(r.method.as_str()));
    m.insert("direction".into(), json!(r.direction.as_str()));
    m.insert("d".into(), json!(r.d));
    m.insert("i".into(), r.param.map_or(Value::Null, |i| json!(i)));
    m.insert("value".into(), json!(r.render(precision)));
    if let Certificate::Exact = r.certificate {
        m.insert("exact".into(), json!(r.value.to_string()));
    }
    m.insert("precision".into(), json!(precision));
    // interval endpoints get a few guard digits beyond the printed value
    m.insert("certificate".into(), certificate_json(&r.certificate, precision + 6));
    if let Some(ms) = runtime_ms {
        m.insert("runtime_ms".into(), json!(ms as u64));
    }
    Value::Object(m)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

/// One cell per line, `x y` or `x y z`; blank lines and `#` comments are
/// ignored. The result is translation-normalised.
pub fn parse_animal<const D: usize>(text: &str) -> Result<Animal<D>, FormatError> {
    let mut cells = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Result<Vec<i64>, _> = line.split_whitespace().map(i64::from_str).collect();
        let nums = nums.map_err(|e| FormatError::Syntax { line: k + 1, msg: e.to_string() })?;
        if nums.len() != D {
            return Err(FormatError::Syntax { line: k + 1, msg: format!("expected {D} coordinates, got {}", nums.len()) });
        }
        let mut c = [0i64; D];
        c.copy_from_slice(&nums);
        cells.push(Cell(c));
    }
    Ok(Animal::new(cells)?)
}

/// Inverse of [`parse_animal`]: cells in lattice order, one per line.
pub fn write_animal<const D: usize>(a: &Animal<D>) -> String {
    let mut s = String::new();
    for c in a.cells() {
        let parts: Vec<String> = c.0.iter().map(|v| v.to_string()).collect();
        s += &parts.join(" ");
        s.push('\n');
    }
    s
}

/// One row of a published results table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub i: usize,
    pub count: BigInt,
    /// As printed, 9 decimals.
    pub bound: String,
}

/// Reads `i,count,bound[,...]` CSV with a header line; extra columns are
/// ignored.
pub fn parse_table_csv(text: &str) -> Result<Vec<TableRow>, FormatError> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        let bad = |msg: &str| FormatError::Syntax { line: k + 1, msg: msg.to_string() };
        if f.len() < 3 {
            return Err(bad("expected at least 3 columns"));
        }
        rows.push(TableRow {
            i: f[0].parse().map_err(|_| bad("bad i"))?,
            count: f[1].parse().map_err(|_| bad("bad count"))?,
            bound: f[2].to_string(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipoly_round_trip() {
        let p = BiPoly::from_terms([(0, 1, 1.into()), (1, 1, 2.into()), (2, 1, 2.into()), (5, 4, "123456789012345678901234567890".parse().unwrap())]);
        let v = bipoly_to_json(&p);
        assert_eq!(v["terms"][0], json!({"x": 0, "y": 1, "c": "1"}));
        assert_eq!(bipoly_from_json(&v).unwrap(), p);
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.starts_with(r#"{"format":1,"vars":["x","y"],"terms":"#));
    }

    #[test]
    fn zpoly_round_trip() {
        let p = ZPoly::from_i64s(&[1, -4, 0, -4]);
        let v = zpoly_to_json(&p);
        assert_eq!(v["terms"].as_array().unwrap().len(), 3);
        assert_eq!(zpoly_from_json(&v).unwrap(), p);
        assert!(zpoly_from_json(&json!({"format": 2, "vars": ["z"], "terms": []})).is_err());
    }

    #[test]
    fn animals() {
        let a: Animal<2> = parse_animal("# an L\n5 5\n5 6\n\n6 5\n").unwrap();
        assert_eq!(write_animal(&a), "0 0\n1 0\n0 1\n");
        assert!(parse_animal::<2>("0 0\n2 0\n").is_err());
        assert!(parse_animal::<3>("0 0\n").is_err());
        assert!(parse_animal::<2>("0 x\n").is_err());
        let c: Animal<3> = parse_animal("0 0 0\n0 0 1\n").unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn table_csv() {
        let rows = parse_table_csv("i,count,bound\n1,5,4.828427124\n").unwrap();
        assert_eq!(rows, vec![TableRow { i: 1, count: 5.into(), bound: "4.828427124".into() }]);
    }
}
