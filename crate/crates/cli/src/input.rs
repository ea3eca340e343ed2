//! Instance files.
//!
//! An instance is a JSON object with the fields `"A"` (required), `"b"`,
//! `"W"` and `"box"`. Integers are JSON numbers or, when they do not fit a
//! double exactly, decimal strings.
//!
//! ```json
//! {"A": [[1, 0], [0, 1], [-1, -1]], "b": [4, 4, "-1"], "box": {"lower": [0, 0], "upper": [4, 4]}}
//! ```

use integrality::linalg::IntMatrix;
use integrality::oracle::{IntBox, Instance};
use num_bigint::BigInt;
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub a: IntMatrix,
    pub b: Option<Vec<BigInt>>,
    pub w: Option<IntMatrix>,
    pub bbox: Option<IntBox>,
}

const LARGEST_EXACT: u64 = 1 << 53;

fn integer(v: &Value, path: &str) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(x) => {
            if let Some(i) = x.as_i64() {
                if i.unsigned_abs() <= LARGEST_EXACT {
                    return Ok(BigInt::from(i));
                }
            } else if let Some(u) = x.as_u64() {
                if u <= LARGEST_EXACT {
                    return Ok(BigInt::from(u));
                }
            } else {
                return Err(field_err(path, format!("{x} is not an integer")));
            }
            Err(field_err(path, format!("{x} exceeds 2^53; write it as a string")))
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| field_err(path, format!("\"{s}\" is not an integer"))),
        other => Err(field_err(path, format!("expected an integer, found {}", kind(other)))),
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn vector(v: &Value, path: &str, len: Option<usize>) -> Result<Vec<BigInt>, ParseError> {
    let items = v
        .as_array()
        .ok_or_else(|| field_err(path, format!("expected an array, found {}", kind(v))))?;
    if let Some(len) = len {
        if items.len() != len {
            return Err(field_err(path, format!("expected {len} entries, found {}", items.len())));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("{path}[{i}]")))
        .collect()
}

/// Rows of a matrix. `cols` fixes the row length; otherwise the first row
/// does.
fn matrix(v: &Value, path: &str, cols: Option<usize>) -> Result<IntMatrix, ParseError> {
    let rows = v
        .as_array()
        .ok_or_else(|| field_err(path, format!("expected an array of rows, found {}", kind(v))))?;
    let mut width = cols;
    let mut data = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        let len = row.as_array().map(|r| r.len());
        if let (Some(w), Some(l)) = (width, len) {
            if w != l {
                return Err(field_err(row_path, format!("ragged row: expected {w} entries, found {l}")));
            }
        }
        let parsed = vector(row, &row_path, None)?;
        width.get_or_insert(parsed.len());
        data.push(parsed);
    }
    let width = width.unwrap_or(0);
    IntMatrix::from_rows_with_cols(data, width).map_err(|e| field_err(path, e.to_string()))
}

fn bounds(v: &Value, n: usize) -> Result<IntBox, ParseError> {
    let obj = v
        .as_object()
        .ok_or_else(|| field_err("box", format!("expected an object, found {}", kind(v))))?;
    for key in obj.keys() {
        if key != "lower" && key != "upper" {
            return Err(field_err(format!("box.{key}"), "unknown field"));
        }
    }
    let get = |k: &str| -> Result<Vec<BigInt>, ParseError> {
        let path = format!("box.{k}");
        let x = obj.get(k).ok_or_else(|| field_err(&path, "missing"))?;
        vector(x, &path, Some(n))
    };
    IntBox::new(get("lower")?, get("upper")?).map_err(|e| field_err("box", e.to_string()))
}

/// Parses and validates an instance document.
///
/// ```
/// let inst = integrality_cli::parse_instance(r#"{"A": [[1]], "b": [0]}"#).unwrap();
/// assert_eq!(inst.a.rows(), 1);
///
/// let err = integrality_cli::parse_instance(r#"{"A": [[1, 2], [3]]}"#).unwrap_err();
/// assert_eq!(err.to_string(), "A[1]: ragged row: expected 2 entries, found 1");
/// ```
pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ParseError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj: &Map<String, Value> = doc
        .as_object()
        .ok_or_else(|| field_err("$", format!("expected an object, found {}", kind(&doc))))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "A" | "b" | "W" | "box") {
            return Err(field_err(key, "unknown field"));
        }
    }
    let a = matrix(obj.get("A").ok_or_else(|| field_err("A", "missing"))?, "A", None)?;
    if a.rows() == 0 || a.cols() == 0 {
        return Err(field_err("A", "needs at least one row and one column"));
    }
    let b = obj.get("b").map(|v| vector(v, "b", Some(a.rows()))).transpose()?;
    let w = obj.get("W").map(|v| matrix(v, "W", Some(a.cols()))).transpose()?;
    let bbox = obj.get("box").map(|v| bounds(v, a.cols())).transpose()?;
    Ok(InstanceFile { a, b, w, bbox })
}

impl InstanceFile {
    /// The polyhedron `{x : A x <= b}`, intersected with the box when given.
    pub fn instance(&self) -> Result<Instance, ParseError> {
        let b = self.b.clone().ok_or_else(|| field_err("b", "missing; this command needs a right-hand side"))?;
        let inst = Instance::new(self.a.clone(), b).map_err(|e| field_err("A", e.to_string()))?;
        match &self.bbox {
            Some(bx) => inst.with_box(bx.clone()).map_err(|e| field_err("box", e.to_string())),
            None => Ok(inst),
        }
    }

    pub fn rhs(&self) -> Result<&[BigInt], ParseError> {
        self.b
            .as_deref()
            .ok_or_else(|| field_err("b", "missing; this command needs a right-hand side"))
    }

    pub fn w(&self) -> Result<&IntMatrix, ParseError> {
        self.w
            .as_ref()
            .ok_or_else(|| field_err("W", "missing; this command needs an integrality matrix"))
    }
}
