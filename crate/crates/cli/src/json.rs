//! Canonical JSON forms: integers stay numbers while a double holds them
//! exactly and become decimal strings beyond that; rationals are always
//! strings `"p/q"`, or `"p"` when integral.

use integrality::linalg::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

const LARGEST_EXACT: i64 = 1 << 53;

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= LARGEST_EXACT => json!(v),
        _ => json!(x.to_string()),
    }
}

pub fn uint(x: &num_bigint::BigUint) -> Value {
    int(&BigInt::from(x.clone()))
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(m.row(i))).collect())
}

pub fn rat(x: &BigRational) -> Value {
    json!(x.to_string())
}

pub fn rats(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn points(ps: &[Vec<BigRational>]) -> Value {
    Value::Array(ps.iter().map(|p| rats(p)).collect())
}

pub fn int_points(ps: &[Vec<BigInt>]) -> Value {
    Value::Array(ps.iter().map(|p| ints(p)).collect())
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub const CSV_COLUMNS: [&str; 7] = ["t", "total", "good", "empty", "fraction", "fraction_f64", "std_error"];

pub fn density_csv(rows: &[Value]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        let line: Vec<String> = CSV_COLUMNS.iter().map(|c| cell(&r[*c])).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_switch_to_strings_past_two_to_the_53() {
        assert_eq!(int(&BigInt::from(LARGEST_EXACT)), json!(LARGEST_EXACT));
        assert_eq!(int(&BigInt::from(-LARGEST_EXACT - 1)), json!("-9007199254740993"));
    }

    #[test]
    fn rationals_are_canonical() {
        let r = BigRational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(rat(&r), json!("-3/2"));
        assert_eq!(rat(&BigRational::from_integer(BigInt::from(4))), json!("4"));
    }
}
