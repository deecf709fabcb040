//! JSON shapes shared by the CLI and the web demo: complex numbers as
//! [re, im], matrices as row arrays, and a 17-significant-digit emitter.

use crate::covering::SpinorParams;
use crate::{Error, Matrix4C, Matrix4R, Result, C64};
use serde_json::{json, Value};
use std::fmt::Write;

pub fn c64(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_array(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|&z| c64(z)).collect())
}

pub fn real_array(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| json!(x)).collect())
}

pub fn matrix_c(m: &Matrix4C) -> Value {
    Value::Array((0..4).map(|i| complex_array(&[m[(i, 0)], m[(i, 1)], m[(i, 2)], m[(i, 3)]])).collect())
}

pub fn matrix_r(m: &Matrix4R) -> Value {
    Value::Array((0..4).map(|i| real_array(&[m[(i, 0)], m[(i, 1)], m[(i, 2)], m[(i, 3)]])).collect())
}

pub fn spinor_params(k: &SpinorParams) -> Value {
    complex_array(&k.k)
}

fn bad(what: &str) -> Error {
    Error::Domain(format!("malformed JSON: expected {what}"))
}

pub fn parse_f64(v: &Value) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad("a number"))
}

/// A number (real) or an [re, im] pair.
pub fn parse_c64(v: &Value) -> Result<C64> {
    match v {
        Value::Number(_) => Ok(C64::from(parse_f64(v)?)),
        Value::Array(a) if a.len() == 2 => Ok(C64::new(parse_f64(&a[0])?, parse_f64(&a[1])?)),
        _ => Err(bad("a complex number [re, im]")),
    }
}

pub fn parse_real_n<const N: usize>(v: &Value) -> Result<[f64; N]> {
    let a = v.as_array().filter(|a| a.len() == N).ok_or_else(|| bad(&format!("{N} reals")))?;
    let mut out = [0.0; N];
    for (o, x) in out.iter_mut().zip(a) {
        *o = parse_f64(x)?;
    }
    Ok(out)
}

pub fn parse_complex_n<const N: usize>(v: &Value) -> Result<[C64; N]> {
    let a = v.as_array().filter(|a| a.len() == N).ok_or_else(|| bad(&format!("{N} complex numbers")))?;
    let mut out = [C64::new(0.0, 0.0); N];
    for (o, x) in out.iter_mut().zip(a) {
        *o = parse_c64(x)?;
    }
    Ok(out)
}

/// 4x4 matrix of numbers or [re, im] pairs.
pub fn parse_matrix(v: &Value) -> Result<Matrix4C> {
    let rows = v.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad("a 4x4 matrix"))?;
    let mut m = Matrix4C::zeros();
    for (i, r) in rows.iter().enumerate() {
        let r: [C64; 4] = parse_complex_n(r)?;
        for j in 0..4 {
            m[(i, j)] = r[j];
        }
    }
    crate::checked_matrix(m)
}

/// Serializes with every number printed to 17 significant digits.
pub fn to_string_17(v: &Value) -> String {
    let mut out = String::new();
    emit(v, 0, &mut out);
    out
}

fn number(x: f64, out: &mut String) {
    if x.is_finite() {
        let _ = write!(out, "{x:.16e}");
    } else {
        out.push_str("null");
    }
}

fn emit(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize, out: &mut String| out.push_str(&"  ".repeat(d));
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_f64()) {
            (Some(i), _) => {
                let _ = write!(out, "{i}");
            }
            (_, Some(x)) => number(x, out),
            _ => out.push_str("null"),
        },
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                emit(x, depth, out);
            }
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                pad(depth + 1, out);
                emit(x, depth + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push(']');
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                pad(depth + 1, out);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                emit(x, depth + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}
