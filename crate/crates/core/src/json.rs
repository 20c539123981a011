//! JSON shapes: rationals as `"p/q"`, Gaussian rationals as `{"re", "im"}`,
//! polynomials as ascending coefficient arrays, tuples as `{"n", "field", "polys"}`.
//! Parse errors name the offending field.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{format_rational, parse_rational, Coeff, GaussianRational, Poly, Rational};
use crate::nonres::{AnyPoly, SystemTuple, TupleData};

fn bad(path: &str, what: &str) -> Error {
    Error::InvalidInput(format!("{path}: {what}"))
}

pub trait JsonCoeff: Coeff {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, path: &str) -> Result<Self>;
}

fn rational_from_value(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| bad(path, &e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(bad(path, "expected a rational string \"p/q\"")),
    }
}

impl JsonCoeff for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        rational_from_value(v, path)
    }
}

impl JsonCoeff for GaussianRational {
    fn to_json(&self) -> Value {
        json!({ "re": format_rational(&self.re), "im": format_rational(&self.im) })
    }

    /// Also accepts a bare rational for a real coefficient.
    fn from_json(v: &Value, path: &str) -> Result<Self> {
        match v {
            Value::Object(map) => {
                for key in map.keys() {
                    if key != "re" && key != "im" {
                        return Err(bad(&format!("{path}.{key}"), "unknown field"));
                    }
                }
                let re = map.get("re").ok_or_else(|| bad(&format!("{path}.re"), "missing"))?;
                let im = map.get("im").ok_or_else(|| bad(&format!("{path}.im"), "missing"))?;
                Ok(GaussianRational::new(
                    rational_from_value(re, &format!("{path}.re"))?,
                    rational_from_value(im, &format!("{path}.im"))?,
                ))
            }
            _ => Ok(GaussianRational::real(rational_from_value(v, path)?)),
        }
    }
}

pub fn poly_to_json<C: JsonCoeff>(p: &Poly<C>) -> Value {
    Value::Array(p.coeffs().iter().map(JsonCoeff::to_json).collect())
}

pub fn poly_from_json<C: JsonCoeff>(v: &Value, path: &str) -> Result<Poly<C>> {
    let arr = v.as_array().ok_or_else(|| bad(path, "expected an array of coefficients"))?;
    let coeffs = arr
        .iter()
        .enumerate()
        .map(|(k, c)| C::from_json(c, &format!("{path}[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

pub fn any_poly_to_json(p: &AnyPoly) -> Value {
    match p {
        AnyPoly::Real(p) => poly_to_json(p),
        AnyPoly::Complex(p) => poly_to_json(p),
    }
}

pub fn tuple_to_json(t: &SystemTuple) -> Value {
    let (field, polys) = match t.data() {
        TupleData::Real(p) => ("R", p.iter().map(poly_to_json).collect::<Vec<_>>()),
        TupleData::Complex(p) => ("C", p.iter().map(poly_to_json).collect::<Vec<_>>()),
    };
    json!({ "n": t.n(), "field": field, "polys": polys })
}

pub fn tuple_from_json(v: &Value) -> Result<SystemTuple> {
    let obj = v.as_object().ok_or_else(|| bad("tuple", "expected a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "n" | "field" | "polys") {
            return Err(bad(key, "unknown field"));
        }
    }
    let n = obj
        .get("n")
        .ok_or_else(|| bad("n", "missing"))?
        .as_u64()
        .filter(|&n| n >= 1)
        .ok_or_else(|| bad("n", "expected a positive integer"))? as usize;
    let field = obj.get("field").ok_or_else(|| bad("field", "missing"))?;
    let polys = obj
        .get("polys")
        .ok_or_else(|| bad("polys", "missing"))?
        .as_array()
        .ok_or_else(|| bad("polys", "expected an array of polynomials"))?;
    let path = |k: usize| format!("polys[{k}]");
    match field.as_str() {
        Some("R") => {
            let ps = polys.iter().enumerate().map(|(k, p)| poly_from_json(p, &path(k))).collect::<Result<_>>()?;
            SystemTuple::new_real(ps, n)
        }
        Some("C") => {
            let ps = polys.iter().enumerate().map(|(k, p)| poly_from_json(p, &path(k))).collect::<Result<_>>()?;
            SystemTuple::new_complex(ps, n)
        }
        _ => Err(bad("field", "expected \"R\" or \"C\"")),
    }
}

pub fn tuple_from_str(s: &str) -> Result<SystemTuple> {
    let v: Value = serde_json::from_str(s).map_err(|e| bad("input", &format!("malformed JSON: {e}")))?;
    tuple_from_json(&v)
}

/// Round to 15 significant digits for stable printing.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn complex_to_json(z: Complex64) -> Value {
    json!([round_sig(z.re), round_sig(z.im)])
}

pub fn complex_from_json(v: &Value, path: &str) -> Result<Complex64> {
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad(path, "expected [re, im]"))?;
    let re = arr[0].as_f64().ok_or_else(|| bad(&format!("{path}[0]"), "expected a number"))?;
    let im = arr[1].as_f64().ok_or_else(|| bad(&format!("{path}[1]"), "expected a number"))?;
    Ok(Complex64::new(re, im))
}

/// A list of `[re, im]` pairs.
pub fn points_from_json(v: &Value, path: &str) -> Result<Vec<Complex64>> {
    let arr = v.as_array().ok_or_else(|| bad(path, "expected an array of [re, im] pairs"))?;
    arr.iter().enumerate().map(|(k, p)| complex_from_json(p, &format!("{path}[{k}]"))).collect()
}

pub fn points_to_json(pts: &[Complex64]) -> Value {
    Value::Array(pts.iter().map(|&z| complex_to_json(z)).collect())
}
