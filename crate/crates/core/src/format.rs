//! Decimal output with 12 significant digits.

use serde_json::Value;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant decimal digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Shortest decimal spelling of `round_sig(x)`, in exponent form when the
/// magnitude is below 1e-6 or at least 1e15.
pub fn number(x: f64) -> String {
    let r = round_sig(x);
    let a = r.abs();
    if a != 0.0 && !(1e-6..1e15).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Rounds every floating-point number inside a JSON document in place.
pub fn round_json(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().and_then(|f| serde_json::Number::from_f64(round_sig(f))) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_twelve_digits() {
        assert_eq!(number(7.5), "7.5");
        assert_eq!(number(1.0 / 10f64.sqrt()), "0.316227766017");
        assert_eq!(number(2.000000000000001), "2");
        assert_eq!(number(-0.0), "0");
        assert_eq!(number(123456789012345.0), "123456789012000");
        assert_eq!(number(1.23456789012345e15), "1.23456789012e15");
        assert_eq!(number(1.23456789012345e-7), "1.23456789012e-7");
        assert_eq!(number(2.5e-5), "0.000025");
    }

    #[test]
    fn rounding_is_idempotent() {
        for x in [std::f64::consts::PI, 1e-300, 6.02214076e23, -2.5e-5] {
            assert_eq!(round_sig(round_sig(x)), round_sig(x));
        }
    }

    #[test]
    fn json_numbers_are_rounded() {
        let mut v = serde_json::json!({"a": 0.30000000000000004, "b": [1.0000000000001, 3], "c": "x"});
        round_json(&mut v);
        assert_eq!(v.to_string(), r#"{"a":0.3,"b":[1.0,3],"c":"x"}"#);
    }
}
