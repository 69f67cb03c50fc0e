//! Locale-free number formatting shared by every output path.

use num_complex::Complex64;

/// Significant digits in all emitted numbers.
pub const DIGITS: usize = 15;

/// `%.15g`: fixed notation for exponents in `[-5, 15)`, scientific otherwise,
/// trailing zeros stripped.
pub fn g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // Let the standard formatter do the rounding, then read off the exponent.
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS as i32).contains(&exp) {
        let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), sign, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// `a+bi` / `a-bi`.
pub fn complex(z: Complex64) -> String {
    let im = g(z.im.abs());
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", g(z.re), sign, im)
}

/// Rounds to the printed precision so JSON output matches the text output
/// digit for digit (the JSON writer prints the shortest round-trip form).
pub fn round(x: f64) -> f64 {
    if x.is_finite() {
        g(x).parse().unwrap_or(x)
    } else {
        x
    }
}

pub fn json_num(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(round(x)).map_or(serde_json::Value::Null, serde_json::Value::Number)
}

pub fn json_complex(z: Complex64) -> serde_json::Value {
    serde_json::json!({ "re": json_num(z.re), "im": json_num(z.im) })
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_range() {
        assert_eq!(g(2.617993877991494), "2.61799387799149");
        assert_eq!(g(-0.5773502691896258), "-0.577350269189626");
        assert_eq!(g(1.0), "1");
        assert_eq!(g(100.0), "100");
        assert_eq!(g(0.0001), "0.0001");
    }

    #[test]
    fn scientific_range() {
        assert_eq!(g(3.3e-13), "3.3e-13");
        assert_eq!(g(-1.0e-6), "-1e-06");
        assert_eq!(g(1.0e20), "1e+20");
        assert_eq!(g(123456789012345678.0), "1.23456789012346e+17");
    }

    #[test]
    fn rounding_carries_into_exponent() {
        assert_eq!(g(9.9999999999999999e14), "1e+15");
        assert_eq!(g(0.000099999999999999999), "0.0001");
    }

    #[test]
    fn complex_sign() {
        assert_eq!(complex(Complex64::new(1.0, -0.5)), "1-0.5i");
        assert_eq!(complex(Complex64::new(0.0, 2.0)), "0+2i");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a, b"), "\"a, b\"");
        assert_eq!(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
    }
}
