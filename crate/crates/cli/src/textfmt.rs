//! Shared plain-text conventions: the complex CLI literal, six-significant-
//! digit fixed-point numbers, and minimal CSV field escaping.

use spa_detect::C64;

/// Parse `RE`, `RE+IMi`, `RE-IMi`, or `IMi` with plain decimal components
/// (no exponents, no named constants).
pub fn parse_complex(text: &str) -> Result<C64, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(body) = t.strip_suffix(['i', 'I']) {
        // Split at the last interior sign: everything before is the real
        // part, the signed remainder is the imaginary coefficient.
        if let Some(rel) = body.get(1..).and_then(|rest| rest.rfind(['+', '-'])) {
            let pos = rel + 1;
            let re = parse_decimal(&body[..pos])?;
            let im = parse_decimal(&body[pos..])?;
            Ok(C64::new(re, im))
        } else {
            Ok(C64::new(0.0, parse_decimal(body)?))
        }
    } else {
        Ok(C64::new(parse_decimal(t)?, 0.0))
    }
}

fn parse_decimal(text: &str) -> Result<f64, String> {
    let body = text.strip_prefix(['+', '-']).unwrap_or(text);
    let plain = !body.is_empty() && body.chars().all(|c| c.is_ascii_digit() || c == '.');
    if !plain {
        return Err(format!(
            "\"{text}\" is not a plain decimal number (digits and one dot, optional sign)"
        ));
    }
    text.parse::<f64>().map_err(|e| format!("\"{text}\": {e}"))
}

/// Fixed-point rendering with six significant digits (no exponent form).
pub fn sig6(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return String::from("0.00000");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).clamp(0, 17) as usize;
    format!("{v:.decimals$}")
}

/// Compact complex literal in the same syntax `parse_complex` accepts.
pub fn complex_literal(z: C64) -> String {
    if z.im == 0.0 {
        sig6(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", sig6(z.re), sig6(-z.im))
    } else {
        format!("{}+{}i", sig6(z.re), sig6(z.im))
    }
}

/// Quote a CSV field only when it contains a delimiter, quote, or newline.
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
    fn complex_literals_round_trip() {
        for (text, re, im) in [
            ("0", 0.0, 0.0),
            ("0.4+0.1i", 0.4, 0.1),
            ("0.27-0.13i", 0.27, -0.13),
            ("-0.5", -0.5, 0.0),
            ("-0.4-0.1i", -0.4, -0.1),
            ("0.25i", 0.0, 0.25),
            ("-0.25i", 0.0, -0.25),
            ("+0.3+0.2i", 0.3, 0.2),
        ] {
            let z = parse_complex(text).unwrap();
            assert_eq!((z.re, z.im), (re, im), "literal {text}");
        }
        for bad in [
            "", "i", "1e3", "0.4+i", "abc", "1+2j", "nan", "0.1+0.2", "--1",
        ] {
            assert!(
                parse_complex(bad).is_err(),
                "literal {bad} should be rejected"
            );
        }
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(0.0458963), "0.0458963");
        assert_eq!(sig6(0.26), "0.260000");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(0.0), "0.00000");
        assert_eq!(sig6(-0.362311), "-0.362311");
        assert_eq!(sig6(134.5 / 768.0), "0.175130");
    }

    #[test]
    fn csv_escaping() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
