//! Decimal-string formatting and parsing for emitted files.
//!
//! Numbers travel as decimal strings at context precision so that CSV/JSON
//! output is deterministic and round-trips without binary-float truncation.

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use rug::{Complex, Float};

/// Decimal string with `ctx.digits()` significant digits, parseable by
/// [`parse_float`].
pub fn float_str(x: &Float, ctx: &Ctx) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let s = x.to_string_radix(10, Some(ctx.digits() as usize));
    s
}

pub fn complex_parts(z: &Complex, ctx: &Ctx) -> (String, String) {
    (
        float_str(&Float::with_val(ctx.prec(), z.real()), ctx),
        float_str(&Float::with_val(ctx.prec(), z.imag()), ctx),
    )
}

pub fn parse_float(s: &str, ctx: &Ctx) -> Result<Float> {
    ctx.parse_f(s.trim())
}

/// Parse a complex scalar in the forms accepted by the CLI:
/// `1.5`, `-2i`, `1+2i`, `0.5-0.25i`, `i`, `-i`.
pub fn parse_complex(s: &str, ctx: &Ctx) -> Result<Complex> {
    let t = s.trim().replace(' ', "");
    if t.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    // pure imaginary / pure real fast paths
    if let Some(im_part) = t.strip_suffix(['i', 'I']) {
        // find the split between real and imaginary chunks: last +/- that is
        // not an exponent sign and not the leading sign
        let bytes = im_part.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let ch = bytes[idx] as char;
            if (ch == '+' || ch == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
                split = Some(idx);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(idx) => (&im_part[..idx], &im_part[idx..]),
            None => ("0", im_part),
        };
        let im_str = match im_str {
            "" | "+" => "1".to_string(),
            "-" => "-1".to_string(),
            other => other.to_string(),
        };
        let re = if re_str.is_empty() { ctx.zero() } else { parse_float(re_str, ctx)? };
        let im = parse_float(&im_str, ctx)?;
        return Ok(ctx.c_from(&re, &im));
    }
    let re = parse_float(&t, ctx)?;
    Ok(ctx.c_re(&re))
}

/// Minimal JSON string escaping (our payloads are plain ASCII).
pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// `"key": "value"` fragment.
pub fn json_kv(key: &str, value: &str) -> String {
    format!("\"{}\": \"{}\"", json_escape(key), json_escape(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_roundtrip() {
        let ctx = Ctx::new(40).unwrap();
        let x = ctx.f(1) / 7u32;
        let s = float_str(&x, &ctx);
        let back = parse_float(&s, &ctx).unwrap();
        let err = (back - &x).abs();
        assert!(err < ctx.pow10(-38), "{s} err {err}");
    }

    #[test]
    fn complex_literals() {
        let ctx = Ctx::new(30).unwrap();
        for (s, re, im) in [
            ("1.5", 1.5, 0.0),
            ("-2i", 0.0, -2.0),
            ("1+2i", 1.0, 2.0),
            ("0.5-0.25i", 0.5, -0.25),
            ("i", 0.0, 1.0),
            ("-i", 0.0, -1.0),
            ("1e-2+3e1i", 0.01, 30.0),
        ] {
            let z = parse_complex(s, &ctx).unwrap();
            assert!((z.real().to_f64() - re).abs() < 1e-12, "{s}");
            assert!((z.imag().to_f64() - im).abs() < 1e-12, "{s}");
        }
        assert!(parse_complex("", &ctx).is_err());
        assert!(parse_complex("2+whoops", &ctx).is_err());
    }
}
