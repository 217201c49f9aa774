//! Argument parsers: angles as decimal radians or `k*pi` literals, complex
//! numbers as `a+bi`, points as comma-separated complex pairs.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Parse an angle given either as decimal radians or as a `k*pi` literal
/// (`pi`, `-pi`, `1.5*pi`, `0.75pi`). The `k*pi` form multiplies the parsed
/// coefficient by pi exactly once, so simple rational multiples stay exact
/// in floating point.
pub fn parse_angle(input: &str) -> Result<f64, String> {
    let s = input.trim();
    if let Some(head) = s.strip_suffix("pi") {
        let head = head.trim().trim_end_matches('*').trim();
        let k = if head.is_empty() {
            1.0
        } else if head == "-" {
            -1.0
        } else {
            head.parse::<f64>()
                .map_err(|_| format!("invalid pi-multiple: {input:?}"))?
        };
        return Ok(k * PI);
    }
    s.parse::<f64>()
        .map_err(|_| format!("invalid angle: {input:?} (use radians or k*pi)"))
}

/// Parse `a+bi` / `a-bi` / `bi` / `a` (scientific notation allowed).
pub fn parse_complex(input: &str) -> Result<Complex64, String> {
    let s: String = input.trim().chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let bad = || format!("invalid complex literal: {input:?}");

    if let Some(body) = s.strip_suffix('i') {
        // Find the split between real and imaginary parts: the last +/-
        // that is not a leading sign and not part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let ch = bytes[k] as char;
            if (ch == '+' || ch == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        return match split {
            Some(k) => {
                let re: f64 = body[..k].parse().map_err(|_| bad())?;
                let im_str = &body[k..];
                let im: f64 = match im_str {
                    "+" => 1.0,
                    "-" => -1.0,
                    _ => im_str.parse().map_err(|_| bad())?,
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = match body {
                    "" => 1.0,
                    "-" => -1.0,
                    _ => body.parse().map_err(|_| bad())?,
                };
                Ok(Complex64::new(0.0, im))
            }
        };
    }
    let re: f64 = s.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, 0.0))
}

/// Parse a point `z1,z2` with both components complex.
pub fn parse_point(input: &str) -> Result<(Complex64, Complex64), String> {
    let parts: Vec<&str> = input.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"z1,z2\", got {input:?}"));
    }
    Ok((parse_complex(parts[0])?, parse_complex(parts[1])?))
}

/// Parse a window `lo,hi`.
pub fn parse_window(input: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = input.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"lo,hi\", got {input:?}"));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("invalid number {:?}", parts[0]))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("invalid number {:?}", parts[1]))?;
    Ok((lo, hi))
}

/// Render a complex number in the `a+bi` text form used by the CSV output.
pub fn format_complex(z: Complex64) -> String {
    if z.im >= 0.0 || z.im.is_nan() {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}-{}i", z.re, -z.im)
    }
}
