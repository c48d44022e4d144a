//! Complex number literals in `a+bi` form.

use sincbinom::Complex;

/// Parses `1`, `-2.5`, `i`, `-i`, `3i`, `1+2i`, `1.5-0.5i`, `1e-3+2E2i`.
pub fn parse_complex(s: &str) -> Result<Complex, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    let Some(body) = t.strip_suffix('i') else {
        return real_part(t, s).map(|re| Complex::new(re, 0.0));
    };
    // the sign separating the parts is the last +/- that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (real_part(&body[..j], s)?, imag_coefficient(&body[j..], s)?),
        None => (0.0, imag_coefficient(body, s)?),
    };
    Ok(Complex::new(re, im))
}

fn real_part(token: &str, whole: &str) -> Result<f64, String> {
    number(token).ok_or_else(|| offending(token, whole))
}

fn imag_coefficient(token: &str, whole: &str) -> Result<f64, String> {
    match token {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => number(token).ok_or_else(|| offending(&format!("{token}i"), whole)),
    }
}

// plain decimal literals only; rejects "inf", "nan" and the like
fn number(token: &str) -> Option<f64> {
    let ok = !token.is_empty()
        && token.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | '+' | '-' | 'e' | 'E'))
        && token.chars().any(|c| c.is_ascii_digit());
    if !ok {
        return None;
    }
    token.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn offending(token: &str, whole: &str) -> String {
    if token == whole.trim() {
        format!("invalid complex number {token:?}")
    } else {
        format!("invalid token {token:?} in complex number {whole:?}")
    }
}
