//! Parsing of numeric command-line values.

use gft_core::Complex64;

/// Comma-separated list of finite reals.
pub fn real_list(text: &str) -> Result<Vec<f64>, String> {
    let values = text
        .split(',')
        .map(|item| real(item.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err("empty list".into());
    }
    Ok(values)
}

pub fn real(text: &str) -> Result<f64, String> {
    let v: f64 = text.parse().map_err(|_| format!("`{text}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok(v)
}

/// Comma-separated list of integers.
pub fn int_list(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|item| {
            let item = item.trim();
            item.parse().map_err(|_| format!("`{item}` is not an integer"))
        })
        .collect()
}

/// Complex literal: `2`, `-1.5`, `3j`, `1+2j`, `0.5-1e-3j` (`i` also accepted).
pub fn complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    let bad = || format!("`{text}` is not a complex number");
    let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('i')) else {
        return real(t).map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k]).map_err(|_| bad())?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => real(s).map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

/// Comma-separated list of complex literals.
pub fn complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(',').map(complex).collect()
}
