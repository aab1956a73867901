//! Parsing of complex arguments and fixed-precision JSON numbers.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::value::RawValue;

/// Parse `x+yi`, `x-yi`, `x`, `yi` or `i`, with optional spaces.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("malformed complex number `{s}` (expected x+yi)");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(|x| Complex64::new(x, 0.0))
            .ok_or_else(bad);
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

pub type Num = Box<RawValue>;

/// A JSON number with 17 significant digits; `null` if not finite.
pub fn num(x: f64) -> Option<Num> {
    if !x.is_finite() {
        return None;
    }
    RawValue::from_string(format!("{x:.16e}")).ok()
}

/// A JSON integer written from its decimal string.
pub fn int(n: impl ToString) -> Num {
    RawValue::from_string(n.to_string()).expect("integer literal is valid JSON")
}

#[derive(Serialize)]
pub struct Cx {
    pub re: Option<Num>,
    pub im: Option<Num>,
}

pub fn cx(z: Complex64) -> Cx {
    Cx {
        re: num(z.re),
        im: num(z.im),
    }
}

/// Exact string alongside its decimal value.
#[derive(Serialize)]
pub struct Exact {
    pub exact: String,
    pub decimal: Option<Num>,
}

pub fn exact(s: String, x: f64) -> Exact {
    Exact {
        exact: s,
        decimal: num(x),
    }
}
