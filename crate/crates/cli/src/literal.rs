use poncelet_core::geom::CPoint;

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i` and `-i`. Exponents such as
/// `1e-3-2.5e-1i` are accepted.
pub fn parse_complex(s: &str) -> Result<CPoint, String> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || format!("invalid complex literal {s:?} (expected a, a+bi, a-bi, bi or i)");
    if text.is_empty() {
        return Err(err());
    }
    let Some(body) = text.strip_suffix(['i', 'j']) else {
        return match text.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(CPoint::new(re, 0.0)),
            _ => Err(err()),
        };
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| err()),
        }
    };
    let z = match split {
        Some(k) => CPoint::new(
            body[..k].parse::<f64>().map_err(|_| err())?,
            imag(&body[k..])?,
        ),
        None => CPoint::new(0.0, imag(body)?),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(err())
    }
}
