use std::f64::consts::PI;

/// Radians from `1.25`, `pi`, `-pi/3`, `2pi/3` or `2*pi/3`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t.strip_prefix('+').unwrap_or(&t)),
    };
    let Some(at) = body.find("pi") else {
        return body
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(|x| sign * x)
            .ok_or_else(|| format!("invalid angle `{s}`"));
    };
    let bad = || format!("invalid angle `{s}`");
    let coeff = body[..at].trim_end_matches('*');
    let coeff = if coeff.is_empty() { 1.0 } else { coeff.parse::<f64>().map_err(|_| bad())? };
    let rest = &body[at + 2..];
    let denom = match rest.strip_prefix('/') {
        Some(d) => d.parse::<f64>().map_err(|_| bad())?,
        None if rest.is_empty() => 1.0,
        None => return Err(bad()),
    };
    if denom == 0.0 || !coeff.is_finite() {
        return Err(bad());
    }
    Ok(sign * coeff * PI / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/3").unwrap(), PI / 3.0);
        assert_eq!(parse_angle("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("2*pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("1.5").unwrap(), 1.5);
        assert_eq!(parse_angle("0").unwrap(), 0.0);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "pie", "pi/0", "x", "pi/", "2pi3", "nan", "inf"] {
            assert!(parse_angle(s).is_err(), "{s}");
        }
    }
}
