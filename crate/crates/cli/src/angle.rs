//! Angle argument parsing: raw radians or symbolic multiples of pi.

use std::f64::consts::PI;

/// Parses an angle given either as a plain float in radians or as a symbolic
/// token of the form `[coef]pi[/den]`, e.g. `pi`, `2pi`, `pi/2`, `3pi/2`.
/// Symbolic tokens make the usual spot-check angles exactly representable.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    if let Some(idx) = t.find("pi") {
        let coef_str = &t[..idx];
        let tail = &t[idx + 2..];
        let coef: f64 = if coef_str.is_empty() {
            1.0
        } else {
            coef_str
                .parse()
                .map_err(|_| format!("invalid coefficient {coef_str:?} in angle {s:?}"))?
        };
        let den: f64 = if tail.is_empty() {
            1.0
        } else if let Some(d) = tail.strip_prefix('/') {
            let den: f64 = d
                .parse()
                .map_err(|_| format!("invalid denominator {d:?} in angle {s:?}"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in angle {s:?}"));
            }
            den
        } else {
            return Err(format!("trailing {tail:?} in angle {s:?}"));
        };
        Ok(coef * PI / den)
    } else {
        let v: f64 = t
            .parse()
            .map_err(|_| format!("invalid angle {s:?}: expected radians or a pi token"))?;
        if !v.is_finite() {
            return Err(format!("angle {s:?} is not finite"));
        }
        Ok(v)
    }
}
