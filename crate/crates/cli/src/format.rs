//! Number formatting for report lines.

/// Nine significant digits (or the shortest round-tripping form with
/// `raw`). Zero prints as `0`.
pub fn significant(v: f64, raw: bool) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if raw {
        return format!("{v:?}");
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..9).contains(&mag) {
        format!("{:.*}", (8 - mag) as usize, v)
    } else {
        format!("{v:.8e}")
    }
}

/// An error bound: `0` when exact, otherwise two significant digits.
pub fn bound(e: f64, raw: bool) -> String {
    if e == 0.0 {
        "0".into()
    } else if raw {
        format!("{e:e}")
    } else {
        format!("{e:.1e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(significant(1.282_549_830_1, false), "1.28254983");
        assert_eq!(significant(1.282_549_8, false), "1.28254980");
        assert_eq!(significant(0.0, false), "0");
        assert_eq!(significant(-250.0, false), "-250.000000");
        assert_eq!(significant(1e-7, false), "1.00000000e-7");
        assert_eq!(significant(0.1 + 0.2, true), "0.30000000000000004");
        assert_eq!(bound(0.0, false), "0");
        assert_eq!(bound(2.345e-11, false), "2.3e-11");
    }
}
