//! Fixed-precision number output.

/// Significant digits in every printed number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to twelve significant digits: fixed notation for magnitudes in
/// `[1e-4, 1e12)`, scientific otherwise. Zero, including `-0`, prints as
/// `0.00000000000`.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.*}", SIGNIFICANT_DIGITS - 1, 0.0);
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..12).contains(&exp) {
        return format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit (9.99.. -> 10.0..)
    let digits = s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count();
    if digits > SIGNIFICANT_DIGITS && decimals > 0 {
        return format!("{:.*}", decimals - 1, x);
    }
    s
}

/// `x` rounded as in [`num`], as a JSON number.
pub fn json_num(x: f64) -> serde_json::Value {
    let rounded: f64 = num(x).parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded).map_or(serde_json::Value::Null, serde_json::Value::Number)
}
