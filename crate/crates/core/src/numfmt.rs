//! Canonical float formatting shared by the SVG backend and scene dumps.

/// Formats `x` with at most 9 significant digits and at most 9 decimal
/// places, trailing zeros trimmed and negative zero printed as `0`.
///
/// Non-finite values print as `0`; the evaluator never produces them from
/// well-typed programs except through overflow.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() || x == 0.0 {
        return "0".to_string();
    }
    // Round to 9 significant digits via scientific notation.
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    // value = 0.d1d2...d9 * 10^(exp+1)
    let point = exp + 1;
    let mut int_part = String::new();
    let mut frac_part = String::new();
    if point <= 0 {
        frac_part.push_str(&"0".repeat((-point) as usize));
        frac_part.push_str(&digits);
        int_part.push('0');
    } else if point as usize >= digits.len() {
        int_part.push_str(&digits);
        int_part.push_str(&"0".repeat(point as usize - digits.len()));
    } else {
        int_part.push_str(&digits[..point as usize]);
        frac_part.push_str(&digits[point as usize..]);
    }
    if frac_part.len() > 9 {
        // Cap decimal places: re-round from the exact value.
        let rounded = format!("{:.9}", x.abs());
        let (i, f) = rounded.split_once('.').expect("fixed format");
        int_part = i.to_string();
        frac_part = f.to_string();
    }
    let frac_trimmed = frac_part.trim_end_matches('0');
    let mut out = String::new();
    let is_zero = int_part.chars().all(|c| c == '0') && frac_trimmed.is_empty();
    if negative && !is_zero {
        out.push('-');
    }
    out.push_str(&int_part);
    if !frac_trimmed.is_empty() {
        out.push('.');
        out.push_str(frac_trimmed);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::fmt_num;

    #[test]
    fn canonical_forms() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(50.0), "50");
        assert_eq!(fmt_num(-50.0), "-50");
        assert_eq!(fmt_num(0.25), "0.25");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333");
        assert_eq!(fmt_num(123456.789012), "123456.789");
        assert_eq!(fmt_num(1e12), "1000000000000");
        assert_eq!(fmt_num(6.123233995736766e-17), "0");
        assert_eq!(fmt_num(-2.4492935982947064e-14), "0");
        assert_eq!(fmt_num(0.00012345678912), "0.000123457");
        assert_eq!(fmt_num(f64::NAN), "0");
        assert_eq!(fmt_num(84.14709848078965), "84.1470985");
    }
}
