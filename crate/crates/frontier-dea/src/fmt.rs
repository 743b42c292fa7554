//! Deterministic decimal formatting for machine-readable output.

/// Format `value` with `digits` significant digits, trimming trailing zeros.
/// Plain decimal notation is used for ordinary magnitudes, exponential
/// notation outside them. Parsing the result back recovers any value that is
/// representable at `digits` significant digits.
pub(crate) fn format_significant(value: f64, digits: u32) -> String {
    debug_assert!(digits >= 1);
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    if magnitude < -5 || magnitude > digits as i32 + 2 {
        let formatted = format!("{:.*e}", digits as usize - 1, value);
        return trim_exponential(&formatted);
    }
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    trim_decimal(&format!("{value:.decimals$}"))
}

/// Round `value` to `digits` significant digits through the decimal
/// formatter, for JSON output that must stay stable across runs.
pub(crate) fn round_significant(value: f64, digits: u32) -> f64 {
    format_significant(value, digits)
        .parse()
        .expect("formatter output is parseable")
}

fn trim_decimal(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn trim_exponential(s: &str) -> String {
    match s.split_once('e') {
        Some((mantissa, exponent)) => format!("{}e{}", trim_decimal(mantissa), exponent),
        None => s.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_values() {
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(58.032, 12), "58.032");
        assert_eq!(format_significant(-3.5, 12), "-3.5");
        assert_eq!(format_significant(1.0, 12), "1");
        assert_eq!(format_significant(0.1 + 0.2, 12), "0.3");
    }

    #[test]
    fn extreme_magnitudes_use_exponent() {
        assert_eq!(format_significant(1.5e20, 12), "1.5e20");
        assert_eq!(format_significant(2.5e-9, 12), "2.5e-9");
    }

    #[test]
    fn round_trips_at_twelve_digits() {
        for &v in &[123456.789012_f64, 0.000123456789, 99999.9, 1e15, 7.0] {
            let printed = format_significant(v, 12);
            let back: f64 = printed.parse().unwrap();
            let reprinted = format_significant(back, 12);
            assert_eq!(printed, reprinted, "idempotent for {v}");
        }
    }
}
