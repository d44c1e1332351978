use rug::Float;

/// Decimal rendering with `digits` significant digits.
///
/// Plain positional notation is used for decimal exponents in `[-6, 21]`,
/// `d.ddde±x` outside. Trailing fractional zeros are dropped, so the
/// output is a canonical function of the rounded value.
pub fn format_decimal(x: &Float, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.to_string();
    }
    if x.is_zero() {
        return "0".to_string();
    }
    let (negative, mantissa, exp) = x.to_sign_string_exp(10, Some(digits.max(1)));
    // value = 0.mantissa × 10^exp
    let exp = exp.unwrap_or(0);
    let mantissa = mantissa.trim_end_matches('0');
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (1..=21).contains(&exp) {
        let point = exp as usize;
        if mantissa.len() <= point {
            out.push_str(mantissa);
            out.extend(std::iter::repeat_n('0', point - mantissa.len()));
        } else {
            out.push_str(&mantissa[..point]);
            out.push('.');
            out.push_str(&mantissa[point..]);
        }
    } else if (-5..=0).contains(&exp) {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp) as usize));
        out.push_str(mantissa);
    } else {
        out.push_str(&mantissa[..1]);
        if mantissa.len() > 1 {
            out.push('.');
            out.push_str(&mantissa[1..]);
        }
        out.push_str(&format!("e{}", exp - 1));
    }
    out
}

/// Parses a decimal string produced by [`format_decimal`] (or any MPFR
/// decimal literal) at `prec` bits.
pub fn parse_decimal(s: &str, prec: u32) -> Option<Float> {
    Float::parse(s).ok().map(|p| Float::with_val(prec, p))
}
