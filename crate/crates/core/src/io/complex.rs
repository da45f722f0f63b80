use crate::linalg::Complex;

/// Parses `a`, `a+bi`, `a-bi`, `bi` or `i`, tolerating surrounding and
/// internal whitespace. Exponents (`1e-3+2E+1i`) are accepted.
pub fn parse_complex(text: &str) -> Result<Complex, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return parse_real(&s).map(|re| Complex::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex::new(parse_real(&body[..k])?, parse_imag(&body[k..])?)),
        None => Ok(Complex::new(0.0, parse_imag(body)?)),
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid number {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite number {s:?}"))
    }
}

fn parse_imag(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s),
    }
}

/// Writes `a+bi` / `a-bi` with shortest round-trip digits.
pub fn format_complex(z: Complex) -> String {
    if z.im.is_sign_negative() {
        format!("{:?}-{:?}i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literal_forms() {
        assert_eq!(parse_complex("1+0.5i"), Ok(Complex::new(1.0, 0.5)));
        assert_eq!(parse_complex(" -1 - 0.5i "), Ok(Complex::new(-1.0, -0.5)));
        assert_eq!(parse_complex("0"), Ok(Complex::new(0.0, 0.0)));
        assert_eq!(parse_complex("-2.5i"), Ok(Complex::new(0.0, -2.5)));
        assert_eq!(parse_complex("i"), Ok(Complex::new(0.0, 1.0)));
        assert_eq!(parse_complex("3-i"), Ok(Complex::new(3.0, -1.0)));
        assert_eq!(parse_complex("1e-3+2E+1i"), Ok(Complex::new(1e-3, 20.0)));
        assert_eq!(parse_complex("-1e-3"), Ok(Complex::new(-1e-3, 0.0)));
        assert!(parse_complex("1+2").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("nan").is_err());
    }

    proptest! {
        #[test]
        fn format_parse_is_bit_exact(re in proptest::num::f64::NORMAL | proptest::num::f64::ZERO,
                                     im in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
            let z = Complex::new(re, im);
            let back = parse_complex(&format_complex(z)).unwrap();
            prop_assert_eq!(back.re.to_bits(), re.to_bits());
            prop_assert_eq!(back.im.to_bits(), im.to_bits());
        }
    }
}
