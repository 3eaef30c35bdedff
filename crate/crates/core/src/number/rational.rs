//! Helpers around `rug::Rational`.

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-1.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.contains(['/', 'e', 'E']) {
            return Err(Error::Parse(format!("bad decimal {t:?}")));
        }
        let neg = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let num: Integer = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {t:?}")))?;
        let den = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
        let r = Rational::from((num, den));
        return Ok(if neg { -r } else { r });
    }
    let r: Rational = t.parse().map_err(|_| Error::Parse(format!("bad rational {t:?}")))?;
    Ok(r)
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n, k))
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Generalised binomial coefficient `C(a, k)` for rational `a`.
pub fn binomial_rational(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::from(1);
    for i in 0..k {
        acc *= Rational::from(a - i);
        acc /= i + 1;
    }
    acc
}
