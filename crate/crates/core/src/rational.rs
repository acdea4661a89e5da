//! Exact rationals and their `"p/q"` text form.

use thiserror::Error;

pub type Q = num_rational::Rational64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational {0:?}")]
pub struct RationalParseError(pub String);

/// Parses `"n"`, `"-n"` or `"p/q"` with `q != 0`.
pub fn parse_rational(text: &str) -> Result<Q, RationalParseError> {
    let err = || RationalParseError(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: i64 = num.parse().map_err(|_| err())?;
    let den: i64 = den.parse().map_err(|_| err())?;
    // i64::MIN cannot be negated when the fraction is normalized.
    if den == 0 || num == i64::MIN || den == i64::MIN {
        return Err(err());
    }
    Ok(Q::new(num, den))
}

/// Integers print as `"n"`, everything else as reduced `"p/q"`.
pub fn format_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_integer(q: &Q) -> Option<i64> {
    q.is_integer().then(|| q.to_integer())
}

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub(crate) fn half() -> Q {
    Q::new(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_rational("1/2").unwrap(), Q::new(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), q(-3));
        assert_eq!(parse_rational("4/2").unwrap(), q(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/-9223372036854775808").is_err());
        assert_eq!(format_rational(&Q::new(-6, 4)), "-3/2");
        assert_eq!(format_rational(&q(7)), "7");
    }
}
