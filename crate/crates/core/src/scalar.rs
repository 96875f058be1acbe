//! Exact rational scalars and their textual `num/den` form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_one() -> Q {
    Q::one()
}

pub fn q_zero() -> Q {
    Q::zero()
}

/// Formats as `num/den` with a positive denominator, always including the denominator.
pub fn format_q(value: &Q) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_q(text: &str) -> Result<Q> {
    let text = text.trim();
    let bad = || Error::Parse(format!("{text:?} is not a rational of the form num/den"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

pub fn abs_sum<'a>(values: impl IntoIterator<Item = &'a Q>) -> Q {
    values.into_iter().fold(Q::zero(), |acc, v| acc + v.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_roundtrips() {
        let v = Q::new(BigInt::from(-6), BigInt::from(4));
        assert_eq!(format_q(&v), "-3/2");
        assert_eq!(parse_q("-3/2").unwrap(), v);
        assert_eq!(parse_q("6/-4").unwrap(), v);
        assert_eq!(parse_q("7").unwrap(), q(7));
        assert_eq!(format_q(&q(7)), "7/1");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert!(parse_q("1/2/3").is_err());
    }
}
