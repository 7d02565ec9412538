//! Exact rationals and their text form (`"n/d"`, or `"n"` when `d = 1`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serializer;

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn pow2(e: usize) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `⌈r⌉` as a usize, saturating at zero.
pub fn ceil_usize(r: &Rational) -> usize {
    let c = r.ceil().to_integer();
    if c <= BigInt::zero() {
        0
    } else {
        c.to_usize().unwrap_or(usize::MAX)
    }
}

pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n/d"`, `"n"`, or a finite decimal such as `"0.25"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches('-'), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format(r))
}

pub fn serialize_vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&format(r))?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(format(&rat(6, 4)), "3/2");
        assert_eq!(format(&int(7)), "7");
        assert_eq!(parse("3/2"), Some(rat(3, 2)));
        assert_eq!(parse(" 12 "), Some(int(12)));
        assert_eq!(parse("0.25"), Some(rat(1, 4)));
        assert_eq!(parse("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceil_usize(&rat(7, 2)), 4);
        assert_eq!(ceil_usize(&int(3)), 3);
        assert_eq!(ceil_usize(&rat(-1, 2)), 0);
    }
}
