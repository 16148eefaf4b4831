//! Exact rationals and their string encoding (`"p/q"` or `"p"`).

use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Rational = num_rational::Ratio<i64>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => t.parse::<i64>().map(int).map_err(|_| bad()),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> i64 {
    it.into_iter().fold(1i64, |acc, r| acc.lcm(r.denom()))
}

pub fn min_of(it: impl IntoIterator<Item = Rational>) -> Option<Rational> {
    it.into_iter().reduce(|a, b| if b < a { b } else { a })
}

pub fn max_of(it: impl IntoIterator<Item = Rational>) -> Option<Rational> {
    it.into_iter().reduce(|a, b| if b > a { b } else { a })
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

/// Serde adapters encoding rationals as strings.
pub mod serde_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = RatRepr::deserialize(d)?;
        s.into_rational().map_err(de::Error::custom)
    }

    /// Accepts `"p/q"` strings and plain JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum RatRepr {
        Str(String),
        Int(i64),
    }

    impl RatRepr {
        fn into_rational(self) -> Result<Rational> {
            match self {
                RatRepr::Str(s) => parse_rational(&s),
                RatRepr::Int(i) => Ok(int(i)),
            }
        }
    }

    /// Parses while deserializing, so errors carry the element's position.
    pub(crate) struct Parsed(pub(crate) Rational);

    impl<'de> Deserialize<'de> for Parsed {
        fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
            super::serde_str::deserialize(d).map(Parsed)
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            Ok(Vec::<Parsed>::deserialize(d)?.into_iter().map(|p| p.0).collect())
        }
    }

    pub mod vecvec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for row in v {
                let strs: Vec<String> = row.iter().map(format_rational).collect();
                seq.serialize_element(&strs)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
            let raw = Vec::<Vec<Parsed>>::deserialize(d)?;
            Ok(raw.into_iter().map(|row| row.into_iter().map(|p| p.0).collect()).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/6").unwrap(), frac(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
