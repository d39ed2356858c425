//! Wire format for polynomials:
//! `{"m": 2, "terms": [{"c": "-4/1", "e": [2,0]}, {"c": "3/2", "e": [0,0]}]}`,
//! coefficients as reduced `num/den` strings and terms in deg-lex descending order.

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// `#[serde(with = "rational_str")]` for a single rational.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// `#[serde(with = "rational_vec")]` for a list of rationals.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(de::Error::custom))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    e: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    m: usize,
    terms: Vec<TermJson>,
}

impl From<&Polynomial> for PolyJson {
    fn from(p: &Polynomial) -> Self {
        PolyJson {
            m: p.dim(),
            terms: p
                .terms()
                .map(|(k, c)| TermJson { c: format_rational(c), e: k.exponents().to_vec() })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for Polynomial {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            if t.e.len() != j.m {
                return Err(Error::Parse(format!(
                    "exponent vector {:?} has length {}, expected m = {}",
                    t.e,
                    t.e.len(),
                    j.m
                )));
            }
            let mono = Monomial::new(t.e);
            if !seen.insert(mono.clone()) {
                return Err(Error::Parse(format!("duplicate monomial {mono}")));
            }
            terms.push((mono.exponents().to_vec(), parse_rational(&t.c)?));
        }
        Ok(Polynomial::from_terms(j.m, terms))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Polynomial::try_from(PolyJson::deserialize(d)?).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::{int, rat};

    #[test]
    fn canonical_wire_form() {
        let p = Polynomial::from_terms(2, [(vec![0, 0], rat(3, 2)), (vec![2, 0], int(-4))]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"m":2,"terms":[{"c":"-4/1","e":[2,0]},{"c":"3/2","e":[0,0]}]}"#);
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<Polynomial>(r#"{"m":2,"terms":[{"c":"1","e":[1]}]}"#).is_err());
        assert!(serde_json::from_str::<Polynomial>(r#"{"m":1,"terms":[{"c":"1/0","e":[1]}]}"#).is_err());
        assert!(serde_json::from_str::<Polynomial>(
            r#"{"m":1,"terms":[{"c":"1","e":[1]},{"c":"2","e":[1]}]}"#
        )
        .is_err());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p: Polynomial = serde_json::from_str(r#"{"m":1,"terms":[{"c":"0/5","e":[3]}]}"#).unwrap();
        assert!(p.is_zero());
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"m":1,"terms":[]}"#);
    }
}
