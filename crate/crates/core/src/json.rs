//! Canonical JSON interchange forms.
//!
//! A polynomial is `{"nvars": n, "terms": [{"exp": [..], "num": "..", "den": ".."}, ..]}`
//! with terms in graded-lex descending order of `exp` and `exp[i]` the
//! exponent of `x_{i+1}`. Serialization is compact, so equal polynomials
//! always produce identical bytes.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{BigRational, MultiPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        PolyJson {
            nvars: p.nvars(),
            terms: p
                .terms_desc()
                .map(|(m, c)| TermJson {
                    exp: m.exponents().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<MultiPoly> {
        if j.nvars == 0 {
            return Err(Error::Parse("nvars must be positive".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let num: BigInt = t
                .num
                .parse()
                .map_err(|e| Error::Parse(format!("bad numerator {:?}: {e}", t.num)))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|e| Error::Parse(format!("bad denominator {:?}: {e}", t.den)))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            if !seen.insert(t.exp.clone()) {
                return Err(Error::Parse(format!("repeated exponent {:?}", t.exp)));
            }
            terms.push((t.exp, BigRational::new(num, den)));
        }
        MultiPoly::from_terms(j.nvars, terms)
    }
}

pub fn poly_to_json(p: &MultiPoly) -> String {
    serde_json::to_string(&PolyJson::from(p)).expect("polynomial JSON is always serializable")
}

pub fn poly_from_json(text: &str) -> Result<MultiPoly> {
    let j: PolyJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    MultiPoly::try_from(j)
}

pub fn poly_to_value(p: &MultiPoly) -> serde_json::Value {
    serde_json::to_value(PolyJson::from(p)).expect("polynomial JSON is always serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    #[test]
    fn cube_has_canonical_bytes() {
        let p = MultiPoly::binomial(2, 2, 1).unwrap().pow(3).scale(&ratio(-1, 6));
        assert_eq!(
            poly_to_json(&p),
            concat!(
                r#"{"nvars":2,"terms":["#,
                r#"{"exp":[3,0],"num":"1","den":"6"},"#,
                r#"{"exp":[2,1],"num":"-1","den":"2"},"#,
                r#"{"exp":[1,2],"num":"1","den":"2"},"#,
                r#"{"exp":[0,3],"num":"-1","den":"6"}]}"#
            )
        );
    }

    #[test]
    fn parse_normalizes_and_rejects_bad_input() {
        let p = poly_from_json(r#"{"nvars":2,"terms":[{"exp":[1,0],"num":"2","den":"-4"}]}"#).unwrap();
        assert_eq!(p, MultiPoly::var(2, 1).unwrap().scale(&ratio(-1, 2)));
        assert!(poly_from_json(r#"{"nvars":2,"terms":[{"exp":[1],"num":"1","den":"1"}]}"#).is_err());
        assert!(poly_from_json(r#"{"nvars":1,"terms":[{"exp":[1],"num":"1","den":"0"}]}"#).is_err());
        assert!(poly_from_json(r#"{"nvars":0,"terms":[]}"#).is_err());
        let dup = r#"{"nvars":1,"terms":[{"exp":[1],"num":"1","den":"1"},{"exp":[1],"num":"1","den":"1"}]}"#;
        assert!(poly_from_json(dup).is_err());
    }

    #[test]
    fn zero_polynomial_round_trips() {
        let z = MultiPoly::zero(3);
        assert_eq!(poly_to_json(&z), r#"{"nvars":3,"terms":[]}"#);
        assert_eq!(poly_from_json(&poly_to_json(&z)).unwrap(), z);
    }
}
