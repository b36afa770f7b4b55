//! Truncated univariate power series in `q` with integer coefficients.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Coefficients of `q^0..=q^D`; the vector length is always `D + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerSeries {
    #[serde(with = "bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn zero(truncation: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BigInt::from(1);
        s
    }

    /// Builds from the given coefficients, truncating or zero-padding to
    /// `truncation + 1` entries.
    pub fn from_coeffs<I: IntoIterator<Item = BigInt>>(truncation: usize, coeffs: I) -> Self {
        let mut v: Vec<BigInt> = coeffs.into_iter().take(truncation + 1).collect();
        v.resize(truncation + 1, BigInt::zero());
        PowerSeries { coeffs: v }
    }

    pub fn from_i64(truncation: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(truncation, coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Adds `c·q^d`; ignored beyond the truncation.
    pub fn add_monomial(&mut self, d: usize, c: &BigInt) {
        if let Some(slot) = self.coeffs.get_mut(d) {
            *slot += c;
        }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let t = self.truncation().min(other.truncation());
        PowerSeries::from_coeffs(t, (0..=t).map(|d| self.coeff(d) + other.coeff(d)))
    }

    /// Multiplies by `1 − q^j`.
    pub fn times_one_minus_q_pow(&self, j: usize) -> PowerSeries {
        let mut out = self.clone();
        for d in (j..out.coeffs.len()).rev() {
            let sub = self.coeffs[d - j].clone();
            out.coeffs[d] -= sub;
        }
        out
    }

    /// Divides by `1 − q^j` (multiplies by the geometric series in `q^j`).
    pub fn divide_one_minus_q_pow(&self, j: usize) -> PowerSeries {
        assert!(j >= 1, "1 - q^0 is not invertible");
        let mut out = self.clone();
        for d in j..out.coeffs.len() {
            let add = out.coeffs[d - j].clone();
            out.coeffs[d] += add;
        }
        out
    }

    /// Divides by `∏_{j ∈ factors} (1 − q^j)`.
    pub fn divide_by_factors(&self, factors: &[usize]) -> PowerSeries {
        factors
            .iter()
            .fold(self.clone(), |acc, &j| acc.divide_one_minus_q_pow(j))
    }

    pub fn has_negative(&self) -> bool {
        self.coeffs.iter().any(Signed::is_negative)
    }

    pub fn truncate(&self, truncation: usize) -> PowerSeries {
        PowerSeries::from_coeffs(truncation, self.coeffs.iter().cloned())
    }
}

/// Coefficients of `numerator / ((1−q)(1−q^2)…(1−q^n))` through `q^D`.
pub fn series_expand(numerator: &PowerSeries, n: usize, truncation: usize) -> PowerSeries {
    let factors: Vec<usize> = (1..=n).collect();
    numerator.truncate(truncation).divide_by_factors(&factors)
}

mod bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        // Small values stay JSON numbers; anything past i64 goes out as a string.
        let vals: Vec<serde_json::Value> = v
            .iter()
            .map(|c| match i64::try_from(c) {
                Ok(x) => serde_json::Value::from(x),
                Err(_) => serde_json::Value::from(c.to_string()),
            })
            .collect();
        vals.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let vals = Vec::<serde_json::Value>::deserialize(d)?;
        vals.into_iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| serde::de::Error::custom("non-integer coefficient")),
                serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
                _ => Err(serde::de::Error::custom("expected integer coefficient")),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let s = series_expand(&PowerSeries::one(3), 1, 3);
        assert_eq!(s, PowerSeries::from_i64(3, &[1, 1, 1, 1]));
    }

    #[test]
    fn partitions_into_three_parts() {
        let s = series_expand(&PowerSeries::one(4), 3, 4);
        assert_eq!(s, PowerSeries::from_i64(4, &[1, 1, 2, 3, 4]));
    }

    #[test]
    fn exact_cancellation() {
        let num = PowerSeries::from_i64(5, &[1, -1]);
        assert_eq!(series_expand(&num, 1, 5), PowerSeries::one(5));
    }

    #[test]
    fn length_is_truncation_plus_one() {
        let s = PowerSeries::from_i64(2, &[1, 2, 3, 4, 5]);
        assert_eq!(s.coeffs().len(), 3);
        assert_eq!(PowerSeries::from_i64(6, &[1]).coeffs().len(), 7);
    }

    #[test]
    fn json_round_trip_keeps_big_values() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = PowerSeries::from_coeffs(2, vec![BigInt::from(3), big.clone()]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"[3,"123456789012345678901234567890",0]"#);
        let back: PowerSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back.coeff(1), big);
    }
}
