use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serializer};

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Big integers travel through JSON as decimal strings.
pub(crate) fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

pub(crate) fn deserialize_biguint<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let text = String::deserialize(d)?;
    BigUint::parse_bytes(text.as_bytes(), 10)
        .ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_rule() {
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
        assert_eq!(binomial(11, 7), BigUint::from(330u32));
        assert_eq!(binomial(3, 7), BigUint::from(0u32));
    }
}
