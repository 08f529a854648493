//! Text encoding of exact rationals as `num/den` strings.
//!
//! JSON numbers would round through floating point, so every rational that
//! leaves the crate goes out in this form, with the denominator always
//! written (`3/1`, not `3`).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

/// Nonnegative gcd. Operands that fit in 128 bits take a machine-word
/// binary gcd, as does a mixed pair after one remainder step; two large
/// ones go to the library routine.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    match (a.magnitude().to_u128(), b.magnitude().to_u128()) {
        (Some(u), Some(v)) => BigInt::from(gcd_u128(u, v)),
        (Some(0), None) => b.abs(),
        (None, Some(0)) => a.abs(),
        (Some(small), None) => BigInt::from(gcd_mixed(small, b.magnitude())),
        (None, Some(small)) => BigInt::from(gcd_mixed(small, a.magnitude())),
        (None, None) => a.gcd(b),
    }
}

/// One remainder step brings the large operand into machine range.
fn gcd_mixed(small: u128, large: &BigUint) -> u128 {
    let rem = (large % small).to_u128().expect("below divisor");
    gcd_u128(small, rem)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Positive gcd of a sequence, zero if all are zero. Stops early at one.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut nonzero: Vec<&BigInt> = values.into_iter().filter(|v| !v.is_zero()).collect();
    // starting from the shortest keeps every later step a mixed-size one
    let Some(first) = (0..nonzero.len()).min_by_key(|&i| nonzero[i].bits()) else {
        return BigInt::zero();
    };
    let mut g = nonzero.swap_remove(first).abs();
    for v in nonzero {
        if g.is_one() {
            break;
        }
        g = gcd(&g, v);
    }
    g
}

pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Rounds a nonnegative rational half-up to `places` decimals.
pub fn round_half_up(x: &BigRational, places: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), places as usize);
    let negative = x.is_negative();
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if negative && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = places as usize
    )
}

pub fn bigint_string<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| serde::de::Error::custom("invalid rational"))
    }
}

pub mod serde_rational_opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&rational_string(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| parse_rational(&t).ok_or_else(|| serde::de::Error::custom("invalid rational")))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn strings() {
        assert_eq!(rational_string(&q(6, 4)), "3/2");
        assert_eq!(rational_string(&q(3, 1)), "3/1");
        assert_eq!(parse_rational("-3/2"), Some(q(-3, 2)));
        assert_eq!(parse_rational("7"), Some(q(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("a/2"), None);
    }

    #[test]
    fn gcd_agrees_with_binary_gcd() {
        let big = BigInt::from(3u64).pow(90) * BigInt::from(1u64 << 40);
        let other = BigInt::from(3u64).pow(50) * BigInt::from(7) * BigInt::from(1u64 << 13);
        assert_eq!(gcd(&big, &other), big.gcd(&other));
        assert_eq!(gcd(&-big.clone(), &BigInt::zero()), big);
        assert_eq!(gcd(&BigInt::from(-12), &BigInt::from(18)), BigInt::from(6));
        let vals = [BigInt::from(0), BigInt::from(-10), BigInt::from(15)];
        assert_eq!(gcd_all(&vals), BigInt::from(5));
        assert_eq!(gcd_all(&[BigInt::zero()]), BigInt::zero());
        for small in [1u128, 6, 1 << 70, (1u128 << 100) * 3 + 9, u128::MAX] {
            let small = BigInt::from(small);
            for large in [big.clone(), -other.clone(), &big * &small + 21] {
                assert_eq!(gcd(&small, &large), small.gcd(&large), "{small} {large}");
                assert_eq!(gcd(&large, &-small.clone()), small.gcd(&large));
            }
        }
        assert_eq!(gcd_all(&[big.clone(), other.clone(), BigInt::from(9)]), BigInt::from(9));
    }

    #[test]
    fn rounding() {
        assert_eq!(round_half_up(&q(1, 2), 0), "1");
        assert_eq!(round_half_up(&q(12345, 100000), 4), "0.1235");
        assert_eq!(round_half_up(&q(12344, 100000), 4), "0.1234");
        assert_eq!(round_half_up(&q(1, 1), 4), "1.0000");
        assert_eq!(round_half_up(&q(7, 10000), 4), "0.0007");
        // 5224/8820 = 0.59229...
        assert_eq!(round_half_up(&q(5224, 8820), 4), "0.5923");
    }
}
