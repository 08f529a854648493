//! Root-modulus bounds and root-separation constants computed from the
//! degree and height alone.
//!
//! All values are exact rationals. The separation constants are the
//! rational forms used by the decision pipeline; they sit slightly below
//! the radical versions they stand in for.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::exact::{serde_rational, serde_rational_opt};
use crate::poly::IntPolynomial;

/// Annulus bounds and separation constants for one polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSet {
    pub degree: usize,
    #[serde(serialize_with = "crate::exact::bigint_string")]
    pub height: BigInt,
    /// Every root modulus is strictly greater than this.
    #[serde(with = "serde_rational")]
    pub c1: BigRational,
    /// Every root modulus is strictly less than this.
    #[serde(with = "serde_rational")]
    pub c2: BigRational,
    /// Gap between the modulus of a real root and any other root modulus.
    #[serde(with = "serde_rational")]
    pub d1: BigRational,
    /// Gap between any two distinct roots.
    #[serde(with = "serde_rational")]
    pub d2: BigRational,
    /// Sharper `d1` for irreducible polynomials of degree at least 3.
    #[serde(with = "serde_rational_opt")]
    pub d1_irreducible: Option<BigRational>,
    pub mahler_upper: MahlerUpper,
}

impl BoundSet {
    /// `irreducible` controls whether the irreducible-only constant is filled in.
    pub fn compute(f: &IntPolynomial, irreducible: bool) -> Result<Self, Error> {
        let (c1, c2) = cauchy_bounds(f)?;
        let n = f.degree();
        if n < 2 {
            return Err(Error::DegreeTooSmall { required: 2, found: n });
        }
        let d1_irreducible = if irreducible && n >= 3 {
            Some(d1_irreducible_practical(f)?)
        } else {
            None
        };
        Ok(BoundSet {
            degree: n,
            height: f.height(),
            c1,
            c2,
            d1: d1_practical(f),
            d2: d2_practical(f),
            d1_irreducible,
            mahler_upper: mahler_upper(f),
        })
    }
}

fn pow_int(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

fn pow_big(base: &BigInt, exp: u64) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// `(1/(1+H), 1 + max(|a1|..|an|)/|a0|)`.
///
/// The lower bound needs a nonzero integer constant term: the roots of the
/// reversed polynomial are then bounded by `1 + H/|an| <= 1 + H`.
pub fn cauchy_bounds(f: &IntPolynomial) -> Result<(BigRational, BigRational), Error> {
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let h = f.height();
    let c1 = BigRational::new(BigInt::one(), BigInt::one() + h);
    let tail_max = f.coeffs()[1..]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let c2 = BigRational::one() + BigRational::new(tail_max, f.leading().abs());
    Ok((c1, c2))
}

/// `2^(1-n(n-1)(n-2)/2) (n+1)^(-n(n-1)-1) H^(-2n(n-1)-1)`.
pub fn d1_practical_for(n: usize, h: &BigInt) -> BigRational {
    let n = n as u64;
    let two_exp = n * (n - 1) * (n - 2) / 2;
    let den = pow_int(2, two_exp) * pow_int(n + 1, n * (n - 1) + 1) * pow_big(h, 2 * n * (n - 1) + 1);
    BigRational::new(BigInt::from(2), den)
}

pub fn d1_practical(f: &IntPolynomial) -> BigRational {
    d1_practical_for(f.degree(), &f.height())
}

/// `2^(1-n(n-1)(n-2)/2) (n+1)^(-(n-1)(n-2)-1) H^(-2(n-1)(n-2)-1)`, for
/// irreducible polynomials of degree `n >= 3`.
pub fn d1_irreducible_practical_for(n: usize, h: &BigInt) -> Result<BigRational, Error> {
    if n < 3 {
        return Err(Error::DegreeTooSmall { required: 3, found: n });
    }
    let n = n as u64;
    let two_exp = n * (n - 1) * (n - 2) / 2;
    let den = pow_int(2, two_exp)
        * pow_int(n + 1, (n - 1) * (n - 2) + 1)
        * pow_big(h, 2 * (n - 1) * (n - 2) + 1);
    Ok(BigRational::new(BigInt::from(2), den))
}

pub fn d1_irreducible_practical(f: &IntPolynomial) -> Result<BigRational, Error> {
    d1_irreducible_practical_for(f.degree(), &f.height())
}

/// `3 H^(1-n) (n+1)^(-n-1)`.
pub fn d2_practical_for(n: usize, h: &BigInt) -> BigRational {
    let n = n as u64;
    let den = pow_big(h, n - 1) * pow_int(n + 1, n + 1);
    BigRational::new(BigInt::from(3), den)
}

pub fn d2_practical(f: &IntPolynomial) -> BigRational {
    d2_practical_for(f.degree(), &f.height())
}

/// `2^(-n(n-1)) (n+1)^(1-n) H^(-2(n-1))`: the real-root modulus gap for
/// irreducible polynomials. Exposed for inspection only.
pub fn sep_real_irreducible_for(n: usize, h: &BigInt) -> BigRational {
    let n = n as u64;
    let den = pow_int(2, n * (n - 1)) * pow_int(n + 1, n - 1) * pow_big(h, 2 * (n - 1));
    BigRational::new(BigInt::one(), den)
}

pub fn sep_real_irreducible(f: &IntPolynomial) -> BigRational {
    sep_real_irreducible_for(f.degree(), &f.height())
}

/// `sqrt(n+1) * H`, the Mahler-measure ceiling, kept as radicand and height
/// plus the least integer at or above it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MahlerUpper {
    pub radicand: u64,
    #[serde(serialize_with = "crate::exact::bigint_string")]
    pub height: BigInt,
    #[serde(serialize_with = "crate::exact::bigint_string")]
    pub ceiling: BigInt,
}

pub fn mahler_upper(f: &IntPolynomial) -> MahlerUpper {
    mahler_upper_for(f.degree(), &f.height())
}

pub fn mahler_upper_for(n: usize, h: &BigInt) -> MahlerUpper {
    let radicand = n as u64 + 1;
    let square = BigInt::from(radicand) * h * h;
    let mut ceiling = square.sqrt();
    if &ceiling * &ceiling < square {
        ceiling += 1;
    }
    MahlerUpper {
        radicand,
        height: h.clone(),
        ceiling,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn h(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn cauchy_examples() {
        let f = IntPolynomial::from_i64s(&[1, 0, -5, 1]);
        assert_eq!(cauchy_bounds(&f).unwrap(), (q(1, 6), q(6, 1)));
        let f = IntPolynomial::from_i64s(&[1, 0, -2]);
        assert_eq!(cauchy_bounds(&f).unwrap(), (q(1, 3), q(3, 1)));
        let f = IntPolynomial::from_i64s(&[2, -5, 2]);
        assert_eq!(cauchy_bounds(&f).unwrap(), (q(1, 6), q(7, 2)));
        let f = IntPolynomial::from_i64s(&[1, -2, 0]);
        assert_eq!(cauchy_bounds(&f), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn d1_examples() {
        assert_eq!(d1_practical_for(2, &h(2)), q(1, 432));
        assert_eq!(d1_practical_for(2, &h(1)), q(2, 27));
        assert_eq!(d1_practical_for(3, &h(1)), q(1, 65536));
    }

    #[test]
    fn d1_irreducible_examples() {
        assert_eq!(d1_irreducible_practical_for(3, &h(1)).unwrap(), q(1, 256));
        assert_eq!(d1_irreducible_practical_for(3, &h(2)).unwrap(), q(1, 8192));
        let expected = BigRational::new(
            BigInt::one(),
            pow_int(2, 11) * pow_int(5, 7),
        );
        assert_eq!(d1_irreducible_practical_for(4, &h(1)).unwrap(), expected);
        assert!(d1_irreducible_practical_for(2, &h(1)).is_err());
    }

    #[test]
    fn d2_examples() {
        assert_eq!(d2_practical_for(2, &h(2)), q(1, 18));
        assert_eq!(d2_practical_for(2, &h(1)), q(1, 9));
        assert_eq!(d2_practical_for(3, &h(10)), q(3, 25600));
    }

    #[test]
    fn sep_real_irreducible_examples() {
        assert_eq!(sep_real_irreducible_for(2, &h(1)), q(1, 12));
        assert_eq!(sep_real_irreducible_for(2, &h(2)), q(1, 48));
        assert_eq!(sep_real_irreducible_for(3, &h(1)), q(1, 1024));
    }

    #[test]
    fn mahler_examples() {
        assert_eq!(mahler_upper_for(2, &h(1)).ceiling, h(2));
        assert_eq!(mahler_upper_for(3, &h(5)).ceiling, h(10));
        let m = mahler_upper_for(2, &h(10));
        assert_eq!(m.ceiling, h(18));
        assert_eq!(m.radicand, 3);
        // 17^2 < 300 <= 18^2
        assert!(h(17) * h(17) < h(300) && h(300) <= h(18) * h(18));
    }

    #[test]
    fn orderings_over_small_range() {
        for n in 2..=8 {
            for height in 1..=40 {
                let hh = h(height);
                let d1 = d1_practical_for(n, &hh);
                let d2 = d2_practical_for(n, &hh);
                assert!(d1.is_positive() && d2.is_positive());
                assert!(d1 < d2, "n={n} H={height}");
                if n >= 3 {
                    assert!(d1_irreducible_practical_for(n, &hh).unwrap() >= d1);
                }
                let c1 = BigRational::new(BigInt::one(), BigInt::one() + &hh);
                assert!(c1 < BigRational::one() + BigRational::one());
            }
        }
    }

    #[test]
    fn bound_set_json_uses_rational_strings() {
        let f = IntPolynomial::from_i64s(&[1, 0, -2]);
        let b = BoundSet::compute(&f, false).unwrap();
        let json = serde_json::to_value(&b).unwrap();
        assert_eq!(json["c1"], "1/3");
        assert_eq!(json["c2"], "3/1");
        assert_eq!(json["d2"], "1/18");
        assert!(json["d1_irreducible"].is_null());
    }
}
