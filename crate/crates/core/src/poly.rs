//! Exact integer and rational polynomials in dense descending-power form.
//!
//! Coefficients are stored highest power first, `[a0, a1, ..., an]` for
//! `a0*X^n + a1*X^(n-1) + ... + an`, which is also the text format used on
//! the command line (`1,0,-2` is `X^2 - 2`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError};

/// Integer polynomial with a nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from descending-power coefficients.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self, Error> {
        match coeffs.first() {
            None => Err(Error::EmptyPolynomial),
            Some(lead) if lead.is_zero() => Err(Error::ZeroLeadingCoefficient),
            Some(_) => Ok(IntPolynomial { coeffs }),
        }
    }

    /// Convenience constructor for small coefficients.
    ///
    /// Panics if the list is empty or the leading entry is zero.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
            .expect("leading coefficient must be nonzero")
    }

    /// `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub(crate) fn from_coeffs_unchecked(coeffs: Vec<BigInt>) -> Self {
        debug_assert!(coeffs.first().is_some_and(|c| !c.is_zero()));
        IntPolynomial { coeffs }
    }

    /// Builds from a list that may carry leading zeros; `None` if all zero.
    pub fn from_untrimmed(mut coeffs: Vec<BigInt>) -> Option<Self> {
        let lead = coeffs.iter().position(|c| !c.is_zero())?;
        coeffs.drain(..lead);
        Some(IntPolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn constant_term(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    /// Coefficient of `X^k`.
    pub fn coeff_of_power(&self, k: usize) -> &BigInt {
        &self.coeffs[self.degree() - k]
    }

    /// H(f): largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .expect("nonempty")
    }

    /// Positive gcd of all coefficients.
    pub fn content(&self) -> BigInt {
        crate::exact::gcd_all(&self.coeffs)
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPolynomial {
        let mut content = self.content();
        if self.leading().is_negative() {
            content = -content;
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| c / &content).collect(),
        }
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `den^n * f(num/den)` with `den > 0`, which has the sign of `f(num/den)`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        homogeneous_horner(&self.coeffs, num, den)
    }

    /// Sign of `f(x)`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        sign_of(&self.eval_homogeneous(x.numer(), x.denom()))
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        let n = self.degree() as u32;
        BigRational::new(
            self.eval_homogeneous(x.numer(), x.denom()),
            num_traits::pow(x.denom().clone(), n as usize),
        )
    }

    /// `f(-X)`.
    pub fn negate_argument(&self) -> IntPolynomial {
        let n = self.degree();
        IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if (n - i) % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `-f(X)`.
    pub fn negate(&self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Splits `f = X^k * g` with `g(0) != 0`.
    pub fn strip_zero_roots(&self) -> (IntPolynomial, usize) {
        let k = self.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
        let g = IntPolynomial {
            coeffs: self.coeffs[..self.coeffs.len() - k].to_vec(),
        };
        (g, k)
    }

    /// gcd of the exponents carrying a nonzero coefficient; `f = g(X^m)` for
    /// this `m`. Returns 0 for a constant.
    pub fn exponent_gcd(&self) -> usize {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| n - i)
            .fold(0usize, |acc, e| acc.gcd(&e))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Option<IntPolynomial> {
        let n = self.degree();
        if n == 0 {
            return None;
        }
        Some(IntPolynomial {
            coeffs: self.coeffs[..n]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(n - i))
                .collect(),
        })
    }

    /// `den^n * f((num/den) X)`: the integer polynomial with the roots of
    /// `f(sX)` for `s = num/den > 0`, scaled by a positive constant.
    pub fn scale_argument_cleared(&self, s: &BigRational) -> Result<IntPolynomial, Error> {
        if !s.is_positive() {
            return Err(Error::NonPositiveScale);
        }
        let n = self.degree();
        let (num, den) = (s.numer(), s.denom());
        // coefficient of X^(n-i) is a_i * num^(n-i) * den^i
        let mut num_pows = Vec::with_capacity(n + 1);
        let mut acc = BigInt::one();
        for _ in 0..=n {
            num_pows.push(acc.clone());
            acc *= num;
        }
        let mut den_pow = BigInt::one();
        let mut coeffs = Vec::with_capacity(n + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c * &num_pows[n - i] * &den_pow);
            den_pow *= den;
        }
        Ok(IntPolynomial { coeffs })
    }

    /// Exact quotient by `divisor`, or `None` if it does not divide over Z.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let n = self.degree();
        let m = divisor.degree();
        if m > n {
            return None;
        }
        let lead = divisor.leading();
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let mut quot = Vec::with_capacity(n - m + 1);
        for i in 0..=(n - m) {
            let (q, r) = rem[i].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate().skip(1) {
                    rem[i + j] -= &q * d;
                }
            }
            quot.push(q);
        }
        if rem[n - m + 1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        IntPolynomial::from_untrimmed(quot)
    }

    /// Human-readable form such as `X^3 - 5*X + 1`.
    pub fn to_expression(&self) -> String {
        let n = self.degree();
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = n - i;
            let abs = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let unit = abs.is_one() && power > 0;
            if !unit {
                out.push_str(&abs.to_string());
                if power > 0 {
                    out.push('*');
                }
            }
            match power {
                0 => {}
                1 => out.push('X'),
                p => out.push_str(&format!("X^{p}")),
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    /// Canonical text form: comma-separated coefficients, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        parse_poly(text)
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_poly(&text).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Vec<BigInt>> for IntPolynomial {
    type Error = Error;

    fn try_from(coeffs: Vec<BigInt>) -> Result<Self, Error> {
        IntPolynomial::new(coeffs)
    }
}

impl From<IntPolynomial> for Vec<BigInt> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

/// Parses the comma-separated coefficient format.
pub fn parse_poly(text: &str) -> Result<IntPolynomial, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut coeffs = Vec::new();
    for (index, raw) in text.split(',').enumerate() {
        let token = raw.trim();
        let value = parse_integer_token(token).ok_or_else(|| ParseError::InvalidToken {
            index,
            token: token.to_string(),
        })?;
        coeffs.push(value);
    }
    if coeffs[0].is_zero() {
        return Err(ParseError::ZeroLeadingCoefficient);
    }
    Ok(IntPolynomial { coeffs })
}

fn parse_integer_token(token: &str) -> Option<BigInt> {
    let digits = token.strip_prefix(['-', '+']).unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    token.parse().ok()
}

pub(crate) fn homogeneous_horner(coeffs: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    let mut acc = coeffs[0].clone();
    let mut den_pow = BigInt::one();
    for c in &coeffs[1..] {
        den_pow *= den;
        acc *= num;
        if !c.is_zero() {
            acc += c * &den_pow;
        }
    }
    acc
}

pub(crate) fn sign_of(x: &BigInt) -> Ordering {
    match x.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

/// Rational polynomial, descending powers. Leading zeros are tolerated and
/// skipped by degree queries; the empty list is the zero polynomial.
#[derive(Clone, Debug, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        RatPolynomial {
            coeffs: coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// Raw coefficient list, possibly with leading zeros.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Drops leading zeros.
    pub fn trimmed(&self) -> RatPolynomial {
        let lead = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len());
        RatPolynomial {
            coeffs: self.coeffs[lead..].to_vec(),
        }
    }

    fn significant(&self) -> &[BigRational] {
        let lead = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len());
        &self.coeffs[lead..]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Degree ignoring leading zeros; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let s = self.significant();
        (!s.is_empty()).then(|| s.len() - 1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.significant().first()
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> RatPolynomial {
        let s = self.significant();
        if s.len() <= 1 {
            return RatPolynomial::zero();
        }
        let n = s.len() - 1;
        RatPolynomial {
            coeffs: s[..n]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(n - i)))
                .collect(),
        }
    }

    /// `X^n p(1/X)` for `n = deg p`: the coefficient list reversed.
    pub fn reciprocal(&self) -> RatPolynomial {
        let mut coeffs = self.significant().to_vec();
        coeffs.reverse();
        RatPolynomial { coeffs }
    }

    /// Clears denominators by a positive factor and returns the primitive
    /// integer polynomial with the same sign pattern, `None` for zero.
    pub fn to_primitive_int(&self) -> Option<IntPolynomial> {
        let s = self.significant();
        if s.is_empty() {
            return None;
        }
        let lcm = s.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = s.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let content = crate::exact::gcd_all(&ints);
        Some(IntPolynomial::from_coeffs_unchecked(
            ints.into_iter().map(|c| c / &content).collect(),
        ))
    }
}

impl PartialEq for RatPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.significant() == other.significant()
    }
}

impl Eq for RatPolynomial {}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.significant();
        if s.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in s.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn add_aligned(a: &[BigRational], b: &[BigRational], subtract: bool) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[len - a.len() + i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        if subtract {
            out[len - b.len() + i] -= c;
        } else {
            out[len - b.len() + i] += c;
        }
    }
    out
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntPolynomial { coeffs: out }
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;

    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        RatPolynomial::new(add_aligned(&self.coeffs, &rhs.coeffs, false)).trimmed()
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;

    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        RatPolynomial::new(add_aligned(&self.coeffs, &rhs.coeffs, true)).trimmed()
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;

    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        let (a, b) = (self.significant(), rhs.significant());
        if a.is_empty() || b.is_empty() {
            return RatPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        RatPolynomial::new(out)
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;

    fn neg(self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// `g(X) = f(sX)` for `s > 0`; coefficient `i` is multiplied by `s^(n-i)`.
pub fn scale_argument(f: &IntPolynomial, s: &BigRational) -> Result<RatPolynomial, Error> {
    if !s.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    let n = f.degree();
    let mut power = BigRational::one();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for i in (0..=n).rev() {
        coeffs[i] = BigRational::from_integer(f.coeffs[i].clone()) * &power;
        power *= s;
    }
    Ok(RatPolynomial::new(coeffs))
}
