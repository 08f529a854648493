//! Bistritz stability test: the three-term recursion of symmetric
//! polynomials `T_n, ..., T_0`, both singular cases, and the count of roots
//! strictly outside the unit circle.
//!
//! Two routes compute the same sequence. [`t_sequence`] follows the
//! recursion literally over exact rationals. [`count_outside_int`] runs it
//! over integers, multiplying each new member by a positive factor and
//! dividing out its content. A positive factor on `T_k` and `T_{k-1}`
//! rescales every later member by a positive factor, so the signs of all
//! `T_j(1)` and both singularity tests are unchanged.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::poly::{IntPolynomial, RatPolynomial};
use crate::sturm::sign_changes;

/// Constant `K > 2` used when patching a second-type singularity.
pub const PATCH_CONSTANT: i64 = 3;

/// Record of one second-type patch applied at level `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Patch {
    pub level: usize,
    pub multiplicity: usize,
    pub constant: i64,
}

/// `T_n, T_{n-1}, ..., T_0` with the patches that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct TSequence {
    pub polys: Vec<RatPolynomial>,
    pub patches: Vec<Patch>,
}

impl TSequence {
    pub fn values_at_one(&self) -> Vec<BigRational> {
        self.polys
            .iter()
            .map(|t| t.evaluate(&BigRational::one()))
            .collect()
    }

    /// ν: sign changes of `T_n(1), ..., T_0(1)`.
    pub fn nu(&self) -> usize {
        sign_changes(&self.values_at_one())
    }

    pub fn normal(&self) -> bool {
        self.patches.is_empty()
    }
}

/// Outcome of the stability test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StabilityReport {
    /// Every root strictly inside the unit circle.
    Stable,
    /// `nu` roots strictly outside the unit circle, the rest strictly inside.
    Unstable { nu: usize, second_type_patches: usize },
    /// Some `T_{k-1}` vanished identically: roots on the unit circle or a
    /// reciprocal pair. No count is claimed.
    FirstTypeSingular { level: usize },
    /// `A(1) = 0`.
    OnePointFail,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityReport::Stable)
    }

    /// Roots strictly outside the unit circle, when the test determines it.
    pub fn outside_count(&self) -> Option<usize> {
        match self {
            StabilityReport::Stable => Some(0),
            StabilityReport::Unstable { nu, .. } => Some(*nu),
            _ => None,
        }
    }
}

/// Why the recursion stopped without a full sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Singular {
    OnePoint,
    FirstType { level: usize },
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Coefficients of a degree-`n` polynomial as a full length `n + 1` list.
fn padded(a: &RatPolynomial, n: usize) -> Vec<BigRational> {
    let c = a.trimmed();
    let mut out = vec![BigRational::zero(); n + 1 - c.coeffs().len()];
    out.extend(c.coeffs().iter().cloned());
    out
}

/// Divides by `X - 1` (synthetic division), assuming exactness.
fn divide_by_x_minus_one<T>(coeffs: &[T]) -> Vec<T>
where
    T: Clone + Zero + for<'a> std::ops::Add<&'a T, Output = T>,
{
    let mut out = Vec::with_capacity(coeffs.len() - 1);
    let mut acc = T::zero();
    for c in &coeffs[..coeffs.len() - 1] {
        acc = acc + c;
        out.push(acc.clone());
    }
    out
}

/// `T_n = A + A*`, `T_{n-1} = (A - A*)/(X - 1)`.
pub fn t_init(a: &RatPolynomial) -> Result<(RatPolynomial, RatPolynomial), Singular> {
    let (upper, lower) = t_init_padded(a)?;
    Ok((RatPolynomial::new(upper), RatPolynomial::new(lower)))
}

/// As [`t_init`], with lists of nominal length `n + 1` and `n`.
fn t_init_padded(a: &RatPolynomial) -> Result<(Vec<BigRational>, Vec<BigRational>), Singular> {
    let n = a.degree().unwrap_or(0);
    let coeffs = padded(a, n);
    if a.evaluate(&BigRational::one()).is_zero() {
        return Err(Singular::OnePoint);
    }
    let rev: Vec<BigRational> = coeffs.iter().rev().cloned().collect();
    let sum: Vec<BigRational> = coeffs.iter().zip(&rev).map(|(x, y)| x + y).collect();
    let diff: Vec<BigRational> = coeffs.iter().zip(&rev).map(|(x, y)| x - y).collect();
    debug_assert!(diff.iter().fold(BigRational::zero(), |acc, c| acc + c).is_zero());
    Ok((sum, divide_by_x_minus_one(&diff)))
}

fn trailing_zeros<T: Zero>(c: &[T]) -> usize {
    c.iter().rev().take_while(|x| x.is_zero()).count()
}

/// Patched pair for a second-type singularity, generic over the scalar.
/// `upper` has length `k + 1`, `lower` length `k`, `lower` has `q` trailing
/// (and, by symmetry, leading) zeros.
fn patch_pair<T>(upper: &[T], lower: &[T], q: usize, big_k: &T) -> (Vec<T>, Vec<T>)
where
    T: Clone + Zero + for<'a> std::ops::Add<&'a T, Output = T> + for<'a> std::ops::Sub<&'a T, Output = T>,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let len = lower.len();
    // X^q T_{k-1} and X^{-q} T_{k-1}, both as length-k lists
    let mut up: Vec<T> = lower[q..].to_vec();
    up.extend(std::iter::repeat_n(T::zero(), q));
    let mut down: Vec<T> = std::iter::repeat_n(T::zero(), q).collect();
    down.extend(lower[..len - q].iter().cloned());
    let anti: Vec<T> = up.iter().zip(&down).map(|(x, y)| x.clone() - y).collect();
    // (X - 1) * anti, length k + 1
    let mut times = vec![T::zero(); len + 1];
    for (i, c) in anti.iter().enumerate() {
        times[i] = times[i].clone() + c;
        times[i + 1] = times[i + 1].clone() - c;
    }
    let new_upper: Vec<T> = upper.iter().zip(&times).map(|(x, y)| x.clone() + y).collect();
    let new_lower: Vec<T> = (0..len)
        .map(|i| (big_k * &lower[i]) + &up[i] + &down[i])
        .collect();
    (new_upper, new_lower)
}

/// Full sequence over exact rationals, with no rescaling.
pub fn t_sequence(a: &RatPolynomial) -> Result<TSequence, Singular> {
    let n = a.degree().unwrap_or(0);
    let (mut upper, mut lower) = t_init_padded(a)?;
    let mut polys: Vec<Vec<BigRational>> = vec![upper.clone()];
    let mut patches = Vec::new();
    let big_k = rat(PATCH_CONSTANT);
    for k in (1..=n).rev() {
        // lower is T_{k-1}, length k
        if lower.iter().all(Zero::is_zero) {
            return Err(Singular::FirstType { level: k });
        }
        if lower.last().unwrap().is_zero() {
            let q = trailing_zeros(&lower);
            let (u, l) = patch_pair(&upper, &lower, q, &big_k);
            *polys.last_mut().unwrap() = u.clone();
            upper = u;
            lower = l;
            patches.push(Patch {
                level: k,
                multiplicity: q,
                constant: PATCH_CONSTANT,
            });
        }
        polys.push(lower.clone());
        if k == 1 {
            break;
        }
        let delta = upper.last().unwrap() / lower.last().unwrap();
        // delta (X + 1) T_{k-1} - T_k, then divide by X
        let mut next = vec![BigRational::zero(); k + 1];
        for (i, c) in lower.iter().enumerate() {
            let s = &delta * c;
            next[i] += &s;
            next[i + 1] += s;
        }
        for (i, c) in upper.iter().enumerate() {
            next[i] -= c;
        }
        // both end coefficients cancel by symmetry
        debug_assert!(next[0].is_zero() && next[k].is_zero());
        next.pop();
        next.remove(0);
        upper = std::mem::replace(&mut lower, next);
    }
    Ok(TSequence {
        polys: polys.into_iter().map(RatPolynomial::new).collect(),
        patches,
    })
}

/// Stability report via the literal rational recursion.
pub fn count_outside_reference(a: &RatPolynomial) -> Result<StabilityReport, Error> {
    check_degree(a.degree())?;
    Ok(match t_sequence(a) {
        Err(Singular::OnePoint) => StabilityReport::OnePointFail,
        Err(Singular::FirstType { level }) => StabilityReport::FirstTypeSingular { level },
        Ok(seq) => report(seq.nu(), seq.patches.len()),
    })
}

fn report(nu: usize, patches: usize) -> StabilityReport {
    if nu == 0 && patches == 0 {
        StabilityReport::Stable
    } else {
        StabilityReport::Unstable {
            nu,
            second_type_patches: patches,
        }
    }
}

fn check_degree(d: Option<usize>) -> Result<(), Error> {
    match d {
        Some(n) if n >= 2 => Ok(()),
        other => Err(Error::DegreeTooSmall {
            required: 2,
            found: other.unwrap_or(0),
        }),
    }
}

/// Number of roots strictly outside the unit circle.
pub fn count_outside(a: &RatPolynomial) -> Result<StabilityReport, Error> {
    check_degree(a.degree())?;
    let int = a.to_primitive_int().expect("nonzero");
    count_outside_int(&int)
}

pub fn is_stable(a: &RatPolynomial) -> bool {
    count_outside(a).map(|r| r.is_stable()).unwrap_or(false)
}

/// Divides out the content and returns it (1 for the zero list).
fn divide_content(v: &mut [BigInt]) -> BigInt {
    let g = crate::exact::gcd_all(v.iter());
    if g.is_zero() {
        return BigInt::one();
    }
    if !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    g
}

fn sign_at_one(v: &[BigInt]) -> std::cmp::Ordering {
    v.iter()
        .fold(BigInt::zero(), |acc, c| acc + c)
        .sign()
        .cmp(&num_bigint::Sign::NoSign)
}

/// Integer route for [`count_outside`]; `a` may have any positive scaling.
pub fn count_outside_int(a: &IntPolynomial) -> Result<StabilityReport, Error> {
    let n = a.degree();
    check_degree(Some(n))?;
    let coeffs = a.coeffs();
    if coeffs.iter().fold(BigInt::zero(), |acc, c| acc + c).is_zero() {
        return Ok(StabilityReport::OnePointFail);
    }
    let mut upper: Vec<BigInt> = coeffs
        .iter()
        .zip(coeffs.iter().rev())
        .map(|(x, y)| x + y)
        .collect();
    let diff: Vec<BigInt> = coeffs
        .iter()
        .zip(coeffs.iter().rev())
        .map(|(x, y)| x - y)
        .collect();
    let mut lower = divide_by_x_minus_one(&diff);
    // (scale of lower) / (scale of upper) as an unreduced fraction, each
    // relative to the unscaled recursion; only a patch reads it
    let mut ratio_num = divide_content(&mut upper);
    let mut ratio_den = divide_content(&mut lower);
    let big_k = BigInt::from(PATCH_CONSTANT);
    let mut signs = vec![sign_at_one(&upper)];
    let mut patches = 0usize;
    for k in (1..=n).rev() {
        if lower.iter().all(Zero::is_zero) {
            return Ok(StabilityReport::FirstTypeSingular { level: k });
        }
        if lower.last().unwrap().is_zero() {
            let q = trailing_zeros(&lower);
            // bring both to a common scale before mixing
            let scaled_upper: Vec<BigInt> = upper.iter().map(|c| c * &ratio_num).collect();
            let scaled_lower: Vec<BigInt> = lower.iter().map(|c| c * &ratio_den).collect();
            let (u, l) = patch_pair(&scaled_upper, &scaled_lower, q, &big_k);
            upper = u;
            lower = l;
            ratio_num = divide_content(&mut upper);
            ratio_den = divide_content(&mut lower);
            patches += 1;
            // T_k(1) is unchanged by the patch, so the recorded sign stands
        }
        signs.push(sign_at_one(&lower));
        if k == 1 {
            break;
        }
        let t0 = upper.last().unwrap().clone();
        let t1 = lower.last().unwrap().clone();
        // |t1| * T_{k-2} = (sgn(t1) t0 (X + 1) T_{k-1} - |t1| T_k) / X
        let lead = if t1.is_negative() { -t0 } else { t0 };
        let t1_abs = t1.abs();
        let mut next = vec![BigInt::zero(); k + 1];
        for (i, c) in lower.iter().enumerate() {
            let s = &lead * c;
            next[i] += &s;
            next[i + 1] += s;
        }
        for (i, c) in upper.iter().enumerate() {
            next[i] -= &t1_abs * c;
        }
        // both end coefficients cancel by symmetry
        debug_assert!(next[0].is_zero() && next[k].is_zero());
        next.pop();
        next.remove(0);
        let g = divide_content(&mut next);
        // new ratio = |t1| / (g * old ratio)
        let num = t1_abs * &ratio_den;
        ratio_den = g * ratio_num;
        ratio_num = num;
        upper = std::mem::replace(&mut lower, next);
    }
    let mut last = std::cmp::Ordering::Equal;
    let mut nu = 0;
    for s in signs {
        if s == std::cmp::Ordering::Equal {
            continue;
        }
        if last != std::cmp::Ordering::Equal && s != last {
            nu += 1;
        }
        last = s;
    }
    Ok(report(nu, patches))
}
