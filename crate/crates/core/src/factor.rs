//! Irreducibility over the integers by bounded exhaustive factor search.
//!
//! Linear factors come from the rational-root test. A factor `g` of degree
//! `k >= 2` is pinned down by its leading coefficient and its values at `k`
//! integer points; each value must divide the value of `f` there, so the
//! candidates are finite. Every candidate is checked against the Mahler
//! coefficient bound and then by exact division.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::mahler_upper;
use crate::error::Error;
use crate::poly::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "factor", rename_all = "snake_case")]
pub enum FactorWitness {
    Irreducible,
    Reducible(IntPolynomial),
}

impl FactorWitness {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, FactorWitness::Irreducible)
    }
}

/// Prime factorization of `|n| > 0` by trial division, as (prime, exponent).
fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut rest = n.abs();
    let mut out = Vec::new();
    if let Some(mut m) = rest.to_u64() {
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            if e > 0 {
                out.push((BigInt::from(d), e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.push((BigInt::from(m), 1));
        }
        return out;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
            if let Some(small) = rest.to_u64() {
                out.extend(factorize(&BigInt::from(small)));
                return out;
            }
        }
        d += 1;
    }
    if !rest.is_one() {
        out.push((rest, 1));
    }
    out
}

/// Positive divisors of `|n|`, ascending. `n` must be nonzero.
pub fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(!n.is_zero(), "divisors of zero");
    let mut divisors = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for d in &divisors {
            let mut power = d.clone();
            next.push(power.clone());
            for _ in 0..e {
                power *= &p;
                next.push(power.clone());
            }
        }
        divisors = next;
    }
    divisors.sort();
    divisors
}

/// All rational roots, each once, ascending.
pub fn rational_roots(f: &IntPolynomial) -> Result<Vec<BigRational>, Error> {
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let mut roots = Vec::new();
    let nums = positive_divisors(f.constant_term());
    let dens = positive_divisors(f.leading());
    for q in &dens {
        for p in &nums {
            if !p.gcd(q).is_one() {
                continue;
            }
            for num in [p.clone(), -p] {
                if f.eval_homogeneous(&num, q).is_zero() {
                    roots.push(BigRational::new(num, q.clone()));
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Coefficient bound for a degree-`k` factor of `f`.
fn factor_coefficient_bound(f: &IntPolynomial, k: usize) -> BigInt {
    binomial(BigInt::from(k), BigInt::from(k / 2)) * mahler_upper(f).ceiling
}

/// Interpolates the degree-`k` polynomial with leading coefficient `lead`
/// through `(points[i], values[i])`; `None` unless the result is integral.
fn interpolate_with_lead(lead: &BigInt, points: &[BigInt], values: &[BigInt]) -> Option<IntPolynomial> {
    let k = points.len();
    // lead * prod (X - x_i), descending
    let mut base = vec![lead.clone()];
    for x in points {
        let mut next = base.clone();
        next.push(BigInt::zero());
        for (i, c) in base.iter().enumerate() {
            next[i + 1] -= c * x;
        }
        base = next;
    }
    // Newton form of the remaining degree < k interpolant
    let mut dd: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    for level in 1..k {
        for i in (level..k).rev() {
            let span = BigRational::from_integer(&points[i] - &points[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / span;
        }
    }
    // expand, ascending
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); k.max(1)];
    for i in (0..k).rev() {
        // acc = acc * (X - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); k.max(1)];
        let x = BigRational::from_integer(points[i].clone());
        for (j, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[j] -= c * &x;
            if j + 1 < next.len() {
                next[j + 1] += c;
            }
        }
        next[0] += &dd[i];
        acc = next;
    }
    let mut coeffs = base;
    for (j, c) in acc.iter().enumerate() {
        if !c.is_integer() {
            return None;
        }
        let idx = coeffs.len() - 1 - j;
        coeffs[idx] += c.to_integer();
    }
    IntPolynomial::new(coeffs).ok()
}

/// `(x, f(x))` pairs.
type Samples = Vec<(BigInt, BigInt)>;

/// Picks `k` sample points with few divisor choices, plus spare points for
/// cheap rejection.
fn sample_points(f: &IntPolynomial, k: usize) -> (Samples, Samples) {
    let mut pool: Vec<(BigInt, BigInt, usize)> = Vec::new();
    let mut x = 0i64;
    while pool.len() < 2 * k + 3 {
        for cand in if x == 0 { vec![0] } else { vec![x, -x] } {
            let point = BigInt::from(cand);
            let value = f.eval_int(&point);
            if !value.is_zero() {
                let count = positive_divisors(&value).len();
                pool.push((point, value, count));
            }
        }
        x += 1;
    }
    pool.sort_by_key(|p| p.2);
    let mut chosen: Vec<(BigInt, BigInt)> = pool.iter().take(k).map(|p| (p.0.clone(), p.1.clone())).collect();
    chosen.sort();
    let spare = pool.iter().skip(k).map(|p| (p.0.clone(), p.1.clone())).collect();
    (chosen, spare)
}

/// Searches for a factor of exact degree `k` (`2 <= k <= deg f / 2`).
fn factor_of_degree(f: &IntPolynomial, k: usize) -> Option<IntPolynomial> {
    let bound = factor_coefficient_bound(f, k);
    let (chosen, spare) = sample_points(f, k);
    let points: Vec<BigInt> = chosen.iter().map(|p| p.0.clone()).collect();
    let choices: Vec<Vec<BigInt>> = chosen
        .iter()
        .map(|(_, v)| {
            positive_divisors(v)
                .into_iter()
                .flat_map(|d| [d.clone(), -d])
                .collect()
        })
        .collect();
    let leads = positive_divisors(f.leading());
    let mut index = vec![0usize; k];
    loop {
        let values: Vec<BigInt> = index.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        for lead in &leads {
            let Some(g) = interpolate_with_lead(lead, &points, &values) else {
                continue;
            };
            if g.coeffs().iter().any(|c| c.abs() > bound) {
                continue;
            }
            let passes_spare = spare.iter().all(|(x, fx)| {
                let gx = g.eval_int(x);
                !gx.is_zero() && (fx % &gx).is_zero()
            });
            if passes_spare && f.div_exact(&g).is_some() {
                return Some(g);
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == k {
                return None;
            }
            index[pos] += 1;
            if index[pos] < choices[pos].len() {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}

/// Decides irreducibility over the rationals of a primitive polynomial.
pub fn is_irreducible(f: &IntPolynomial) -> Result<FactorWitness, Error> {
    if !f.content().is_one() {
        return Err(Error::NotPrimitive);
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let f = if f.leading().is_negative() { f.negate() } else { f.clone() };
    let n = f.degree();
    if n == 0 {
        return Err(Error::DegreeTooSmall { required: 1, found: 0 });
    }
    if n == 1 {
        return Ok(FactorWitness::Irreducible);
    }
    if let Some(r) = rational_roots(&f)?.pop() {
        let factor = IntPolynomial::new(vec![r.denom().clone(), -r.numer().clone()])?;
        return Ok(FactorWitness::Reducible(factor));
    }
    for k in 2..=n / 2 {
        if let Some(g) = factor_of_degree(&f, k) {
            return Ok(FactorWitness::Reducible(g));
        }
    }
    Ok(FactorWitness::Irreducible)
}

/// Primitive part with positive leading coefficient, then [`is_irreducible`].
pub fn is_irreducible_primitive_part(f: &IntPolynomial) -> Result<FactorWitness, Error> {
    is_irreducible(&f.primitive_part())
}

/// Concurrent memo for [`is_irreducible`], keyed by the primitive part.
#[derive(Debug, Default)]
pub struct FactorMemo {
    table: RwLock<HashMap<IntPolynomial, FactorWitness>>,
}

impl FactorMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_irreducible(&self, f: &IntPolynomial) -> Result<FactorWitness, Error> {
        let key = f.primitive_part();
        if let Some(hit) = self.table.read().expect("memo lock").get(&key) {
            return Ok(hit.clone());
        }
        let witness = is_irreducible(&key)?;
        self.table
            .write()
            .expect("memo lock")
            .entry(key)
            .or_insert_with(|| witness.clone());
        Ok(witness)
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
