//! Sturm chains, real-root counting, and bisection search for the real root
//! of largest modulus.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bounds::cauchy_bounds;
use crate::error::Error;
use crate::exact::serde_rational;
use crate::poly::{homogeneous_horner, sign_of, IntPolynomial};

/// Negated-remainder sequence `p0 = f, p1 = f', p_{k+1} = -rem(p_{k-1}, p_k)`.
///
/// Every member is stored as a primitive integer polynomial obtained from the
/// textbook member by a positive factor, so sign counts are unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn build(f: &IntPolynomial) -> Result<Self, Error> {
        if f.degree() < 1 {
            return Err(Error::DegreeTooSmall { required: 1, found: 0 });
        }
        let p0 = positive_primitive(f.coeffs().to_vec()).expect("nonzero");
        let p1 = positive_primitive(f.derivative().expect("degree >= 1").into_coeffs())
            .expect("nonzero derivative");
        let mut polys = vec![p0, p1];
        loop {
            let k = polys.len();
            let r = pseudo_remainder(polys[k - 2].coeffs(), polys[k - 1].coeffs());
            let negated: Vec<BigInt> = r.into_iter().map(|c| -c).collect();
            match positive_primitive(negated) {
                Some(p) => polys.push(p),
                None => break,
            }
        }
        Ok(SturmChain { polys })
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// The last member: gcd(f, f') up to a constant.
    pub fn gcd(&self) -> &IntPolynomial {
        self.polys.last().expect("nonempty")
    }

    /// `f / gcd(f, f')`, which has the same distinct roots as `f`, all simple.
    pub fn squarefree_part(&self) -> IntPolynomial {
        let g = self.gcd();
        let f = &self.polys[0];
        if g.degree() == 0 {
            return f.clone();
        }
        // both primitive, so the quotient is integral (Gauss)
        let q = f.div_exact(g).expect("gcd divides f");
        positive_primitive(q.into_coeffs()).expect("nonzero")
    }

    /// Signs of every member at `x`.
    pub fn signs_at(&self, x: &BigRational) -> Vec<Ordering> {
        self.polys
            .iter()
            .map(|p| sign_of(&homogeneous_horner(p.coeffs(), x.numer(), x.denom())))
            .collect()
    }

    /// σ(x): sign changes of the chain evaluated at `x`.
    pub fn sign_changes_at(&self, x: &BigRational) -> usize {
        self.sign_changes_at_ratio(x.numer(), x.denom())
    }

    /// σ(num/den) for `den > 0`, without normalizing the fraction.
    fn sign_changes_at_ratio(&self, num: &BigInt, den: &BigInt) -> usize {
        sign_changes_of(
            self.polys
                .iter()
                .map(|p| sign_of(&homogeneous_horner(p.coeffs(), num, den))),
        )
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_real_roots_in(&self, a: &BigRational, b: &BigRational) -> Result<usize, Error> {
        if a >= b {
            return Err(Error::InvalidInterval);
        }
        let sa = self.signs_at(a);
        let sb = self.signs_at(b);
        if sa[0] == Ordering::Equal || sb[0] == Ordering::Equal {
            return Err(Error::EndpointIsRoot);
        }
        let (va, vb) = (sign_changes_of(sa), sign_changes_of(sb));
        Ok(va.saturating_sub(vb))
    }
}

/// Sign changes after deleting zeros.
pub fn sign_changes(values: &[BigRational]) -> usize {
    sign_changes_of(values.iter().map(|v| v.numer().signum().cmp(&BigInt::zero())))
}

fn sign_changes_of(signs: impl IntoIterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut changes = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Divides by the positive content; `None` for the zero polynomial.
fn positive_primitive(coeffs: Vec<BigInt>) -> Option<IntPolynomial> {
    let p = IntPolynomial::from_untrimmed(coeffs)?;
    let content = p.content();
    if content.is_one() {
        return Some(p);
    }
    Some(IntPolynomial::from_coeffs_unchecked(
        p.coeffs().iter().map(|c| c / &content).collect(),
    ))
}

/// Positive multiple of `rem(a, b)`; empty when `b` divides `a`.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = &b[0];
    let lb_abs = lb.abs();
    let lb_negative = lb.is_negative();
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() >= b.len() {
        let lead = r[0].clone();
        if lead.is_zero() {
            r.remove(0);
            continue;
        }
        let t = if lb_negative { -lead } else { lead };
        // r <- |lb| r - t X^k b, which cancels the leading term
        for c in r.iter_mut() {
            *c *= &lb_abs;
        }
        for (j, bc) in b.iter().enumerate() {
            r[j] -= &t * bc;
        }
        debug_assert!(r[0].is_zero());
        r.remove(0);
        // keep the working remainder small; positive scaling only
        let g = crate::exact::gcd_all(r.iter());
        if !g.is_zero() && !g.is_one() {
            for c in r.iter_mut() {
                *c /= &g;
            }
        }
    }
    let lead = r.iter().position(|c| !c.is_zero()).unwrap_or(r.len());
    r.drain(..lead);
    r
}

/// Stopping rule for the bisection loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WidthTarget {
    /// Stop once `R - r <= d` (loop while the width exceeds `d`).
    AtMost(BigRational),
    /// Stop once `R - r < d` (loop while the width is at least `d`).
    Below(BigRational),
}

impl WidthTarget {
    pub fn value(&self) -> &BigRational {
        match self {
            WidthTarget::AtMost(d) | WidthTarget::Below(d) => d,
        }
    }

    fn keep_going(&self, width: &BigRational) -> bool {
        match self {
            WidthTarget::AtMost(d) => width > d,
            WidthTarget::Below(d) => width >= d,
        }
    }

    pub fn is_met_by(&self, width: &BigRational) -> bool {
        !self.keep_going(width)
    }

    fn keep_going_span(&self, span: &Span) -> bool {
        let d = self.value();
        let lhs = (&span.hi - &span.lo) * d.denom();
        let rhs = d.numer() * &span.den;
        match self {
            WidthTarget::AtMost(_) => lhs > rhs,
            WidthTarget::Below(_) => lhs >= rhs,
        }
    }
}

/// The interval `(lo/den, hi/den)` with `den > 0`. Bisection only ever
/// doubles the shared denominator, so the loop needs no gcds; endpoints are
/// normalized once on the way out.
struct Span {
    lo: BigInt,
    hi: BigInt,
    den: BigInt,
}

impl Span {
    fn new(a: &BigRational, b: &BigRational) -> Span {
        let den = a.denom().lcm(b.denom());
        Span {
            lo: a.numer() * (&den / a.denom()),
            hi: b.numer() * (&den / b.denom()),
            den,
        }
    }

    /// Numerator of the midpoint over `2 den`, and that denominator.
    fn midpoint(&self) -> (BigInt, BigInt) {
        (&self.lo + &self.hi, &self.den << 1)
    }

    fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), self.den.clone())
    }

    fn take_upper_half(&mut self, mid: BigInt, den: BigInt) {
        self.lo = mid;
        self.hi <<= 1;
        self.den = den;
    }

    fn take_lower_half(&mut self, mid: BigInt, den: BigInt) {
        self.hi = mid;
        self.lo <<= 1;
        self.den = den;
    }

    fn into_endpoints(self) -> (BigRational, BigRational) {
        (
            BigRational::new(self.lo, self.den.clone()),
            BigRational::new(self.hi, self.den),
        )
    }
}

/// Which real half-line the bracketed root lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Positive => Side::Negative,
            Side::Negative => Side::Positive,
        }
    }
}

/// `r < |z| < R` bracketing the modulus of a real root on `side`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Annulus {
    #[serde(rename = "r", with = "serde_rational")]
    pub inner: BigRational,
    #[serde(rename = "R", with = "serde_rational")]
    pub outer: BigRational,
    pub side: Side,
}

impl Annulus {
    pub fn width(&self) -> BigRational {
        &self.outer - &self.inner
    }
}

/// Bisection state for one polynomial on the positive half-line.
struct Bisector<'a> {
    f: &'a IntPolynomial,
    chain: &'a SturmChain,
    squarefree: &'a IntPolynomial,
}

impl Bisector<'_> {
    fn f_sign(&self, num: &BigInt, den: &BigInt) -> Ordering {
        sign_of(&homogeneous_horner(self.f.coeffs(), num, den))
    }

    fn sigma(&self, num: &BigInt, den: &BigInt) -> usize {
        self.chain.sign_changes_at_ratio(num, den)
    }

    fn sqf_sign(&self, num: &BigInt, den: &BigInt) -> Ordering {
        sign_of(&homogeneous_horner(self.squarefree.coeffs(), num, den))
    }

    /// Largest-root search on `(a, b)`, `0 < a < b`, `f(a) f(b) != 0`.
    ///
    /// Once exactly one distinct root is left in `(a, b)`, the test "is there
    /// a root in `(c, b)`" is answered by a sign change of the squarefree
    /// part instead of two chain evaluations; the answer is the same.
    fn locate_largest(
        &self,
        a: BigRational,
        b: BigRational,
        target: &WidthTarget,
    ) -> Option<(BigRational, BigRational)> {
        let d = target.value();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut span = Span::new(&a, &b);
        let mut sigma_b = Some(self.sigma(&span.hi, &span.den));
        let mut count = self
            .sigma(&span.lo, &span.den)
            .checked_sub(sigma_b.unwrap());
        if count.unwrap_or(0) == 0 {
            return None;
        }
        let mut sqf_b: Option<Ordering> = None;
        while target.keep_going_span(&span) {
            let (mid, den) = span.midpoint();
            if self.f_sign(&mid, &den) == Ordering::Equal {
                let c = BigRational::new(mid, den);
                let mut offset = d * &half;
                let mut next = &c - &offset;
                while !next.is_positive() || self.f.sign_at(&next) == Ordering::Equal {
                    offset *= &half;
                    next = &c - &offset;
                }
                span = Span::new(&next, &span.upper());
                count = None;
                continue;
            }
            let roots = match count {
                Some(k) => k,
                None => {
                    let sb = *sigma_b.get_or_insert_with(|| self.sigma(&span.hi, &span.den));
                    let k = self.sigma(&span.lo, &span.den) - sb;
                    count = Some(k);
                    k
                }
            };
            if roots == 1 {
                let sb = *sqf_b.get_or_insert_with(|| self.sqf_sign(&span.hi, &span.den));
                let sc = self.sqf_sign(&mid, &den);
                if sc != sb {
                    span.take_upper_half(mid, den);
                } else {
                    span.take_lower_half(mid, den);
                    sqf_b = Some(sc);
                    sigma_b = None;
                }
            } else {
                let sb = *sigma_b.get_or_insert_with(|| self.sigma(&span.hi, &span.den));
                let sc = self.sigma(&mid, &den);
                if sc > sb {
                    span.take_upper_half(mid, den);
                    count = Some(sc - sb);
                } else {
                    // every root of (a, b) lies in (a, c)
                    span.take_lower_half(mid, den);
                    sigma_b = Some(sc);
                    sqf_b = None;
                }
            }
        }
        Some(span.into_endpoints())
    }
}

/// Finds the largest root of `f` in `(a, b)` and brackets it to the width
/// target. `None` if `(a, b)` holds no root.
pub fn locate_largest_in(
    f: &IntPolynomial,
    a: &BigRational,
    b: &BigRational,
    target: &WidthTarget,
) -> Result<Option<(BigRational, BigRational)>, Error> {
    check_search(f, a, b, target)?;
    let chain = SturmChain::build(f)?;
    let squarefree = chain.squarefree_part();
    let bis = Bisector {
        f,
        chain: &chain,
        squarefree: &squarefree,
    };
    Ok(bis.locate_largest(a.clone(), b.clone(), target))
}

fn check_search(
    f: &IntPolynomial,
    a: &BigRational,
    b: &BigRational,
    target: &WidthTarget,
) -> Result<(), Error> {
    if !a.is_positive() || a >= b {
        return Err(Error::InvalidInterval);
    }
    if !target.value().is_positive() {
        return Err(Error::NonPositiveWidth);
    }
    if f.sign_at(a) == Ordering::Equal || f.sign_at(b) == Ordering::Equal {
        return Err(Error::EndpointIsRoot);
    }
    Ok(())
}

/// Chains for `f` and `f(-X)`, reused across the steps of one decision.
pub struct RealRootLocator {
    pos: IntPolynomial,
    neg: IntPolynomial,
    pos_chain: SturmChain,
    neg_chain: SturmChain,
    pos_sqf: IntPolynomial,
    neg_sqf: IntPolynomial,
    c1: BigRational,
    c2: BigRational,
}

impl RealRootLocator {
    /// Requires `f(0) != 0` and `deg f >= 1`.
    pub fn new(f: &IntPolynomial) -> Result<Self, Error> {
        let (mut c1, mut c2) = cauchy_bounds(f)?;
        let pos = f.clone();
        let neg = f.negate_argument();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        // the Cauchy bounds are strict, so these loops never run for valid input
        while pos.sign_at(&c2) == Ordering::Equal || neg.sign_at(&c2) == Ordering::Equal {
            c2 += BigRational::one();
        }
        while pos.sign_at(&c1) == Ordering::Equal || neg.sign_at(&c1) == Ordering::Equal {
            c1 = &c1 * &half;
        }
        let pos_chain = SturmChain::build(&pos)?;
        let neg_chain = SturmChain::build(&neg)?;
        let pos_sqf = pos_chain.squarefree_part();
        let neg_sqf = neg_chain.squarefree_part();
        Ok(RealRootLocator {
            pos,
            neg,
            pos_chain,
            neg_chain,
            pos_sqf,
            neg_sqf,
            c1,
            c2,
        })
    }

    pub fn cauchy(&self) -> (&BigRational, &BigRational) {
        (&self.c1, &self.c2)
    }

    pub fn chain(&self, side: Side) -> &SturmChain {
        match side {
            Side::Positive => &self.pos_chain,
            Side::Negative => &self.neg_chain,
        }
    }

    fn bisector(&self, side: Side) -> Bisector<'_> {
        match side {
            Side::Positive => Bisector {
                f: &self.pos,
                chain: &self.pos_chain,
                squarefree: &self.pos_sqf,
            },
            Side::Negative => Bisector {
                f: &self.neg,
                chain: &self.neg_chain,
                squarefree: &self.neg_sqf,
            },
        }
    }

    /// Brackets the real root of largest modulus. The positive side is
    /// searched on `(C1, C2)`; the negative side only beyond the positive
    /// bracket. `None` if `f` has no real roots.
    pub fn locate_extreme(&self, target: &WidthTarget) -> Result<Option<Annulus>, Error> {
        if !target.value().is_positive() {
            return Err(Error::NonPositiveWidth);
        }
        let pos = self
            .bisector(Side::Positive)
            .locate_largest(self.c1.clone(), self.c2.clone(), target);
        let neg_start = match &pos {
            None => self.c1.clone(),
            Some((r1, big_r1)) => {
                if self.neg.sign_at(big_r1) != Ordering::Equal {
                    big_r1.clone()
                } else {
                    // -R1 is a root and beats every positive root; any start
                    // below R1 keeps it inside the negative search
                    let half = BigRational::new(BigInt::one(), BigInt::from(2));
                    let mut start = (r1 + big_r1) * &half;
                    while self.neg.sign_at(&start) == Ordering::Equal
                        || self.pos.sign_at(&start) == Ordering::Equal
                    {
                        start = (&start + big_r1) * &half;
                    }
                    start
                }
            }
        };
        let neg = if neg_start < self.c2 {
            self.bisector(Side::Negative)
                .locate_largest(neg_start, self.c2.clone(), target)
        } else {
            None
        };
        Ok(match (neg, pos) {
            (Some((r, big_r)), _) => Some(Annulus {
                inner: r,
                outer: big_r,
                side: Side::Negative,
            }),
            (None, Some((r, big_r))) => Some(Annulus {
                inner: r,
                outer: big_r,
                side: Side::Positive,
            }),
            (None, None) => None,
        })
    }

    fn side_poly(&self, side: Side) -> &IntPolynomial {
        match side {
            Side::Positive => &self.pos,
            Side::Negative => &self.neg,
        }
    }

    fn vanishes_either(&self, x: &BigRational) -> bool {
        self.pos.sign_at(x) == Ordering::Equal || self.neg.sign_at(x) == Ordering::Equal
    }

    /// Narrows a bracket to a tighter width around the largest real
    /// modulus inside it.
    ///
    /// A positive bracket can also hold the modulus of a negative root (the
    /// negative search only starts past the positive bracket), so when the
    /// other side has roots in the bracket both sides are bisected together.
    pub fn narrow(&self, annulus: &Annulus, target: &WidthTarget) -> Annulus {
        if target.is_met_by(&annulus.width()) {
            return annulus.clone();
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let other = annulus.side.other();
        let other_poly = self.side_poly(other);
        debug_assert!(other_poly.sign_at(&annulus.outer) != Ordering::Equal);
        // step below the inner radius if the other side vanishes there
        let mut lo = annulus.inner.clone();
        let mut step = std::cmp::min(annulus.width(), annulus.inner.clone()) * &half;
        while self.vanishes_either(&lo) {
            lo = &annulus.inner - &step;
            step = &step * &half;
        }
        let other_chain = self.chain(other);
        let other_roots =
            other_chain.sign_changes_at(&lo) - other_chain.sign_changes_at(&annulus.outer);
        if other_roots == 0 {
            let (r, big_r) = self
                .bisector(annulus.side)
                .locate_largest(annulus.inner.clone(), annulus.outer.clone(), target)
                .expect("bracket holds a root");
            return Annulus {
                inner: r,
                outer: big_r,
                side: annulus.side,
            };
        }
        let (a, b) = self.bisect_both(lo, annulus.outer.clone(), target);
        let side_count = |side: Side| {
            let chain = self.chain(side);
            chain.sign_changes_at(&a) - chain.sign_changes_at(&b)
        };
        let side = if side_count(annulus.side) > 0 {
            annulus.side
        } else {
            debug_assert!(side_count(other) > 0);
            other
        };
        Annulus {
            inner: a,
            outer: b,
            side,
        }
    }

    /// Bisection on the largest real modulus, counting both half-lines.
    /// Neither side may vanish at `a` or `b`, and `(a, b)` must hold a root.
    fn bisect_both(
        &self,
        a: BigRational,
        b: BigRational,
        target: &WidthTarget,
    ) -> (BigRational, BigRational) {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let vanishes = |num: &BigInt, den: &BigInt| {
            sign_of(&homogeneous_horner(self.pos.coeffs(), num, den)) == Ordering::Equal
                || sign_of(&homogeneous_horner(self.neg.coeffs(), num, den)) == Ordering::Equal
        };
        let mut span = Span::new(&a, &b);
        while target.keep_going_span(&span) {
            let (mid, den) = span.midpoint();
            if vanishes(&mid, &den) {
                let c = BigRational::new(mid, den);
                let mut offset = target.value() * &half;
                let mut next = &c - &offset;
                while !next.is_positive() || self.vanishes_either(&next) {
                    offset = &offset * &half;
                    next = &c - &offset;
                }
                span = Span::new(&next, &span.upper());
                continue;
            }
            let roots_above = |chain: &SturmChain| {
                chain.sign_changes_at_ratio(&mid, &den)
                    - chain.sign_changes_at_ratio(&(&span.hi << 1), &den)
            };
            if roots_above(&self.pos_chain) + roots_above(&self.neg_chain) > 0 {
                span.take_upper_half(mid, den);
            } else {
                span.take_lower_half(mid, den);
            }
        }
        span.into_endpoints()
    }
}

/// Brackets the real root of largest modulus of `f` (requires `f(0) != 0`).
pub fn locate_extreme_real_root(
    f: &IntPolynomial,
    target: &WidthTarget,
) -> Result<Option<Annulus>, Error> {
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    RealRootLocator::new(f)?.locate_extreme(target)
}
