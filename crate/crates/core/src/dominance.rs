//! Deciding whether an integer polynomial is dominant.
//!
//! Three exact algorithms share one shape: bracket the real root of largest
//! modulus with Sturm bisection, rescale so that the bracket edge becomes
//! the unit circle, and count roots outside it with the Bistritz test.
//! [`decide`] strips zero roots, tries the closed form for quadratics and
//! the coefficient-pattern filters, then dispatches on irreducibility.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bistritz::{count_outside_int, StabilityReport};
use crate::bounds::{d1_irreducible_practical, d1_practical, d2_practical};
use crate::error::Error;
use crate::factor::{is_irreducible, FactorWitness};
use crate::poly::IntPolynomial;
use crate::sturm::{Annulus, RealRootLocator, Side, WidthTarget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Constant or linear after stripping zero roots.
    Trivial,
    Quadratic,
    FamilyFilter,
    /// Bisection to the full separation width, then one stability count.
    Simple,
    /// Outer-radius check first, then narrowing inside the bracket.
    Efficient,
    /// Narrowing to the wider gap available for irreducible inputs.
    Irreducible,
}

/// Why a verdict came out the way it did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Detail {
    Constant,
    Linear,
    Discriminant {
        #[serde(serialize_with = "crate::exact::bigint_string")]
        discriminant: BigInt,
        middle_is_zero: bool,
    },
    Filter { family: Family },
    NoRealRoot,
    PowerOfX { exponent_gcd: usize },
    /// `f(RX)` is not stable: some root has modulus at least `R`.
    NotStableAtOuter { report: StabilityReport },
    /// Bistritz report at the final bracket.
    Final { report: StabilityReport },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Strict sign pattern on an irreducible polynomial: dominant.
    SignPattern,
    /// Large second coefficient: dominant.
    LargeSecondCoefficient,
    /// Alternating-pair pattern: non-dominant.
    PairedNonDominant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceVerdict {
    pub dominant: bool,
    pub method: Method,
    /// Bracket around the dominant root's modulus when `dominant`.
    pub witness: Option<Annulus>,
    pub detail: Detail,
    /// Zero roots removed before deciding.
    pub zero_roots: usize,
}

impl DominanceVerdict {
    fn new(dominant: bool, method: Method, witness: Option<Annulus>, detail: Detail) -> Self {
        DominanceVerdict {
            dominant,
            method,
            witness,
            detail,
            zero_roots: 0,
        }
    }

    fn rejected(method: Method, detail: Detail) -> Self {
        Self::new(false, method, None, detail)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algorithm {
    /// Quadratic closed form, filters, then dispatch on irreducibility.
    #[default]
    Auto,
    Simple,
    Efficient,
    Irreducible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub algorithm: Algorithm,
    pub filters: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            algorithm: Algorithm::Auto,
            filters: true,
        }
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `b != 0` and `b^2 - 4ac > 0`.
pub fn quick_quadratic(f: &IntPolynomial) -> Result<bool, Error> {
    if f.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: f.degree(),
        });
    }
    let c = f.coeffs();
    let disc = &c[1] * &c[1] - BigInt::from(4) * &c[0] * &c[2];
    Ok(!c[1].is_zero() && disc.is_positive())
}

/// Closed-form verdict with a bracket around the larger root modulus
/// `(|b| + sqrt(disc)) / 2|a|`.
fn quadratic_verdict(f: &IntPolynomial) -> DominanceVerdict {
    let c = f.coeffs();
    let (a, b, cc) = (&c[0], &c[1], &c[2]);
    let disc = b * b - BigInt::from(4) * a * cc;
    let detail = Detail::Discriminant {
        discriminant: disc.clone(),
        middle_is_zero: b.is_zero(),
    };
    if b.is_zero() || !disc.is_positive() {
        return DominanceVerdict::rejected(Method::Quadratic, detail);
    }
    // sqrt(disc) in (lo, hi) with lo >= 1/2, which keeps the smaller
    // modulus (|b| - sqrt(disc)) / 2|a| below the bracket
    let s = disc.sqrt();
    let (lo, hi) = if &s * &s == disc {
        let s = BigRational::from_integer(s);
        (&s - half(), &s + half())
    } else {
        let s = BigRational::from_integer(s);
        (s.clone(), s + BigRational::one())
    };
    let two_a = BigRational::from_integer(BigInt::from(2) * a.abs());
    let b_abs = BigRational::from_integer(b.abs());
    // the larger root has the sign opposite to b/a
    let side = if (b.is_positive()) == (a.is_positive()) {
        Side::Negative
    } else {
        Side::Positive
    };
    let witness = Annulus {
        inner: (&b_abs + lo) / &two_a,
        outer: (&b_abs + hi) / &two_a,
        side,
    };
    DominanceVerdict::new(true, Method::Quadratic, Some(witness), detail)
}

/// `a1^4 > n^4 (n+1) a0^2 H^2` implies dominant.
pub fn filter_family2(f: &IntPolynomial) -> Option<bool> {
    let n = f.degree();
    if n < 2 {
        return None;
    }
    let c = f.coeffs();
    let h = f.height();
    let a1_sq = &c[1] * &c[1];
    let lhs = &a1_sq * &a1_sq;
    let n_big = BigInt::from(n);
    let n4 = num_traits::pow(n_big, 4);
    let rhs = n4 * BigInt::from(n + 1) * &c[0] * &c[0] * &h * &h;
    (lhs > rhs).then_some(true)
}

/// Lead of one sign, every other coefficient strictly of the other sign,
/// and `f` irreducible: dominant.
pub fn filter_family1(f: &IntPolynomial, irreducible: bool) -> Option<bool> {
    if !irreducible || f.degree() < 2 {
        return None;
    }
    let c = f.coeffs();
    let lead_positive = c[0].is_positive();
    let tail_opposite = c[1..]
        .iter()
        .all(|x| if lead_positive { x.is_negative() } else { x.is_positive() });
    tail_opposite.then_some(true)
}

/// `a0 X^n - a1 X^(n-1) + a2 X^(n-2) + ... + an` with every `ai > 0`,
/// `a0 >= a1`, consecutive pairs `a_{2j} >= a_{2j+1}` and `an >= a0`.
fn paired_pattern(c: &[BigInt]) -> bool {
    let n = c.len() - 1;
    if !c[0].is_positive() || !c[1].is_negative() || c[2..].iter().any(|x| !x.is_positive()) {
        return false;
    }
    let a: Vec<BigInt> = c.iter().map(|x| x.abs()).collect();
    // the even case pairs up to (a_{n-2}, a_{n-1}); the odd case up to (a_{n-1}, a_n)
    let last_pair_start = if n.is_multiple_of(2) { n - 2 } else { n - 1 };
    let pairs_hold = (0..=last_pair_start).step_by(2).all(|i| a[i] >= a[i + 1]);
    pairs_hold && a[n] >= a[0]
}

/// Pattern on `f`, `-f`, `f(-X)` or `-f(-X)` implies non-dominant.
pub fn filter_family56(f: &IntPolynomial) -> Option<bool> {
    if f.degree() < 2 {
        return None;
    }
    let reflected = f.negate_argument();
    let hit = [f.negate(), reflected.negate(), f.clone(), reflected]
        .iter()
        .any(|g| paired_pattern(g.coeffs()));
    hit.then_some(false)
}

/// Shared preconditions: `deg f >= 2` and `f(0) != 0`.
fn check_input(f: &IntPolynomial) -> Result<(), Error> {
    if f.degree() < 2 {
        return Err(Error::DegreeTooSmall {
            required: 2,
            found: f.degree(),
        });
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(())
}

/// Bistritz report for `f(sX)`.
fn report_at(f: &IntPolynomial, s: &BigRational) -> Result<StabilityReport, Error> {
    count_outside_int(&f.scale_argument_cleared(s)?)
}

fn separation_violated(stage: &str, annulus: &Annulus) -> Error {
    Error::SeparationViolated(format!(
        "{stage}: f vanishes on the rescaled unit circle at {}..{}",
        annulus.inner, annulus.outer
    ))
}

/// Bracket to `d1/2`, then one root outside the inner radius means dominant.
pub fn is_dominant_simple(f: &IntPolynomial) -> Result<DominanceVerdict, Error> {
    check_input(f)?;
    let locator = RealRootLocator::new(f)?;
    let target = WidthTarget::AtMost(d1_practical(f) * half());
    let Some(annulus) = locator.locate_extreme(&target)? else {
        return Ok(DominanceVerdict::rejected(Method::Simple, Detail::NoRealRoot));
    };
    final_count(f, annulus, Method::Simple)
}

fn final_count(f: &IntPolynomial, annulus: Annulus, method: Method) -> Result<DominanceVerdict, Error> {
    let report = report_at(f, &annulus.inner)?;
    let dominant = match report {
        StabilityReport::Unstable { nu, .. } => nu == 1,
        StabilityReport::Stable | StabilityReport::FirstTypeSingular { .. } => false,
        StabilityReport::OnePointFail => return Err(separation_violated("inner radius", &annulus)),
    };
    let witness = dominant.then_some(annulus);
    Ok(DominanceVerdict::new(dominant, method, witness, Detail::Final { report }))
}

/// Brackets to `d2` and rejects early unless every root lies inside the
/// outer radius, then narrows to `d1/2` and counts as the simple test does.
pub fn is_dominant(f: &IntPolynomial) -> Result<DominanceVerdict, Error> {
    check_input(f)?;
    let locator = RealRootLocator::new(f)?;
    let Some(annulus) = locator.locate_extreme(&WidthTarget::AtMost(d2_practical(f)))? else {
        return Ok(DominanceVerdict::rejected(Method::Efficient, Detail::NoRealRoot));
    };
    if let Some(rejection) = outer_check(f, &annulus, Method::Efficient)? {
        return Ok(rejection);
    }
    let narrow = locator.narrow(&annulus, &WidthTarget::AtMost(d1_practical(f) * half()));
    final_count(f, narrow, Method::Efficient)
}

/// `Some(rejection)` unless `f(RX)` is stable.
fn outer_check(
    f: &IntPolynomial,
    annulus: &Annulus,
    method: Method,
) -> Result<Option<DominanceVerdict>, Error> {
    let report = report_at(f, &annulus.outer)?;
    match report {
        StabilityReport::Stable => Ok(None),
        StabilityReport::OnePointFail => Err(separation_violated("outer radius", annulus)),
        report => Ok(Some(DominanceVerdict::rejected(
            method,
            Detail::NotStableAtOuter { report },
        ))),
    }
}

/// For irreducible `f`: no `X^m` form, then the bracket narrowed below the
/// irreducible separation constant must have every root inside its outer
/// radius.
pub fn is_dominant_irreducible(f: &IntPolynomial) -> Result<DominanceVerdict, Error> {
    check_input(f)?;
    let m = f.exponent_gcd();
    if m >= 2 {
        return Ok(DominanceVerdict::rejected(
            Method::Irreducible,
            Detail::PowerOfX { exponent_gcd: m },
        ));
    }
    let locator = RealRootLocator::new(f)?;
    let Some(annulus) = locator.locate_extreme(&WidthTarget::AtMost(d2_practical(f)))? else {
        return Ok(DominanceVerdict::rejected(Method::Irreducible, Detail::NoRealRoot));
    };
    if let Some(rejection) = outer_check(f, &annulus, Method::Irreducible)? {
        return Ok(rejection);
    }
    let gap = if f.degree() >= 3 {
        d1_irreducible_practical(f)?
    } else {
        d1_practical(f)
    };
    let narrow = locator.narrow(&annulus, &WidthTarget::Below(gap));
    let report = report_at(f, &narrow.outer)?;
    let dominant = match report {
        StabilityReport::Stable => true,
        StabilityReport::OnePointFail => return Err(separation_violated("outer radius", &narrow)),
        _ => false,
    };
    let witness = dominant.then_some(narrow);
    Ok(DominanceVerdict::new(dominant, Method::Irreducible, witness, Detail::Final { report }))
}

/// Decides dominance of any nonzero integer polynomial.
pub fn decide(f: &IntPolynomial) -> Result<DominanceVerdict, Error> {
    decide_with(f, &DecideOptions::default())
}

pub fn decide_with(f: &IntPolynomial, options: &DecideOptions) -> Result<DominanceVerdict, Error> {
    decide_reporting(f, options).map(|(verdict, _)| verdict)
}

/// As [`decide_with`], also returning whether `f` is irreducible over the
/// rationals when the decision had to find out.
pub fn decide_reporting(
    f: &IntPolynomial,
    options: &DecideOptions,
) -> Result<(DominanceVerdict, Option<bool>), Error> {
    let (stripped, zero_roots) = f.strip_zero_roots();
    let g = stripped.primitive_part();
    let mut irreducible = None;
    let mut verdict = decide_stripped(&g, zero_roots, options, &mut irreducible)?;
    verdict.zero_roots = zero_roots;
    if zero_roots > 0 && f.degree() >= 2 {
        irreducible = Some(false);
    }
    Ok((verdict, irreducible))
}

fn decide_stripped(
    g: &IntPolynomial,
    zero_roots: usize,
    options: &DecideOptions,
    irreducible_out: &mut Option<bool>,
) -> Result<DominanceVerdict, Error> {
    match g.degree() {
        0 => return Ok(DominanceVerdict::rejected(Method::Trivial, Detail::Constant)),
        1 => {
            let root = BigRational::new(-g.constant_term().clone(), g.leading().clone());
            let modulus = root.abs();
            let witness = Annulus {
                inner: &modulus * half(),
                outer: &modulus * BigRational::from_integer(BigInt::from(2)),
                side: if root.is_positive() { Side::Positive } else { Side::Negative },
            };
            return Ok(DominanceVerdict::new(true, Method::Trivial, Some(witness), Detail::Linear));
        }
        _ => {}
    }
    match options.algorithm {
        Algorithm::Simple => return is_dominant_simple(g),
        Algorithm::Efficient => return is_dominant(g),
        Algorithm::Irreducible => {
            if zero_roots > 0 {
                return Err(Error::Reducible("X".to_string()));
            }
            if let FactorWitness::Reducible(factor) = is_irreducible(g)? {
                return Err(Error::Reducible(factor.to_string()));
            }
            *irreducible_out = Some(true);
            return is_dominant_irreducible(g);
        }
        Algorithm::Auto => {}
    }
    if g.degree() == 2 {
        return Ok(quadratic_verdict(g));
    }
    if options.filters {
        if let Some(verdict) = pattern_filters(g) {
            return Ok(verdict);
        }
    }
    let irreducible = zero_roots == 0 && is_irreducible(g)?.is_irreducible();
    *irreducible_out = Some(irreducible);
    if !irreducible {
        return is_dominant(g);
    }
    if options.filters && filter_family1(g, true).is_some() {
        return Ok(filtered(true, Family::SignPattern));
    }
    is_dominant_irreducible(g)
}

fn filtered(dominant: bool, family: Family) -> DominanceVerdict {
    DominanceVerdict::new(dominant, Method::FamilyFilter, None, Detail::Filter { family })
}

fn pattern_filters(g: &IntPolynomial) -> Option<DominanceVerdict> {
    if filter_family2(g).is_some() {
        return Some(filtered(true, Family::LargeSecondCoefficient));
    }
    if filter_family56(g).is_some() {
        return Some(filtered(false, Family::PairedNonDominant));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn no_filters(algorithm: Algorithm) -> DecideOptions {
        DecideOptions {
            algorithm,
            filters: false,
        }
    }

    #[test]
    fn quadratic_examples() {
        assert!(quick_quadratic(&p(&[1, -1, -1])).unwrap());
        assert!(!quick_quadratic(&p(&[1, 0, 1])).unwrap());
        assert!(!quick_quadratic(&p(&[1, -1, 2])).unwrap());
        assert!(quick_quadratic(&p(&[1, 0, 0, 1])).is_err());
    }

    #[test]
    fn quadratic_witness_brackets_larger_root() {
        // X^2 - X - 1: phi = 1.618..
        let v = decide(&p(&[1, -1, -1])).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.side, Side::Positive);
        assert!(w.inner < q(1618, 1000) && q(1619, 1000) < w.outer);
        assert!(w.inner > q(618, 1000));
        // 2X^2 - 5X + 2: roots 2 and 1/2, square discriminant
        let w = decide(&p(&[2, -5, 2])).unwrap().witness.unwrap();
        assert!(w.inner < q(2, 1) && q(2, 1) < w.outer && q(1, 2) < w.inner);
        // X^2 + 3X + 1: larger root is negative
        let w = decide(&p(&[1, 3, 1])).unwrap().witness.unwrap();
        assert_eq!(w.side, Side::Negative);
    }

    #[test]
    fn family2_examples() {
        assert_eq!(filter_family2(&p(&[1, 10, 1])), Some(true));
        assert_eq!(filter_family2(&p(&[1, 1, 1])), None);
        assert_eq!(filter_family2(&p(&[1, 100, 5, 7])), Some(true));
    }

    #[test]
    fn family1_examples() {
        assert_eq!(filter_family1(&p(&[1, -1, -1, -1]), true), Some(true));
        assert_eq!(filter_family1(&p(&[1, -1, -1]), true), Some(true));
        assert_eq!(filter_family1(&p(&[1, 1, 1]), true), None);
        assert_eq!(filter_family1(&p(&[1, -1, -1, -1]), false), None);
        assert_eq!(filter_family1(&p(&[-1, 1, 1, 1]), true), Some(true));
    }

    #[test]
    fn family56_examples() {
        assert_eq!(filter_family56(&p(&[1, -1, 2])), Some(false));
        assert_eq!(filter_family56(&p(&[1, -1, 3, 2])), Some(false));
        assert_eq!(filter_family56(&p(&[1, -1, -1])), None);
        // the images under X -> -X and negation are caught too
        assert_eq!(filter_family56(&p(&[-1, -1, -2])), Some(false));
        assert_eq!(filter_family56(&p(&[1, 1, 3, -2])), Some(false));
    }

    #[test]
    fn simple_examples() {
        assert!(is_dominant_simple(&p(&[1, -1, -1])).unwrap().dominant);
        let v = is_dominant_simple(&p(&[1, 1, 1, 1, 1])).unwrap();
        assert!(!v.dominant);
        assert_eq!(v.detail, Detail::NoRealRoot);
        assert!(!is_dominant_simple(&p(&[1, 0, -1])).unwrap().dominant);
    }

    #[test]
    fn efficient_examples() {
        let v = is_dominant(&p(&[1, 0, -5, 1])).unwrap();
        assert!(v.dominant);
        let w = v.witness.unwrap();
        assert_eq!(w.side, Side::Negative);
        assert!(q(2330, 1000) < w.inner && w.outer < q(2331, 1000));
        let reflected = p(&[1, 0, -5, 1]).negate_argument();
        assert_ne!(reflected.sign_at(&w.inner), reflected.sign_at(&w.outer));
        assert!(!is_dominant(&p(&[1, 2, 2])).unwrap().dominant);
        let v = decide_with(&p(&[1, -2, 0, 0]), &no_filters(Algorithm::Efficient)).unwrap();
        assert!(v.dominant);
        assert_eq!(v.zero_roots, 2);
    }

    #[test]
    fn irreducible_examples() {
        let v = is_dominant_irreducible(&p(&[1, 0, 3, 0, 1])).unwrap();
        assert_eq!(v.detail, Detail::PowerOfX { exponent_gcd: 2 });
        assert!(is_dominant_irreducible(&p(&[1, -1, -1, -1])).unwrap().dominant);
        assert!(!is_dominant_irreducible(&p(&[1, 1, 1, 1, 1])).unwrap().dominant);
    }

    #[test]
    fn decide_examples() {
        assert!(!decide(&p(&[1, 0, -2])).unwrap().dominant);
        assert!(decide(&p(&[1, -3, 2])).unwrap().dominant);
        assert!(decide(&p(&[2, -5, 2])).unwrap().dominant);
        assert!(!decide(&p(&[5])).unwrap().dominant);
        assert!(!decide(&p(&[1, 0, 0])).unwrap().dominant);
        assert!(decide(&p(&[3, 6, 0])).unwrap().dominant);
    }

    #[test]
    fn forced_irreducible_rejects_reducible_input() {
        let err = decide_with(&p(&[1, 0, -1]), &no_filters(Algorithm::Irreducible)).unwrap_err();
        assert!(matches!(err, Error::Reducible(_)));
    }

    #[test]
    fn algorithms_agree_on_small_cubics() {
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    for lead in [1i64, 2] {
                        if c == 0 {
                            continue;
                        }
                        let f = p(&[lead, a, b, c]);
                        let simple = is_dominant_simple(&f).unwrap().dominant;
                        let efficient = is_dominant(&f).unwrap().dominant;
                        let auto = decide(&f).unwrap().dominant;
                        assert_eq!(simple, efficient, "{f}");
                        assert_eq!(simple, auto, "{f}");
                        if is_irreducible(&f.primitive_part()).unwrap().is_irreducible() {
                            assert_eq!(simple, is_dominant_irreducible(&f).unwrap().dominant, "{f}");
                        }
                    }
                }
            }
        }
    }
}
