//! Numeric root finder with certified error disks, used as independent
//! ground truth in tests and diagnostics. Nothing in the decision path
//! calls into this module.
//!
//! Roots of each squarefree factor are refined by Aberth iteration in
//! fixed-point big-integer arithmetic. Certification is exact: for
//! approximations `z_i` of the roots of a squarefree `p` of degree `k`, the
//! disks `|z - z_i| <= k |W_i|` with Weierstrass corrections
//! `W_i = p(z_i) / (lc prod_{j != i} (z_i - z_j))` contain all roots, and
//! when they are pairwise disjoint each holds exactly one. Every quantity
//! in that test is computed with integers, so the radii are true upper
//! bounds.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::d1_practical;
use crate::error::Error;
use crate::exact::serde_rational;
use crate::poly::{IntPolynomial, RatPolynomial};

/// Precision cap for escalation, in bits.
pub const MAX_PRECISION_BITS: u64 = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootKind {
    Real,
    NonReal,
    /// Neither realness certificate applied at this precision.
    Unresolved,
}

/// One root: dyadic centre, multiplicity and a certified radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericRoot {
    #[serde(with = "serde_rational")]
    pub re: BigRational,
    #[serde(with = "serde_rational")]
    pub im: BigRational,
    pub multiplicity: usize,
    /// The true root lies within this distance of `re + i im`.
    #[serde(with = "serde_rational")]
    pub radius: BigRational,
    pub kind: RootKind,
    /// Certified bounds on the root's modulus.
    #[serde(with = "serde_rational")]
    pub modulus_lo: BigRational,
    #[serde(with = "serde_rational")]
    pub modulus_hi: BigRational,
}

impl NumericRoot {
    pub fn approx(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn modulus_width(&self) -> BigRational {
        &self.modulus_hi - &self.modulus_lo
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootCluster {
    pub precision_bits: u64,
    pub roots: Vec<NumericRoot>,
}

impl RootCluster {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn real_roots(&self) -> impl Iterator<Item = &NumericRoot> {
        self.roots.iter().filter(|r| r.kind == RootKind::Real)
    }

    /// Distinct real roots; `None` if some root is unresolved.
    pub fn distinct_real_count(&self) -> Option<usize> {
        if self.roots.iter().any(|r| r.kind == RootKind::Unresolved) {
            return None;
        }
        Some(self.real_roots().count())
    }

    /// Roots strictly outside the unit circle, with multiplicity; `None`
    /// when some modulus interval contains 1.
    pub fn count_outside_unit(&self) -> Option<usize> {
        let one = BigRational::one();
        let mut count = 0;
        for r in &self.roots {
            if r.modulus_lo > one {
                count += r.multiplicity;
            } else if r.modulus_hi >= one {
                return None;
            }
        }
        Some(count)
    }

    /// Index of the root with the largest lower modulus bound.
    fn top(&self) -> Option<usize> {
        (0..self.roots.len()).max_by(|&a, &b| self.roots[a].modulus_lo.cmp(&self.roots[b].modulus_lo))
    }
}

// ---------------------------------------------------------------------------
// exact helpers over the rationals

fn rat_rem_quot(a: &RatPolynomial, b: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
    let b = b.trimmed();
    let db = b.degree().expect("nonzero divisor");
    let lead = b.leading().unwrap().clone();
    let mut rem: Vec<BigRational> = a.trimmed().coeffs().to_vec();
    if rem.len() < db + 1 || a.is_zero() {
        return (RatPolynomial::new(rem), RatPolynomial::zero());
    }
    let steps = rem.len() - db;
    let mut quot = Vec::with_capacity(steps);
    for i in 0..steps {
        let q = &rem[i] / &lead;
        for (j, c) in b.coeffs().iter().enumerate() {
            rem[i + j] -= &q * c;
        }
        quot.push(q);
    }
    let rem = RatPolynomial::new(rem[steps..].to_vec()).trimmed();
    (rem, RatPolynomial::new(quot).trimmed())
}

fn rat_gcd(a: &RatPolynomial, b: &RatPolynomial) -> RatPolynomial {
    let mut x = a.trimmed();
    let mut y = b.trimmed();
    while !y.is_zero() {
        let (r, _) = rat_rem_quot(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

fn monic(a: &RatPolynomial) -> RatPolynomial {
    let a = a.trimmed();
    match a.leading() {
        Some(l) if !l.is_zero() => {
            let l = l.clone();
            RatPolynomial::new(a.coeffs().iter().map(|c| c / &l).collect())
        }
        _ => a,
    }
}

fn exact_div(a: &RatPolynomial, b: &RatPolynomial) -> RatPolynomial {
    let (r, q) = rat_rem_quot(a, b);
    debug_assert!(r.is_zero());
    q
}

/// Whether some root `a` of `f` has `1/a` as a root too, which covers every
/// root on the unit circle. Exact: tests `gcd(f, X^n f(1/X))`.
pub fn has_reciprocal_pair(f: &IntPolynomial) -> bool {
    let f = f.to_rational();
    rat_gcd(&f, &f.reciprocal()).degree().unwrap_or(0) > 0
}

/// Yun's squarefree decomposition: `(factor, multiplicity)` pairs whose
/// product of powers is `f` up to a constant.
pub fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let f = f.to_rational();
    let df = f.derivative();
    let mut out = Vec::new();
    if df.is_zero() {
        return out;
    }
    let a0 = rat_gcd(&f, &df);
    let mut b = exact_div(&f, &a0);
    let c = exact_div(&df, &a0);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = rat_gcd(&b, &d);
        let next_b = exact_div(&b, &a);
        let next_c = exact_div(&d, &a);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.to_primitive_int().expect("nonzero"), i));
        }
        d = &next_c - &next_b.derivative();
        b = next_b;
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// fixed-point complex arithmetic, values scaled by 2^prec

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cx {
    re: BigInt,
    im: BigInt,
}

impl Cx {
    fn zero() -> Self {
        Cx {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn norm_sq(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn conj(&self) -> Cx {
        Cx {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Exact product, no rescaling.
    fn mul_exact(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

struct Fixed {
    prec: usize,
}

impl Fixed {
    fn mul(&self, a: &Cx, b: &Cx) -> Cx {
        let p = a.mul_exact(b);
        Cx {
            re: p.re >> self.prec,
            im: p.im >> self.prec,
        }
    }

    fn div(&self, a: &Cx, b: &Cx) -> Option<Cx> {
        let n = b.norm_sq();
        if n.is_zero() {
            return None;
        }
        let num = a.mul_exact(&b.conj());
        Some(Cx {
            re: (num.re << self.prec) / &n,
            im: (num.im << self.prec) / &n,
        })
    }

    fn one(&self) -> Cx {
        Cx {
            re: BigInt::one() << self.prec,
            im: BigInt::zero(),
        }
    }

    fn complex_from_f64(&self, re: f64, im: f64) -> Cx {
        let conv = |x: f64| -> BigInt {
            // exact dyadic value of x, then rescale
            let (m, e) = decompose(x);
            let shift = e + self.prec as i64;
            if shift >= 0 {
                m << shift as usize
            } else {
                m >> (-shift) as usize
            }
        };
        Cx {
            re: conv(re),
            im: conv(im),
        }
    }

    /// `p(z)` and `p'(z)` by Horner, coefficients descending.
    fn eval(&self, coeffs: &[BigInt], z: &Cx) -> (Cx, Cx) {
        let mut p = Cx::zero();
        let mut dp = Cx::zero();
        for c in coeffs {
            dp = self.mul(&dp, z);
            dp.re += &p.re;
            dp.im += &p.im;
            p = self.mul(&p, z);
            p.re += c << self.prec;
        }
        (p, dp)
    }
}

/// `x = m * 2^e` with integer `m`.
fn decompose(x: f64) -> (BigInt, i64) {
    if x == 0.0 || !x.is_finite() {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & 0xf_ffff_ffff_ffff;
    let (mant, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1 << 52), exp - 1075)
    };
    (BigInt::from(sign) * BigInt::from(mant), e)
}

// ---------------------------------------------------------------------------
// iteration

#[derive(Clone, Copy, Debug)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64 { re: self.re + o.re, im: self.im + o.im }
    }
    fn sub(self, o: C64) -> C64 {
        C64 { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(self, o: C64) -> C64 {
        C64 {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
    fn div(self, o: C64) -> C64 {
        let n = o.re * o.re + o.im * o.im;
        C64 {
            re: (self.re * o.re + self.im * o.im) / n,
            im: (self.im * o.re - self.re * o.im) / n,
        }
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

fn initial_guesses(coeffs: &[f64]) -> Vec<C64> {
    let k = coeffs.len() - 1;
    let lead = coeffs[0].abs();
    let bound = 1.0 + coeffs[1..].iter().map(|c| c.abs()).fold(0.0, f64::max) / lead;
    let radius = bound.min(1e6) * 0.5 + 0.1;
    (0..k)
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / k as f64 + 0.4;
            C64 { re: radius * t.cos(), im: radius * t.sin() }
        })
        .collect()
}

/// Aberth iteration in doubles, used only as a starting point.
fn aberth_f64(coeffs: &[f64]) -> Vec<C64> {
    let k = coeffs.len() - 1;
    let mut z = initial_guesses(coeffs);
    for _ in 0..500 {
        let mut biggest: f64 = 0.0;
        for i in 0..k {
            let (mut p, mut dp) = (C64 { re: 0.0, im: 0.0 }, C64 { re: 0.0, im: 0.0 });
            for &c in coeffs {
                dp = dp.mul(z[i]).add(p);
                p = p.mul(z[i]).add(C64 { re: c, im: 0.0 });
            }
            let ratio = p.div(dp);
            let mut s = C64 { re: 0.0, im: 0.0 };
            for j in 0..k {
                if j != i {
                    s = s.add(C64 { re: 1.0, im: 0.0 }.div(z[i].sub(z[j])));
                }
            }
            let step = ratio.div(C64 { re: 1.0, im: 0.0 }.sub(ratio.mul(s)));
            if step.finite() {
                z[i] = z[i].sub(step);
                biggest = biggest.max(step.abs() / (1.0 + z[i].abs()));
            }
        }
        if biggest < 1e-15 {
            break;
        }
    }
    z
}

fn aberth_fixed(fx: &Fixed, coeffs: &[BigInt], z: &mut [Cx], max_iter: usize) {
    let k = z.len();
    let one = fx.one();
    let tiny = BigInt::one() << (fx.prec / 2).max(8);
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..k {
            let (p, dp) = fx.eval(coeffs, &z[i]);
            let Some(ratio) = fx.div(&p, &dp) else {
                continue;
            };
            let mut s = Cx::zero();
            for j in 0..k {
                if j != i {
                    if let Some(t) = fx.div(&one, &z[i].sub(&z[j])) {
                        s.re += t.re;
                        s.im += t.im;
                    }
                }
            }
            let denom = one.sub(&fx.mul(&ratio, &s));
            let Some(step) = fx.div(&ratio, &denom) else {
                continue;
            };
            if step.re.abs() > tiny || step.im.abs() > tiny {
                converged = false;
            }
            z[i] = z[i].sub(&step);
        }
        if converged {
            // quadratic-or-better convergence: a few more sweeps finish it
            for _ in 0..3 {
                for zi in z.iter_mut() {
                    let (p, dp) = fx.eval(coeffs, zi);
                    if let Some(step) = fx.div(&p, &dp) {
                        *zi = zi.sub(&step);
                    }
                }
            }
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// certification

struct Disk {
    centre: Cx,
    radius: BigInt,
}

/// `s^k p(Z/s)` for a Gaussian integer `Z`, exact.
fn homogeneous_value(coeffs: &[BigInt], z: &Cx, prec: usize) -> Cx {
    let mut acc = Cx {
        re: coeffs[0].clone(),
        im: BigInt::zero(),
    };
    for (m, c) in coeffs.iter().enumerate().skip(1) {
        acc = acc.mul_exact(z);
        acc.re += c << (prec * m);
    }
    acc
}

fn certify(coeffs: &[BigInt], z: &[Cx], prec: usize) -> Option<Vec<Disk>> {
    let k = z.len();
    let lead_sq = &coeffs[0] * &coeffs[0];
    let k_sq = BigInt::from(k * k);
    let mut disks = Vec::with_capacity(k);
    for i in 0..k {
        let e = homogeneous_value(coeffs, &z[i], prec);
        let mut d = Cx {
            re: BigInt::one(),
            im: BigInt::zero(),
        };
        for j in 0..k {
            if j != i {
                d = d.mul_exact(&z[i].sub(&z[j]));
            }
        }
        let d_sq = d.norm_sq();
        if d_sq.is_zero() {
            return None;
        }
        // (k |E| / (|lc| |D|))^2, rounded down, then a strict upper root
        let ratio = (&k_sq * e.norm_sq()) / (&lead_sq * d_sq);
        disks.push(Disk {
            centre: z[i].clone(),
            radius: ratio.sqrt() + BigInt::one(),
        });
    }
    for i in 0..k {
        for j in i + 1..k {
            let gap = disks[i].centre.sub(&disks[j].centre).norm_sq();
            let reach = &disks[i].radius + &disks[j].radius;
            if gap <= &reach * &reach {
                return None;
            }
        }
    }
    Some(disks)
}

fn classify(disks: &[Disk], i: usize) -> RootKind {
    let d = &disks[i];
    if d.centre.im.abs() > d.radius {
        return RootKind::NonReal;
    }
    let mirror = d.centre.conj();
    let isolated = disks.iter().enumerate().all(|(j, o)| {
        if j == i {
            return true;
        }
        let reach = &d.radius + &o.radius;
        mirror.sub(&o.centre).norm_sq() > &reach * &reach
    });
    if isolated {
        RootKind::Real
    } else {
        RootKind::Unresolved
    }
}

fn dyadic(m: &BigInt, prec: usize) -> BigRational {
    BigRational::new(m.clone(), BigInt::one() << prec)
}

/// Roots of a squarefree primitive factor at `prec` bits.
fn factor_roots(q: &IntPolynomial, multiplicity: usize, prec: usize) -> Option<Vec<NumericRoot>> {
    let coeffs = q.coeffs();
    if q.degree() == 1 {
        let root = BigRational::new(-coeffs[1].clone(), coeffs[0].clone());
        let modulus = root.abs();
        return Some(vec![NumericRoot {
            re: root,
            im: BigRational::zero(),
            multiplicity,
            radius: BigRational::zero(),
            kind: RootKind::Real,
            modulus_lo: modulus.clone(),
            modulus_hi: modulus,
        }]);
    }
    let fx = Fixed { prec };
    let floats: Option<Vec<f64>> = coeffs
        .iter()
        .map(|c| c.to_f64().filter(|x| x.is_finite()))
        .collect();
    let start = match floats {
        Some(fl) => aberth_f64(&fl),
        None => initial_guesses(&vec![1.0; coeffs.len()]),
    };
    let mut z: Vec<Cx> = start
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v = fx.complex_from_f64(c.re, c.im);
            // keep starts distinct even when doubles collapsed a cluster
            v.re += BigInt::from(i) << (prec.saturating_sub(40));
            v
        })
        .collect();
    aberth_fixed(&fx, coeffs, &mut z, 200 + 4 * prec);
    let disks = certify(coeffs, &z, prec)?;
    let roots = (0..disks.len())
        .map(|i| {
            let d = &disks[i];
            let n = d.centre.norm_sq();
            let root_lo = n.sqrt();
            let root_hi = &root_lo + BigInt::one();
            let lo = (&root_lo - &d.radius).max(BigInt::zero());
            NumericRoot {
                re: dyadic(&d.centre.re, prec),
                im: dyadic(&d.centre.im, prec),
                multiplicity,
                radius: dyadic(&d.radius, prec),
                kind: classify(&disks, i),
                modulus_lo: dyadic(&lo, prec),
                modulus_hi: dyadic(&(root_hi + &d.radius), prec),
            }
        })
        .collect();
    Some(roots)
}

/// All roots of `f` at a fixed precision. Fails if the disks of some
/// squarefree factor are not pairwise disjoint at this precision.
pub fn numeric_roots(f: &IntPolynomial, precision_bits: u64) -> Result<RootCluster, Error> {
    if f.degree() == 0 {
        return Err(Error::DegreeTooSmall { required: 1, found: 0 });
    }
    let prec = precision_bits as usize;
    let (g, zeros) = f.strip_zero_roots();
    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(NumericRoot {
            re: BigRational::zero(),
            im: BigRational::zero(),
            multiplicity: zeros,
            radius: BigRational::zero(),
            kind: RootKind::Real,
            modulus_lo: BigRational::zero(),
            modulus_hi: BigRational::zero(),
        });
    }
    if g.degree() > 0 {
        for (q, m) in squarefree_decomposition(&g) {
            let found = factor_roots(&q, m, prec).ok_or_else(|| {
                Error::OracleEscalation(format!("disks of {q} overlap at {precision_bits} bits"))
            })?;
            roots.extend(found);
        }
    }
    debug_assert_eq!(roots.iter().map(|r| r.multiplicity).sum::<usize>(), f.degree());
    Ok(RootCluster {
        precision_bits,
        roots,
    })
}

/// Modulus half-width below which distinct moduli involving a real root
/// can no longer overlap.
fn resolution(f: &IntPolynomial) -> BigRational {
    let g = f.strip_zero_roots().0;
    if g.degree() < 2 {
        return BigRational::one();
    }
    d1_practical(&g) / BigInt::from(8)
}

fn starting_precision(f: &IntPolynomial) -> u64 {
    let r = resolution(f);
    let bits = r.denom().bits().saturating_sub(r.numer().bits());
    (bits + 64).max(96)
}

/// Escalates precision until every root is classified and every modulus
/// interval is narrower than the resolution for `f`.
pub fn certified_roots(f: &IntPolynomial) -> Result<RootCluster, Error> {
    let target = resolution(f);
    let mut bits = starting_precision(f);
    loop {
        if let Ok(cluster) = numeric_roots(f, bits) {
            let resolved = cluster.roots.iter().all(|r| {
                r.kind != RootKind::Unresolved && r.modulus_width() < target
            });
            if resolved {
                return Ok(cluster);
            }
        }
        if bits >= MAX_PRECISION_BITS {
            return Err(Error::OracleEscalation(format!(
                "roots of {f} not resolved at {bits} bits"
            )));
        }
        bits *= 2;
    }
}

/// Dominance by direct inspection of certified roots.
pub fn oracle_dominant(f: &IntPolynomial) -> Result<bool, Error> {
    let cluster = certified_roots(f)?;
    Ok(dominant_from_cluster(&cluster))
}

/// The top root is dominant when it is simple and its modulus interval
/// lies strictly above every other. Overlap at the certified resolution
/// means equal moduli.
pub fn dominant_from_cluster(cluster: &RootCluster) -> bool {
    let Some(top) = cluster.top() else {
        return false;
    };
    let t = &cluster.roots[top];
    if t.multiplicity != 1 {
        return false;
    }
    cluster
        .roots
        .iter()
        .enumerate()
        .all(|(i, r)| i == top || r.modulus_hi.cmp(&t.modulus_lo) == Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn sorted_reals(f: &IntPolynomial) -> Vec<f64> {
        let c = certified_roots(f).unwrap();
        let mut v: Vec<f64> = c.real_roots().map(|r| r.approx().0).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn reciprocal_pairs() {
        assert!(has_reciprocal_pair(&p(&[2, -5, 2])));
        assert!(has_reciprocal_pair(&p(&[1, 0, 1])));
        assert!(has_reciprocal_pair(&p(&[1, 6, 6, 5])));
        assert!(!has_reciprocal_pair(&p(&[1, 0, -4])));
        assert!(!has_reciprocal_pair(&p(&[1, -1, -1])));
    }

    #[test]
    fn yun_decomposition() {
        // (X - 1)^2 (X + 3)
        let d = squarefree_decomposition(&p(&[1, 1, -5, 3]));
        assert_eq!(d, vec![(p(&[1, 3]), 1), (p(&[1, -1]), 2)]);
        let d = squarefree_decomposition(&p(&[1, 0, -2]));
        assert_eq!(d, vec![(p(&[1, 0, -2]), 1)]);
    }

    #[test]
    fn golden_ratio_roots() {
        let c = certified_roots(&p(&[1, -1, -1])).unwrap();
        let v = sorted_reals(&p(&[1, -1, -1]));
        assert!((v[0] + 0.6180339887).abs() < 1e-9);
        assert!((v[1] - 1.6180339887).abs() < 1e-9);
        assert_eq!(c.distinct_real_count(), Some(2));
    }

    #[test]
    fn imaginary_unit_roots() {
        let c = certified_roots(&p(&[1, 0, 1])).unwrap();
        assert!(c.roots.iter().all(|r| r.kind == RootKind::NonReal));
        assert!(!dominant_from_cluster(&c));
        let (re, im) = c.roots[0].approx();
        assert!(re.abs() < 1e-12 && (im.abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_roots() {
        let v = sorted_reals(&p(&[1, 0, -5, 1]));
        let expected = [-2.330058739567982, 0.20163967572340463, 2.1284190638445777];
        for (a, b) in v.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn real_roots_bracket_sign_changes() {
        let f = p(&[1, 0, -5, 1]);
        for r in certified_roots(&f).unwrap().real_roots() {
            let lo = &r.re - &r.radius;
            let hi = &r.re + &r.radius;
            assert_ne!(f.sign_at(&lo), f.sign_at(&hi));
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(oracle_dominant(&p(&[1, -3, 2])).unwrap());
        assert!(!oracle_dominant(&p(&[1, 0, -1])).unwrap());
        assert!(!oracle_dominant(&p(&[1, 1, 1, 1, 1])).unwrap());
        assert!(oracle_dominant(&p(&[1, -2, 0, 0])).unwrap());
        assert!(!oracle_dominant(&p(&[1, -4, 4])).unwrap());
        assert!(oracle_dominant(&p(&[1, 0, -5, 1])).unwrap());
    }

    #[test]
    fn multiplicities_sum_to_degree() {
        let f = p(&[1, -1, -5, 3, 0]);
        let c = certified_roots(&f).unwrap();
        assert_eq!(c.total_multiplicity(), 4);
    }

    #[test]
    fn unit_circle_counts() {
        let c = certified_roots(&p(&[1, 0, -4])).unwrap();
        assert_eq!(c.count_outside_unit(), Some(2));
        let c = certified_roots(&p(&[4, 2, 1])).unwrap();
        assert_eq!(c.count_outside_unit(), Some(0));
        let c = certified_roots(&p(&[1, 0, -1])).unwrap();
        assert_eq!(c.count_outside_unit(), None);
    }

    #[test]
    fn close_roots_need_more_bits() {
        // Mignotte-style X^5 - 2(10X - 1)^2 has two roots near 1/10
        let f = p(&[1, 0, 0, -200, 40, -2]);
        let c = certified_roots(&f).unwrap();
        assert_eq!(c.total_multiplicity(), 5);
        assert_eq!(c.distinct_real_count(), Some(3));
    }
}
