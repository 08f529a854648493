//! Differential checks shared by the acceptance runner and the smaller
//! integration suites. Each returns a one-line summary or the first failure.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};

use dompoly::bistritz::{count_outside_int, StabilityReport};
use dompoly::bounds::{cauchy_bounds, d1_practical};
use dompoly::census::{run_census, CensusReport, CensusSpec, Family};
use dompoly::dominance::{decide, decide_with, Algorithm, DecideOptions};
use dompoly::oracle::{
    certified_roots, dominant_from_cluster, has_reciprocal_pair, numeric_roots, RootCluster,
};
use dompoly::sample::PolySampler;
use dompoly::sturm::SturmChain;
use dompoly::IntPolynomial;

pub type Check = Result<String, String>;

pub fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

pub fn census(n: usize, h: u32, family: Family) -> CensusReport {
    let spec = CensusSpec {
        allow_large: true,
        ..CensusSpec::new(n, h, family)
    };
    run_census(&spec).expect("census runs")
}

/// The seeded sample shared by the oracle, bound and symmetry checks.
pub fn differential_sample(count: usize) -> Vec<IntPolynomial> {
    PolySampler::new(0x5eed, 2..=5, 100).take(count).collect()
}

pub fn quadratic_equivalence(h: i64) -> Check {
    let forced = DecideOptions {
        algorithm: Algorithm::Efficient,
        filters: false,
    };
    let mut seen = 0;
    for a in (-h..=h).filter(|&a| a != 0) {
        for b in -h..=h {
            for c in -h..=h {
                let f = p(&[a, b, c]);
                let expected = dompoly::dominance::quick_quadratic(&f).map_err(|e| e.to_string())?;
                let got = decide_with(&f, &forced).map_err(|e| format!("{f}: {e}"))?;
                if got.dominant != expected {
                    return Err(format!("{f}: algorithm says {}, closed form {expected}", got.dominant));
                }
                seen += 1;
            }
        }
    }
    Ok(format!("{seen} quadratics agree"))
}

pub fn oracle_agreement(sample: &[IntPolynomial]) -> Check {
    let mut dominant = 0;
    for f in sample {
        let ours = decide(f).map_err(|e| format!("{f}: {e}"))?.dominant;
        let theirs = certified_roots(f)
            .map(|c| dominant_from_cluster(&c))
            .map_err(|e| format!("oracle on {f}: {e}"))?;
        if ours != theirs {
            return Err(format!("{f}: decide {ours}, oracle {theirs}"));
        }
        dominant += ours as usize;
    }
    Ok(format!("{} agree ({dominant} dominant)", sample.len()))
}

pub fn bistritz_fixtures() -> Check {
    let expect = [
        (p(&[1, 0, 0]), StabilityReport::Stable),
        (
            p(&[1, 0, -4]),
            StabilityReport::Unstable {
                nu: 2,
                second_type_patches: 0,
            },
        ),
    ];
    for (f, report) in expect {
        let got = count_outside_int(&f).map_err(|e| e.to_string())?;
        if got != report {
            return Err(format!("{f}: {got:?}"));
        }
    }
    let got = count_outside_int(&p(&[2, -5, 2])).map_err(|e| e.to_string())?;
    if !matches!(got, StabilityReport::FirstTypeSingular { .. }) {
        return Err(format!("2,-5,2: {got:?}"));
    }
    Ok("fixtures match".into())
}

/// Compares the outside-unit-circle count with the oracle on `count`
/// polynomials free of reciprocal root pairs.
pub fn bistritz_agreement(seed: u64, count: usize) -> Check {
    let mut sampler = PolySampler::new(seed, 2..=6, 20);
    let mut checked = 0;
    let mut patched = 0;
    while checked < count {
        let f = sampler.next().expect("endless");
        if has_reciprocal_pair(&f) {
            continue;
        }
        let cluster = certified_roots(&f).map_err(|e| format!("oracle on {f}: {e}"))?;
        let Some(expected) = cluster.count_outside_unit() else {
            return Err(format!("{f}: oracle could not separate a modulus from 1"));
        };
        let report = count_outside_int(&f).map_err(|e| format!("{f}: {e}"))?;
        if let StabilityReport::Unstable {
            second_type_patches, ..
        } = report
        {
            patched += (second_type_patches > 0) as usize;
        }
        if report.outside_count() != Some(expected) {
            return Err(format!("{f}: bistritz {report:?}, oracle {expected}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} agree ({patched} needed a second-type patch)"))
}

fn real_count_in_cauchy_interval(f: &IntPolynomial) -> Result<usize, String> {
    let (_, c2) = cauchy_bounds(&f.strip_zero_roots().0).map_err(|e| e.to_string())?;
    let mut hi = c2;
    while f.sign_at(&hi).is_eq() || f.sign_at(&-hi.clone()).is_eq() {
        hi += BigRational::one();
    }
    let chain = SturmChain::build(f).map_err(|e| e.to_string())?;
    chain
        .count_real_roots_in(&-hi.clone(), &hi)
        .map_err(|e| e.to_string())
}

/// Real-root counts from Sturm chains against the oracle. Every third input
/// is built as `g h^2` so repeated roots are exercised.
pub fn sturm_agreement(seed: u64, count: usize) -> Check {
    let mut sampler = PolySampler::new(seed, 2..=5, 50);
    let mut repeated = 0;
    for i in 0..count {
        let f = if i % 3 == 2 {
            let mut small = PolySampler::new(seed ^ i as u64, 1..=2, 6);
            let g = small.next().expect("endless");
            let h = small.next().expect("endless");
            repeated += 1;
            &g * &(&h * &h)
        } else {
            sampler.next().expect("endless")
        };
        let got = real_count_in_cauchy_interval(&f).map_err(|e| format!("{f}: {e}"))?;
        let cluster = certified_roots(&f).map_err(|e| format!("oracle on {f}: {e}"))?;
        let expected = cluster
            .distinct_real_count()
            .ok_or_else(|| format!("{f}: oracle left a root unclassified"))?;
        if got != expected {
            return Err(format!("{f}: sturm {got}, oracle {expected}"));
        }
    }
    Ok(format!("{count} agree ({repeated} with repeated factors)"))
}

enum Gap {
    Clear,
    Overlap,
    Unclear,
    Violation(String),
}

fn gap_status(cluster: &RootCluster, d1: &BigRational, c1: &BigRational, c2: &BigRational) -> Gap {
    let mut overlap = false;
    let mut unclear = false;
    for r in &cluster.roots {
        if r.modulus_lo >= *c2 {
            return Gap::Violation(format!("root modulus {} not below C2 {c2}", r.modulus_lo));
        }
        if r.modulus_hi <= *c1 {
            return Gap::Violation(format!("root modulus {} below C1 {c1}", r.modulus_hi));
        }
        unclear |= r.modulus_lo <= *c1 || r.modulus_hi >= *c2;
    }
    for a in cluster.real_roots() {
        for b in cluster.roots.iter().filter(|b| !std::ptr::eq(a, *b)) {
            let above = &b.modulus_lo - &a.modulus_hi;
            let below = &a.modulus_lo - &b.modulus_hi;
            let gap_lo = if above > below { above } else { below };
            if gap_lo > *d1 {
                continue;
            }
            if gap_lo <= BigRational::zero() {
                overlap = true;
                continue;
            }
            let gap_hi = gap_lo + a.modulus_width() + b.modulus_width();
            if gap_hi <= *d1 {
                return Gap::Violation(format!(
                    "moduli of {:?} and {:?} differ by at most {gap_hi}, d1 is {d1}",
                    a.approx(),
                    b.approx()
                ));
            }
            unclear = true;
        }
    }
    match (unclear, overlap) {
        (true, _) => Gap::Unclear,
        (false, true) => Gap::Overlap,
        (false, false) => Gap::Clear,
    }
}

/// Every root modulus lies in `(C1, C2)` and every modulus gap involving a
/// real root exceeds `d1`. Overlapping intervals that survive a 16-fold
/// precision increase are taken as equal moduli.
pub fn separation_holds(sample: &[IntPolynomial]) -> Check {
    let mut refined = 0;
    for f in sample {
        let g = f.strip_zero_roots().0.primitive_part();
        if g.degree() < 2 {
            continue;
        }
        let d1 = d1_practical(&g);
        let (c1, c2) = cauchy_bounds(&g).map_err(|e| e.to_string())?;
        let mut cluster = certified_roots(&g).map_err(|e| format!("oracle on {g}: {e}"))?;
        let base_bits = cluster.precision_bits;
        let mut bits = base_bits;
        loop {
            match gap_status(&cluster, &d1, &c1, &c2) {
                Gap::Clear => break,
                Gap::Violation(why) => return Err(format!("{g}: {why}")),
                Gap::Overlap if bits >= base_bits * 16 => break,
                Gap::Unclear if bits >= base_bits * 16 => {
                    return Err(format!("{g}: gap against d1 unresolved at {bits} bits"))
                }
                Gap::Overlap | Gap::Unclear => {
                    bits *= 2;
                    refined += 1;
                    cluster = numeric_roots(&g, bits).map_err(|e| format!("{g}: {e}"))?;
                }
            }
        }
    }
    Ok(format!("{} polynomials, {refined} refinements", sample.len()))
}

pub fn symmetry_and_filters(sample: &[IntPolynomial]) -> Check {
    let unfiltered = DecideOptions {
        filters: false,
        ..DecideOptions::default()
    };
    let mut filtered = 0;
    for f in sample {
        let v = decide(f).map_err(|e| format!("{f}: {e}"))?;
        let images = [f.negate(), f.negate_argument(), f.negate_argument().negate()];
        for image in &images {
            let w = decide(image).map_err(|e| format!("{image}: {e}"))?;
            if w.dominant != v.dominant {
                return Err(format!("{f} is {} but {image} is {}", v.dominant, w.dominant));
            }
        }
        let plain = decide_with(f, &unfiltered).map_err(|e| format!("{f}: {e}"))?;
        if plain.dominant != v.dominant {
            return Err(format!("{f}: filtered {}, unfiltered {}", v.dominant, plain.dominant));
        }
        filtered += (v.method == dompoly::dominance::Method::FamilyFilter) as usize;
    }
    Ok(format!("{} polynomials, {filtered} settled by filters", sample.len()))
}

pub fn census_consistency(degrees: &[usize], heights: &[u32], chunkings: &[usize]) -> Check {
    let mut runs = 0;
    for &n in degrees {
        for &h in heights {
            let spec = |symmetric: bool, chunks: usize| CensusSpec {
                symmetry_reduction: symmetric,
                chunk_count: chunks,
                ..CensusSpec::new(n, h, Family::Both)
            };
            let full = run_census(&spec(false, 1)).map_err(|e| e.to_string())?;
            for &chunks in chunkings {
                for symmetric in [true, false] {
                    let r = run_census(&spec(symmetric, chunks)).map_err(|e| e.to_string())?;
                    runs += 1;
                    if r.counts() != full.counts()
                        || r.monic != full.monic
                        || r.general != full.general
                        || r.irreducible != full.irreducible
                    {
                        return Err(format!(
                            "n={n} H={h} symmetric={symmetric} chunks={chunks}: {:?} vs {:?}",
                            r.counts(),
                            full.counts()
                        ));
                    }
                }
            }
        }
    }
    Ok(format!("{runs} runs identical"))
}
