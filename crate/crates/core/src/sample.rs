//! Seeded random polynomials for differential testing.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::IntPolynomial;

#[derive(Clone, Debug)]
pub struct PolySampler {
    rng: ChaCha8Rng,
    degrees: RangeInclusive<usize>,
    max_height: i64,
}

impl PolySampler {
    /// Degree is drawn uniformly from `degrees`, then a height in
    /// `1..=max_height`, then every coefficient uniformly in `[-h, h]` with a
    /// nonzero leading one.
    pub fn new(seed: u64, degrees: RangeInclusive<usize>, max_height: i64) -> Self {
        assert!(max_height >= 1 && !degrees.is_empty());
        PolySampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            degrees,
            max_height,
        }
    }

    pub fn coefficients(&mut self) -> Vec<i64> {
        let n = self.rng.gen_range(self.degrees.clone());
        let h = self.rng.gen_range(1..=self.max_height);
        let mut coeffs: Vec<i64> = (0..=n).map(|_| self.rng.gen_range(-h..=h)).collect();
        while coeffs[0] == 0 {
            coeffs[0] = self.rng.gen_range(-h..=h);
        }
        coeffs
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl Iterator for PolySampler {
    type Item = IntPolynomial;

    fn next(&mut self) -> Option<IntPolynomial> {
        let coeffs = self.coefficients();
        Some(IntPolynomial::new(coeffs.into_iter().map(BigInt::from).collect()).expect("nonzero lead"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_in_range() {
        let a: Vec<_> = PolySampler::new(7, 2..=5, 100).take(200).collect();
        let b: Vec<_> = PolySampler::new(7, 2..=5, 100).take(200).collect();
        assert_eq!(a, b);
        for f in &a {
            assert!((2..=5).contains(&f.degree()));
            assert!(f.height() <= BigInt::from(100));
        }
        assert!(a.iter().any(|f| f.degree() == 2) && a.iter().any(|f| f.degree() == 5));
    }
}
