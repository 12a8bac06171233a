use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::{Polynomial, Rational};

/// Bernoulli numbers `B_0, B_1, ...` with `B_1 = -1/2`, grown on demand from
///
/// ```text
/// sum_{i=0}^{m} C(m+1, i) B_i = 0,   B_0 = 1.
/// ```
#[derive(Debug, Clone)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self {
            values: vec![Rational::one()],
        }
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, j: usize) -> Rational {
        while self.values.len() <= j {
            let m = self.values.len();
            let sum = self
                .values
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (i, b)| {
                    acc + Rational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(i))) * b
                });
            self.values
                .push(-sum / Rational::from_integer(BigInt::from(m + 1)));
        }
        self.values[j].clone()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

pub fn bernoulli(j: usize) -> Rational {
    BernoulliCache::new().get(j)
}

/// `n -> sum_{i=1}^{n} i^p` as a polynomial of degree `p + 1`:
///
/// ```text
/// 1/(p+1) * sum_{j=0}^{p} (-1)^j C(p+1, j) B_j n^{p+1-j}
/// ```
pub fn faulhaber(p: usize) -> Polynomial {
    let mut cache = BernoulliCache::new();
    let scale = Rational::from_integer(BigInt::from(p + 1));
    let mut coeffs = vec![Rational::zero(); p + 2];
    for j in 0..=p {
        let mut c =
            Rational::from_integer(binomial(BigInt::from(p + 1), BigInt::from(j))) * cache.get(j);
        if j % 2 == 1 {
            c = -c;
        }
        coeffs[p + 1 - j] = c / &scale;
    }
    Polynomial::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn leading_bernoulli_numbers() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn odd_bernoulli_numbers_vanish() {
        let mut cache = BernoulliCache::new();
        for j in (3..30).step_by(2) {
            assert!(cache.get(j).is_zero(), "B_{j}");
        }
    }

    #[test]
    fn small_power_sums() {
        assert_eq!(faulhaber(0), Polynomial::n());
        assert_eq!(
            faulhaber(1),
            Polynomial::from_fractions(&[(0, 1), (1, 2), (1, 2)])
        );
        let cubes = faulhaber(3);
        assert_eq!(
            cubes,
            Polynomial::from_fractions(&[(0, 1), (0, 1), (1, 4), (1, 2), (1, 4)])
        );
        assert_eq!(cubes.eval_int(5), int(225));
    }

    #[test]
    fn degree_and_leading_coefficient() {
        for p in 0..15 {
            let f = faulhaber(p);
            assert_eq!(f.degree(), Some(p + 1));
            assert_eq!(f.leading_coefficient(), Some(&rat(1, p as i64 + 1)));
        }
    }
}
