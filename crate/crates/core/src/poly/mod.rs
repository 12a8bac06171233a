//! Exact univariate polynomials over the rationals, in the indeterminate `n`.

mod faulhaber;
mod interpolate;

pub use faulhaber::{bernoulli, faulhaber, BernoulliCache};
pub use interpolate::{interpolate, lagrange_interpolate, NewtonInterpolator};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::table::big_number;

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Coefficients by ascending power; the last coefficient is never zero and
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * n^power`.
    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    /// The indeterminate `n`.
    pub fn n() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From `(numerator, denominator)` pairs by ascending power.
    pub fn from_fractions(pairs: &[(i64, i64)]) -> Self {
        Self::from_coeffs(pairs.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::from_coeffs(values.iter().map(|&v| int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `n^power` (zero past the degree).
    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn eval_int(&self, at: i64) -> Rational {
        self.eval(&int(at))
    }

    /// `n -> p(n + 1)`, by binomial expansion of each power.
    pub fn shift(&self) -> Self {
        let len = self.coeffs.len();
        let mut out = vec![Rational::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                let b = binomial(BigInt::from(i), BigInt::from(j));
                *slot += c * Rational::from_integer(b);
            }
        }
        Self::from_coeffs(out)
    }

    /// `n * (p(n + 1) - p(n))`. Same degree as `p` unless `p` is constant, in
    /// which case the result is zero.
    pub fn difference_transform(&self) -> Self {
        &Self::n() * &(&self.shift() - self)
    }

    /// Coefficients as `[[num, den], ...]` by ascending power.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| Value::Array(vec![big_number(c.numer()), big_number(c.denom())]))
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [[num, den], ...], got {value}"));
        let items = value.as_array().ok_or_else(bad)?;
        let mut coeffs = Vec::with_capacity(items.len());
        for item in items {
            let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let part = |v: &Value| -> Result<BigInt> {
                match v {
                    Value::Number(num) => num.to_string().parse().map_err(|_| bad()),
                    _ => Err(bad()),
                }
            };
            let den = part(&pair[1])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            coeffs.push(Rational::new(part(&pair[0])?, den));
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Text form, highest power first: `2/3*n^4 - 4/3*n^3 + 11/6*n^2 - 13/6*n + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            write!(f, "{}", c.abs())?;
            match power {
                0 => {}
                1 => f.write_str("*n")?,
                p => write!(f, "*n^{p}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("{why} in polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if ch == '+' || ch == '-' {
                if i > 0 {
                    if current.is_empty() {
                        return Err(bad("dangling sign"));
                    }
                    terms.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(bad("dangling sign"));
        }
        terms.push((negative, current));

        let mut result = Polynomial::zero();
        for (negative, body) in terms {
            let (coef_text, power) = match body.find('n') {
                None => (body.as_str(), 0),
                Some(pos) => {
                    let power = match &body[pos + 1..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .and_then(|p| p.parse::<usize>().ok())
                            .ok_or_else(|| bad("bad exponent"))?,
                    };
                    let coef = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                    (coef, power)
                }
            };
            let mut coef = if coef_text.is_empty() {
                Rational::one()
            } else {
                parse_rational(coef_text).ok_or_else(|| bad("bad coefficient"))?
            };
            if negative {
                coef = -coef;
            }
            result = &result + &Polynomial::monomial(coef, power);
        }
        Ok(result)
    }
}

fn parse_rational(text: &str) -> Option<Rational> {
    match text.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.parse().ok()?;
            let den: BigInt = b.parse().ok()?;
            (!den.is_zero()).then(|| Rational::new(num, den))
        }
        None => Some(Rational::from_integer(text.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d3() -> Polynomial {
        Polynomial::from_fractions(&[(1, 1), (-13, 6), (11, 6), (-4, 3), (2, 3)])
    }

    fn d4() -> Polynomial {
        Polynomial::from_fractions(&[
            (1, 1),
            (-18, 5),
            (226, 45),
            (-7, 2),
            (25, 18),
            (-2, 5),
            (4, 45),
        ])
    }

    #[test]
    fn arithmetic_normalizes() {
        let n = Polynomial::n();
        assert!((&n + &-&n).is_zero());
        assert_eq!((&n + &-&n).degree(), None);
        let prod = &(&n + &Polynomial::one()) * &(&n - &Polynomial::one());
        assert_eq!(prod, Polynomial::from_integers(&[-1, 0, 1]));
        let two_n2 = Polynomial::monomial(int(2), 2);
        assert_eq!(
            &two_n2.scale(&int(2)) - &n,
            Polynomial::from_integers(&[0, -1, 4])
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(d3().eval_int(3), int(29));
        assert_eq!(d4().eval_int(4), int(153));
        assert_eq!(d4().eval_int(0), int(1));
        assert_eq!(Polynomial::zero().eval_int(5), int(0));
    }

    #[test]
    fn shift_examples() {
        let sq = Polynomial::monomial(int(1), 2);
        assert_eq!(sq.shift(), Polynomial::from_integers(&[1, 2, 1]));
        let d2 = Polynomial::from_integers(&[0, -1, 2]);
        assert_eq!(d2.shift(), Polynomial::from_integers(&[1, 3, 2]));
        let c = Polynomial::constant(rat(7, 3));
        assert_eq!(c.shift(), c);
    }

    #[test]
    fn difference_transform_examples() {
        let sq = Polynomial::monomial(int(1), 2);
        assert_eq!(
            sq.difference_transform(),
            Polynomial::from_integers(&[0, 1, 2])
        );
        assert_eq!(Polynomial::n().difference_transform(), Polynomial::n());
        let d2 = Polynomial::from_integers(&[0, -1, 2]);
        assert_eq!(
            d2.difference_transform(),
            Polynomial::from_integers(&[0, 1, 4])
        );
        assert!(Polynomial::constant(int(5))
            .difference_transform()
            .is_zero());
    }

    #[test]
    fn text_form() {
        assert_eq!(
            d3().to_string(),
            "2/3*n^4 - 4/3*n^3 + 11/6*n^2 - 13/6*n + 1"
        );
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_integers(&[0, -1]).to_string(), "-1*n");
        assert_eq!(
            "n^2 - n".parse::<Polynomial>().unwrap(),
            Polynomial::from_integers(&[0, -1, 1])
        );
        assert_eq!(
            "-3".parse::<Polynomial>().unwrap(),
            Polynomial::constant(int(-3))
        );
        assert!("2*n^".parse::<Polynomial>().is_err());
        assert!("1/0".parse::<Polynomial>().is_err());
        assert!("n +".parse::<Polynomial>().is_err());
    }

    #[test]
    fn json_form() {
        let v = d3().to_json();
        assert_eq!(v.to_string(), "[[1,1],[-13,6],[11,6],[-4,3],[2,3]]");
        assert_eq!(Polynomial::from_json(&v).unwrap(), d3());
        assert!(Polynomial::from_json(&serde_json::json!([[1, 0]])).is_err());
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-20i64..=20, 1i64..=12), 0..=13)
            .prop_map(|pairs| Polynomial::from_fractions(&pairs))
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(p in small_poly()) {
            prop_assert_eq!(p.to_string().parse::<Polynomial>().unwrap(), p.clone());
            prop_assert_eq!(Polynomial::from_json(&p.to_json()).unwrap(), p);
        }

        #[test]
        fn shift_is_a_ring_morphism(p in small_poly(), q in small_poly()) {
            prop_assert_eq!((&p * &q).shift(), &p.shift() * &q.shift());
            prop_assert_eq!((&p + &q).shift(), &p.shift() + &q.shift());
        }

        #[test]
        fn shift_matches_evaluation(p in small_poly(), at in -30i64..30) {
            prop_assert_eq!(p.shift().eval_int(at), p.eval_int(at + 1));
        }

        #[test]
        fn difference_transform_keeps_degree(p in small_poly()) {
            prop_assume!(p.degree().unwrap_or(0) >= 1);
            prop_assert_eq!(p.difference_transform().degree(), p.degree());
        }
    }
}
