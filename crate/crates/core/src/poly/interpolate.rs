use std::collections::HashSet;

use num_traits::{One, Zero};

use super::{int, Polynomial, Rational};
use crate::error::{Error, Result};

/// Newton divided-difference interpolation, extendable one point at a time.
///
/// `diagonal[i]` holds the divided difference `f[x_{len-1-i}, ..., x_{len-1}]`,
/// which is all that is needed to append the next point; `newton` keeps the
/// top edge of the table (the Newton-form coefficients).
#[derive(Debug, Clone, Default)]
pub struct NewtonInterpolator {
    xs: Vec<i64>,
    diagonal: Vec<Rational>,
    newton: Vec<Rational>,
}

impl NewtonInterpolator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn push(&mut self, x: i64, y: Rational) -> Result<()> {
        if self.xs.contains(&x) {
            return Err(Error::DuplicateAbscissa(x));
        }
        let len = self.xs.len();
        let mut next = Vec::with_capacity(len + 1);
        next.push(y);
        for i in 0..len {
            let span = int(x - self.xs[len - 1 - i]);
            let dd = (&next[i] - &self.diagonal[i]) / span;
            next.push(dd);
        }
        self.newton.push(next[len].clone());
        self.diagonal = next;
        self.xs.push(x);
        Ok(())
    }

    /// Expands the Newton form into monomial coefficients.
    pub fn polynomial(&self) -> Polynomial {
        let mut acc = Polynomial::zero();
        for i in (0..self.newton.len()).rev() {
            let factor = Polynomial::from_coeffs(vec![int(-self.xs[i]), Rational::one()]);
            acc = &(&acc * &factor) + &Polynomial::constant(self.newton[i].clone());
        }
        acc
    }
}

/// Unique polynomial of degree `< points.len()` through every point.
pub fn interpolate(points: &[(i64, Rational)]) -> Result<Polynomial> {
    let mut newton = NewtonInterpolator::new();
    for (x, y) in points {
        newton.push(*x, y.clone())?;
    }
    Ok(newton.polynomial())
}

/// Lagrange form, kept as an independent cross-check of [`interpolate`].
pub fn lagrange_interpolate(points: &[(i64, Rational)]) -> Result<Polynomial> {
    let mut seen = HashSet::new();
    for (x, _) in points {
        if !seen.insert(*x) {
            return Err(Error::DuplicateAbscissa(*x));
        }
    }
    let mut total = Polynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Polynomial::one();
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &Polynomial::from_coeffs(vec![int(-xj), Rational::one()]);
                denom *= int(xi - xj);
            }
        }
        total = &total + &basis.scale(&(yi / denom));
    }
    Ok(total)
}
