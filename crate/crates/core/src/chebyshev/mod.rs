//! Chebyshev polynomials in the trace normalization
//! `C_{k+1} = z C_k - C_{k-1}`, `C_0 = 2`, `C_1 = z` and
//! `S_{k+1} = z S_k - S_{k-1}`, `S_0 = 1`, `S_1 = z`,
//! so that `C_k(m + 1/m) = m^k + m^-k`.

mod curve;

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{CyclotomicNumber, Rational};

pub(crate) use curve::validate_pair;
pub use curve::{
    critical_points, curve_polynomials, sample_curve, singular_points, write_curve_csv, BiPoly,
    CurvePoint, CurvePolynomials, CurveSample,
};

/// A value a rational polynomial can be evaluated at.
pub trait Scalar: Clone {
    /// The rational constant `c` in the same arithmetic as `self`.
    fn constant_like(&self, c: &Rational) -> Self;
    fn add_s(&self, other: &Self) -> Self;
    fn mul_s(&self, other: &Self) -> Self;
    fn is_zero_s(&self) -> bool;
}

impl Scalar for f64 {
    fn constant_like(&self, c: &Rational) -> Self {
        c.to_f64().unwrap_or(f64::NAN)
    }
    fn add_s(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_s(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero_s(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for Complex64 {
    fn constant_like(&self, c: &Rational) -> Self {
        Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn add_s(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_s(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero_s(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
}

impl Scalar for Rational {
    fn constant_like(&self, c: &Rational) -> Self {
        c.clone()
    }
    fn add_s(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_s(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for CyclotomicNumber {
    fn constant_like(&self, c: &Rational) -> Self {
        CyclotomicNumber::from_rational(self.order(), c)
    }
    fn add_s(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_s(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Polynomial {
    fn constant_like(&self, c: &Rational) -> Self {
        Polynomial::constant(c.clone())
    }
    fn add_s(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul_s(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
}

/// Dense univariate polynomial over `Q`, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    /// Horner evaluation in the arithmetic of `z`.
    pub fn eval<T: Scalar>(&self, z: &T) -> T {
        let mut acc = z.constant_like(&Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_s(z).add_s(&z.constant_like(c));
        }
        acc
    }

    /// `self(other(z))`.
    pub fn compose(&self, other: &Polynomial) -> Polynomial {
        self.eval(other)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}z^{k}")?,
            }
        }
        Ok(())
    }
}

fn three_term(k: usize, p0: Polynomial, p1: Polynomial) -> Polynomial {
    if k == 0 {
        return p0;
    }
    let z = Polynomial::z();
    let (mut prev, mut cur) = (p0, p1);
    for _ in 1..k {
        let next = z.mul(&cur).sub(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `C_k`. Negative indices use `C_{-k} = C_k`.
pub fn chebyshev_first(k: i64) -> Polynomial {
    three_term(
        k.unsigned_abs() as usize,
        Polynomial::from_i64(&[2]),
        Polynomial::z(),
    )
}

/// `S_k` for `k >= 0`.
pub fn chebyshev_second(k: i64) -> Result<Polynomial> {
    if k < 0 {
        return Err(Error::NegativeIndex(k));
    }
    Ok(three_term(
        k as usize,
        Polynomial::from_i64(&[1]),
        Polynomial::z(),
    ))
}

pub fn poly_eval<T: Scalar>(p: &Polynomial, z: &T) -> T {
    p.eval(z)
}

pub fn poly_derivative(p: &Polynomial) -> Polynomial {
    p.derivative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn first_kind_low_degrees() {
        assert_eq!(chebyshev_first(0), Polynomial::from_i64(&[2]));
        assert_eq!(chebyshev_first(1), Polynomial::z());
        assert_eq!(chebyshev_first(3), Polynomial::from_i64(&[0, -3, 0, 1]));
        assert_eq!(chebyshev_first(3).to_string(), "z^3 - 3z");
        assert_eq!(chebyshev_first(-3), chebyshev_first(3));
    }

    #[test]
    fn second_kind_low_degrees() {
        assert_eq!(chebyshev_second(0).unwrap(), Polynomial::from_i64(&[1]));
        assert_eq!(
            chebyshev_second(2).unwrap(),
            Polynomial::from_i64(&[-1, 0, 1])
        );
        assert_eq!(chebyshev_second(-1).unwrap_err(), Error::NegativeIndex(-1));
    }

    #[test]
    fn evaluation() {
        assert_eq!(chebyshev_first(2).eval(&int(2)), int(2));
        assert_eq!(chebyshev_first(3).eval(&int(1)), int(-2));
        let p = Polynomial::from_i64(&[7, 3, -2]);
        assert_eq!(p.eval(&int(0)), int(7));
        assert_eq!(Polynomial::zero().eval(&int(5)), int(0));
        assert!((chebyshev_first(3).eval(&0.5f64) - (0.125 - 1.5)).abs() < 1e-15);
    }

    #[test]
    fn derivative_of_c3() {
        let d = chebyshev_first(3).derivative();
        assert_eq!(d, Polynomial::from_i64(&[-3, 0, 3]));
        assert_eq!(d, chebyshev_second(2).unwrap().scale(&int(3)));
        assert!(Polynomial::from_i64(&[4]).derivative().is_zero());
    }

    #[test]
    fn c5_derivative_identity() {
        let lhs = chebyshev_first(5).derivative();
        let rhs = chebyshev_second(4).unwrap().scale(&int(5));
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn second_kind_at_two_cos() {
        // S_k(m + 1/m) = (m^{k+1} - m^{-(k+1)}) / (m - 1/m), m a 14th root of unity
        let n = 14;
        let m = CyclotomicNumber::root_of_unity(n, 1);
        let t = CyclotomicNumber::two_cos_root(n, 1);
        let den = &m - &CyclotomicNumber::root_of_unity(n, -1);
        for k in 0..10 {
            let lhs = chebyshev_second(k).unwrap().eval(&t);
            let num = &CyclotomicNumber::root_of_unity(n, k + 1)
                - &CyclotomicNumber::root_of_unity(n, -(k + 1));
            assert_eq!(&lhs * &den, num, "k = {k}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_i64(&[-2, 0, 1]).to_string(), "z^2 - 2");
        assert_eq!(Polynomial::from_i64(&[0, -1]).to_string(), "-z");
    }
}
