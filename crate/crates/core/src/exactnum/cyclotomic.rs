use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::{field, gcd_all, Field, Rational};
use crate::error::{Error, Result};

/// An element of `Q(zeta_N)` in the reduced power basis.
///
/// Stored as an integer numerator vector over a common positive denominator,
/// normalized so that the gcd of all numerators and the denominator is 1.
/// That normal form is unique, so `==` is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn raw(order: usize, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut out = CyclotomicNumber { order, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let g = gcd_all(&self.den, self.num.iter());
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    fn ctx(&self) -> Arc<Field> {
        field(self.order)
    }

    pub fn zero(order: usize) -> Self {
        let f = field(order);
        CyclotomicNumber {
            order,
            num: vec![BigInt::zero(); f.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::from_rational(order, &Rational::one())
    }

    pub fn from_rational(order: usize, r: &Rational) -> Self {
        let mut out = Self::zero(order);
        out.num[0] = r.numer().clone();
        out.den = r.denom().clone();
        out
    }

    pub fn from_int(order: usize, n: i64) -> Self {
        Self::from_rational(order, &Rational::from_integer(BigInt::from(n)))
    }

    /// Build from power-basis coefficients of any length; higher powers are
    /// reduced modulo `Phi_N`.
    pub fn from_coeffs(order: usize, coeffs: &[Rational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let f = field(order);
        Self::raw(order, reduce(&f, scaled), den)
    }

    /// `zeta_N^k`, with `k` taken modulo `N`.
    pub fn root_of_unity(order: usize, k: i64) -> Self {
        let f = field(order);
        let j = k.rem_euclid(order as i64) as usize;
        CyclotomicNumber {
            order,
            num: f.powers[j].clone(),
            den: BigInt::one(),
        }
    }

    /// `zeta_N^k + zeta_N^(-k)`.
    pub fn two_cos_root(order: usize, k: i64) -> Self {
        let f = field(order);
        let a = k.rem_euclid(order as i64) as usize;
        let b = (-k).rem_euclid(order as i64) as usize;
        let num = f.powers[a]
            .iter()
            .zip(&f.powers[b])
            .map(|(x, y)| x + y)
            .collect();
        Self::raw(order, num, BigInt::one())
    }

    /// `2 cos(a pi / n)` inside `Q(zeta_ambient)`; requires `2n | ambient`.
    pub fn two_cos_pi_frac(a: i64, n: usize, ambient: usize) -> Result<Self> {
        if n == 0 || !ambient.is_multiple_of(2 * n) {
            return Err(Error::NotDivisible {
                divisor: 2 * n,
                ambient,
            });
        }
        let step = (ambient / (2 * n)) as i64;
        Ok(Self::two_cos_root(ambient, a * step))
    }

    /// `cos(a pi / n)` inside `Q(zeta_ambient)`; requires `2n | ambient`.
    pub fn cos_pi_frac(a: i64, n: usize, ambient: usize) -> Result<Self> {
        Ok(Self::two_cos_pi_frac(a, n, ambient)?.scale(&super::rational(1, 2)))
    }

    /// `sin^2(a pi / n) = (1 - cos(2 a pi / n)) / 2` inside `Q(zeta_ambient)`.
    pub fn sin_sq_pi_frac(a: i64, n: usize, ambient: usize) -> Result<Self> {
        let two_cos = Self::two_cos_pi_frac(2 * a, n, ambient)?;
        // (2 - 2cos(2x)) / 4
        let two = Self::from_int(ambient, 2);
        Ok((&two - &two_cos).scale(&super::rational(1, 4)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Dimension of the field over `Q`, i.e. `phi(order)`.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    /// The rational value, if every non-constant coefficient vanishes.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeff(0))
    }

    /// Evaluate at `exp(2 pi i / N)` in double precision.
    pub fn embed_float(&self) -> Complex64 {
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = Rational::new(c.clone(), self.den.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
            acc += Complex64::from_polar(v, 2.0 * std::f64::consts::PI * k as f64 / n);
        }
        acc
    }

    /// Real part of [`embed_float`](Self::embed_float).
    pub fn to_f64(&self) -> f64 {
        self.embed_float().re
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::raw(self.order, num, &self.den * r.denom())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if subtract {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Self::raw(self.order, num, den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let f = self.ctx();
        Self::raw(self.order, reduce(&f, prod), &self.den * &other.den)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// representative polynomial and `Phi_N` over `Q`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero { order: self.order });
        }
        let f = self.ctx();
        let modulus: Vec<Rational> = f
            .modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let rep: Vec<Rational> = self
            .num
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let t = rational_poly_inverse(&rep, &modulus);
        Ok(Self::from_coeffs(self.order, &t).scale(&Rational::from_integer(self.den.clone())))
    }

    /// Integer power; negative exponents go through [`inv`](Self::inv).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow_u(e.unsigned_abs()))
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.order);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        acc
    }

    /// Image under the field embedding `Q(zeta_M) -> Q(zeta_N)`,
    /// `zeta_M -> zeta_N^(N/M)`, for `M = self.order()` dividing `N`.
    pub fn embed(&self, target: usize) -> Result<Self> {
        if !target.is_multiple_of(self.order) {
            return Err(Error::NotDivisible {
                divisor: self.order,
                ambient: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = target / self.order;
        let f = field(target);
        let mut num = vec![BigInt::zero(); f.degree];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in num.iter_mut().zip(&f.powers[(k * step) % target]) {
                if !p.is_zero() {
                    *slot += c * p;
                }
            }
        }
        Ok(Self::raw(target, num, self.den.clone()))
    }
}

/// Reduce an integer coefficient vector modulo the field's monic `Phi_N`.
fn reduce(f: &Field, mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let d = f.degree;
    if coeffs.len() > d {
        for k in (d..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[k]);
            if c.is_zero() {
                continue;
            }
            for (j, m) in f.modulus.iter().enumerate().take(d) {
                if !m.is_zero() {
                    coeffs[k - d + j] -= &c * m;
                }
            }
        }
    }
    coeffs.resize(d, BigInt::zero());
    coeffs
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return (vec![], rem);
    }
    let lead_inv = den[dd].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[k + j] -= t;
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// `t` with `a * t = 1 mod m`, for `a` coprime to the irreducible `m`.
fn rational_poly_inverse(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut t0: Vec<Rational> = vec![];
    let mut t1: Vec<Rational> = vec![Rational::one()];
    while r1.len() > 1 {
        // keep the remainder monic so intermediate sizes stay modest
        let lc = r1.last().unwrap().recip();
        r1.iter_mut().for_each(|c| *c *= &lc);
        t1.iter_mut().for_each(|c| *c *= &lc);
        let (q, r) = poly_divrem(&r0, &r1);
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    let c = r1[0].recip();
    t1.iter().map(|x| x * &c).collect()
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.checked_add(rhs).expect("cyclotomic addition")
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.checked_sub(rhs).expect("cyclotomic subtraction")
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.checked_mul(rhs).expect("cyclotomic multiplication")
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl std::iter::Sum for CyclotomicNumber {
    /// Panics on an empty iterator: the order of the field would be unknown.
    fn sum<I: Iterator<Item = Self>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of an empty set of field elements");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.order, self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in 0..self.num.len() {
            if self.num[k].is_zero() {
                continue;
            }
            let c = self.coeff(k);
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        let mut s = serializer.serialize_struct("CyclotomicNumber", 3)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.serialize_field("float", &self.to_f64())?;
        s.end()
    }
}
