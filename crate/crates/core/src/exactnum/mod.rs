//! Exact rational and cyclotomic arithmetic.
//!
//! Every trigonometric quantity in the crate (cosines and squared sines of
//! rational multiples of pi) lives in a cyclotomic field `Q(zeta_N)`. Elements
//! are kept in the power basis `1, zeta, ..., zeta^(phi(N)-1)` reduced modulo
//! the `N`-th cyclotomic polynomial, so equality of field elements is equality
//! of coefficient vectors and rationality is a structural test.

mod cyclotomic;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::CyclotomicNumber;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Integer polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
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
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Render a rational as `num/den`, omitting the denominator when it is 1.
pub fn fraction_string(r: &Rational) -> String {
    r.to_string()
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    assert!(n >= 1, "totient of zero");
    let mut m = n;
    let mut result = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

/// Per-order data shared by every element of `Q(zeta_N)`.
#[derive(Debug)]
pub(crate) struct Field {
    pub degree: usize,
    /// Monic `Phi_N`, ascending, length `degree + 1`.
    pub modulus: Vec<BigInt>,
    /// `x^j mod Phi_N` for `0 <= j < N`, each of length `degree`.
    pub powers: Vec<Vec<BigInt>>,
}

fn field_cache() -> &'static RwLock<HashMap<usize, Arc<Field>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_cache() -> &'static RwLock<HashMap<usize, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact division of `num` by a monic integer polynomial. Panics on a nonzero remainder.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = std::mem::take(&mut rem[k + dd]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate().take(dd) {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    assert!(
        rem.iter().all(Zero::is_zero),
        "cyclotomic division left a remainder"
    );
    quot
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by `Phi_d`
/// for every proper divisor `d` of `n`. Results are cached.
pub fn cyclotomic_polynomial(n: usize) -> Arc<IntPoly> {
    assert!(n >= 1, "cyclotomic polynomial of order zero");
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut acc = vec![BigInt::zero(); n + 1];
    acc[0] = -BigInt::one();
    acc[n] = BigInt::one();
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let phi_d = cyclotomic_polynomial(d);
        acc = div_exact_monic(&acc, &phi_d.0);
    }
    let poly = Arc::new(IntPoly(acc));
    poly_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

pub(crate) fn field(order: usize) -> Arc<Field> {
    assert!(order >= 1, "cyclotomic field of order zero");
    if let Some(f) = field_cache().read().unwrap().get(&order) {
        return Arc::clone(f);
    }
    let modulus = cyclotomic_polynomial(order).0.clone();
    let degree = modulus.len() - 1;
    let mut powers = Vec::with_capacity(order);
    let mut cur = vec![BigInt::zero(); degree];
    cur[0] = BigInt::one();
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow coefficient
        let top = cur.pop().unwrap();
        cur.insert(0, BigInt::zero());
        if !top.is_zero() {
            for (j, mj) in modulus.iter().enumerate().take(degree) {
                cur[j] -= &top * mj;
            }
        }
    }
    let f = Arc::new(Field {
        degree,
        modulus,
        powers,
    });
    field_cache()
        .write()
        .unwrap()
        .entry(order)
        .or_insert_with(|| Arc::clone(&f));
    f
}

pub(crate) fn gcd_all<'a>(start: &BigInt, it: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = start.abs();
    for v in it {
        if g.is_one() {
            break;
        }
        if !v.is_zero() {
            g = g.gcd(v);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        assert_eq!(*cyclotomic_polynomial(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), IntPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn phi_12() {
        // x^12 - 1 = Phi1 Phi2 Phi3 Phi4 Phi6 Phi12
        assert_eq!(
            *cyclotomic_polynomial(12),
            IntPoly::from_i64(&[1, 0, -1, 0, 1])
        );
        assert_eq!(cyclotomic_polynomial(12).to_string(), "x^4 - x^2 + 1");
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..=120 {
            assert_eq!(cyclotomic_polynomial(n).degree(), totient(n), "n = {n}");
        }
    }

    #[test]
    fn phi_105_has_a_two() {
        let p = cyclotomic_polynomial(105);
        assert!(p.0.iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in [6usize, 15, 30, 36] {
            let mut acc = vec![BigInt::one()];
            for d in divisors(n) {
                let f = cyclotomic_polynomial(d);
                let mut next = vec![BigInt::zero(); acc.len() + f.0.len() - 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in f.0.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                acc = next;
            }
            let mut expect = vec![BigInt::zero(); n + 1];
            expect[0] = -BigInt::one();
            expect[n] = BigInt::one();
            assert_eq!(acc, expect);
        }
    }

    #[test]
    fn fraction_format() {
        assert_eq!(fraction_string(&rational(6, 4)), "3/2");
        assert_eq!(fraction_string(&int(-5)), "-5");
        assert_eq!(fraction_string(&rational(-1, 2)), "-1/2");
    }
}
