//! The Chebyshev curve `F(X, Y) = C_p(X) - C_q(Y) = 0` and its critical data.

use std::io::{self, Write};

use num_integer::Integer;
use num_traits::Zero;

use super::{chebyshev_first, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::exactnum::{CyclotomicNumber, Rational};

/// Dense bivariate polynomial; `coeffs[i][j]` multiplies `X^i Y^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<Vec<Rational>>,
}

impl BiPoly {
    fn new(mut coeffs: Vec<Vec<Rational>>) -> Self {
        for row in &mut coeffs {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while coeffs.last().is_some_and(|r| r.is_empty()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    /// `P(X)` viewed as a bivariate polynomial.
    pub fn in_x(p: &Polynomial) -> Self {
        Self::new(p.coeffs().iter().map(|c| vec![c.clone()]).collect())
    }

    /// `P(Y)` viewed as a bivariate polynomial.
    pub fn in_y(p: &Polynomial) -> Self {
        Self::new(vec![p.coeffs().to_vec()])
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .map(|r| r.len())
            .max()
            .and_then(|n| n.checked_sub(1))
    }

    fn dims(&self, other: &Self) -> (usize, usize) {
        let nx = self.coeffs.len().max(other.coeffs.len());
        let ny = self
            .coeffs
            .iter()
            .chain(&other.coeffs)
            .map(|r| r.len())
            .max()
            .unwrap_or(0);
        (nx, ny)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (nx, ny) = self.dims(other);
        Self::new(
            (0..nx)
                .map(|i| {
                    (0..ny)
                        .map(|j| self.coeff(i, j) - other.coeff(i, j))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn partial_x(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, row)| {
                    let k = Rational::from_integer((i as i64).into());
                    row.iter().map(|c| c * &k).collect()
                })
                .collect(),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .skip(1)
                        .map(|(j, c)| c * Rational::from_integer((j as i64).into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Evaluate at `(x, y)`; `x` and `y` must share an arithmetic.
    pub fn eval<T: Scalar>(&self, x: &T, y: &T) -> T {
        let mut acc = x.constant_like(&Rational::zero());
        for row in self.coeffs.iter().rev() {
            let inner = Polynomial::new(row.clone()).eval(y);
            acc = acc.mul_s(x).add_s(&inner);
        }
        acc
    }
}

/// `F = C_p(X) - C_q(Y)` with its first and second partial derivatives.
#[derive(Debug, Clone)]
pub struct CurvePolynomials {
    pub p: u32,
    pub q: u32,
    pub f: BiPoly,
    pub fx: BiPoly,
    pub fy: BiPoly,
    pub fxx: BiPoly,
    pub fyy: BiPoly,
    pub fxy: BiPoly,
}

impl CurvePolynomials {
    /// `det` of the Hessian of `F` at `(x, y)`, from the stored second partials.
    pub fn hessian_at<T: Scalar>(&self, x: &T, y: &T) -> T {
        let fxy = self.fxy.eval(x, y);
        let cross = fxy.mul_s(&fxy);
        let minus_one = x.constant_like(&Rational::from_integer((-1).into()));
        self.fxx
            .eval(x, y)
            .mul_s(&self.fyy.eval(x, y))
            .add_s(&cross.mul_s(&minus_one))
    }
}

pub(crate) fn validate_pair(p: i64, q: i64) -> Result<()> {
    let bad = |reason: &str| {
        Err(Error::InvalidKnot {
            p,
            q,
            reason: reason.to_string(),
        })
    };
    if p.abs() < 2 || q.abs() < 2 {
        return bad("|p| and |q| must both be at least 2");
    }
    if p.gcd(&q) != 1 {
        return bad("p and q must be coprime");
    }
    Ok(())
}

/// `F` and all its first and second partials. Requires `p, q >= 2` coprime.
pub fn curve_polynomials(p: u32, q: u32) -> Result<CurvePolynomials> {
    validate_pair(p as i64, q as i64)?;
    let f = BiPoly::in_x(&chebyshev_first(p as i64)).sub(&BiPoly::in_y(&chebyshev_first(q as i64)));
    let fx = f.partial_x();
    let fy = f.partial_y();
    Ok(CurvePolynomials {
        p,
        q,
        fxx: fx.partial_x(),
        fyy: fy.partial_y(),
        fxy: fx.partial_y(),
        f,
        fx,
        fy,
    })
}

/// A point `(2cos(a pi/p), 2cos(b pi/q))`, exact in `Q(zeta_{2pq})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    pub a: u32,
    pub b: u32,
    pub x: CyclotomicNumber,
    pub y: CyclotomicNumber,
}

impl CurvePoint {
    pub fn float(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

/// All `(p-1)(q-1)` common zeros of `F_X` and `F_Y` (the blow-up centers),
/// lexicographic in `(a, b)`.
pub fn critical_points(p: u32, q: u32) -> Result<Vec<CurvePoint>> {
    validate_pair(p as i64, q as i64)?;
    let ambient = 2 * (p * q) as usize;
    let mut out = Vec::with_capacity(((p - 1) * (q - 1)) as usize);
    for a in 1..p {
        let x = CyclotomicNumber::two_cos_pi_frac(a as i64, p as usize, ambient)?;
        for b in 1..q {
            let y = CyclotomicNumber::two_cos_pi_frac(b as i64, q as usize, ambient)?;
            out.push(CurvePoint {
                a,
                b,
                x: x.clone(),
                y,
            });
        }
    }
    Ok(out)
}

/// The `(p-1)(q-1)/2` nodes of the curve: critical points with `a = b (mod 2)`.
pub fn singular_points(p: u32, q: u32) -> Result<Vec<CurvePoint>> {
    Ok(critical_points(p, q)?
        .into_iter()
        .filter(|pt| pt.a % 2 == pt.b % 2)
        .collect())
}

/// One sample `(C_q(t), C_p(t), [C_q'(t) : C_p'(t)])` of the resolved curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z0: f64,
    pub z1: f64,
}

/// `samples` equally spaced parameters in `[t_min, t_max]`.
pub fn sample_curve(
    p: u32,
    q: u32,
    samples: usize,
    t_min: f64,
    t_max: f64,
) -> Result<Vec<CurveSample>> {
    validate_pair(p as i64, q as i64)?;
    let cq = chebyshev_first(q as i64);
    let cp = chebyshev_first(p as i64);
    let (dq, dp) = (cq.derivative(), cp.derivative());
    let step = if samples > 1 {
        (t_max - t_min) / (samples - 1) as f64
    } else {
        0.0
    };
    Ok((0..samples)
        .map(|k| {
            let t = if k + 1 == samples && samples > 1 {
                t_max
            } else {
                t_min + step * k as f64
            };
            CurveSample {
                t,
                x: cq.eval(&t),
                y: cp.eval(&t),
                z0: dq.eval(&t),
                z1: dp.eval(&t),
            }
        })
        .collect())
}

/// CSV with header `t,X,Y,Z0,Z1`.
pub fn write_curve_csv<W: Write>(mut w: W, samples: &[CurveSample]) -> io::Result<()> {
    writeln!(w, "t,X,Y,Z0,Z1")?;
    for s in samples {
        writeln!(w, "{},{},{},{},{}", s.t, s.x, s.y, s.z0, s.z1)?;
    }
    Ok(())
}
