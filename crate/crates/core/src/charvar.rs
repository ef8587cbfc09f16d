//! The SL(2,C) character variety of a torus knot group `<alpha, beta | alpha^p = beta^q>`
//! through its Chebyshev-curve model.
//!
//! The irreducible part has one component per node `(a, b)` of the curve
//! `C_p(X) = C_q(Y)` (`0<a<p`, `0<b<q`, `a = b mod 2`). On the component,
//! `tr alpha = 2cos(a pi/p)` and `tr beta = 2cos(b pi/q)` are constant while the
//! meridian trace `tr mu` runs over `C` minus the two values
//! `2cos((ar/p +- bs/q) pi)`. The reducible part maps to the resolved curve
//! `t -> (C_q(t), C_p(t), [C_q'(t) : C_p'(t)])`, `t = tr mu`.
//!
//! Sign convention: the blow-up surface is `F_X Z0 = -F_Y Z1`, and the resolved
//! curve is identified with it through `[Z0 : Z1] = [C_q'(t) : C_p'(t)]`.

use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;

use crate::chebyshev::{chebyshev_first, CurvePolynomials, Scalar};
use crate::error::{Error, Result};
use crate::exactnum::CyclotomicNumber;

/// A torus knot `T(p, q)` with meridian exponents `mu = alpha^-r beta^s`, `ps - qr = 1`.
///
/// Stored with `2 <= p < q`; the knot type is symmetric in `(p, q)` and under
/// mirroring, so inputs are normalized by absolute value and ordering.
/// `q` need not be odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusKnot {
    p: u32,
    q: u32,
    r: i64,
    s: i64,
}

/// Validate and normalize `(p, q)`; `(r, s)` is canonicalized to `0 <= r < p`.
pub fn make_knot(p: i64, q: i64) -> Result<TorusKnot> {
    crate::chebyshev::validate_pair(p, q)?;
    let (lo, hi) = if p.abs() < q.abs() {
        (p.abs(), q.abs())
    } else {
        (q.abs(), p.abs())
    };
    // ps - qr = 1  <=>  q r = -1 (mod p)
    let ext = hi.extended_gcd(&lo);
    // ext.x * hi + ext.y * lo = 1, so hi * (-ext.x) = -1 (mod lo)
    let r = (-ext.x).rem_euclid(lo);
    let s = (1 + hi * r) / lo;
    debug_assert_eq!(lo * s - hi * r, 1);
    Ok(TorusKnot {
        p: lo as u32,
        q: hi as u32,
        r,
        s,
    })
}

impl TorusKnot {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        make_knot(p, q)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// `2pq`: the cyclotomic order holding every exact quantity of the knot.
    pub fn ambient_order(&self) -> usize {
        2 * (self.p as usize) * (self.q as usize)
    }

    /// Number of grid labels `(p-1)(q-1)`.
    pub fn grid_len(&self) -> usize {
        ((self.p - 1) * (self.q - 1)) as usize
    }

    pub fn component_count(&self) -> usize {
        self.grid_len() / 2
    }

    pub fn grid_index(&self, a: i64, b: i64) -> Result<GridIndex> {
        if a <= 0 || b <= 0 || a >= self.p as i64 || b >= self.q as i64 {
            return Err(Error::OutOfGrid {
                a,
                b,
                p: self.p,
                q: self.q,
            });
        }
        Ok(GridIndex {
            a: a as u32,
            b: b as u32,
        })
    }

    pub fn component(&self, a: i64, b: i64) -> Result<ComponentIndex> {
        ComponentIndex::try_from(self.grid_index(a, b)?)
    }

    /// The grid in lexicographic `(a, b)` order.
    pub fn grid(&self) -> impl Iterator<Item = GridIndex> + '_ {
        (1..self.p).flat_map(move |a| (1..self.q).map(move |b| GridIndex { a, b }))
    }

    /// Position of `x` in [`grid`](Self::grid) order.
    pub fn position(&self, x: GridIndex) -> usize {
        ((x.a - 1) * (self.q - 1) + (x.b - 1)) as usize
    }

    pub fn grid_at(&self, pos: usize) -> GridIndex {
        let w = (self.q - 1) as usize;
        GridIndex {
            a: (pos / w) as u32 + 1,
            b: (pos % w) as u32 + 1,
        }
    }

    /// The label `(1, 1)`.
    pub fn unit(&self) -> GridIndex {
        GridIndex { a: 1, b: 1 }
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({}, {})", self.p, self.q)
    }
}

/// A label `(a, b)` with `0 < a < p`, `0 < b < q`. Construct through [`TorusKnot::grid_index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridIndex {
    pub a: u32,
    pub b: u32,
}

impl fmt::Display for GridIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A grid label with `a = b (mod 2)`: one irreducible component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentIndex(GridIndex);

impl ComponentIndex {
    pub fn a(&self) -> u32 {
        self.0.a
    }

    pub fn b(&self) -> u32 {
        self.0.b
    }

    pub fn grid(&self) -> GridIndex {
        self.0
    }
}

impl TryFrom<GridIndex> for ComponentIndex {
    type Error = Error;

    fn try_from(x: GridIndex) -> Result<Self> {
        if x.a % 2 != x.b % 2 {
            return Err(Error::ParityMismatch { a: x.a, b: x.b });
        }
        Ok(ComponentIndex(x))
    }
}

impl fmt::Display for ComponentIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All irreducible components, lexicographic.
pub fn components(k: &TorusKnot) -> Vec<ComponentIndex> {
    k.grid()
        .filter_map(|x| ComponentIndex::try_from(x).ok())
        .collect()
}

/// A pair of exact traces labeled by the sign in `2cos((ar/p +- bs/q) pi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePair {
    pub plus: CyclotomicNumber,
    pub minus: CyclotomicNumber,
}

impl TracePair {
    pub fn floats(&self) -> [f64; 2] {
        [self.plus.to_f64(), self.minus.to_f64()]
    }

    /// Same two values regardless of labeling.
    pub fn same_set(&self, other: &[CyclotomicNumber]) -> bool {
        other.len() == 2
            && ((self.plus == other[0] && self.minus == other[1])
                || (self.plus == other[1] && self.minus == other[0]))
    }
}

fn meridian_angle(k: &TorusKnot, c: ComponentIndex, sign: i64) -> i64 {
    // (ar/p + sign * bs/q) pi = (a q r + sign * b p s) pi / (pq)
    c.a() as i64 * k.q as i64 * k.r + sign * c.b() as i64 * k.p as i64 * k.s
}

/// The two meridian traces missing from the component, `2cos((ar/p +- bs/q) pi)`.
pub fn excluded_traces(k: &TorusKnot, c: ComponentIndex) -> TracePair {
    let n = k.ambient_order();
    TracePair {
        plus: CyclotomicNumber::two_cos_root(n, meridian_angle(k, c, 1)),
        minus: CyclotomicNumber::two_cos_root(n, meridian_angle(k, c, -1)),
    }
}

/// A point `(X, Y, [Z0 : Z1])` of `C^2 x P^1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupPoint<T> {
    pub x: T,
    pub y: T,
    pub z0: T,
    pub z1: T,
}

impl<T: Scalar> BlowupPoint<T> {
    /// `F_X(X,Y) Z0 + F_Y(X,Y) Z1`, zero exactly on the blow-up surface.
    pub fn surface_residual(&self, curve: &CurvePolynomials) -> T {
        curve
            .fx
            .eval(&self.x, &self.y)
            .mul_s(&self.z0)
            .add_s(&curve.fy.eval(&self.x, &self.y).mul_s(&self.z1))
    }

    /// `F(X, Y)`.
    pub fn curve_residual(&self, curve: &CurvePolynomials) -> T {
        curve.f.eval(&self.x, &self.y)
    }
}

/// `t -> (C_q(t), C_p(t), [C_q'(t) : C_p'(t)])`.
///
/// For coprime `p, q` the derivatives `q S_{q-1}` and `p S_{p-1}` have no common
/// root, so the degenerate-coordinate error is unreachable for valid knots.
pub fn curve_param<T: Scalar + fmt::Debug>(k: &TorusKnot, t: &T) -> Result<BlowupPoint<T>> {
    let cq = chebyshev_first(k.q as i64);
    let cp = chebyshev_first(k.p as i64);
    let z0 = cq.derivative().eval(t);
    let z1 = cp.derivative().eval(t);
    if z0.is_zero_s() && z1.is_zero_s() {
        return Err(Error::DegenerateProjective {
            t: format!("{t:?}"),
        });
    }
    Ok(BlowupPoint {
        x: cq.eval(t),
        y: cp.eval(t),
        z0,
        z1,
    })
}

/// Solve `C_q(t) = 2cos(a pi/p)`, `C_p(t) = 2cos(b pi/q)` for `t`.
///
/// Every root of `C_q(t) = 2cos(a pi/p)` has the form `2cos(j pi/(pq))`, so the
/// candidates `j = 0..=pq` are screened in floating point and confirmed by exact
/// substitution. Results are sorted by their real value.
pub fn solve_trace_param(k: &TorusKnot, c: ComponentIndex) -> Vec<CyclotomicNumber> {
    let n = k.ambient_order();
    let pq = (k.p * k.q) as i64;
    let cq = chebyshev_first(k.q as i64);
    let cp = chebyshev_first(k.p as i64);
    let x0 =
        CyclotomicNumber::two_cos_pi_frac(c.a() as i64, k.p as usize, n).expect("2p divides 2pq");
    let y0 =
        CyclotomicNumber::two_cos_pi_frac(c.b() as i64, k.q as usize, n).expect("2q divides 2pq");
    let (x0f, y0f) = (x0.to_f64(), y0.to_f64());
    let mut found: Vec<(f64, CyclotomicNumber)> = Vec::new();
    for j in 0..=pq {
        let tf = 2.0 * (PI * j as f64 / pq as f64).cos();
        if (cq.eval(&tf) - x0f).abs() > 1e-6 || (cp.eval(&tf) - y0f).abs() > 1e-6 {
            continue;
        }
        let t = CyclotomicNumber::two_cos_root(n, j);
        if cq.eval(&t) == x0 && cp.eval(&t) == y0 && !found.iter().any(|(_, u)| *u == t) {
            found.push((tf, t));
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    found.into_iter().map(|(_, t)| t).collect()
}

/// A point of `P^1` in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint {
    pub z0: f64,
    pub z1: f64,
}

impl ProjectivePoint {
    pub fn new(z0: f64, z1: f64) -> Self {
        ProjectivePoint { z0, z1 }
    }

    pub const INFINITY: ProjectivePoint = ProjectivePoint { z0: 1.0, z1: 0.0 };

    /// Whether `[z0 : z1]` and `[w0 : w1]` agree up to scaling, relative tolerance `tol`.
    pub fn proportional(&self, other: &ProjectivePoint, tol: f64) -> bool {
        let cross = self.z0 * other.z1 - self.z1 * other.z0;
        let scale = self.z0.hypot(self.z1) * other.z0.hypot(other.z1);
        scale > 0.0 && cross.abs() <= tol * scale
    }
}

/// Where the resolved curve meets the exceptional line over `(a, b)`:
/// `[q sin(a pi/p) : +- p sin(b pi/q)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExceptionalPair {
    pub plus: ProjectivePoint,
    pub minus: ProjectivePoint,
}

pub fn exceptional_intersections(k: &TorusKnot, c: ComponentIndex) -> ExceptionalPair {
    let (p, q) = (k.p as f64, k.q as f64);
    let u = q * (PI * c.a() as f64 / p).sin();
    let v = p * (PI * c.b() as f64 / q).sin();
    ExceptionalPair {
        plus: ProjectivePoint::new(u, v),
        minus: ProjectivePoint::new(u, -v),
    }
}

/// Image of a point of the exceptional line under the component isomorphism.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MoebiusImage {
    /// An admissible meridian trace on the component.
    Trace(f64),
    /// One of the two intersection points with the resolved curve; the value is
    /// the excluded trace it is sent to.
    Excluded(f64),
    /// The point `[1 : 0]`, sent to infinity.
    Infinity,
}

/// Relative tolerance used to recognize the three boundary inputs.
pub const MOEBIUS_TOL: f64 = 1e-9;

/// The map from the exceptional line over `(a, b)` to the meridian trace:
/// `w = (P Z0 + Q Z1) / (P Z0 - Q Z1)` with `P = p sin(b pi/q)`, `Q = q sin(a pi/p)`,
/// then `2cos(A - B) - 4 sin A sin B * w/(w-1)` with `A = ar pi/p`, `B = bs pi/q`.
///
/// Evaluated as `w/(w-1) = (P Z0 + Q Z1) / (2 Q Z1)`, which is finite except at `[1 : 0]`.
pub fn moebius_phi(k: &TorusKnot, c: ComponentIndex, z: ProjectivePoint) -> MoebiusImage {
    let (p, q) = (k.p as f64, k.q as f64);
    let big_p = p * (PI * c.b() as f64 / q).sin();
    let big_q = q * (PI * c.a() as f64 / p).sin();
    let ang_a = PI * (c.a() as i64 * k.r) as f64 / p;
    let ang_b = PI * (c.b() as i64 * k.s) as f64 / q;
    if z.proportional(&ProjectivePoint::INFINITY, MOEBIUS_TOL) {
        return MoebiusImage::Infinity;
    }
    let ratio = (big_p * z.z0 + big_q * z.z1) / (2.0 * big_q * z.z1);
    let value = 2.0 * (ang_a - ang_b).cos() - 4.0 * ang_a.sin() * ang_b.sin() * ratio;
    let ends = exceptional_intersections(k, c);
    if z.proportional(&ends.plus, MOEBIUS_TOL) || z.proportional(&ends.minus, MOEBIUS_TOL) {
        MoebiusImage::Excluded(value)
    } else {
        MoebiusImage::Trace(value)
    }
}

/// `tr_gamma = C_|k|(tr_mu)` on the reducible part for `[gamma] = [mu^k]`;
/// `k = q` gives `tr alpha`, `k = p` gives `tr beta`.
pub fn reducible_trace<T: Scalar>(_k: &TorusKnot, homology_exponent: i64, t: &T) -> T {
    chebyshev_first(homology_exponent).eval(t)
}
