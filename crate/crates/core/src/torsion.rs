//! Adjoint Reidemeister torsion of torus knot exteriors (with respect to the
//! meridian) and the power sums `sum_rho (2 tau_rho)^(g-1)` over a generic
//! level set of the meridian trace.
//!
//! The torsion is constant on each irreducible component `(a, b)`:
//! `tau = pq / (16 sin^2(pi a/p) sin^2(pi b/q))`. It is evaluated two ways:
//! directly from that formula, and as `-Hess(F) / (4pq)` at the node
//! `(2cos(a pi/p), 2cos(b pi/q))` of `F = C_p(X) - C_q(Y)`.
//!
//! A generic level `tr mu = c` meets every component exactly once, so the
//! power sum is a sum over components and does not depend on `c`.

use serde::Serialize;

use crate::charvar::{components, ComponentIndex, TorusKnot};
use crate::chebyshev::curve_polynomials;
use crate::exactnum::{int, CyclotomicNumber, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorsionValue {
    #[serde(skip)]
    pub component: ComponentIndex,
    pub exact: CyclotomicNumber,
    pub float: f64,
}

impl TorsionValue {
    fn new(component: ComponentIndex, exact: CyclotomicNumber) -> Self {
        let float = exact.to_f64();
        TorsionValue {
            component,
            exact,
            float,
        }
    }
}

fn node(k: &TorusKnot, c: ComponentIndex) -> (CyclotomicNumber, CyclotomicNumber) {
    let n = k.ambient_order();
    let x =
        CyclotomicNumber::two_cos_pi_frac(c.a() as i64, k.p() as usize, n).expect("2p divides 2pq");
    let y =
        CyclotomicNumber::two_cos_pi_frac(c.b() as i64, k.q() as usize, n).expect("2q divides 2pq");
    (x, y)
}

/// `sin^2(pi a/p) sin^2(pi b/q)` in `Q(zeta_{2pq})`.
pub(crate) fn sin_sq_product(k: &TorusKnot, a: u32, b: u32) -> CyclotomicNumber {
    let n = k.ambient_order();
    let sa = CyclotomicNumber::sin_sq_pi_frac(a as i64, k.p() as usize, n).expect("2p | 2pq");
    let sb = CyclotomicNumber::sin_sq_pi_frac(b as i64, k.q() as usize, n).expect("2q | 2pq");
    &sa * &sb
}

/// `pq / (16 sin^2(pi a/p) sin^2(pi b/q))`, exact.
pub fn adjoint_torsion(k: &TorusKnot, c: ComponentIndex) -> TorsionValue {
    let denom = sin_sq_product(k, c.a(), c.b())
        .inv()
        .expect("sines are nonzero on the open grid");
    let pq = (k.p() * k.q()) as i64;
    TorsionValue::new(c, denom.scale(&crate::exactnum::rational(pq, 16)))
}

/// `det(d(F_X, F_Y)/d(X, Y))` at the node of component `c`, by evaluating the
/// second partials of `C_p(X) - C_q(Y)`.
pub fn hessian_at(k: &TorusKnot, c: ComponentIndex) -> CyclotomicNumber {
    let curve = curve_polynomials(k.p(), k.q()).expect("validated knot");
    let (x, y) = node(k, c);
    curve.hessian_at(&x, &y)
}

/// `-Hess(F) / (4pq)` at the node of `c`.
pub fn torsion_from_hessian(k: &TorusKnot, c: ComponentIndex) -> TorsionValue {
    let pq = (k.p() * k.q()) as i64;
    let h = hessian_at(k, c);
    TorsionValue::new(c, h.scale(&crate::exactnum::rational(-1, 4 * pq)))
}

/// Closed form `-p^2 q^2 / (4 sin^2(a pi/p) sin^2(b pi/q))` of the Hessian.
pub fn hessian_closed_form(k: &TorusKnot, c: ComponentIndex) -> CyclotomicNumber {
    let pq = (k.p() * k.q()) as i64;
    sin_sq_product(k, c.a(), c.b())
        .inv()
        .expect("nonzero")
        .scale(&crate::exactnum::rational(-pq * pq, 4))
}

/// `sum (2 tau)^(g-1)` with its rationality verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSum {
    pub g: u32,
    pub value: CyclotomicNumber,
    pub rational: Option<Rational>,
}

impl PowerSum {
    pub fn is_integer(&self) -> bool {
        self.rational
            .as_ref()
            .is_some_and(crate::exactnum::is_integer)
    }
}

/// Twice the torsion of every component, computed once per knot.
///
/// The sine factors are inverted once per `a` and per `b` rather than once per
/// component; `(2 tau)^-1` for `g = 0` is likewise assembled from the field
/// inverses of `1/sin^2`.
#[derive(Debug, Clone)]
pub struct TorsionTable {
    knot: TorusKnot,
    torsions: Vec<TorsionValue>,
    doubled: Vec<CyclotomicNumber>,
    doubled_inv: Vec<CyclotomicNumber>,
}

impl TorsionTable {
    pub fn new(k: &TorusKnot) -> Self {
        let n = k.ambient_order();
        let inv_sin = |m: u32| -> Vec<CyclotomicNumber> {
            (1..m)
                .map(|a| {
                    CyclotomicNumber::sin_sq_pi_frac(a as i64, m as usize, n)
                        .expect("divides")
                        .inv()
                        .expect("nonzero sine")
                })
                .collect()
        };
        let (ia, ib) = (inv_sin(k.p()), inv_sin(k.q()));
        let (iia, iib): (Vec<_>, Vec<_>) = (
            ia.iter().map(|x| x.inv().expect("nonzero")).collect(),
            ib.iter().map(|x| x.inv().expect("nonzero")).collect(),
        );
        let pq = (k.p() * k.q()) as i64;
        let (c, c_inv) = (
            crate::exactnum::rational(pq, 16),
            crate::exactnum::rational(8, pq),
        );
        let two = int(2);
        let mut torsions = Vec::new();
        let mut doubled = Vec::new();
        let mut doubled_inv = Vec::new();
        for comp in components(k) {
            let (a, b) = (comp.a() as usize - 1, comp.b() as usize - 1);
            let t = (&ia[a] * &ib[b]).scale(&c);
            doubled.push(t.scale(&two));
            doubled_inv.push((&iia[a] * &iib[b]).scale(&c_inv));
            torsions.push(TorsionValue::new(comp, t));
        }
        TorsionTable {
            knot: *k,
            torsions,
            doubled,
            doubled_inv,
        }
    }

    pub fn knot(&self) -> &TorusKnot {
        &self.knot
    }

    pub fn torsions(&self) -> &[TorsionValue] {
        &self.torsions
    }

    /// `sum over components of (2 tau)^(g-1)`; `g = 0` inverts `2 tau` in the field.
    pub fn power_sum(&self, g: u32) -> PowerSum {
        let value: CyclotomicNumber = if g == 0 {
            self.doubled_inv.iter().cloned().sum()
        } else {
            self.doubled
                .iter()
                .map(|t| t.pow(g as i64 - 1).expect("nonnegative power"))
                .sum()
        };
        let rational = value.to_rational();
        PowerSum { g, value, rational }
    }
}

pub fn torsion_power_sum(k: &TorusKnot, g: u32) -> PowerSum {
    TorsionTable::new(k).power_sum(g)
}

/// `2 tau * S_{(a,b),(1,1)}^2 = 1` in floating point, tolerance `1e-9`.
pub fn torsion_s_matrix_relation_check(k: &TorusKnot, c: ComponentIndex) -> bool {
    let s = crate::verlinde::SMatrix::new(k);
    let entry = s.entry(c.grid(), k.unit());
    (2.0 * adjoint_torsion(k, c).float * entry * entry - 1.0).abs() < 1e-9
}

/// The same relation with the exact squared S-matrix entry.
pub fn torsion_s_matrix_relation_exact(k: &TorusKnot, c: ComponentIndex) -> bool {
    let s = crate::verlinde::SMatrix::new(k);
    let sq = s.squared_exact(c.grid(), k.unit());
    let lhs = &adjoint_torsion(k, c).exact.scale(&int(2)) * &sq;
    lhs == CyclotomicNumber::one(k.ambient_order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvar::make_knot;
    use crate::exactnum::rational;

    #[test]
    fn trefoil_torsion() {
        let k = make_knot(2, 3).unwrap();
        let c = k.component(1, 1).unwrap();
        let t = adjoint_torsion(&k, c);
        assert_eq!(t.exact.to_rational(), Some(rational(1, 2)));
        assert!((t.float - 0.5).abs() < 1e-12);
        assert_eq!(hessian_at(&k, c).to_rational(), Some(int(-12)));
        assert_eq!(hessian_closed_form(&k, c).to_rational(), Some(int(-12)));
        assert_eq!(torsion_from_hessian(&k, c).exact, t.exact);
    }

    #[test]
    fn torus_2_5_torsion() {
        let k = make_knot(2, 5).unwrap();
        let c = k.component(1, 1).unwrap();
        let t = adjoint_torsion(&k, c);
        let expect = 10.0 / (16.0 * (std::f64::consts::PI / 5.0).sin().powi(2));
        assert!((t.float - expect).abs() < 1e-10);
        assert!((t.float - 1.809017).abs() < 1e-6);
        assert!(t.exact.to_rational().is_none());
    }

    #[test]
    fn hessian_route_on_t35() {
        let k = make_knot(3, 5).unwrap();
        for c in components(&k) {
            assert_eq!(
                torsion_from_hessian(&k, c).exact,
                adjoint_torsion(&k, c).exact
            );
            assert!(hessian_at(&k, c).to_f64() < 0.0);
        }
    }

    #[test]
    fn trefoil_power_sums() {
        let k = make_knot(2, 3).unwrap();
        let table = TorsionTable::new(&k);
        for g in 0..=10 {
            assert_eq!(table.power_sum(g).rational, Some(int(1)), "g = {g}");
        }
    }

    #[test]
    fn table_matches_direct_formula() {
        let k = make_knot(4, 7).unwrap();
        let table = TorsionTable::new(&k);
        for t in table.torsions() {
            assert_eq!(t, &adjoint_torsion(&k, t.component));
        }
    }

    #[test]
    fn t25_power_sums() {
        let table = TorsionTable::new(&make_knot(2, 5).unwrap());
        let vals: Vec<_> = (0..=3)
            .map(|g| table.power_sum(g).rational.unwrap())
            .collect();
        assert_eq!(vals, vec![int(1), int(2), int(5), int(15)]);
        assert!(table.power_sum(3).is_integer());
    }

    #[test]
    fn s_matrix_relation() {
        for (p, q) in [(2, 3), (2, 5), (3, 4)] {
            let k = make_knot(p, q).unwrap();
            for c in components(&k) {
                assert!(torsion_s_matrix_relation_check(&k, c));
                assert!(torsion_s_matrix_relation_exact(&k, c));
            }
        }
    }
}
