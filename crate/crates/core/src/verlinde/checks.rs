use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::fusion::{d0_one, d0_two, d1_single, FusionTensor, RationalRoute};
use super::trig::{two_pow, TrigRoute};
use super::{MultiIndex, SMatrix};
use crate::charvar::{components, TorusKnot};
use crate::chebyshev::{chebyshev_second, validate_pair, Scalar};
use crate::error::{Error, Result};
use crate::exactnum::{int, is_integer, rational, CyclotomicNumber, Rational};
use crate::torsion::{adjoint_torsion, torsion_from_hessian, TorsionTable};

const KEPT_FAILURES: usize = 20;

/// Tally of one group of exact checks; keeps the first few failure descriptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn merge(&mut self, other: CheckOutcome) {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = KEPT_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

/// Closed forms for `d(0, l_x)`, `d(0, l_x + l_y)` and `N_xyz` against the sine sums,
/// over the full index range; also total symmetry and the `{0, 1/2}` range of `N`.
pub fn check_initial_values(trig: &TrigRoute, tensor: &FusionTensor) -> CheckOutcome {
    let k = *trig.knot();
    let mut out = CheckOutcome::new("initial values");
    let grid: Vec<_> = k.grid().collect();
    for &x in &grid {
        let v = trig.d(0, &MultiIndex::single(&k, x)).to_rational();
        out.record(v.as_ref() == Some(&d0_one(&k, x)), || {
            format!("d(0, l{x}) = {v:?}")
        });
    }
    for (i, &x) in grid.iter().enumerate() {
        for &y in &grid[i..] {
            let v = trig
                .d(0, &MultiIndex::from_labels(&k, &[x, y]))
                .to_rational();
            out.record(v.as_ref() == Some(&d0_two(&k, x, y)), || {
                format!("d(0, l{x} + l{y}) = {v:?}")
            });
        }
    }
    let d = grid.len();
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let (x, y, z) = (grid[i], grid[j], grid[l]);
                let v = trig
                    .d(0, &MultiIndex::from_labels(&k, &[x, y, z]))
                    .to_rational();
                let n = tensor.at(i, j, l);
                out.record(v.as_ref() == Some(&n), || {
                    format!("N_{x}{y}{z} = {n} but the sine sum gives {v:?}")
                });
            }
        }
    }
    out.record(tensor.is_symmetric(), || {
        "fusion tensor not symmetric".into()
    });
    out.record(tensor.entries_in_range(), || {
        "fusion tensor entry outside {0, 1/2}".into()
    });
    out
}

/// Genus-one data: `d(0,0) = 4`, `d(1,0) = (p-1)(q-1)`, the closed form of
/// `d(1, l_x)` against its contraction and the sine sum, `D1` against `d(1, l_x + l_y)`,
/// and `trace(D1^(g-1)) = sum_x d(g-1, l_x) d(1, l_x)` for `2 <= g <= g_max`.
pub fn check_genus_one(trig: &TrigRoute, route: &RationalRoute, g_max: u32) -> CheckOutcome {
    let k = *trig.knot();
    let mut out = CheckOutcome::new("genus one and D1");
    let zero = MultiIndex::zero(&k);
    let gl = int(k.grid_len() as i64);
    for (g, want) in [(0, int(4)), (1, gl)] {
        let r = route.d(g, &zero);
        let t = trig.d(g, &zero).to_rational();
        out.record(r == want && t.as_ref() == Some(&want), || {
            format!("d({g}, 0): rational {r}, trig {t:?}, expected {want}")
        });
    }
    let grid: Vec<_> = k.grid().collect();
    for (i, &x) in grid.iter().enumerate() {
        let closed = d1_single(&k, x);
        let contr = route.tensor().trace_contraction(i);
        let t = trig.d(1, &MultiIndex::single(&k, x)).to_rational();
        let r = route.d(1, &MultiIndex::single(&k, x));
        out.record(
            contr == closed && t.as_ref() == Some(&closed) && r == closed,
            || format!("d(1, l{x}): closed {closed}, contraction {contr}, trig {t:?}"),
        );
    }
    let m = route.fusion_matrix();
    out.record(m.is_symmetric(), || "D1 not symmetric".into());
    for (i, &x) in grid.iter().enumerate() {
        for (j, &y) in grid.iter().enumerate().skip(i) {
            let t = trig
                .d(1, &MultiIndex::from_labels(&k, &[x, y]))
                .to_rational();
            let e = m.at(i, j);
            let den_ok = (e * int(2)).is_integer() && *e >= Rational::zero();
            out.record(t.as_ref() == Some(e) && den_ok, || {
                format!("D1[{x}][{y}] = {e}, trig {t:?}")
            });
        }
    }
    for g in 2..=g_max {
        let tr = route.d(g, &zero);
        let dot: Rational = grid
            .iter()
            .map(|&x| {
                let l = MultiIndex::single(&k, x);
                route.d(g - 1, &l) * route.d(1, &l)
            })
            .sum();
        out.record(tr == dot, || {
            format!("g = {g}: trace {tr} vs contraction {dot}")
        });
    }
    out
}

/// `sum_x d(g, n + 2 l_x) = d(g + 1, n)` for `g <= g_max`, `|n| <= w_max`.
pub fn check_fusion_rule_one<T, F>(k: &TorusKnot, g_max: u32, w_max: u32, d: F) -> CheckOutcome
where
    T: Scalar + PartialEq + Debug,
    F: Fn(u32, &MultiIndex) -> T,
{
    let mut out = CheckOutcome::new("fusion rule: genus from a doubled label");
    for g in 0..=g_max {
        for n in MultiIndex::all_up_to(k, w_max) {
            let target = d(g + 1, &n);
            let mut acc = target.constant_like(&Rational::zero());
            for x in k.grid() {
                acc = acc.add_s(&d(g, &n.plus_label(x, 2)));
            }
            out.record(acc == target, || {
                format!("g = {g}, n = {n}: sum {acc:?} vs {target:?}")
            });
        }
    }
    out
}

/// `sum_x d(g, n + l_x) d(g', n' + l_x) = d(g + g', n + n')` for
/// `g, g' <= g_max` and `|n|, |n'| <= w_max`.
pub fn check_fusion_rule_two<T, F>(k: &TorusKnot, g_max: u32, w_max: u32, d: F) -> CheckOutcome
where
    T: Scalar + PartialEq + Debug,
    F: Fn(u32, &MultiIndex) -> T,
{
    let mut out = CheckOutcome::new("fusion rule: gluing along a label");
    let all = MultiIndex::all_up_to(k, w_max);
    let grid: Vec<_> = k.grid().collect();
    for g in 0..=g_max {
        // d(g, n + l_x) for every n and x, reused across the inner loops
        let left: Vec<Vec<T>> = all
            .iter()
            .map(|n| grid.iter().map(|&x| d(g, &n.plus_label(x, 1))).collect())
            .collect();
        for h in 0..=g_max {
            let right: Vec<Vec<T>> = if h == g {
                left.clone()
            } else {
                all.iter()
                    .map(|n| grid.iter().map(|&x| d(h, &n.plus_label(x, 1))).collect())
                    .collect()
            };
            for (a, n) in all.iter().enumerate() {
                for (b, m) in all.iter().enumerate() {
                    let target = d(g + h, &n.plus(m));
                    let mut acc = target.constant_like(&Rational::zero());
                    for (u, v) in left[a].iter().zip(&right[b]) {
                        acc = acc.add_s(&u.mul_s(v));
                    }
                    out.record(acc == target, || {
                        format!("g = {g}, g' = {h}, n = {n}, n' = {m}: {acc:?} vs {target:?}")
                    });
                }
            }
        }
    }
    out
}

/// `d_rational(g, n) = to_rational(d_trig(g, n))` for `g <= g_max`, `|n| <= w_max`;
/// a sine sum that fails to be rational is itself a failure.
pub fn check_dual_routes(
    trig: &TrigRoute,
    route: &RationalRoute,
    g_max: u32,
    w_max: u32,
) -> CheckOutcome {
    let k = *trig.knot();
    let mut out = CheckOutcome::new("dual-route agreement");
    for g in 0..=g_max {
        for n in MultiIndex::all_up_to(&k, w_max) {
            let t = trig.d(g, &n).to_rational();
            let r = route.d(g, &n);
            out.record(t.as_ref() == Some(&r), || {
                format!("d({g}, {n}): rational {r}, trig {t:?}")
            });
        }
    }
    out
}

/// `-Hess(F)/(4pq) = tau` and the closed form of the Hessian on every component.
pub fn check_hessian(k: &TorusKnot) -> CheckOutcome {
    let mut out = CheckOutcome::new("Hessian identity");
    for c in components(k) {
        let a = adjoint_torsion(k, c);
        let h = torsion_from_hessian(k, c);
        out.record(a.exact == h.exact, || {
            format!("component {c}: {} vs {}", a.float, h.float)
        });
        let closed = crate::torsion::hessian_closed_form(k, c);
        out.record(closed == crate::torsion::hessian_at(k, c), || {
            format!("component {c}: Hessian closed form mismatch")
        });
    }
    out
}

/// Symmetry and orthogonality of `S` (float, `1e-9`) and `2 tau S_{x,(1,1)}^2 = 1`.
pub fn check_s_matrix(k: &TorusKnot) -> CheckOutcome {
    let mut out = CheckOutcome::new("S-matrix");
    let s = SMatrix::new(k);
    let sym = s.symmetry_error();
    out.record(sym == 0.0, || format!("asymmetry {sym:e}"));
    let orth = s.orthogonality_error();
    out.record(orth < 1e-9, || format!("orthogonality error {orth:e}"));
    for c in components(k) {
        out.record(
            crate::torsion::torsion_s_matrix_relation_check(k, c),
            || format!("2 tau S^2 != 1 at {c}"),
        );
    }
    out
}

/// One row of the integrality table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityRow {
    pub g: u32,
    /// `d(g, 0)` from the rational route.
    pub d: Rational,
    /// `2^(g-2) d(g, 0)`.
    pub scaled: Rational,
    pub integer: bool,
    /// `d(g, 0)` has denominator dividing `2^max(0, g-2)`.
    pub denominator_ok: bool,
    pub trig: Option<Rational>,
    pub torsion: Option<Rational>,
    /// Rational route, sine sum and torsion power sum coincide.
    pub agree: bool,
}

impl IntegralityRow {
    pub fn passed(&self) -> bool {
        self.integer && self.denominator_ok && self.agree
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityReport {
    pub knot: TorusKnot,
    pub rows: Vec<IntegralityRow>,
}

impl IntegralityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(IntegralityRow::passed)
    }
}

pub fn integrality_report(k: &TorusKnot, g_max: u32) -> IntegralityReport {
    integrality_report_with(
        &RationalRoute::new(k),
        &TrigRoute::new(k),
        &TorsionTable::new(k),
        g_max,
    )
}

pub fn integrality_report_with(
    route: &RationalRoute,
    trig: &TrigRoute,
    torsion: &TorsionTable,
    g_max: u32,
) -> IntegralityReport {
    let k = *route.knot();
    let zero = MultiIndex::zero(&k);
    let rows = (0..=g_max)
        .map(|g| {
            let d = route.d(g, &zero);
            let scaled = &d * two_pow(g as i64 - 2);
            let bound = &d * two_pow((g as i64 - 2).max(0));
            let trig_v = trig.d(g, &zero).to_rational();
            let tor = torsion.power_sum(g).rational;
            let agree = trig_v.as_ref() == Some(&d) && tor.as_ref() == Some(&scaled);
            IntegralityRow {
                g,
                integer: is_integer(&scaled),
                denominator_ok: is_integer(&bound),
                scaled,
                d,
                trig: trig_v,
                torsion: tor,
                agree,
            }
        })
        .collect();
    IntegralityReport { knot: k, rows }
}

/// For each `(g, |n|)`, the largest power of 2 in the denominators of `d(g, n)`
/// and whether any denominator had an odd factor. Observational only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorObservation {
    pub g: u32,
    pub weight: u32,
    pub max_two_power: u32,
    pub odd_factor: bool,
}

pub fn observed_denominators(
    route: &RationalRoute,
    g_max: u32,
    w_max: u32,
) -> Vec<DenominatorObservation> {
    let k = *route.knot();
    let all = MultiIndex::all_up_to(&k, w_max);
    let mut out = Vec::new();
    for g in 0..=g_max {
        for w in 0..=w_max {
            let mut obs = DenominatorObservation {
                g,
                weight: w,
                max_two_power: 0,
                odd_factor: false,
            };
            for n in all.iter().filter(|n| n.weight() == w) {
                let mut den: BigInt = route.d(g, n).denom().clone();
                let mut e = 0;
                while (&den % 2u32).is_zero() {
                    den /= 2u32;
                    e += 1;
                }
                obs.max_two_power = obs.max_two_power.max(e);
                obs.odd_factor |= !den.is_one();
            }
            out.push(obs);
        }
    }
    out
}

fn primitive_arg(k: usize, m: usize) -> Result<()> {
    if k < 2 || m == 0 || m >= k {
        return Err(Error::InvalidParameter(format!(
            "need 0 < m < k with k >= 2, got k = {k}, m = {m}"
        )));
    }
    Ok(())
}

/// With `z_i = exp(i pi m_i / k)`, check in `Q(zeta_{2k})` that
/// `sum_{0<a<k} S_{a-1}(z_1 + 1/z_1) S_{a-1}(z_2 + 1/z_2)` is `-2k/(z_1 - 1/z_1)^2`
/// when `m_1 = m_2` and 0 otherwise.
pub fn zagier_lemma_check(k: usize, m1: usize, m2: usize) -> Result<bool> {
    primitive_arg(k, m1)?;
    primitive_arg(k, m2)?;
    let n = 2 * k;
    let t1 = CyclotomicNumber::two_cos_root(n, m1 as i64);
    let t2 = CyclotomicNumber::two_cos_root(n, m2 as i64);
    let lhs: CyclotomicNumber = (1..k)
        .map(|a| {
            let s = chebyshev_second(a as i64 - 1).expect("nonnegative");
            &s.eval(&t1) * &s.eval(&t2)
        })
        .sum();
    let rhs = if m1 == m2 {
        let diff = &CyclotomicNumber::root_of_unity(n, m1 as i64)
            - &CyclotomicNumber::root_of_unity(n, -(m1 as i64));
        (&diff * &diff).inv()?.scale(&int(-2 * k as i64))
    } else {
        CyclotomicNumber::zero(n)
    };
    Ok(lhs == rhs)
}

/// `sum_{0<a<k} (sin(pi j a/k) / sin(pi j/k))^2 = k / (2 sin^2(pi j/k))`, exactly.
pub fn zagier_specialization_check(k: usize, j: usize) -> Result<bool> {
    primitive_arg(k, j)?;
    let n = 2 * k;
    let t = CyclotomicNumber::two_cos_root(n, j as i64);
    let lhs: CyclotomicNumber = (1..k)
        .map(|a| {
            let s = chebyshev_second(a as i64 - 1)
                .expect("nonnegative")
                .eval(&t);
            &s * &s
        })
        .sum();
    let sin2 = CyclotomicNumber::sin_sq_pi_frac(j as i64, k, n)?;
    let rhs = sin2.inv()?.scale(&rational(k as i64, 2));
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalVerlinde {
    pub q: u32,
    pub g: u32,
    pub value: Rational,
    /// `value` lies in `2^g Z`.
    pub divisible: bool,
}

/// `(q/2)^(g-1) sum_{0<j<q} sin^(2-2g)(pi j/q)`, the classical `SU(2)` Verlinde number
/// at level `q - 2`, with its divisibility by `2^g`.
pub fn classical_verlinde_check(q: u32, g: u32) -> Result<ClassicalVerlinde> {
    validate_pair(2, q as i64)?;
    let n = 2 * q as usize;
    let e = 1 - g as i64;
    let mut sum = CyclotomicNumber::zero(n);
    for j in 1..q {
        let s = CyclotomicNumber::sin_sq_pi_frac(j as i64, q as usize, n)?;
        sum = &sum + &s.pow(e)?;
    }
    let pre = num_traits::pow::Pow::pow(rational(q as i64, 2), -e);
    let value = sum
        .scale(&pre)
        .to_rational()
        .ok_or_else(|| Error::InvalidParameter("classical Verlinde sum is not rational".into()))?;
    let divisible = is_integer(&(&value * two_pow(-(g as i64))));
    Ok(ClassicalVerlinde {
        q,
        g,
        value,
        divisible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvar::make_knot;

    #[test]
    fn zagier_k3() {
        assert!(zagier_lemma_check(3, 1, 1).unwrap());
        assert!(zagier_lemma_check(3, 1, 2).unwrap());
        assert!(zagier_specialization_check(3, 1).unwrap());
        assert!(zagier_lemma_check(3, 0, 1).is_err());
        assert!(zagier_lemma_check(3, 3, 1).is_err());
    }

    #[test]
    fn classical_values() {
        let c = classical_verlinde_check(5, 2).unwrap();
        assert_eq!(c.value, int(20));
        assert!(c.divisible);
        assert_eq!(classical_verlinde_check(3, 1).unwrap().value, int(2));
        assert_eq!(classical_verlinde_check(3, 0).unwrap().value, int(1));
        assert!(classical_verlinde_check(4, 1).is_err());
    }

    #[test]
    fn classical_matches_knot_route() {
        for q in [3u32, 5, 7] {
            let k = make_knot(2, q as i64).unwrap();
            let r = RationalRoute::new(&k);
            for g in 0..5u32 {
                let d = r.d(g, &MultiIndex::zero(&k));
                let c = classical_verlinde_check(q, g).unwrap();
                assert_eq!(c.value, d * two_pow(2 * (g as i64 - 1)), "q = {q}, g = {g}");
            }
        }
    }

    #[test]
    fn trefoil_integrality() {
        let rep = integrality_report(&make_knot(2, 3).unwrap(), 10);
        assert!(rep.passed());
        assert!(rep.rows.iter().all(|r| r.scaled == int(1)));
    }

    #[test]
    fn t25_integrality_table() {
        let rep = integrality_report(&make_knot(2, 5).unwrap(), 7);
        assert!(rep.passed());
        let vals: Vec<_> = rep.rows.iter().map(|r| r.scaled.clone()).collect();
        let want: Vec<_> = [1, 2, 5, 15, 50, 175, 625, 2250]
            .iter()
            .map(|&v| int(v))
            .collect();
        assert_eq!(vals, want);
    }

    #[test]
    fn genus_one_and_initial_values_t25() {
        let k = make_knot(2, 5).unwrap();
        let trig = TrigRoute::new(&k);
        let route = RationalRoute::new(&k);
        assert!(check_initial_values(&trig, route.tensor()).passed());
        assert!(check_genus_one(&trig, &route, 4).passed());
    }

    #[test]
    fn fault_is_detected() {
        let k = make_knot(2, 5).unwrap();
        let trig = TrigRoute::new(&k);
        let u = k.unit();
        let bad =
            RationalRoute::with_tensor(crate::verlinde::fusion_tensor(&k).with_flipped(u, u, u));
        assert!(!check_initial_values(&trig, bad.tensor()).passed());
        assert!(!integrality_report_with(&bad, &trig, &TorsionTable::new(&k), 4).passed());
    }

    #[test]
    fn fusion_rules_small() {
        let k = make_knot(2, 3).unwrap();
        let trig = TrigRoute::new(&k);
        let route = RationalRoute::new(&k);
        assert!(check_fusion_rule_one(&k, 1, 2, |g, n| trig.d(g, n)).passed());
        assert!(check_fusion_rule_two(&k, 1, 1, |g, n| route.d(g, n)).passed());
        assert!(check_dual_routes(&trig, &route, 2, 2).passed());
    }
}
