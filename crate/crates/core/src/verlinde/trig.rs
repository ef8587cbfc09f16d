use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::MultiIndex;
use crate::charvar::{GridIndex, TorusKnot};
use crate::chebyshev::chebyshev_second;
use crate::exactnum::{rational, CyclotomicNumber, Rational};

/// `2^e` for any integer `e`.
pub(crate) fn two_pow(e: i64) -> Rational {
    let m = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(m)
    } else {
        Rational::new(BigInt::one(), m)
    }
}

/// The sine-sum definition of `d(g, n)` and `N_g`, evaluated exactly in `Q(zeta_{2pq})`.
///
/// For a grid point `(i, j)` write `w_ij = pq / (4 sin^2(i pi/p) sin^2(j pi/q))` and
/// `h_x(i, j) = S_{a-1}(2cos(i pi/p)) S_{b-1}(2cos(j pi/q))`, which is
/// `sin(i a pi/p) sin(j b pi/q) / (sin(i pi/p) sin(j pi/q))`. Then
/// `d(g, n) = (1/4)^(g-1) (1/2)^|n| sum_ij w_ij^(g-1) prod_x h_x(i, j)^(n_x)`.
pub struct TrigRoute {
    knot: TorusKnot,
    weights: Vec<CyclotomicNumber>,
    weights_inv: Vec<CyclotomicNumber>,
    cheb_a: OnceLock<Vec<Vec<CyclotomicNumber>>>,
    cheb_b: OnceLock<Vec<Vec<CyclotomicNumber>>>,
    ratios: Mutex<HashMap<usize, Arc<Vec<CyclotomicNumber>>>>,
    powers: Mutex<HashMap<i64, Arc<Vec<CyclotomicNumber>>>>,
    memo: Mutex<HashMap<(u32, MultiIndex), CyclotomicNumber>>,
}

impl TrigRoute {
    pub fn new(k: &TorusKnot) -> Self {
        let n = k.ambient_order();
        let (p, q) = (k.p() as usize, k.q() as usize);
        let sin_a: Vec<_> = (1..p)
            .map(|i| CyclotomicNumber::sin_sq_pi_frac(i as i64, p, n).expect("2p | 2pq"))
            .collect();
        let sin_b: Vec<_> = (1..q)
            .map(|j| CyclotomicNumber::sin_sq_pi_frac(j as i64, q, n).expect("2q | 2pq"))
            .collect();
        let inv_a: Vec<_> = sin_a
            .iter()
            .map(|s| s.inv().expect("nonzero sine"))
            .collect();
        let inv_b: Vec<_> = sin_b
            .iter()
            .map(|s| s.inv().expect("nonzero sine"))
            .collect();
        let pq = (p * q) as i64;
        let (c, c_inv) = (rational(pq, 4), rational(4, pq));
        let mut weights = Vec::with_capacity(k.grid_len());
        let mut weights_inv = Vec::with_capacity(k.grid_len());
        for i in 0..p - 1 {
            for j in 0..q - 1 {
                weights.push((&inv_a[i] * &inv_b[j]).scale(&c));
                weights_inv.push((&sin_a[i] * &sin_b[j]).scale(&c_inv));
            }
        }
        TrigRoute {
            knot: *k,
            weights,
            weights_inv,
            cheb_a: OnceLock::new(),
            cheb_b: OnceLock::new(),
            ratios: Mutex::new(HashMap::new()),
            powers: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn knot(&self) -> &TorusKnot {
        &self.knot
    }

    /// `w_ij` over the grid.
    pub fn weights(&self) -> &[CyclotomicNumber] {
        &self.weights
    }

    /// `table[a-1][i-1] = S_{a-1}(2cos(i pi/n))`.
    fn cheb_table(n: usize, ambient: usize) -> Vec<Vec<CyclotomicNumber>> {
        let points: Vec<_> = (1..n)
            .map(|i| CyclotomicNumber::two_cos_pi_frac(i as i64, n, ambient).expect("divides"))
            .collect();
        (1..n)
            .map(|a| {
                let s = chebyshev_second(a as i64 - 1).expect("nonnegative");
                points.iter().map(|z| s.eval(z)).collect()
            })
            .collect()
    }

    /// `h_x(i, j)` over the grid, for the label at grid position `pos`.
    fn ratio(&self, pos: usize) -> Arc<Vec<CyclotomicNumber>> {
        if let Some(r) = self.ratios.lock().unwrap().get(&pos) {
            return r.clone();
        }
        let n = self.knot.ambient_order();
        let ta = self
            .cheb_a
            .get_or_init(|| Self::cheb_table(self.knot.p() as usize, n));
        let tb = self
            .cheb_b
            .get_or_init(|| Self::cheb_table(self.knot.q() as usize, n));
        let x = self.knot.grid_at(pos);
        let (ra, rb) = (&ta[x.a as usize - 1], &tb[x.b as usize - 1]);
        let v: Vec<_> = ra
            .iter()
            .flat_map(|u| rb.iter().map(move |v| u * v))
            .collect();
        let v = Arc::new(v);
        self.ratios.lock().unwrap().insert(pos, v.clone());
        v
    }

    /// `w_ij^e` over the grid, built by repeated multiplication.
    fn weight_power(&self, e: i64) -> Arc<Vec<CyclotomicNumber>> {
        if let Some(v) = self.powers.lock().unwrap().get(&e) {
            return v.clone();
        }
        let v = if e == 0 {
            vec![CyclotomicNumber::one(self.knot.ambient_order()); self.weights.len()]
        } else {
            let (step, base) = if e > 0 {
                (e - 1, &self.weights)
            } else {
                (e + 1, &self.weights_inv)
            };
            let prev = self.weight_power(step);
            prev.iter().zip(base).map(|(a, b)| a * b).collect()
        };
        let v = Arc::new(v);
        self.powers.lock().unwrap().insert(e, v.clone());
        v
    }

    /// `sum_ij w_ij^(g-1) prod_x h_x^(n_x)` before any prefactor.
    fn raw_sum(&self, w: &[CyclotomicNumber], n: &MultiIndex) -> CyclotomicNumber {
        let mut terms: Vec<CyclotomicNumber> = w.to_vec();
        for (pos, &m) in n.multiplicities().iter().enumerate() {
            if m == 0 {
                continue;
            }
            let h = self.ratio(pos);
            for (t, hx) in terms.iter_mut().zip(h.iter()) {
                *t = &*t * &hx.pow(m as i64).expect("nonnegative power");
            }
        }
        terms.into_iter().sum()
    }

    /// `d(g, n)`.
    pub fn d(&self, g: u32, n: &MultiIndex) -> CyclotomicNumber {
        assert_eq!(n.knot(), &self.knot, "multi-index of another knot");
        let key = (g, n.clone());
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let w = self.weight_power(g as i64 - 1);
        let pre = two_pow(2 - 2 * g as i64 - n.weight() as i64);
        let v = self.raw_sum(&w, n).scale(&pre);
        self.memo.lock().unwrap().insert(key, v.clone());
        v
    }

    /// `N_g(x_1, ..., x_n) = sum_ij (w_ij/2)^(g-1) prod_k h_{x_k}(i, j)`.
    pub fn surface(&self, g: u32, punctures: &[GridIndex]) -> CyclotomicNumber {
        let n = MultiIndex::from_labels(&self.knot, punctures);
        let e = g as i64 - 1;
        let half = rational(1, 2);
        let w: Vec<_> = self
            .weights
            .iter()
            .map(|x| x.scale(&half).pow(e).expect("nonzero weight"))
            .collect();
        self.raw_sum(&w, &n)
    }
}

/// `d(g, n)` from its sine-sum definition.
pub fn verlinde_knot_trig(k: &TorusKnot, g: u32, n: &MultiIndex) -> CyclotomicNumber {
    TrigRoute::new(k).d(g, n)
}

/// The generalized Verlinde number `N_g` of a genus `g` surface with punctures.
pub fn verlinde_surface(k: &TorusKnot, g: u32, punctures: &[GridIndex]) -> CyclotomicNumber {
    TrigRoute::new(k).surface(g, punctures)
}
