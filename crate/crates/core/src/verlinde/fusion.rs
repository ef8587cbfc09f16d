//! The rational route to `d(g, n)`.
//!
//! Write `N_xyz = d(0, l_x + l_y + l_z)`. The fusion rules give, for `|n''| >= 0`,
//!
//! ```text
//! d(g, n'' + l_x + l_y) = sum_z d(g, n'' + l_z) d(0, l_x + l_y + l_z)
//! ```
//!
//! (second rule with `(g, n'')` and `(0, l_x + l_y)`), so any `n` of weight at
//! least 2 reduces to weight 1. For weight 1 and 0 let
//! `D1[x][y] = d(1, l_x + l_y) = sum_w N_xyw c_w` with `c_w = d(1, l_w) = sum_z N_zzw`
//! (first rule at genus 0, then the reduction above). The second rule at
//! `(g-1, l_x)` and `(1, 0)` gives `d(g, l_x) = sum_y D1[x][y] d(g-1, l_y)`, hence
//! `d(g, l_x) = (D1^(g-1) u1)[x]`, and the first rule turns `d(g, 0)` into
//! `sum_x d(g-1, 2 l_x) = trace(D1^(g-1))`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::MultiIndex;
use crate::charvar::{GridIndex, TorusKnot};
use crate::exactnum::{int, Rational};

/// `d(0, l_x) = 2` at `x = (1, 1)` and 0 elsewhere.
pub fn d0_one(_k: &TorusKnot, x: GridIndex) -> Rational {
    int(if (x.a, x.b) == (1, 1) { 2 } else { 0 })
}

/// `d(0, l_x + l_y) = delta_{x,y}`.
pub fn d0_two(_k: &TorusKnot, x: GridIndex, y: GridIndex) -> Rational {
    int((x == y) as i64)
}

/// `d(1, l_x) = (p-a)(q-b)/2` for odd `a, b`, else 0.
pub fn d1_single(k: &TorusKnot, x: GridIndex) -> Rational {
    if x.a % 2 == 1 && x.b % 2 == 1 {
        Rational::new((((k.p() - x.a) * (k.q() - x.b)) as i64).into(), 2.into())
    } else {
        int(0)
    }
}

fn admissible(a: u32, c: u32, e: u32, n: u32) -> bool {
    let sum = a + c + e;
    sum % 2 == 1 && 2 * a.max(c).max(e) < sum && sum < 2 * n
}

/// `N_xyz` as a dense tensor of halves: `N_xyz = halves / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTensor {
    knot: TorusKnot,
    dim: usize,
    halves: Vec<u8>,
}

impl FusionTensor {
    pub fn new(k: &TorusKnot) -> Self {
        let grid: Vec<GridIndex> = k.grid().collect();
        let dim = grid.len();
        let mut halves = vec![0u8; dim * dim * dim];
        for (i, x) in grid.iter().enumerate() {
            for (j, y) in grid.iter().enumerate() {
                for (l, z) in grid.iter().enumerate() {
                    if admissible(x.a, y.a, z.a, k.p()) && admissible(x.b, y.b, z.b, k.q()) {
                        halves[(i * dim + j) * dim + l] = 1;
                    }
                }
            }
        }
        FusionTensor {
            knot: *k,
            dim,
            halves,
        }
    }

    pub fn knot(&self) -> &TorusKnot {
        &self.knot
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn halves(&self, i: usize, j: usize, l: usize) -> u8 {
        self.halves[(i * self.dim + j) * self.dim + l]
    }

    /// `N_xyz` by grid positions.
    pub fn at(&self, i: usize, j: usize, l: usize) -> Rational {
        Rational::new(self.halves(i, j, l).into(), 2.into())
    }

    pub fn get(&self, x: GridIndex, y: GridIndex, z: GridIndex) -> Rational {
        let k = &self.knot;
        self.at(k.position(x), k.position(y), k.position(z))
    }

    /// Toggle the single entry `N_xyz` between 0 and 1/2 (symmetric partners untouched).
    /// Exists to check that verification notices a corrupted tensor.
    pub fn with_flipped(&self, x: GridIndex, y: GridIndex, z: GridIndex) -> Self {
        let k = &self.knot;
        let idx = (k.position(x) * self.dim + k.position(y)) * self.dim + k.position(z);
        let mut out = self.clone();
        out.halves[idx] ^= 1;
        out
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|l| {
                    let v = self.halves(i, j, l);
                    v == self.halves(j, i, l)
                        && v == self.halves(i, l, j)
                        && v == self.halves(l, j, i)
                })
            })
        })
    }

    /// Entries lie in `{0, 1/2}`.
    pub fn entries_in_range(&self) -> bool {
        self.halves.iter().all(|&h| h <= 1)
    }

    /// `sum_z N_xzz` for the label at position `i`.
    pub fn trace_contraction(&self, i: usize) -> Rational {
        let h: u32 = (0..self.dim).map(|z| self.halves(i, z, z) as u32).sum();
        Rational::new(h.into(), 2.into())
    }

    /// `c_w = sum_z N_zzw`.
    fn loop_contraction(&self, w: usize) -> Rational {
        let h: u32 = (0..self.dim).map(|z| self.halves(z, z, w) as u32).sum();
        Rational::new(h.into(), 2.into())
    }

    /// Positions `l` with `N_{i j l} != 0`.
    fn support(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, u8)> + '_ {
        let base = (i * self.dim + j) * self.dim;
        self.halves[base..base + self.dim]
            .iter()
            .enumerate()
            .filter(|(_, &h)| h != 0)
            .map(|(l, &h)| (l, h))
    }
}

pub fn fusion_tensor(k: &TorusKnot) -> FusionTensor {
    FusionTensor::new(k)
}

/// `D1[x][y] = d(1, l_x + l_y)` as the contraction `sum_{z,w} N_xyw N_zzw`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl FusionMatrix {
    pub fn from_tensor(t: &FusionTensor) -> Self {
        let d = t.dim();
        let c: Vec<Rational> = (0..d).map(|w| t.loop_contraction(w)).collect();
        let mut entries = vec![Rational::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = Rational::zero();
                for (w, h) in t.support(i, j) {
                    acc += &c[w] * Rational::new(h.into(), 2.into());
                }
                entries[i * d + j] = acc;
            }
        }
        FusionMatrix { dim: d, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    /// Least common denominator of the entries.
    pub fn denominator(&self) -> BigInt {
        self.entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .filter(|&j| !self.at(i, j).is_zero())
                    .map(|j| self.at(i, j) * &v[j])
                    .sum()
            })
            .collect()
    }
}

pub fn fusion_matrix(k: &TorusKnot) -> FusionMatrix {
    FusionMatrix::from_tensor(&fusion_tensor(k))
}

type IntMatrix = Vec<BigInt>;

fn int_mul(a: &IntMatrix, b: &IntMatrix, d: usize) -> IntMatrix {
    let mut out = vec![BigInt::zero(); d * d];
    for i in 0..d {
        for l in 0..d {
            let x = &a[i * d + l];
            if x.is_zero() {
                continue;
            }
            for j in 0..d {
                let y = &b[l * d + j];
                if !y.is_zero() {
                    out[i * d + j] += x * y;
                }
            }
        }
    }
    out
}

/// `sum_ij A_ij B_ij`; equals `trace(AB)` when `B` is symmetric.
fn frobenius(a: &IntMatrix, b: &IntMatrix) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Memoized evaluation of `d(g, n)` in exact rationals from the fusion tensor.
pub struct RationalRoute {
    knot: TorusKnot,
    tensor: FusionTensor,
    d1: FusionMatrix,
    u0: Vec<Rational>,
    u1: Vec<Rational>,
    /// `L` with `L * D1` integral.
    scale: BigInt,
    /// `(L D1)^k` for `k = 0, 1, ...` as far as needed.
    int_powers: Mutex<Vec<IntMatrix>>,
    /// `u_g = D1^(g-1) u1` for `g = 1, 2, ...`.
    singles: Mutex<Vec<Vec<Rational>>>,
    memo: Mutex<HashMap<(u32, MultiIndex), Rational>>,
}

impl RationalRoute {
    pub fn new(k: &TorusKnot) -> Self {
        Self::with_tensor(fusion_tensor(k))
    }

    /// Build on a given tensor (normally [`fusion_tensor`]; a corrupted one for negative tests).
    pub fn with_tensor(tensor: FusionTensor) -> Self {
        let k = *tensor.knot();
        let d1 = FusionMatrix::from_tensor(&tensor);
        let u0: Vec<_> = k.grid().map(|x| d0_one(&k, x)).collect();
        let u1: Vec<_> = k.grid().map(|x| d1_single(&k, x)).collect();
        let scale = d1.denominator();
        let d = d1.dim();
        let m: IntMatrix = d1
            .entries
            .iter()
            .map(|e| (e * Rational::from_integer(scale.clone())).to_integer())
            .collect();
        let mut id = vec![BigInt::zero(); d * d];
        for i in 0..d {
            id[i * d + i] = BigInt::one();
        }
        RationalRoute {
            knot: k,
            tensor,
            d1,
            singles: Mutex::new(vec![u1.clone()]),
            u0,
            u1,
            scale,
            int_powers: Mutex::new(vec![id, m]),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn knot(&self) -> &TorusKnot {
        &self.knot
    }

    pub fn tensor(&self) -> &FusionTensor {
        &self.tensor
    }

    pub fn fusion_matrix(&self) -> &FusionMatrix {
        &self.d1
    }

    fn int_power(&self, e: usize) -> IntMatrix {
        let mut pows = self.int_powers.lock().unwrap();
        let d = self.d1.dim();
        while pows.len() <= e {
            let next = int_mul(pows.last().unwrap(), &pows[1], d);
            pows.push(next);
        }
        pows[e].clone()
    }

    /// `trace(D1^e)`, using `trace(M^(i+j)) = <M^i, M^j>` for the symmetric `M = L D1`.
    pub fn trace_power(&self, e: usize) -> Rational {
        let lo = e / 2;
        let hi = e - lo;
        let t = frobenius(&self.int_power(lo), &self.int_power(hi));
        Rational::new(t, num_traits::pow(self.scale.clone(), e))
    }

    /// `u_g[x] = d(g, l_x)` for `g >= 1`.
    fn single(&self, g: u32) -> Vec<Rational> {
        let mut s = self.singles.lock().unwrap();
        while s.len() < g as usize {
            let next = self.d1.apply(s.last().unwrap());
            s.push(next);
        }
        s[g as usize - 1].clone()
    }

    /// `d(g, n)`, reducing the lexicographically smallest pair of labels first.
    pub fn d(&self, g: u32, n: &MultiIndex) -> Rational {
        assert_eq!(n.knot(), &self.knot, "multi-index of another knot");
        let key = (g, n.clone());
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let pos = n.positions();
        let v = match pos.len() {
            0 if g == 0 => self.u0.iter().map(|u| u * u).sum(),
            0 => self.trace_power(g as usize - 1),
            1 if g == 0 => self.u0[pos[0]].clone(),
            1 => self.single(g)[pos[0]].clone(),
            _ => self.reduce(g, n, pos[0], pos[1]),
        };
        self.memo.lock().unwrap().insert(key, v.clone());
        v
    }

    /// One reduction step on the labels at grid positions `i` and `j` of `n`.
    fn reduce(&self, g: u32, n: &MultiIndex, i: usize, j: usize) -> Rational {
        let rest = n.minus_position(i).minus_position(j);
        let mut acc = Rational::zero();
        for (l, h) in self.tensor.support(i, j) {
            acc += self.d(g, &rest.plus_position(l, 1)) * Rational::new(h.into(), 2.into());
        }
        acc
    }

    /// `d(g, n)` with the first reduction applied to the `i`-th and `j`-th labels
    /// of `n` (in [`MultiIndex::positions`] order) instead of the smallest pair.
    pub fn d_reducing(&self, g: u32, n: &MultiIndex, i: usize, j: usize) -> Rational {
        let pos = n.positions();
        assert!(i != j && i < pos.len() && j < pos.len(), "bad label choice");
        self.reduce(g, n, pos[i], pos[j])
    }

    /// `u1[x]`, the closed-form `d(1, l_x)` the route starts from.
    pub fn u1(&self) -> &[Rational] {
        &self.u1
    }
}

/// `d(g, n)` by the rational fusion route.
pub fn d_rational(k: &TorusKnot, g: u32, n: &MultiIndex) -> Rational {
    RationalRoute::new(k).d(g, n)
}
