use std::fmt;

use crate::charvar::{GridIndex, TorusKnot};
use crate::error::{Error, Result};

/// Multiplicities `n_x >= 0` over the grid of a knot, stored densely in grid order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    knot: TorusKnot,
    mult: Vec<u32>,
}

impl MultiIndex {
    pub fn zero(k: &TorusKnot) -> Self {
        MultiIndex {
            knot: *k,
            mult: vec![0; k.grid_len()],
        }
    }

    /// `l_x`.
    pub fn single(k: &TorusKnot, x: GridIndex) -> Self {
        Self::zero(k).plus_label(x, 1)
    }

    pub fn from_labels(k: &TorusKnot, labels: &[GridIndex]) -> Self {
        labels
            .iter()
            .fold(Self::zero(k), |acc, &x| acc.plus_label(x, 1))
    }

    /// Parse `"a,b;a,b;..."`. The empty string is `n = 0`; repeats add up.
    pub fn parse(k: &TorusKnot, spec: &str) -> Result<Self> {
        let bad = |reason: String| Error::PunctureSpec {
            spec: spec.to_string(),
            reason,
        };
        let mut out = Self::zero(k);
        for item in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let parts: Vec<&str> = item.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(bad(format!("expected `a,b`, got {item:?}")));
            }
            let num = |s: &str| {
                s.parse::<i64>()
                    .map_err(|_| bad(format!("{s:?} is not an integer")))
            };
            let x = k.grid_index(num(parts[0])?, num(parts[1])?)?;
            out = out.plus_label(x, 1);
        }
        Ok(out)
    }

    pub fn knot(&self) -> &TorusKnot {
        &self.knot
    }

    pub fn weight(&self) -> u32 {
        self.mult.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    pub fn multiplicity(&self, x: GridIndex) -> u32 {
        self.mult[self.knot.position(x)]
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// `self + times * l_x`.
    pub fn plus_label(&self, x: GridIndex, times: u32) -> Self {
        self.plus_position(self.knot.position(x), times)
    }

    pub(crate) fn plus_position(&self, pos: usize, times: u32) -> Self {
        let mut out = self.clone();
        out.mult[pos] += times;
        out
    }

    pub(crate) fn minus_position(&self, pos: usize) -> Self {
        let mut out = self.clone();
        out.mult[pos] -= 1;
        out
    }

    pub fn plus(&self, other: &MultiIndex) -> Self {
        assert_eq!(self.knot, other.knot, "multi-indices of different knots");
        MultiIndex {
            knot: self.knot,
            mult: self
                .mult
                .iter()
                .zip(&other.mult)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Grid positions with repetition, ascending.
    pub fn positions(&self) -> Vec<usize> {
        self.mult
            .iter()
            .enumerate()
            .flat_map(|(pos, &m)| std::iter::repeat_n(pos, m as usize))
            .collect()
    }

    /// Nonzero `(label, multiplicity)` pairs in grid order.
    pub fn terms(&self) -> Vec<(GridIndex, u32)> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(pos, &m)| (self.knot.grid_at(pos), m))
            .collect()
    }

    /// The labels `x_1 <= ... <= x_|n|` of `n = sum l_{x_i}`.
    pub fn labels(&self) -> Vec<GridIndex> {
        self.positions()
            .into_iter()
            .map(|p| self.knot.grid_at(p))
            .collect()
    }

    /// Every multi-index of weight `<= max_weight`, by weight then lexicographically in labels.
    pub fn all_up_to(k: &TorusKnot, max_weight: u32) -> Vec<MultiIndex> {
        let mut out = vec![Self::zero(k)];
        let mut layer: Vec<(MultiIndex, usize)> = vec![(Self::zero(k), 0)];
        for _ in 0..max_weight {
            let mut next = Vec::new();
            for (n, lo) in &layer {
                for pos in *lo..k.grid_len() {
                    next.push((n.plus_position(pos, 1), pos));
                }
            }
            out.extend(next.iter().map(|(n, _)| n.clone()));
            layer = next;
        }
        out
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .iter()
            .map(|(x, m)| {
                if *m == 1 {
                    format!("l{x}")
                } else {
                    format!("{m}l{x}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvar::make_knot;

    #[test]
    fn parse_specs() {
        let k = make_knot(2, 5).unwrap();
        let n = MultiIndex::parse(&k, "1,3").unwrap();
        assert_eq!(n.weight(), 1);
        assert_eq!(n.multiplicity(k.grid_index(1, 3).unwrap()), 1);
        let m = MultiIndex::parse(&k, "1,1; 1,2;1,1").unwrap();
        assert_eq!(m.weight(), 3);
        assert_eq!(m.to_string(), "2l(1, 1) + l(1, 2)");
        assert!(MultiIndex::parse(&k, "").unwrap().is_zero());
    }

    #[test]
    fn parse_errors() {
        let k = make_knot(2, 5).unwrap();
        assert!(matches!(
            MultiIndex::parse(&k, "9,9"),
            Err(Error::OutOfGrid { a: 9, b: 9, .. })
        ));
        assert!(matches!(
            MultiIndex::parse(&k, "1"),
            Err(Error::PunctureSpec { .. })
        ));
        assert!(matches!(
            MultiIndex::parse(&k, "1,x"),
            Err(Error::PunctureSpec { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        let k = make_knot(3, 5).unwrap();
        // multisets of size <= 2 from 8 labels
        assert_eq!(MultiIndex::all_up_to(&k, 2).len(), 1 + 8 + 36);
        let all = MultiIndex::all_up_to(&k, 3);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn labels_roundtrip() {
        let k = make_knot(3, 4).unwrap();
        let xs = [k.grid_index(2, 3).unwrap(), k.grid_index(1, 1).unwrap()];
        let n = MultiIndex::from_labels(&k, &xs);
        assert_eq!(n.labels(), vec![xs[1], xs[0]]);
        assert_eq!(MultiIndex::from_labels(&k, &n.labels()), n);
    }
}
