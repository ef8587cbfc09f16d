use std::f64::consts::PI;

use crate::charvar::{GridIndex, TorusKnot};
use crate::exactnum::{rational, CyclotomicNumber};

/// `S_{(i,j),(a,b)} = sqrt(8/pq) sin(i a pi/p) sin(j b pi/q)` over the grid.
#[derive(Debug, Clone)]
pub struct SMatrix {
    knot: TorusKnot,
    entries: Vec<f64>,
}

impl SMatrix {
    pub fn new(k: &TorusKnot) -> Self {
        let (p, q) = (k.p() as f64, k.q() as f64);
        let norm = (8.0 / (p * q)).sqrt();
        let grid: Vec<GridIndex> = k.grid().collect();
        let mut entries = Vec::with_capacity(grid.len() * grid.len());
        for x in &grid {
            for y in &grid {
                let sa = ((x.a * y.a) as f64 * PI / p).sin();
                let sb = ((x.b * y.b) as f64 * PI / q).sin();
                entries.push(norm * sa * sb);
            }
        }
        SMatrix { knot: *k, entries }
    }

    pub fn knot(&self) -> &TorusKnot {
        &self.knot
    }

    pub fn dim(&self) -> usize {
        self.knot.grid_len()
    }

    pub fn entry(&self, x: GridIndex, y: GridIndex) -> f64 {
        self.entries[self.knot.position(x) * self.dim() + self.knot.position(y)]
    }

    /// `(8/pq) sin^2(i a pi/p) sin^2(j b pi/q)` in `Q(zeta_{2pq})`.
    pub fn squared_exact(&self, x: GridIndex, y: GridIndex) -> CyclotomicNumber {
        let k = &self.knot;
        let n = k.ambient_order();
        let sa = CyclotomicNumber::sin_sq_pi_frac((x.a * y.a) as i64, k.p() as usize, n)
            .expect("2p | 2pq");
        let sb = CyclotomicNumber::sin_sq_pi_frac((x.b * y.b) as i64, k.q() as usize, n)
            .expect("2q | 2pq");
        (&sa * &sb).scale(&rational(8, (k.p() * k.q()) as i64))
    }

    /// `max |S_{x,y} - S_{y,x}|`.
    pub fn symmetry_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                worst = worst.max((self.entries[i * d + j] - self.entries[j * d + i]).abs());
            }
        }
        worst
    }

    /// `max |sum_z S_{z,x} S_{z,y} - 2 delta_{x,y}|`.
    pub fn orthogonality_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for x in 0..d {
            for y in 0..d {
                let s: f64 = (0..d)
                    .map(|z| self.entries[z * d + x] * self.entries[z * d + y])
                    .sum();
                let target = if x == y { 2.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

pub fn s_matrix(k: &TorusKnot) -> SMatrix {
    SMatrix::new(k)
}
