//! Brute-force two-qubit D1, written without the library's measurement code.
//!
//! Measurements on A are Bloch directions `n(θ, φ)` with projectors
//! `(1 ± n·σ)/2`; the conditional states are 2x2 and their entropies come
//! from the closed-form eigenvalues. `S(ρ_AB)` uses the real 8x8 embedding
//! `[[Re, -Im], [Im, Re]]`, whose spectrum is that of `ρ` doubled.

#![allow(dead_code, clippy::needless_range_loop)]

use std::f64::consts::{PI, TAU};

use nalgebra::{Complex, DMatrix, SymmetricEigen};

type C = Complex<f64>;

pub const GRID_THETA: usize = 200;
pub const GRID_PHI: usize = 400;

fn h(values: &[f64]) -> f64 {
    values.iter().filter(|&&x| x > 1e-15).map(|&x| -x * x.log2()).sum()
}

/// Entropy of a 2x2 Hermitian `[[a, b], [b*, d]]` with unit trace (after scaling).
fn entropy2(a: f64, d: f64, b: C) -> f64 {
    let t = a + d;
    let disc = ((a - d) * (a - d) + 4.0 * b.norm_sqr()).sqrt();
    h(&[(t + disc) / (2.0 * t), (t - disc) / (2.0 * t)])
}

pub struct TwoQubit {
    rho: [[C; 4]; 4],
    s_a: f64,
    s_ab: f64,
}

impl TwoQubit {
    pub fn new(m: &DMatrix<C>) -> Self {
        assert_eq!(m.shape(), (4, 4));
        let mut rho = [[C::new(0.0, 0.0); 4]; 4];
        for (r, row) in rho.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = m[(r, c)];
            }
        }
        // ρ_A[i][j] = Σ_k ρ[(i,k),(j,k)]
        let pa = |i: usize, j: usize| rho[2 * i][2 * j] + rho[2 * i + 1][2 * j + 1];
        let s_a = entropy2(pa(0, 0).re, pa(1, 1).re, pa(0, 1));

        let embed = DMatrix::from_fn(8, 8, |r, c| {
            let z = rho[r % 4][c % 4];
            match (r / 4, c / 4) {
                (0, 0) | (1, 1) => z.re,
                (0, 1) => -z.im,
                _ => z.im,
            }
        });
        let mut ev: Vec<f64> = SymmetricEigen::new(embed).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        let spectrum: Vec<f64> = ev.iter().step_by(2).copied().collect();
        Self { rho, s_a, s_ab: h(&spectrum) }
    }

    /// `S(B | Π_n)` for the Bloch direction `n(θ, φ)` on A.
    pub fn conditional_entropy(&self, theta: f64, phi: f64) -> f64 {
        let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        let mut total = 0.0;
        for sign in [1.0, -1.0] {
            // P = (1 + sign n·σ)/2
            let p = [
                [C::new(0.5 * (1.0 + sign * n[2]), 0.0), C::new(0.5 * sign * n[0], -0.5 * sign * n[1])],
                [C::new(0.5 * sign * n[0], 0.5 * sign * n[1]), C::new(0.5 * (1.0 - sign * n[2]), 0.0)],
            ];
            // block[k][l] = Σ_ij P[j][i] ρ[(i,k),(j,l)]
            let mut block = [[C::new(0.0, 0.0); 2]; 2];
            for (k, row) in block.iter_mut().enumerate() {
                for (l, x) in row.iter_mut().enumerate() {
                    for i in 0..2 {
                        for j in 0..2 {
                            *x += p[j][i] * self.rho[2 * i + k][2 * j + l];
                        }
                    }
                }
            }
            let prob = block[0][0].re + block[1][1].re;
            if prob > 1e-14 {
                total += prob * entropy2(block[0][0].re, block[1][1].re, block[0][1]);
            }
        }
        total
    }

    /// Grid search followed by repeated local zooms around the best grid points.
    pub fn min_conditional_entropy(&self) -> f64 {
        let dt = PI / (GRID_THETA - 1) as f64;
        let dp = TAU / GRID_PHI as f64;
        let mut grid = Vec::with_capacity(GRID_THETA * GRID_PHI);
        for i in 0..GRID_THETA {
            for j in 0..GRID_PHI {
                let (t, p) = (i as f64 * dt, j as f64 * dp);
                grid.push((self.conditional_entropy(t, p), t, p));
            }
        }
        grid.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut best = grid[0].0;
        for &(v0, t0, p0) in grid.iter().take(8) {
            let (mut v, mut t, mut p) = (v0, t0, p0);
            let (mut wt, mut wp) = (dt, dp);
            for _ in 0..40 {
                for a in -5..=5 {
                    for b in -5..=5 {
                        let (tt, pp) = (t + wt * a as f64 / 5.0, p + wp * b as f64 / 5.0);
                        let vv = self.conditional_entropy(tt, pp);
                        if vv < v {
                            (v, t, p) = (vv, tt, pp);
                        }
                    }
                }
                wt *= 0.5;
                wp *= 0.5;
            }
            best = best.min(v);
        }
        best
    }

    pub fn d1(&self) -> f64 {
        self.s_a + self.min_conditional_entropy() - self.s_ab
    }
}

/// `1 - H₂(a)` written out directly.
pub fn bell_mixture_discord(a: f64) -> f64 {
    1.0 + a * a.log2() + (1.0 - a) * (1.0 - a).log2()
}
