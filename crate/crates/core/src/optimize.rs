//! Derivative-free multistart minimization over measurement charts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Settings for [`multistart_minimize`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Number of random starting points (explicit seeds come on top).
    pub restarts: usize,
    /// Whether the eigenbasis of the measured marginal is used as an extra start.
    pub include_eigenbasis_seed: bool,
    /// Simplex value-spread tolerance.
    pub tolerance: f64,
    /// Evaluation budget per start.
    pub max_evaluations: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            include_eigenbasis_seed: true,
            tolerance: 1e-9,
            max_evaluations: 5000,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Counted<'a, F> {
    f: &'a F,
    evaluations: usize,
}

impl<F: Fn(&[f64]) -> f64> Counted<'_, F> {
    fn call(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

/// Nelder-Mead with dimension-adaptive coefficients.
///
/// Stops when the spread of simplex values drops to `tolerance`, then
/// rebuilds a smaller simplex around the best vertex; the run ends once a
/// rebuild no longer improves the minimum by more than `tolerance`.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    step: f64,
    tolerance: f64,
    max_evaluations: usize,
) -> NelderMeadResult {
    let n = x0.len();
    let mut counted = Counted { f, evaluations: 0 };
    if n == 0 {
        let value = counted.call(x0);
        return NelderMeadResult {
            x: Vec::new(),
            value,
            evaluations: 1,
            converged: true,
        };
    }
    let nf = n as f64;
    let (alpha, gamma, rho, sigma) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);

    let mut best_x = x0.to_vec();
    let mut best_v = counted.call(x0);
    let mut scale = step;
    let mut converged = false;

    for _round in 0..4 {
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((best_x.clone(), best_v));
        for i in 0..n {
            let mut x = best_x.clone();
            x[i] += scale;
            let v = counted.call(&x);
            simplex.push((x, v));
        }
        let start_v = best_v;
        let mut round_converged = false;

        while counted.evaluations < max_evaluations {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            if simplex[n].1 - simplex[0].1 <= tolerance {
                round_converged = true;
                break;
            }
            let mut centroid = vec![0.0; n];
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / nf;
                }
            }
            let worst = simplex[n].clone();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&worst.0)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };
            let xr = along(alpha);
            let vr = counted.call(&xr);
            if vr < simplex[0].1 {
                let xe = along(alpha * gamma);
                let ve = counted.call(&xe);
                simplex[n] = if ve < vr { (xe, ve) } else { (xr, vr) };
            } else if vr < simplex[n - 1].1 {
                simplex[n] = (xr, vr);
            } else {
                let (xc, vc) = if vr < worst.1 {
                    let xc = along(alpha * rho);
                    let vc = counted.call(&xc);
                    (xc, vc)
                } else {
                    let xc = along(-rho);
                    let vc = counted.call(&xc);
                    (xc, vc)
                };
                if vc < worst.1.min(vr) {
                    simplex[n] = (xc, vc);
                } else {
                    let best = simplex[0].0.clone();
                    for (x, v) in simplex.iter_mut().skip(1) {
                        for (xi, bi) in x.iter_mut().zip(&best) {
                            *xi = bi + sigma * (*xi - bi);
                        }
                        *v = counted.call(x);
                    }
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let improved = start_v - simplex[0].1;
        if simplex[0].1 <= best_v {
            best_x = simplex[0].0.clone();
            best_v = simplex[0].1;
        }
        converged = round_converged;
        if !round_converged || improved <= tolerance {
            break;
        }
        scale = (scale * 0.1).max(1e-4);
    }

    NelderMeadResult {
        x: best_x,
        value: best_v,
        evaluations: counted.evaluations,
        converged,
    }
}

/// Outcome of a multistart run; starts are indexed seeds first, then random.
#[derive(Debug, Clone)]
pub struct MultistartResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub best_start: usize,
    pub per_start: Vec<f64>,
    pub converged: bool,
    pub evaluations: usize,
}

const INITIAL_STEP: f64 = 0.7;

/// Minimizes `f` from every explicit seed plus `config.restarts` random
/// points with angles uniform in `[0, 2π)`.
///
/// Starts may run in parallel; the winner is chosen in start order, and a
/// later start only replaces the incumbent if it is lower by more than 1e-10.
pub fn multistart_minimize<F>(f: &F, dim: usize, seeds: Vec<Vec<f64>>, config: &OptimizerConfig) -> MultistartResult
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut starts = seeds;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.restarts {
        starts.push(
            (0..dim)
                .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
                .collect(),
        );
    }
    if starts.is_empty() {
        starts.push(vec![0.0; dim]);
    }

    let runs: Vec<NelderMeadResult> = starts
        .par_iter()
        .map(|x0| nelder_mead(f, x0, INITIAL_STEP, config.tolerance, config.max_evaluations))
        .collect();

    let mut best = 0;
    for (i, r) in runs.iter().enumerate().skip(1) {
        if r.value < runs[best].value - 1e-10 {
            best = i;
        }
    }
    MultistartResult {
        x: runs[best].x.clone(),
        value: runs[best].value,
        best_start: best,
        per_start: runs.iter().map(|r| r.value).collect(),
        converged: runs[best].converged,
        evaluations: runs.iter().map(|r| r.evaluations).sum(),
    }
}
