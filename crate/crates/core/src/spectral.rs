//! FFT plumbing shared by every spectral operation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

type Plan = Arc<dyn Fft<f64>>;

fn cache() -> &'static Mutex<(FftPlanner<f64>, HashMap<usize, (Plan, Plan)>)> {
    static CACHE: OnceLock<Mutex<(FftPlanner<f64>, HashMap<usize, (Plan, Plan)>)>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new((FftPlanner::new(), HashMap::new())))
}

/// Forward/inverse FFT pair for length `n`, planned once per process.
#[derive(Clone)]
pub struct FftPair {
    forward: Plan,
    inverse: Plan,
    n: usize,
}

impl FftPair {
    pub fn new(n: usize) -> Self {
        let mut guard = cache().lock().expect("fft plan cache poisoned");
        let (planner, plans) = &mut *guard;
        let (forward, inverse) = plans
            .entry(n)
            .or_insert_with(|| (planner.plan_fft_forward(n), planner.plan_fft_inverse(n)))
            .clone();
        Self {
            forward,
            inverse,
            n,
        }
    }

    /// Unnormalized forward transform `F_j = Σ_l a_l e^{-2πi jl/n}`.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.forward.process(data);
    }

    /// Inverse transform including the `1/n` factor.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.inverse.process(data);
        let scale = 1.0 / self.n as f64;
        data.iter_mut().for_each(|z| *z *= scale);
    }
}

/// `e^{iθ}` with the phase reduced before evaluation.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `sqrt(Σ |a - b|² · dx)`.
pub fn l2_distance(a: &[Complex64], b: &[Complex64], dx: f64) -> f64 {
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    (sum * dx).sqrt()
}
