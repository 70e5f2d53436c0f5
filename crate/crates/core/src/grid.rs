//! Uniform periodic 1-D grid and its discrete-Fourier conjugate.
//!
//! Positions are `x_j = x_min + j·dx` for `j = 0..n` with `dx = (x_max - x_min)/n`
//! (the point `x_max` itself is the periodic image of `x_min`).
//!
//! Wavenumbers live on the lattice `k = m·dk`, `dk = 2π/(n·dx)`. FFT bin `j`
//! holds every lattice frequency congruent to `j` modulo `n`; the grid picks the
//! representative closest to a configurable window centre `c·dk`, i.e.
//! `k_j = dk·(c + wrap(j - c))` with `wrap` mapping into `[-n/2, n/2)`. With the
//! default centre `c = 0` this is the usual wraparound ordering
//! `0, dk, …, (n/2-1)dk, -n/2·dk, …, -dk`. A non-zero centre lets a grid hold a
//! narrow-band packet with a large carrier wavenumber without refining `dx`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    x_min: f64,
    x_max: f64,
    n: usize,
    k_center: i64,
}

impl SpatialGrid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::invalid(
                "x_min/x_max",
                format!("need finite x_min < x_max, got [{x_min}, {x_max}]"),
            ));
        }
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::GridSize(n));
        }
        Ok(Self {
            x_min,
            x_max,
            n,
            k_center: 0,
        })
    }

    /// Symmetric grid `[-half_width, half_width)`.
    pub fn centered(half_width: f64, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n)
    }

    /// Same positions, momentum window centred on the lattice wavenumber
    /// nearest to `k`.
    pub fn with_wavenumber_center(mut self, k: f64) -> Self {
        self.k_center = (k / self.dk()).round() as i64;
        self
    }

    /// Same positions, momentum window centred at momentum `p` (for a given hbar).
    pub fn with_momentum_center(self, p: f64, hbar: f64) -> Self {
        self.with_wavenumber_center(p / hbar)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn span(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.span() / self.n as f64
    }

    pub fn dk(&self) -> f64 {
        2.0 * PI / self.span()
    }

    /// Index of the momentum window centre on the `dk` lattice.
    pub fn wavenumber_center_index(&self) -> i64 {
        self.k_center
    }

    pub fn wavenumber_center(&self) -> f64 {
        self.k_center as f64 * self.dk()
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    /// Lattice index (in units of `dk`) held by FFT bin `j`.
    pub fn lattice_index(&self, j: usize) -> i64 {
        let n = self.n as i64;
        let rel = (j as i64 - self.k_center).rem_euclid(n);
        let wrapped = if rel >= n / 2 { rel - n } else { rel };
        self.k_center + wrapped
    }

    /// Wavenumbers in FFT bin order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let dk = self.dk();
        (0..self.n)
            .map(|j| self.lattice_index(j) as f64 * dk)
            .collect()
    }

    /// Lowest and highest representable wavenumber.
    pub fn wavenumber_window(&self) -> (f64, f64) {
        let half = (self.n / 2) as f64;
        let dk = self.dk();
        (
            (self.k_center as f64 - half) * dk,
            (self.k_center as f64 + half - 1.0) * dk,
        )
    }

    /// FFT bin order that lists wavenumbers in ascending order.
    pub fn ascending_order(&self) -> Vec<usize> {
        let n = self.n as i64;
        let start = (self.k_center - n / 2).rem_euclid(n);
        (0..n).map(|i| ((start + i) % n) as usize).collect()
    }

    /// True when both grids sample the same positions.
    pub fn same_positions(&self, other: &SpatialGrid) -> bool {
        self.n == other.n && self.x_min == other.x_min && self.x_max == other.x_max
    }

    pub(crate) fn ensure_same_positions(&self, other: &SpatialGrid) -> Result<()> {
        if self.same_positions(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "[{}, {}) n={} vs [{}, {}) n={}",
                self.x_min, self.x_max, self.n, other.x_min, other.x_max, other.n
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_power_of_two() {
        assert!(matches!(SpatialGrid::new(0.0, 1.0, 100), Err(Error::GridSize(100))));
        assert!(matches!(SpatialGrid::new(0.0, 1.0, 8), Err(Error::GridSize(8))));
        assert!(SpatialGrid::new(1.0, 0.0, 64).is_err());
        assert!(SpatialGrid::new(0.0, 1.0, 16).is_ok());
    }

    #[test]
    fn default_wraparound_order() {
        let g = SpatialGrid::new(0.0, 16.0, 16).unwrap();
        let k: Vec<i64> = (0..16).map(|j| g.lattice_index(j)).collect();
        assert_eq!(k, vec![0, 1, 2, 3, 4, 5, 6, 7, -8, -7, -6, -5, -4, -3, -2, -1]);
        assert!((g.dx() - 1.0).abs() < 1e-15);
        assert!((g.dk() - 2.0 * PI / 16.0).abs() < 1e-15);
    }

    #[test]
    fn centred_window_is_contiguous() {
        let g = SpatialGrid::new(0.0, 16.0, 16)
            .unwrap()
            .with_wavenumber_center(100.0 * 2.0 * PI / 16.0);
        assert_eq!(g.wavenumber_center_index(), 100);
        let mut idx: Vec<i64> = (0..16).map(|j| g.lattice_index(j)).collect();
        for (j, m) in idx.iter().enumerate() {
            assert_eq!(m.rem_euclid(16), j as i64);
        }
        idx.sort();
        assert_eq!(idx, (92..108).collect::<Vec<_>>());
        let asc: Vec<i64> = g.ascending_order().iter().map(|&j| g.lattice_index(j)).collect();
        assert_eq!(asc, (92..108).collect::<Vec<_>>());
    }
}
