//! Sampled wave-functions in position and momentum representation.
//!
//! The momentum representation follows the continuous convention
//! `ψ̃(p) = (2πħ)^{-1/2} ∫ ψ(x) e^{-ipx/ħ} dx`, discretized as
//! `ψ̃(p_j) = dx·(2πħ)^{-1/2}·e^{-ik_j x_min}·FFT[ψ]_j`. With `dp = ħ·dk` this
//! makes `Σ|ψ|²dx = Σ|ψ̃|²dp` hold exactly (Parseval for the DFT).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::SpatialGrid;
use crate::spectral::{cis, l2_distance, FftPair};
use crate::units::UnitSystem;

/// Tolerance on `|norm² - 1|` below which a state counts as normalized.
pub const NORMALIZED_TOL: f64 = 1e-9;

/// Fraction of the grid (each side) treated as the boundary band when
/// checking for contamination.
pub const EDGE_FRACTION: f64 = 0.05;

/// Probability allowed in the boundary band before a state is flagged.
pub const EDGE_DENSITY_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    pub(crate) grid: SpatialGrid,
    pub(crate) amps: Vec<Complex64>,
    pub(crate) time: f64,
    pub(crate) units: UnitSystem,
}

/// Momentum-space amplitudes sorted by ascending momentum.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumWaveFunction {
    pub(crate) grid: SpatialGrid,
    pub(crate) momenta: Vec<f64>,
    pub(crate) amps: Vec<Complex64>,
    pub(crate) time: f64,
    pub(crate) units: UnitSystem,
}

impl WaveFunction {
    pub fn from_amplitudes(
        grid: SpatialGrid,
        amps: Vec<Complex64>,
        units: UnitSystem,
        time: f64,
    ) -> Result<Self> {
        if amps.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} amplitudes for a grid of {} points",
                amps.len(),
                grid.len()
            )));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("amps", "non-finite amplitude"));
        }
        Ok(Self {
            grid,
            amps,
            time,
            units,
        })
    }

    /// Samples `f(x)` at the grid points.
    pub fn from_fn(
        grid: SpatialGrid,
        units: UnitSystem,
        time: f64,
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self> {
        let amps = grid.positions().into_iter().map(f).collect();
        Self::from_amplitudes(grid, amps, units, time)
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn units(&self) -> &UnitSystem {
        &self.units
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    /// Relabels the momentum window without touching the samples.
    pub fn with_grid_window(mut self, grid: SpatialGrid) -> Result<Self> {
        self.grid.ensure_same_positions(&grid)?;
        self.grid = grid;
        Ok(self)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.dx()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() < NORMALIZED_TOL
    }

    pub fn ensure_normalized(&self) -> Result<()> {
        let deviation = (self.norm_sqr() - 1.0).abs();
        if deviation < NORMALIZED_TOL {
            Ok(())
        } else {
            Err(Error::NotNormalized { deviation })
        }
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_sqr();
        if !(n > 0.0) {
            return Err(Error::invalid("amps", "cannot normalize a zero state"));
        }
        let s = 1.0 / n.sqrt();
        self.amps.iter_mut().for_each(|z| *z *= s);
        Ok(self)
    }

    pub fn density(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Complex conjugate, which is the time-reversed state.
    pub fn conjugated(&self) -> Self {
        let mut out = self.clone();
        out.amps.iter_mut().for_each(|z| *z = z.conj());
        out.grid = out
            .grid
            .with_wavenumber_center(-self.grid.wavenumber_center());
        out
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        out.amps.iter_mut().for_each(|z| *z *= factor);
        out
    }

    /// `⟨self|other⟩ = Σ conj(self)·other·dx`.
    pub fn inner(&self, other: &WaveFunction) -> Result<Complex64> {
        self.grid.ensure_same_positions(&other.grid)?;
        let s: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(s * self.grid.dx())
    }

    /// `sqrt(Σ|ψ_a - ψ_b|² dx)`.
    pub fn l2_distance(&self, other: &WaveFunction) -> Result<f64> {
        self.grid.ensure_same_positions(&other.grid)?;
        Ok(l2_distance(&self.amps, &other.amps, self.grid.dx()))
    }

    /// Probability in `[lo, hi)`.
    pub fn probability_in(&self, lo: f64, hi: f64) -> f64 {
        let dx = self.grid.dx();
        self.amps
            .iter()
            .enumerate()
            .filter(|(j, _)| {
                let x = self.grid.x(*j);
                x >= lo && x < hi
            })
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>()
            * dx
    }

    /// Probability in the outer [`EDGE_FRACTION`] of the grid on both sides.
    pub fn edge_probability(&self) -> f64 {
        let band = (EDGE_FRACTION * self.grid.len() as f64).ceil() as usize;
        let n = self.grid.len();
        let dx = self.grid.dx();
        let left: f64 = self.amps[..band].iter().map(|z| z.norm_sqr()).sum();
        let right: f64 = self.amps[n - band..].iter().map(|z| z.norm_sqr()).sum();
        (left + right) * dx
    }

    /// Logs a warning when the boundary band holds more than the threshold.
    /// Returns whether the state is contaminated.
    pub fn warn_if_boundary_contaminated(&self, context: &str) -> bool {
        let edge = self.edge_probability();
        let norm = self.norm_sqr();
        let contaminated = edge > EDGE_DENSITY_THRESHOLD * norm;
        if contaminated {
            log::warn!(
                "{context}: {:.3e} of the norm sits in the outer {:.0}% of the grid",
                edge / norm,
                EDGE_FRACTION * 100.0
            );
        }
        contaminated
    }

    /// Unitary transform to the momentum representation.
    pub fn to_momentum_rep(&self) -> MomentumWaveFunction {
        let fft = FftPair::new(self.grid.len());
        let mut data = self.amps.clone();
        fft.forward(&mut data);
        let hbar = self.units.hbar;
        let prefactor = self.grid.dx() / (2.0 * std::f64::consts::PI * hbar).sqrt();
        let ks = self.grid.wavenumbers();
        let x_min = self.grid.x_min();
        let order = self.grid.ascending_order();
        let momenta = order.iter().map(|&j| hbar * ks[j]).collect();
        let amps = order
            .iter()
            .map(|&j| data[j] * cis(-ks[j] * x_min) * prefactor)
            .collect();
        MomentumWaveFunction {
            grid: self.grid,
            momenta,
            amps,
            time: self.time,
            units: self.units,
        }
    }

    /// Applies `f(k)` multiplicatively in wavenumber space.
    pub(crate) fn apply_spectral(&mut self, f: impl Fn(f64) -> Complex64) {
        let fft = FftPair::new(self.grid.len());
        fft.forward(&mut self.amps);
        for (z, k) in self.amps.iter_mut().zip(self.grid.wavenumbers()) {
            *z *= f(k);
        }
        fft.inverse(&mut self.amps);
    }

    /// Applies `f(x)` multiplicatively in position space.
    pub(crate) fn apply_pointwise(&mut self, f: impl Fn(f64) -> Complex64) {
        for (j, z) in self.amps.iter_mut().enumerate() {
            *z *= f(self.grid.x(j));
        }
    }

    /// Returns `ψ(x + shift)` by multiplying with `e^{ik·shift}` in wavenumber
    /// space. Exact for states band-limited to the grid window.
    pub fn translated(&self, shift: f64) -> Self {
        let mut out = self.clone();
        if shift != 0.0 {
            out.apply_spectral(|k| cis(k * shift));
        }
        out
    }

    /// Returns `e^{iκx} ψ(x)` and moves the momentum window by `κ` so the
    /// boosted spectrum stays representable.
    pub fn boosted(&self, kappa: f64) -> Self {
        let mut out = self.clone();
        if kappa != 0.0 {
            out.apply_pointwise(|x| cis(kappa * x));
            out.grid = out
                .grid
                .with_wavenumber_center(self.grid.wavenumber_center() + kappa);
        }
        out
    }
}

impl MomentumWaveFunction {
    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn momenta(&self) -> &[f64] {
        &self.momenta
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn units(&self) -> &UnitSystem {
        &self.units
    }

    pub fn dp(&self) -> f64 {
        self.units.hbar * self.grid.dk()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.dp()
    }

    pub fn density(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn l2_distance(&self, other: &MomentumWaveFunction) -> Result<f64> {
        if self.momenta.len() != other.momenta.len()
            || self.momenta.first() != other.momenta.first()
        {
            return Err(Error::GridMismatch("momentum grids differ".into()));
        }
        Ok(l2_distance(&self.amps, &other.amps, self.dp()))
    }

    /// Momentum of the largest `|ψ̃|`.
    pub fn peak_momentum(&self) -> f64 {
        let (i, _) = self
            .amps
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, z)| {
                let v = z.norm_sqr();
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            });
        self.momenta[i]
    }

    /// Inverse of [`WaveFunction::to_momentum_rep`].
    pub fn to_position_rep(&self) -> WaveFunction {
        let n = self.grid.len();
        let hbar = self.units.hbar;
        let prefactor = (2.0 * std::f64::consts::PI * hbar).sqrt() / self.grid.dx();
        let ks = self.grid.wavenumbers();
        let x_min = self.grid.x_min();
        let mut data = vec![Complex64::new(0.0, 0.0); n];
        for (&j, z) in self.grid.ascending_order().iter().zip(&self.amps) {
            data[j] = z * cis(ks[j] * x_min) * prefactor;
        }
        FftPair::new(n).inverse(&mut data);
        WaveFunction {
            grid: self.grid,
            amps: data,
            time: self.time,
            units: self.units,
        }
    }

    /// Applies `f(p)` multiplicatively.
    pub(crate) fn apply(&mut self, f: impl Fn(f64) -> Complex64) {
        for (z, &p) in self.amps.iter_mut().zip(&self.momenta) {
            *z *= f(p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(grid: SpatialGrid) -> WaveFunction {
        WaveFunction::from_fn(grid, UnitSystem::natural(), 0.0, |x| {
            Complex64::new((-(x - 0.5) * (x - 0.5)).exp(), 0.3 * x * (-x * x).exp())
        })
        .unwrap()
    }

    #[test]
    fn parseval_and_roundtrip() {
        let grid = SpatialGrid::new(-12.0, 12.0, 256).unwrap();
        let psi = bump(grid);
        let phi = psi.to_momentum_rep();
        assert!((psi.norm_sqr() - phi.norm_sqr()).abs() < 1e-12 * psi.norm_sqr());
        let back = phi.to_position_rep();
        assert!(psi.l2_distance(&back).unwrap() < 1e-13 * psi.norm_sqr().sqrt());
    }

    #[test]
    fn momenta_ascending() {
        let grid = SpatialGrid::new(-8.0, 8.0, 64).unwrap().with_wavenumber_center(7.3);
        let phi = bump(grid).to_momentum_rep();
        assert!(phi.momenta().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn translation_matches_resampling() {
        let grid = SpatialGrid::new(-20.0, 20.0, 512).unwrap();
        let psi = bump(grid);
        let shifted = psi.translated(1.7);
        let direct = WaveFunction::from_fn(grid, UnitSystem::natural(), 0.0, |x| {
            let y = x + 1.7;
            Complex64::new((-(y - 0.5) * (y - 0.5)).exp(), 0.3 * y * (-y * y).exp())
        })
        .unwrap();
        assert!(shifted.l2_distance(&direct).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_wrong_length() {
        let grid = SpatialGrid::new(-1.0, 1.0, 16).unwrap();
        let r = WaveFunction::from_amplitudes(grid, vec![Complex64::new(0.0, 0.0); 8], UnitSystem::natural(), 0.0);
        assert!(matches!(r, Err(Error::GridMismatch(_))));
    }
}
