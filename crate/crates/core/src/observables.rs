//! Expectation values. Momentum moments are evaluated spectrally.
//!
//! Widths follow the σ-parameter convention of [`crate::gaussian::GaussianSpec`]:
//! `width = √2 · rms`, so a Gaussian sampled with parameter σ reports width σ
//! and a freely evolved one reports `σ(Δt) = σ·sqrt(1 + (ħΔt/(mσ²))²)`.

use num_complex::Complex64;

use crate::error::Result;
use crate::spectral::FftPair;
use crate::wavefunction::{MomentumWaveFunction, WaveFunction};

/// First and second moments of a state, normalized by its current norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub norm_sqr: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub rms_x: f64,
    pub rms_p: f64,
    /// `½⟨xp + px⟩ − ⟨x⟩⟨p⟩`
    pub cov_xp: f64,
}

impl Moments {
    pub fn of(psi: &WaveFunction) -> Self {
        let grid = psi.grid();
        let dx = grid.dx();
        let hbar = psi.units().hbar;
        let amps = psi.amplitudes();

        let mut w = 0.0;
        let mut sx = 0.0;
        let mut sxx = 0.0;
        for (j, z) in amps.iter().enumerate() {
            let d = z.norm_sqr();
            let x = grid.x(j);
            w += d;
            sx += d * x;
            sxx += d * x * x;
        }
        let norm_sqr = w * dx;
        let mean_x = sx / w;
        let var_x = (sxx / w - mean_x * mean_x).max(0.0);

        let fft = FftPair::new(grid.len());
        let mut spec = amps.to_vec();
        fft.forward(&mut spec);
        let ks = grid.wavenumbers();
        let mut wk = 0.0;
        let mut sk = 0.0;
        let mut skk = 0.0;
        for (z, &k) in spec.iter().zip(&ks) {
            let d = z.norm_sqr();
            wk += d;
            sk += d * k;
            skk += d * k * k;
        }
        let mean_k = sk / wk;
        let var_k = (skk / wk - mean_k * mean_k).max(0.0);

        // p ψ in position space
        for (z, &k) in spec.iter_mut().zip(&ks) {
            *z *= k;
        }
        fft.inverse(&mut spec);
        let xp: f64 = amps
            .iter()
            .zip(&spec)
            .enumerate()
            .map(|(j, (a, b))| (a.conj() * b * grid.x(j)).re)
            .sum::<f64>()
            / w;
        let cov_xp = hbar * (xp - mean_x * mean_k);

        Self {
            norm_sqr,
            mean_x,
            mean_p: hbar * mean_k,
            rms_x: var_x.sqrt(),
            rms_p: hbar * var_k.sqrt(),
            cov_xp,
        }
    }

    /// σ-parameter width (`√2 · rms_x`).
    pub fn width(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.rms_x
    }

    /// Predicted rms position width after free evolution for `dt`.
    pub fn free_rms_after(&self, dt: f64, mass: f64) -> f64 {
        let s = dt / mass;
        (self.rms_x * self.rms_x + 2.0 * s * self.cov_xp + s * s * self.rms_p * self.rms_p)
            .max(0.0)
            .sqrt()
    }
}

pub fn mean_position(psi: &WaveFunction) -> Result<f64> {
    psi.ensure_normalized()?;
    Ok(Moments::of(psi).mean_x)
}

pub fn mean_momentum(psi: &WaveFunction) -> Result<f64> {
    psi.ensure_normalized()?;
    Ok(Moments::of(psi).mean_p)
}

/// σ-parameter width `√2·sqrt(⟨x²⟩ − ⟨x⟩²)`.
pub fn spatial_width(psi: &WaveFunction) -> Result<f64> {
    psi.ensure_normalized()?;
    Ok(Moments::of(psi).width())
}

/// Plain rms width `sqrt(⟨x²⟩ − ⟨x⟩²)`.
pub fn rms_width(psi: &WaveFunction) -> Result<f64> {
    psi.ensure_normalized()?;
    Ok(Moments::of(psi).rms_x)
}

/// σ-parameter width of the momentum distribution.
pub fn momentum_width(phi: &MomentumWaveFunction) -> f64 {
    let dp = phi.dp();
    let (mut w, mut s, mut ss) = (0.0, 0.0, 0.0);
    for (z, &p) in phi.amplitudes().iter().zip(phi.momenta()) {
        let d = z.norm_sqr() * dp;
        w += d;
        s += d * p;
        ss += d * p * p;
    }
    let mean = s / w;
    std::f64::consts::SQRT_2 * (ss / w - mean * mean).max(0.0).sqrt()
}

/// Overlap `|⟨a|b⟩|` divided by both norms.
pub fn fidelity(a: &WaveFunction, b: &WaveFunction) -> Result<f64> {
    let ov: Complex64 = a.inner(b)?;
    Ok(ov.norm_sqr() / (a.norm_sqr() * b.norm_sqr()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{sample_gaussian, GaussianSpec};
    use crate::grid::SpatialGrid;
    use crate::units::UnitSystem;
    use crate::wavefunction::NORMALIZED_TOL;

    #[test]
    fn gaussian_moments() {
        let grid = SpatialGrid::new(-20.0, 20.0, 1024).unwrap();
        let u = UnitSystem::natural();
        let psi = sample_gaussian(&GaussianSpec::new(3.0, 2.0, 1.0).unwrap(), &grid, &u).unwrap();
        assert!((mean_position(&psi).unwrap() - 3.0).abs() < 1e-12);
        assert!((mean_momentum(&psi).unwrap() - 2.0).abs() < 1e-12);
        assert!((spatial_width(&psi).unwrap() - 1.0).abs() < 1e-12);
        assert!((rms_width(&psi).unwrap() - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        let m = Moments::of(&psi);
        assert!(m.cov_xp.abs() < 1e-12);
        assert!((m.rms_p - 1.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn momentum_rep_of_gaussian() {
        let grid = SpatialGrid::new(-20.0, 20.0, 1024).unwrap();
        let u = UnitSystem::natural();
        let psi = sample_gaussian(&GaussianSpec::new(0.0, 0.0, 2.0).unwrap(), &grid, &u).unwrap();
        let phi = psi.to_momentum_rep();
        assert!((momentum_width(&phi) - 0.5).abs() < 1e-12);
        let boosted = sample_gaussian(&GaussianSpec::new(0.0, 5.0, 2.0).unwrap(), &grid, &u).unwrap();
        let phi5 = boosted.to_momentum_rep();
        let dp = phi5.dp();
        assert!((phi5.peak_momentum() - 5.0).abs() <= dp / 2.0);
    }

    #[test]
    fn unnormalized_rejected() {
        let grid = SpatialGrid::new(-20.0, 20.0, 256).unwrap();
        let psi = sample_gaussian(&GaussianSpec::new(0.0, 0.0, 1.0).unwrap(), &grid, &UnitSystem::natural())
            .unwrap()
            .scaled(Complex64::new(1.0 + 10.0 * NORMALIZED_TOL, 0.0));
        assert!(mean_position(&psi).is_err());
        assert!(spatial_width(&psi).is_err());
    }
}
