//! Minimum-uncertainty Gaussian packets.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::SpatialGrid;
use crate::units::UnitSystem;
use crate::wavefunction::WaveFunction;

/// Required coverage (in units of σ) around the packet centre; narrower grids
/// are rejected.
pub const REQUIRED_SIGMAS: f64 = 6.0;
/// Coverage below which sampling logs a warning.
pub const QUIET_SIGMAS: f64 = 8.0;

/// `ψ(x) = π^{-1/4} σ^{-1/2} exp[i p0 (x - x0)/ħ - (x - x0)²/(2σ²)]`.
///
/// `sigma` is the width parameter of the amplitude: the density has rms width
/// `σ/√2`. Widths reported by [`crate::observables`] use the same σ-parameter
/// convention, so a freshly sampled packet has width exactly `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec {
    pub x0: f64,
    pub p0: f64,
    pub sigma: f64,
}

impl GaussianSpec {
    pub fn new(x0: f64, p0: f64, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::invalid("sigma", format!("must be positive, got {sigma}")));
        }
        if !x0.is_finite() || !p0.is_finite() {
            return Err(Error::invalid("x0/p0", "must be finite"));
        }
        Ok(Self { x0, p0, sigma })
    }

    pub fn amplitude(&self, x: f64, hbar: f64) -> Complex64 {
        let d = x - self.x0;
        let norm = PI.powf(-0.25) / self.sigma.sqrt();
        Complex64::from_polar(
            norm * (-(d * d) / (2.0 * self.sigma * self.sigma)).exp(),
            self.p0 * d / hbar,
        )
    }
}

/// σ-parameter width of a freely evolved Gaussian:
/// `σ(Δt) = σ·sqrt(1 + (ħΔt/(mσ²))²)`.
pub fn free_width(sigma: f64, dt: f64, units: &UnitSystem) -> f64 {
    let tau = units.hbar * dt / (units.mass * sigma * sigma);
    sigma * (1.0 + tau * tau).sqrt()
}

/// Samples `spec` onto `grid` at time 0.
pub fn sample_gaussian(
    spec: &GaussianSpec,
    grid: &SpatialGrid,
    units: &UnitSystem,
) -> Result<WaveFunction> {
    sample_gaussian_at(spec, grid, units, 0.0)
}

/// Samples `spec` onto `grid` and stamps it with time `t_i`.
pub fn sample_gaussian_at(
    spec: &GaussianSpec,
    grid: &SpatialGrid,
    units: &UnitSystem,
    t_i: f64,
) -> Result<WaveFunction> {
    check_coverage(spec, grid, units)?;
    let hbar = units.hbar;
    WaveFunction::from_fn(*grid, *units, t_i, |x| spec.amplitude(x, hbar))
}

fn check_coverage(spec: &GaussianSpec, grid: &SpatialGrid, units: &UnitSystem) -> Result<()> {
    let (lo, hi) = (grid.x_min(), grid.x_max());
    let need = |s: f64| (spec.x0 - s * spec.sigma, spec.x0 + s * spec.sigma);
    let (rlo, rhi) = need(REQUIRED_SIGMAS);
    if rlo < lo || rhi > hi {
        return Err(Error::Coverage {
            what: "gaussian position support (x0 ± 6σ)",
            need_lo: rlo,
            need_hi: rhi,
            have_lo: lo,
            have_hi: hi,
            deficit: (lo - rlo).max(rhi - hi),
        });
    }
    let (qlo, qhi) = need(QUIET_SIGMAS);
    if qlo < lo || qhi > hi {
        log::warn!(
            "grid [{lo:.4e}, {hi:.4e}) covers x0 ± 6σ but not ± 8σ ([{qlo:.4e}, {qhi:.4e}])"
        );
    }

    let k0 = spec.p0 / units.hbar;
    let k_sigma = 1.0 / spec.sigma;
    let (klo, khi) = grid.wavenumber_window();
    let (nlo, nhi) = (k0 - REQUIRED_SIGMAS * k_sigma, k0 + REQUIRED_SIGMAS * k_sigma);
    if nlo < klo || nhi > khi {
        return Err(Error::Coverage {
            what: "gaussian wavenumber support (k0 ± 6/σ)",
            need_lo: nlo,
            need_hi: nhi,
            have_lo: klo,
            have_hi: khi,
            deficit: (klo - nlo).max(nhi - khi),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_amplitude_is_real() {
        let grid = SpatialGrid::new(-16.0, 16.0, 1024).unwrap();
        let spec = GaussianSpec::new(0.0, 0.0, 1.0).unwrap();
        let psi = sample_gaussian(&spec, &grid, &UnitSystem::natural()).unwrap();
        let mid = psi.amplitudes()[512];
        assert_eq!(grid.x(512), 0.0);
        assert!((mid.re - PI.powf(-0.25)).abs() < 1e-15);
        assert!(psi.amplitudes().iter().all(|z| z.im == 0.0));
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn boost_is_pure_phase() {
        let grid = SpatialGrid::new(-16.0, 16.0, 1024).unwrap();
        let u = UnitSystem::natural();
        let rest = sample_gaussian(&GaussianSpec::new(0.0, 0.0, 1.0).unwrap(), &grid, &u).unwrap();
        let moving = sample_gaussian(&GaussianSpec::new(0.0, 5.0, 1.0).unwrap(), &grid, &u).unwrap();
        for (a, b) in rest.amplitudes().iter().zip(moving.amplitudes()) {
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
        // dφ/dx at the centre via neighbouring samples
        let dx = grid.dx();
        let dphi = (moving.amplitudes()[513] / moving.amplitudes()[511]).arg() / (2.0 * dx);
        assert!((dphi - 5.0).abs() < 1e-12);
    }

    #[test]
    fn narrow_grid_rejected_with_deficit() {
        let grid = SpatialGrid::new(-5.0, 5.0, 256).unwrap();
        let spec = GaussianSpec::new(0.0, 0.0, 1.0).unwrap();
        match sample_gaussian(&spec, &grid, &UnitSystem::natural()) {
            Err(Error::Coverage { deficit, .. }) => assert!((deficit - 1.0).abs() < 1e-12),
            other => panic!("expected coverage error, got {other:?}"),
        }
    }

    #[test]
    fn coarse_grid_rejected_in_momentum() {
        let grid = SpatialGrid::new(-40.0, 40.0, 64).unwrap();
        let spec = GaussianSpec::new(0.0, 3.0, 1.0).unwrap();
        assert!(matches!(
            sample_gaussian(&spec, &grid, &UnitSystem::natural()),
            Err(Error::Coverage { .. })
        ));
    }

    #[test]
    fn free_width_closed_form() {
        let u = UnitSystem::natural();
        assert!((free_width(1.0, 1.0, &u) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(free_width(2.0, 0.0, &u), 2.0);
    }
}
