//! Phase shift generator: three capacitors of lengths `L, 2L, L` crossed at
//! longitudinal speed `v`, with transverse slopes `+V0, −V0, +V0`.

use crate::analytic::{free_evolve, linear_evolve, plane_wave_phase, Ordering, PhaseLedger, PlaneWavePhase};
use crate::error::{Error, Result};
use crate::observables::Moments;
use crate::units::UnitSystem;
use crate::wavefunction::WaveFunction;

/// Minimum `L / width` for packet input unless overridden.
pub const MIN_LENGTH_TO_WIDTH: f64 = 20.0;
/// Bound on the composed net kick and displacement, relative to the largest
/// single-segment value.
pub const CANCELLATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsgGeometry {
    /// Length of the first capacitor.
    pub length: f64,
    /// Transverse potential slope (energy/length).
    pub v0: f64,
    /// Longitudinal speed.
    pub velocity: f64,
    pub units: UnitSystem,
}

impl PsgGeometry {
    pub fn new(length: f64, v0: f64, velocity: f64, units: UnitSystem) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::invalid("psg.length", format!("must be positive, got {length}")));
        }
        if !v0.is_finite() {
            return Err(Error::invalid("psg.v0", "must be finite"));
        }
        if !(velocity > 0.0 && velocity.is_finite()) {
            return Err(Error::invalid("psg.velocity", format!("must be positive, got {velocity}")));
        }
        Ok(Self {
            length,
            v0,
            velocity,
            units,
        })
    }

    /// Time spent in the first capacitor, `L/v`.
    pub fn dt(&self) -> f64 {
        self.length / self.velocity
    }

    /// Total transit time `4Δt`.
    pub fn transit_time(&self) -> f64 {
        4.0 * self.dt()
    }

    /// `(slope, duration)` of each capacitor in order.
    pub fn segments(&self) -> [(f64, f64); 3] {
        let dt = self.dt();
        [(self.v0, dt), (-self.v0, 2.0 * dt), (self.v0, dt)]
    }
}

/// `−2V0²L³/(3ħmv³)`
pub fn psg_phase(g: &PsgGeometry) -> f64 {
    -2.0 * g.v0 * g.v0 * g.length.powi(3) / (3.0 * g.units.hbar * g.units.mass * g.velocity.powi(3))
}

/// Net momentum change and net displacement relative to free flight of a
/// sequence of linear segments `(slope, duration)`.
pub fn compose_kinematics(segments: &[(f64, f64)], mass: f64) -> (f64, f64) {
    let mut kick = 0.0;
    let mut shift = 0.0;
    for &(v, tau) in segments {
        shift += -v * tau * tau / (2.0 * mass) - kick * tau / mass;
        kick += v * tau;
    }
    // `kick` accumulated the decrease of momentum
    (-kick, shift)
}

fn check_cancellation(g: &PsgGeometry) -> Result<(f64, f64)> {
    let (kick, shift) = compose_kinematics(&g.segments(), g.units.mass);
    let dt = g.dt();
    let kick_scale = (g.v0 * dt).abs();
    let shift_scale = (g.v0 * dt * dt / g.units.mass).abs();
    if kick.abs() > CANCELLATION_TOL * kick_scale || shift.abs() > CANCELLATION_TOL * shift_scale {
        return Err(Error::Geometry(format!(
            "net transverse kick {kick:.3e} or displacement {shift:.3e} does not vanish"
        )));
    }
    Ok((kick, shift))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsgPlaneWave {
    pub p_in: f64,
    pub p_out: f64,
    pub segments: [PlaneWavePhase; 3],
    /// Sum of the segment phases.
    pub total_phase: f64,
    /// `total_phase` minus the free phase `−p²·4Δt/(2mħ)`.
    pub relative_phase: f64,
    pub net_kick: f64,
    pub net_displacement: f64,
}

/// Composes the exact plane-wave phases of the three segments.
pub fn psg_compose_plane_wave(g: &PsgGeometry, p: f64) -> Result<PsgPlaneWave> {
    let (net_kick, net_displacement) = check_cancellation(g)?;
    let u = g.units;
    let mut p_in = p;
    let segments = g.segments().map(|(v, tau)| {
        let ph = plane_wave_phase(p_in, v, tau, &u);
        p_in = ph.p_out;
        ph
    });
    // cancel the free phase segment by segment to keep large |p| accurate
    let relative_phase = segments
        .iter()
        .zip(g.segments())
        .map(|(ph, (_, tau))| ph.total() + p * p * tau / (2.0 * u.mass * u.hbar))
        .sum::<f64>();
    let total_phase = segments.iter().map(PlaneWavePhase::total).sum();
    Ok(PsgPlaneWave {
        p_in: p,
        p_out: p_in,
        segments,
        total_phase,
        relative_phase,
        net_kick,
        net_displacement,
    })
}

#[derive(Debug, Clone)]
pub struct PsgPacket {
    pub psi: WaveFunction,
    /// Free evolution of the input over `4Δt`.
    pub reference: WaveFunction,
    pub ledgers: [PhaseLedger; 3],
    /// `arg⟨reference|psi⟩`
    pub relative_phase: f64,
    /// L2 distance between `|psi|` and `|reference|`.
    pub modulus_distance: f64,
    pub net_kick: f64,
    pub net_displacement: f64,
}

/// Evolves a transverse packet through the three segments with the
/// closed-form engine and extracts its phase relative to free flight.
pub fn psg_compose(g: &PsgGeometry, psi: &WaveFunction, override_precondition: bool) -> Result<PsgPacket> {
    let width = Moments::of(psi).width();
    let ratio = g.length / width;
    if ratio < MIN_LENGTH_TO_WIDTH {
        if override_precondition {
            log::warn!("psg_compose: L/width = {ratio:.3} below {MIN_LENGTH_TO_WIDTH} (overridden)");
        } else {
            return Err(Error::Precondition(format!(
                "PSG length {} is only {ratio:.3} packet widths; need >= {MIN_LENGTH_TO_WIDTH}",
                g.length
            )));
        }
    }
    let (net_kick, net_displacement) = check_cancellation(g)?;
    let mut state = psi.clone();
    let mut ledgers = Vec::with_capacity(3);
    for (v, tau) in g.segments() {
        let r = linear_evolve(&state, v, tau, Ordering::Left)?;
        ledgers.push(r.ledger);
        state = r.psi;
    }
    let reference = free_evolve(psi, g.transit_time())?;
    let state = state.with_grid_window(*reference.grid())?;
    let relative_phase = reference.inner(&state)?.arg();
    let modulus_distance = {
        let dx = state.grid().dx();
        let sum = state
            .amplitudes()
            .iter()
            .zip(reference.amplitudes())
            .map(|(a, b)| (a.norm() - b.norm()).powi(2))
            .sum::<f64>();
        (sum * dx).sqrt()
    };
    Ok(PsgPacket {
        psi: state,
        reference,
        ledgers: [ledgers[0], ledgers[1], ledgers[2]],
        relative_phase,
        modulus_distance,
        net_kick,
        net_displacement,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsgUnknown {
    Slope,
    Length,
    Velocity,
}

/// Completes `known` so that `2V0²L³/(3ħmv³) = target`; the resulting
/// [`psg_phase`] is `−target`. The field named by `unknown` is ignored on input.
pub fn solve_psg_for_phase(target: f64, unknown: PsgUnknown, known: &PsgGeometry) -> Result<PsgGeometry> {
    if !(target >= 0.0 && target.is_finite()) {
        return Err(Error::Infeasible(format!(
            "phase magnitude {target} must be finite and >= 0 (the PSG phase is always <= 0)"
        )));
    }
    let u = known.units;
    let k = 3.0 * u.hbar * u.mass * target / 2.0;
    let mut g = *known;
    match unknown {
        PsgUnknown::Slope => {
            g.v0 = (k * g.velocity.powi(3) / g.length.powi(3)).sqrt();
        }
        PsgUnknown::Length => {
            if target == 0.0 || g.v0 == 0.0 {
                return Err(Error::Infeasible("length would be zero or unbounded".into()));
            }
            g.length = (k * g.velocity.powi(3) / (g.v0 * g.v0)).cbrt();
        }
        PsgUnknown::Velocity => {
            if target == 0.0 || g.v0 == 0.0 {
                return Err(Error::Infeasible("velocity would be zero or unbounded".into()));
            }
            g.velocity = (g.v0 * g.v0 * g.length.powi(3) / k).cbrt();
        }
    }
    PsgGeometry::new(g.length, g.v0, g.velocity, g.units)
        .map_err(|e| Error::Infeasible(format!("no positive real solution: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{sample_gaussian, GaussianSpec};
    use crate::grid::SpatialGrid;

    fn natural(v0: f64) -> PsgGeometry {
        PsgGeometry::new(1.0, v0, 1.0, UnitSystem::natural()).unwrap()
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(psg_phase(&natural(0.0)), 0.0);
        assert!((psg_phase(&natural(1.0)) + 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(psg_phase(&natural(2.0)), psg_phase(&natural(-2.0)));
    }

    #[test]
    fn kinematics_cancel() {
        let g = PsgGeometry::new(3.0, 1.7, 0.4, UnitSystem::natural_with_mass(2.0).unwrap()).unwrap();
        let (k, d) = compose_kinematics(&g.segments(), 2.0);
        assert!(k.abs() < 1e-12 && d.abs() < 1e-12);
        let (k1, d1) = compose_kinematics(&[(1.0, 1.0)], 1.0);
        assert_eq!((k1, d1), (-1.0, -0.5));
    }

    #[test]
    fn plane_wave_relative_phase() {
        for p in [0.0, 0.7, -3.0] {
            let r = psg_compose_plane_wave(&natural(1.0), p).unwrap();
            assert!((r.relative_phase + 2.0 / 3.0).abs() < 1e-12, "p={p}");
            assert!((r.p_out - p).abs() < 1e-15);
        }
    }

    #[test]
    fn packet_matches_free_up_to_phase() {
        let grid = SpatialGrid::new(-80.0, 80.0, 2048).unwrap();
        let u = UnitSystem::natural();
        let psi = sample_gaussian(&GaussianSpec::new(0.0, 0.3, 1.0).unwrap(), &grid, &u).unwrap();
        let g = PsgGeometry::new(20.0, 0.05, 10.0, u).unwrap();
        let r = psg_compose(&g, &psi, false).unwrap();
        assert!(r.modulus_distance < 1e-10);
        assert!((r.relative_phase - psg_phase(&g)).abs() < 1e-10);
        let short = PsgGeometry::new(5.0, 0.05, 10.0, u).unwrap();
        assert!(matches!(psg_compose(&short, &psi, false), Err(Error::Precondition(_))));
        assert!(psg_compose(&short, &psi, true).is_ok());
    }

    #[test]
    fn solve_inverts() {
        let g = solve_psg_for_phase(std::f64::consts::PI, PsgUnknown::Slope, &natural(0.0)).unwrap();
        assert!((g.v0 - (1.5 * std::f64::consts::PI).sqrt()).abs() < 1e-14);
        assert!((psg_phase(&g) + std::f64::consts::PI).abs() < 1e-14);
        assert_eq!(solve_psg_for_phase(0.0, PsgUnknown::Slope, &natural(3.0)).unwrap().v0, 0.0);
        assert!(matches!(
            solve_psg_for_phase(-1.0, PsgUnknown::Slope, &natural(1.0)),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            solve_psg_for_phase(1.0, PsgUnknown::Length, &natural(0.0)),
            Err(Error::Infeasible(_))
        ));
        for unknown in [PsgUnknown::Length, PsgUnknown::Velocity] {
            let g = solve_psg_for_phase(2.5, unknown, &natural(0.8)).unwrap();
            assert!((psg_phase(&g) / -2.5 - 1.0).abs() < 1e-12);
        }
    }
}
