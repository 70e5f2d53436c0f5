//! Closed-form evolution under `H = p²/2m + V0·x`.
//!
//! The propagator factorizes exactly (the nested commutators terminate after
//! the third order) in two equivalent orderings:
//!
//! * [`Ordering::Left`]:
//!   `U = e^{-iV0²Δt³/(6mħ)} · e^{-iV0·xΔt/ħ} · e^{+iV0·pΔt²/(2mħ)} · U0(Δt)`
//! * [`Ordering::Right`]:
//!   `U = U0(Δt) · e^{+iV0²Δt³/(3mħ)} · e^{-iV0·xΔt/ħ} · e^{-iV0·pΔt²/(2mħ)}`
//!
//! In position space the left form reads
//! `Ψ(x,t) = e^{-iV0²Δt³/(6mħ)} e^{-iV0xΔt/ħ} Ψ0(x + V0Δt²/(2m), t)` where `Ψ0` is
//! the freely evolved state: the argument moves along the classical path of the
//! *opposite* force, which is what makes `⟨x⟩` follow the correct one.
//!
//! All argument shifts are spectral translations (phase ramps in the conjugate
//! domain). Every call returns a [`PhaseLedger`]; no phase is dropped.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::observables::Moments;
use crate::spectral::cis;
use crate::units::UnitSystem;
use crate::wavefunction::{MomentumWaveFunction, WaveFunction};

/// Coverage margin, in rms widths, demanded around predicted supports.
pub const COVERAGE_RMS: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    /// Potential factors to the left of `U0`.
    Left,
    /// `U0` to the left of the potential factors.
    Right,
}

/// Every phase and shift produced by one linear-potential evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseLedger {
    pub ordering: Ordering,
    pub v0: f64,
    pub dt: f64,
    /// Global phase: `-V0²Δt³/(6mħ)` (left) or `+V0²Δt³/(3mħ)` (right).
    pub cubic_phase: f64,
    /// Coefficient of `x` in the position-dependent phase, `-V0Δt/ħ`.
    pub potential_phase_coeff: f64,
    /// Coefficient of `p` in the translation phase: `+V0Δt²/(2mħ)` (left) or
    /// `-V0Δt²/(2mħ)` (right).
    pub momentum_shift_phase_coeff: f64,
    /// `V0Δt²/(2m)`; the left form evaluates `Ψ0` at `x + argument_shift`.
    pub argument_shift: f64,
    /// `V0Δt`; the mean momentum decreases by this amount.
    pub momentum_kick: f64,
}

impl PhaseLedger {
    pub fn new(v0: f64, dt: f64, units: &UnitSystem, ordering: Ordering) -> Self {
        let (m, hbar) = (units.mass, units.hbar);
        let (cubic_phase, momentum_shift_phase_coeff) = match ordering {
            Ordering::Left => (
                -v0 * v0 * dt.powi(3) / (6.0 * m * hbar),
                v0 * dt * dt / (2.0 * m * hbar),
            ),
            Ordering::Right => (
                v0 * v0 * dt.powi(3) / (3.0 * m * hbar),
                -v0 * dt * dt / (2.0 * m * hbar),
            ),
        };
        Self {
            ordering,
            v0,
            dt,
            cubic_phase,
            potential_phase_coeff: -v0 * dt / hbar,
            momentum_shift_phase_coeff,
            argument_shift: v0 * dt * dt / (2.0 * m),
            momentum_kick: v0 * dt,
        }
    }

    /// Change of `⟨x⟩` relative to free drift: `-V0Δt²/(2m)`.
    pub fn classical_displacement(&self) -> f64 {
        -self.argument_shift
    }
}

#[derive(Debug, Clone)]
pub struct EvolutionResult {
    pub psi: WaveFunction,
    pub ledger: PhaseLedger,
}

#[derive(Debug, Clone)]
pub struct MomentumEvolutionResult {
    pub phi: MomentumWaveFunction,
    pub ledger: PhaseLedger,
}

/// Multiplies the momentum representation by `e^{-ip²Δt/(2mħ)}`.
///
/// Negative `dt` is inverse evolution. Logs a warning if the result touches the
/// grid boundary.
pub fn free_evolve(psi: &WaveFunction, dt: f64) -> Result<WaveFunction> {
    check_finite("dt", dt)?;
    let mut out = psi.clone();
    if dt != 0.0 {
        let UnitSystem { hbar, mass, .. } = *psi.units();
        let c = -hbar * dt / (2.0 * mass);
        out.apply_spectral(|k| cis(c * k * k));
    }
    out.time = psi.time + dt;
    out.warn_if_boundary_contaminated("free_evolve");
    Ok(out)
}

/// Exact evolution under `V(x) = v0·x` for `dt` using either ordering of the
/// factorized propagator.
pub fn linear_evolve(
    psi: &WaveFunction,
    v0: f64,
    dt: f64,
    ordering: Ordering,
) -> Result<EvolutionResult> {
    check_finite("v0", v0)?;
    check_finite("dt", dt)?;
    let units = *psi.units();
    let ledger = PhaseLedger::new(v0, dt, &units, ordering);
    check_linear_coverage(psi, &ledger)?;

    let (hbar, mass) = (units.hbar, units.mass);
    let kin = -hbar * dt / (2.0 * mass);
    let mut out = psi.clone();
    match ordering {
        Ordering::Left => {
            // U0 and the translation e^{ip·a/ħ}: ψ(x) -> ψ(x + a), one transform pair
            let a = ledger.argument_shift;
            out.apply_spectral(|k| cis(kin * k * k + k * a));
            out = out.boosted(ledger.potential_phase_coeff);
            let g = cis(ledger.cubic_phase);
            out.amps.iter_mut().for_each(|z| *z *= g);
        }
        Ordering::Right => {
            let a = ledger.argument_shift;
            out.apply_spectral(|k| cis(-k * a));
            out = out.boosted(ledger.potential_phase_coeff);
            let g = cis(ledger.cubic_phase);
            out.apply_spectral(|k| g * cis(kin * k * k));
        }
    }
    out.time = psi.time + dt;
    out.warn_if_boundary_contaminated("linear_evolve");
    Ok(EvolutionResult { psi: out, ledger })
}

/// Momentum-representation form:
/// `Ψ̃(p,t) = e^{+iV0²Δt³/(3mħ)} e^{+iV0pΔt²/(2mħ)} Ψ̃0(p + V0Δt, t)`.
///
/// The argument shift `p -> p + V0Δt` is a phase ramp `e^{-iV0Δt·x/ħ}` in the
/// conjugate (position) domain; the output window follows the kicked momentum.
pub fn linear_evolve_momentum(
    phi: &MomentumWaveFunction,
    v0: f64,
    dt: f64,
) -> Result<MomentumEvolutionResult> {
    check_finite("v0", v0)?;
    check_finite("dt", dt)?;
    let units = *phi.units();
    let ledger = PhaseLedger::new(v0, dt, &units, Ordering::Right);
    let (hbar, mass) = (units.hbar, units.mass);

    check_linear_coverage(&phi.to_position_rep(), &ledger)?;
    let mut free = phi.clone();
    free.apply(|p| cis(-p * p * dt / (2.0 * mass * hbar)));
    let shifted = free.to_position_rep().boosted(ledger.potential_phase_coeff);
    let mut out = shifted.to_momentum_rep();
    let lin = -ledger.momentum_shift_phase_coeff;
    let g = cis(ledger.cubic_phase);
    out.apply(|p| g * cis(lin * p));
    out.time = phi.time + dt;
    Ok(MomentumEvolutionResult { phi: out, ledger })
}

/// Phase acquired by a momentum eigenstate `|p⟩` in one linear segment,
/// decomposed along the right-ordered propagator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWavePhase {
    pub p_in: f64,
    /// `p_in - V0Δt`
    pub p_out: f64,
    /// `+V0²Δt³/(3mħ)`
    pub cubic: f64,
    /// `-V0·p_in·Δt²/(2mħ)`
    pub momentum_linear: f64,
    /// `-p_out²Δt/(2mħ)`, the free phase of the kicked momentum.
    pub kinetic: f64,
}

impl PlaneWavePhase {
    pub fn total(&self) -> f64 {
        self.cubic + self.momentum_linear + self.kinetic
    }

    pub fn factor(&self) -> Complex64 {
        cis(self.total())
    }
}

/// Exact phase picked up by `|p⟩` evolving for `dt` under `V0·x`.
///
/// Written in terms of the output momentum the same total reads
/// `V0²Δt³/(3mħ) + V0·p_out·Δt²/(2mħ) - p_in²Δt/(2mħ)`, the momentum-space form.
pub fn plane_wave_phase(p: f64, v0: f64, dt: f64, units: &UnitSystem) -> PlaneWavePhase {
    let (m, hbar) = (units.mass, units.hbar);
    let p_out = p - v0 * dt;
    PlaneWavePhase {
        p_in: p,
        p_out,
        cubic: v0 * v0 * dt.powi(3) / (3.0 * m * hbar),
        momentum_linear: -v0 * p * dt * dt / (2.0 * m * hbar),
        kinetic: -p_out * p_out * dt / (2.0 * m * hbar),
    }
}

/// Scalar content of the exponents beyond the first two factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZassenhausTerms {
    /// `C2 = i · c2_coeff · p̂`
    pub c2_coeff: f64,
    /// `C3 = i · c3_coeff`
    pub c3_coeff: f64,
    /// Whether `C4` evaluates to the zero operator.
    pub c4_is_zero: bool,
}

/// Computes `C2`, `C3`, `C4` symbolically for `A = -iV0xΔt/ħ` (potential) and
/// `B = -ip²Δt/(2mħ)` (kinetic), with the roles swapped for the right ordering.
pub fn zassenhaus_terms(
    v0: f64,
    dt: f64,
    units: &UnitSystem,
    ordering: Ordering,
) -> ZassenhausTerms {
    let hbar = units.hbar;
    let i = Complex64::i();
    let pot = Op {
        x: -i * v0 * dt / hbar,
        ..Op::ZERO
    };
    let kin = Op {
        p2: -i * dt / (2.0 * units.mass * hbar),
        ..Op::ZERO
    };
    let (a, b) = match ordering {
        Ordering::Left => (pot, kin),
        Ordering::Right => (kin, pot),
    };
    let ba = b.comm(&a, hbar);
    let c2 = ba.scale(0.5);
    let c3 = ba.comm(&b, hbar).scale(1.0 / 3.0) + ba.comm(&a, hbar).scale(1.0 / 6.0);
    let c4 = (ba.comm(&b, hbar).comm(&b, hbar) + ba.comm(&a, hbar).comm(&b, hbar)).scale(0.125)
        + ba.comm(&a, hbar).comm(&a, hbar).scale(1.0 / 24.0);
    debug_assert!(c2.p2 == Complex64::new(0.0, 0.0) && c2.x == Complex64::new(0.0, 0.0));
    ZassenhausTerms {
        c2_coeff: (c2.p / i).re,
        c3_coeff: (c3.one / i).re,
        c4_is_zero: c4.is_zero(),
    }
}

/// Element `p2·p̂² + x·x̂ + p·p̂ + one·1` of the Lie algebra closed under
/// `[p̂², x̂] = -2iħp̂`, `[p̂, x̂] = -iħ`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Op {
    p2: Complex64,
    x: Complex64,
    p: Complex64,
    one: Complex64,
}

impl Op {
    const ZERO: Op = Op {
        p2: Complex64::new(0.0, 0.0),
        x: Complex64::new(0.0, 0.0),
        p: Complex64::new(0.0, 0.0),
        one: Complex64::new(0.0, 0.0),
    };

    fn comm(&self, o: &Op, hbar: f64) -> Op {
        let i = Complex64::i();
        Op {
            p: (self.p2 * o.x - self.x * o.p2) * (-2.0 * i * hbar),
            one: (self.p * o.x - self.x * o.p) * (-i * hbar),
            ..Op::ZERO
        }
    }

    fn scale(&self, s: f64) -> Op {
        Op {
            p2: self.p2 * s,
            x: self.x * s,
            p: self.p * s,
            one: self.one * s,
        }
    }

    fn is_zero(&self) -> bool {
        [self.p2, self.x, self.p, self.one]
            .iter()
            .all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

impl std::ops::Add for Op {
    type Output = Op;
    fn add(self, o: Op) -> Op {
        Op {
            p2: self.p2 + o.p2,
            x: self.x + o.x,
            p: self.p + o.p,
            one: self.one + o.one,
        }
    }
}

fn check_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite, got {v}")))
    }
}

/// Rejects evolutions whose predicted support leaves the grid.
fn check_linear_coverage(psi: &WaveFunction, ledger: &PhaseLedger) -> Result<()> {
    let mo = Moments::of(psi);
    let mass = psi.units().mass;
    let grid = psi.grid();

    let (klo, khi) = grid.wavenumber_window();
    let hbar = psi.units().hbar;
    let k_mean = mo.mean_p / hbar;
    let k_rms = mo.rms_p / hbar;
    let (nlo, nhi) = (k_mean - COVERAGE_RMS * k_rms, k_mean + COVERAGE_RMS * k_rms);
    if nlo < klo || nhi > khi {
        return Err(Error::Coverage {
            what: "wavenumber support before the kick",
            need_lo: nlo,
            need_hi: nhi,
            have_lo: klo,
            have_hi: khi,
            deficit: (klo - nlo).max(nhi - khi),
        });
    }

    let dt = ledger.dt;
    let mean = mo.mean_x + mo.mean_p * dt / mass - ledger.argument_shift;
    let rms = mo.free_rms_after(dt, mass);
    let (lo, hi) = (mean - COVERAGE_RMS * rms, mean + COVERAGE_RMS * rms);
    if lo < grid.x_min() || hi > grid.x_max() {
        return Err(Error::Coverage {
            what: "evolved position support (mean ± 6 rms)",
            need_lo: lo,
            need_hi: hi,
            have_lo: grid.x_min(),
            have_hi: grid.x_max(),
            deficit: (grid.x_min() - lo).max(hi - grid.x_max()),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{sample_gaussian, GaussianSpec};
    use crate::grid::SpatialGrid;

    fn packet(x0: f64, p0: f64, sigma: f64) -> WaveFunction {
        let grid = SpatialGrid::new(-40.0, 40.0, 2048).unwrap();
        sample_gaussian(&GaussianSpec::new(x0, p0, sigma).unwrap(), &grid, &UnitSystem::natural())
            .unwrap()
    }

    #[test]
    fn zassenhaus_unit_values() {
        let u = UnitSystem::natural();
        let t = zassenhaus_terms(1.0, 1.0, &u, Ordering::Left);
        assert!((t.c2_coeff - 0.5).abs() < 1e-15);
        assert!((t.c3_coeff + 1.0 / 6.0).abs() < 1e-15);
        assert!(t.c4_is_zero);
        let r = zassenhaus_terms(1.0, 1.0, &u, Ordering::Right);
        assert!((r.c2_coeff + 0.5).abs() < 1e-15);
        assert!((r.c3_coeff - 1.0 / 3.0).abs() < 1e-15);
        assert!(r.c4_is_zero);
    }

    #[test]
    fn zassenhaus_zero_and_scaling() {
        let u = UnitSystem::natural();
        let z = zassenhaus_terms(0.0, 1.3, &u, Ordering::Left);
        assert_eq!(z.c2_coeff, 0.0);
        assert_eq!(z.c3_coeff, 0.0);
        let a = zassenhaus_terms(0.7, 0.9, &u, Ordering::Left);
        let b = zassenhaus_terms(0.7, 1.8, &u, Ordering::Left);
        assert!((b.c2_coeff / a.c2_coeff - 4.0).abs() < 1e-14);
        assert!((b.c3_coeff / a.c3_coeff - 8.0).abs() < 1e-14);
    }

    #[test]
    fn ledger_matches_terms() {
        let u = UnitSystem::natural_with_mass(2.0).unwrap();
        for ordering in [Ordering::Left, Ordering::Right] {
            let l = PhaseLedger::new(1.3, 0.7, &u, ordering);
            let z = zassenhaus_terms(1.3, 0.7, &u, ordering);
            assert!((l.cubic_phase - z.c3_coeff).abs() < 1e-15);
            assert!((l.momentum_shift_phase_coeff - z.c2_coeff).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_dt_is_identity() {
        let psi = packet(1.0, 2.0, 1.0);
        let out = free_evolve(&psi, 0.0).unwrap();
        assert_eq!(out.amplitudes(), psi.amplitudes());
        let lin = linear_evolve(&psi, 0.0, 0.0, Ordering::Left).unwrap();
        assert!(lin.psi.l2_distance(&psi).unwrap() < 1e-15);
    }

    #[test]
    fn zero_potential_equals_free() {
        let psi = packet(-1.0, 1.5, 1.2);
        let free = free_evolve(&psi, 1.7).unwrap();
        for ordering in [Ordering::Left, Ordering::Right] {
            let lin = linear_evolve(&psi, 0.0, 1.7, ordering).unwrap();
            assert!(lin.psi.l2_distance(&free).unwrap() < 1e-14);
            assert_eq!(lin.ledger.cubic_phase, 0.0);
            assert_eq!(lin.ledger.argument_shift, 0.0);
            assert_eq!(lin.ledger.momentum_kick, 0.0);
        }
    }

    #[test]
    fn ehrenfest_means() {
        let psi = packet(1.0, 2.0, 1.0);
        let (v0, dt) = (1.5, 1.2);
        let out = linear_evolve(&psi, v0, dt, Ordering::Left).unwrap().psi;
        let m = Moments::of(&out);
        assert!((m.mean_x - (1.0 + 2.0 * dt - v0 * dt * dt / 2.0)).abs() < 1e-10);
        assert!((m.mean_p - (2.0 - v0 * dt)).abs() < 1e-10);
        assert!((out.time() - dt).abs() < 1e-15);
    }

    #[test]
    fn inverse_evolution_returns() {
        let psi = packet(0.5, -1.0, 1.0);
        let fwd = linear_evolve(&psi, 0.8, 1.1, Ordering::Left).unwrap().psi;
        let back = linear_evolve(&fwd, 0.8, -1.1, Ordering::Right).unwrap().psi;
        assert!(back.l2_distance(&psi).unwrap() < 1e-12);
    }

    #[test]
    fn coverage_error_names_margin() {
        let psi = packet(30.0, 5.0, 1.0);
        match linear_evolve(&psi, 0.0, 3.0, Ordering::Left) {
            Err(Error::Coverage { deficit, .. }) => assert!(deficit > 0.0),
            other => panic!("expected coverage error, got {other:?}"),
        }
    }

    #[test]
    fn plane_wave_parts() {
        let u = UnitSystem::natural();
        let free = plane_wave_phase(2.0, 0.0, 1.5, &u);
        assert_eq!(free.cubic, 0.0);
        assert_eq!(free.momentum_linear, 0.0);
        assert!((free.total() + 4.0 * 1.5 / 2.0).abs() < 1e-15);
        let still = plane_wave_phase(0.0, 1.0, 1.0, &u);
        assert!((still.cubic - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(still.p_out, -1.0);
        // output-momentum form of the same total
        let w = plane_wave_phase(0.4, 1.3, 0.9, &u);
        let alt = 1.3f64.powi(2) * 0.9f64.powi(3) / 3.0 + 1.3 * w.p_out * 0.81 / 2.0
            - 0.4 * 0.4 * 0.9 / 2.0;
        assert!((w.total() - alt).abs() < 1e-14);
    }
}
