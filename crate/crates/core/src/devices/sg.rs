//! Stern–Gerlach splitter: `V = −c·x·σ_axis` with `c = (eħ/2m_e)·B0` for a
//! field gradient `B0`, acting for `Δt`. The `σ_axis = ±1` component feels the
//! scalar slope `∓s·c` (`s = ±1` for the `±x` axis) and is kicked by `±s·Δp`.

use num_complex::Complex64;

use crate::analytic::{linear_evolve, plane_wave_phase, Ordering, PhaseLedger};
use crate::devices::spin::{SpinBasis, SpinDensity, SpinorPacket};
use crate::error::{Error, Result};
use crate::units::{UnitSystem, ELECTRON_MASS_SI, ELEMENTARY_CHARGE_SI, HBAR_SI};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgAxis {
    PlusX,
    MinusX,
}

impl SgAxis {
    pub fn sign(self) -> f64 {
        match self {
            SgAxis::PlusX => 1.0,
            SgAxis::MinusX => -1.0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            SgAxis::PlusX => SgAxis::MinusX,
            SgAxis::MinusX => SgAxis::PlusX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgSpec {
    /// Slope of the spin-dependent potential (energy/length).
    pub coupling: f64,
    pub duration: f64,
    pub axis: SgAxis,
}

impl SgSpec {
    pub fn new(coupling: f64, duration: f64, axis: SgAxis) -> Result<Self> {
        if !coupling.is_finite() {
            return Err(Error::invalid("sg.coupling", "must be finite"));
        }
        if !(duration >= 0.0 && duration.is_finite()) {
            return Err(Error::invalid("sg.duration", format!("must be >= 0, got {duration}")));
        }
        Ok(Self {
            coupling,
            duration,
            axis,
        })
    }

    /// SI electron splitter: `c = eħB0/(2m_e)` with `B0` in T/m.
    pub fn electron_si(b0: f64, duration: f64, axis: SgAxis) -> Result<Self> {
        Self::new(ELEMENTARY_CHARGE_SI * HBAR_SI * b0 / (2.0 * ELECTRON_MASS_SI), duration, axis)
    }

    /// `Δp = c·Δt`
    pub fn delta_p(&self) -> f64 {
        self.coupling * self.duration
    }

    /// Scalar slope seen by the `σ_x = +1` (index 0) and `−1` (index 1) components.
    pub fn branch_slopes(&self) -> [f64; 2] {
        let s = self.axis.sign();
        [-s * self.coupling, s * self.coupling]
    }
}

#[derive(Debug, Clone)]
pub struct SgOutput {
    /// In the x basis.
    pub packet: SpinorPacket,
    pub ledgers: [PhaseLedger; 2],
}

/// Evolves each `σ_x` component under its own linear potential.
pub fn sg_apply(packet: &SpinorPacket, sg: &SgSpec) -> Result<SgOutput> {
    let x = packet.in_basis(SpinBasis::X)?;
    let [v_plus, v_minus] = sg.branch_slopes();
    let plus = linear_evolve(&x.plus, v_plus, sg.duration, Ordering::Left)?;
    let minus = linear_evolve(&x.minus, v_minus, sg.duration, Ordering::Left)?;
    Ok(SgOutput {
        packet: SpinorPacket {
            basis: SpinBasis::X,
            plus: plus.psi,
            minus: minus.psi,
        },
        ledgers: [plus.ledger, minus.ledger],
    })
}

/// Plane-wave density route: each `σ_x` component keeps its momentum label,
/// which moves by its kick, and coherences pick up the phase difference of
/// the two branches.
pub fn sg_apply_density(rho: &SpinDensity, sg: &SgSpec, units: &UnitSystem) -> Result<SpinDensity> {
    let momenta = rho
        .momenta
        .ok_or_else(|| Error::invalid("rho", "density route needs momentum labels"))?;
    let x = if rho.basis == SpinBasis::X {
        *rho
    } else {
        rho.in_basis(SpinBasis::X)?
    };
    let slopes = sg.branch_slopes();
    let phases = [0, 1].map(|i| plane_wave_phase(momenta[i], slopes[i], sg.duration, units));
    let mut matrix = x.matrix;
    for i in 0..2 {
        for j in 0..2 {
            matrix[(i, j)] *= Complex64::from_polar(1.0, phases[i].total() - phases[j].total());
        }
    }
    Ok(SpinDensity {
        basis: SpinBasis::X,
        matrix,
        momenta: Some([phases[0].p_out, phases[1].p_out]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devices::spin::SpinState;
    use crate::gaussian::{sample_gaussian, GaussianSpec};
    use crate::grid::SpatialGrid;
    use crate::observables::Moments;

    #[test]
    fn unpolarized_density_splits_evenly() {
        let sg = SgSpec::electron_si(50.0, 1e-6, SgAxis::PlusX).unwrap();
        let units = UnitSystem::si(ELECTRON_MASS_SI).unwrap();
        let out = sg_apply_density(&SpinDensity::unpolarized(0.0), &sg, &units).unwrap();
        assert_eq!(out.populations(), [0.5, 0.5]);
        let [pp, pm] = out.momenta.unwrap();
        assert!((pp / sg.delta_p() - 1.0).abs() < 1e-15);
        assert!((pm / sg.delta_p() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn eigenstate_is_not_split() {
        let grid = SpatialGrid::new(-40.0, 40.0, 1024).unwrap();
        let u = UnitSystem::natural();
        let psi = sample_gaussian(&GaussianSpec::new(0.0, 0.0, 1.0).unwrap(), &grid, &u).unwrap();
        let packet = SpinorPacket::product(&psi, &SpinState::x_plus());
        let sg = SgSpec::new(1.5, 2.0, SgAxis::PlusX).unwrap();
        let out = sg_apply(&packet, &sg).unwrap().packet;
        assert!(out.minus.norm_sqr() < 1e-30);
        let m = Moments::of(&out.plus);
        assert!((m.mean_p - 3.0).abs() < 1e-10);
        let free = sg_apply(&packet, &SgSpec::new(0.0, 2.0, SgAxis::PlusX).unwrap()).unwrap().packet;
        let reference = crate::analytic::free_evolve(&psi, 2.0).unwrap();
        assert!(free.plus.l2_distance(&reference).unwrap() < 1e-12);
    }

    #[test]
    fn minus_axis_reverses_kicks() {
        let sg = SgSpec::new(2.0, 1.0, SgAxis::MinusX).unwrap();
        assert_eq!(sg.branch_slopes(), [2.0, -2.0]);
        assert_eq!(SgAxis::MinusX.opposite(), SgAxis::PlusX);
    }
}
