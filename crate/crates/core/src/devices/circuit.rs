//! SG(+x) → PSG on the `S_x,−` branch → SG(−x): a spin gate
//! `|+⟩ + |−⟩ → |+⟩ + e^{iφ}|−⟩` in the x basis with `φ` the PSG phase.
//!
//! The two branches leave the second splitter with zero net kick but
//! displaced in opposite directions. The recombiner is idealized: each branch
//! is translated back by the displacement its composed ledger predicts.

use crate::analytic::{free_evolve, linear_evolve, Ordering};
use crate::devices::psg::{compose_kinematics, psg_compose, psg_phase, PsgGeometry};
use crate::devices::sg::{sg_apply, SgSpec};
use crate::devices::spin::{SpinBasis, SpinDensity, SpinorPacket};
use crate::error::{Error, Result};
use crate::wavefunction::WaveFunction;

/// Relative mismatch tolerated between the two splitters.
pub const BRANCH_MATCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinFlipCircuit {
    pub sg_up: SgSpec,
    pub psg: PsgGeometry,
    /// With the PSG removed both branches fly freely for `4Δt`.
    pub psg_installed: bool,
    pub sg_down: SgSpec,
}

#[derive(Debug, Clone)]
pub struct SpinFlipResult {
    /// Recombined output in the z basis.
    pub output: SpinorPacket,
    pub spin: SpinDensity,
    /// Phase imprinted on the `S_x,−` branch (0 with the PSG removed).
    pub phase: f64,
    /// `Tr(ρ_out · σ_x ρ_in σ_x)`
    pub flip_fidelity: f64,
    /// Displacement undone by the recombiner on each branch.
    pub recombiner_shift: [f64; 2],
}

impl SpinFlipCircuit {
    pub fn new(sg_up: SgSpec, psg: PsgGeometry, sg_down: SgSpec) -> Self {
        Self {
            sg_up,
            psg,
            psg_installed: true,
            sg_down,
        }
    }

    pub fn without_psg(mut self) -> Self {
        self.psg_installed = false;
        self
    }

    pub fn phase(&self) -> f64 {
        if self.psg_installed {
            psg_phase(&self.psg)
        } else {
            0.0
        }
    }

    fn check_branches(&self) -> Result<()> {
        let (up, down) = (&self.sg_up, &self.sg_down);
        if down.axis != up.axis.opposite() {
            return Err(Error::BranchMismatch("second splitter must face the opposite axis".into()));
        }
        let scale = up.delta_p().abs().max(f64::MIN_POSITIVE);
        if (down.delta_p() - up.delta_p()).abs() > BRANCH_MATCH_TOL * scale
            || (down.duration - up.duration).abs() > BRANCH_MATCH_TOL * up.duration.max(f64::MIN_POSITIVE)
        {
            return Err(Error::BranchMismatch(format!(
                "splitters differ: Δp {} vs {}, Δt {} vs {}",
                up.delta_p(),
                down.delta_p(),
                up.duration,
                down.duration
            )));
        }
        Ok(())
    }

    /// `(slope, duration)` history of the `σ_x = +1` (0) and `−1` (1) branches.
    pub fn branch_segments(&self) -> [Vec<(f64, f64)>; 2] {
        let up = self.sg_up.branch_slopes();
        let down = self.sg_down.branch_slopes();
        let gap = self.psg.transit_time();
        [0, 1].map(|i| {
            let mut segs = vec![(up[i], self.sg_up.duration)];
            if i == 1 && self.psg_installed {
                segs.extend(self.psg.segments());
            } else {
                segs.push((0.0, gap));
            }
            segs.push((down[i], self.sg_down.duration));
            segs
        })
    }

    pub fn run(&self, input: &SpinorPacket, override_precondition: bool) -> Result<SpinFlipResult> {
        self.check_branches()?;
        let mass = input.plus.units().mass;
        let split = sg_apply(input, &self.sg_up)?.packet;
        let plus = free_evolve(&split.plus, self.psg.transit_time())?;
        let minus = if self.psg_installed {
            psg_compose(&self.psg, &split.minus, override_precondition)?.psi
        } else {
            free_evolve(&split.minus, self.psg.transit_time())?
        };
        let rejoined = sg_apply(
            &SpinorPacket {
                basis: SpinBasis::X,
                plus,
                minus,
            },
            &self.sg_down,
        )?
        .packet;

        let segments = self.branch_segments();
        let mut shifts = [0.0; 2];
        for (i, segs) in segments.iter().enumerate() {
            let (kick, shift) = compose_kinematics(segs, mass);
            if kick.abs() > BRANCH_MATCH_TOL * self.sg_up.delta_p().abs().max(f64::MIN_POSITIVE) {
                return Err(Error::BranchMismatch(format!("branch {i} keeps a net kick {kick:.3e}")));
            }
            shifts[i] = shift;
        }
        let recombine = |psi: &WaveFunction, shift: f64| psi.translated(shift);
        let x = SpinorPacket {
            basis: SpinBasis::X,
            plus: recombine(&rejoined.plus, shifts[0]),
            minus: recombine(&rejoined.minus, shifts[1]),
        };
        let output = x.in_basis(SpinBasis::Z)?;
        let spin = output.reduced_density()?;
        let target = input.reduced_density()?.flipped()?;
        let flip_fidelity = spin.overlap(&target)?;
        Ok(SpinFlipResult {
            output,
            spin,
            phase: self.phase(),
            flip_fidelity,
            recombiner_shift: shifts,
        })
    }
}

/// The gate acting on a bare spin state, for comparison with [`SpinFlipCircuit::run`].
pub fn ideal_gate(spin: &crate::devices::spin::SpinState, phase: f64) -> crate::devices::spin::SpinState {
    let mut x = spin.in_basis(SpinBasis::X);
    x.amps[1] *= num_complex::Complex64::from_polar(1.0, phase);
    x.in_basis(spin.basis)
}

/// Exact evolution of a single branch through its segment history, with no
/// recombiner; exposes the displacement the recombiner removes.
pub fn evolve_branch(psi: &WaveFunction, segments: &[(f64, f64)]) -> Result<WaveFunction> {
    let mut state = psi.clone();
    for &(v, tau) in segments {
        state = linear_evolve(&state, v, tau, Ordering::Left)?.psi;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devices::psg::{solve_psg_for_phase, PsgUnknown};
    use crate::devices::sg::SgAxis;
    use crate::devices::spin::SpinState;
    use crate::gaussian::{sample_gaussian, GaussianSpec};
    use crate::grid::SpatialGrid;
    use crate::units::UnitSystem;
    use std::f64::consts::PI;

    fn setup(target: f64) -> (SpinFlipCircuit, WaveFunction) {
        let u = UnitSystem::natural();
        let grid = SpatialGrid::new(-64.0, 64.0, 1024).unwrap();
        let psi = sample_gaussian(&GaussianSpec::new(0.0, 0.0, 1.0).unwrap(), &grid, &u).unwrap();
        let known = PsgGeometry::new(40.0, 0.0, 40.0, u).unwrap();
        let psg = solve_psg_for_phase(target, PsgUnknown::Slope, &known).unwrap();
        let up = SgSpec::new(2.0, 1.0, SgAxis::PlusX).unwrap();
        let down = SgSpec::new(2.0, 1.0, SgAxis::MinusX).unwrap();
        (SpinFlipCircuit::new(up, psg, down), psi)
    }

    #[test]
    fn pi_flips_z_up() {
        let (c, psi) = setup(PI);
        let r = c.run(&SpinorPacket::product(&psi, &SpinState::z_up()), false).unwrap();
        assert!((r.flip_fidelity - 1.0).abs() < 1e-9, "{}", r.flip_fidelity);
        assert!((r.output.norm_sqr() - 1.0).abs() < 1e-12);
        assert!((r.phase + PI).abs() < 1e-12);
        assert!(r.recombiner_shift[0] * r.recombiner_shift[1] < 0.0);
    }

    #[test]
    fn removed_psg_leaves_spin() {
        let (c, psi) = setup(PI);
        let r = c.without_psg().run(&SpinorPacket::product(&psi, &SpinState::z_up()), false).unwrap();
        assert!(r.flip_fidelity.abs() < 1e-9, "{}", r.flip_fidelity);
        assert!((r.spin.fidelity_with(&SpinState::z_up()) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn half_pi_balances_z() {
        let (c, psi) = setup(PI / 2.0);
        let r = c.run(&SpinorPacket::product(&psi, &SpinState::z_up()), false).unwrap();
        let [a, b] = r.spin.populations();
        assert!((a - 0.5).abs() < 1e-9 && (b - 0.5).abs() < 1e-9);
        let expect = ideal_gate(&SpinState::z_up(), -PI / 2.0);
        assert!((r.spin.fidelity_with(&expect) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mismatched_splitters_rejected() {
        let (mut c, psi) = setup(PI);
        let input = SpinorPacket::product(&psi, &SpinState::z_up());
        c.sg_down.axis = SgAxis::PlusX;
        assert!(matches!(c.run(&input, false), Err(Error::BranchMismatch(_))));
        c.sg_down = SgSpec::new(2.5, 1.0, SgAxis::MinusX).unwrap();
        assert!(matches!(c.run(&input, false), Err(Error::BranchMismatch(_))));
    }

    #[test]
    fn recombiner_shift_matches_unrecombined_branch() {
        let (c, psi) = setup(PI);
        let segs = c.branch_segments();
        let raw = evolve_branch(&psi, &segs[0]).unwrap();
        let (_, shift) = compose_kinematics(&segs[0], 1.0);
        let total: f64 = segs[0].iter().map(|s| s.1).sum();
        let free = free_evolve(&psi, total).unwrap();
        let back = raw.translated(shift).with_grid_window(*free.grid()).unwrap();
        let f = crate::observables::fidelity(&back, &free).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }
}
