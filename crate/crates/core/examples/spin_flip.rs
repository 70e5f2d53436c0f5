//! The electric spin gate: splitter, phase shift generator on one branch,
//! opposite splitter. Sweeps the phase and shows the control without the PSG.

use std::f64::consts::PI;

use linprop::devices::{solve_psg_for_phase, PsgGeometry, PsgUnknown, SgAxis, SgSpec, SpinFlipCircuit, SpinState, SpinorPacket};
use linprop::gaussian::{sample_gaussian, GaussianSpec};
use linprop::grid::SpatialGrid;
use linprop::units::UnitSystem;

fn main() -> linprop::Result<()> {
    let units = UnitSystem::natural();
    let grid = SpatialGrid::new(-64.0, 64.0, 1024)?;
    let psi = sample_gaussian(&GaussianSpec::new(0.0, 0.0, 1.0)?, &grid, &units)?;
    let input = SpinorPacket::product(&psi, &SpinState::z_up());
    let up = SgSpec::new(2.0, 1.0, SgAxis::PlusX)?;
    let down = SgSpec::new(2.0, 1.0, SgAxis::MinusX)?;
    let unit = PsgGeometry::new(40.0, 0.0, 40.0, units)?;

    println!("{:>8} {:>10} {:>10} {:>10}", "phase", "fidelity", "p(up)", "p(down)");
    for k in 0..=8 {
        let phi = PI * k as f64 / 8.0;
        let c = SpinFlipCircuit::new(up, solve_psg_for_phase(phi, PsgUnknown::Slope, &unit)?, down);
        let r = c.run(&input, false)?;
        let [a, b] = r.spin.populations();
        println!("{:>8.4} {:>10.6} {:>10.6} {:>10.6}", r.phase, r.flip_fidelity, a, b);
    }
    let control = SpinFlipCircuit::new(up, solve_psg_for_phase(PI, PsgUnknown::Slope, &unit)?, down).without_psg();
    let r = control.run(&input, false)?;
    println!("PSG removed: fidelity {:.3e}, recombiner shifts {:?}", r.flip_fidelity, r.recombiner_shift);
    Ok(())
}
