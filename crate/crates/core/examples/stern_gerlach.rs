//! A Stern–Gerlach splitter on an unpolarized electron (density route) and on
//! a spin-up packet (wave-function route).

use linprop::devices::{sg_apply, sg_apply_density, SgAxis, SgSpec, SpinDensity, SpinState, SpinorPacket};
use linprop::gaussian::{sample_gaussian, GaussianSpec};
use linprop::grid::SpatialGrid;
use linprop::observables::Moments;
use linprop::units::{UnitSystem, ELECTRON_MASS_SI};

fn main() -> linprop::Result<()> {
    let sg = SgSpec::electron_si(50.0, 1e-6, SgAxis::PlusX)?;
    let out = sg_apply_density(&SpinDensity::unpolarized(0.0), &sg, &UnitSystem::si(ELECTRON_MASS_SI)?)?;
    println!("unpolarized electron, B0 = 50 T/m for 1 us");
    println!("  populations {:?}", out.populations());
    println!("  branch momenta {:?} (delta p = {:.6e})", out.momenta, sg.delta_p());

    let units = UnitSystem::natural();
    let grid = SpatialGrid::new(-40.0, 40.0, 1024)?;
    let psi = sample_gaussian(&GaussianSpec::new(0.0, 0.0, 1.0)?, &grid, &units)?;
    let sg = SgSpec::new(2.0, 1.0, SgAxis::PlusX)?;
    let split = sg_apply(&SpinorPacket::product(&psi, &SpinState::z_up()), &sg)?.packet;
    for (label, branch) in [("S_x +", &split.plus), ("S_x -", &split.minus)] {
        let m = Moments::of(branch);
        println!("  {label}: probability {:.12}  <p> = {:+.12}  <x> = {:+.6}", m.norm_sqr, m.mean_p, m.mean_x);
    }
    Ok(())
}
