//! The three-capacitor phase shift generator: closed-form phase against the
//! composed segments, the slope that realizes a π shift, and the quadratic
//! dependence on the slope.

use linprop::devices::{psg_compose, psg_compose_plane_wave, psg_phase, solve_psg_for_phase, PsgGeometry, PsgUnknown};
use linprop::gaussian::{sample_gaussian, GaussianSpec};
use linprop::grid::SpatialGrid;
use linprop::units::UnitSystem;

fn main() -> linprop::Result<()> {
    let units = UnitSystem::natural();
    let pi = solve_psg_for_phase(std::f64::consts::PI, PsgUnknown::Slope, &PsgGeometry::new(40.0, 0.0, 40.0, units)?)?;
    println!("slope for a pi shift with L = 40, v = 40: {:.12}", pi.v0);

    let plane = psg_compose_plane_wave(&pi, 0.7)?;
    println!("closed form {:.15}", psg_phase(&pi));
    println!("composed    {:.15}  (net kick {:.1e}, net shift {:.1e})", plane.relative_phase, plane.net_kick, plane.net_displacement);

    let grid = SpatialGrid::new(-80.0, 80.0, 2048)?;
    let psi = sample_gaussian(&GaussianSpec::new(0.0, 0.0, 1.0)?, &grid, &units)?;
    let packet = psg_compose(&pi, &psi, false)?;
    println!("packet      {:.15}  (|psi| distance {:.1e})", packet.relative_phase, packet.modulus_distance);

    println!("{:>6} {:>12}", "V0", "phase");
    for i in 0..=8 {
        let v0 = 0.5 * i as f64;
        println!("{v0:>6} {:>12.6}", psg_phase(&PsgGeometry::new(40.0, v0, 40.0, units)?));
    }
    Ok(())
}
