//! A packet in a linear potential: both propagator orderings, the phase
//! ledger, and classical kinematics of the means.

use linprop::analytic::{free_evolve, linear_evolve, Ordering};
use linprop::gaussian::{sample_gaussian, GaussianSpec};
use linprop::grid::SpatialGrid;
use linprop::observables::Moments;
use linprop::units::UnitSystem;

fn main() -> linprop::Result<()> {
    let units = UnitSystem::natural();
    let grid = SpatialGrid::new(-40.0, 40.0, 2048)?;
    let spec = GaussianSpec::new(0.0, 3.0, 1.0)?;
    let psi = sample_gaussian(&spec, &grid, &units)?;
    let (v0, dt) = (2.0, 1.5);

    let left = linear_evolve(&psi, v0, dt, Ordering::Left)?;
    let right = linear_evolve(&psi, v0, dt, Ordering::Right)?;
    println!("left vs right L2 distance: {:.3e}", left.psi.l2_distance(&right.psi)?);
    println!("left ledger:  {:?}", left.ledger);
    println!("right ledger: {:?}", right.ledger);

    let m = Moments::of(&left.psi);
    let x = spec.x0 + spec.p0 * dt - v0 * dt * dt / 2.0;
    let p = spec.p0 - v0 * dt;
    println!("<x> = {:.12} (classical {x})", m.mean_x);
    println!("<p> = {:.12} (classical {p})", m.mean_p);
    let free = Moments::of(&free_evolve(&psi, dt)?);
    println!("width {:.12}, free width {:.12}", m.width(), free.width());
    Ok(())
}
