//! A free Gaussian spreading, measured against the closed-form width.

use linprop::analytic::free_evolve;
use linprop::gaussian::{free_width, sample_gaussian, GaussianSpec};
use linprop::grid::SpatialGrid;
use linprop::observables::Moments;
use linprop::units::UnitSystem;

fn main() -> linprop::Result<()> {
    let units = UnitSystem::natural();
    let grid = SpatialGrid::new(-50.0, 50.0, 2048)?.with_momentum_center(1.0, units.hbar);
    let spec = GaussianSpec::new(-5.0, 1.0, 1.0)?;
    let psi = sample_gaussian(&spec, &grid, &units)?;
    println!("{:>5} {:>10} {:>10} {:>12} {:>12}", "t", "<x>", "<p>", "width", "closed form");
    for t in [0.0, 1.0, 2.0, 4.0, 8.0] {
        let m = Moments::of(&free_evolve(&psi, t)?);
        println!(
            "{t:>5} {:>10.6} {:>10.6} {:>12.9} {:>12.9}",
            m.mean_x,
            m.mean_p,
            m.width(),
            free_width(spec.sigma, t, &units)
        );
    }
    Ok(())
}
