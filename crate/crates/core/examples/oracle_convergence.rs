//! Strang split-step against the exact propagator: second-order convergence
//! on a linear potential and a Richardson study on a smooth bump.

use linprop::analytic::{linear_evolve, Ordering};
use linprop::gaussian::{sample_gaussian, GaussianSpec};
use linprop::grid::SpatialGrid;
use linprop::oracle::{convergence_study, Reference};
use linprop::potential::Potential;
use linprop::units::UnitSystem;

fn main() -> linprop::Result<()> {
    let units = UnitSystem::natural();
    let grid = SpatialGrid::new(-40.0, 40.0, 4096)?;
    let psi = sample_gaussian(&GaussianSpec::new(-1.0, 1.5, 1.0)?, &grid, &units)?;
    let (v0, duration) = (2.0, 0.5);
    let ladder = [1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4];

    let exact = linear_evolve(&psi, v0, duration, Ordering::Left)?.psi;
    let lin = convergence_study(&psi, &Potential::linear(v0), duration, &ladder, Reference::Exact(exact))?;
    println!("linear potential, exact reference: slope {:.4}", lin.slope);
    for (dt, err) in &lin.points {
        println!("  dt {dt:.3e}  L2 error {err:.3e}");
    }

    let bump = Potential::sampled(grid, grid.positions().iter().map(|x| 2.0 * (-x * x).exp()).collect())?;
    let rich = convergence_study(&psi, &bump, duration, &ladder, Reference::Richardson)?;
    println!("Gaussian bump, Richardson reference: slope {:.4}", rich.slope);
    for (dt, err) in &rich.points[..ladder.len() - 1] {
        println!("  dt {dt:.3e}  L2 error {err:.3e}");
    }
    Ok(())
}
