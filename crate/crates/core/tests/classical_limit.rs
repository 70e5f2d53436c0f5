//! Before the turning point a packet on a long linear front evolves as in an
//! unbounded linear potential: the oracle on the barrier matches the closed
//! form up to the constant offset of the front.

use linprop::analytic::{linear_evolve, Ordering};
use linprop::gaussian::{free_width, sample_gaussian, GaussianSpec};
use linprop::grid::SpatialGrid;
use linprop::oracle::{split_step_evolve, SolverConfig};
use linprop::tunneling::{BarrierSpec, Descent};
use linprop::units::UnitSystem;

#[test]
fn front_matches_linear_evolution_until_turning() {
    let u = UnitSystem::natural();
    let (slope, p0) = (1.0, 10.0);
    let barrier = BarrierSpec::new(-60.0, slope, 200.0, Descent::Mirror).unwrap();
    let grid = SpatialGrid::new(-100.0, 300.0, 4096).unwrap().with_momentum_center(p0, u.hbar);
    let psi = sample_gaussian(&GaussianSpec::new(0.0, p0, 1.0).unwrap(), &grid, &u).unwrap();

    let t_a = p0 / slope;
    let energy = 0.5 * p0 * p0 + barrier.potential().eval(0.0);
    let d_prime = barrier.d_prime(energy).unwrap();
    assert!(d_prime > 10.0 * free_width(1.0, t_a, &u) / 2.0);

    let t_end = 0.9 * t_a;
    let traj = split_step_evolve(&psi, &barrier.potential(), &SolverConfig::for_duration(t_end, 1e-3).unwrap()).unwrap();
    let exact = linear_evolve(&psi, slope, t_end, Ordering::Left).unwrap().psi;
    // the front is V = slope·x + 60; the offset is a global phase
    let overlap = exact.inner(&traj.final_state).unwrap();
    let aligned = exact.scaled(overlap / overlap.norm());
    let d = traj.final_state.l2_distance(&aligned).unwrap();
    assert!(d < 1e-6, "L2 distance {d:.3e}");
}
