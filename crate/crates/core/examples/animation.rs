//! The SI scenario: a packet launched at 1 m/s that a linear potential stops
//! after 0.3 m, with the mass chosen for 10% width growth at the turn.

use linprop::tunneling::{animation_scenario, AnimationScenario};

fn main() -> linprop::Result<()> {
    let s = AnimationScenario::default();
    let r = animation_scenario(&s, 1024, 41)?;
    println!("mass {:.4e} kg, V0 {:.4e} N, p0 {:.4e} kg m/s", r.mass, r.v0, r.p0);
    println!(
        "turning time predicted {:.6} s, measured {:.6} s, at x = {:.6} m",
        r.t_a_predicted, r.t_a_measured, r.turning_position
    );
    println!("width at the turn {:.6e} m, growth {:.6}", r.sigma_at_turning, r.growth);
    println!("{:>8} {:>12} {:>12}", "t [s]", "<x> [m]", "width [m]");
    for (t, x, w) in r.samples.iter().step_by(4) {
        println!("{t:>8.3} {x:>12.6} {w:>12.6e}");
    }
    Ok(())
}
