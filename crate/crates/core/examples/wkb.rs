//! WKB penetration integrals on triangular barriers, quadrature against the
//! closed form, and the transmission estimate down to the peak.

use linprop::tunneling::{transmission_from_sigma, triangle_sigma_r, wkb_sigma_r, BarrierSpec, Descent};
use linprop::units::UnitSystem;

fn main() -> linprop::Result<()> {
    let units = UnitSystem::natural();
    let barrier = BarrierSpec::new(0.0, 5.0, 15.0, Descent::Linear { length: 6.0 })?;
    let v = barrier.potential();
    println!("{:>8} {:>14} {:>14} {:>12}", "E", "sigma_R quad", "closed form", "T");
    for f in [0.2, 0.5, 0.8, 0.95, 0.999, 1.0] {
        let e = f * barrier.peak;
        let quad = wkb_sigma_r(&v, e, &units)?;
        let closed = triangle_sigma_r(barrier.peak - e, barrier.slope, barrier.peak / 6.0, &units);
        println!("{e:>8.3} {quad:>14.10} {closed:>14.10} {:>12.6e}", transmission_from_sigma(quad));
    }
    Ok(())
}
