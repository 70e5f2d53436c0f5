//! Transmission through a barrier with a long linear front, the same packet
//! over a low barrier, and a delay-generated width scan on a thin barrier.

use linprop::tunneling::{ScanAxis, TunnelingSetup};

fn main() -> linprop::Result<()> {
    let front = TunnelingSetup::linear_front();
    let e = front.energy();
    let r = front.run()?;
    println!("linear front: E = {e}, D' = {}", front.barrier.d_prime(e)?);
    println!(
        "  T = {:.3e}  R = {:.9}  residual = {:.1e}  t_a measured {:.4} predicted {:.4}  sigma(t_a) = {:.4}",
        r.transmitted,
        r.reflected,
        r.residual,
        r.t_a_measured.unwrap_or(f64::NAN),
        r.t_a_predicted.unwrap_or(f64::NAN),
        r.sigma_at_turning.unwrap_or(f64::NAN)
    );

    let over = TunnelingSetup::over_barrier().run()?;
    println!("over the barrier: T = {:.9}  R = {:.3e}", over.transmitted, over.reflected);

    let thin = TunnelingSetup::thin_barrier();
    let scan = linprop::tunneling::width_scan(&thin, &ScanAxis::Delay(vec![0.0, 1.0, 2.0, 4.0, 8.0]))?;
    println!("delay scan on a thin barrier:");
    for entry in &scan.entries {
        println!(
            "  delay {:>4}  sigma at arrival {:>8.4}  T = {:.9}  R = {:.9}",
            entry.delay, entry.sigma_at_arrival, entry.result.transmitted, entry.result.reflected
        );
    }
    println!("violations (tol 1e-6): {:?}", scan.violations(1e-6));
    Ok(())
}
