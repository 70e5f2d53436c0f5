use std::f64::consts::PI;

use linprop::analytic::{linear_evolve, Ordering};
use linprop::config::ExperimentConfig;
use linprop::devices::circuit::SpinFlipCircuit;
use linprop::devices::psg::{compose_kinematics, psg_phase, solve_psg_for_phase, PsgGeometry, PsgUnknown};
use linprop::devices::sg::{sg_apply_density, SgAxis, SgSpec};
use linprop::devices::spin::{SpinBasis, SpinDensity, SpinState, SpinorPacket};
use linprop::gaussian::{sample_gaussian, GaussianSpec};
use linprop::grid::SpatialGrid;
use linprop::observables::Moments;
use linprop::output::{read_csv, CsvSink};
use linprop::potential::Potential;
use linprop::tunneling::{transmission_from_sigma, wkb_sigma_r, BarrierSpec, Descent};
use linprop::units::UnitSystem;
use linprop::Complex64;
use nalgebra::Matrix2;
use proptest::prelude::*;

fn grid() -> SpatialGrid {
    SpatialGrid::new(-60.0, 60.0, 2048).unwrap()
}

fn packet() -> impl Strategy<Value = GaussianSpec> {
    (-5.0..5.0f64, -3.0..3.0f64, 0.6..2.5f64).prop_map(|(x0, p0, s)| GaussianSpec::new(x0, p0, s).unwrap())
}

fn spin_state() -> impl Strategy<Value = SpinState> {
    (0.0..PI, -PI..PI).prop_map(|(theta, phi)| {
        SpinState::new(
            SpinBasis::Z,
            Complex64::new((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parseval(spec in packet(), v0 in -4.0..4.0f64, dt in 0.0..1.5f64) {
        let u = UnitSystem::natural();
        let psi = linear_evolve(&sample_gaussian(&spec, &grid(), &u).unwrap(), v0, dt, Ordering::Left).unwrap().psi;
        prop_assert!((psi.norm_sqr() - psi.to_momentum_rep().norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn sample_measure_round_trip(spec in packet()) {
        let m = Moments::of(&sample_gaussian(&spec, &grid(), &UnitSystem::natural()).unwrap());
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
        prop_assert!(rel(m.mean_x, spec.x0) < 1e-8);
        prop_assert!(rel(m.mean_p, spec.p0) < 1e-8);
        prop_assert!(rel(m.width(), spec.sigma) < 1e-8);
    }

    #[test]
    fn linear_equals_collinear_piecewise(v0 in -10.0..10.0f64, x in -100.0..100.0f64) {
        let pw = Potential::piecewise(vec![(-1.0, -v0), (3.0, 3.0 * v0)]).unwrap();
        let lin = Potential::linear(v0);
        prop_assert!((pw.eval(x) - lin.eval(x)).abs() <= 1e-12 * (1.0 + lin.eval(x).abs()));
    }

    #[test]
    fn orderings_agree(spec in packet(), v0 in -5.0..5.0f64, dt in 0.0..1.5f64) {
        let psi = sample_gaussian(&spec, &grid(), &UnitSystem::natural()).unwrap();
        let l = linear_evolve(&psi, v0, dt, Ordering::Left).unwrap().psi;
        let r = linear_evolve(&psi, v0, dt, Ordering::Right).unwrap().psi;
        prop_assert!(l.l2_distance(&r).unwrap() < 1e-12);
    }

    #[test]
    fn group_property(spec in packet(), v0 in -3.0..3.0f64, t1 in 0.0..1.0f64, t2 in 0.0..1.0f64) {
        let psi = sample_gaussian(&spec, &grid(), &UnitSystem::natural()).unwrap();
        let two = linear_evolve(&linear_evolve(&psi, v0, t1, Ordering::Left).unwrap().psi, v0, t2, Ordering::Left).unwrap().psi;
        let one = linear_evolve(&psi, v0, t1 + t2, Ordering::Left).unwrap().psi;
        prop_assert!(two.l2_distance(&one).unwrap() < 1e-11);
    }

    #[test]
    fn unitarity_and_ehrenfest(spec in packet(), v0 in -5.0..5.0f64, dt in 0.0..1.5f64, mass in 0.5..3.0f64) {
        let u = UnitSystem::natural_with_mass(mass).unwrap();
        let psi = sample_gaussian(&spec, &grid(), &u).unwrap();
        let out = linear_evolve(&psi, v0, dt, Ordering::Right).unwrap().psi;
        prop_assert!((out.norm_sqr() / psi.norm_sqr() - 1.0).abs() < 1e-12);
        let m = Moments::of(&out);
        let x = spec.x0 + spec.p0 * dt / mass - v0 * dt * dt / (2.0 * mass);
        let p = spec.p0 - v0 * dt;
        prop_assert!((m.mean_x - x).abs() <= 1e-10 * x.abs().max(1.0));
        prop_assert!((m.mean_p - p).abs() <= 1e-10 * p.abs().max(1.0));
    }

    #[test]
    fn sigma_r_vanishes_at_peak(peak in 1.0..40.0f64, s1 in 0.5..8.0f64, back in 0.5..10.0f64) {
        let u = UnitSystem::natural();
        let v = BarrierSpec::new(0.0, s1, peak, Descent::Linear { length: back }).unwrap().potential();
        let sig: Vec<f64> = [0.5, 0.9, 0.99, 0.9999, 1.0]
            .iter()
            .map(|f| wkb_sigma_r(&v, f * peak, &u).unwrap())
            .collect();
        prop_assert!(sig.windows(2).all(|w| w[1] < w[0] || w[1] == 0.0));
        prop_assert!(sig[3] < 1e-4 * sig[0]);
        prop_assert_eq!(sig[4], 0.0);
    }

    #[test]
    fn transmission_bounded_and_monotone(a in 0.0..20.0f64, b in 0.0..20.0f64) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (t_lo, t_hi) = (transmission_from_sigma(lo), transmission_from_sigma(hi));
        prop_assert!(t_hi <= t_lo && t_lo <= 0.64 && t_hi > 0.0);
    }

    #[test]
    fn psg_cancels_kick_and_displacement(l in 1.0..300.0f64, v0 in -5.0..5.0f64, v in 1.0..100.0f64, m in 0.1..10.0f64) {
        let g = PsgGeometry::new(l, v0, v, UnitSystem::natural_with_mass(m).unwrap()).unwrap();
        let (kick, shift) = compose_kinematics(&g.segments(), m);
        let dt = g.dt();
        prop_assert!(kick.abs() <= 1e-12 * (v0 * dt).abs().max(f64::MIN_POSITIVE));
        prop_assert!(shift.abs() <= 1e-12 * (v0 * dt * dt / m).abs().max(f64::MIN_POSITIVE));
        prop_assert!(psg_phase(&g) <= 0.0);
        let doubled = PsgGeometry::new(l, 2.0 * v0, v, g.units).unwrap();
        prop_assert!((psg_phase(&doubled) - 4.0 * psg_phase(&g)).abs() <= 1e-12 * psg_phase(&doubled).abs());
    }

    #[test]
    fn sg_density_stays_physical(a in 0.0..1.0f64, re in -0.5..0.5f64, im in -0.5..0.5f64, p in -2.0..2.0f64, c in -3.0..3.0f64, dt in 0.0..2.0f64) {
        // a valid density: diagonal (a, 1−a) with a coherence scaled into the Bloch ball
        let off = Complex64::new(re, im);
        let bound = (a * (1.0 - a)).sqrt();
        let off = if off.norm() > bound { off * (bound / off.norm()) } else { off };
        let rho = SpinDensity {
            basis: SpinBasis::X,
            matrix: Matrix2::new(Complex64::new(a, 0.0), off, off.conj(), Complex64::new(1.0 - a, 0.0)),
            momenta: Some([p, p]),
        };
        let out = sg_apply_density(&rho, &SgSpec::new(c, dt, SgAxis::PlusX).unwrap(), &UnitSystem::natural()).unwrap();
        prop_assert!((out.trace().re - 1.0).abs() < 1e-12 && out.trace().im.abs() < 1e-12);
        prop_assert!(out.hermiticity_defect() < 1e-12);
        prop_assert!(out.eigenvalues()[0] > -1e-12);
    }

    #[test]
    fn csv_round_trip_is_exact(rows in prop::collection::vec(prop::collection::vec(-1e300..1e300f64, 3), 1..20)) {
        let mut buf = Vec::new();
        let mut w = CsvSink::new(&mut buf, "probe", &["a[1]", "b[1]", "c[1]"]).unwrap();
        for r in &rows {
            w.row(r).unwrap();
        }
        w.finish().unwrap();
        let t = read_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(t.kind, "probe");
        prop_assert_eq!(t.rows, rows);
    }

    #[test]
    fn config_round_trip_is_byte_stable(seed in any::<u64>(), x0 in -1e3..1e3f64, sigma in 1e-6..1e3f64, dt in 1e-6..1.0f64, points in 4u32..14) {
        let mut c = ExperimentConfig::example();
        c.seed = seed;
        c.packet.x0_len = x0;
        c.packet.sigma_len = sigma;
        c.solver.dt_time = dt;
        c.grid.points = 1 << points;
        let text = c.to_toml();
        let back = ExperimentConfig::from_toml(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.to_toml(), text);
    }
}

fn flip_circuit(phase: f64) -> SpinFlipCircuit {
    let u = UnitSystem::natural();
    let psg = solve_psg_for_phase(phase, PsgUnknown::Slope, &PsgGeometry::new(200.0, 0.0, 200.0, u).unwrap()).unwrap();
    SpinFlipCircuit::new(
        SgSpec::new(2.0, 1.0, SgAxis::PlusX).unwrap(),
        psg,
        SgSpec::new(2.0, 1.0, SgAxis::MinusX).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn double_flip_restores_spin(spin in spin_state()) {
        let grid = SpatialGrid::new(-128.0, 128.0, 2048).unwrap();
        let psi = sample_gaussian(&GaussianSpec::new(0.0, 0.0, 1.0).unwrap(), &grid, &UnitSystem::natural()).unwrap();
        let c = flip_circuit(PI);
        let once = c.run(&SpinorPacket::product(&psi, &spin), false).unwrap();
        prop_assert!((once.output.norm_sqr() - 1.0).abs() < 1e-12);
        let twice = c.run(&once.output, false).unwrap();
        prop_assert!((twice.spin.fidelity_with(&spin) - 1.0).abs() < 1e-9);
    }
}
