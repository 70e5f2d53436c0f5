//! Config-driven commands behind the `linprop` binary. Each command writes
//! versioned CSV files into the output directory and returns their paths.
//!
//! | command  | files |
//! |----------|-------|
//! | `evolve` | `trajectory.csv`, `final_state.csv` |
//! | `tunnel` | `potential_profile.csv`, `width_scan.csv`, `tunneling_run.csv` |
//! | `psg`    | `psg_report.csv`, `psg_sweep.csv` |
//! | `spin`   | `spin_gate.csv` |
//! | `verify` | `verify.json` |

use std::f64::consts::PI;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use crate::analytic::{free_evolve, linear_evolve, Ordering};
use crate::config::ExperimentConfig;
use crate::devices::circuit::SpinFlipCircuit;
use crate::devices::psg::{psg_compose, psg_compose_plane_wave, psg_phase, solve_psg_for_phase, PsgGeometry, PsgUnknown};
use crate::devices::spin::{SpinState, SpinorPacket};
use crate::error::{Error, Result};
use crate::gaussian::{free_width, sample_gaussian};
use crate::observables::Moments;
use crate::oracle::split_step_evolve;
use crate::output::CsvSink;
use crate::potential::Potential;
use crate::tunneling::{width_scan, ScanAxis};
use crate::verify::{run_all, Summary};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_NUMERICAL: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Instability(_) | Error::Quadrature { .. } | Error::NotStationary { .. } => EXIT_NUMERICAL,
        Error::Precondition(_) => EXIT_PRECONDITION,
        _ => EXIT_VALIDATION,
    }
}

/// Command-line overrides applied on top of a config.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub dt: Option<f64>,
    pub override_preconditions: bool,
}

impl Overrides {
    pub fn apply(&self, mut cfg: ExperimentConfig) -> Result<ExperimentConfig> {
        if let Some(out) = &self.out {
            cfg.output.dir = out.to_string_lossy().into_owned();
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(dt) = self.dt {
            cfg.solver.dt_time = dt;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn out_dir(cfg: &ExperimentConfig) -> Result<PathBuf> {
    let dir = PathBuf::from(&cfg.output.dir);
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn sink(dir: &Path, name: &str, kind: &str, header: &[&str]) -> Result<(CsvSink<BufWriter<File>>, PathBuf)> {
    let path = dir.join(name);
    Ok((CsvSink::new(BufWriter::new(File::create(&path)?), kind, header)?, path))
}

fn wrap_phase(phi: f64) -> f64 {
    let w = phi.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// Oracle trajectory with, for Free/Linear potentials, the closed-form state
/// at every snapshot and its L2 distance from the oracle.
pub fn cmd_evolve(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let units = cfg.unit_system()?;
    let spec = cfg.gaussian()?;
    let psi0 = sample_gaussian(&spec, &cfg.spatial_grid()?, &units)?;
    let potential = match cfg.potential {
        Some(_) => cfg.potential()?,
        None => Potential::Free,
    };
    let traj = split_step_evolve(&psi0, &potential, &cfg.solver_config()?.storing_states())?;

    let dir = out_dir(cfg)?;
    let (mut w, traj_path) = sink(
        &dir,
        "trajectory.csv",
        "trajectory",
        &[
            "t[time]",
            "mean_x[length]",
            "mean_p[momentum]",
            "width[length]",
            "norm[1]",
            "analytic_width[length]",
            "closed_form_width[length]",
            "l2_analytic_oracle[1]",
        ],
    )?;
    let closed_form_ok = matches!(potential, Potential::Free | Potential::Linear { .. });
    for snap in &traj.snapshots {
        let state = snap.state.as_ref().expect("states stored");
        let t = snap.time;
        let analytic = match potential {
            Potential::Free => Some(free_evolve(&psi0, t)?),
            Potential::Linear { v0 } => Some(linear_evolve(&psi0, v0, t, Ordering::Left)?.psi),
            _ => None,
        };
        let (a_width, l2) = match &analytic {
            Some(a) => (Moments::of(a).width(), state.l2_distance(a)?),
            None => (f64::NAN, f64::NAN),
        };
        let closed = if closed_form_ok {
            free_width(spec.sigma, t, &units)
        } else {
            f64::NAN
        };
        let m = snap.moments;
        w.row(&[t, m.mean_x, m.mean_p, m.width(), m.norm_sqr, a_width, closed, l2])?;
    }
    w.finish()?;

    let (mut w, state_path) = sink(
        &dir,
        "final_state.csv",
        "state",
        &["x[length]", "re[length^-1/2]", "im[length^-1/2]", "density[length^-1]"],
    )?;
    let psi = &traj.final_state;
    for (j, z) in psi.amplitudes().iter().enumerate() {
        w.row(&[psi.grid().x(j), z.re, z.im, z.norm_sqr()])?;
    }
    w.finish()?;
    Ok(vec![traj_path, state_path])
}

/// Barrier profile, the delay-generated width scan and the undelayed run.
pub fn cmd_tunnel(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let (setup, delays) = cfg.tunneling_setup()?;
    let dir = out_dir(cfg)?;
    let potential = setup.barrier.potential();
    let energy = setup.energy();
    let (mut w, profile_path) = sink(
        &dir,
        "potential_profile.csv",
        "potential-profile",
        &["x[length]", "V[energy]", "E[energy]"],
    )?;
    for x in setup.grid.positions() {
        w.row(&[x, potential.eval(x), energy])?;
    }
    w.finish()?;

    let scan = width_scan(&setup, &ScanAxis::Delay(delays))?;
    for v in scan.violations(1e-6) {
        log::warn!(
            "T decreased from {:.8} to {:.8} as σ grew from {:.4} to {:.4}",
            v.t_from,
            v.t_to,
            v.sigma_from,
            v.sigma_to
        );
    }
    let scan_path = dir.join("width_scan.csv");
    scan.write_csv(BufWriter::new(File::create(&scan_path)?))?;

    let run_path = dir.join("tunneling_run.csv");
    let first = scan
        .entries
        .iter()
        .min_by(|a, b| a.delay.total_cmp(&b.delay).then(a.index.cmp(&b.index)))
        .expect("scan is non-empty");
    first.result.write_csv(BufWriter::new(File::create(&run_path)?))?;
    Ok(vec![profile_path, scan_path, run_path])
}

/// Closed-form against composed phase, and the phase-vs-slope sweep.
pub fn cmd_psg(cfg: &ExperimentConfig, override_preconditions: bool) -> Result<Vec<PathBuf>> {
    let g = cfg.psg_geometry()?;
    let p = cfg.psg.as_ref().expect("psg section checked");
    let units = cfg.unit_system()?;
    let closed = psg_phase(&g);
    let plane = psg_compose_plane_wave(&g, cfg.packet.p0_mom)?;
    let psi = sample_gaussian(&cfg.gaussian()?, &cfg.spatial_grid()?, &units)?;
    let packet = psg_compose(&g, &psi, override_preconditions)?;

    let dir = out_dir(cfg)?;
    let (mut w, report_path) = sink(
        &dir,
        "psg_report.csv",
        "psg-report",
        &[
            "slope[force]",
            "closed_form_phase[rad]",
            "composed_phase[rad]",
            "difference[rad]",
            "packet_phase[rad]",
            "packet_difference[rad]",
            "net_kick[momentum]",
            "net_displacement[length]",
        ],
    )?;
    w.row(&[
        g.v0,
        closed,
        plane.relative_phase,
        plane.relative_phase - closed,
        packet.relative_phase,
        wrap_phase(packet.relative_phase - closed),
        plane.net_kick,
        plane.net_displacement,
    ])?;
    w.finish()?;

    let (mut w, sweep_path) = sink(
        &dir,
        "psg_sweep.csv",
        "psg-sweep",
        &["slope[force]", "closed_form_phase[rad]", "composed_phase[rad]"],
    )?;
    let n = p.sweep_points;
    for i in 0..n {
        let v0 = -p.sweep_max_force + 2.0 * p.sweep_max_force * i as f64 / (n - 1) as f64;
        let gi = PsgGeometry::new(g.length, v0, g.velocity, units)?;
        w.row(&[v0, psg_phase(&gi), psg_compose_plane_wave(&gi, cfg.packet.p0_mom)?.relative_phase])?;
    }
    w.finish()?;
    Ok(vec![report_path, sweep_path])
}

/// Spin-flip gate over the configured phase sweep plus the PSG-removed
/// control, with `|S_z,+⟩` input.
pub fn cmd_spin(cfg: &ExperimentConfig, override_preconditions: bool) -> Result<Vec<PathBuf>> {
    let (up, down) = cfg.splitters()?;
    let base = cfg.psg_geometry()?;
    let phases = &cfg.spin.as_ref().expect("spin section checked").phases_rad;
    let units = cfg.unit_system()?;
    let psi = sample_gaussian(&cfg.gaussian()?, &cfg.spatial_grid()?, &units)?;
    let input = SpinorPacket::product(&psi, &SpinState::z_up());

    let dir = out_dir(cfg)?;
    let (mut w, path) = sink(
        &dir,
        "spin_gate.csv",
        "spin-gate",
        &[
            "target_phase[rad]",
            "realized_phase[rad]",
            "psg_installed[1]",
            "flip_fidelity[1]",
            "p_up[1]",
            "p_down[1]",
        ],
    )?;
    let unit = PsgGeometry::new(base.length, 0.0, base.velocity, units)?;
    let mut rows = Vec::new();
    for &phi in phases {
        let g = solve_psg_for_phase(phi, PsgUnknown::Slope, &unit)?;
        rows.push((phi, SpinFlipCircuit::new(up, g, down)));
    }
    let flip = solve_psg_for_phase(PI, PsgUnknown::Slope, &unit)?;
    rows.push((PI, SpinFlipCircuit::new(up, flip, down).without_psg()));
    for (phi, circuit) in rows {
        let r = circuit.run(&input, override_preconditions)?;
        let [a, b] = r.spin.populations();
        let installed = if circuit.psg_installed { 1.0 } else { 0.0 };
        w.row(&[phi, r.phase, installed, r.flip_fidelity, a, b])?;
    }
    w.finish()?;
    Ok(vec![path])
}

/// Full acceptance suite; the summary is also written as JSON.
pub fn cmd_verify(seed: u64, out: &Path) -> Result<(Summary, PathBuf)> {
    let summary = run_all(seed);
    std::fs::create_dir_all(out)?;
    let path = out.join("verify.json");
    std::fs::write(&path, summary.to_json())?;
    Ok((summary, path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Precondition("x".into())), EXIT_PRECONDITION);
        assert_eq!(exit_code(&Error::Instability("x".into())), EXIT_NUMERICAL);
        assert_eq!(exit_code(&Error::Config("x".into())), EXIT_VALIDATION);
    }

    #[test]
    fn overrides_revalidate() {
        let o = Overrides {
            dt: Some(-1.0),
            ..Default::default()
        };
        assert!(matches!(o.apply(ExperimentConfig::example()), Err(Error::Config(_))));
        let o = Overrides {
            seed: Some(3),
            out: Some("elsewhere".into()),
            ..Default::default()
        };
        let c = o.apply(ExperimentConfig::example()).unwrap();
        assert_eq!((c.seed, c.output.dir.as_str()), (3, "elsewhere"));
    }

    #[test]
    fn wraps_into_half_open_interval() {
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_phase(-PI / 4.0) + PI / 4.0).abs() < 1e-15);
    }
}
