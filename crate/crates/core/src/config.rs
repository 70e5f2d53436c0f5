//! Experiment configuration: a sectioned TOML file whose keys carry an
//! explicit dimension suffix (`_len`, `_time`, `_mom`, `_energy`, `_force`,
//! `_vel`, `_mass`, `_rad`) in the configured unit system.
//!
//! ```toml
//! seed = 7
//!
//! [units]
//! system = "natural"
//! particle_mass = 1.0
//!
//! [grid]
//! x_min_len = -40.0
//! x_max_len = 40.0
//! points = 4096
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::devices::psg::PsgGeometry;
use crate::devices::sg::{SgAxis, SgSpec};
use crate::error::{Error, Result};
use crate::gaussian::GaussianSpec;
use crate::grid::SpatialGrid;
use crate::oracle::{Absorber, SolverConfig};
use crate::potential::Potential;
use crate::tunneling::{BarrierSpec, Descent, TunnelingSetup};
use crate::units::{UnitSystem, HBAR_SI};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub units: UnitsSection,
    pub grid: GridSection,
    pub packet: PacketSection,
    pub solver: SolverSection,
    pub output: OutputSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub barrier: Option<BarrierSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psg: Option<PsgSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spin: Option<SpinSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    /// `ħ = 1`
    Natural,
    /// `ħ` in J·s, masses in kg, lengths in m.
    Si,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsSection {
    pub system: System,
    pub particle_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_min_len: f64,
    pub x_max_len: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketSection {
    pub x0_len: f64,
    pub p0_mom: f64,
    pub sigma_len: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub dt_time: f64,
    pub duration_time: f64,
    pub record_every: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub absorber_width_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub absorber_strength_energy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    Free,
    Linear,
    Piecewise,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSection {
    pub kind: PotentialKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope_force: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub knots_len: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values_energy: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierSection {
    pub x_start_len: f64,
    pub slope_force: f64,
    pub peak_energy: f64,
    /// Length of a linear descent; absent for a mirror-image descent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent_len: Option<f64>,
    pub scan_delays_time: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsgSection {
    pub length_len: f64,
    pub velocity_vel: f64,
    /// Either a slope or a target phase magnitude (solved for the slope).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope_force: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_phase_rad: Option<f64>,
    pub sweep_max_force: f64,
    pub sweep_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinSection {
    pub coupling_force: f64,
    pub duration_time: f64,
    /// Phase magnitudes of the sweep; each is realized by solving the PSG slope.
    pub phases_rad: Vec<f64>,
}

fn field(name: &'static str, ok: bool, reason: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!("{name}: {}", reason.into())))
    }
}

fn section<'a, T>(s: &'a Option<T>, name: &str) -> Result<&'a T> {
    s.as_ref().ok_or_else(|| Error::Config(format!("[{name}] section is required for this command")))
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Field-level checks that do not need any other section.
    pub fn validate(&self) -> Result<()> {
        let u = &self.units;
        field("units.particle_mass", u.particle_mass > 0.0 && u.particle_mass.is_finite(), "must be positive")?;
        let g = &self.grid;
        field("grid.x_max_len", g.x_max_len > g.x_min_len, "must exceed grid.x_min_len")?;
        field("grid.points", g.points >= 16 && g.points.is_power_of_two(), "must be a power of two >= 16")?;
        field("packet.sigma_len", self.packet.sigma_len > 0.0, "must be positive")?;
        let s = &self.solver;
        field("solver.dt_time", s.dt_time > 0.0 && s.dt_time.is_finite(), "must be positive")?;
        field("solver.duration_time", s.duration_time > 0.0, "must be positive")?;
        field("solver.record_every", s.record_every >= 1, "must be >= 1")?;
        field(
            "solver.absorber_*",
            s.absorber_width_fraction.is_some() == s.absorber_strength_energy.is_some(),
            "width fraction and strength must be given together",
        )?;
        field("output.dir", !self.output.dir.is_empty(), "must not be empty")?;
        if let Some(p) = &self.potential {
            match p.kind {
                PotentialKind::Linear => field("potential.slope_force", p.slope_force.is_some(), "required for kind = linear")?,
                PotentialKind::Piecewise => field(
                    "potential.knots_len",
                    p.knots_len.len() >= 2 && p.knots_len.len() == p.values_energy.len(),
                    "needs >= 2 knots and one value per knot",
                )?,
                PotentialKind::Free => {}
            }
        }
        if let Some(b) = &self.barrier {
            field("barrier.slope_force", b.slope_force > 0.0, "must be positive")?;
            field("barrier.peak_energy", b.peak_energy > 0.0, "must be positive")?;
            field("barrier.scan_delays_time", !b.scan_delays_time.is_empty(), "must list at least one delay")?;
        }
        if let Some(p) = &self.psg {
            field("psg.length_len", p.length_len > 0.0, "must be positive")?;
            field("psg.velocity_vel", p.velocity_vel > 0.0, "must be positive")?;
            field(
                "psg.slope_force",
                p.slope_force.is_some() != p.target_phase_rad.is_some(),
                "give exactly one of slope_force and target_phase_rad",
            )?;
            field("psg.sweep_points", p.sweep_points >= 2, "must be >= 2")?;
        }
        if let Some(s) = &self.spin {
            field("spin.duration_time", s.duration_time > 0.0, "must be positive")?;
            field("spin.phases_rad", !s.phases_rad.is_empty(), "must list at least one phase")?;
        }
        Ok(())
    }

    pub fn unit_system(&self) -> Result<UnitSystem> {
        match self.units.system {
            System::Natural => UnitSystem::natural_with_mass(self.units.particle_mass),
            System::Si => UnitSystem::new(HBAR_SI, self.units.particle_mass, "si"),
        }
    }

    pub fn spatial_grid(&self) -> Result<SpatialGrid> {
        let u = self.unit_system()?;
        Ok(SpatialGrid::new(self.grid.x_min_len, self.grid.x_max_len, self.grid.points)?
            .with_momentum_center(self.packet.p0_mom, u.hbar))
    }

    pub fn gaussian(&self) -> Result<GaussianSpec> {
        GaussianSpec::new(self.packet.x0_len, self.packet.p0_mom, self.packet.sigma_len)
    }

    pub fn solver_config(&self) -> Result<SolverConfig> {
        let s = &self.solver;
        let mut cfg = SolverConfig::for_duration(s.duration_time, s.dt_time)?.record_every(s.record_every);
        if let (Some(w), Some(k)) = (s.absorber_width_fraction, s.absorber_strength_energy) {
            cfg = cfg.with_absorber(Absorber::new(w, k)?);
        }
        Ok(cfg)
    }

    pub fn potential(&self) -> Result<Potential> {
        let p = section(&self.potential, "potential")?;
        match p.kind {
            PotentialKind::Free => Ok(Potential::Free),
            PotentialKind::Linear => Ok(Potential::linear(p.slope_force.unwrap_or(0.0))),
            PotentialKind::Piecewise => {
                Potential::piecewise(p.knots_len.iter().copied().zip(p.values_energy.iter().copied()).collect())
            }
        }
    }

    pub fn tunneling_setup(&self) -> Result<(TunnelingSetup, Vec<f64>)> {
        let b = section(&self.barrier, "barrier")?;
        let descent = match b.descent_len {
            Some(length) => Descent::Linear { length },
            None => Descent::Mirror,
        };
        let setup = TunnelingSetup {
            packet: self.gaussian()?,
            barrier: BarrierSpec::new(b.x_start_len, b.slope_force, b.peak_energy, descent)?,
            grid: self.spatial_grid()?,
            units: self.unit_system()?,
            solver: self.solver_config()?,
        };
        Ok((setup, b.scan_delays_time.clone()))
    }

    /// The configured geometry; a target phase is realized by solving for the slope.
    pub fn psg_geometry(&self) -> Result<PsgGeometry> {
        let p = section(&self.psg, "psg")?;
        let u = self.unit_system()?;
        match (p.slope_force, p.target_phase_rad) {
            (Some(v0), _) => PsgGeometry::new(p.length_len, v0, p.velocity_vel, u),
            (None, Some(phi)) => crate::devices::psg::solve_psg_for_phase(
                phi,
                crate::devices::psg::PsgUnknown::Slope,
                &PsgGeometry::new(p.length_len, 0.0, p.velocity_vel, u)?,
            ),
            (None, None) => Err(Error::Config("psg: slope_force or target_phase_rad required".into())),
        }
    }

    /// The matched splitter pair `(+x, −x)`.
    pub fn splitters(&self) -> Result<(SgSpec, SgSpec)> {
        let s = section(&self.spin, "spin")?;
        Ok((
            SgSpec::new(s.coupling_force, s.duration_time, SgAxis::PlusX)?,
            SgSpec::new(s.coupling_force, s.duration_time, SgAxis::MinusX)?,
        ))
    }

    /// A complete natural-unit configuration with every section filled in.
    pub fn example() -> Self {
        Self {
            seed: crate::verify::DEFAULT_SEED,
            units: UnitsSection {
                system: System::Natural,
                particle_mass: 1.0,
            },
            grid: GridSection {
                x_min_len: -100.0,
                x_max_len: 100.0,
                points: 2048,
            },
            packet: PacketSection {
                x0_len: -20.0,
                p0_mom: 5.0,
                sigma_len: 2.0,
            },
            solver: SolverSection {
                dt_time: 2e-3,
                duration_time: 100.0,
                record_every: 25,
                absorber_width_fraction: Some(0.15),
                absorber_strength_energy: Some(20.0),
            },
            output: OutputSection { dir: "out".into() },
            potential: Some(PotentialSection {
                kind: PotentialKind::Linear,
                slope_force: Some(0.05),
                knots_len: Vec::new(),
                values_energy: Vec::new(),
            }),
            barrier: Some(BarrierSection {
                x_start_len: 0.0,
                slope_force: 5.0,
                peak_energy: 15.0,
                descent_len: None,
                scan_delays_time: vec![0.0, 1.0, 2.0, 4.0, 8.0],
            }),
            psg: Some(PsgSection {
                length_len: 80.0,
                velocity_vel: 80.0,
                slope_force: None,
                target_phase_rad: Some(std::f64::consts::PI),
                sweep_max_force: 5.0,
                sweep_points: 21,
            }),
            spin: Some(SpinSection {
                coupling_force: 2.0,
                duration_time: 1.0,
                phases_rad: vec![0.0, 0.25 * std::f64::consts::PI, 0.5 * std::f64::consts::PI, std::f64::consts::PI],
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_round_trip_is_byte_stable() {
        let text = ExperimentConfig::example().to_toml();
        let parsed = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(parsed, ExperimentConfig::example());
        assert_eq!(parsed.to_toml(), text);
    }

    #[test]
    fn field_errors_name_the_field() {
        let mut c = ExperimentConfig::example();
        c.grid.points = 1000;
        let e = ExperimentConfig::from_toml(&c.to_toml()).unwrap_err().to_string();
        assert!(e.contains("grid.points"), "{e}");
        let e = ExperimentConfig::from_toml("seed = 1\n[units]\nsystem = \"natural\"\nparticle_mass = 1.0\nmass = 2.0\n")
            .unwrap_err()
            .to_string();
        assert!(e.contains("mass"), "{e}");
    }

    #[test]
    fn sections_build_domain_types() {
        let c = ExperimentConfig::example();
        assert_eq!(c.spatial_grid().unwrap().len(), 2048);
        assert!(c.solver_config().unwrap().absorber.is_some());
        let g = c.psg_geometry().unwrap();
        assert!((crate::devices::psg::psg_phase(&g) + std::f64::consts::PI).abs() < 1e-12);
        let (up, down) = c.splitters().unwrap();
        assert_eq!(up.axis.opposite(), down.axis);
        assert_eq!(c.tunneling_setup().unwrap().1.len(), 5);
    }
}
