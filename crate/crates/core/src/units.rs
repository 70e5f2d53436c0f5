//! Unit conventions. Every physical quantity in the crate is expressed in the
//! units of the [`UnitSystem`] carried by the wave-function it belongs to.

use crate::error::{Error, Result};

/// Reduced Planck constant in J·s (CODATA 2018, exact).
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Electron mass in kg.
pub const ELECTRON_MASS_SI: f64 = 9.109_383_7015e-31;
/// Elementary charge in C.
pub const ELEMENTARY_CHARGE_SI: f64 = 1.602_176_634e-19;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
    pub mass: f64,
    pub label: &'static str,
}

impl UnitSystem {
    /// hbar = m = 1.
    pub const fn natural() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            label: "natural",
        }
    }

    /// Natural hbar = 1 with a non-unit particle mass.
    pub fn natural_with_mass(mass: f64) -> Result<Self> {
        Self::new(1.0, mass, "natural")
    }

    /// SI units (J·s, kg) for a particle of the given mass.
    pub fn si(mass_kg: f64) -> Result<Self> {
        Self::new(HBAR_SI, mass_kg, "si")
    }

    pub fn new(hbar: f64, mass: f64, label: &'static str) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::invalid("hbar", format!("must be positive, got {hbar}")));
        }
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::invalid("mass", format!("must be positive, got {mass}")));
        }
        Ok(Self { hbar, mass, label })
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::natural()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_is_default() {
        let u = UnitSystem::default();
        assert_eq!(u.hbar, 1.0);
        assert_eq!(u.mass, 1.0);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(UnitSystem::new(0.0, 1.0, "x").is_err());
        assert!(UnitSystem::new(1.0, -1.0, "x").is_err());
        assert!(UnitSystem::si(f64::NAN).is_err());
    }
}
