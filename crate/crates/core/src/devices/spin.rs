//! Spin-1/2 states, spinor packets and reduced spin densities.
//!
//! Basis change uses `|S_z,±⟩ = (|S_x,+⟩ ± |S_x,−⟩)/√2`; the matrix is its
//! own inverse. Component 0 is `+`, component 1 is `−` in either basis.

use nalgebra::{Matrix2, SymmetricEigen, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::wavefunction::WaveFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinBasis {
    Z,
    X,
}

fn hadamard() -> Matrix2<Complex64> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Matrix2::new(h, h, h, -h)
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    pub basis: SpinBasis,
    pub amps: Vector2<Complex64>,
}

impl SpinState {
    pub fn new(basis: SpinBasis, plus: Complex64, minus: Complex64) -> Self {
        Self {
            basis,
            amps: Vector2::new(plus, minus),
        }
    }

    pub fn z_up() -> Self {
        Self::new(SpinBasis::Z, c(1.0), c(0.0))
    }

    pub fn z_down() -> Self {
        Self::new(SpinBasis::Z, c(0.0), c(1.0))
    }

    pub fn x_plus() -> Self {
        Self::new(SpinBasis::X, c(1.0), c(0.0))
    }

    pub fn x_minus() -> Self {
        Self::new(SpinBasis::X, c(0.0), c(1.0))
    }

    pub fn in_basis(&self, basis: SpinBasis) -> Self {
        if basis == self.basis {
            *self
        } else {
            Self {
                basis,
                amps: hadamard() * self.amps,
            }
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `σ_x` applied to the state.
    pub fn flipped(&self) -> Self {
        let z = self.in_basis(SpinBasis::Z);
        Self::new(SpinBasis::Z, z.amps[1], z.amps[0]).in_basis(self.basis)
    }

    /// `|⟨self|other⟩|²`
    pub fn overlap_sqr(&self, other: &SpinState) -> f64 {
        let o = other.in_basis(self.basis);
        self.amps.dotc(&o.amps).norm_sqr()
    }

    pub fn density(&self) -> SpinDensity {
        SpinDensity {
            basis: self.basis,
            matrix: self.amps * self.amps.adjoint(),
            momenta: None,
        }
    }
}

/// 2×2 spin density; for plane-wave product states `momenta` labels the
/// transverse momentum carried by each basis component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinDensity {
    pub basis: SpinBasis,
    pub matrix: Matrix2<Complex64>,
    pub momenta: Option<[f64; 2]>,
}

impl SpinDensity {
    /// `½·1`, the completely mixed state, with both components at momentum `p`.
    pub fn unpolarized(p: f64) -> Self {
        Self {
            basis: SpinBasis::X,
            matrix: Matrix2::identity() * c(0.5),
            momenta: Some([p, p]),
        }
    }

    pub fn in_basis(&self, basis: SpinBasis) -> Result<Self> {
        if basis == self.basis {
            return Ok(*self);
        }
        if let Some([a, b]) = self.momenta {
            if a != b {
                return Err(Error::invalid(
                    "basis",
                    "momentum-labelled branches cannot be re-expressed in another spin basis",
                ));
            }
        }
        let h = hadamard();
        Ok(Self {
            basis,
            matrix: h * self.matrix * h,
            momenta: self.momenta,
        })
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Largest entry of `ρ − ρ†`.
    pub fn hermiticity_defect(&self) -> f64 {
        (self.matrix - self.matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let herm = (self.matrix + self.matrix.adjoint()) * c(0.5);
        let e = SymmetricEigen::new(herm).eigenvalues;
        let (a, b) = (e[0], e[1]);
        if a <= b {
            [a, b]
        } else {
            [b, a]
        }
    }

    /// Diagonal entries: probabilities of the `+` and `−` components.
    pub fn populations(&self) -> [f64; 2] {
        [self.matrix[(0, 0)].re, self.matrix[(1, 1)].re]
    }

    /// `Tr(ρ σ)`, the fidelity with a pure state.
    pub fn fidelity_with(&self, state: &SpinState) -> f64 {
        let s = state.in_basis(self.basis);
        (s.amps.adjoint() * self.matrix * s.amps)[(0, 0)].re
    }

    /// `Tr(ρ1 ρ2)`
    pub fn overlap(&self, other: &SpinDensity) -> Result<f64> {
        let o = other.in_basis(self.basis)?;
        Ok((self.matrix * o.matrix).trace().re)
    }

    /// Largest entry of the difference.
    pub fn distance(&self, other: &SpinDensity) -> Result<f64> {
        let o = other.in_basis(self.basis)?;
        Ok((self.matrix - o.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max))
    }

    /// `σ_x ρ σ_x`
    pub fn flipped(&self) -> Result<Self> {
        let z = self.in_basis(SpinBasis::Z)?;
        let sx = Matrix2::new(c(0.0), c(1.0), c(1.0), c(0.0));
        Self {
            basis: SpinBasis::Z,
            matrix: sx * z.matrix * sx,
            momenta: None,
        }
        .in_basis(self.basis)
    }
}

/// Spatial wave-function per spin component.
#[derive(Debug, Clone)]
pub struct SpinorPacket {
    pub basis: SpinBasis,
    pub plus: WaveFunction,
    pub minus: WaveFunction,
}

impl SpinorPacket {
    pub fn new(basis: SpinBasis, plus: WaveFunction, minus: WaveFunction) -> Result<Self> {
        plus.grid().ensure_same_positions(minus.grid())?;
        Ok(Self { basis, plus, minus })
    }

    /// `ψ ⊗ spin`
    pub fn product(psi: &WaveFunction, spin: &SpinState) -> Self {
        Self {
            basis: spin.basis,
            plus: psi.scaled(spin.amps[0]),
            minus: psi.scaled(spin.amps[1]),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.plus.norm_sqr() + self.minus.norm_sqr()
    }

    pub fn in_basis(&self, basis: SpinBasis) -> Result<Self> {
        if basis == self.basis {
            return Ok(self.clone());
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut plus = self.plus.clone();
        let mut minus = self.minus.clone();
        self.plus.grid().ensure_same_positions(self.minus.grid())?;
        for ((p, m), (a, b)) in plus
            .amps
            .iter_mut()
            .zip(minus.amps.iter_mut())
            .zip(self.plus.amps.iter().zip(&self.minus.amps))
        {
            *p = (a + b) * h;
            *m = (a - b) * h;
        }
        Ok(Self { basis, plus, minus })
    }

    /// `ρ_ij = ⟨ψ_j|ψ_i⟩`, normalized by the total norm.
    pub fn reduced_density(&self) -> Result<SpinDensity> {
        let n = self.norm_sqr();
        let pp = self.plus.inner(&self.plus)?;
        let mm = self.minus.inner(&self.minus)?;
        let pm = self.minus.inner(&self.plus)?;
        Ok(SpinDensity {
            basis: self.basis,
            matrix: Matrix2::new(pp, pm, pm.conj(), mm) / c(n),
            momenta: None,
        })
    }
}
