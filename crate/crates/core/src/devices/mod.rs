//! Phase shift generator, Stern–Gerlach splitter and the spin-flip gate built
//! from them. Longitudinal motion separates exactly, so every device acts on a
//! one-dimensional transverse wave-function plus a spin label.

pub mod circuit;
pub mod psg;
pub mod sg;
pub mod spin;

pub use circuit::{SpinFlipCircuit, SpinFlipResult};
pub use psg::{psg_compose, psg_compose_plane_wave, psg_phase, solve_psg_for_phase, PsgGeometry, PsgUnknown};
pub use sg::{sg_apply, sg_apply_density, SgAxis, SgSpec};
pub use spin::{SpinBasis, SpinDensity, SpinState, SpinorPacket};
