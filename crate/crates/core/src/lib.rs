//! Dirac electrons scattering off an electrostatic step `V(z) = V0 θ(z)`.
//!
//! The crate computes the zone-resolved reflection and transmission
//! amplitudes (diffusion, Dirac tunneling, Klein tunneling and the Klein
//! zone), builds gaussian wave packets from the stationary states, tracks
//! the particle number on each side of the step, and sweeps `R(E)`.
//!
//! All routines are generic over the scalar type through [`Real`]; the
//! `*64` aliases below fix it to `f64`, which is what the tolerances in the
//! test suite assume.

pub mod amplitudes;
pub mod analysis;
pub mod error;
pub mod kinematics;
pub mod quadrature;
pub mod scalar;
pub mod wavepacket;

pub use amplitudes::{
    alpha_oscillatory, alpha_tilde, continuity_residual, flux_residual, positron_frame, region2_nature, scatter,
    scatter_in_zone, Limit, ParticleNature, PositronFrame, ScatterAmplitudes,
};
pub use analysis::{klein_peak, phase_derivative, phase_jump, sweep, KleinPeak, PhaseJump, PhaseSlope, SweepRow};
pub use error::{Error, Result};
pub use kinematics::{classify_zone, free_spinor, region2_spinor, Kinematics, Region2Momentum, Spinor4, StepConfig, Zone};
pub use scalar::Real;
pub use wavepacket::{
    converged_series, default_peak_energy, packet_window, time_grid, DensitySeries, GaussianPacket, MomentumWindow,
    PacketField, QuadratureSpec,
};

pub use num_complex::Complex;

pub type StepConfig64 = StepConfig<f64>;
pub type Spinor64 = Spinor4<f64>;
pub type Kinematics64 = Kinematics<f64>;
pub type Amplitudes64 = ScatterAmplitudes<f64>;
pub type PositronFrame64 = PositronFrame<f64>;
pub type Packet64 = GaussianPacket<f64>;
pub type Quadrature64 = QuadratureSpec<f64>;
pub type PacketField64 = PacketField<f64>;
pub type DensitySeries64 = DensitySeries<f64>;
pub type SweepRow64 = SweepRow<f64>;

pub type StepConfig32 = StepConfig<f32>;
pub type Amplitudes32 = ScatterAmplitudes<f32>;
