//! Synthesis and verification of composite-rotation pulse sequences.
//!
//! Single-qubit gates driven by resonant pulses suffer two dominant
//! systematic errors: off-resonance (the rotation axis tilts out of the
//! xy-plane and the angle stretches) and pulse-length (the angle is scaled
//! by a constant factor). Replacing one pulse with a composite sequence of
//! several can cancel the leading error terms while implementing the same
//! net rotation. This crate synthesizes the three classic fully
//! compensating families and provides the numerical machinery to check
//! their cancellation properties:
//!
//! - [`families::build_corpse`]: three collinear pulses (+x, -x, +x)
//!   removing the second-order off-resonance term.
//! - [`families::build_scrofulous`]: a time-symmetric three-pulse sequence
//!   removing the first-order pulse-length term.
//! - [`families::build_bb1`]: a target pulse with net-identity correction
//!   blocks inserted, removing pulse-length terms below sixth order.
//!
//! Rotations are represented as unit quaternions ([`rotor::Quaternion`]);
//! every quaternion computation can be cross-checked against an independent
//! rotation-matrix path ([`rotor::RotationMatrix`]). The [`analysis`] module
//! supplies fidelity sweeps, 2-D fidelity grids, numerical even-power series
//! extraction, and crossover bisection; [`verify`] bundles every reproduction
//! and cancellation claim into a named check suite.
//!
//! Angles are radians everywhere inside the library; degrees appear only at
//! the command-line boundary and in emitted tables.

pub mod analysis;
pub mod families;
pub mod pulse;
pub mod report;
pub mod rotor;
pub mod verify;

pub use analysis::{ErrorAxis, FidelityGrid, SeriesCoefficients, SweepResult};
pub use families::{CorpseIndices, PhaseBranch, ScrofulousParams};
pub use pulse::{ErrorModel, Family, Pulse, PulseSequence};
pub use rotor::{Quaternion, RotationMatrix};

/// Every domain error the library can report. Messages are one-line and
/// self-contained so the command-line tool can surface them directly.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("rotation axis norm is {norm}, not within 1e-9 of 1")]
    NonUnitAxis { norm: f64 },

    #[error("pulse angle {theta} rad is negative or not finite")]
    InvalidPulseAngle { theta: f64 },

    #[error("off-resonance fraction {f} is not finite")]
    InvalidOffResonance { f: f64 },

    #[error("pulse-length fraction {g} must be finite and > -1 (g = -1 annihilates every pulse)")]
    InvalidPulseLength { g: f64 },

    #[error("pulse sequence must contain at least one pulse")]
    EmptySequence,

    #[error("target angle {theta_deg:.4} deg outside the supported range [{lo_deg:.0}, {hi_deg:.0}] deg")]
    ThetaOutOfRange {
        theta_deg: f64,
        lo_deg: f64,
        hi_deg: f64,
    },

    #[error("index triple gives pulse {pulse} a negative rotation angle ({theta_deg:.4} deg); pulse angles must be positive")]
    NegativeCorpseAngle { pulse: usize, theta_deg: f64 },

    #[error("arcsinc argument {y} outside [0, 1)")]
    ArcsincDomain { y: f64 },

    #[error("arccos argument {x} outside [-1, 1] while solving pulse phases")]
    ArccosDomain { x: f64 },

    #[error("correction-block count must be at least 1")]
    InvalidBlockCount,

    #[error("placement fraction {placement} outside [0, 1]")]
    PlacementOutOfRange { placement: f64 },

    #[error("expected {expected} placement fractions (one per correction block), got {got}")]
    PlacementCountMismatch { expected: usize, got: usize },

    #[error(
        "constructed sequence fails its zero-error self-check (fidelity {fidelity} vs target)"
    )]
    TargetMismatch { fidelity: f64 },

    #[error(
        "invalid sample range: need lo < hi with count >= 2 (or lo == hi with count == 1){detail}"
    )]
    InvalidRange { detail: String },

    #[error("no crossover in bracket: fidelity difference is {d_lo:.3e} at the low end and {d_hi:.3e} at the high end (no sign change)")]
    BracketNoSignChange { d_lo: f64, d_hi: f64 },

    #[error("series fit residual {residual:.3e} exceeds 1e-10 even on the reduced window; samples are not polynomial to working precision")]
    FitResidual { residual: f64 },
}
