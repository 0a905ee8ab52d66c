//! Pulses, systematic-error settings, and pulse-sequence evaluation.
//!
//! A pulse nominally rotates by `theta` about the in-plane axis
//! `(cos phi, sin phi, 0)`. Under an off-resonance fraction `f` the axis
//! tilts to `(cos phi, sin phi, f)/sqrt(1+f^2)` and the angle stretches by
//! `sqrt(1+f^2)`; under a pulse-length fraction `g` the angle is scaled by
//! `(1+g)`. Both at once compose as `theta' = theta (1+g) sqrt(1+f^2)`
//! with the tilted axis: the mis-set duration acts on the tilted effective
//! field, which reduces exactly to each single-error model and keeps
//! length-error behaviour independent of axis tilt.

use crate::rotor::{Quaternion, RotationMatrix};
use crate::Error;
use std::f64::consts::TAU;

/// One RF pulse: nominal rotation angle `theta >= 0` (radians; 0 is a
/// degenerate identity pulse) and phase `phi` stored normalized to
/// `[0, 2 pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pulse {
    theta: f64,
    phi: f64,
}

impl Pulse {
    pub fn new(theta: f64, phi: f64) -> Result<Pulse, Error> {
        if !theta.is_finite() || theta < 0.0 {
            return Err(Error::InvalidPulseAngle { theta });
        }
        Ok(Pulse {
            theta,
            phi: phi.rem_euclid(TAU),
        })
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn phi(self) -> f64 {
        self.phi
    }
}

/// A systematic-error setting: off-resonance fraction `f` (frequency offset
/// over nutation rate; only the ratio matters) and pulse-length fraction
/// `g > -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorModel {
    f: f64,
    g: f64,
}

impl ErrorModel {
    /// The error-free setting.
    pub const NONE: ErrorModel = ErrorModel { f: 0.0, g: 0.0 };

    pub fn new(f: f64, g: f64) -> Result<ErrorModel, Error> {
        if !f.is_finite() {
            return Err(Error::InvalidOffResonance { f });
        }
        if !g.is_finite() || g <= -1.0 {
            return Err(Error::InvalidPulseLength { g });
        }
        Ok(ErrorModel { f, g })
    }

    pub fn off_resonance(f: f64) -> Result<ErrorModel, Error> {
        ErrorModel::new(f, 0.0)
    }

    pub fn pulse_length(g: f64) -> Result<ErrorModel, Error> {
        ErrorModel::new(0.0, g)
    }

    pub fn f(self) -> f64 {
        self.f
    }

    pub fn g(self) -> f64 {
        self.g
    }
}

/// Which composite family a sequence came from; carried along for
/// serialization and reporting.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Plain,
    Corpse {
        n1: i32,
        n2: i32,
        n3: i32,
    },
    Scrofulous,
    /// A target pulse with `n` net-identity correction blocks inserted at
    /// the given placement fractions (BB1 and relatives).
    WnCorrected {
        n: u32,
        placements: Vec<f64>,
    },
}

impl std::fmt::Display for Family {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Plain => write!(out, "plain"),
            Family::Corpse { n1, n2, n3 } => write!(out, "corpse({n1},{n2},{n3})"),
            Family::Scrofulous => write!(out, "scrofulous"),
            Family::WnCorrected { n, placements } => {
                write!(out, "bb1(n={n} at ")?;
                for (i, p) in placements.iter().enumerate() {
                    if i > 0 {
                        write!(out, ";")?;
                    }
                    write!(out, "{p}")?;
                }
                write!(out, ")")
            }
        }
    }
}

/// The tilted axis and stretched angle a pulse actually realizes under an
/// error setting. Shared by the quaternion and matrix evaluation paths.
fn actual_axis_angle(p: Pulse, e: ErrorModel) -> ([f64; 3], f64) {
    let stretch = (1.0 + e.f * e.f).sqrt();
    let axis = [p.phi.cos() / stretch, p.phi.sin() / stretch, e.f / stretch];
    (axis, p.theta * (1.0 + e.g) * stretch)
}

/// The quaternion a single pulse actually implements under `e`.
pub fn pulse_quaternion(p: Pulse, e: ErrorModel) -> Quaternion {
    let (axis, angle) = actual_axis_angle(p, e);
    let (sin, cos) = (angle / 2.0).sin_cos();
    Quaternion {
        s: cos,
        v: [sin * axis[0], sin * axis[1], sin * axis[2]],
    }
}

/// An ordered pulse list together with the ideal rotation it implements.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseSequence {
    pulses: Vec<Pulse>,
    target: Pulse,
    family: Family,
}

impl PulseSequence {
    /// A sequence must be non-empty; family constructors additionally check
    /// that the zero-error composite reproduces the target.
    pub fn new(pulses: Vec<Pulse>, target: Pulse, family: Family) -> Result<PulseSequence, Error> {
        if pulses.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(PulseSequence {
            pulses,
            target,
            family,
        })
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn target(&self) -> Pulse {
        self.target
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// The ideal rotation this sequence is meant to implement.
    pub fn target_quaternion(&self) -> Quaternion {
        pulse_quaternion(self.target, ErrorModel::NONE)
    }

    /// Fidelity of the sequence under `e` against its own ideal target.
    pub fn fidelity_at(&self, e: ErrorModel) -> f64 {
        sequence_quaternion(self, e).fidelity(self.target_quaternion())
    }
}

/// Left-to-right temporal composition of the whole sequence under `e`.
pub fn sequence_quaternion(seq: &PulseSequence, e: ErrorModel) -> Quaternion {
    seq.pulses.iter().fold(Quaternion::IDENTITY, |acc, &p| {
        acc.then(pulse_quaternion(p, e))
    })
}

/// The same composite rotation evaluated entirely through Rodrigues
/// matrices: an independent path for cross-checking [`sequence_quaternion`].
pub fn sequence_matrix(seq: &PulseSequence, e: ErrorModel) -> RotationMatrix {
    seq.pulses.iter().fold(RotationMatrix::IDENTITY, |acc, &p| {
        let (axis, angle) = actual_axis_angle(p, e);
        acc.then(
            RotationMatrix::from_axis_angle(angle, axis).expect("axis is unit by construction"),
        )
    })
}
