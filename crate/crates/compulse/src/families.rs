//! Synthesis of the three composite-pulse families.
//!
//! Each builder returns a [`PulseSequence`] whose zero-error composite is
//! checked against the target rotation (fidelity 1 within 1e-9) before the
//! sequence is handed out; a failure there means a bug, not bad input.

use crate::pulse::{ErrorModel, Family, Pulse, PulseSequence};
use crate::Error;
use std::f64::consts::{PI, TAU};

/// Integer indices selecting one member of the CORPSE family. The standard
/// choice is `(1,1,0)`; `(0,1,0)` is the shorter variant with the same
/// second-order cancellation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpseIndices {
    pub n1: i32,
    pub n2: i32,
    pub n3: i32,
}

impl CorpseIndices {
    pub const STANDARD: CorpseIndices = CorpseIndices {
        n1: 1,
        n2: 1,
        n3: 0,
    };
    pub const SHORT: CorpseIndices = CorpseIndices {
        n1: 0,
        n2: 1,
        n3: 0,
    };

    pub fn new(n1: i32, n2: i32, n3: i32) -> CorpseIndices {
        CorpseIndices { n1, n2, n3 }
    }

    /// `n1 - n2 + n3`, the only combination the fourth-order off-resonance
    /// term depends on.
    pub fn n(self) -> i32 {
        self.n1 - self.n2 + self.n3
    }
}

/// The three nominal rotation angles of a CORPSE sequence for target angle
/// `theta` (radians, in `[0, 2 pi]`):
///
/// ```text
/// theta1 = 2 pi n1 + theta/2 - k
/// theta2 = 2 pi n2 - 2 k          where k = arcsin(sin(theta/2) / 2)
/// theta3 = 2 pi n3 + theta/2 - k
/// ```
///
/// Pulse phases are fixed at (+x, -x, +x). Index triples that would make
/// any angle negative are rejected with the offending pulse named; an angle
/// of exactly zero is allowed and emitted as a degenerate pulse.
pub fn corpse_angles(theta: f64, idx: CorpseIndices) -> Result<[f64; 3], Error> {
    check_theta_range(theta, 0.0, TAU)?;
    let k = ((theta / 2.0).sin() / 2.0).asin();
    let angles = [
        TAU * f64::from(idx.n1) + theta / 2.0 - k,
        TAU * f64::from(idx.n2) - 2.0 * k,
        TAU * f64::from(idx.n3) + theta / 2.0 - k,
    ];
    for (i, &a) in angles.iter().enumerate() {
        if a < 0.0 {
            return Err(Error::NegativeCorpseAngle {
                pulse: i + 1,
                theta_deg: a.to_degrees(),
            });
        }
    }
    Ok(angles)
}

/// Inverse of `sinc(x) = sin(x)/x` on the branch `(0, pi]`, where sinc
/// decreases monotonically from 1 to 0. Solved by bisection to 1e-12;
/// accepts `y` in `[0, 1)`.
pub fn arcsinc(y: f64) -> Result<f64, Error> {
    if !y.is_finite() || !(0.0..1.0).contains(&y) {
        return Err(Error::ArcsincDomain { y });
    }
    if y == 0.0 {
        return Ok(PI);
    }
    let (mut lo, mut hi) = (0.0f64, PI);
    // invariant: sinc(lo) > y >= sinc(hi), with sinc(0) read as the limit 1
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid.sin() / mid > y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Which sign to take in the SCROFULOUS phase equation. The two choices
/// give mirror-image sequences (all phases negated) with identical
/// fidelity behaviour; `Minus` is the conventional one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhaseBranch {
    #[default]
    Minus,
    Plus,
}

/// SCROFULOUS pulse parameters: the sequence is
/// `(theta1, phi1) (theta2, phi2) (theta1, phi1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScrofulousParams {
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
}

/// SCROFULOUS parameters for target angle `theta` (radians, in `(0, pi]`)
/// with the conventional minus-branch phases:
///
/// ```text
/// theta1 = arcsinc(2 cos(theta/2) / pi)
/// phi1   = arccos(-pi cos(theta1) / (2 theta1 sin(theta/2)))
/// theta2 = pi
/// phi2   = phi1 - arccos(-pi / (2 theta1))
/// ```
pub fn scrofulous_params(theta: f64) -> Result<ScrofulousParams, Error> {
    scrofulous_params_with_branch(theta, PhaseBranch::Minus)
}

/// Like [`scrofulous_params`] but selecting the phase branch. `Plus` takes
/// the complementary arccos branch for `phi1` and adds (rather than
/// subtracts) the `phi2` offset, which negates every phase jointly.
pub fn scrofulous_params_with_branch(
    theta: f64,
    branch: PhaseBranch,
) -> Result<ScrofulousParams, Error> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(Error::ThetaOutOfRange {
            theta_deg: theta.to_degrees(),
            lo_deg: 0.0,
            hi_deg: 180.0,
        });
    }
    check_theta_range(theta, 0.0, PI)?;
    let theta1 = arcsinc(2.0 * (theta / 2.0).cos() / PI)?;
    let phi1_minus = checked_acos(-PI * theta1.cos() / (2.0 * theta1 * (theta / 2.0).sin()))?;
    let step = checked_acos(-PI / (2.0 * theta1))?;
    let (phi1, phi2) = match branch {
        PhaseBranch::Minus => (phi1_minus, phi1_minus - step),
        PhaseBranch::Plus => (TAU - phi1_minus, TAU - phi1_minus + step),
    };
    Ok(ScrofulousParams {
        theta1,
        phi1: phi1.rem_euclid(TAU),
        theta2: PI,
        phi2: phi2.rem_euclid(TAU),
    })
}

/// Phases of one Wn correction block for target angle `theta` (radians, in
/// `[0, 2 pi]`) split across `n >= 1` identical blocks:
/// `phi1 = arccos(-theta / (4 n pi))` (positive branch), `phi2 = 3 phi1`.
/// The block itself is `180_{phi1} 360_{phi2} 180_{phi1}`, a net identity
/// when errors vanish.
pub fn wn_phases(theta: f64, n: u32) -> Result<(f64, f64), Error> {
    if n == 0 {
        return Err(Error::InvalidBlockCount);
    }
    check_theta_range(theta, 0.0, TAU)?;
    let phi1 = checked_acos(-theta / (4.0 * f64::from(n) * PI))?;
    Ok((phi1, (3.0 * phi1).rem_euclid(TAU)))
}

/// A single pulse presented as a sequence: the baseline every composite is
/// compared against.
pub fn build_plain(theta: f64, phi: f64) -> Result<PulseSequence, Error> {
    let p = Pulse::new(theta, phi)?;
    checked(PulseSequence::new(vec![p], p, Family::Plain)?)
}

/// The CORPSE sequence for target `theta` about x: three pulses with angles
/// from [`corpse_angles`] and phases (+x, -x, +x). Cancels the second-order
/// off-resonance term; behaves exactly like a plain pulse under pure
/// length error.
pub fn build_corpse(theta: f64, idx: CorpseIndices) -> Result<PulseSequence, Error> {
    let [t1, t2, t3] = corpse_angles(theta, idx)?;
    let pulses = vec![
        Pulse::new(t1, 0.0)?,
        Pulse::new(t2, PI)?,
        Pulse::new(t3, 0.0)?,
    ];
    let seq = PulseSequence::new(
        pulses,
        Pulse::new(theta, 0.0)?,
        Family::Corpse {
            n1: idx.n1,
            n2: idx.n2,
            n3: idx.n3,
        },
    )?;
    checked(seq)
}

/// The SCROFULOUS sequence for target `theta` about x. Cancels the
/// first-order pulse-length term.
pub fn build_scrofulous(theta: f64) -> Result<PulseSequence, Error> {
    build_scrofulous_with_branch(theta, PhaseBranch::Minus)
}

/// [`build_scrofulous`] with an explicit phase branch.
pub fn build_scrofulous_with_branch(
    theta: f64,
    branch: PhaseBranch,
) -> Result<PulseSequence, Error> {
    let p = scrofulous_params_with_branch(theta, branch)?;
    let outer = Pulse::new(p.theta1, p.phi1)?;
    let seq = PulseSequence::new(
        vec![outer, Pulse::new(p.theta2, p.phi2)?, outer],
        Pulse::new(theta, 0.0)?,
        Family::Scrofulous,
    )?;
    checked(seq)
}

/// A target `theta` rotation about x with `n` identical Wn correction
/// blocks inserted. Each placement fraction `p` puts one block after the
/// first `p * theta` of the target rotation; zero-length target segments
/// are dropped. Placement `[0]` is the original block-in-front form,
/// `[0.5]` the time-symmetric form, `[1]` the block-behind form; the
/// pulse-length response is identical for every placement. Cancels
/// pulse-length terms below sixth order.
pub fn build_bb1(theta: f64, n: u32, placements: &[f64]) -> Result<PulseSequence, Error> {
    if n == 0 {
        return Err(Error::InvalidBlockCount);
    }
    if placements.len() != n as usize {
        return Err(Error::PlacementCountMismatch {
            expected: n as usize,
            got: placements.len(),
        });
    }
    for &p in placements {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::PlacementOutOfRange { placement: p });
        }
    }
    let (phi1, phi2) = wn_phases(theta, n)?;
    let mut sorted = placements.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("placements are finite"));

    let mut pulses = Vec::with_capacity(3 * n as usize + n as usize + 1);
    let mut done = 0.0;
    for &p in &sorted {
        let segment = (p - done) * theta;
        if segment > 0.0 {
            pulses.push(Pulse::new(segment, 0.0)?);
        }
        pulses.push(Pulse::new(PI, phi1)?);
        pulses.push(Pulse::new(TAU, phi2)?);
        pulses.push(Pulse::new(PI, phi1)?);
        done = p;
    }
    let tail = (1.0 - done) * theta;
    if tail > 0.0 {
        pulses.push(Pulse::new(tail, 0.0)?);
    }
    let seq = PulseSequence::new(
        pulses,
        Pulse::new(theta, 0.0)?,
        Family::WnCorrected {
            n,
            placements: sorted,
        },
    )?;
    checked(seq)
}

/// The same sequence rotated about a new azimuth: every pulse phase and the
/// target phase shifted by `delta_phi`. Fidelity behaviour is unchanged.
pub fn offset_phases(seq: &PulseSequence, delta_phi: f64) -> PulseSequence {
    let shift = |p: Pulse| Pulse::new(p.theta(), p.phi() + delta_phi).expect("angle unchanged");
    let pulses = seq.pulses().iter().copied().map(shift).collect();
    PulseSequence::new(pulses, shift(seq.target()), seq.family().clone())
        .expect("sequence stays non-empty")
}

fn check_theta_range(theta: f64, lo: f64, hi: f64) -> Result<(), Error> {
    if !theta.is_finite() || theta < lo || theta > hi {
        return Err(Error::ThetaOutOfRange {
            theta_deg: theta.to_degrees(),
            lo_deg: lo.to_degrees(),
            hi_deg: hi.to_degrees(),
        });
    }
    Ok(())
}

fn checked_acos(x: f64) -> Result<f64, Error> {
    // tolerate float dust at the domain edges, reject anything real
    if !x.is_finite() || x.abs() > 1.0 + 1e-9 {
        return Err(Error::ArccosDomain { x });
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// Zero-error self-check every builder runs before returning a sequence.
fn checked(seq: PulseSequence) -> Result<PulseSequence, Error> {
    let fidelity = seq.fidelity_at(ErrorModel::NONE);
    if fidelity < 1.0 - 1e-9 {
        return Err(Error::TargetMismatch { fidelity });
    }
    Ok(seq)
}
