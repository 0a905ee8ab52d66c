//! Serialization of sequences and analysis results: CSV for data files,
//! JSON for sequence interchange.
//!
//! Data values are printed with 12 significant digits in minimal form
//! (no trailing zeros, no bare decimal point) so identical runs produce
//! byte-identical files.

use crate::analysis::{FidelityGrid, SweepResult};
use crate::pulse::PulseSequence;
use serde::{Deserialize, Serialize};

/// Format `x` with 12 significant digits, trimming trailing zeros:
/// `0` -> "0", `1.0` -> "1", `0.5` -> "0.5",
/// `0.9950066534132` -> "0.995006653413". Magnitudes outside the plain
/// decimal range fall back to e-notation with the same precision.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exponent) {
        let text = format!("{x:.11e}");
        let (mantissa, exp) = text
            .split_once('e')
            .expect("e-notation always has an exponent");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exp}");
    }
    let decimals = (11 - exponent).max(0) as usize;
    let text = format!("{x:.decimals$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        text
    }
}

/// CSV for a sweep: the composite sequence's fidelity next to the plain
/// baseline's at the same error values. Comma-separated, `\n` endings,
/// header row included.
pub fn sweep_csv(composite: &SweepResult, plain: &SweepResult) -> String {
    let mut out = String::from("error_value,fidelity_composite,fidelity_plain\n");
    for (&(e, fc), &(_, fp)) in composite.samples.iter().zip(&plain.samples) {
        out.push_str(&fmt_sig(e));
        out.push(',');
        out.push_str(&fmt_sig(fc));
        out.push(',');
        out.push_str(&fmt_sig(fp));
        out.push('\n');
    }
    out
}

/// Long-format CSV for a fidelity grid: one `f,g,fidelity` row per sample,
/// g varying slowest (row-major), ready for external contouring tools.
pub fn grid_csv(grid: &FidelityGrid) -> String {
    let mut out = String::from("f,g,fidelity\n");
    for (gi, &g) in grid.g_values.iter().enumerate() {
        for (fi, &f) in grid.f_values.iter().enumerate() {
            out.push_str(&fmt_sig(f));
            out.push(',');
            out.push_str(&fmt_sig(g));
            out.push(',');
            out.push_str(&fmt_sig(grid.at(gi, fi)));
            out.push('\n');
        }
    }
    out
}

/// One pulse in degrees, the interchange unit for sequence JSON.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PulseDeg {
    pub theta_deg: f64,
    pub phi_deg: f64,
}

/// A pulse sequence in interchange form. Field names and layout are fixed
/// so implementations in other languages can round-trip the files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SequenceDoc {
    pub pulses: Vec<PulseDeg>,
    pub target: PulseDeg,
    pub family: String,
}

impl From<&PulseSequence> for SequenceDoc {
    fn from(seq: &PulseSequence) -> SequenceDoc {
        let deg = |p: crate::pulse::Pulse| PulseDeg {
            theta_deg: p.theta().to_degrees(),
            phi_deg: p.phi().to_degrees(),
        };
        SequenceDoc {
            pulses: seq.pulses().iter().copied().map(deg).collect(),
            target: deg(seq.target()),
            family: seq.family().to_string(),
        }
    }
}

/// One sweep sample in interchange form.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SweepSampleDoc {
    pub error_value: f64,
    pub fidelity_composite: f64,
    pub fidelity_plain: f64,
}

/// A sweep (composite plus plain baseline) in interchange form, mirroring
/// the CSV columns.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepDoc {
    pub axis: String,
    pub sequence: String,
    pub samples: Vec<SweepSampleDoc>,
}

impl SweepDoc {
    pub fn new(composite: &SweepResult, plain: &SweepResult) -> SweepDoc {
        SweepDoc {
            axis: composite.axis.to_string(),
            sequence: composite.sequence_id.clone(),
            samples: composite
                .samples
                .iter()
                .zip(&plain.samples)
                .map(|(&(e, fc), &(_, fp))| SweepSampleDoc {
                    error_value: e,
                    fidelity_composite: fc,
                    fidelity_plain: fp,
                })
                .collect(),
        }
    }
}
