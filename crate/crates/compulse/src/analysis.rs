//! Fidelity analysis: 1-D sweeps, 2-D grids, even-power series extraction,
//! and crossover location.
//!
//! Everything here works on fidelity as a function of a single error
//! fraction (holding the other at zero) or of both at once. Fidelity is an
//! even function of either fraction alone, so series fits use even powers
//! only.

use crate::pulse::{sequence_quaternion, ErrorModel, PulseSequence};
use crate::Error;

/// Which systematic error is being varied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorAxis {
    /// Off-resonance fraction: axis tilts toward z, angle stretches.
    F,
    /// Pulse-length fraction: angle scales by `1 + g`.
    G,
}

impl ErrorAxis {
    /// The error model with `value` on this axis and zero on the other.
    pub fn model(self, value: f64) -> Result<ErrorModel, Error> {
        match self {
            ErrorAxis::F => ErrorModel::off_resonance(value),
            ErrorAxis::G => ErrorModel::pulse_length(value),
        }
    }
}

impl std::fmt::Display for ErrorAxis {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        out.write_str(match self {
            ErrorAxis::F => "f",
            ErrorAxis::G => "g",
        })
    }
}

/// Fidelity sampled along one error axis.
#[derive(Clone, Debug)]
pub struct SweepResult {
    pub axis: ErrorAxis,
    /// Human-readable identity of the swept sequence (its family label).
    pub sequence_id: String,
    /// `(error value, fidelity)` pairs in ascending error order.
    pub samples: Vec<(f64, f64)>,
}

/// Sample `seq`'s fidelity at `count` evenly spaced points on `[lo, hi]`.
/// `count == 1` is allowed as a degenerate single sample when `lo == hi`;
/// otherwise `lo < hi` and `count >= 2` are required. On the pulse-length
/// axis the range must stay above -1.
pub fn sweep(
    seq: &PulseSequence,
    axis: ErrorAxis,
    lo: f64,
    hi: f64,
    count: usize,
) -> Result<SweepResult, Error> {
    check_span(axis, lo, hi, count)?;
    let mut samples = Vec::with_capacity(count);
    for value in linspace(lo, hi, count) {
        samples.push((value, seq.fidelity_at(axis.model(value)?)));
    }
    Ok(SweepResult {
        axis,
        sequence_id: seq.family().to_string(),
        samples,
    })
}

/// Fidelity on a rectangular (f, g) grid, stored row-major with g as the
/// outer (row) index and f as the inner (column) index.
#[derive(Clone, Debug)]
pub struct FidelityGrid {
    pub f_values: Vec<f64>,
    pub g_values: Vec<f64>,
    fidelity: Vec<f64>,
}

impl FidelityGrid {
    /// Fidelity at row `gi` (pulse-length index), column `fi`
    /// (off-resonance index).
    pub fn at(&self, gi: usize, fi: usize) -> f64 {
        self.fidelity[gi * self.f_values.len() + fi]
    }

    /// The flat row-major sample buffer.
    pub fn values(&self) -> &[f64] {
        &self.fidelity
    }
}

/// Evaluate `seq`'s fidelity over the rectangle `f_span x g_span`, each
/// span given as `(lo, hi, count)` with the same rules as [`sweep`].
pub fn grid(
    seq: &PulseSequence,
    f_span: (f64, f64, usize),
    g_span: (f64, f64, usize),
) -> Result<FidelityGrid, Error> {
    check_span(ErrorAxis::F, f_span.0, f_span.1, f_span.2)?;
    check_span(ErrorAxis::G, g_span.0, g_span.1, g_span.2)?;
    let f_values = linspace(f_span.0, f_span.1, f_span.2);
    let g_values = linspace(g_span.0, g_span.1, g_span.2);
    let mut fidelity = Vec::with_capacity(f_values.len() * g_values.len());
    for &g in &g_values {
        for &f in &f_values {
            fidelity.push(seq.fidelity_at(ErrorModel::new(f, g)?));
        }
    }
    Ok(FidelityGrid {
        f_values,
        g_values,
        fidelity,
    })
}

/// Leading even-power coefficients of the fidelity series
/// `F(e) = c0 + c2 e^2 + c4 e^4 + c6 e^6 + c8 e^8 + ...` along one axis.
#[derive(Clone, Copy, Debug)]
pub struct SeriesCoefficients {
    pub axis: ErrorAxis,
    pub c0: f64,
    pub c2: f64,
    pub c4: f64,
    pub c6: f64,
    pub c8: f64,
    /// Largest absolute sample misfit of the polynomial model.
    pub fit_residual: f64,
}

/// Extract the even-power series of `seq`'s fidelity along `axis` by
/// least-squares over a narrow window around zero.
///
/// The fit uses 401 samples on `[-0.05, 0.05]`, even powers up to the
/// tenth in the scaled variable `u = e / 0.05`, and Householder QR. The
/// tenth-power term exists only to absorb series truncation so it does not
/// leak into `c8` and below; it is not reported. If the residual exceeds
/// 1e-10 the window shrinks to `[-0.02, 0.02]` and the fit is repeated;
/// a residual above the gate even then is an error, since every sequence
/// this crate builds is polynomial to working precision on such windows.
pub fn series_coefficients(
    seq: &PulseSequence,
    axis: ErrorAxis,
) -> Result<SeriesCoefficients, Error> {
    const POWERS: [i32; 6] = [0, 2, 4, 6, 8, 10];
    const SAMPLES: usize = 401;
    const GATE: f64 = 1e-10;

    let fit = |half_width: f64| -> Result<([f64; 6], f64), Error> {
        let mut us = Vec::with_capacity(SAMPLES);
        let mut y = Vec::with_capacity(SAMPLES);
        for i in 0..SAMPLES {
            let u = -1.0 + 2.0 * (i as f64) / ((SAMPLES - 1) as f64);
            us.push(u);
            y.push(seq.fidelity_at(axis.model(u * half_width)?));
        }
        let matrix: Vec<Vec<f64>> = us
            .iter()
            .map(|&u| POWERS.iter().map(|&p| u.powi(p)).collect())
            .collect();
        let a = least_squares(matrix, y.clone());
        let mut residual = 0.0f64;
        for (&u, &yi) in us.iter().zip(&y) {
            let fitted: f64 = POWERS.iter().zip(&a).map(|(&p, &c)| c * u.powi(p)).sum();
            residual = residual.max((fitted - yi).abs());
        }
        // undo the u = e / half_width scaling
        let mut scaled = [0.0; 6];
        for (slot, (&p, &c)) in scaled.iter_mut().zip(POWERS.iter().zip(&a)) {
            *slot = c / half_width.powi(p);
        }
        Ok((scaled, residual))
    };

    let (mut c, mut residual) = fit(0.05)?;
    if residual > GATE {
        (c, residual) = fit(0.02)?;
    }
    if residual > GATE {
        return Err(Error::FitResidual { residual });
    }
    Ok(SeriesCoefficients {
        axis,
        c0: c[0],
        c2: c[1],
        c4: c[2],
        c6: c[3],
        c8: c[4],
        fit_residual: residual,
    })
}

/// Find where `seq` and `baseline` have equal fidelity along `axis` inside
/// `bracket`, by bisection to an interval of width 1e-5 (midpoint
/// returned). The fidelity difference must change sign strictly across the
/// bracket.
pub fn crossover(
    seq: &PulseSequence,
    baseline: &PulseSequence,
    axis: ErrorAxis,
    bracket: (f64, f64),
) -> Result<f64, Error> {
    let (mut lo, mut hi) = bracket;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidRange {
            detail: format!("; crossover bracket ({lo}, {hi}) needs lo < hi"),
        });
    }
    let diff = |e: f64| -> Result<f64, Error> {
        let model = axis.model(e)?;
        Ok(seq.fidelity_at(model) - baseline.fidelity_at(model))
    };
    let mut d_lo = diff(lo)?;
    let d_hi = diff(hi)?;
    if d_lo * d_hi >= 0.0 {
        return Err(Error::BracketNoSignChange { d_lo, d_hi });
    }
    while hi - lo > 1e-5 {
        let mid = 0.5 * (lo + hi);
        let d_mid = diff(mid)?;
        if d_mid == 0.0 {
            return Ok(mid);
        }
        if (d_mid > 0.0) == (d_lo > 0.0) {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Derivative of the composite quaternion's components `[s, vx, vy, vz]`
/// with respect to the error fraction at zero, sign-aligned to the target
/// so the double cover cannot fake a jump. Central differences with one
/// Richardson step; accurate to ~1e-10 for these smooth maps.
///
/// A fully compensating sequence returns (near) zeros in every component
/// the target itself has; first-order sensitivity shows up as a nonzero
/// entry (a plain half-turn about x, for instance, puts its entire
/// first-order off-resonance response in the z component).
pub fn first_order_deviation(seq: &PulseSequence, axis: ErrorAxis) -> [f64; 4] {
    let target = seq.target_quaternion();
    let components = |e: f64| -> [f64; 4] {
        let q = sequence_quaternion(seq, axis.model(e).expect("step stays in range"))
            .aligned_with(target);
        [q.s, q.v[0], q.v[1], q.v[2]]
    };
    let central = |h: f64| -> [f64; 4] {
        let plus = components(h);
        let minus = components(-h);
        [
            (plus[0] - minus[0]) / (2.0 * h),
            (plus[1] - minus[1]) / (2.0 * h),
            (plus[2] - minus[2]) / (2.0 * h),
            (plus[3] - minus[3]) / (2.0 * h),
        ]
    };
    let h = 1e-5;
    let coarse = central(h);
    let fine = central(h / 2.0);
    [
        (4.0 * fine[0] - coarse[0]) / 3.0,
        (4.0 * fine[1] - coarse[1]) / 3.0,
        (4.0 * fine[2] - coarse[2]) / 3.0,
        (4.0 * fine[3] - coarse[3]) / 3.0,
    ]
}

fn check_span(axis: ErrorAxis, lo: f64, hi: f64, count: usize) -> Result<(), Error> {
    let fail = |detail: String| Err(Error::InvalidRange { detail });
    if !lo.is_finite() || !hi.is_finite() {
        return fail(format!("; bounds ({lo}, {hi}) must be finite"));
    }
    match count {
        0 => return fail("; count must be at least 1".to_owned()),
        1 if lo != hi => {
            return fail(format!(
                "; a single sample needs lo == hi, got ({lo}, {hi})"
            ))
        }
        _ if count >= 2 && lo >= hi => {
            return fail(format!("; got lo = {lo}, hi = {hi} with count = {count}"))
        }
        _ => {}
    }
    if axis == ErrorAxis::G && lo <= -1.0 {
        return fail(format!(
            "; pulse-length fraction must stay above -1, got lo = {lo}"
        ));
    }
    Ok(())
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / ((count - 1) as f64);
    (0..count).map(|i| lo + step * (i as f64)).collect()
}

/// Least-squares solution of an overdetermined `A x = y` by Householder QR
/// with back substitution. `matrix` is row-major, rows >= columns, and must
/// have full column rank (true for a Vandermonde-style basis on distinct
/// nodes, which is the only caller).
fn least_squares(mut matrix: Vec<Vec<f64>>, mut y: Vec<f64>) -> Vec<f64> {
    let rows = matrix.len();
    let cols = matrix[0].len();
    debug_assert!(rows >= cols);
    for k in 0..cols {
        let mut sigma = 0.0;
        for row in matrix.iter().skip(k) {
            sigma += row[k] * row[k];
        }
        let mut alpha = sigma.sqrt();
        if alpha == 0.0 {
            continue;
        }
        if matrix[k][k] > 0.0 {
            alpha = -alpha;
        }
        let mut v = Vec::with_capacity(rows - k);
        v.push(matrix[k][k] - alpha);
        for row in matrix.iter().skip(k + 1) {
            v.push(row[k]);
        }
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        matrix[k][k] = alpha;
        for row in matrix.iter_mut().skip(k + 1) {
            row[k] = 0.0;
        }
        if vtv == 0.0 {
            continue;
        }
        for j in (k + 1)..cols {
            let mut dot = 0.0;
            for (i, row) in matrix.iter().enumerate().skip(k) {
                dot += v[i - k] * row[j];
            }
            let scale = 2.0 * dot / vtv;
            for (i, row) in matrix.iter_mut().enumerate().skip(k) {
                row[j] -= scale * v[i - k];
            }
        }
        let mut dot = 0.0;
        for (i, yi) in y.iter().enumerate().skip(k) {
            dot += v[i - k] * yi;
        }
        let scale = 2.0 * dot / vtv;
        for (i, yi) in y.iter_mut().enumerate().skip(k) {
            *yi -= scale * v[i - k];
        }
    }
    let mut x = vec![0.0; cols];
    for k in (0..cols).rev() {
        let mut s = y[k];
        for j in (k + 1)..cols {
            s -= matrix[k][j] * x[j];
        }
        x[k] = s / matrix[k][k];
    }
    x
}
