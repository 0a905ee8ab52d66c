//! Acceptance gate: ten numbered criteria covering table reproduction,
//! series cancellations, crossovers, structural invariants, figure-level
//! grid checks, oracle equivalence, and end-to-end verification runtime.
//! One line is printed per criterion; the process exits nonzero if any
//! criterion fails.
//!
//! Criterion 03 is expected to fail: the published phase table's
//! 45-degree phi2 entry (280.8) is 3 x the already-rounded phi1 (93.6)
//! instead of the rounded true product (280.74997 -> 280.7), which puts it
//! 0.05003 degrees from the computed value, just past the 0.05 tolerance
//! that all 31 other table entries meet. The implementation stays faithful
//! to the defining equations rather than to one inconsistently rounded
//! entry.

use compulse::analysis::{crossover, grid, series_coefficients, sweep, ErrorAxis};
use compulse::families::{
    build_bb1, build_corpse, build_plain, build_scrofulous, corpse_angles, scrofulous_params,
    wn_phases, CorpseIndices,
};
use compulse::pulse::{
    sequence_matrix, sequence_quaternion, ErrorModel, Family, Pulse, PulseSequence,
};
use compulse::report::grid_csv;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

const DEG: f64 = PI / 180.0;

struct Criterion {
    number: u32,
    passed: bool,
    detail: String,
}

type Body = Result<(bool, String), Box<dyn std::error::Error>>;

fn criterion(number: u32, body: impl FnOnce() -> Body) -> Criterion {
    match body() {
        Ok((passed, detail)) => Criterion {
            number,
            passed,
            detail,
        },
        Err(e) => Criterion {
            number,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn main() {
    let results = vec![
        criterion(1, corpse_table),
        criterion(2, scrofulous_table),
        criterion(3, w1_table),
        criterion(4, plain_curvature_baseline),
        criterion(5, crossovers),
        criterion(6, cancellation_suite),
        criterion(7, structural_claims),
        criterion(8, figure_grids),
        criterion(9, oracle_equivalence),
        criterion(10, verify_runtime),
    ];
    let mut failed = 0;
    for c in &results {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("criterion {:02} {tag}: {}", c.number, c.detail);
        if !c.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}

fn corpse_table() -> Body {
    let printed: [(f64, [f64; 3]); 4] = [
        (30.0, [367.6, 345.1, 7.6]),
        (45.0, [371.5, 337.9, 11.5]),
        (90.0, [384.3, 318.6, 24.3]),
        (180.0, [420.0, 300.0, 60.0]),
    ];
    let start = Instant::now();
    let computed: Vec<[f64; 3]> = printed
        .iter()
        .map(|&(theta, _)| corpse_angles(theta * DEG, CorpseIndices::STANDARD))
        .collect::<Result<_, _>>()?;
    let elapsed = start.elapsed();
    let mut worst = 0.0f64;
    for ((_, row), angles) in printed.iter().zip(&computed) {
        for (a, p) in angles.iter().zip(row) {
            worst = worst.max((a.to_degrees() - p).abs());
        }
    }
    Ok((
        worst <= 0.05 && elapsed < Duration::from_millis(1),
        format!(
            "12 three-pulse angles within {worst:.5} deg of the published table (limit 0.05) in {:?} (limit 1 ms)",
            elapsed
        ),
    ))
}

fn scrofulous_table() -> Body {
    let printed: [(f64, [f64; 4]); 4] = [
        (30.0, [93.0, 78.6, 180.0, 273.3]),
        (45.0, [96.7, 73.4, 180.0, 274.9]),
        (90.0, [115.2, 62.0, 180.0, 280.6]),
        (180.0, [180.0, 60.0, 180.0, 300.0]),
    ];
    let start = Instant::now();
    let computed: Vec<[f64; 4]> = printed
        .iter()
        .map(|&(theta, _)| {
            scrofulous_params(theta * DEG).map(|p| [p.theta1, p.phi1, p.theta2, p.phi2])
        })
        .collect::<Result<_, _>>()?;
    let elapsed = start.elapsed();
    let mut worst = 0.0f64;
    for ((_, row), params) in printed.iter().zip(&computed) {
        for (a, p) in params.iter().zip(row) {
            worst = worst.max((a.to_degrees() - p).abs());
        }
    }
    Ok((
        worst <= 0.05 && elapsed < Duration::from_millis(10),
        format!(
            "16 pulse parameters within {worst:.5} deg of the published table (limit 0.05) in {:?} (limit 10 ms)",
            elapsed
        ),
    ))
}

fn w1_table() -> Body {
    let printed: [(f64, [f64; 2]); 4] = [
        (30.0, [92.4, 277.2]),
        (45.0, [93.6, 280.8]),
        (90.0, [97.2, 291.5]),
        (180.0, [104.5, 313.4]),
    ];
    let start = Instant::now();
    let computed: Vec<(f64, f64)> = printed
        .iter()
        .map(|&(theta, _)| wn_phases(theta * DEG, 1))
        .collect::<Result<_, _>>()?;
    let elapsed = start.elapsed();
    let mut worst = 0.0f64;
    let mut worst_entry = String::new();
    for ((theta, row), (phi1, phi2)) in printed.iter().zip(&computed) {
        for ((computed_v, printed_v), label) in [phi1, phi2].iter().zip(row).zip(["phi1", "phi2"]) {
            let dev = (computed_v.to_degrees() - printed_v).abs();
            if dev > worst {
                worst = dev;
                worst_entry = format!(
                    "{theta} deg {label} computed {:.5} vs published {printed_v}",
                    computed_v.to_degrees()
                );
            }
        }
    }
    Ok((
        worst <= 0.05 && elapsed < Duration::from_millis(1),
        format!(
            "8 correction phases, worst {worst:.5} deg from the published table (limit 0.05) at {worst_entry}; \
             the published 280.8 is 3 x the rounded 93.6, while the unrounded product rounds to 280.7; computed in {:?} (limit 1 ms)",
            elapsed
        ),
    ))
}

fn plain_curvature_baseline() -> Body {
    let mut worst = 0.0f64;
    for deg in [30.0, 90.0, 180.0] {
        let c = series_coefficients(&build_plain(deg * DEG, 0.0)?, ErrorAxis::F)?;
        let expected = ((deg * DEG).cos() - 1.0) / 4.0;
        worst = worst.max((c.c2 - expected).abs());
    }
    Ok((
        worst <= 1e-6,
        format!("plain-pulse c2(f) matches (cos theta - 1)/4 within {worst:.2e} (limit 1e-6)"),
    ))
}

fn crossovers() -> Body {
    let x180 = crossover(
        &build_corpse(PI, CorpseIndices::STANDARD)?,
        &build_plain(PI, 0.0)?,
        ErrorAxis::F,
        (0.05, 1.0),
    )?;
    let x30 = crossover(
        &build_corpse(30.0 * DEG, CorpseIndices::STANDARD)?,
        &build_plain(30.0 * DEG, 0.0)?,
        ErrorAxis::F,
        (0.05, 1.0),
    )?;
    Ok((
        (x180 - 0.663).abs() <= 0.001 && (x30 - 0.297).abs() <= 0.001,
        format!("equal-fidelity points f = {x180:.6} (0.663 +/- 0.001) and f = {x30:.6} (0.297 +/- 0.001)"),
    ))
}

fn cancellation_suite() -> Body {
    let mut corpse_c2 = 0.0f64;
    let mut scrof_c2 = 0.0f64;
    let mut bb1_low = 0.0f64;
    let mut bb1_c6 = f64::INFINITY;
    for deg in [30.0, 90.0, 180.0] {
        let theta = deg * DEG;
        corpse_c2 = corpse_c2.max(
            series_coefficients(&build_corpse(theta, CorpseIndices::STANDARD)?, ErrorAxis::F)?
                .c2
                .abs(),
        );
        scrof_c2 = scrof_c2.max(
            series_coefficients(&build_scrofulous(theta)?, ErrorAxis::G)?
                .c2
                .abs(),
        );
        let bb1 = series_coefficients(&build_bb1(theta, 1, &[0.5])?, ErrorAxis::G)?;
        bb1_low = bb1_low.max(bb1.c2.abs()).max(bb1.c4.abs());
        bb1_c6 = bb1_c6.min(bb1.c6.abs());
    }
    let scrof_f = series_coefficients(&build_scrofulous(PI)?, ErrorAxis::F)?;
    let passed = corpse_c2 < 1e-8
        && scrof_c2 < 1e-8
        && bb1_low < 1e-8
        && bb1_c6 > 1e-3
        && (scrof_f.c2 + 2.0).abs() <= 1e-6;
    Ok((
        passed,
        format!(
            "cancelled orders below 1e-8: corpse c2(f) {corpse_c2:.2e}, scrofulous c2(g) {scrof_c2:.2e}, \
             bb1 c2/c4(g) {bb1_low:.2e} with surviving |c6| >= {bb1_c6:.3}; scrofulous-180 c2(f) = {:.9}",
            scrof_f.c2
        ),
    ))
}

fn structural_claims() -> Body {
    // correction-block placement invariance
    let reference = sweep(&build_bb1(PI, 1, &[0.0])?, ErrorAxis::G, -0.5, 0.5, 101)?;
    let mut placement_gap = 0.0f64;
    for p in [0.25, 0.5, 1.0] {
        let moved = sweep(&build_bb1(PI, 1, &[p])?, ErrorAxis::G, -0.5, 0.5, 101)?;
        for (&(_, a), &(_, b)) in reference.samples.iter().zip(&moved.samples) {
            placement_gap = placement_gap.max((a - b).abs());
        }
    }
    // corpse under pure length error behaves exactly like a plain pulse
    let corpse_g = sweep(
        &build_corpse(PI, CorpseIndices::STANDARD)?,
        ErrorAxis::G,
        -0.9,
        1.0,
        96,
    )?;
    let plain_g = sweep(&build_plain(PI, 0.0)?, ErrorAxis::G, -0.9, 1.0, 96)?;
    let mut corpse_gap = 0.0f64;
    for (&(_, a), &(_, b)) in corpse_g.samples.iter().zip(&plain_g.samples) {
        corpse_gap = corpse_gap.max((a - b).abs());
    }
    // fourth-order off-resonance term depends only on the index sum
    let c4_for = |idx: CorpseIndices| -> Result<f64, compulse::Error> {
        Ok(series_coefficients(&build_corpse(PI, idx)?, ErrorAxis::F)?.c4)
    };
    let same_n = [
        c4_for(CorpseIndices::new(1, 1, 0))?,
        c4_for(CorpseIndices::new(2, 2, 0))?,
        c4_for(CorpseIndices::new(1, 2, 1))?,
    ];
    let spread = same_n.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x))
        - same_n.iter().fold(f64::INFINITY, |m, &x| m.min(x));
    let minimized = same_n[0].abs() < c4_for(CorpseIndices::new(0, 1, 0))?.abs()
        && same_n[0].abs() < c4_for(CorpseIndices::new(1, 1, 1))?.abs();
    // two correction blocks shrink the sixth-order term
    let c6_one = series_coefficients(&build_bb1(PI, 1, &[0.5])?, ErrorAxis::G)?.c6;
    let c6_two = series_coefficients(&build_bb1(PI, 2, &[0.5, 0.5])?, ErrorAxis::G)?.c6;
    let passed = placement_gap <= 1e-10
        && corpse_gap <= 1e-12
        && spread <= 1e-6
        && minimized
        && c6_two.abs() < c6_one.abs();
    Ok((
        passed,
        format!(
            "placement gap {placement_gap:.2e} (limit 1e-10); corpse-vs-plain g gap {corpse_gap:.2e} (limit 1e-12); \
             c4(f) index-sum spread {spread:.2e} (limit 1e-6), minimized at zero sum: {minimized}; \
             |c6| {:.3} (two blocks) < {:.3} (one)",
            c6_two.abs(),
            c6_one.abs()
        ),
    ))
}

fn figure_grids() -> Body {
    let dir = tempfile::tempdir()?;
    let f_span = (-1.0, 1.0, 201);
    let g_span = (-0.99, 1.0, 200);
    let (fi0, gi0) = (100usize, 99usize);
    let threshold = 0.95;

    let families: [(&str, PulseSequence); 4] = [
        ("plain", build_plain(PI, 0.0)?),
        ("corpse", build_corpse(PI, CorpseIndices::STANDARD)?),
        ("scrofulous", build_scrofulous(PI)?),
        ("bb1", build_bb1(PI, 1, &[0.5])?),
    ];
    let mut mirror_worst = 0.0f64;
    let mut maxima_ok = true;
    let mut fractions = Vec::new();
    let mut bytes_written = 0usize;
    for (label, seq) in &families {
        let sampled = grid(seq, f_span, g_span)?;
        let csv = grid_csv(&sampled);
        bytes_written += csv.len();
        std::fs::write(dir.path().join(format!("{label}_180.csv")), &csv)?;

        let center = sampled.at(gi0, fi0);
        let mut max_other = f64::NEG_INFINITY;
        for gi in 0..g_span.2 {
            for fi in 0..f_span.2 {
                if (gi, fi) != (gi0, fi0) {
                    max_other = max_other.max(sampled.at(gi, fi));
                }
                let mirrored = sampled.at(gi, f_span.2 - 1 - fi);
                mirror_worst = mirror_worst.max((sampled.at(gi, fi) - mirrored).abs());
            }
        }
        if (center - 1.0).abs() > 1e-12 || max_other >= center {
            maxima_ok = false;
        }
        let f_fraction = (0..f_span.2)
            .filter(|&fi| sampled.at(gi0, fi) >= threshold)
            .count() as f64
            / f_span.2 as f64;
        let g_fraction = (0..g_span.2)
            .filter(|&gi| sampled.at(gi, fi0) >= threshold)
            .count() as f64
            / g_span.2 as f64;
        fractions.push((*label, f_fraction, g_fraction));
    }
    let plain = fractions[0];
    let enlarged = fractions[1].1 > plain.1   // corpse widens the f slice
        && fractions[2].2 > plain.2           // scrofulous widens the g slice
        && fractions[3].2 > plain.2; // bb1 widens the g slice

    // sweep-level dominance claims
    let corpse_f = sweep(
        &build_corpse(PI, CorpseIndices::STANDARD)?,
        ErrorAxis::F,
        -0.6,
        0.6,
        121,
    )?;
    let plain_f = sweep(&build_plain(PI, 0.0)?, ErrorAxis::F, -0.6, 0.6, 121)?;
    let corpse_dominates = corpse_f
        .samples
        .iter()
        .zip(&plain_f.samples)
        .all(|(&(_, a), &(_, b))| a >= b - 1e-12);
    let mut bb1_dominates = true;
    for deg in [90.0, 180.0] {
        let theta = deg * DEG;
        let composite = sweep(
            &build_bb1(theta, 1, &[0.5])?,
            ErrorAxis::G,
            -0.99,
            0.99,
            199,
        )?;
        let baseline = sweep(&build_plain(theta, 0.0)?, ErrorAxis::G, -0.99, 0.99, 199)?;
        for (&(e, a), &(_, b)) in composite.samples.iter().zip(&baseline.samples) {
            if e != 0.0 && a <= b {
                bb1_dominates = false;
            }
        }
    }

    let passed =
        maxima_ok && mirror_worst <= 1e-12 && enlarged && corpse_dominates && bb1_dominates;
    Ok((
        passed,
        format!(
            "4 grids (201 x 200, {bytes_written} CSV bytes) emitted; maxima at (0,0): {maxima_ok}; \
             f-mirror gap {mirror_worst:.2e} (limit 1e-12); F >= {threshold} slice fractions \
             corpse-f {:.3} vs plain {:.3}, scrofulous-g {:.3} and bb1-g {:.3} vs plain {:.3}; \
             corpse dominates on |f| <= 0.6: {corpse_dominates}; bb1 dominates on 0 < |g| <= 0.99: {bb1_dominates}",
            fractions[1].1, plain.1, fractions[2].2, fractions[3].2, plain.2
        ),
    ))
}

fn oracle_equivalence() -> Body {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1224);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let len = rng.gen_range(1..=8usize);
        let mut pulses = Vec::with_capacity(len);
        for _ in 0..len {
            pulses.push(Pulse::new(
                rng.gen_range(0.0..2.0 * PI),
                rng.gen_range(0.0..2.0 * PI),
            )?);
        }
        let target = pulses[0];
        let seq = PulseSequence::new(pulses, target, Family::Plain)?;
        let e = ErrorModel::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))?;
        let via_quaternion = sequence_quaternion(&seq, e);
        let via_matrix = sequence_matrix(&seq, e).to_quaternion();
        worst = worst.max(1.0 - via_quaternion.fidelity(via_matrix));
    }
    let elapsed = start.elapsed();
    Ok((
        worst <= 1e-10 && elapsed < Duration::from_secs(1),
        format!(
            "1000 random sequences: quaternion and matrix paths agree to 1 - {worst:.2e} in {:?} (limits 1e-10, 1 s)",
            elapsed
        ),
    ))
}

fn verify_runtime() -> Body {
    let start = Instant::now();
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_compulse"))
        .arg("verify")
        .output()?;
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&output.stdout);
    let summary = stdout.lines().last().unwrap_or("").to_owned();
    // exit code 2 is the expected outcome: the suite honestly reports the
    // published-table discrepancy covered by criterion 03
    let code = output.status.code();
    let completed = !summary.is_empty() && (code == Some(0) || code == Some(2));
    Ok((
        completed && elapsed < Duration::from_secs(30),
        format!(
            "verify completed in {:?} (limit 30 s) with exit code {code:?}; summary: {summary}",
            elapsed
        ),
    ))
}
