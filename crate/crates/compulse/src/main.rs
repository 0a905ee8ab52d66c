//! Command-line surface: emit pulse-parameter tables, fidelity sweeps and
//! grids, sequence JSON, and the verification suite.
//!
//! Exit codes: 0 success, 1 bad usage or invalid options, 2 verification
//! failure. Angles cross this boundary in degrees; data files carry 12
//! significant digits, parameter tables one decimal place.

use clap::{Args, Parser, Subcommand, ValueEnum};
use compulse::analysis::{sweep, ErrorAxis};
use compulse::families::{
    build_bb1, build_corpse, build_plain, build_scrofulous_with_branch, corpse_angles,
    offset_phases, scrofulous_params_with_branch, wn_phases, CorpseIndices, PhaseBranch,
};
use compulse::report::{grid_csv, sweep_csv, SequenceDoc, SweepDoc};
use compulse::{verify, PulseSequence};
use std::f64::consts::TAU;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "compulse",
    version,
    about = "Composite-rotation pulse sequences: synthesis, fidelity analysis, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the pulse-parameter tables for all three families at the
    /// published target angles (30, 45, 90, 180 degrees)
    Tables {
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print one family's pulse parameters at a target angle
    Params {
        #[command(flatten)]
        opts: FamilyOpts,
        /// Emit the full sequence as JSON instead of a table row
        #[arg(long)]
        json: bool,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample fidelity along one error axis, with a plain-pulse baseline
    Sweep {
        #[command(flatten)]
        opts: FamilyOpts,
        /// Error axis to sweep: f (off-resonance) or g (pulse length)
        #[arg(long, value_enum)]
        axis: AxisArg,
        /// Lower end of the error range
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        /// Upper end of the error range
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
        /// Number of evenly spaced samples
        #[arg(long, default_value_t = 201)]
        count: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample fidelity over a rectangle of simultaneous (f, g) errors
    Grid {
        #[command(flatten)]
        opts: FamilyOpts,
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        f_lo: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        f_hi: f64,
        #[arg(long, default_value_t = 201)]
        f_count: usize,
        /// Lower g bound; must stay above -1
        #[arg(long, default_value_t = -0.99, allow_negative_numbers = true)]
        g_lo: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        g_hi: f64,
        #[arg(long, default_value_t = 200)]
        g_count: usize,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every verification check and report pass/fail per check
    Verify,
}

#[derive(Args)]
struct FamilyOpts {
    /// Pulse family to synthesize
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Target rotation angle in degrees
    #[arg(long, allow_negative_numbers = true)]
    theta: f64,
    /// Target rotation phase in degrees: shifts every pulse phase
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    /// Override the first winding index (corpse families)
    #[arg(long, allow_negative_numbers = true)]
    n1: Option<i32>,
    /// Override the second winding index (corpse families)
    #[arg(long, allow_negative_numbers = true)]
    n2: Option<i32>,
    /// Override the third winding index (corpse families)
    #[arg(long, allow_negative_numbers = true)]
    n3: Option<i32>,
    /// Number of correction blocks (bb1 family)
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Correction-block placements in [0, 1], comma-separated, one per
    /// block; 0.5 centers a block inside the target pulse
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.5",
        allow_negative_numbers = true
    )]
    placements: Vec<f64>,
    /// Phase-sign branch (scrofulous family)
    #[arg(long, value_enum, default_value_t = BranchArg::Minus)]
    branch: BranchArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Plain,
    Corpse,
    ShortCorpse,
    Scrofulous,
    Bb1,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    F,
    G,
}

impl From<AxisArg> for ErrorAxis {
    fn from(axis: AxisArg) -> ErrorAxis {
        match axis {
            AxisArg::F => ErrorAxis::F,
            AxisArg::G => ErrorAxis::G,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Minus,
    Plus,
}

impl From<BranchArg> for PhaseBranch {
    fn from(branch: BranchArg) -> PhaseBranch {
        match branch {
            BranchArg::Minus => PhaseBranch::Minus,
            BranchArg::Plus => PhaseBranch::Plus,
        }
    }
}

impl FamilyOpts {
    fn theta_rad(&self) -> f64 {
        self.theta.to_radians()
    }

    fn phi_rad(&self) -> f64 {
        self.phi.to_radians()
    }

    fn corpse_indices(&self) -> CorpseIndices {
        let base = if self.family == FamilyArg::ShortCorpse {
            CorpseIndices::SHORT
        } else {
            CorpseIndices::STANDARD
        };
        CorpseIndices::new(
            self.n1.unwrap_or(base.n1),
            self.n2.unwrap_or(base.n2),
            self.n3.unwrap_or(base.n3),
        )
    }

    fn build(&self) -> Result<PulseSequence, String> {
        let theta = self.theta_rad();
        let seq = match self.family {
            FamilyArg::Plain => build_plain(theta, 0.0),
            FamilyArg::Corpse | FamilyArg::ShortCorpse => {
                build_corpse(theta, self.corpse_indices())
            }
            FamilyArg::Scrofulous => build_scrofulous_with_branch(theta, self.branch.into()),
            FamilyArg::Bb1 => build_bb1(theta, self.n, &self.placements),
        }
        .map_err(|e| e.to_string())?;
        if self.phi == 0.0 {
            Ok(seq)
        } else {
            Ok(offset_phases(&seq, self.phi_rad()))
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let code = match execute(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    };
    std::process::exit(code);
}

fn execute(cmd: Cmd) -> Result<i32, String> {
    match cmd {
        Cmd::Tables { out } => {
            emit(out, &render_tables()?)?;
            Ok(0)
        }
        Cmd::Params { opts, json, out } => {
            emit(out, &render_params(&opts, json)?)?;
            Ok(0)
        }
        Cmd::Sweep {
            opts,
            axis,
            lo,
            hi,
            count,
            format,
            out,
        } => {
            emit(out, &render_sweep(&opts, axis, lo, hi, count, format)?)?;
            Ok(0)
        }
        Cmd::Grid {
            opts,
            f_lo,
            f_hi,
            f_count,
            g_lo,
            g_hi,
            g_count,
            out,
        } => {
            let seq = opts.build()?;
            let sampled =
                compulse::analysis::grid(&seq, (f_lo, f_hi, f_count), (g_lo, g_hi, g_count))
                    .map_err(|e| e.to_string())?;
            emit(out, &grid_csv(&sampled))?;
            Ok(0)
        }
        Cmd::Verify => Ok(run_verify()),
    }
}

fn render_tables() -> Result<String, String> {
    let angles = [30.0f64, 45.0, 90.0, 180.0];
    let mut out = String::from("# corpse (winding indices 1,1,0)\n");
    out.push_str("theta_deg,theta1_deg,theta2_deg,theta3_deg\n");
    for &deg in &angles {
        let a =
            corpse_angles(deg.to_radians(), CorpseIndices::STANDARD).map_err(|e| e.to_string())?;
        out.push_str(&format!(
            "{deg:.1},{:.1},{:.1},{:.1}\n",
            a[0].to_degrees(),
            a[1].to_degrees(),
            a[2].to_degrees()
        ));
    }
    out.push_str("\n# scrofulous\n");
    out.push_str("theta_deg,theta1_deg,phi1_deg,theta2_deg,phi2_deg\n");
    for &deg in &angles {
        let p = scrofulous_params_with_branch(deg.to_radians(), PhaseBranch::Minus)
            .map_err(|e| e.to_string())?;
        out.push_str(&format!(
            "{deg:.1},{:.1},{:.1},{:.1},{:.1}\n",
            p.theta1.to_degrees(),
            p.phi1.to_degrees(),
            p.theta2.to_degrees(),
            p.phi2.to_degrees()
        ));
    }
    out.push_str("\n# bb1 correction-block phases (one block)\n");
    out.push_str("theta_deg,phi1_deg,phi2_deg\n");
    for &deg in &angles {
        let (phi1, phi2) = wn_phases(deg.to_radians(), 1).map_err(|e| e.to_string())?;
        out.push_str(&format!(
            "{deg:.1},{:.1},{:.1}\n",
            phi1.to_degrees(),
            phi2.to_degrees()
        ));
    }
    Ok(out)
}

fn render_params(opts: &FamilyOpts, json: bool) -> Result<String, String> {
    let seq = opts.build()?;
    if json {
        let doc = SequenceDoc::from(&seq);
        let mut text = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
        text.push('\n');
        return Ok(text);
    }
    let theta = opts.theta_rad();
    let shift = |phase: f64| (phase + opts.phi_rad()).rem_euclid(TAU).to_degrees();
    let mut out = match opts.family {
        FamilyArg::Plain => format!("theta_deg,phi_deg\n{:.1},{:.1}\n", opts.theta, shift(0.0)),
        FamilyArg::Corpse | FamilyArg::ShortCorpse => {
            let a = corpse_angles(theta, opts.corpse_indices()).map_err(|e| e.to_string())?;
            format!(
                "theta_deg,theta1_deg,theta2_deg,theta3_deg\n{:.1},{:.1},{:.1},{:.1}\n",
                opts.theta,
                a[0].to_degrees(),
                a[1].to_degrees(),
                a[2].to_degrees()
            )
        }
        FamilyArg::Scrofulous => {
            let p = scrofulous_params_with_branch(theta, opts.branch.into())
                .map_err(|e| e.to_string())?;
            format!(
                "theta_deg,theta1_deg,phi1_deg,theta2_deg,phi2_deg\n{:.1},{:.1},{:.1},{:.1},{:.1}\n",
                opts.theta,
                p.theta1.to_degrees(),
                shift(p.phi1),
                p.theta2.to_degrees(),
                shift(p.phi2)
            )
        }
        FamilyArg::Bb1 => {
            let (phi1, phi2) = wn_phases(theta, opts.n).map_err(|e| e.to_string())?;
            format!(
                "theta_deg,phi1_deg,phi2_deg\n{:.1},{:.1},{:.1}\n",
                opts.theta,
                shift(phi1),
                shift(phi2)
            )
        }
    };
    if opts.family == FamilyArg::Scrofulous && opts.theta < 30.0 {
        out.push_str("# extrapolated: published values cover 30 to 180 degrees\n");
    }
    Ok(out)
}

fn render_sweep(
    opts: &FamilyOpts,
    axis: AxisArg,
    lo: f64,
    hi: f64,
    count: usize,
    format: FormatArg,
) -> Result<String, String> {
    let composite = opts.build()?;
    let baseline = build_plain(opts.theta_rad(), opts.phi_rad()).map_err(|e| e.to_string())?;
    let swept_composite =
        sweep(&composite, axis.into(), lo, hi, count).map_err(|e| e.to_string())?;
    let swept_baseline = sweep(&baseline, axis.into(), lo, hi, count).map_err(|e| e.to_string())?;
    match format {
        FormatArg::Csv => Ok(sweep_csv(&swept_composite, &swept_baseline)),
        FormatArg::Json => {
            let doc = SweepDoc::new(&swept_composite, &swept_baseline);
            let mut text = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            text.push('\n');
            Ok(text)
        }
    }
}

fn run_verify() -> i32 {
    let results = verify::run_all();
    let mut failed = 0;
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {}: {}", r.name, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    let total = results.len();
    println!(
        "{} of {total} checks passed, {failed} failed",
        total - failed
    );
    if failed == 0 {
        0
    } else {
        2
    }
}

/// Print to stdout, or write to the given path. Relative paths honor the
/// COMPULSE_OUT_DIR environment variable as an output-directory override.
fn emit(out: Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let path = resolve_out_path(path);
            std::fs::write(&path, content)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
    }
}

fn resolve_out_path(path: PathBuf) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("COMPULSE_OUT_DIR") {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path
}
