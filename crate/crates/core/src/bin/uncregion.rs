//! Command-line front end: region grids and boundaries, random scatters,
//! projector-pair decomposition, wave-packet tools, the counting-statistics
//! experiment, and the acceptance suite.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use uncregion::io::{fmt_real, write_atomic, CsvWriter, JordanJson, MatrixJson, SvgWriter};
use uncregion::jordan::jordan_decompose;
use uncregion::photonics::{default_plan, run_experiment, ExperimentPlan, PairDataset, StateFamily};
use uncregion::qcore::Projector;
use uncregion::regions::{
    qubit_boundary, qubit_membership, qudit_boundary, qudit_membership, Membership, RegionPart,
    VariancePoint, Verdict, DEFAULT_TOL,
};
use uncregion::sampling::{scatter_records, SampleKind, SeededRng};
use uncregion::verify::{run_all, DEFAULT_SEED};
use uncregion::wavepacket::{
    momentum_stats, position_stats, solve_packet_for, spreads, xp_membership, GaussianPacket,
};
use uncregion::{Error, Result};

#[derive(Parser)]
#[command(
    name = "uncregion",
    version,
    about = "Variance uncertainty regions for projector pairs: analytic membership, sampling oracles, and a photonic counting-statistics simulator"
)]
struct Cli {
    /// RNG seed shared by every stochastic subcommand.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker thread count (default: all cores). Outputs do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Interpret --theta in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a membership grid and emit it as CSV or SVG.
    Region(RegionArgs),
    /// Scatter random states of one family into variance points (CSV).
    Sample(SampleArgs),
    /// Simultaneously block-diagonalize two projectors given as JSON.
    Jordan(JordanArgs),
    /// Gaussian wave-packet moments, inverse solve, and region sweep.
    Wavepacket(WavepacketArgs),
    /// Run the photonic counting experiment and emit per-pair datasets.
    Simulate(SimulateArgs),
    /// Run the acceptance suite and emit a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DimClassArg {
    Qubit,
    Qudit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegionFormat {
    Csv,
    Svg,
}

#[derive(Args)]
struct RegionArgs {
    /// Angle between the projectors.
    #[arg(long)]
    theta: f64,
    #[arg(long, value_enum)]
    dim_class: DimClassArg,
    /// Cells per axis of the classification grid.
    #[arg(long, default_value_t = 400)]
    grid: usize,
    /// Points on the emitted boundary polyline.
    #[arg(long, default_value_t = 256)]
    boundary_points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RegionFormat::Csv)]
    format: RegionFormat,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    theta: f64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Haar-random pure states (default family).
    #[arg(long, conflicts_with_all = ["mixed", "boundary"])]
    pure: bool,
    /// Hilbert-Schmidt random mixed states.
    #[arg(long, conflicts_with = "boundary")]
    mixed: bool,
    /// Real-amplitude equatorial qubit states.
    #[arg(long)]
    boundary: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Only `csv` is supported for scatters.
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct JordanArgs {
    /// JSON file holding {"p": matrix, "q": matrix} with [re, im] entries.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WavepacketArgs {
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 0.0)]
    k0: f64,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    /// Solve for a packet hitting this "dx,dp" spread target instead.
    #[arg(long)]
    target: Option<String>,
    /// Emit an n×n CSV sweep of the (Δx, Δp) region instead.
    #[arg(long)]
    sweep: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON plan file; mutually exclusive with --default-plan.
    #[arg(long, conflicts_with = "default_plan")]
    plan: Option<PathBuf>,
    /// Use the built-in 400-state plan.
    #[arg(long)]
    default_plan: bool,
    /// Override shots per state and setting.
    #[arg(long)]
    shots: Option<u64>,
    /// Override repeats per state and setting.
    #[arg(long)]
    repeats: Option<u32>,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, content.as_bytes()),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Interior => "interior",
        Verdict::Boundary => "boundary",
        Verdict::Outside => "outside",
    }
}

fn part_label(p: RegionPart) -> &'static str {
    match p {
        RegionPart::R1 => "r1",
        RegionPart::R2 => "r2",
        RegionPart::None => "none",
    }
}

fn membership_at(theta: f64, dim_class: DimClassArg, p: &VariancePoint<f64>) -> Result<Membership> {
    match dim_class {
        DimClassArg::Qubit => qubit_membership(p, theta, DEFAULT_TOL),
        DimClassArg::Qudit => qudit_membership(p, theta, DEFAULT_TOL),
    }
}

fn cmd_region(args: &RegionArgs, theta: f64) -> Result<()> {
    if args.grid == 0 {
        return Err(Error::invalid_parameter("grid must be positive"));
    }
    let boundary = match args.dim_class {
        DimClassArg::Qubit => qubit_boundary(theta, args.boundary_points)?,
        DimClassArg::Qudit => qudit_boundary(theta, args.boundary_points)?,
    };
    match args.format {
        RegionFormat::Csv => {
            let mut w = CsvWriter::new(&["dA", "dB", "verdict", "part"]);
            let step = 0.25 / args.grid as f64;
            for i in 0..args.grid {
                for j in 0..args.grid {
                    let p = VariancePoint::new((i as f64 + 0.5) * step, (j as f64 + 0.5) * step)?;
                    let m = membership_at(theta, args.dim_class, &p)?;
                    w.row(&[
                        fmt_real(p.d_a),
                        fmt_real(p.d_b),
                        verdict_label(m.verdict).to_string(),
                        part_label(m.which_part).to_string(),
                    ])?;
                }
            }
            emit(args.out.as_deref(), &w.into_string())
        }
        RegionFormat::Svg => {
            let mut svg = SvgWriter::new((0.0, 0.25), (0.0, 0.25))?;
            // Region mask as one rect per contiguous non-outside row span.
            let mask_res = args.grid.min(200);
            let step = 0.25 / mask_res as f64;
            for i in 0..mask_res {
                let mut span_start: Option<usize> = None;
                for j in 0..=mask_res {
                    let inside = if j < mask_res {
                        let p =
                            VariancePoint::new((i as f64 + 0.5) * step, (j as f64 + 0.5) * step)?;
                        membership_at(theta, args.dim_class, &p)?.verdict != Verdict::Outside
                    } else {
                        false
                    };
                    match (inside, span_start) {
                        (true, None) => span_start = Some(j),
                        (false, Some(start)) => {
                            let x0 = i as f64 * step;
                            let y0 = start as f64 * step;
                            let pts = [
                                (x0, y0),
                                (x0 + step, y0),
                                (x0 + step, j as f64 * step),
                                (x0, j as f64 * step),
                                (x0, y0),
                            ];
                            svg.polyline(&pts, "#9ecae1");
                            span_start = None;
                        }
                        _ => {}
                    }
                }
            }
            svg.axes("Delta A", "Delta B");
            let pts: Vec<(f64, f64)> = boundary.iter().map(|p| (p.d_a, p.d_b)).collect();
            svg.polyline(&pts, "black");
            emit(args.out.as_deref(), &svg.into_string())
        }
    }
}

fn cmd_sample(args: &SampleArgs, theta: f64, seed: u64) -> Result<()> {
    if args.format != "csv" {
        return Err(Error::invalid_parameter("sample only supports --format csv"));
    }
    let kind = if args.mixed {
        SampleKind::Mixed
    } else if args.boundary {
        SampleKind::Boundary
    } else {
        SampleKind::Pure
    };
    let rng = SeededRng::new(seed, 0);
    let pts = scatter_records(theta, args.dim, args.samples, kind, &rng)?;
    let mut w = CsvWriter::new(&["dA", "dB", "state-kind"]);
    for p in pts {
        w.row(&[fmt_real(p.d_a), fmt_real(p.d_b), kind.label().to_string()])?;
    }
    emit(args.out.as_deref(), &w.into_string())
}

#[derive(Serialize, Deserialize)]
struct ProjectorPairJson {
    p: MatrixJson,
    q: MatrixJson,
}

fn cmd_jordan(args: &JordanArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.input)?;
    let pair: ProjectorPairJson = serde_json::from_str(&text)?;
    let p = Projector::new(pair.p.to_matrix()?)?;
    let q = Projector::new(pair.q.to_matrix()?)?;
    let dec = jordan_decompose(&p, &q)?;
    let wire = JordanJson::from_decomposition(&dec);
    let mut json = serde_json::to_string_pretty(&wire)?;
    json.push('\n');
    emit(args.out.as_deref(), &json)
}

#[derive(Serialize)]
struct PacketReport {
    packet: GaussianPacket<f64>,
    mean_x: f64,
    second_moment_x: f64,
    mean_p: f64,
    second_moment_p: f64,
    delta_x: f64,
    delta_p: f64,
    product_over_hbar: f64,
}

fn packet_report(packet: GaussianPacket<f64>) -> PacketReport {
    let (mean_x, second_moment_x) = position_stats(&packet);
    let (mean_p, second_moment_p) = momentum_stats(&packet);
    let (delta_x, delta_p) = spreads(&packet);
    PacketReport {
        mean_x,
        second_moment_x,
        mean_p,
        second_moment_p,
        delta_x,
        delta_p,
        product_over_hbar: delta_x * delta_p / packet.hbar,
        packet,
    }
}

fn cmd_wavepacket(args: &WavepacketArgs) -> Result<()> {
    if let Some(n) = args.sweep {
        if n < 2 {
            return Err(Error::invalid_parameter("sweep needs at least 2 cells"));
        }
        let mut w = CsvWriter::new(&["delta_x", "delta_p", "member"]);
        let scale = args.hbar.sqrt();
        let (lo, hi) = (0.05 * scale, 2.5 * scale);
        for i in 0..n {
            for j in 0..n {
                let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
                let y = lo + (hi - lo) * j as f64 / (n - 1) as f64;
                w.row(&[
                    fmt_real(x),
                    fmt_real(y),
                    xp_membership(x, y, args.hbar).to_string(),
                ])?;
            }
        }
        return emit(args.out.as_deref(), &w.into_string());
    }
    let packet = if let Some(target) = &args.target {
        let (x, y) = target
            .split_once(',')
            .ok_or_else(|| Error::invalid_parameter("--target expects \"dx,dp\""))?;
        let x: f64 = x
            .trim()
            .parse()
            .map_err(|_| Error::invalid_parameter("unparseable --target x value"))?;
        let y: f64 = y
            .trim()
            .parse()
            .map_err(|_| Error::invalid_parameter("unparseable --target y value"))?;
        solve_packet_for(x, y, args.m, args.hbar)?
    } else {
        GaussianPacket::new(args.a, args.k0, args.m, args.hbar, args.t)?
    };
    let mut json = serde_json::to_string_pretty(&packet_report(packet))?;
    json.push('\n');
    emit(args.out.as_deref(), &json)
}

fn dataset_csv(ds: &PairDataset, qubit: bool) -> Result<String> {
    let mut w = CsvWriter::new(&["state-index", "family", "dA", "dB", "verdict"]);
    let points = if qubit { &ds.qubit_points } else { &ds.qutrit_points };
    for rec in points {
        let p = VariancePoint::new(rec.d_a, rec.d_b)?;
        let m = if qubit {
            qubit_membership(&p, ds.theta, DEFAULT_TOL)?
        } else {
            qudit_membership(&p, ds.theta, DEFAULT_TOL)?
        };
        let family = match rec.family {
            StateFamily::Generic => "generic",
            StateFamily::Boundary => "boundary",
        };
        w.row(&[
            rec.state_index.to_string(),
            family.to_string(),
            fmt_real(rec.d_a),
            fmt_real(rec.d_b),
            verdict_label(m.verdict).to_string(),
        ])?;
    }
    Ok(w.into_string())
}

fn dataset_svg(ds: &PairDataset, qubit: bool) -> Result<String> {
    let mut svg = SvgWriter::new((0.0, 0.25), (0.0, 0.25))?;
    svg.axes("Delta A", "Delta B");
    let boundary = if qubit {
        qubit_boundary(ds.theta, 256)?
    } else {
        qudit_boundary(ds.theta, 256)?
    };
    let pts: Vec<(f64, f64)> = boundary.iter().map(|p| (p.d_a, p.d_b)).collect();
    svg.polyline(&pts, "black");
    let points = if qubit { &ds.qubit_points } else { &ds.qutrit_points };
    for rec in points {
        let fill = match rec.family {
            StateFamily::Generic => "steelblue",
            StateFamily::Boundary => "crimson",
        };
        svg.dot(rec.d_a, rec.d_b, 1.5, fill);
    }
    Ok(svg.into_string())
}

fn cmd_simulate(args: &SimulateArgs, seed: u64) -> Result<()> {
    let mut plan: ExperimentPlan = if let Some(path) = &args.plan {
        serde_json::from_str(&std::fs::read_to_string(path)?)?
    } else if args.default_plan {
        default_plan(seed)?
    } else {
        return Err(Error::invalid_parameter("pass --plan <file> or --default-plan"));
    };
    if let Some(shots) = args.shots {
        plan.shots = shots;
    }
    if let Some(repeats) = args.repeats {
        plan.repeats = repeats;
    }
    let datasets = run_experiment(&plan)?;
    for ds in &datasets {
        let (j, k) = ds.pair;
        for (qubit, label) in [(false, "qutrit"), (true, "qubit")] {
            let csv = dataset_csv(ds, qubit)?;
            write_atomic(
                &args.out_dir.join(format!("pair_{j}_{k}_{label}.csv")),
                csv.as_bytes(),
            )?;
            let svg = dataset_svg(ds, qubit)?;
            write_atomic(
                &args.out_dir.join(format!("pair_{j}_{k}_{label}.svg")),
                svg.as_bytes(),
            )?;
        }
        eprintln!(
            "pair ({j}, {k}): angle {:.6} rad, {} qutrit points, {} qubit points",
            ds.theta,
            ds.qutrit_points.len(),
            ds.qubit_points.len()
        );
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, seed: u64) -> Result<bool> {
    let report = run_all(seed);
    for c in &report.criteria {
        eprintln!(
            "{} {}: {} (tolerance: {})",
            c.id,
            if c.pass { "pass" } else { "FAIL" },
            c.measured,
            c.tolerance
        );
    }
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    emit(args.out.as_deref(), &json)?;
    Ok(report.all_pass)
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::invalid_parameter(e.to_string()))?;
    }
    let to_radians = |theta: f64| {
        if cli.degrees {
            theta.to_radians()
        } else {
            theta
        }
    };
    match &cli.command {
        Command::Region(args) => cmd_region(args, to_radians(args.theta)).map(|_| true),
        Command::Sample(args) => cmd_sample(args, to_radians(args.theta), cli.seed).map(|_| true),
        Command::Jordan(args) => cmd_jordan(args).map(|_| true),
        Command::Wavepacket(args) => cmd_wavepacket(args).map(|_| true),
        Command::Simulate(args) => cmd_simulate(args, cli.seed).map(|_| true),
        Command::Verify(args) => cmd_verify(args, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
