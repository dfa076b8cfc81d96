//! Command-line front end: parse inputs, dispatch to the library, render
//! exact-arithmetic results as tables or JSON.
//!
//! Exit codes: 0 success, 1 verification failures, 2 malformed input,
//! 3 precondition violations.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ellstab_core::cohomology::{ChernCharacter, DivisorClass};
use ellstab_core::geometry::Geometry;
use ellstab_core::gieseker::{
    destabilizes_2d_with_threshold, destabilizes_3d, surface_compare_with_threshold, SurfaceCase,
};
use ellstab_core::hn::{render_filtration, validate_lattice, LatticeFixture};
use ellstab_core::positivity::{admissible_subcharacters, classify_pattern};
use ellstab_core::rational::Rat;
use ellstab_core::scan::ScanMode;
use ellstab_core::slope::slope_table;
use ellstab_core::transform::{fm_inverse, fm_transform};
use ellstab_core::verify::{run_suite, Suite, VerifyOptions};

#[derive(Parser)]
#[command(name = "ellstab", version, about = "Exact stability calculus on trivial elliptic fibrations")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Geometry used when an input carries only a bare matrix
    #[arg(long, global = true, value_enum, default_value_t = GeometryKind::Threefold)]
    geometry: GeometryKind,

    /// K3 degree parameter (threefold)
    #[arg(long, global = true, default_value_t = 1)]
    d: u32,

    /// Base-curve genus (surface)
    #[arg(long, global = true, default_value_t = 1)]
    g: u32,

    /// Emit machine-readable JSON instead of tables
    #[arg(long, global = true)]
    json: bool,

    /// Write results to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryKind {
    Threefold,
    Surface,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the cohomological Fourier-Mukai transform to a character
    Transform {
        /// Also print the inverse transform
        #[arg(long)]
        inverse: bool,
        /// Character JSON (path or '-' for stdin)
        input: String,
    },
    /// Print μ_ω, μ_f, μ*, μ_* for a character and polarisation
    Slope {
        /// Coefficient of the fiber-side divisor class (rational)
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Coefficient of the section-side divisor class (rational)
        #[arg(long, default_value = "1")]
        beta: String,
        input: String,
    },
    /// Asymptotic Gieseker comparison of a candidate against an ambient class
    Compare {
        /// Ambient dimension of the threefold comparison (2 or 3)
        #[arg(long, conflicts_with = "surface_case")]
        dim: Option<u8>,
        /// Surface comparison case
        #[arg(long, value_enum)]
        surface_case: Option<SurfaceCaseArg>,
        /// Candidate subobject character JSON
        sub: String,
        /// Ambient character JSON
        ambient: String,
    },
    /// Report the positivity pattern cases a character matches
    Classify { input: String },
    /// Stream admissible subcharacters as JSON lines
    EnumerateSubs {
        #[arg(long)]
        bound: u32,
        input: String,
    },
    /// Compute the Harder-Narasimhan filtration of a lattice fixture
    Hn { fixture: String },
    /// Run a brute-force verification suite and emit its JSON report
    Verify {
        #[arg(long, value_name = "SUITE")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        /// Worker threads: 1 forces the sequential path
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceCaseArg {
    TorsionFree,
    OneDimensional,
}

enum Failure {
    BadInput(String),
    Precondition(String),
    VerificationFailed,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::VerificationFailed => 1,
            Failure::BadInput(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }
}

impl From<ellstab_core::Error> for Failure {
    fn from(e: ellstab_core::Error) -> Failure {
        Failure::Precondition(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut sink = Vec::new();
    let result = run(&cli, &mut sink);
    let payload = String::from_utf8(sink).expect("output is utf-8");
    let write_result = match &cli.global.out {
        Some(path) => fs::write(path, &payload).map_err(|e| {
            eprintln!("ellstab: cannot write {}: {e}", path.display());
        }),
        None => {
            print!("{payload}");
            Ok(())
        }
    };
    match (result, write_result) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Ok(()), Err(())) => ExitCode::from(2),
        (Err(f), _) => {
            match &f {
                Failure::BadInput(msg) => eprintln!("ellstab: invalid input: {msg}"),
                Failure::Precondition(msg) => eprintln!("ellstab: {msg}"),
                Failure::VerificationFailed => eprintln!("ellstab: verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::BadInput(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::BadInput(format!("{path}: {e}")))
    }
}

fn flag_geometry(global: &GlobalOpts) -> Geometry {
    match global.geometry {
        GeometryKind::Threefold => Geometry::threefold(global.d.max(1)),
        GeometryKind::Surface => Geometry::surface(global.g),
    }
}

/// Characters are accepted either in the full form
/// {"geometry": …, "matrix": […]} or as a bare matrix with the geometry
/// taken from the global flags.
fn parse_character(text: &str, global: &GlobalOpts) -> Result<ChernCharacter, Failure> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Failure::BadInput(e.to_string()))?;
    let full = if value.is_array() {
        json!({ "geometry": flag_geometry(global), "matrix": value })
    } else {
        value
    };
    serde_json::from_value(full).map_err(|e| Failure::BadInput(e.to_string()))
}

fn load_character(path: &str, global: &GlobalOpts) -> Result<ChernCharacter, Failure> {
    parse_character(&read_input(path)?, global)
}

fn parse_rat(text: &str) -> Result<Rat, Failure> {
    text.parse()
        .map_err(|_| Failure::BadInput(format!("not a rational: {text}")))
}

fn emit(out: &mut Vec<u8>, line: impl AsRef<str>) {
    out.extend_from_slice(line.as_ref().as_bytes());
    out.push(b'\n');
}

fn emit_json(out: &mut Vec<u8>, value: &impl serde::Serialize) {
    let s = serde_json::to_string_pretty(value).expect("serializable");
    emit(out, s);
}

fn run(cli: &Cli, out: &mut Vec<u8>) -> Result<(), Failure> {
    let global = &cli.global;
    match &cli.command {
        Command::Transform { inverse, input } => {
            let ch = load_character(input, global)?;
            let image = fm_transform(&ch);
            if global.json {
                let mut doc = json!({ "transform": image });
                if *inverse {
                    doc["inverse"] = serde_json::to_value(fm_inverse(&ch)).expect("serializable");
                }
                emit_json(out, &doc);
            } else {
                emit(out, format!("transform: {image}"));
                if *inverse {
                    emit(out, format!("inverse:   {}", fm_inverse(&ch)));
                }
            }
            Ok(())
        }
        Command::Slope { alpha, beta, input } => {
            let ch = load_character(input, global)?;
            let w = DivisorClass::new(parse_rat(alpha)?, parse_rat(beta)?);
            let table = slope_table(&ch, &w)?;
            if global.json {
                emit_json(out, &table);
            } else {
                emit(out, format!("mu_omega     = {}", table.mu_omega));
                emit(out, format!("mu_f         = {}", table.mu_f));
                emit(out, format!("mu_upper*    = {}", table.mu_upper_star));
                emit(out, format!("mu_lower_*   = {}", table.mu_lower_star));
            }
            Ok(())
        }
        Command::Compare {
            dim,
            surface_case,
            sub,
            ambient,
        } => {
            let sub = load_character(sub, global)?;
            let ambient = load_character(ambient, global)?;
            let (verdict, threshold) = match (dim, surface_case) {
                (Some(3), None) => (destabilizes_3d(&sub, &ambient)?, None),
                (Some(2), None) => {
                    let (v, n0) = destabilizes_2d_with_threshold(&sub, &ambient)?;
                    (v, Some(n0))
                }
                (None, Some(case)) => {
                    let case = match case {
                        SurfaceCaseArg::TorsionFree => SurfaceCase::TorsionFree,
                        SurfaceCaseArg::OneDimensional => SurfaceCase::OneDimensional,
                    };
                    let (v, s0) = surface_compare_with_threshold(&sub, &ambient, case)?;
                    (v, Some(s0))
                }
                (Some(n), None) => {
                    return Err(Failure::BadInput(format!("unsupported dimension {n}")))
                }
                _ => {
                    return Err(Failure::BadInput(
                        "pass exactly one of --dim or --surface-case".into(),
                    ))
                }
            };
            if global.json {
                let doc = json!({
                    "outcome": verdict.outcome,
                    "witness": verdict.witness,
                    "threshold": threshold.as_ref().map(|n| n.to_string()),
                });
                emit_json(out, &doc);
            } else {
                emit(out, format!("outcome: {:?}", verdict.outcome));
                if let Some(w) = verdict.witness {
                    emit(out, format!("witness: {w:?}"));
                }
                if let Some(n0) = threshold {
                    emit(out, format!("threshold: parameter >= {n0}"));
                }
            }
            Ok(())
        }
        Command::Classify { input } => {
            let ch = load_character(input, global)?;
            let reports = classify_pattern(&ch)?;
            if global.json {
                emit_json(out, &reports);
            } else if reports.is_empty() {
                emit(out, "no torsion pattern case matches (nonzero rank)");
            } else {
                for r in &reports {
                    let status = if r.passed { "PASS" } else { "FAIL" };
                    let detail = match r.violated {
                        Some((i, j)) => format!(" (entry a{i}{j} negative: not a sheaf class)"),
                        None => String::new(),
                    };
                    emit(
                        out,
                        format!("case {}: {status}{detail} — {}", r.case_id, r.support),
                    );
                }
            }
            Ok(())
        }
        Command::EnumerateSubs { bound, input } => {
            let ch = load_character(input, global)?;
            for cand in admissible_subcharacters(&ch, *bound)? {
                let line = serde_json::to_string(&cand).expect("serializable");
                emit(out, line);
            }
            Ok(())
        }
        Command::Hn { fixture } => {
            let text = read_input(fixture)?;
            let fixture: LatticeFixture =
                serde_json::from_str(&text).map_err(|e| Failure::BadInput(e.to_string()))?;
            let lattice =
                validate_lattice(&fixture).map_err(|e| Failure::Precondition(e.to_string()))?;
            let hn = lattice
                .hn_filtration()
                .map_err(|e| Failure::Precondition(e.to_string()))?;
            let report = render_filtration(&lattice, &hn);
            if global.json {
                emit_json(out, &report);
            } else {
                emit(out, format!("chain:  {}", report.chain.join(" <= ")));
                let slopes: Vec<String> =
                    report.slopes.iter().map(|s| s.to_string()).collect();
                emit(out, format!("slopes: {}", slopes.join(" > ")));
            }
            Ok(())
        }
        Command::Verify {
            suite,
            bound,
            threads,
        } => {
            let suite = Suite::parse(suite)
                .ok_or_else(|| Failure::BadInput(format!("unknown suite: {suite}")))?;
            let mode = match threads {
                Some(1) => ScanMode::Sequential,
                Some(n) => {
                    std::env::set_var("RAYON_NUM_THREADS", n.to_string());
                    ScanMode::Parallel
                }
                None => ScanMode::Auto,
            };
            let opts = VerifyOptions {
                bound: *bound,
                d: global.d.max(1),
                g: global.g,
                mode,
            };
            let report = run_suite(suite, &opts)?;
            emit_json(out, &report);
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::VerificationFailed)
            }
        }
    }
}
