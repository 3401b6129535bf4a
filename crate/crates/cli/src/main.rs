use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linearr::arrangement::{build_c_arrangement, build_h_arrangement, intersection_lattice, RealArrangement, Sign};
use linearr::certificate::{run_certificate, CertificateOptions, CertificateReport};
use linearr::combinatorics::{automorphism_group, dual_labeled, multiplicity_profile, pair_coverage, LineCombinatorics};
use linearr::field::{f3_maclane_points, f4_decagon_points, make_field};
use linearr::group::ENUMERATION_CAP;
use linearr::moduli::{derive_moduli_constraints, FrameSchedule};
use linearr::monodromy::{affine_part, braid_monodromy, wiring_diagram};
use linearr::quad::QuadNum;

#[derive(Parser)]
#[command(name = "linearr", version, about = "Line arrangements over Q(√5), their braid monodromy and a Burau mod 5 certificate")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Builtin {
    /// The ten-line combinatorics dual to the decagon over F4.
    C,
    /// The combinatorics of C plus the line N, from its real realization.
    H,
    /// The eight-line MacLane combinatorics over F3.
    Maclane,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    C,
    H,
}

#[derive(Clone, Copy)]
struct SignArg(Sign);

fn parse_sign(s: &str) -> Result<SignArg, String> {
    s.parse().map(SignArg).map_err(|e: linearr::Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Build or validate a combinatorics and print its multiplicity profile.
    Combinatorics {
        #[arg(long, value_enum, conflicts_with = "input")]
        builtin: Option<Builtin>,
        /// Combinatorics or arrangement JSON file.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_sign, default_value = "+")]
        sign: SignArg,
    },
    /// Automorphism group of a combinatorics.
    Aut {
        #[arg(long, value_enum, conflicts_with = "input")]
        builtin: Option<Builtin>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_sign, default_value = "+")]
        sign: SignArg,
    },
    /// Emit the arrangement C or H over Q(√5).
    Realize {
        #[arg(long, value_parser = parse_sign, default_value = "+")]
        sign: SignArg,
        #[arg(long, value_enum, default_value_t = Which::C)]
        arrangement: Which,
    },
    /// Intersection lattice of an arrangement with exact point coordinates.
    Lattice {
        #[arg(long, value_parser = parse_sign, default_value = "+")]
        sign: SignArg,
        #[arg(long, value_enum, default_value_t = Which::C)]
        arrangement: Which,
        /// Arrangement JSON file; overrides --sign and --arrangement.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// One-parameter moduli of an ordered combinatorics with the standard frame.
    Moduli {
        /// Labeled combinatorics JSON; defaults to the lattice of C+.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Braid monodromy of the non-vertical affine lines of an arrangement.
    Monodromy {
        #[arg(long, value_parser = parse_sign, default_value = "+")]
        sign: SignArg,
        /// Arrangement JSON file; `z = 0` is the line at infinity and vertical lines are dropped.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run the full non-equivalence certificate.
    Certify {
        /// Maximum number of elements any enumerated group may have.
        #[arg(long, default_value_t = ENUMERATION_CAP)]
        cap: usize,
        /// Worker threads for the conjugacy search.
        #[arg(long)]
        threads: Option<usize>,
        /// Compare C+ with itself; expects the identity as conjugator.
        #[arg(long)]
        self_test: bool,
    },
    /// Pretty-print a certificate report.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_arrangement(path: &Path) -> Result<RealArrangement> {
    Ok(RealArrangement::from_json(&read(path)?)?)
}

fn arrangement(which: Which, sign: Sign) -> RealArrangement {
    match which {
        Which::C => build_c_arrangement(sign),
        Which::H => build_h_arrangement(sign),
    }
}

/// A combinatorics file, or the lattice of an arrangement file.
fn read_combinatorics(path: &Path) -> Result<LineCombinatorics> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if v.get("lines").is_some() {
        Ok(intersection_lattice(&RealArrangement::from_json(&text)?)?.combinatorics)
    } else {
        serde_json::from_value(v).with_context(|| format!("{} is not a valid combinatorics", path.display()))
    }
}

fn builtin(b: Builtin, sign: Sign) -> Result<LineCombinatorics> {
    Ok(match b {
        Builtin::C => {
            let f = make_field(4)?;
            dual_labeled(&f, &f4_decagon_points(&f)?)?
        }
        Builtin::H => intersection_lattice(&build_h_arrangement(sign))?.combinatorics,
        Builtin::Maclane => {
            let f = make_field(3)?;
            dual_labeled(&f, &f3_maclane_points(&f)?)?
        }
    })
}

fn combinatorics_arg(b: Option<Builtin>, input: Option<&Path>, sign: Sign) -> Result<LineCombinatorics> {
    match (b, input) {
        (_, Some(p)) => read_combinatorics(p),
        (Some(b), None) => builtin(b, sign),
        (None, None) => builtin(Builtin::C, sign),
    }
}

fn quad_json(x: &QuadNum) -> Value {
    json!(x.to_strings())
}

fn label_list(c: &LineCombinatorics, point: &[usize]) -> Vec<String> {
    point.iter().map(|&i| c.label(i)).collect()
}

struct Output {
    text: String,
    json: Value,
    exit: u8,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, exit: 0 }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    Ok(match &cli.command {
        Command::Combinatorics { builtin: b, input, sign } => {
            let c = combinatorics_arg(*b, input.as_deref(), sign.0)?;
            let profile = multiplicity_profile(&c);
            let mut text = format!("{} lines, {} points\nmultiplicities:", c.n(), c.points().len());
            for (m, k) in &profile {
                text += &format!(" {m}:{k}");
            }
            text += &format!("\npairs covered: {}\n", pair_coverage(&c));
            for p in c.points().iter().filter(|p| p.len() > 2) {
                text += &format!("  {}\n", label_list(&c, p).join(" "));
            }
            let mut json = serde_json::to_value(&c)?;
            json["profile"] = json!(profile.iter().map(|(m, k)| (m.to_string(), json!(k))).collect::<serde_json::Map<_, _>>());
            Output::new(text, json)
        }
        Command::Aut { builtin: b, input, sign } => {
            let c = combinatorics_arg(*b, input.as_deref(), sign.0)?;
            let aut = automorphism_group(&c)?;
            let mut text = format!("order {}\n", aut.len());
            for p in &aut {
                text += &format!("  {p}\n");
            }
            let json = json!({
                "order": aut.len(),
                "automorphisms": aut.iter().map(|p| p.images()).collect::<Vec<_>>(),
                "cycles": aut.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            });
            Output::new(text, json)
        }
        Command::Realize { sign, arrangement: which } => {
            let arr = arrangement(*which, sign.0);
            let mut text = String::new();
            for (label, line) in arr.iter() {
                text += &format!("{label}: {line}\n");
            }
            Output::new(text, serde_json::from_str(&arr.to_json())?)
        }
        Command::Lattice { sign, arrangement: which, input } => {
            let arr = match input {
                Some(p) => read_arrangement(p)?,
                None => arrangement(*which, sign.0),
            };
            let lat = intersection_lattice(&arr)?;
            let c = &lat.combinatorics;
            let mut text = String::new();
            let mut points = Vec::new();
            for (p, x) in c.points().iter().zip(&lat.coords) {
                text += &format!("{x}  {}\n", label_list(c, p).join(" "));
                points.push(json!({
                    "lines": label_list(c, p),
                    "coords": x.coords().iter().map(quad_json).collect::<Vec<_>>(),
                }));
            }
            let json = json!({ "combinatorics": c, "points": points });
            Output::new(text, json)
        }
        Command::Moduli { input } => {
            let c = match input {
                Some(p) => read_combinatorics(p)?,
                None => intersection_lattice(&build_c_arrangement(Sign::Plus))?.combinatorics,
            };
            let d = derive_moduli_constraints(&c, &FrameSchedule::standard())?;
            let steps: Vec<Value> = d
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "line": s.line,
                        "conditions": s.conditions,
                        "independent": s.independent,
                        "solved_beta": s.solved_beta,
                        "constraints": s.constraints.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let json = json!({
                "beta": d.beta.as_ref().map(|b| b.to_string()),
                "moduli_polynomial": d.moduli_polynomial.to_string(),
                "moduli_coefficients": d.moduli_polynomial.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "steps": steps,
                "lines": d.lines.iter().map(|(l, c)| json!({"label": l, "coeffs": c.iter().map(|x| x.to_string()).collect::<Vec<_>>()})).collect::<Vec<_>>(),
            });
            Output::new(format!("{d}\n"), json)
        }
        Command::Monodromy { sign, input } => {
            let arr = match input {
                Some(p) => read_arrangement(p)?,
                None => build_c_arrangement(sign.0),
            };
            let lines = affine_part(&arr);
            let tuple = braid_monodromy(&lines)?;
            let wiring = wiring_diagram(&lines)?;
            let text = format!("{tuple}wiring diagram\n{wiring}");
            Output::new(text, serde_json::from_str(&tuple.to_json())?)
        }
        Command::Certify { cap, threads, self_test } => {
            let opts = CertificateOptions {
                self_test: *self_test,
                enumeration_cap: *cap,
                threads: *threads,
                ..Default::default()
            };
            let report = run_certificate(&opts);
            let mut out = Output::new(report.to_string(), serde_json::from_str(&report.to_json())?);
            out.exit = report.verdict.exit_code() as u8;
            out
        }
        Command::Report { input } => {
            let report = CertificateReport::from_json(&read(input)?)?;
            Output::new(report.to_string(), serde_json::from_str(&report.to_json())?)
        }
    })
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json)? + "\n",
        Format::Text => out.text.clone(),
    };
    match &cli.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out)?;
        Ok(out.exit)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(linearr::Error::Resource { .. }) = e.downcast_ref() {
                return ExitCode::from(3);
            }
            ExitCode::from(1)
        }
    }
}
