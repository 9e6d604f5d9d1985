//! Command-line front end. Every command reads and writes JSON.
//!
//! Exit codes: 0 on success, 2 for usage and validation errors (with a JSON
//! error object on stderr), 3 for I/O failures.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{
    angle_set, coherence, common_row, design_moment_with_tol, tightness_with_tol,
};
use crate::bounds::best_bound;
use crate::catalog;
use crate::embedding::{embed, embedding_residual, zero_sum_defect};
use crate::error::Error;
use crate::frame::{Field, Frame, Tolerances};
use crate::rigidity::verify_tight_biangular_5_2;
use crate::solver::{minimize_coherence, SearchConfig};

#[derive(Debug, Parser)]
#[command(
    name = "grassmannian",
    version,
    about = "Analyze, embed, bound and search unit-norm frames"
)]
struct Cli {
    /// Gap threshold for clustering frame angles.
    #[arg(long, global = true, value_name = "TOL")]
    cluster_tol: Option<f64>,
    /// Threshold on ‖ΦΦ* - (N/M)I‖ for tightness (default 1e-9·N).
    #[arg(long, global = true, value_name = "TOL")]
    tight_tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coherence, angle set, tightness and design moment of a frame.
    Analyze {
        /// Frame JSON file; stdin when omitted.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Design order for the moment test.
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// Traceless spherical embedding of a frame.
    Embed {
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Welch, orthoplex and Toth lower bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_field)]
        field: Field,
    },
    /// Print a catalog frame.
    Catalog {
        #[arg(long, value_enum)]
        name: CatalogName,
        #[arg(long, required_if_eq("name", "random"))]
        n: Option<usize>,
        #[arg(long, required_if_eq("name", "random"))]
        m: Option<usize>,
        #[arg(long, value_parser = parse_field, default_value = "C")]
        field: Field,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimize coherence numerically.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_field)]
        field: Field,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        max_iters: usize,
        /// Write the best frame to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Replay a machine-checked case analysis.
    Verify {
        #[arg(long, value_enum)]
        statement: Statement,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum CatalogName {
    #[value(name = "tri_5_2")]
    Tri52,
    #[value(name = "bi_5_2")]
    Bi52,
    #[value(name = "icosa_12_2")]
    Icosa122,
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Statement {
    /// No tight biangular Grassmannian frame of 5 vectors in C^2.
    #[value(name = "thm54", alias = "tight-biangular-5-2")]
    TightBiangular52,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse()
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Invalid(String, &'static str),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string(), "validation")
    }
}

#[derive(Serialize)]
struct DesignJson {
    t: u32,
    moment: f64,
    target: f64,
    is_design: bool,
}

#[derive(Serialize)]
struct AnalyzeReport {
    coherence: f64,
    angles: Vec<f64>,
    multiplicities: Option<Vec<usize>>,
    tight: bool,
    defect: f64,
    design: Option<DesignJson>,
}

#[derive(Serialize)]
struct EmbedReport {
    d: usize,
    points: Vec<Vec<f64>>,
    residual: f64,
    zero_sum_defect: f64,
}

/// Analysis report for a frame, exactly as `analyze` prints it.
pub fn analyze_json(
    frame: &Frame,
    t: u32,
    tol: &Tolerances,
    tight_tol: Option<f64>,
) -> Result<String, Error> {
    let summary = angle_set(frame, tol.cluster)?;
    let tight = tightness_with_tol(frame, tight_tol.unwrap_or_else(|| tol.tight(frame.len())));
    let design = match frame.field() {
        Field::Complex => {
            let d = design_moment_with_tol(frame, t, tol.design)?;
            Some(DesignJson {
                t: d.t,
                moment: d.moment,
                target: d.target,
                is_design: d.is_design,
            })
        }
        Field::Real => None,
    };
    let report = AnalyzeReport {
        coherence: coherence(frame)?,
        multiplicities: common_row(&summary),
        angles: summary.angles,
        tight: tight.is_tight,
        defect: tight.defect,
        design,
    };
    Ok(to_json(&report))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serialization");
    s.push('\n');
    s
}

fn read_frame(input: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Frame, Failure> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            s
        }
    };
    Ok(Frame::from_json(&text)?)
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut tol = Tolerances::default();
    if let Some(c) = cli.cluster_tol {
        tol.cluster = c;
    }
    match cli.command {
        Command::Analyze { input, t } => {
            let frame = read_frame(&input, stdin)?;
            Ok(analyze_json(&frame, t, &tol, cli.tight_tol)?)
        }
        Command::Embed { input } => {
            let frame = read_frame(&input, stdin)?;
            let config = embed(&frame)?;
            let residual = embedding_residual(&frame, &config)?;
            Ok(to_json(&EmbedReport {
                d: config.dim,
                residual,
                zero_sum_defect: zero_sum_defect(&config),
                points: config.points,
            }))
        }
        Command::Bounds { n, m, field } => Ok(to_json(&best_bound(n, m, field)?)),
        Command::Catalog {
            name,
            n,
            m,
            field,
            seed,
        } => {
            let frame = match name {
                CatalogName::Tri52 => catalog::tri_5_2(),
                CatalogName::Bi52 => catalog::bi_5_2(),
                CatalogName::Icosa122 => catalog::icosaplectic_12_2(),
                CatalogName::Random => {
                    let (n, m) = (n.unwrap_or(0), m.unwrap_or(0));
                    if n == 0 || m == 0 {
                        return Err(Failure::Invalid(
                            "random frames need --n >= 1 and --m >= 1".into(),
                            "usage",
                        ));
                    }
                    catalog::random_frame(n, m, field, seed)
                }
            };
            let mut s = frame.to_json();
            s.push('\n');
            Ok(s)
        }
        Command::Search {
            n,
            m,
            field,
            restarts,
            seed,
            max_iters,
            out,
        } => {
            let mut config = SearchConfig::new(n, m, field)
                .with_seed(seed)
                .with_restarts(restarts);
            config.max_iters = max_iters;
            let result = minimize_coherence(&config)?;
            if let Some(path) = out {
                let mut text = result.best_frame.to_json();
                text.push('\n');
                std::fs::write(&path, text)
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(to_json(&result))
        }
        Command::Verify { statement } => match statement {
            Statement::TightBiangular52 => Ok(to_json(&verify_tight_biangular_5_2())),
        },
    }
}

/// Runs the CLI on `args` (including the program name) with the given stdin.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: to_json(&json!({"error": e.to_string().trim_end(), "kind": "usage"})),
                },
            };
        }
    };
    match execute(cli, stdin) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Invalid(msg, kind)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: to_json(&json!({"error": msg, "kind": kind})),
        },
        Err(Failure::Io(msg)) => Outcome {
            code: 3,
            stdout: String::new(),
            stderr: to_json(&json!({"error": msg, "kind": "io"})),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        let mut argv = vec!["grassmannian"];
        argv.extend_from_slice(args);
        run(argv, &mut std::io::empty())
    }

    #[test]
    fn unknown_flags_are_rejected() {
        let out = call(&["bounds", "--n", "5", "--m", "2", "--field", "C", "--bogus"]);
        assert_eq!(out.code, 2);
        let err: serde_json::Value = serde_json::from_str(&out.stderr).unwrap();
        assert_eq!(err["kind"], "usage");
    }

    #[test]
    fn validation_errors_exit_2() {
        let out = call(&["bounds", "--n", "2", "--m", "2", "--field", "C"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("validation"));
    }

    #[test]
    fn missing_file_exits_3() {
        let out = call(&["analyze", "--in", "/nonexistent/frame.json"]);
        assert_eq!(out.code, 3);
    }

    #[test]
    fn random_catalog_requires_shape() {
        assert_eq!(call(&["catalog", "--name", "random"]).code, 2);
        let out = call(&[
            "catalog", "--name", "random", "--n", "3", "--m", "2", "--field", "R", "--seed", "4",
        ]);
        assert_eq!(out.code, 0);
        let f = Frame::from_json(&out.stdout).unwrap();
        assert_eq!((f.len(), f.dim(), f.field()), (3, 2, Field::Real));
    }

    #[test]
    fn help_exits_0() {
        let out = call(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("analyze"));
    }
}
