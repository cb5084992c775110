//! Command-line front end: argument parsing, JSON input and output, named
//! constants, and the verification suites.

pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use crate::invariants::{factor_invariants, is_semistable, phi};
use crate::liealg::{
    ad_matrix, ad_matrix_symbolic, killing_gram, real_form, signature, trilinear_c,
};
use crate::oppenheim::{
    construct_h, rationality_report, scan, LatticeBasis, RealLinearMap, ScanConfig, ScanMode,
};
use crate::polyexact::{parse_rational, rational_to_string, GaussianRational, Rational};
use crate::reptheory::{
    alt3_decompose, irreps_of_dim, parse_type, parse_weight, root_system, table45,
    tensor_decompose, weight_to_string, weights_to_json, weyl_dim, RootSystem,
};
use crate::trivector::{act, s_matrix, tau_matrix, w, w_prime, GroupElement, Trivector, DIM};

pub use verify::{verify, Status, Suite, VerificationOutcome};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for usage and input errors.
pub const EXIT_USAGE: i32 = 1;
/// Exit code when a verification suite reports a mismatch.
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("unknown suite '{0}' (expected one of: {names})", names = Suite::NAMES.join(", "))]
    UnknownSuite(String),
    #[error("unknown builtin '{0}' (expected one of: w, wprime, w1, w2, tau)")]
    UnknownBuiltin(String),
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "pvs",
    about = "Exact invariants of trivectors in eight variables and related computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct XArg {
    /// Trivector JSON file or builtin:<w|wprime|w1|w2>
    #[arg(long)]
    pub x: String,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quadratic and cubic invariants of a trivector
    Factor {
        #[command(flatten)]
        x: XArg,
        /// Group element JSON (Gaussian rational entries) carrying w to x
        #[arg(long)]
        transport: Option<PathBuf>,
    },
    /// The 8×8 matrix of linear forms attached to a trivector
    Smatrix {
        #[command(flatten)]
        x: XArg,
    },
    /// The dual trivector obtained by raising indices with the quadratic invariant
    Phi {
        #[command(flatten)]
        x: XArg,
        /// Group element JSON (Gaussian rational entries) carrying w to x
        #[arg(long)]
        transport: Option<PathBuf>,
    },
    /// Apply a group element (t, g) to a trivector
    Act {
        #[command(flatten)]
        x: XArg,
        /// Group element JSON file or builtin:tau
        #[arg(long)]
        el: String,
    },
    /// Whether a trivector lies in the open orbit
    Semistable {
        #[command(flatten)]
        x: XArg,
    },
    /// Structure of sl(3)
    #[command(subcommand)]
    Lie(LieCommand),
    /// Representations of simple Lie algebras
    #[command(subcommand)]
    Rep(RepCommand),
    /// Values of the form pair at primitive integer points
    Scan(ScanArgs),
    /// Determinant-one map sending the cubic form at a lattice vector to a target value
    ConstructH {
        /// Nonzero target value of the cubic form
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        /// Nonzero scale of the diagonal factor
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded search for a rational model of the transformed quadratic form
    Rationality {
        /// Form pair: 0 for the split form, 1 for the unitary form
        #[arg(long)]
        i: u8,
        /// Matrix JSON file or builtin:identity
        #[arg(long, default_value = "builtin:identity")]
        g: String,
        /// Largest denominator tried
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite
    Verify {
        /// One of smatrix, factorization, phi, liealg, realforms, reptheory, oppenheim, all
        suite: String,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LieCommand {
    /// Adjoint matrix at a coordinate vector, or symbolically without --v
    Ad {
        /// Eight comma-separated rationals
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// Gram matrix of the Killing form
    Killing,
    /// The trilinear form tr(XYZ − ZYX) on three coordinate vectors
    C3 {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Transport data of a compact or non-split real form
    Realform {
        #[arg(long)]
        i: u8,
    },
    /// Signature of the quadratic invariant of a trivector
    Signature {
        #[arg(long, default_value = "builtin:w")]
        x: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum RepCommand {
    /// Weyl dimension of an irreducible representation
    Dim { kind: String, weight: String },
    /// Decomposition of a tensor product of two irreducibles
    Tensor {
        kind: String,
        lambda: String,
        mu: String,
    },
    /// Decomposition of the third exterior power of an irreducible
    Alt3 { kind: String, lambda: String },
    /// Highest weights of all irreducibles of a given dimension
    IrrepsOfDim { kind: String, dim: u64 },
    /// Algebra and small-representation dimensions of the simple Lie algebras
    Table45 {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Form pair: 0 for the split form, 1 for the unitary form
    #[arg(long)]
    pub i: u8,
    /// Matrix JSON file or builtin:identity
    #[arg(long, default_value = "builtin:identity")]
    pub g: String,
    /// Sup-norm radius of the integer box
    #[arg(long = "box")]
    pub radius: u32,
    /// Window as a,b
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    /// Number of sampled vectors instead of exhaustive enumeration
    #[arg(long)]
    pub sample: Option<usize>,
    /// Seed for --sample
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A trivector and, for the named constants in the orbit of w, a transport
/// carrying w to it.
pub struct LoadedTrivector {
    pub x: Trivector,
    pub transport: Option<GroupElement<GaussianRational>>,
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Resolve `builtin:<name>` or a JSON file path to a trivector.
pub fn load_trivector(spec: &str) -> Result<LoadedTrivector, CliError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return match name {
            "w" => Ok(LoadedTrivector {
                x: w(),
                transport: Some(GroupElement::identity()),
            }),
            "wprime" => Ok(LoadedTrivector {
                x: w_prime(),
                transport: None,
            }),
            "w1" | "w2" => {
                let rf = real_form(if name == "w1" { 1 } else { 2 }).map_err(input)?;
                let transport = Some(rf.transport());
                Ok(LoadedTrivector {
                    x: rf.w_i,
                    transport,
                })
            }
            other => Err(CliError::UnknownBuiltin(other.into())),
        };
    }
    let x = Trivector::from_json(&read_json(Path::new(spec))?).map_err(input)?;
    Ok(LoadedTrivector { x, transport: None })
}

/// Resolve `builtin:tau` or a JSON file path to a rational group element.
pub fn load_group_element(spec: &str) -> Result<GroupElement, CliError> {
    match spec.strip_prefix("builtin:") {
        Some("tau") => {
            GroupElement::new(Rational::from_integer(1.into()), tau_matrix()).map_err(input)
        }
        Some(other) => Err(CliError::UnknownBuiltin(other.into())),
        None => GroupElement::from_json(&read_json(Path::new(spec))?).map_err(input),
    }
}

fn load_transport(
    path: Option<&PathBuf>,
) -> Result<Option<GroupElement<GaussianRational>>, CliError> {
    path.map(|p| GroupElement::from_json(&read_json(p)?).map_err(input))
        .transpose()
}

fn load_real_map(spec: &str) -> Result<RealLinearMap, CliError> {
    match spec {
        "builtin:identity" => Ok(RealLinearMap::identity()),
        _ => RealLinearMap::from_json(&read_json(Path::new(spec))?).map_err(input),
    }
}

/// Parse comma-separated rationals such as `1,0,-1/2,0,0,0,0,0`.
pub fn parse_coords(s: &str) -> Result<Vec<Rational>, CliError> {
    let v: Vec<Rational> = s
        .split(',')
        .map(|p| parse_rational(p.trim()))
        .collect::<Result<_, _>>()
        .map_err(input)?;
    if v.len() != DIM {
        return Err(CliError::Input(format!(
            "expected {DIM} coordinates, got {}",
            v.len()
        )));
    }
    Ok(v)
}

fn parse_window(s: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts[..] else {
        return Err(CliError::Input(format!("window must be a,b: {s}")));
    };
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Input(format!("bad window bound '{t}'")))
    };
    Ok((num(a)?, num(b)?))
}

fn root_system_named(s: &str) -> Result<RootSystem, CliError> {
    let (kind, rank) = parse_type(s).map_err(input)?;
    root_system(kind, rank).map_err(input)
}

/// Result of a command: JSON to write and the exit code.
struct Output {
    value: Value,
    out: Option<PathBuf>,
    code: i32,
}

impl Output {
    fn ok(value: Value, out: Option<PathBuf>) -> Self {
        Output {
            value,
            out,
            code: EXIT_OK,
        }
    }
}

fn execute(cmd: Command) -> Result<Output, CliError> {
    Ok(match cmd {
        Command::Factor { x, transport } => {
            let loaded = load_trivector(&x.x)?;
            let transport = load_transport(transport.as_ref())?.or(loaded.transport);
            let pair = factor_invariants(&loaded.x, transport.as_ref()).map_err(input)?;
            let mut v = pair.to_json();
            v["q_poly"] = json!(pair.q.to_poly().to_string());
            v["f_poly"] = json!(pair.f.poly().to_string());
            Output::ok(v, x.out)
        }
        Command::Smatrix { x } => Output::ok(s_matrix(&load_trivector(&x.x)?.x).to_json(), x.out),
        Command::Phi { x, transport } => {
            let loaded = load_trivector(&x.x)?;
            let transport = load_transport(transport.as_ref())?.or(loaded.transport);
            Output::ok(
                phi(&loaded.x, transport.as_ref()).map_err(input)?.to_json(),
                x.out,
            )
        }
        Command::Act { x, el } => {
            let el = load_group_element(&el)?;
            Output::ok(act(&el, &load_trivector(&x.x)?.x).to_json(), x.out)
        }
        Command::Semistable { x } => Output::ok(
            json!({ "semistable": is_semistable(&load_trivector(&x.x)?.x) }),
            x.out,
        ),
        Command::Lie(lie) => Output::ok(execute_lie(lie)?, None),
        Command::Rep(rep) => Output::ok(execute_rep(rep)?, None),
        Command::Scan(args) => {
            let g = load_real_map(&args.g)?;
            let mode = match args.sample {
                Some(count) => ScanMode::Sample {
                    count,
                    seed: args.seed,
                },
                None => ScanMode::Exhaustive,
            };
            let cfg = ScanConfig::new(args.i, g, args.radius, parse_window(&args.window)?, mode);
            Output::ok(scan(&cfg).map_err(input)?.to_json(), args.out)
        }
        Command::ConstructH { r, lambda, out } => Output::ok(
            construct_h(r, &LatticeBasis::anchored(), lambda)
                .map_err(input)?
                .to_json(),
            out,
        ),
        Command::Rationality { i, g, bound, out } => {
            let g = load_real_map(&g)?;
            Output::ok(
                rationality_report(i, &g, bound, 1e-13)
                    .map_err(input)?
                    .to_json(),
                out,
            )
        }
        Command::Verify { suite, out } => {
            let outcomes = verify(&suite)?;
            let code = if outcomes.iter().all(VerificationOutcome::passed) {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            Output {
                value: verify::report_json(&suite, &outcomes),
                out,
                code,
            }
        }
    })
}

fn execute_lie(cmd: LieCommand) -> Result<Value, CliError> {
    Ok(match cmd {
        LieCommand::Ad { v: Some(v) } => ad_matrix(&parse_coords(&v)?).to_json(),
        LieCommand::Ad { v: None } => {
            let m = ad_matrix_symbolic();
            let rows: Vec<Vec<String>> = (0..DIM)
                .map(|i| (0..DIM).map(|j| m.get(i, j).to_string()).collect())
                .collect();
            json!(rows)
        }
        LieCommand::Killing => killing_gram().to_json(),
        LieCommand::C3 { u, v, w } => {
            json!({ "value": rational_to_string(&trilinear_c(&parse_coords(&u)?, &parse_coords(&v)?, &parse_coords(&w)?)) })
        }
        LieCommand::Realform { i } => real_form(i).map_err(input)?.to_json(),
        LieCommand::Signature { x } => {
            let loaded = load_trivector(&x)?;
            let pair = factor_invariants(&loaded.x, loaded.transport.as_ref()).map_err(input)?;
            let (pos, neg) = signature(&pair.q);
            json!({ "positive": pos, "negative": neg })
        }
    })
}

fn execute_rep(cmd: RepCommand) -> Result<Value, CliError> {
    Ok(match cmd {
        RepCommand::Dim { kind, weight } => {
            let rs = root_system_named(&kind)?;
            let d = weyl_dim(&rs, &parse_weight(&weight).map_err(input)?).map_err(input)?;
            serde_json::from_str(&d.to_string()).expect("integers are JSON numbers")
        }
        RepCommand::Tensor { kind, lambda, mu } => {
            let rs = root_system_named(&kind)?;
            let d = tensor_decompose(
                &rs,
                &parse_weight(&lambda).map_err(input)?,
                &parse_weight(&mu).map_err(input)?,
            )
            .map_err(input)?;
            weights_to_json(&d)
        }
        RepCommand::Alt3 { kind, lambda } => {
            let rs = root_system_named(&kind)?;
            weights_to_json(
                &alt3_decompose(&rs, &parse_weight(&lambda).map_err(input)?).map_err(input)?,
            )
        }
        RepCommand::IrrepsOfDim { kind, dim } => {
            json!(irreps_of_dim(&root_system_named(&kind)?, dim))
        }
        RepCommand::Table45 { max_rank } => {
            let rows: Vec<Value> = table45(1..=max_rank)
                .into_iter()
                .map(|r| {
                    json!({
                        "algebra": r.name,
                        "algebra_dim": r.algebra_dim,
                        "rep_weight": weight_to_string(&r.rep_weight),
                        "rep_dim": r.rep_dim.to_string(),
                        "adjoint_dim": r.adjoint_dim.to_string(),
                    })
                })
                .collect();
            json!(rows)
        }
    })
}

fn write_output(value: &Value, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io {
            path: "<stdout>".into(),
            message: e.to_string(),
        }),
    }
}

/// Parse `argv` (including the program name), run the command and return
/// the exit code, writing results to `stdout` and diagnostics to `stderr`.
pub fn run_with<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    let result = execute(cli.command)
        .and_then(|o| write_output(&o.value, o.out.as_deref(), stdout).map(|_| o.code));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(
            std::iter::once("pvs").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn rep_dim_example() {
        let (code, out, _) = run_capture(&["rep", "dim", "A3", "1,0,1"]);
        assert_eq!((code, out.as_str()), (0, "15\n"));
    }

    #[test]
    fn factor_builtin_w() {
        let (code, out, _) = run_capture(&["factor", "--x", "builtin:w"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(
            v["q_poly"].as_str().unwrap(),
            crate::golden::q_w().to_string()
        );
        assert_eq!(
            v["f_poly"].as_str().unwrap(),
            crate::golden::f_w().to_string()
        );
        assert_eq!(v["sign_exact"], json!(true));
    }

    #[test]
    fn usage_and_input_errors_exit_one() {
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["factor", "--x", "builtin:nope"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["factor", "--x", "/nonexistent/x.json"]).0,
            EXIT_USAGE
        );
        let (code, _, err) = run_capture(&["verify", "bogus"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("unknown suite"));
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn unknown_suite_is_typed() {
        assert_eq!(verify("bogus"), Err(CliError::UnknownSuite("bogus".into())));
    }

    #[test]
    fn coordinate_parsing() {
        assert_eq!(
            parse_coords("1,0,-1/2,0,0,0,0,0").unwrap()[2],
            Rational::new((-1).into(), 2.into())
        );
        assert!(parse_coords("1,2").is_err());
        assert_eq!(parse_window("-10, 10").unwrap(), (-10.0, 10.0));
        assert!(parse_window("1").is_err());
    }
}
