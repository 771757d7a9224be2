//! Command-line front end. Every command writes one JSON document to
//! standard output.
//!
//! Exit codes: 0 on success, 1 when an internal invariant check fails, 2 on
//! malformed input, unreadable files or bad usage.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{self, Algebra, IdentityReport};
use crate::audit;
use crate::bracket::{graded_bracket, InsertionMode};
use crate::cochain::SymCochain;
use crate::complex;
use crate::deformation::{self, DeformationSeries, GaugeSeries};
use crate::error::{Error, Result};
use crate::exactla::format_vec;

#[derive(Parser, Debug)]
#[command(name = "jordan-dgla", version, about = "Exact symmetric-cochain computations for commutative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jordan, operator, six-term and printed cubic identity checks.
    Check { algebra: PathBuf },
    /// Basis of the derivation algebra.
    Derivations { algebra: PathBuf },
    /// Kernel, image and cohomology dimensions of the differential.
    Cohomology {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "sum")]
        mode: InsertionMode,
        algebra: PathBuf,
    },
    /// Graded bracket of two cochains.
    Bracket {
        #[arg(long, default_value = "sum")]
        mode: InsertionMode,
        f: PathBuf,
        g: PathBuf,
    },
    /// Order-by-order Maurer–Cartan solve starting from a first-order term.
    McSolve {
        #[arg(long)]
        phi1: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "sum")]
        mode: InsertionMode,
        algebra: PathBuf,
    },
    /// Transport of the product along exp(t f1 + t^2 f2 + ...).
    Gauge {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        order: usize,
        algebra: PathBuf,
    },
    /// Claim-by-claim audit of one algebra or the built-in corpus.
    Audit {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        algebra: Option<PathBuf>,
        #[arg(long)]
        all: bool,
        /// Human-readable text instead of JSON.
        #[arg(long)]
        text: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn load_algebra(path: &Path) -> Result<Algebra> {
    Algebra::from_json(&read(path)?)
}

fn load_cochain(path: &Path) -> Result<SymCochain> {
    SymCochain::from_json(&read(path)?)
}

fn verdict(r: &IdentityReport) -> &'static str {
    if r.holds {
        "holds"
    } else {
        "fails"
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Identity verdicts and witnesses, as printed by `check`.
pub fn check_report(a: &Algebra) -> Value {
    let cubic = algebra::check_cubic_jordan(a);
    let printed = algebra::check_printed_cubic(a);
    let operator = algebra::check_operator_identity(a);
    let six = algebra::check_six_term(a);
    let mut witnesses = serde_json::Map::new();
    for (name, r) in [("cubic", &cubic), ("printed_cubic", &printed), ("operator", &operator), ("six_term", &six)] {
        if let Some(w) = &r.witness {
            witnesses.insert(name.to_string(), to_value(w));
        }
    }
    json!({
        "dim": a.dim(),
        "unit": a.find_unit().map(|u| format_vec(&u)),
        "cubic": verdict(&cubic),
        "printed_cubic": verdict(&printed),
        "operator": verdict(&operator),
        "six_term": if six.holds { "vacuous" } else { "fails" },
        "witnesses": witnesses,
    })
}

/// Series, residuals and obstruction, as printed by `mc-solve`.
pub fn mc_solve_report(a: Algebra, phi1: SymCochain, order: usize, mode: InsertionMode) -> Result<Value> {
    if order == 0 {
        return Err(Error::Input("--order must be at least 1".into()));
    }
    if phi1.arity() != 2 || phi1.dim() != a.dim() {
        return Err(Error::Input(format!("first-order term must be a C^2 cochain on dimension {}", a.dim())));
    }
    let start = DeformationSeries::new(a, vec![phi1], mode)?;
    let (series, obstruction) = deformation::mc_extend(&start, order)?;
    let reached = series.order();
    let residuals = deformation::mc_residual(&series, reached)?;
    // orders 2..reached were solved, so their residuals must vanish
    if residuals.iter().skip(2).any(|r| !r.is_zero()) {
        return Err(Error::Invariant("solved Maurer–Cartan orders left a nonzero residual".into()));
    }
    let obstruction = obstruction.map(|o| {
        json!({
            "order": o.order,
            "residual": to_value(&o.residual.to_file()),
            "class": to_value(&o.class),
        })
    });
    Ok(json!({
        "mode": mode,
        "requested_order": order,
        "solved_order": reached,
        "first_order_cocycle": residuals[1].is_zero(),
        "series": to_value(&series.to_entries()),
        "residuals": residuals.iter().enumerate().map(|(n, r)| json!({"order": n, "cochain": to_value(&r.to_file())})).collect::<Vec<_>>(),
        "obstruction": obstruction,
    }))
}

fn execute(cmd: Command) -> Result<String> {
    let value = match cmd {
        Command::Check { algebra } => check_report(&load_algebra(&algebra)?),
        Command::Derivations { algebra } => {
            let basis = complex::derivations(&load_algebra(&algebra)?);
            json!({ "dimension": basis.len(), "basis": basis })
        }
        Command::Cohomology { degree, mode, algebra } => {
            to_value(&complex::cohomology(&load_algebra(&algebra)?, degree, mode))
        }
        Command::Bracket { mode, f, g } => {
            let (f, g) = (load_cochain(&f)?, load_cochain(&g)?);
            if f.dim() != g.dim() {
                return Err(Error::Input(format!("cochains on dimensions {} and {}", f.dim(), g.dim())));
            }
            let b = graded_bracket(&f, &g, mode).map_err(|e| Error::Input(e.to_string()))?;
            to_value(&b.to_file())
        }
        Command::McSolve { phi1, order, mode, algebra } => {
            let a = load_algebra(&algebra)?;
            let phi1 = load_cochain(&phi1)?;
            mc_solve_report(a, phi1, order, mode)?
        }
        Command::Gauge { series, order, algebra } => {
            let a = load_algebra(&algebra)?;
            if order == 0 {
                return Err(Error::Input("--order must be at least 1".into()));
            }
            let t = GaugeSeries::from_json(&read(&series)?, a.dim())?;
            to_value(&deformation::gauge_transport(&t, &a, order)?.to_entries())
        }
        Command::Audit { algebra, all, text } => {
            let reports = match (algebra, all) {
                (_, true) => audit::audit_all()?,
                (Some(path), false) => {
                    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    vec![audit::audit(&name, &load_algebra(&path)?)?]
                }
                (None, false) => return Err(Error::Input("audit needs an algebra file or --all".into())),
            };
            if text {
                return Ok(audit::render_text(&reports));
            }
            if all {
                to_value(&reports)
            } else {
                to_value(&reports[0])
            }
        }
    };
    Ok(serde_json::to_string_pretty(&value).expect("serializable") + "\n")
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => 1,
        _ => 2,
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("jordan-dgla").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["check"]).0, 2);
        assert_eq!(run_args(&["cohomology", "--degree", "x", "a.json"]).0, 2);
        assert_eq!(run_args(&["audit"]).0, 2);
        let (code, _, err) = run_args(&["check", "/nonexistent/algebra.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("i/o error"));
    }

    #[test]
    fn invariant_errors_exit_one() {
        assert_eq!(exit_code(&Error::Invariant("x".into())), 1);
        assert_eq!(exit_code(&Error::Input("x".into())), 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("mc-solve"));
    }
}
