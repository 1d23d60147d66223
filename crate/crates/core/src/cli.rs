//! Command line front end: `analyze`, `regularity`, `iso`, `make-regular` and
//! `perm-poly`.
//!
//! Exit codes: 0 success (regular, isomorphic), 1 negative verdict, 2
//! isomorphism budget exhausted, 3 parse error, 4 not an orthogonal array,
//! 5 any other error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use itertools::Itertools;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclotomic::{CycInt, CycRational};
use crate::design::{DefiningEquation, Design};
use crate::error::Error;
use crate::indicator::{gwlp, strength_from_coefficients, IndicatorTable};
use crate::isomorphism::{is_isomorphic, IsoBudget, IsoOutcome};
use crate::permutation::{check_perm_constraints, is_monomial, poly_coefficients, LevelPerm};
use crate::regularity::regularity_check;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_EXHAUSTED: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_NOT_OA: u8 = 4;
pub const EXIT_OTHER: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "oa-regularity", version, about = "Regularity and isomorphism of prime-level fractional factorial designs")]
pub struct Cli {
    /// Worker threads for the parallel parts.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strength, GWLP and indicator coefficients of a design.
    Analyze {
        file: PathBuf,
        /// Print non-zero coefficients of order at most K (default: all).
        #[arg(long, value_name = "K")]
        max_order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether level permutations turn a design into a regular fraction.
    Regularity {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for a factor and level relabeling mapping design A onto design B.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 300.0)]
        max_seconds: f64,
        #[arg(long)]
        json: bool,
    },
    /// Write the regular fraction defined by one or more equations.
    MakeRegular {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        m: usize,
        /// `a1,...,am=k`, meaning `X_1^a1 ... X_m^am = w_k`.
        #[arg(long = "eq", required = true)]
        equations: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Permutation polynomial coefficients of a level permutation.
    PermPoly {
        #[arg(long)]
        s: usize,
        /// Images of levels 0..s-1, e.g. `1,0,2,3,4`.
        image: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Parse { .. }) => EXIT_PARSE,
            CliError::Lib(Error::NotOrthogonalArray) => EXIT_NOT_OA,
            _ => EXIT_OTHER,
        }
    }
}

impl Command {
    fn json(&self) -> bool {
        match self {
            Command::Analyze { json, .. }
            | Command::Regularity { json, .. }
            | Command::Iso { json, .. }
            | Command::PermPoly { json, .. } => *json,
            Command::MakeRegular { .. } => false,
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// exit code. Errors go to `err`, or to `out` as JSON when `--json` is set.
pub fn main_with_args<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_OTHER } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let json = cli.command.json();
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let code = e.exit_code();
            if json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string(), "exit_code": code }));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            code
        }
    }
}

pub fn run(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<u8, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| dispatch(&cli.command, out))
}

fn dispatch(command: &Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Analyze { file, max_order, json } => analyze(&read_design(file)?, *max_order, *json, out),
        Command::Regularity { file, json } => regularity(&read_design(file)?, *json, out),
        Command::Iso { a, b, max_seconds, json } => {
            if !(max_seconds.is_finite() && *max_seconds > 0.0) {
                return Err(CliError::Usage(format!("--max-seconds must be positive, got {max_seconds}")));
            }
            iso(&read_design(a)?, &read_design(b)?, *max_seconds, *json, out)
        }
        Command::MakeRegular { s, m, equations, out: path } => make_regular(*s, *m, equations, path.as_deref(), out),
        Command::PermPoly { s, image, json } => perm_poly(*s, image, *json, out),
    }
}

fn read_design(path: &Path) -> Result<Design, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    Ok(Design::parse_bytes(&bytes)?)
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

fn format_coefficient(numerator: &CycInt, denominator: u128) -> String {
    match i128::try_from(denominator).map(|q| CycRational::new(numerator.clone(), q)) {
        Ok(Ok(r)) => r.to_string(),
        _ => format!("({numerator})/{denominator}"),
    }
}

fn alpha_text(alpha: &[u8]) -> String {
    format!("({})", alpha.iter().join(","))
}

fn analyze(d: &Design, max_order: Option<usize>, json: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let combinatorial = d.max_strength_combinatorial();
    let from_coefficients = strength_from_coefficients(d);
    assert_eq!(combinatorial, from_coefficients, "strength disagrees between the two methods");
    let gwlp = gwlp(d)?;
    let table = IndicatorTable::up_to_order(d, max_order.unwrap_or(d.factors()));
    let denominator = table.denominator();
    let coefficients: Vec<(&Vec<u8>, String)> =
        table.nonzero().map(|(alpha, e)| (alpha, format_coefficient(&e.numerator, denominator))).collect();

    if json {
        let mut indicator = table.to_json();
        if let Some(entries) = indicator["entries"].as_array_mut() {
            for (entry, (_, text)) in entries.iter_mut().zip(&coefficients) {
                entry["value"] = Value::from(text.as_str());
            }
        }
        let report = json!({
            "n": d.runs(),
            "m": d.factors(),
            "s": d.levels(),
            "strength": combinatorial,
            "gwlp": gwlp,
            "indicator": indicator,
        });
        emit(out, report)?;
        return Ok(EXIT_OK);
    }
    emit(out, format_args!("n = {}, m = {}, s = {}", d.runs(), d.factors(), d.levels()))?;
    emit(out, format_args!("strength: {combinatorial}"))?;
    emit(out, format_args!("GWLP: {gwlp}"))?;
    emit(out, format_args!("non-zero coefficients: {}", coefficients.len()))?;
    for (alpha, text) in &coefficients {
        emit(out, format_args!("b{} = {text}", alpha_text(alpha)))?;
    }
    Ok(EXIT_OK)
}

fn regularity(d: &Design, json: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let report = regularity_check(d)?;
    if json {
        emit(out, serde_json::to_value(&report).map_err(|e| CliError::Usage(e.to_string()))?)?;
    } else {
        emit(out, &report)?;
    }
    Ok(if report.regular { EXIT_OK } else { EXIT_NEGATIVE })
}

fn iso(a: &Design, b: &Design, max_seconds: f64, json: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let outcome = is_isomorphic(a, b, IsoBudget::seconds(max_seconds))?;
    let (verdict, code) = match &outcome {
        IsoOutcome::Isomorphic(_) => ("isomorphic", EXIT_OK),
        IsoOutcome::NotIsomorphic => ("not isomorphic", EXIT_NEGATIVE),
        IsoOutcome::Exhausted => ("undecided: budget exhausted", EXIT_EXHAUSTED),
    };
    let witness = match &outcome {
        IsoOutcome::Isomorphic(w) => Some(w),
        _ => None,
    };
    if json {
        emit(out, json!({ "verdict": verdict, "witness": witness }))?;
        return Ok(code);
    }
    emit(out, verdict)?;
    if let Some(w) = witness {
        emit(out, format_args!("column map: {}", w.column_map.iter().map(|c| format!("X{}", c + 1)).join(", ")))?;
        for (j, p) in w.level_perms.iter().enumerate() {
            let image = p.image().iter().map(|k| format!("w{k}")).join(",");
            emit(out, format_args!("X{}: ({image})", j + 1))?;
        }
    }
    Ok(code)
}

fn make_regular(s: usize, m: usize, equations: &[String], path: Option<&Path>, out: &mut dyn Write) -> Result<u8, CliError> {
    let eqs = equations.iter().map(|e| DefiningEquation::parse(e, s)).collect::<Result<Vec<_>, _>>()?;
    let d = Design::regular_fraction(s, m, &eqs)?;
    let text = d.serialize();
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_owned(), source })?,
        None => write!(out, "{text}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })?,
    }
    Ok(EXIT_OK)
}

fn perm_poly(s: usize, image: &str, json: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let p = LevelPerm::parse(image, s)?;
    let u = poly_coefficients(&p);
    let monomial = is_monomial(&p);
    // the exact check is limited in s; report it as skipped beyond that
    let constraints = check_perm_constraints(&u).ok();
    let values: Vec<String> = u.numerators().iter().map(|n| format_coefficient(n, s as u128)).collect();
    if json {
        let report = json!({
            "s": s,
            "image": p,
            "numerators": u.numerators().iter().map(|n| n.coeffs().iter().map(|&c| c as i64).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "denominator": s,
            "coefficients": values,
            "monomial": monomial.map(|(h, k)| json!({ "h": h, "k": k })),
            "constraints": constraints,
            "constraints_hold": constraints.as_ref().map(|c| c.all_hold()),
        });
        emit(out, report)?;
        return Ok(EXIT_OK);
    }
    for (h, v) in values.iter().enumerate() {
        emit(out, format_args!("u{h} = {v}"))?;
    }
    match monomial {
        Some((h, k)) => emit(out, format_args!("monomial: w{k} * X^{h}"))?,
        None => emit(out, "monomial: no")?,
    }
    match &constraints {
        Some(c) if c.all_hold() => emit(out, format_args!("constraints: pass (sum = w{})", c.sum_root.unwrap_or(0)))?,
        Some(_) => emit(out, "constraints: FAIL")?,
        None => emit(out, "constraints: skipped (s too large for the exact check)")?,
    }
    Ok(EXIT_OK)
}
