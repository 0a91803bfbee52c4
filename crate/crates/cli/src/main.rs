use std::fmt::Write as _;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use bmgamma::coeffs::families;
use bmgamma::error_model::{self, ErrorModelError};
use bmgamma::gamma::{compute_gamma, GammaError, RunConfig};
use bmgamma::mp::rational::sci_decimal;

#[derive(Parser)]
#[command(
    name = "bmgamma",
    version,
    about = "Euler's constant via the Brent-McMillan algorithm, with its error-expansion toolkit"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute gamma to a certified number of decimal digits
    Gamma {
        /// Decimal digits to certify
        #[arg(short = 'd', long = "digits")]
        digits: usize,
        /// Override the series argument (the certification check still runs)
        #[arg(long)]
        x: Option<u64>,
        /// Guard bits on top of the digit target (floor 32)
        #[arg(long, default_value_t = 96)]
        guard: u32,
        #[arg(long)]
        json: bool,
    },
    /// Relative deviation of the M-term remainder expansions at x = 50, 100, 150
    Table1 {
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Print a coefficient family from the exact generators
    Coeffs {
        /// Family to print
        #[arg(long, value_enum)]
        which: Family,
        /// Number of leading entries (orders 0 .. max-1)
        #[arg(long)]
        max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Verify |eps(x)| < 0.863/x^2 over an integer range (5 <= from <= to <= 60)
    BoundCheck {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exact optimally-truncated remainder at argument x vs its M-term expansion
    Remainder {
        /// Series argument (also the truncation index)
        #[arg(long)]
        x: u64,
        /// Expansion terms to use, 1..=5
        #[arg(long = "M")]
        m: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    C,
    A,
    G,
    D,
    B,
    Ratio,
    Delta,
    Central,
}

impl Family {
    fn key(self) -> &'static str {
        match self {
            Family::C => "c",
            Family::A => "a",
            Family::G => "g",
            Family::D => "d",
            Family::B => "b",
            Family::Ratio => "ratio",
            Family::Delta => "delta",
            Family::Central => "central",
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Model(#[from] ErrorModelError),
    #[error("{0}")]
    Range(String),
    #[error("bound violated at x = {0}")]
    BoundViolated(u64),
}

impl AppError {
    fn exit_code(&self) -> i32 {
        match self {
            AppError::Gamma(GammaError::Certification { .. }) => 2,
            AppError::Gamma(GammaError::Mp(_)) => 4,
            AppError::Model(ErrorModelError::Coeff(_)) => 3,
            AppError::Model(_) => 4,
            AppError::Range(_) => 3,
            AppError::BoundViolated(_) => 2,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    emit(&out);
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

/// Flush the buffered report. A consumer that closed the pipe early
/// (`bmgamma table1 | head -1`) is a normal exit, not an error.
fn emit(out: &str) {
    use std::io::Write as _;
    let mut so = std::io::stdout().lock();
    match so.write_all(out.as_bytes()).and_then(|()| so.flush()) {
        Ok(()) => {}
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(4);
        }
    }
}

fn run(cli: Cli, out: &mut String) -> Result<(), AppError> {
    match cli.cmd {
        Cmd::Gamma {
            digits,
            x,
            guard,
            json,
        } => cmd_gamma(out, digits, x, guard, json),
        Cmd::Table1 { json, csv } => cmd_table1(out, json, csv),
        Cmd::Coeffs { which, max, json } => cmd_coeffs(out, which, max, json),
        Cmd::BoundCheck { from, to, json } => cmd_bound_check(out, from, to, json),
        Cmd::Remainder { x, m, json } => cmd_remainder(out, x, m, json),
    }
}

fn cmd_gamma(
    out: &mut String,
    digits: usize,
    x: Option<u64>,
    guard: u32,
    json: bool,
) -> Result<(), AppError> {
    if digits < 1 || x == Some(0) {
        return Err(AppError::Range(
            "gamma needs digits >= 1 and a positive x".into(),
        ));
    }
    let cfg = RunConfig {
        guard_bits: guard,
        override_x: x,
    };
    let r = compute_gamma(digits, &cfg)?;
    let err_str = sci_decimal(&r.certified_abs_error, 3);
    if json {
        let doc = json!({
            "command": "gamma",
            "params": {"digits": digits, "guard_bits": guard, "x_override": x},
            "rows": [{
                "value": r.value,
                "x": r.x,
                "precision_bits": r.precision_bits,
                "certified_abs_error": err_str,
                "wall_ms": r.wall_ms,
            }],
        });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        let _ = writeln!(out, "gamma = {}", r.value);
        let _ = writeln!(out, "certified |error| <= {err_str}");
        let _ = writeln!(
            out,
            "x = {}, precision = {} bits, wall = {} ms",
            r.x, r.precision_bits, r.wall_ms
        );
    }
    Ok(())
}

const TABLE1_XS: [u64; 3] = [50, 100, 150];

fn cmd_table1(out: &mut String, json: bool, csv: bool) -> Result<(), AppError> {
    let mut cols = Vec::new();
    for x in TABLE1_XS {
        cols.push(error_model::table1_column(x, 5)?);
    }
    if json {
        let rows: Vec<_> = (0..5)
            .map(|m| {
                json!({
                    "m": m + 1,
                    "x50": cols[0][m],
                    "x100": cols[1][m],
                    "x150": cols[2][m],
                })
            })
            .collect();
        let doc = json!({
            "command": "table1",
            "params": {"xs": TABLE1_XS, "m_max": 5},
            "rows": rows,
        });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    } else if csv {
        let _ = writeln!(out, "M,x=50,x=100,x=150");
        for m in 0..5 {
            let _ = writeln!(out, "{},{},{},{}", m + 1, cols[0][m], cols[1][m], cols[2][m]);
        }
    } else {
        let _ = writeln!(out, "{:<4}{:>12}{:>12}{:>12}", "M", "x=50", "x=100", "x=150");
        for m in 0..5 {
            let _ = writeln!(
                out,
                "{:<4}{:>12}{:>12}{:>12}",
                m + 1,
                cols[0][m],
                cols[1][m],
                cols[2][m]
            );
        }
    }
    Ok(())
}

fn cmd_coeffs(out: &mut String, which: Family, max: usize, json: bool) -> Result<(), AppError> {
    let fam = families::find(which.key()).expect("registry covers every family flag");
    let rows = fam.rows(max).map_err(|e| AppError::Model(e.into()))?;
    if json {
        let row_docs: Vec<_> = rows
            .iter()
            .map(|r| json!({"label": r.label, "value": r.value}))
            .collect();
        let doc = json!({
            "command": "coeffs",
            "params": {
                "which": which.key(),
                "max": max,
                "describe": fam.describe(),
                "prefactor": fam.prefactor(),
            },
            "rows": row_docs,
        });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        let _ = writeln!(out, "{}", fam.describe());
        if let Some(pre) = fam.prefactor() {
            let _ = writeln!(out, "prefactor: {pre}");
        }
        for r in &rows {
            let _ = writeln!(out, "{} = {}", r.label, r.value);
        }
    }
    Ok(())
}

fn cmd_bound_check(out: &mut String, from: u64, to: u64, json: bool) -> Result<(), AppError> {
    if !(5..=60).contains(&from) || !(5..=60).contains(&to) || from > to {
        return Err(AppError::Range(format!(
            "bound-check range must satisfy 5 <= from <= to <= 60, got {from}..{to}"
        )));
    }
    let mut rows = Vec::new();
    let mut first_violation = None;
    for x in from..=to {
        let row = error_model::demailly_check(x)?;
        if !row.pass && first_violation.is_none() {
            first_violation = Some(x);
        }
        rows.push(row);
    }
    if json {
        let row_docs: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "x": r.x,
                    "delta": r.delta.to_sci(6),
                    "epsilon": r.epsilon.to_sci(6),
                    "bound": sci_decimal(&r.bound, 6),
                    "pass": r.pass,
                })
            })
            .collect();
        let doc = json!({
            "command": "bound-check",
            "params": {"from": from, "to": to},
            "rows": row_docs,
        });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        let _ = writeln!(
            out,
            "{:<5}{:>16}{:>16}{:>16}  {}",
            "x", "delta", "epsilon", "0.863/x^2", "pass"
        );
        for r in &rows {
            let _ = writeln!(
                out,
                "{:<5}{:>16}{:>16}{:>16}  {}",
                r.x,
                r.delta.to_sci(6),
                r.epsilon.to_sci(6),
                sci_decimal(&r.bound, 6),
                if r.pass { "yes" } else { "NO" }
            );
        }
        if first_violation.is_none() {
            let _ = writeln!(out, "all {} rows within bound", rows.len());
        }
    }
    match first_violation {
        Some(x) => Err(AppError::BoundViolated(x)),
        None => Ok(()),
    }
}

fn cmd_remainder(out: &mut String, x: u64, m: usize, json: bool) -> Result<(), AppError> {
    if x < 1 {
        return Err(AppError::Range("remainder needs x >= 1".into()));
    }
    let rep = error_model::remainder_report(x, m)?;
    if json {
        let doc = json!({
            "command": "remainder",
            "params": {"x": x, "m": m},
            "rows": [{
                "exact": rep.exact.to_sci(10),
                "predicted": rep.predicted.to_sci(10),
                "rel_deviation": rep.rel_deviation.to_sci(4),
            }],
        });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        let _ = writeln!(out, "exact remainder    = {}", rep.exact.to_sci(10));
        let _ = writeln!(out, "{}-term expansion   = {}", rep.m, rep.predicted.to_sci(10));
        let _ = writeln!(out, "relative deviation = {}", rep.rel_deviation.to_sci(4));
    }
    Ok(())
}
