//! `baxter` — exact enumeration and verification of Baxter matrices.
//!
//! Exit codes: 0 on success or PASS, 1 when a check or verification fails,
//! 2 on usage or budget errors.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use baxter::automaton::{build_automaton_with_limit, Automaton, DEFAULT_MAX_ROWS};
use baxter::brute::{
    brute_count_by_extra_with, brute_count_with, BruteMode, BruteOpts, DEFAULT_BUDGET_BITS,
};
use baxter::counting::{
    count_from_skeletons_by_extra_on, count_from_skeletons_on, dp_count_by_extra_on, dp_count_on,
    eventual_polynomial_on, extra_polynomials_on, CountEntry, CountTable, CountingError,
    CountingPolynomial,
};
use baxter::matrix::BinaryMatrix;
use baxter::verify::{render_reports, reports_to_json, verify_suite};

#[derive(Parser)]
#[command(
    name = "baxter",
    version,
    about = "Exact enumeration and verification toolkit for Baxter matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a matrix file is Baxter; lists violations otherwise
    Check {
        /// Matrix file in the 0/1 text format, or '-' for stdin
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// Count r x k Baxter matrices exactly
    Count {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Split the count by number of extra 1's
        #[arg(long)]
        by_extra: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Brute-force scan budget in cells
        #[arg(long, default_value_t = DEFAULT_BUDGET_BITS)]
        brute_budget: u32,
        /// Largest row count the automaton may be built for
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_r: usize,
    },
    /// Print the eventual counting polynomial for r rows
    Poly {
        #[arg(short)]
        r: usize,
        /// One polynomial per extra-ones class instead of the total
        #[arg(long)]
        extras: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_r: usize,
    },
    /// Emit the column-reading automaton A_r
    Automaton {
        #[arg(short)]
        r: usize,
        #[arg(long, value_enum)]
        format: GraphFormat,
        /// Write to a file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_r: usize,
    },
    /// Run the verification suite for all row counts up to r
    Verify {
        #[arg(short, default_value_t = 5)]
        r: usize,
        /// Column range for the counting cross-validation
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
        #[arg(long, default_value_t = DEFAULT_BUDGET_BITS)]
        brute_budget: u32,
    },
    /// Time the counting methods against each other
    Bench {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET_BITS)]
        brute_budget: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_r: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Dynamic programming with a skeleton-path cross-check
    Auto,
    Dp,
    Skeleton,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

/// Successful command output; `failed` selects exit code 1 over 0.
struct Outcome {
    stdout: String,
    failed: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            failed: false,
        }
    }

    fn failed(stdout: String) -> Self {
        Outcome {
            stdout,
            failed: true,
        }
    }
}

/// Usage or budget problem; exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Check { file, report } => check(&file, report),
        Command::Count {
            r,
            k,
            method,
            by_extra,
            format,
            brute_budget,
            max_r,
        } => count(r, k, method, by_extra, format, brute_budget, max_r),
        Command::Poly {
            r,
            extras,
            format,
            max_r,
        } => poly(r, extras, format, max_r),
        Command::Automaton {
            r,
            format,
            output,
            max_r,
        } => automaton(r, format, output, max_r),
        Command::Verify {
            r,
            max_k,
            report,
            brute_budget,
        } => verify(r, max_k, report, brute_budget),
        Command::Bench {
            r,
            k,
            brute_budget,
            max_r,
        } => bench(r, k, brute_budget, max_r),
    }
}

fn read_input(file: &PathBuf) -> Result<String, UsageError> {
    if file.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(fs::read_to_string(file)
            .map_err(|e| UsageError(format!("{}: {e}", file.display())))?)
    }
}

fn check(file: &PathBuf, report: ReportFormat) -> Result<Outcome, UsageError> {
    let matrix = BinaryMatrix::parse(&read_input(file)?)?;
    let violations = matrix.violations();
    let stdout = match report {
        ReportFormat::Text => {
            if violations.is_empty() {
                "BAXTER\n".to_owned()
            } else {
                violations
                    .iter()
                    .map(|v| format!("violation: {v}\n"))
                    .collect()
            }
        }
        ReportFormat::Json => {
            let value = serde_json::json!({
                "baxter": violations.is_empty(),
                "violations": violations,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializes"))
        }
    };
    if violations.is_empty() {
        Ok(Outcome::ok(stdout))
    } else {
        Ok(Outcome::failed(stdout))
    }
}

/// Lifts internal-consistency failures to exit code 1 rather than 2.
fn counting_outcome<T>(
    result: Result<T, CountingError>,
    render: impl FnOnce(T) -> Outcome,
) -> Result<Outcome, UsageError> {
    match result {
        Ok(value) => Ok(render(value)),
        Err(CountingError::Build(e)) => Err(UsageError(e.to_string())),
        Err(e) => Ok(Outcome::failed(format!("consistency failure: {e}\n"))),
    }
}

fn count(
    r: usize,
    k: usize,
    method: Method,
    by_extra: bool,
    format: OutputFormat,
    brute_budget: u32,
    max_r: usize,
) -> Result<Outcome, UsageError> {
    if r == 0 || k == 0 {
        return Err(UsageError("r and k must be at least 1".into()));
    }
    let brute_opts = BruteOpts {
        budget_bits: brute_budget,
        mode: BruteMode::Pruned,
    };
    let automaton = || -> Result<Automaton, UsageError> {
        Ok(build_automaton_with_limit(r, max_r)?)
    };
    if by_extra {
        let split = match method {
            Method::Brute => brute_count_by_extra_with(r, k, &brute_opts)?,
            Method::Dp => {
                return counting_outcome(dp_count_by_extra_on(&automaton()?, k), |split| {
                    render_split(r, k, split, format)
                })
            }
            Method::Skeleton => count_from_skeletons_by_extra_on(&automaton()?, k),
            Method::Auto => {
                let aut = automaton()?;
                return counting_outcome(dp_count_by_extra_on(&aut, k), |split| {
                    let skeleton = count_from_skeletons_by_extra_on(&aut, k);
                    if skeleton != split {
                        return Outcome::failed(format!(
                            "consistency failure: dp split {split:?} but skeleton split {skeleton:?}\n"
                        ));
                    }
                    render_split(r, k, split, format)
                });
            }
        };
        return Ok(render_split(r, k, split, format));
    }
    let n = match method {
        Method::Brute => brute_count_with(r, k, &brute_opts)?,
        Method::Dp => dp_count_on(&automaton()?, k),
        Method::Skeleton => count_from_skeletons_on(&automaton()?, k),
        Method::Auto => {
            let aut = automaton()?;
            let dp = dp_count_on(&aut, k);
            let skeleton = count_from_skeletons_on(&aut, k);
            if dp != skeleton {
                return Ok(Outcome::failed(format!(
                    "consistency failure: dp count {dp} but skeleton count {skeleton}\n"
                )));
            }
            dp
        }
    };
    let stdout = match format {
        OutputFormat::Text => format!("{n}\n"),
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::json!({"rows": r, "cols": k, "count": n.to_string()})
        ),
    };
    Ok(Outcome::ok(stdout))
}

fn render_split(
    r: usize,
    k: usize,
    split: std::collections::BTreeMap<usize, baxter::BigUint>,
    format: OutputFormat,
) -> Outcome {
    let total: baxter::BigUint = split.values().sum();
    let table = CountTable::new(
        r,
        vec![CountEntry {
            cols: k,
            total,
            by_extra: Some(split),
        }],
    )
    .expect("split sums to its own total");
    match format {
        OutputFormat::Text => Outcome::ok(table.render_text()),
        OutputFormat::Json => Outcome::ok(format!("{}\n", table.to_json_value())),
    }
}

fn poly(
    r: usize,
    extras: bool,
    format: OutputFormat,
    max_r: usize,
) -> Result<Outcome, UsageError> {
    let aut = build_automaton_with_limit(r, max_r)?;
    if extras {
        counting_outcome(extra_polynomials_on(&aut), |split| {
            let stdout = match format {
                OutputFormat::Text => split
                    .iter()
                    .map(|(extra, p)| format!("extra {extra}: {p}\n"))
                    .collect(),
                OutputFormat::Json => {
                    let classes: serde_json::Map<String, serde_json::Value> = split
                        .iter()
                        .map(|(extra, p)| (extra.to_string(), poly_json(p)))
                        .collect();
                    format!(
                        "{}\n",
                        serde_json::json!({"rows": r, "extras": classes})
                    )
                }
            };
            Outcome::ok(stdout)
        })
    } else {
        counting_outcome(eventual_polynomial_on(&aut), |p| {
            let stdout = match format {
                OutputFormat::Text => format!("{p}\n"),
                OutputFormat::Json => {
                    let mut value = poly_json(&p);
                    value["rows"] = serde_json::json!(r);
                    format!("{value}\n")
                }
            };
            Outcome::ok(stdout)
        })
    }
}

fn poly_json(p: &CountingPolynomial) -> serde_json::Value {
    serde_json::json!({
        "coefficients": p.polynomial().to_coeff_strings(),
        "threshold": p.threshold(),
    })
}

fn automaton(
    r: usize,
    format: GraphFormat,
    output: Option<PathBuf>,
    max_r: usize,
) -> Result<Outcome, UsageError> {
    let aut = build_automaton_with_limit(r, max_r)?;
    let text = match format {
        GraphFormat::Dot => aut.to_dot(),
        GraphFormat::Json => format!("{}\n", aut.to_json_string()),
    };
    match output {
        Some(path) => {
            fs::write(&path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn verify(
    r: usize,
    max_k: usize,
    report: ReportFormat,
    brute_budget: u32,
) -> Result<Outcome, UsageError> {
    let opts = BruteOpts {
        budget_bits: brute_budget,
        mode: BruteMode::Pruned,
    };
    let reports = verify_suite(r, max_k, &opts)?;
    let failed = reports.iter().any(|r| !r.is_pass());
    let stdout = match report {
        ReportFormat::Text => format!("{}\n", render_reports(&reports)),
        ReportFormat::Json => format!("{}\n", reports_to_json(&reports)),
    };
    Ok(Outcome {
        stdout,
        failed,
    })
}

fn bench(r: usize, k: usize, brute_budget: u32, max_r: usize) -> Result<Outcome, UsageError> {
    if r == 0 || k == 0 {
        return Err(UsageError("r and k must be at least 1".into()));
    }
    let build_start = Instant::now();
    let aut = build_automaton_with_limit(r, max_r)?;
    let build_time = build_start.elapsed();

    let mut rows: Vec<(&str, String, Duration)> = Vec::new();
    let dp_start = Instant::now();
    let dp = dp_count_on(&aut, k);
    rows.push(("dp", dp.to_string(), dp_start.elapsed()));

    let skeleton_start = Instant::now();
    let skeleton = count_from_skeletons_on(&aut, k);
    rows.push(("skeletons", skeleton.to_string(), skeleton_start.elapsed()));

    let opts = BruteOpts {
        budget_bits: brute_budget,
        mode: BruteMode::Pruned,
    };
    let brute_start = Instant::now();
    let (brute, brute_skipped) = match brute_count_with(r, k, &opts) {
        Ok(n) => {
            rows.push(("brute", n.to_string(), brute_start.elapsed()));
            (Some(n), None)
        }
        Err(e) => (None, Some(e)),
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "r={r} k={k} (automaton: {} states, {} edges, built in {build_time:.2?})",
        aut.states().len(),
        aut.edges().len()
    );
    let width = rows.iter().map(|(_, v, _)| v.len()).max().unwrap_or(5).max(5);
    let _ = writeln!(out, "{:<10} {:>width$}  time", "method", "count");
    for (name, value, time) in &rows {
        let _ = writeln!(out, "{name:<10} {value:>width$}  {time:.2?}");
    }
    if let Some(e) = brute_skipped {
        let _ = writeln!(out, "{:<10} skipped: {e}", "brute");
    }

    let mut failed = dp != skeleton;
    if let Some(b) = brute {
        failed |= b != dp;
    }
    if failed {
        let _ = writeln!(out, "METHOD DISAGREEMENT");
        Ok(Outcome::failed(out))
    } else {
        Ok(Outcome::ok(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome, UsageError> {
        let cli = Cli::try_parse_from(args).expect("arguments parse");
        run(cli.command)
    }

    #[test]
    fn count_methods_agree() {
        for method in ["auto", "dp", "skeleton", "brute"] {
            let out = run_args(&["baxter", "count", "-r", "3", "-k", "3", "--method", method])
                .unwrap();
            assert_eq!(out.stdout, "69\n", "method {method}");
            assert!(!out.failed);
        }
    }

    #[test]
    fn count_by_extra_renders_table() {
        let out = run_args(&["baxter", "count", "-r", "2", "-k", "2", "--by-extra"]).unwrap();
        assert!(out.stdout.contains("extra"), "{}", out.stdout);
        assert!(out.stdout.contains("total"), "{}", out.stdout);
        // 2x2: four matrices with no extra 1's, two with one extra.
        assert!(out.stdout.contains('4') && out.stdout.contains('2'));
        assert!(out.stdout.contains('6'));
    }

    #[test]
    fn count_rejects_zero_shape_and_budget() {
        assert!(run_args(&["baxter", "count", "-r", "0", "-k", "2"]).is_err());
        assert!(
            run_args(&["baxter", "count", "-r", "5", "-k", "6", "--method", "brute"]).is_err(),
            "30 cells over the default budget"
        );
        assert!(run_args(&["baxter", "count", "-r", "9", "-k", "1"]).is_err());
    }

    #[test]
    fn poly_text_matches_published_forms() {
        let out = run_args(&["baxter", "poly", "-r", "2"]).unwrap();
        assert_eq!(out.stdout, "k^2 + 3k - 4 (k >= 2)\n");
        let out = run_args(&["baxter", "poly", "-r", "1"]).unwrap();
        assert_eq!(out.stdout, "1 (k >= 1)\n");
        let out = run_args(&["baxter", "poly", "-r", "3", "--extras"]).unwrap();
        assert_eq!(out.stdout.lines().count(), 3);
        assert!(out.stdout.contains("extra 2: 6k^2 - 13k + 11 (k >= 3)"));
    }

    #[test]
    fn poly_json_is_exact_rationals() {
        let out = run_args(&["baxter", "poly", "-r", "3", "--format", "json"]).unwrap();
        let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(value["threshold"], 3);
        assert_eq!(value["coefficients"][4], "1/3");
    }

    #[test]
    fn automaton_dot_shape() {
        let out = run_args(&["baxter", "automaton", "-r", "2", "--format", "dot"]).unwrap();
        let nodes = out
            .stdout
            .lines()
            .filter(|l| l.contains("[label=") && !l.contains("->"))
            .count();
        let edges = out.stdout.lines().filter(|l| l.contains("->")).count();
        assert_eq!((nodes, edges), (8, 17));
    }

    #[test]
    fn outputs_are_deterministic() {
        for args in [
            vec!["baxter", "automaton", "-r", "3", "--format", "json"],
            vec!["baxter", "poly", "-r", "3", "--extras", "--format", "json"],
            vec!["baxter", "count", "-r", "3", "-k", "4", "--by-extra"],
            vec!["baxter", "verify", "-r", "2", "--max-k", "4"],
        ] {
            let first = run_args(&args).unwrap();
            let second = run_args(&args).unwrap();
            assert_eq!(first.stdout, second.stdout, "{args:?}");
        }
    }

    #[test]
    fn verify_small_passes() {
        let out = run_args(&["baxter", "verify", "-r", "2", "--max-k", "4"]).unwrap();
        assert!(!out.failed, "{}", out.stdout);
        assert!(out.stdout.contains("PASS cross_validate r=2"));
        assert!(!out.stdout.contains("FAIL"));
    }

    #[test]
    fn bench_reports_methods() {
        let out = run_args(&["baxter", "bench", "-r", "2", "-k", "4"]).unwrap();
        assert!(!out.failed);
        assert!(out.stdout.contains("dp"));
        assert!(out.stdout.contains("skeletons"));
        assert!(out.stdout.contains("brute"));
        assert!(out.stdout.contains("24"), "{}", out.stdout);
    }

    #[test]
    fn bench_skips_brute_over_budget() {
        let out = run_args(&["baxter", "bench", "-r", "6", "-k", "20"]).unwrap();
        assert!(!out.failed);
        assert!(out.stdout.contains("skipped"), "{}", out.stdout);
    }
}
