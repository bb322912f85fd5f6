//! Command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::characters::{character_family, family_generators, Order};
use crate::error::Error;
use crate::gauss_sums::DEFAULT_NORM_CAP;
use crate::mean_values::{compute_constant, s_total_with, transition_scan, Method, SumConfig, SumReport, DEFAULT_BUDGET};
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const AFTER_HELP: &str = "\
CSV columns:
  verify     identity,params,discrepancy,pass (preceded by one summary line)
  sum, scan  order,X,Y,total_re,total_im,power_part,remainder_re,remainder_im,
             predictor,ratio,moduli_count,char_count,elapsed_ms (scan adds status)
  constants  order,constant,value,euler_product,prime_cutoff,tail_bound
  chars      q,m,exponent (empty exponent: value 0)

Exit codes: 0 ok, 1 suite failure, 2 usage error, 3 budget or capacity exceeded.";

#[derive(Debug, Parser)]
#[command(name = "powerchar", version, about = "Cubic and quartic character sums, Gauss sums and reciprocity checks", after_help = AFTER_HELP)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads (default: available parallelism; 1 is the sequential path)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the main output to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Work budget in elementary steps
    #[arg(long, global = true, env = "POWERCHAR_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Largest residue-system size for ring Gauss sums
    #[arg(long, global = true, env = "POWERCHAR_NORM_CAP", default_value_t = DEFAULT_NORM_CAP)]
    norm_cap: u64,
    /// Record wall-clock time in sum reports (makes output non-reproducible)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Run an identity suite
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, value_parser = parse_order)]
        order: Order,
        #[arg(long, default_value_t = 1000)]
        max_norm: u64,
    },
    /// Evaluate S(X, Y)
    Sum {
        #[arg(long, value_parser = parse_order)]
        order: Order,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long, value_parser = parse_method, default_value = "period")]
        method: Method,
    },
    /// Evaluate S(X, Y) for several Y
    Scan {
        #[arg(long, value_parser = parse_order)]
        order: Order,
        #[arg(long)]
        x: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        y_list: Vec<f64>,
        #[arg(long, value_parser = parse_method, default_value = "period")]
        method: Method,
    },
    /// Compute C1 (order 3) or C2 (order 4)
    Constants {
        #[arg(long, value_parser = parse_order)]
        order: Order,
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
    },
    /// List the generators and character tables of one family
    Chars {
        #[arg(long, value_parser = parse_order)]
        order: Order,
        #[arg(long)]
        n: u64,
    },
}

fn parse_order(s: &str) -> Result<Order, String> {
    s.parse::<u32>().ok().and_then(|k| Order::from_value(k).ok()).ok_or_else(|| format!("order must be 3 or 4, got {s:?}"))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|_| format!("method must be direct or period, got {s:?}"))
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub budget: u128,
    pub norm_cap: u64,
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Verify { suite: Suite, order: Order, max_norm: u64 },
    Sum { order: Order, x: f64, y: f64, method: Method },
    Scan { order: Order, x: f64, y_list: Vec<f64>, method: Method },
    Constants { order: Order, cutoff: u64 },
    Chars { order: Order, n: u64 },
}

fn check_xy(x: f64, y: f64) -> Result<(), String> {
    if !(x.is_finite() && x >= 1.0 && y.is_finite() && y >= 1.0) {
        return Err(format!("--x and --y must be finite and at least 1, got {x} and {y}"));
    }
    Ok(())
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, String> {
        let g = cli.global;
        if g.threads == Some(0) {
            return Err("--threads must be at least 1".into());
        }
        let command = match cli.command {
            CommandArgs::Verify { suite, order, max_norm } => {
                if max_norm == 0 {
                    return Err("--max-norm must be positive".into());
                }
                Command::Verify { suite, order, max_norm }
            }
            CommandArgs::Sum { order, x, y, method } => {
                check_xy(x, y)?;
                Command::Sum { order, x, y, method }
            }
            CommandArgs::Scan { order, x, y_list, method } => {
                for &y in &y_list {
                    check_xy(x, y)?;
                }
                Command::Scan { order, x, y_list, method }
            }
            CommandArgs::Constants { order, cutoff } => {
                if cutoff < 100 {
                    return Err(format!("--cutoff must be at least 100, got {cutoff}"));
                }
                Command::Constants { order, cutoff }
            }
            CommandArgs::Chars { order, n } => {
                if n == 0 {
                    return Err("--n must be positive".into());
                }
                Command::Chars { order, n }
            }
        };
        Ok(Self {
            command,
            format: g.format,
            threads: g.threads,
            output: g.output,
            budget: g.budget,
            norm_cap: g.norm_cap,
            timing: g.timing,
        })
    }

    fn sum_config(&self, method: Method) -> SumConfig {
        SumConfig { method, budget: self.budget, timing: self.timing }
    }
}

enum Failure {
    Usage(String),
    Resource(String),
    Suite,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Resource(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` (or `--output`) and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let result = match config.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&config, out, err)),
            Err(e) => Err(Failure::Resource(e.to_string())),
        },
        None => execute(&config, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Suite) => EXIT_FAILURE,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Resource(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_RESOURCE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(std::env::args_os(), &mut { stdout }, &mut { stderr })
}

fn execute(config: &RunConfig, stdout: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let mut file;
    let out: &mut (dyn Write + Send) = match &config.output {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    let json = config.format == Format::Json;
    let outcome = match &config.command {
        Command::Verify { suite, order, max_norm } => {
            let needs_cap = matches!(suite, Suite::GaussIdentities | Suite::TauRelations);
            if needs_cap && *max_norm > config.norm_cap {
                return Err(Failure::Resource(format!("--max-norm {max_norm} exceeds the norm cap {}", config.norm_cap)));
            }
            let report = run_suite(*suite, *order, *max_norm)?;
            if json {
                serde_json::to_writer_pretty(&mut *out, &json!({
                    "suite": report.suite,
                    "order": report.order,
                    "instances": report.rows.len(),
                    "failures": report.failures(),
                    "max_discrepancy": report.max_discrepancy(),
                    "pass": report.passed(),
                    "rows": report.rows,
                }))
                .map_err(io::Error::from)?;
                writeln!(out)?;
            } else {
                if config.output.is_some() {
                    writeln!(err, "{}", report.summary())?;
                } else {
                    writeln!(out, "{}", report.summary())?;
                }
                report.write_csv(&mut *out)?;
            }
            if report.passed() {
                Ok(())
            } else {
                for (id, n, bad) in report.failures_by_identity() {
                    if bad > 0 {
                        writeln!(err, "{id}: {bad} of {n} instances failed")?;
                    }
                }
                Err(Failure::Suite)
            }
        }
        Command::Sum { order, x, y, method } => {
            let r = s_total_with(*order, *x, *y, &config.sum_config(*method))?;
            if json {
                serde_json::to_writer_pretty(&mut *out, &r).map_err(io::Error::from)?;
                writeln!(out)?;
            } else {
                writeln!(out, "{}", SumReport::CSV_HEADER)?;
                writeln!(out, "{}", r.csv_row())?;
            }
            Ok(())
        }
        Command::Scan { order, x, y_list, method } => {
            let scan = transition_scan(*order, *x, y_list, &config.sum_config(*method))?;
            if json {
                serde_json::to_writer_pretty(&mut *out, &scan).map_err(io::Error::from)?;
                writeln!(out)?;
            } else {
                writeln!(out, "{},status", SumReport::CSV_HEADER)?;
                let mut reports = scan.reports.iter();
                for &y in y_list {
                    if scan.truncated.contains(&y) {
                        writeln!(out, "{order},{x},{y},,,,,,,,,,,truncated")?;
                    } else if let Some(r) = reports.next() {
                        writeln!(out, "{},ok", r.csv_row())?;
                    }
                }
            }
            if scan.is_truncated() {
                Err(Failure::Resource(format!("budget {} exceeded; truncated Y values: {:?}", config.budget, scan.truncated)))
            } else {
                Ok(())
            }
        }
        Command::Constants { order, cutoff } => {
            let c = compute_constant(*order, *cutoff)?;
            let name = match order {
                Order::Cubic => "C1",
                Order::Quartic => "C2",
            };
            if json {
                serde_json::to_writer_pretty(&mut *out, &json!({
                    "order": c.order,
                    "constant": name,
                    "value": c.value,
                    "euler_product": c.euler_product,
                    "prime_cutoff": c.prime_cutoff,
                    "tail_bound": c.tail_bound,
                }))
                .map_err(io::Error::from)?;
                writeln!(out)?;
            } else {
                writeln!(out, "order,constant,value,euler_product,prime_cutoff,tail_bound")?;
                writeln!(out, "{},{name},{},{},{},{}", c.order, c.value, c.euler_product, c.prime_cutoff, c.tail_bound)?;
            }
            Ok(())
        }
        Command::Chars { order, n } => {
            if *n > config.norm_cap {
                return Err(Failure::Resource(format!("--n {n} exceeds the norm cap {}", config.norm_cap)));
            }
            let gens = family_generators(*n, *order)?;
            let tables = character_family(*n, *order)?;
            if json {
                let items: Vec<_> = gens
                    .iter()
                    .zip(&tables)
                    .map(|(q, t)| json!({ "q": q, "values": t.values() }))
                    .collect();
                serde_json::to_writer_pretty(&mut *out, &json!({ "order": order, "n": n, "characters": items }))
                    .map_err(io::Error::from)?;
                writeln!(out)?;
            } else {
                writeln!(out, "q,m,exponent")?;
                for (q, t) in gens.iter().zip(&tables) {
                    for (m, v) in t.values().iter().enumerate() {
                        match v {
                            Some(e) => writeln!(out, "{q},{m},{e}")?,
                            None => writeln!(out, "{q},{m},")?,
                        }
                    }
                }
            }
            Ok(())
        }
    };
    out.flush()?;
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("powerchar").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sum_example() {
        let (code, out, _) = run_capture(&["sum", "--order", "3", "--x", "10", "--y", "7"]);
        assert_eq!(code, 0);
        let row = out.lines().nth(1).unwrap();
        assert!(row.starts_with("3,10,7,10,0,10,0,0,"), "{row}");
        let (code, out, _) = run_capture(&["--format", "json", "sum", "--order", "3", "--x", "10", "--y", "7"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["total_re"], 10.0);
        assert!(v["elapsed_ms"].is_null());
    }

    #[test]
    fn methods_agree_and_output_is_deterministic() {
        let a = run_capture(&["sum", "--order", "4", "--x", "300", "--y", "200", "--method", "direct"]);
        let b = run_capture(&["sum", "--order", "4", "--x", "300", "--y", "200", "--threads", "3"]);
        let c = run_capture(&["sum", "--order", "4", "--x", "300", "--y", "200", "--threads", "1"]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
        assert_eq!(b.1, c.1);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["sum", "--order", "5", "--x", "10", "--y", "7"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["sum", "--order", "3", "--x", "0", "--y", "7"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "--suite", "nope", "--order", "3"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--threads", "0", "chars", "--order", "3", "--n", "7"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn resource_errors() {
        let (code, _, err) = run_capture(&["--budget", "10", "sum", "--order", "3", "--x", "10", "--y", "100"]);
        assert_eq!(code, EXIT_RESOURCE);
        assert!(err.contains("budget"));
        let (code, out, _) = run_capture(&["--budget", "1000", "scan", "--order", "3", "--x", "10", "--y-list", "10,100"]);
        assert_eq!(code, EXIT_RESOURCE);
        assert!(out.lines().nth(2).unwrap().ends_with(",truncated"));
        assert!(out.lines().nth(1).unwrap().ends_with(",ok"));
        let (code, _, _) = run_capture(&["--norm-cap", "50", "verify", "--suite", "gauss-identities", "--order", "3", "--max-norm", "100"]);
        assert_eq!(code, EXIT_RESOURCE);
    }

    #[test]
    fn verify_and_constants() {
        let (code, out, _) = run_capture(&["verify", "--suite", "reciprocity", "--order", "3", "--max-norm", "100"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("suite=reciprocity order=3"));
        assert!(out.lines().nth(1) == Some("identity,params,discrepancy,pass"));
        let (code, out, _) = run_capture(&["constants", "--order", "3", "--cutoff", "1000"]);
        assert_eq!(code, 0);
        let fields: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(fields[1], "C1");
        assert!(fields[2].parse::<f64>().unwrap() > 0.0);
    }

    #[test]
    fn chars_listing() {
        let (code, out, _) = run_capture(&["chars", "--order", "3", "--n", "7"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 1 + 2 * 7);
        assert_eq!(lines[1], "-2-3w,0,");
        assert_eq!(lines[2], "-2-3w,1,0");
        let (code, out, _) = run_capture(&["--format", "json", "chars", "--order", "4", "--n", "5"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["characters"][0]["q"], "-1+2i");
    }
}
