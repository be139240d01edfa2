//! Command-line front end. [`run`] is the whole program minus process setup.
//!
//! Exit codes: 0 when every gating check passes, 1 when a check fails or an
//! integral does not converge, 2 for usage, domain, range, and parse errors.

pub mod config;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::kernel::{poisson_integral_closed, poisson_integral_numeric};
use crate::ladder::{drift_report, LadderOptions, LadderTable, LadderWeight};
use crate::primes::{consecutive_primes, prime_pi};
use crate::quadrature::{LadderMeasure, QuadratureConfig};
use crate::special_fn::{theta, z_function};
use crate::verification::{
    bound_exponent, run_check, sweep, trend_slope, Check, VerificationRecord,
};
use crate::zeros::find_zeros;

use config::{
    parse_config, parse_measure, parse_number, parse_number_list, parse_weight, Format, Settings,
};
use report::{format_number, write_csv, write_json, Metadata};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Knots kept by `ladder-table` before it starts striding.
const TABLE_KNOTS: usize = 1 << 20;

fn num(s: &str) -> std::result::Result<f64, String> {
    parse_number(s).map_err(|e| e.to_string())
}

fn measure(s: &str) -> std::result::Result<LadderMeasure, String> {
    parse_measure(s).map_err(|e| e.to_string())
}

fn weight(s: &str) -> std::result::Result<LadderWeight, String> {
    parse_weight(s).map_err(|e| e.to_string())
}

fn check(s: &str) -> std::result::Result<Check, String> {
    s.parse::<Check>().map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "jacob-ladder",
    version,
    about = "Jacob's ladder verification toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Output {
    /// key = value settings file; flags win over it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct Tuning {
    /// relative tolerance of the ladder integrals
    #[arg(long, value_parser = num)]
    tol: Option<f64>,
    /// constant C in the bound C ln ln T / ln T
    #[arg(long = "bound-c", value_parser = num)]
    bound_c: Option<f64>,
    /// heights below this are reported as advisory
    #[arg(long = "t-min", value_parser = num)]
    t_min: Option<f64>,
    /// zeta-sq or ztilde
    #[arg(long, value_parser = measure)]
    measure: Option<LadderMeasure>,
    /// mean-value or logarithmic
    #[arg(long, value_parser = weight)]
    weight: Option<LadderWeight>,
}

impl Tuning {
    fn settings(&self) -> Settings {
        Settings {
            bound_c: self.bound_c,
            t_min: self.t_min,
            tol: self.tol,
            measure: self.measure,
            weight: self.weight,
            ..Settings::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Riemann-Siegel theta
    Theta {
        #[arg(long, value_parser = num)]
        t: f64,
    },
    /// Hardy's Z function
    Z {
        #[arg(long, value_parser = num)]
        t: f64,
    },
    /// critical-line zero ordinates, one per line
    Zeros {
        #[arg(long = "from", alias = "t-min", value_parser = num)]
        from: f64,
        #[arg(long = "to", alias = "t-max", value_parser = num)]
        to: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// prime counting, or the prime pair at or above --next
    Primes {
        #[arg(long, value_parser = num, required_unless_present = "next")]
        t: Option<f64>,
        #[arg(long)]
        next: Option<u64>,
    },
    /// sampled ladder with drift against (1 - c) pi(t)
    LadderTable {
        #[arg(long = "t-min", value_parser = num)]
        t_min: f64,
        #[arg(long = "t-max", value_parser = num)]
        t_max: f64,
        /// number of evenly spaced rows
        #[arg(long, default_value_t = 101)]
        rows: usize,
        #[arg(long, value_parser = weight)]
        weight: Option<LadderWeight>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// closed form and quadrature of the log-trigonometric integral over [0, pi]
    Poisson {
        #[arg(long, value_parser = num)]
        a: f64,
        /// absolute quadrature tolerance
        #[arg(long, value_parser = num)]
        tol: Option<f64>,
    },
    VerifyTheorem {
        #[arg(long = "T", value_parser = num)]
        t: f64,
        #[arg(long, value_parser = num)]
        a: f64,
        #[command(flatten)]
        tuning: Tuning,
        #[command(flatten)]
        output: Output,
    },
    VerifyHomogeneous {
        #[arg(long = "T", value_parser = num)]
        t: f64,
        #[arg(long, value_parser = num)]
        a: f64,
        #[command(flatten)]
        tuning: Tuning,
        #[command(flatten)]
        output: Output,
    },
    VerifyScaled {
        #[arg(long = "T", value_parser = num)]
        t: f64,
        #[arg(long, value_parser = num)]
        b: f64,
        #[command(flatten)]
        tuning: Tuning,
        #[command(flatten)]
        output: Output,
    },
    VerifyLargeA {
        #[arg(long = "T", value_parser = num)]
        t: f64,
        #[arg(long, value_parser = num)]
        a: f64,
        #[command(flatten)]
        tuning: Tuning,
        #[command(flatten)]
        output: Output,
    },
    /// first zero pair at or above --T; needs a gap below 1/2
    VerifyZeroGap {
        #[arg(long = "T", value_parser = num)]
        t: f64,
        #[command(flatten)]
        tuning: Tuning,
        #[command(flatten)]
        output: Output,
    },
    /// first prime pair at or above --T
    VerifyPrimeGap {
        #[arg(long = "T", value_parser = num)]
        t: f64,
        #[command(flatten)]
        tuning: Tuning,
        #[command(flatten)]
        output: Output,
    },
    /// one check over every (T, a) cell
    Sweep {
        #[arg(long, value_parser = check)]
        check: Check,
        /// comma-separated heights
        #[arg(long = "T")]
        t: String,
        /// comma-separated kernel parameters (unused by zero-gap and prime-gap)
        #[arg(long)]
        a: Option<String>,
        #[command(flatten)]
        tuning: Tuning,
        #[command(flatten)]
        output: Output,
    },
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_PASS
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Convergence(_) => EXIT_FAIL,
        Error::Domain(_) | Error::Range(_) | Error::Parse(_) => EXIT_USAGE,
    }
}

fn load_settings(config: &Option<PathBuf>, flags: Settings) -> Result<Settings> {
    let file = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => Settings::default(),
    };
    Ok(file.overlay(&flags))
}

fn emit(path: &Option<PathBuf>, stdout: &mut dyn Write, body: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, body)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(body)
            .map_err(|e| Error::Parse(format!("cannot write output: {e}"))),
    }
}

fn write_line(stdout: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(stdout, "{line}").map_err(|e| Error::Parse(format!("cannot write output: {e}")))
}

fn metadata(settings: &Settings) -> Metadata {
    let canonical = settings.canonical();
    let digest = Sha256::digest(canonical.as_bytes());
    let mut meta = Metadata::default();
    meta.insert("tool_version", env!("CARGO_PKG_VERSION"));
    meta.insert("config_hash", hex::encode(&digest[..8]));
    meta.insert("step_policy", settings.step_policy().describe());
    meta
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    match command {
        Command::Theta { t } => {
            write_line(stdout, &format!("{}", theta(t)?))?;
            Ok(EXIT_PASS)
        }
        Command::Z { t } => {
            write_line(stdout, &format!("{}", z_function(t)?))?;
            Ok(EXIT_PASS)
        }
        Command::Zeros { from, to, out } => {
            let zeros = find_zeros(from, to)?;
            let body: String = zeros.iter().map(|g| format!("{g:.9}\n")).collect();
            emit(&out, stdout, body.as_bytes())?;
            Ok(EXIT_PASS)
        }
        Command::Primes { t, next } => {
            if let Some(p) = next {
                let pair = consecutive_primes(p)?;
                write_line(stdout, &format!("{},{}", pair.p, pair.p_next))?;
            }
            if let Some(t) = t {
                write_line(stdout, &prime_pi(t)?.to_string())?;
            }
            Ok(EXIT_PASS)
        }
        Command::LadderTable {
            t_min,
            t_max,
            rows,
            weight,
            config,
            out,
        } => {
            let settings = load_settings(
                &config,
                Settings {
                    weight,
                    ..Settings::default()
                },
            )?;
            ladder_table(t_min, t_max, rows, &settings, &out, stdout)
        }
        Command::Poisson { a, tol } => {
            let closed = poisson_integral_closed(a)?;
            let cfg = QuadratureConfig::default().with_abs_tol(tol.unwrap_or(1e-12));
            let numeric = poisson_integral_numeric(a, &cfg)?;
            let diff = (numeric.value - closed).abs();
            write_line(stdout, "closed,numeric,error_estimate,abs_diff")?;
            write_line(
                stdout,
                &format!(
                    "{},{},{},{}",
                    format_number(closed),
                    format_number(numeric.value),
                    format_number(numeric.error_estimate),
                    format_number(diff)
                ),
            )?;
            Ok(if diff <= 1e-8_f64.max(cfg.abs_tol) {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
        Command::VerifyTheorem {
            t,
            a,
            tuning,
            output,
        } => single(Check::Theorem, t, a, &tuning, &output, stdout, stderr),
        Command::VerifyHomogeneous {
            t,
            a,
            tuning,
            output,
        } => single(Check::Homogeneous, t, a, &tuning, &output, stdout, stderr),
        Command::VerifyScaled {
            t,
            b,
            tuning,
            output,
        } => single(Check::Scaled, t, b, &tuning, &output, stdout, stderr),
        Command::VerifyLargeA {
            t,
            a,
            tuning,
            output,
        } => single(Check::LargeA, t, a, &tuning, &output, stdout, stderr),
        Command::VerifyZeroGap { t, tuning, output } => single(
            Check::ZeroGap,
            t,
            f64::NAN,
            &tuning,
            &output,
            stdout,
            stderr,
        ),
        Command::VerifyPrimeGap { t, tuning, output } => single(
            Check::PrimeGap,
            t,
            f64::NAN,
            &tuning,
            &output,
            stdout,
            stderr,
        ),
        Command::Sweep {
            check,
            t,
            a,
            tuning,
            output,
        } => {
            let heights = parse_number_list(&t)?;
            let params = match a {
                Some(a) => parse_number_list(&a)?,
                None => Vec::new(),
            };
            if check.takes_parameter() && params.is_empty() && !heights.is_empty() {
                return Err(Error::Parse(format!("sweep --check {check} needs --a")));
            }
            let settings = load_settings(&output.config, tuning.settings())?;
            let cfg = settings.verify_config();
            cfg.validate()?;
            let results = sweep(check, &heights, &params, &cfg);
            let mut records = Vec::new();
            let mut code = EXIT_PASS;
            for r in results {
                match r {
                    Ok(rec) => records.push(rec),
                    Err(e) => {
                        let _ = writeln!(stderr, "error: {e}");
                        code = code.max(exit_code(&e));
                    }
                }
            }
            let mut meta = metadata(&settings);
            meta.insert("check", check.label());
            if let Some(s) = trend_slope(&records) {
                meta.insert("trend_slope", format_number(s));
            }
            if let Some(s) = bound_exponent(&records) {
                meta.insert("bound_exponent", format_number(s));
            }
            let verdict = report_records(&records, &meta, &settings, &output, stdout, stderr)?;
            Ok(code.max(verdict))
        }
    }
}

fn single(
    check: Check,
    t: f64,
    a: f64,
    tuning: &Tuning,
    output: &Output,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8> {
    let settings = load_settings(&output.config, tuning.settings())?;
    let cfg = settings.verify_config();
    let rec = run_check(check, t, a, &cfg)?;
    let mut meta = metadata(&settings);
    meta.insert("check", check.label());
    report_records(&[rec], &meta, &settings, output, stdout, stderr)
}

fn report_records(
    records: &[VerificationRecord],
    meta: &Metadata,
    settings: &Settings,
    output: &Output,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8> {
    let format = output.format.or(settings.format).unwrap_or_default();
    let mut body = Vec::new();
    match format {
        Format::Csv => write_csv(&mut body, meta, records)?,
        Format::Json => write_json(&mut body, records)?,
    }
    emit(&output.out, stdout, &body)?;
    let mut code = EXIT_PASS;
    for r in records {
        if r.advisory {
            let _ = writeln!(
                stderr,
                "note: {} at T = {} is below t_min; advisory only",
                r.label, r.t
            );
        } else if !r.pass {
            code = EXIT_FAIL;
        }
    }
    Ok(code)
}

fn ladder_table(
    t_min: f64,
    t_max: f64,
    rows: usize,
    settings: &Settings,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<u8> {
    if rows < 2 {
        return Err(Error::Parse("--rows must be at least 2".into()));
    }
    let quad = QuadratureConfig {
        step: settings.step_policy(),
        ..QuadratureConfig::weighted()
    };
    let cells = ((t_max - t_min) / quad.step.step_at(t_max)).max(1.0);
    let opts = LadderOptions {
        weight: settings.weight.unwrap_or_default(),
        knot_stride: (cells as usize / TABLE_KNOTS).max(1),
        anchor_phi: None,
    };
    let table = LadderTable::build(t_min, t_max, &opts, &quad)?;
    let heights: Vec<f64> = (0..rows)
        .map(|k| {
            if k + 1 == rows {
                t_max
            } else {
                t_min + (t_max - t_min) * k as f64 / (rows - 1) as f64
            }
        })
        .collect();
    let mut body = Vec::new();
    let mut w = csv::Writer::from_writer(&mut body);
    let csv_err = |e: csv::Error| Error::Parse(format!("write failed: {e}"));
    w.write_record(["t", "phi1", "drift", "predicted_drift", "ratio"])
        .map_err(csv_err)?;
    for row in drift_report(&table, &heights)? {
        w.write_record([
            format_number(row.t),
            format_number(row.phi1),
            format_number(row.drift),
            format_number(row.predicted),
            format_number(row.ratio),
        ])
        .map_err(csv_err)?;
    }
    w.flush()
        .map_err(|e| Error::Parse(format!("write failed: {e}")))?;
    drop(w);
    emit(out, stdout, &body)?;
    Ok(EXIT_PASS)
}
