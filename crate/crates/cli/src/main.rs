use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use wedge_dirac::grid::GridSpec;
use wedge_dirac::verify::{
    angular_checks, defect_checks, defect_field_rows, extension_checks, fiber_checks, singular_action_rows,
    verify_all_checks, CheckRecord, RunConfig, VerificationReport,
};
use wedge_dirac::{Alpha, Error};

/// Verification toolkit for the Dirac operator on a wedge with flipped
/// infinite-mass boundary conditions.
#[derive(Debug, Parser)]
#[command(name = "wedge-dirac", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Angular eigenvalues, Gram matrix and radial conjugation checks.
    Angular,
    /// Deficiency indices of the radial fibers `k ≤ kmax`.
    Fibers,
    /// Samples and residuals of the defect element.
    Defect,
    /// Self-adjoint extensions of the two-valley operator at a given α.
    Extension,
    /// The complete acceptance suite.
    VerifyAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    /// Half-opening angle ω in radians, 0 < ω < π.
    #[arg(long, global = true, allow_negative_numbers = true, conflicts_with = "omega_frac")]
    omega: Option<f64>,
    /// ω = pπ/q.
    #[arg(long, global = true, num_args = 2, value_names = ["P", "Q"])]
    omega_frac: Option<Vec<u32>>,
    /// Largest angular or fiber index.
    #[arg(long, global = true, default_value_t = 10)]
    kmax: u32,
    /// Number of geometric radial panels.
    #[arg(long, global = true)]
    grid_panels: Option<usize>,
    /// Gauss–Legendre nodes per radial panel.
    #[arg(long, global = true)]
    grid_nodes: Option<usize>,
    /// Gauss–Legendre nodes on (−ω, ω).
    #[arg(long, global = true)]
    angular_nodes: Option<usize>,
    /// Inner radius of the graded radial partition.
    #[arg(long, global = true)]
    rmin: Option<f64>,
    /// Truncation radius.
    #[arg(long, global = true)]
    rmax: Option<f64>,
    /// Relative tolerance of the adaptive integrator in the deficiency probe.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Extension parameter, e.g. `1+0i`, `0-1i`, `-1`.
    #[arg(long, global = true, allow_hyphen_values = true, default_value = "1+0i")]
    alpha: String,
    /// Seed of the random property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(_) => Failure::Usage(e.to_string()),
            Error::Numeric(_) => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i` and `-i`.
fn parse_complex(s: &str) -> Result<Complex<f64>, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number '{s}'");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let imag = |x: &str| -> Result<f64, String> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(j) => {
            let re = body[..j].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex::new(re, imag(&body[j..])?))
        }
        None => Ok(Complex::new(0.0, imag(body)?)),
    }
}

fn run_config(c: &Common) -> Result<RunConfig, Failure> {
    let mut cfg = match (&c.omega, &c.omega_frac) {
        (Some(w), _) => RunConfig::new(*w)?,
        (None, Some(pq)) => RunConfig::from_fraction(pq[0], pq[1])?,
        (None, None) => RunConfig::from_fraction(1, 2)?,
    };
    let d = GridSpec::default();
    cfg.kmax = c.kmax;
    cfg.grid = GridSpec {
        r_min: c.rmin.unwrap_or(d.r_min),
        r_max: c.rmax.unwrap_or(d.r_max),
        panels: c.grid_panels.unwrap_or(d.panels),
        nodes_per_panel: c.grid_nodes.unwrap_or(d.nodes_per_panel),
        angular_nodes: c.angular_nodes.unwrap_or(d.angular_nodes),
    };
    if let Some(t) = c.tol {
        cfg.ode_rtol = t;
    }
    cfg.seed = c.seed;
    cfg.validate()?;
    Ok(cfg)
}

fn csv_line<W: Write>(w: &mut W, fields: &[f64]) -> io::Result<()> {
    let cells: Vec<String> = fields.iter().map(|x| format!("{x:.8e}")).collect();
    writeln!(w, "{}", cells.join(","))
}

fn write_checks_csv<W: Write>(w: &mut W, checks: &[CheckRecord]) -> io::Result<()> {
    writeln!(w, "check_id,computed,expected,abs_error,tolerance,pass")?;
    for c in checks {
        writeln!(
            w,
            "{},{:.8e},{:.8e},{:.8e},{:.8e},{}",
            c.check_id, c.computed, c.expected, c.abs_error, c.tolerance, c.pass
        )?;
    }
    Ok(())
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let cfg = run_config(&cli.common)?;
    let alpha_value = parse_complex(&cli.common.alpha).map_err(Failure::Usage)?;
    let uses_alpha = matches!(cli.command, Command::Extension | Command::VerifyAll);
    let alpha = if uses_alpha { Some(Alpha::new(alpha_value)?.value()) } else { None };
    let checks = match cli.command {
        Command::Angular => angular_checks(&cfg)?,
        Command::Fibers => fiber_checks(&cfg)?,
        Command::Defect => defect_checks(&cfg)?,
        Command::Extension => {
            let a = alpha_value;
            extension_checks(&cfg, a, &[Alpha::new(a)?])?
        }
        Command::VerifyAll => verify_all_checks(&cfg, alpha_value)?,
    };
    let report = VerificationReport::new(&cfg, alpha, checks);
    let mut out = open_output(&cli.common.out)?;
    match cli.common.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report).map_err(|e| Failure::Io(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Csv => match cli.command {
            Command::Defect => {
                writeln!(out, "r,theta,re_u1,im_u1,re_u2,im_u2")?;
                for row in defect_field_rows(&cfg)? {
                    csv_line(&mut out, &row)?;
                }
            }
            Command::Extension => {
                writeln!(out, "r,theta,valley,re_u1,im_u1,re_u2,im_u2")?;
                for row in singular_action_rows(&cfg, alpha_value)? {
                    csv_line(&mut out, &row)?;
                }
            }
            _ => write_checks_csv(&mut out, &report.checks)?,
        },
    }
    out.flush()?;
    let s = report.summary;
    eprintln!("{} checks, {} passed, {} failed (seed {})", s.total, s.passed, s.failed, cfg.seed);
    for f in report.failures() {
        eprintln!("FAILED {} computed {:e} expected {:e} tolerance {:e}", f.check_id, f.computed, f.expected, f.tolerance);
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1+0i").unwrap(), Complex::new(1.0, 0.0));
        assert_eq!(parse_complex("0.5+0.5i").unwrap(), Complex::new(0.5, 0.5));
        assert_eq!(parse_complex("0+1i").unwrap(), Complex::new(0.0, 1.0));
        assert_eq!(parse_complex("-1-2i").unwrap(), Complex::new(-1.0, -2.0));
        assert_eq!(parse_complex("-1").unwrap(), Complex::new(-1.0, 0.0));
        assert_eq!(parse_complex("i").unwrap(), Complex::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2E+1i").unwrap(), Complex::new(1e-3, 20.0));
        assert_eq!(parse_complex(" 0.6 - 0.8i ").unwrap(), Complex::new(0.6, -0.8));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+xi").is_err());
    }
}
