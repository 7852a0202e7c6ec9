//! Command-line front end.
//!
//! ```text
//! riesz-average [OPTIONS] <verify | case <ID> | xi | integral | report>
//! ```
//!
//! Exit status: 0 on success, 1 when the sign is not certified, 2 when a
//! printed value is not matched, 3 on internal or usage errors.

use std::fmt::Write as _;
use std::io::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cases::{
    catalog, dominance_certificate, eval_region, eval_term, full_integral, part_e_certificate, total_report,
    verify_closed_form, CaseConfig, CaseResult, ClosedFormCheck, FullMethod, Precision, Term,
};
use crate::interval::Interval;
use crate::quadrature::{IntegralEstimate, QuadratureConfig};
use crate::regions::{case_region, CaseId};
use crate::xi::{angles_to_direction, xi_n, Direction};

/// Environment variable read for the default of `--jobs`.
pub const JOBS_ENV: &str = "RIESZ_AVERAGE_JOBS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_SIGN: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "riesz-average", version, about = "Certify the sign of the spherical average I_3")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Float quadrature or rigorous interval enclosures.
    #[arg(long, value_enum, default_value_t = PrecisionArg::Float, global = true)]
    pub precision: PrecisionArg,
    #[arg(long, default_value_t = 1e-10, global = true)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 2000, global = true)]
    pub max_subdivisions: usize,
    /// Samples for the Monte Carlo oracle.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    pub mc_samples: u64,
    #[arg(long, default_value_t = 20_240_611, global = true)]
    pub seed: u64,
    /// Allowed distance from a printed value.
    #[arg(long, default_value_t = 5e-4, global = true)]
    pub tolerance: f64,
    /// Interval cells per radian along each angle.
    #[arg(long, default_value_t = 480.0, global = true)]
    pub cells_per_radian: f64,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads; 0 uses all cores.
    #[arg(long, env = JOBS_ENV, default_value_t = 0, global = true)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Float,
    Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Mc,
    Quad,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate every term and gate on the sign and the printed values.
    Verify {
        /// Skip the Monte Carlo and region-sum oracles.
        #[arg(long)]
        no_oracle: bool,
    },
    /// One certificate term (e.g. C3B, neg24), one region (e.g. C3E1,
    /// C4B'2) or one printed formula (e.g. H_A).
    Case { id: String },
    /// Evaluate ξ at a direction given by angles or components.
    Xi {
        #[arg(long, requires = "phi", conflicts_with = "omega", allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long, requires = "theta", allow_negative_numbers = true)]
        phi: Option<f64>,
        #[arg(long, num_args = 2.., allow_negative_numbers = true)]
        omega: Option<Vec<f64>>,
    },
    /// The full integral in dimension n, without the decomposition.
    Integral {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Quad)]
        method: MethodArg,
    },
    /// Verification report together with certificates and the closed-form
    /// audit.
    Report,
}

impl GlobalArgs {
    pub fn case_config(&self, oracle: bool) -> CaseConfig {
        CaseConfig {
            quadrature: QuadratureConfig {
                abs_tol: self.abs_tol,
                rel_tol: self.rel_tol,
                max_subdivisions: self.max_subdivisions,
                mc_samples: self.mc_samples,
                seed: self.seed,
                cells_per_radian: self.cells_per_radian,
            },
            precision: match self.precision {
                PrecisionArg::Float => Precision::Float,
                PrecisionArg::Interval => Precision::Interval,
            },
            tolerance: self.tolerance,
            oracle,
        }
    }
}

/// Output of one command: the text to print and the exit status.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn ok(output: String) -> Outcome {
    Outcome { output, code: EXIT_OK }
}

fn json_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_string<T: Serialize>(header: &[&str], rows: &[T]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).expect("in-memory writer");
    for r in rows {
        w.serialize(r).expect("serializable");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

fn fmt6(x: f64) -> String {
    crate::cases::sig6(x)
}

fn estimate_text(label: &str, e: &IntegralEstimate) -> String {
    format!(
        "{label} = {} ± {}  ({:?}, {} evaluations{})\n",
        fmt6(e.value),
        fmt6(e.error),
        e.method,
        e.evaluations,
        if e.converged { "" } else { ", NOT converged" }
    )
}

fn case_text(r: &CaseResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}: {}", r.case_id.name(), r.case_id.description());
    let _ = writeln!(s, "kind         {}", r.kind.name());
    let _ = writeln!(s, "value        {} ± {}", fmt6(r.value.value), fmt6(r.value.error));
    if let Some(iv) = r.enclosure {
        let _ = writeln!(s, "enclosure    [{}, {}]", fmt6(iv.lo()), fmt6(iv.hi()));
    }
    if let Some(p) = r.paper_value {
        let _ = writeln!(s, "paper        {}", fmt6(p));
    }
    if let Some(d) = r.discrepancy {
        let _ = writeln!(s, "discrepancy  {}", fmt6(d));
    }
    if let Some(c) = r.cross_check {
        let _ = writeln!(s, "cross-check  {}", fmt6(c));
    }
    let _ = writeln!(s, "status       {}", if r.passed { "ok" } else { "MISMATCH" });
    s
}

fn closed_form_text(c: &ClosedFormCheck) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<22} max deviation {:>11}  {}{}",
        c.entry.name,
        fmt6(c.max_deviation),
        if c.passed { "ok" } else { "DEVIATES" },
        if c.entry.damaged { " (damaged in print)" } else { "" }
    );
    if let (Some(p), Some(r)) = (c.printed_integral, c.reference_integral) {
        let _ = writeln!(s, "{:<22} integral {} vs {}", "", fmt6(p), fmt6(r));
    }
    s
}

#[derive(Serialize)]
struct XiOutput {
    omega: Vec<f64>,
    dim: usize,
    precision: &'static str,
    value: f64,
    lower: f64,
    upper: f64,
}

fn cmd_xi(
    g: &GlobalArgs,
    theta: Option<f64>,
    phi: Option<f64>,
    omega: Option<Vec<f64>>,
) -> anyhow::Result<Outcome> {
    let mut warning = String::new();
    let omega = match (theta, phi, omega) {
        (Some(t), Some(p), None) => angles_to_direction(t, p).components().to_vec(),
        (None, None, Some(w)) => {
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-6 {
                anyhow::bail!("ω is not a unit vector (|ω| = {norm})");
            }
            if norm != 1.0 {
                let _ = writeln!(warning, "warning: renormalized ω (|ω| = {norm})");
            }
            w.iter().map(|x| x / norm).collect()
        }
        _ => anyhow::bail!("give either --theta and --phi, or --omega"),
    };
    let dim = omega.len();
    let (value, lower, upper) = match g.precision {
        PrecisionArg::Float => {
            let v = xi_n(&Direction::new(omega.clone())?)?;
            (v, v, v)
        }
        PrecisionArg::Interval => {
            let d = Direction::new(omega.iter().map(|&x| Interval::point(x)).collect())?;
            let v = xi_n(&d)?;
            (0.5 * (v.lo() + v.hi()), v.lo(), v.hi())
        }
    };
    let out = XiOutput {
        omega,
        dim,
        precision: match g.precision {
            PrecisionArg::Float => "float",
            PrecisionArg::Interval => "interval",
        },
        value,
        lower,
        upper,
    };
    eprint!("{warning}");
    Ok(ok(match g.format {
        Format::Json => json_string(&out),
        Format::Csv => csv_string(&["dim", "precision", "value", "lower", "upper"], &[(out.dim, out.precision, out.value, out.lower, out.upper)]),
        Format::Text => {
            let comps: Vec<String> = out.omega.iter().map(|&x| fmt6(x)).collect();
            let mut s = format!("ξ{}({}) = {}\n", dim, comps.join(", "), fmt6(value));
            if g.precision == PrecisionArg::Interval {
                let _ = writeln!(s, "enclosure [{lower:e}, {upper:e}]");
            }
            s
        }
    }))
}

fn cmd_integral(g: &GlobalArgs, dim: usize, method: MethodArg) -> anyhow::Result<Outcome> {
    let cfg = g.case_config(false).quadrature;
    let m = match method {
        MethodArg::Mc => FullMethod::MonteCarlo,
        MethodArg::Quad => FullMethod::DirectQuadrature,
    };
    let e = full_integral(dim, m, &cfg)?;
    Ok(ok(match g.format {
        Format::Json => json_string(&json!({ "dim": dim, "method": m, "estimate": e })),
        Format::Csv => csv_string(&["dim", "value", "error", "evaluations"], &[(dim, e.value, e.error, e.evaluations)]),
        Format::Text => estimate_text(&format!("I_{dim}"), &e),
    }))
}

fn cmd_case(g: &GlobalArgs, id: &str) -> anyhow::Result<Outcome> {
    let cfg = g.case_config(false);
    if let Ok(term) = id.parse::<Term>() {
        let r = eval_term(term, &cfg)?;
        return Ok(ok(match g.format {
            Format::Json => json_string(&r),
            Format::Csv => csv_string(&["case_id", "kind", "value", "error", "paper_value", "discrepancy", "passed"], &[r.row()]),
            Format::Text => case_text(&r),
        }));
    }
    if let Ok(region) = id.parse::<CaseId>() {
        let e = eval_region(region, &cfg.quadrature)?;
        let info = case_region(region);
        return Ok(ok(match g.format {
            Format::Json => json_string(&json!({ "region": info, "estimate": e })),
            Format::Csv => csv_string(&["region", "value", "error", "evaluations"], &[(region.name(), e.value, e.error, e.evaluations)]),
            Format::Text => {
                let (a, b) = info.domain.theta_range();
                format!(
                    "{} ({}), θ from {} to {}\n{}",
                    region.name(),
                    info.formula.expr(),
                    fmt6(a),
                    fmt6(b),
                    estimate_text("integral", &e)
                )
            }
        }));
    }
    if catalog().iter().any(|e| e.name.eq_ignore_ascii_case(id)) {
        let c = verify_closed_form(id)?;
        return Ok(ok(match g.format {
            Format::Json => json_string(&c),
            Format::Csv => csv_string(&["name", "max_deviation", "passed"], &[(c.entry.name, c.max_deviation, c.passed)]),
            Format::Text => closed_form_text(&c),
        }));
    }
    anyhow::bail!("unknown term, region or formula `{id}`")
}

fn cmd_verify(g: &GlobalArgs, oracle: bool) -> anyhow::Result<Outcome> {
    let report = total_report(&g.case_config(oracle))?;
    let output = match g.format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    Ok(Outcome {
        output,
        code: report.exit_code(),
    })
}

fn cmd_report(g: &GlobalArgs) -> anyhow::Result<Outcome> {
    let report = total_report(&g.case_config(true))?;
    let certificates = [dominance_certificate(), part_e_certificate()];
    let checks = catalog()
        .iter()
        .map(|e| verify_closed_form(e.name))
        .collect::<Result<Vec<_>, _>>()?;
    let output = match g.format {
        Format::Json => json_string(&json!({
            "report": report,
            "certificates": certificates,
            "closed_forms": checks,
        })),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut s = report.to_text();
            let _ = writeln!(s, "\ncertificates");
            for c in &certificates {
                let _ = writeln!(s, "  {:<12} {}  {}", c.name, if c.holds { "holds" } else { "FAILS" }, c.statement);
            }
            let _ = writeln!(s, "\nprinted formulas");
            for c in &checks {
                for line in closed_form_text(c).lines() {
                    let _ = writeln!(s, "  {line}");
                }
            }
            s
        }
    };
    Ok(ok(output))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let g = &cli.global;
    if g.jobs > 0 {
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(g.jobs).build_global();
    }
    match &cli.command {
        Command::Verify { no_oracle } => cmd_verify(g, !no_oracle),
        Command::Case { id } => cmd_case(g, id),
        Command::Xi { theta, phi, omega } => cmd_xi(g, *theta, *phi, omega.clone()),
        Command::Integral { dim, method } => cmd_integral(g, *dim, *method),
        Command::Report => cmd_report(g),
    }
}

/// Parses the process arguments, runs, prints, and returns the exit status.
pub fn main() -> i32 {
    main_with(std::env::args_os())
}

pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INTERNAL } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(outcome.output.as_bytes());
            let _ = out.flush();
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INTERNAL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_with_internal_code() {
        assert_eq!(main_with(["riesz-average", "frobnicate"]), EXIT_INTERNAL);
        assert_eq!(main_with(["riesz-average", "--help"]), EXIT_OK);
    }

    #[test]
    fn xi_on_axis() {
        let cli = Cli::try_parse_from(["riesz-average", "xi", "--omega", "1", "0", "0"]).unwrap();
        let out = run(&cli).unwrap();
        assert!(out.output.contains("0.177083"), "{}", out.output);
    }
}
