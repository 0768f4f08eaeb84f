//! Command-line front end.
//!
//! Exit statuses: 0 on success, 1 when a verification fails, 2 on usage
//! errors. Output goes to any `Write` so the commands can be driven from
//! tests.

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::arith::{ArithError, MultiPoly, Point, Rational, RenderStyle, Var};
use crate::euler::verify_euler_identities;
use crate::generalized::{
    gen_pb_numbers, gen_pb_numbers_oracle, gen_pb_poly, gen_pb_poly_series, verify_corollary1,
    verify_oracle, verify_theorem1, verify_theorem2, verify_theorem3, verify_theorem4,
    verify_theorem5, GenError, VerifyOptions,
};
use crate::numbers::{poly_bernoulli, poly_bernoulli_poly, PolyBernoulliCache};
use crate::report::IdentityReport;
use crate::series::{gf_poly_bernoulli, ps_exp_linear};

#[derive(Parser, Debug)]
#[command(
    name = "polybern",
    version,
    about = "Exact poly-Bernoulli numbers and polynomials"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Largest admissible n.
    #[arg(long, default_value_t = PolyBernoulliCache::DEFAULT_CAP as u32, global = true)]
    pub cap: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    #[value(name = "T1")]
    T1,
    #[value(name = "T2")]
    T2,
    #[value(name = "T3")]
    T3,
    #[value(name = "T4")]
    T4,
    #[value(name = "T5")]
    T5,
    #[value(name = "C1")]
    C1,
    Euler,
    Oracle,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Print B_n^(k).
    Number {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
    },
    /// Print B_n^(k)(x), or B_n^(k)(x,a,b,c) with --generalized.
    Polynomial {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        generalized: bool,
    },
    /// Grid of B_n^(k), k outer ascending, n inner ascending.
    Table {
        #[arg(long)]
        nmax: u32,
        #[arg(long, allow_hyphen_values = true)]
        kmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        kmax: i64,
    },
    /// Check identities; exit status 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All, ignore_case = true)]
        suite: Suite,
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        kmin: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        kmax: i64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random rational points per oracle comparison (at least 3).
        #[arg(long, default_value_t = 3)]
        points: usize,
        /// Extra series coefficients in oracle expansions.
        #[arg(long, default_value_t = 2)]
        order_margin: usize,
    },
    /// Evaluate a value exactly at given logarithms of a, b, c and x.
    Eval {
        /// Evaluate the number B_N^(k) (or B_N^(k)(a,b)).
        #[arg(
            long,
            value_name = "N",
            conflicts_with = "poly",
            required_unless_present = "poly"
        )]
        number: Option<u32>,
        /// Evaluate the polynomial B_N^(k)(x) (or B_N^(k)(x,a,b,c)).
        #[arg(long, value_name = "N")]
        poly: Option<u32>,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        generalized: bool,
        #[arg(long = "ln-a", allow_hyphen_values = true)]
        ln_a: Option<Rational>,
        #[arg(long = "ln-b", allow_hyphen_values = true)]
        ln_b: Option<Rational>,
        #[arg(long = "ln-c", allow_hyphen_values = true)]
        ln_c: Option<Rational>,
        #[arg(short = 'x', allow_hyphen_values = true)]
        x: Option<Rational>,
        /// Read the value off the generating series instead of the closed form.
        #[arg(long)]
        oracle: bool,
        /// Also print the generating series used by the oracle route.
        #[arg(long)]
        show_series: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed")]
    VerificationFailed,
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

fn flag_for(v: Var) -> &'static str {
    match v {
        Var::X => "x (-x)",
        Var::La => "ln(a) (--ln-a)",
        Var::Lb => "ln(b) (--ln-b)",
        Var::Lc => "ln(c) (--ln-c)",
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::UnboundVariable(v) => {
                CliError::Usage(format!("missing binding for {}", flag_for(v)))
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::Arith(a) => a.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn check_n(n: u32, cap: u32) -> Result<(), CliError> {
    if n > cap {
        return Err(CliError::Usage(format!(
            "n = {n} exceeds the cap {cap} (raise it with --cap)"
        )));
    }
    Ok(())
}

fn k_range(kmin: i64, kmax: i64) -> Result<Vec<i64>, CliError> {
    if kmin > kmax {
        return Err(CliError::Usage(format!("empty k range {kmin}..={kmax}")));
    }
    Ok((kmin..=kmax).collect())
}

fn emit_value(
    out: &mut dyn Write,
    format: OutputFormat,
    id: &str,
    n: u32,
    k: i64,
    value: &str,
) -> io::Result<()> {
    match format {
        OutputFormat::Text => writeln!(out, "{value}"),
        OutputFormat::Json => {
            writeln!(out, "{}", json!({"id": id, "n": n, "k": k, "value": value}))
        }
        OutputFormat::Csv => {
            writeln!(out, "id,n,k,value")?;
            writeln!(out, "{id},{n},{k},{value}")
        }
    }
}

/// Parses `args` and runs the command, writing results to `out`.
pub fn run_from<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(&cli, out)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Number { n, k } => {
            check_n(*n, cli.cap)?;
            emit_value(
                out,
                format,
                "number",
                *n,
                *k,
                &poly_bernoulli(*n, *k).to_string(),
            )?;
        }
        Command::Polynomial { n, k, generalized } => {
            check_n(*n, cli.cap)?;
            let (id, value) = if *generalized {
                ("generalized", gen_pb_poly(*n, *k))
            } else {
                ("polynomial", poly_bernoulli_poly(*n, *k))
            };
            emit_value(out, format, id, *n, *k, &value.render(&RenderStyle::MATH))?;
        }
        Command::Table { nmax, kmin, kmax } => {
            check_n(*nmax, cli.cap)?;
            let ks = k_range(*kmin, *kmax)?;
            write_table(out, format, *nmax, &ks)?;
        }
        Command::Verify {
            suite,
            nmax,
            kmin,
            kmax,
            seed,
            points,
            order_margin,
        } => {
            check_n(*nmax, cli.cap)?;
            let ks = k_range(*kmin, *kmax)?;
            let opts = VerifyOptions {
                seed: *seed,
                points: (*points).max(3),
                order_margin: *order_margin,
                ..VerifyOptions::default()
            };
            let reports = run_suite(*suite, *nmax, &ks, &opts);
            write_reports(out, format, &reports)?;
            if !reports.iter().all(IdentityReport::passed) {
                return Err(CliError::VerificationFailed);
            }
        }
        Command::Eval {
            number,
            poly,
            k,
            generalized,
            ln_a,
            ln_b,
            ln_c,
            x,
            oracle,
            show_series,
        } => {
            let (n, is_poly) = match (number, poly) {
                (Some(n), None) => (*n, false),
                (None, Some(n)) => (*n, true),
                _ => {
                    return Err(CliError::Usage(
                        "pass exactly one of --number or --poly".into(),
                    ))
                }
            };
            check_n(n, cli.cap)?;
            let mut point = Point::new();
            for (v, value) in [
                (Var::X, x),
                (Var::La, ln_a),
                (Var::Lb, ln_b),
                (Var::Lc, ln_c),
            ] {
                if let Some(r) = value {
                    point = point.bind(v, r.clone());
                }
            }
            let req = EvalRequest {
                n,
                k: *k,
                is_poly,
                generalized: *generalized,
            };
            let value = if *oracle || *show_series {
                let series = req.series(&point)?;
                if *show_series {
                    writeln!(out, "{series}")?;
                }
                series.egf_coeff(n as usize)
            } else {
                req.closed_form().eval(&point)?
            };
            let id = if is_poly { "poly" } else { "number" };
            emit_value(out, format, id, n, *k, &value.to_string())?;
        }
    }
    Ok(())
}

struct EvalRequest {
    n: u32,
    k: i64,
    is_poly: bool,
    generalized: bool,
}

impl EvalRequest {
    fn closed_form(&self) -> MultiPoly {
        match (self.is_poly, self.generalized) {
            (false, false) => MultiPoly::constant(poly_bernoulli(self.n, self.k)),
            (true, false) => poly_bernoulli_poly(self.n, self.k),
            (false, true) => gen_pb_numbers(self.n, self.k),
            (true, true) => gen_pb_poly(self.n, self.k),
        }
    }

    fn series(&self, point: &Point) -> Result<crate::series::PowerSeries<Rational>, CliError> {
        let order = self.n as usize;
        let need = |v: Var| point.get(v).cloned().ok_or(ArithError::UnboundVariable(v));
        Ok(match (self.is_poly, self.generalized) {
            (false, false) => gf_poly_bernoulli(self.k, order),
            (true, false) => {
                gf_poly_bernoulli(self.k, order).mul(&ps_exp_linear(&need(Var::X)?, order))
            }
            (false, true) => {
                let (la, lb) = (need(Var::La)?, need(Var::Lb)?);
                let vals = gen_pb_numbers_oracle(self.n, self.k, &la, &lb)?;
                egf_to_series(&vals)
            }
            (true, true) => gen_pb_poly_series(order, self.k, point)?,
        })
    }
}

fn egf_to_series(vals: &[Rational]) -> crate::series::PowerSeries<Rational> {
    let coeffs = vals
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let f = Rational::from_bigint(crate::arith::factorial(i as u32));
            v.checked_div(&f).expect("factorial is nonzero")
        })
        .collect();
    crate::series::PowerSeries::from_coeffs(coeffs)
}

fn write_table(out: &mut dyn Write, format: OutputFormat, nmax: u32, ks: &[i64]) -> io::Result<()> {
    if format == OutputFormat::Csv {
        writeln!(out, "id,n,k,value")?;
    }
    for &k in ks {
        for n in 0..=nmax {
            let value = poly_bernoulli(n, k).to_string();
            match format {
                OutputFormat::Text => writeln!(out, "{value}")?,
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    json!({"id": "B", "n": n, "k": k, "value": value})
                )?,
                OutputFormat::Csv => writeln!(out, "B,{n},{k},{value}")?,
            }
        }
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_reports(
    out: &mut dyn Write,
    format: OutputFormat,
    reports: &[IdentityReport],
) -> io::Result<()> {
    if format == OutputFormat::Csv {
        writeln!(out, "id,n,k,status,witness")?;
    }
    for r in reports {
        match format {
            OutputFormat::Text => writeln!(out, "{r}")?,
            OutputFormat::Json => writeln!(
                out,
                "{}",
                serde_json::to_string(r).map_err(io::Error::other)?
            )?,
            OutputFormat::Csv => {
                let ks: Vec<String> = r.ks.iter().map(i64::to_string).collect();
                let witness = r
                    .witness
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.id,
                    r.n_max,
                    csv_field(&ks.join(" ")),
                    r.status(),
                    csv_field(&witness)
                )?;
            }
        }
    }
    Ok(())
}

/// Runs one suite, reports ordered by suite, then `k`, then `n`.
pub fn run_suite(
    suite: Suite,
    n_max: u32,
    ks: &[i64],
    opts: &VerifyOptions,
) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::T1 {
        out.extend(verify_theorem1(n_max, ks, opts));
    }
    if all || suite == Suite::T2 {
        out.extend(verify_theorem2(n_max, ks, opts));
    }
    if all || suite == Suite::T3 {
        out.extend(verify_theorem3(n_max, ks));
    }
    if all || suite == Suite::T4 {
        out.extend(verify_theorem4(n_max, ks, opts));
    }
    if all || suite == Suite::T5 {
        out.extend(verify_theorem5(n_max, ks, opts));
    }
    if all || suite == Suite::C1 {
        out.extend(verify_corollary1(n_max));
    }
    if all || suite == Suite::Euler {
        out.extend(verify_euler_identities(n_max));
    }
    if all || suite == Suite::Oracle {
        out.extend(verify_oracle(n_max, ks, opts));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let mut buf = Vec::new();
        let mut argv = vec!["polybern"];
        argv.extend_from_slice(args);
        run_from(argv, &mut buf).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        String::from_utf8(buf).unwrap()
    }

    fn run_err(args: &[&str]) -> CliError {
        let mut argv = vec!["polybern"];
        argv.extend_from_slice(args);
        run_from(argv, &mut Vec::new()).unwrap_err()
    }

    #[test]
    fn number_examples() {
        assert_eq!(run_ok(&["number", "-n", "2", "-k", "2"]), "-1/36\n");
        assert_eq!(run_ok(&["number", "-n", "0", "-k", "-7"]), "1\n");
        assert_eq!(run_ok(&["number", "-n", "2", "-k", "-2"]), "14\n");
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(run_ok(&["polynomial", "-n", "1", "-k", "2"]), "x + 1/4\n");
        assert_eq!(
            run_ok(&["polynomial", "-n", "1", "-k", "2", "--generalized"]),
            "ln(c)*x + 1/4*ln(a) - 3/4*ln(b)\n"
        );
        assert_eq!(
            run_ok(&["polynomial", "-n", "0", "-k", "5", "--generalized"]),
            "1\n"
        );
    }

    #[test]
    fn table_examples() {
        let csv = run_ok(&[
            "table", "--nmax", "2", "--kmin", "1", "--kmax", "1", "--format", "csv",
        ]);
        assert_eq!(csv, "id,n,k,value\nB,0,1,1\nB,1,1,1/2\nB,2,1,1/6\n");
        assert_eq!(
            run_ok(&["table", "--nmax", "1", "--kmin", "-1", "--kmax", "-1"]),
            "1\n2\n"
        );
        let e = run_err(&["table", "--nmax", "1", "--kmin", "2", "--kmax", "1"]);
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn verify_examples() {
        run_ok(&["verify", "--suite", "C1", "--nmax", "10"]);
        run_ok(&["verify", "--suite", "T4", "--nmax", "0"]);
        let e = run_err(&["verify", "--suite", "T9"]);
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn eval_examples() {
        let gen = [
            "eval",
            "--poly",
            "1",
            "-k",
            "2",
            "--generalized",
            "--ln-a",
            "1",
            "--ln-b",
            "1",
            "--ln-c",
            "1",
            "-x",
            "0",
        ];
        assert_eq!(run_ok(&gen), "-1/2\n");
        let mut via_oracle = gen.to_vec();
        via_oracle.push("--oracle");
        assert_eq!(run_ok(&via_oracle), "-1/2\n");
        assert_eq!(
            run_ok(&["eval", "--poly", "0", "-k", "3", "-x", "7"]),
            "1\n"
        );
        assert_eq!(run_ok(&["eval", "--number", "2", "-k", "2"]), "-1/36\n");
        assert_eq!(
            run_ok(&["eval", "--number", "2", "-k", "2", "--show-series"]),
            "1 + 1/4*t - 1/72*t^2 + O(t^{3})\n-1/36\n"
        );
    }

    #[test]
    fn eval_errors() {
        let e = run_err(&[
            "eval",
            "--poly",
            "1",
            "-k",
            "2",
            "--generalized",
            "--ln-a",
            "1",
            "--ln-b",
            "1",
            "-x",
            "0",
        ]);
        assert!(e.to_string().contains("ln(c)"), "{e}");
        assert_eq!(e.exit_code(), 2);
        let e = run_err(&[
            "eval",
            "--number",
            "2",
            "-k",
            "1",
            "--generalized",
            "--ln-a",
            "1/2",
            "--ln-b",
            "-1/2",
            "--oracle",
        ]);
        assert!(e.to_string().contains("degenerate parameter point"), "{e}");
    }

    #[test]
    fn cap_is_enforced() {
        let e = run_err(&["number", "-n", "70", "-k", "1"]);
        assert_eq!(e.exit_code(), 2);
        assert!(run_ok(&["--cap", "80", "number", "-n", "70", "-k", "0"]).starts_with('1'));
    }

    #[test]
    fn json_and_csv_carry_the_same_values() {
        let args = ["table", "--nmax", "4", "--kmin", "-2", "--kmax", "2"];
        let json_out = run_ok(&[&args[..], &["--format", "json"]].concat());
        let csv_out = run_ok(&[&args[..], &["--format", "csv"]].concat());
        let from_json: Vec<String> = json_out
            .lines()
            .map(|l| {
                serde_json::from_str::<serde_json::Value>(l).unwrap()["value"]
                    .as_str()
                    .unwrap()
                    .to_string()
            })
            .collect();
        let from_csv: Vec<String> = csv_out
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().to_string())
            .collect();
        assert_eq!(from_json, from_csv);
        assert_eq!(from_json.len(), 25);
    }
}
