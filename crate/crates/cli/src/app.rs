//! The `kempner` command line, runnable in-process.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use kempner::divisor_product::{
    default_schedule, divisor_product_exponents, theta_exact, theta_restricted, theta_sumt,
    ThetaExponents, ThetaSolution,
};
use kempner::moebius::{audit_s_closed, gcd_matrix_det, inversion_product, shifted_det};
use kempner::SmarandacheCtx;

use crate::errata::write_errata;
use crate::error::{CliError, Result};
use crate::eval::{eval_record, table, Func};
use crate::parse::parse_nat;
use crate::record::{write_all, Format, OutputRecord};
use crate::verify::{run_suite, Suite, VerifyParams};

/// Kempner/Smarandache function family: evaluation, tables and checks.
#[derive(Parser)]
#[command(name = "kempner", version)]
struct Cli {
    /// Output format for data records.
    #[arg(long, value_enum, global = true, default_value_t = Format::Csv)]
    format: Format,
    /// Value of S(1).
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(0..=1))]
    s1: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function, e.g. `eval S 16` or `eval Sp 5 5`.
    Eval {
        func: String,
        #[arg(required = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// One record per n in lo..=hi.
    Table { func: String, lo: u64, hi: u64 },
    /// Run a property suite; exits 1 if any asserted check fails.
    Verify(VerifyArgs),
    /// Exact gcd-matrix determinants.
    Det {
        #[arg(value_enum)]
        kind: DetKind,
        /// Matrix size (alternative to --r).
        size: Option<usize>,
        /// Matrix size
        #[arg(long)]
        r: Option<usize>,
        /// Shift for `shifted`.
        #[arg(long, default_value_t = 0)]
        n: u64,
    },
    /// Least m whose divisor product is a multiple of n.
    Theta {
        /// Integer or factored product such as 3^4*5^12.
        n: String,
        #[arg(long, value_enum, default_value_t = ThetaModeArg::Restricted)]
        mode: ThetaModeArg,
        /// First barrier weight (sumt).
        #[arg(long, default_value_t = 10.0)]
        r0: f64,
        /// Number of tenfold barrier reductions (sumt).
        #[arg(long, default_value_t = 14)]
        steps: usize,
        /// Newton step tolerance (sumt).
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, e.g. kempner, det, s-closed, theta
    suite: String,
    /// Largest prime (kempner, legendre)
    #[arg(long)]
    pmax: Option<u64>,
    /// Largest exponent (kempner, phi-link)
    #[arg(long)]
    amax: Option<u64>,
    /// Sweep limit for n-indexed suites
    #[arg(long)]
    n: Option<u64>,
    /// Largest determinant size (det)
    #[arg(long)]
    r: Option<usize>,
    /// Seed for the random-pair suites
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Random pairs for the morphism and rational suites.
    #[arg(long, default_value_t = 1000)]
    pairs: usize,
    /// With `s-closed`: also write the discrepancy list to this CSV file.
    #[arg(long)]
    emit_errata: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetKind {
    Gcd,
    Shifted,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaModeArg {
    Restricted,
    Exact,
    Sumt,
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code. Data goes to `out`, diagnostics to `err`.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "kempner: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let ctx = SmarandacheCtx::new(cli.s1)?;
    match cli.command {
        Command::Eval { func, args } => {
            let record = eval_record(func.parse::<Func>()?, &args, ctx)?;
            write_all(cli.format, out, &[record])
        }
        Command::Table { func, lo, hi } => {
            let records = table(func.parse::<Func>()?, lo, hi, ctx)?;
            write_all(cli.format, out, &records)
        }
        Command::Verify(args) => verify(args, ctx, cli.format, out, err),
        Command::Det { kind, size, r, n } => {
            let r = match (size, r) {
                (Some(a), Some(b)) if a != b => {
                    return Err(CliError::Usage(format!("conflicting sizes {a} and {b}")))
                }
                (Some(a), _) | (None, Some(a)) => a,
                (None, None) => return Err(CliError::Usage("det needs a size r".into())),
            };
            if r == 0 {
                return Err(CliError::Usage("r must be at least 1".into()));
            }
            let record = match kind {
                DetKind::Gcd => OutputRecord::new("det-gcd", r.to_string(), gcd_matrix_det(r, ctx).to_string())
                    .check(format!("product of s(i) = {}", inversion_product(r, ctx))),
                DetKind::Shifted => {
                    let d = shifted_det(n, r, ctx).to_string();
                    let record = OutputRecord::new("det-shifted", format!("n={n} r={r}"), d);
                    if n == 0 {
                        record.check(format!("product of s(i) = {}", inversion_product(r, ctx)))
                    } else {
                        record
                    }
                }
            };
            write_all(cli.format, out, &[record.convention(ctx.s1())])
        }
        Command::Theta { n, mode, r0, steps, tol } => {
            let fnat = parse_nat(&n)?;
            let record = match mode {
                ThetaModeArg::Restricted => integer_theta_record("theta-restricted", &n, &theta_restricted(&fnat)?),
                ThetaModeArg::Exact => integer_theta_record("theta-exact", &n, &theta_exact(&fnat)?),
                ThetaModeArg::Sumt => {
                    if !(r0 > 0.0) || steps == 0 || !(tol > 0.0) {
                        return Err(CliError::Usage("need r0 > 0, steps >= 1, tol > 0".into()));
                    }
                    sumt_record(&n, &theta_sumt(&fnat, &default_schedule(r0, steps), tol)?)
                }
            };
            write_all(cli.format, out, &[record])
        }
    }
}

fn verify(
    args: VerifyArgs,
    ctx: SmarandacheCtx,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let suite: Suite = args.suite.parse()?;
    if let Some(pinned) = suite.pinned_convention() {
        if pinned != ctx {
            writeln!(err, "kempner: suite {suite} runs under s1={}", pinned.s1())?;
        }
    }
    let params = VerifyParams {
        pmax: args.pmax,
        amax: args.amax,
        n: args.n,
        r: args.r,
        seed: args.seed,
        pairs: args.pairs,
        ctx,
    };
    if let Some(path) = &args.emit_errata {
        if suite != Suite::SClosed {
            return Err(CliError::Usage("--emit-errata only applies to s-closed".into()));
        }
        let limit = params.n.unwrap_or(10_000);
        write_errata(File::create(path)?, &audit_s_closed(limit, SmarandacheCtx::ZERO))?;
    }
    let report = run_suite(suite, &params)?;
    write_all(format, out, &report.records())?;
    let failed = report.failures().count();
    writeln!(
        err,
        "{suite}: {} checks, {failed} failed",
        report.checks.iter().filter(|c| c.asserted).count()
    )?;
    if failed > 0 {
        Err(CliError::Failed(failed))
    } else {
        Ok(())
    }
}

fn integer_theta_record(function: &str, arg: &str, sol: &ThetaSolution) -> OutputRecord {
    let m = sol.m.as_ref().expect("integer modes carry m");
    let certificate: Vec<String> = divisor_product_exponents(m)
        .into_iter()
        .map(|(q, twice)| format!("{q}^{}", twice / 2))
        .collect();
    OutputRecord::new(function, arg, m.to_string()).check(format!("p(m) = {}", certificate.join("*")))
}

fn sumt_record(arg: &str, sol: &ThetaSolution) -> OutputRecord {
    let ThetaExponents::Real(x) = &sol.exponents else {
        unreachable!("continuous mode returns real exponents")
    };
    let xs: Vec<String> = x.iter().map(|v| format!("{v:.10}")).collect();
    let report = sol.sumt.as_ref().expect("continuous mode carries diagnostics");
    let slacks: Vec<String> = report.slacks.iter().map(|g| format!("{g:.3e}")).collect();
    let mut check = format!(
        "f = {:.10}; slacks = ({}); newton steps = {}; final r = {:.1e}",
        sol.objective,
        slacks.join(", "),
        report.newton_steps,
        report.final_r
    );
    if let Some(c) = &report.cubic {
        check.push_str(&format!(
            "; both-active point = ({:.10}, {:.10}), distance {:.3e}",
            c.point[0], c.point[1], c.distance
        ));
    }
    OutputRecord::new("theta-sumt", arg, format!("({})", xs.join(", "))).check(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::read_all;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("kempner").chain(args.iter().copied());
        let code = run_from(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn values(args: &[&str]) -> Vec<String> {
        let (code, out, err) = run_args(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        read_all(Format::Csv, &out).unwrap().into_iter().map(|r| r.value).collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(values(&["eval", "S", "16"]), ["6"]);
        assert_eq!(values(&["eval", "nu4", "3960"]), ["6"]);
        assert_eq!(values(&["eval", "S-rat", "3/4"]), ["3/2"]);
        assert_eq!(values(&["--s1", "0", "eval", "s", "36"]), ["-1"]);
    }

    #[test]
    fn table_examples() {
        assert_eq!(values(&["table", "S", "1", "5"]), ["1", "2", "3", "4", "5"]);
        assert_eq!(
            values(&["table", "s", "1", "8", "--s1", "1"]),
            ["1", "1", "2", "2", "4", "-1", "6", "0"]
        );
        assert_eq!(values(&["table", "S4", "1", "6"]), ["1", "2", "1", "2", "1", "3"]);
    }

    #[test]
    fn det_examples() {
        assert_eq!(values(&["det", "gcd", "8", "--s1", "1"]), ["0"]);
        assert_eq!(values(&["det", "gcd", "--r", "7", "--s1", "1"]), ["-96"]);
        let shifted = values(&["det", "shifted", "--n", "2", "--r", "10"]);
        let want = kempner::moebius::shifted_det(2, 10, SmarandacheCtx::ONE).to_string();
        assert_eq!(shifted, [want]);
        let (code, out, _) = run_args(&["det", "gcd", "7", "--format", "jsonl"]);
        assert_eq!(code, 0);
        let record = &read_all(Format::Jsonl, &out).unwrap()[0];
        assert_eq!(record.check.as_deref(), Some("product of s(i) = -96"));
        assert_eq!(record.convention.as_deref(), Some("s1=1"));
    }

    #[test]
    fn theta_modes() {
        let (code, out, _) = run_args(&["theta", "3^4*5^12", "--format", "jsonl"]);
        assert_eq!(code, 0);
        let r = &read_all(Format::Jsonl, &out).unwrap()[0];
        assert_eq!(r.value, "375");
        assert_eq!(r.check.as_deref(), Some("p(m) = 3^4*5^12"));
        assert_eq!(values(&["theta", "3^4*5^12", "--mode", "exact"]), ["150"]);
        let (code, out, _) = run_args(&["theta", "3^4*5^12", "--mode", "sumt"]);
        assert_eq!(code, 0);
        let r = &read_all(Format::Csv, &out).unwrap()[0];
        assert!(r.value.starts_with("(1.32526"), "{}", r.value);
        assert_eq!(run_args(&["theta", "1"]).0, 3);
    }

    #[test]
    fn verify_examples() {
        let (code, _, err) = run_args(&["verify", "kempner", "--pmax", "50", "--amax", "500"]);
        assert_eq!(code, 0, "{err}");
        let (code, _, err) = run_args(&["verify", "gronas", "--n", "10000"]);
        assert_eq!(code, 0, "{err}");
        assert!(err.contains("runs under s1=0"));
        let (code, out, _) = run_args(&["verify", "det", "--r", "12", "--s1", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("det(7) = -96") && out.contains("det(8) = 0"));
    }

    #[test]
    fn formats_carry_identical_values() {
        for args in [
            &["table", "S", "1", "30"][..],
            &["verify", "det", "--r", "9"][..],
            &["eval", "S-bar", "3/4"][..],
        ] {
            let (_, csv, _) = run_args(&[args, &["--format", "csv"]].concat());
            let (_, jsonl, _) = run_args(&[args, &["--format", "jsonl"]].concat());
            assert_eq!(
                read_all(Format::Csv, &csv).unwrap(),
                read_all(Format::Jsonl, &jsonl).unwrap(),
                "{args:?}"
            );
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["eval", "S6", "1"]).0, 3);
        assert_eq!(run_args(&["eval", "S", "abc"]).0, 2);
        assert_eq!(run_args(&["eval", "Q", "5"]).0, 2);
        assert_eq!(run_args(&["verify", "nope"]).0, 2);
        assert_eq!(run_args(&["eval", "S", "5", "--s1", "2"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["table", "S", "5", "1"]).0, 2);
        assert_eq!(run_args(&["det", "gcd"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
        let (code, _, err) = run_args(&["verify", "fixed-points", "--n", "3"]);
        assert_eq!(code, 0, "{err}");
    }

    #[test]
    fn emitted_errata_match_the_frozen_list() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("errata.csv");
        let path_str = path.to_str().unwrap();
        let (code, _, err) = run_args(&["verify", "s-closed", "--emit-errata", path_str]);
        assert_eq!(code, 0, "{err}");
        let written = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            crate::errata::read_errata(&written).unwrap(),
            crate::errata::frozen_s_closed().unwrap()
        );
        assert_eq!(run_args(&["verify", "det", "--emit-errata", path_str]).0, 2);
    }
}
