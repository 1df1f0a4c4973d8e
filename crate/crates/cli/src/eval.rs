use std::fmt;
use std::str::FromStr;

use kempner::divisor_product::{theta_exact, theta_restricted};
use kempner::duals::{s2, s3, s4_closed, s5, s6, s7};
use kempner::kempner::{mangoldt, prime_power_s, psi_factored};
use kempner::lcm_family::{nu4, nu_closed};
use kempner::moebius::{s_inversion, summatory_fs};
use kempner::rationals::{smarandache_bar, smarandache_rat};
use kempner::{euler_phi, is_prime, moebius_mu, smarandache, tau, SmarandacheCtx};

use crate::error::{CliError, Result};
use crate::parse::{parse_nat, parse_rat, parse_u64};
use crate::record::OutputRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    S,
    Sp,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    SInv,
    Fs,
    Nu,
    Nu4,
    Theta,
    ThetaExact,
    Phi,
    Mu,
    Tau,
    Mangoldt,
    Psi,
    SRat,
    SBar,
}

impl Func {
    pub const ALL: [Func; 21] = [
        Func::S,
        Func::Sp,
        Func::S2,
        Func::S3,
        Func::S4,
        Func::S5,
        Func::S6,
        Func::S7,
        Func::SInv,
        Func::Fs,
        Func::Nu,
        Func::Nu4,
        Func::Theta,
        Func::ThetaExact,
        Func::Phi,
        Func::Mu,
        Func::Tau,
        Func::Mangoldt,
        Func::Psi,
        Func::SRat,
        Func::SBar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::S => "S",
            Func::Sp => "Sp",
            Func::S2 => "S2",
            Func::S3 => "S3",
            Func::S4 => "S4",
            Func::S5 => "S5",
            Func::S6 => "S6",
            Func::S7 => "S7",
            Func::SInv => "s",
            Func::Fs => "FS",
            Func::Nu => "nu",
            Func::Nu4 => "nu4",
            Func::Theta => "theta",
            Func::ThetaExact => "theta-exact",
            Func::Phi => "phi",
            Func::Mu => "mu",
            Func::Tau => "tau",
            Func::Mangoldt => "mangoldt",
            Func::Psi => "psi",
            Func::SRat => "S-rat",
            Func::SBar => "S-bar",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Sp => 2,
            _ => 1,
        }
    }

    /// Whether the value depends on the `S(1)` convention.
    pub fn uses_convention(self) -> bool {
        matches!(
            self,
            Func::S | Func::Sp | Func::S6 | Func::SInv | Func::Fs | Func::SRat | Func::SBar
        )
    }

    /// Whether `table` can sweep it over a range of integers.
    pub fn is_unary_integer(self) -> bool {
        !matches!(self, Func::Sp | Func::SRat | Func::SBar)
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Func {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Func::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<_> = Func::ALL.iter().map(|f| f.name()).collect();
            CliError::Usage(format!("unknown function {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// Evaluates `func` and returns its value as printed.
pub fn evaluate(func: Func, args: &[String], ctx: SmarandacheCtx) -> Result<String> {
    if args.len() != func.arity() {
        return Err(CliError::Usage(format!(
            "{func} takes {} argument(s), got {}",
            func.arity(),
            args.len()
        )));
    }
    let arg = &args[0];
    let value = match func {
        Func::Sp => {
            let p = parse_u64(&args[0])?;
            let alpha = parse_u64(&args[1])?;
            if !is_prime(p) {
                return Err(kempner::Error::NotPrime(p).into());
            }
            prime_power_s(p, alpha, ctx).to_string()
        }
        Func::SRat => smarandache_rat(&parse_rat(arg)?, ctx)?.to_string(),
        Func::SBar => smarandache_bar(&parse_rat(arg)?, ctx)?.to_string(),
        Func::S2 => s2(parse_positive(arg)?).to_string(),
        Func::S3 => s3(parse_positive(arg)?).to_string(),
        Func::S7 => s7(parse_positive(arg)?)?.to_string(),
        Func::Psi => {
            let n = parse_positive(arg)?;
            let n = u32::try_from(n).map_err(|_| CliError::Domain("psi argument too large".into()))?;
            format!("ln {}", psi_factored(n as u64))
        }
        _ => {
            let n = parse_nat(arg)?;
            match func {
                Func::S => smarandache(&n, ctx).to_string(),
                Func::S4 => s4_closed(&n).to_string(),
                Func::S5 => s5(&n).to_string(),
                Func::S6 => s6(&n, ctx)?.to_string(),
                Func::SInv => s_inversion(&n, ctx).to_string(),
                Func::Fs => summatory_fs(&n, ctx).to_string(),
                Func::Nu => nu_closed(&n)?.to_string(),
                Func::Nu4 => nu4(&n).to_string(),
                Func::Theta => theta_restricted(&n)?.m.expect("integer mode").to_string(),
                Func::ThetaExact => theta_exact(&n)?.m.expect("integer mode").to_string(),
                Func::Phi => euler_phi(&n).to_string(),
                Func::Mu => moebius_mu(&n).to_string(),
                Func::Tau => tau(&n).to_string(),
                Func::Mangoldt => match mangoldt(&n) {
                    Some(p) => format!("ln {p}"),
                    None => "0".into(),
                },
                _ => unreachable!("handled above"),
            }
        }
    };
    Ok(value)
}

fn parse_positive(s: &str) -> Result<u64> {
    match parse_u64(s)? {
        0 => Err(CliError::Domain("argument must be positive".into())),
        n => Ok(n),
    }
}

pub fn eval_record(func: Func, args: &[String], ctx: SmarandacheCtx) -> Result<OutputRecord> {
    let value = evaluate(func, args, ctx)?;
    let record = OutputRecord::new(func.name(), args.join(" "), value);
    Ok(if func.uses_convention() {
        record.convention(ctx.s1())
    } else {
        record
    })
}

/// One record per `n` in `lo..=hi`.
pub fn table(func: Func, lo: u64, hi: u64, ctx: SmarandacheCtx) -> Result<Vec<OutputRecord>> {
    if !func.is_unary_integer() {
        return Err(CliError::Usage(format!("table needs a one-integer function, not {func}")));
    }
    if lo == 0 || lo > hi {
        return Err(CliError::Usage(format!("need 1 <= lo <= hi, got {lo}..{hi}")));
    }
    (lo..=hi)
        .map(|n| eval_record(func, &[n.to_string()], ctx))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(name: &str, args: &[&str]) -> Result<String> {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        evaluate(name.parse()?, &args, SmarandacheCtx::ONE)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ev("S", &["16"]).unwrap(), "6");
        assert_eq!(ev("nu4", &["3960"]).unwrap(), "6");
        assert_eq!(ev("S-rat", &["3/4"]).unwrap(), "3/2");
        assert_eq!(ev("Sp", &["5", "5"]).unwrap(), "25");
        assert_eq!(ev("theta", &["3^4*5^12"]).unwrap(), "375");
        assert_eq!(ev("theta-exact", &["3^4*5^12"]).unwrap(), "150");
        assert_eq!(ev("mangoldt", &["8"]).unwrap(), "ln 2");
        assert_eq!(ev("mangoldt", &["12"]).unwrap(), "0");
        assert_eq!(ev("psi", &["10"]).unwrap(), "ln 2520");
        assert_eq!(ev("S5", &["24"]).unwrap(), "12");
        assert_eq!(ev("S7", &["5040"]).unwrap(), "420");
    }

    #[test]
    fn eval_errors() {
        assert!(matches!(ev("S6", &["1"]), Err(CliError::Domain(_))));
        assert!(matches!(ev("Sp", &["4", "2"]), Err(CliError::Domain(_))));
        assert!(matches!(ev("S", &["abc"]), Err(CliError::Usage(_))));
        assert!(matches!(ev("S", &["1", "2"]), Err(CliError::Usage(_))));
        assert!(matches!(ev("T", &["1"]), Err(CliError::Usage(_))));
        assert!(matches!(ev("S3", &["0"]), Err(CliError::Domain(_))));
    }

    #[test]
    fn table_examples() {
        let values = |f: Func, lo, hi, ctx| -> Vec<String> {
            table(f, lo, hi, ctx).unwrap().into_iter().map(|r| r.value).collect()
        };
        assert_eq!(values(Func::S, 1, 5, SmarandacheCtx::ONE), ["1", "2", "3", "4", "5"]);
        assert_eq!(
            values(Func::SInv, 1, 8, SmarandacheCtx::ONE),
            ["1", "1", "2", "2", "4", "-1", "6", "0"]
        );
        assert_eq!(values(Func::S4, 1, 6, SmarandacheCtx::ONE), ["1", "2", "1", "2", "1", "3"]);
        assert!(table(Func::Sp, 1, 3, SmarandacheCtx::ONE).is_err());
        assert!(table(Func::S, 5, 3, SmarandacheCtx::ONE).is_err());
    }
}
