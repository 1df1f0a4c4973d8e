//! Argument parsing: plain integers, factored products such as `3^4*5^12`,
//! and rationals `a/b`.

use kempner::{factorize, FactoredNat, FactoredRat};

use crate::error::{CliError, Result};

pub fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("expected a non-negative integer, got {s:?}")))
}

/// A positive integer, either decimal or a product of `base^exp` terms
/// separated by `*` or `·`. Bases need not be prime.
pub fn parse_nat(s: &str) -> Result<FactoredNat> {
    let mut acc = FactoredNat::one();
    for term in s.split(['*', '·']) {
        let term = term.trim();
        let (base, exp) = match term.split_once('^') {
            Some((b, e)) => (b, e),
            None => (term, "1"),
        };
        let base = parse_u64(base)?;
        let exp: u32 = exp
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad exponent in {term:?}")))?;
        if base == 0 {
            return Err(CliError::Domain("zero has no factorization".into()));
        }
        let f = factorize(base)?;
        for &(p, e) in f.factors() {
            let e = e
                .checked_mul(exp)
                .ok_or_else(|| CliError::Domain(format!("exponent overflow in {term:?}")))?;
            acc = acc.mul(&FactoredNat::prime_power(p, e));
        }
    }
    Ok(acc)
}

/// `a/b` or `a`, with `a` a nonzero integer and `b` positive.
pub fn parse_rat(s: &str) -> Result<FactoredRat> {
    let s = s.trim();
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: i64 = num
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("expected a rational a/b, got {s:?}")))?;
    let den = parse_u64(den)?;
    if num == 0 || den == 0 {
        return Err(CliError::Domain(format!("{s} is zero or undefined")));
    }
    Ok(FactoredRat::new(num, den)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nat_forms() {
        assert_eq!(parse_nat("3960").unwrap().to_u64(), Some(3960));
        assert_eq!(parse_nat("3^4*5^12").unwrap(), parse_nat("3^4 · 5^12").unwrap());
        assert_eq!(parse_nat("3^4*5^12").unwrap().factors(), [(3, 4), (5, 12)]);
        assert_eq!(parse_nat("4^2*2").unwrap().to_u64(), Some(32));
        assert!(matches!(parse_nat("x"), Err(CliError::Usage(_))));
        assert!(matches!(parse_nat("0"), Err(CliError::Domain(_))));
    }

    #[test]
    fn rat_forms() {
        assert_eq!(parse_rat("6/8").unwrap().to_string(), "3/4");
        assert_eq!(parse_rat("-5").unwrap().to_string(), "-5");
        assert!(matches!(parse_rat("1/x"), Err(CliError::Usage(_))));
        assert!(matches!(parse_rat("1/0"), Err(CliError::Domain(_))));
    }
}
