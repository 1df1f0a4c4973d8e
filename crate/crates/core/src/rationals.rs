//! Nonzero rationals as signed prime-exponent vectors, and `S` extended to them.
//!
//! A positive rational is `∏ p^{α_p}` with integer exponents. Divisibility is
//! exponent-wise `≤`, so gcd and lcm are exponent-wise min and max, and
//! `lcm(a, b) = 1 / gcd(1/a, 1/b)`.
//!
//! For `q = n/n₁` in lowest terms the extension is `S(q) = S(n) / S₄(n₁)`
//! and `S(−q) = S(q)`. Its companion is `S̄(a) = 1 / S(1/a)`, which restricts
//! to `S₄` on the positive integers.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use crate::arith::{factorize, FactoredNat};
use crate::duals::s4_brute;
use crate::error::{Error, Result};
use crate::kempner::{smarandache, SmarandacheCtx};

/// A nonzero rational: a sign and a sorted map prime → nonzero exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactoredRat {
    negative: bool,
    factors: Vec<(u64, i32)>,
}

impl FactoredRat {
    pub fn one() -> Self {
        Self::default()
    }

    /// `num / den` in lowest terms.
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if num == 0 {
            return Err(Error::ZeroValue);
        }
        let n = factorize(num.unsigned_abs())?;
        let d = factorize(den)?;
        let mut q = Self::from_parts(&n, &d);
        q.negative = num < 0;
        Ok(q)
    }

    /// `n / d` for positive factored integers.
    pub fn from_parts(n: &FactoredNat, d: &FactoredNat) -> Self {
        let mut factors: Vec<(u64, i32)> = Vec::new();
        let (a, b) = (n.factors(), d.factors());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (p, e) = match (a.get(i), b.get(j)) {
                (Some(&(p, x)), Some(&(q, y))) if p == q => {
                    i += 1;
                    j += 1;
                    (p, x as i32 - y as i32)
                }
                (Some(&(p, x)), Some(&(q, _))) if p < q => {
                    i += 1;
                    (p, x as i32)
                }
                (Some(&(p, x)), None) => {
                    i += 1;
                    (p, x as i32)
                }
                (_, Some(&(q, y))) => {
                    j += 1;
                    (q, -(y as i32))
                }
                (None, None) => unreachable!(),
            };
            if e != 0 {
                factors.push((p, e));
            }
        }
        Self {
            negative: false,
            factors,
        }
    }

    pub fn from_nat(n: &FactoredNat) -> Self {
        Self::from_parts(n, &FactoredNat::one())
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn factors(&self) -> &[(u64, i32)] {
        &self.factors
    }

    pub fn exponent(&self, p: u64) -> i32 {
        match self.factors.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    /// The part built from positive exponents.
    pub fn numerator_part(&self) -> FactoredNat {
        FactoredNat::from_sorted_unchecked(
            self.factors
                .iter()
                .filter(|&&(_, e)| e > 0)
                .map(|&(p, e)| (p, e as u32))
                .collect(),
        )
    }

    /// The part built from negated negative exponents.
    pub fn denominator_part(&self) -> FactoredNat {
        FactoredNat::from_sorted_unchecked(
            self.factors
                .iter()
                .filter(|&&(_, e)| e < 0)
                .map(|&(p, e)| (p, e.unsigned_abs()))
                .collect(),
        )
    }

    pub fn numerator(&self) -> BigUint {
        self.numerator_part().value()
    }

    pub fn denominator(&self) -> BigUint {
        self.denominator_part().value()
    }

    pub fn abs(&self) -> Self {
        Self {
            negative: false,
            factors: self.factors.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            negative: !self.negative,
            factors: self.factors.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        Self {
            negative: self.negative,
            factors: self.factors.iter().map(|&(p, e)| (p, -e)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut q = self.combine(other, |a, b| a + b);
        q.negative = self.negative != other.negative;
        q
    }

    fn combine(&self, other: &Self, op: impl Fn(i32, i32) -> i32) -> Self {
        let mut primes: Vec<u64> = self.factors.iter().chain(&other.factors).map(|&(p, _)| p).collect();
        primes.sort_unstable();
        primes.dedup();
        let factors = primes
            .into_iter()
            .filter_map(|p| {
                let e = op(self.exponent(p), other.exponent(p));
                (e != 0).then_some((p, e))
            })
            .collect();
        Self {
            negative: false,
            factors,
        }
    }

    /// Exact comparison of values by cross-multiplication.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self.negative, other.negative) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (neg, _) => {
                let lhs = self.numerator() * other.denominator();
                let rhs = other.numerator() * self.denominator();
                let ord = lhs.cmp(&rhs);
                if neg {
                    ord.reverse()
                } else {
                    ord
                }
            }
        }
    }

    /// The larger value (not the lcm).
    pub fn max_value(self, other: Self) -> Self {
        if self.cmp_value(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    /// The smaller value (not the gcd).
    pub fn min_value(self, other: Self) -> Self {
        if self.cmp_value(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for FactoredRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        let den = self.denominator();
        if den == BigUint::from(1u8) {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), den)
        }
    }
}

impl FromStr for FactoredRat {
    type Err = Error;

    /// Parses `a/b` or `a` with `a` a nonzero integer and `b` positive.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain("expected a rational of the form a/b");
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s.as_str(), "1"),
        };
        let num: i64 = num.parse().map_err(|_| bad())?;
        let den: u64 = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(Error::Zero);
        }
        Self::new(num, den)
    }
}

fn require_positive(q: &FactoredRat) -> Result<()> {
    if q.negative {
        Err(Error::Domain("gcd and lcm are defined for positive rationals"))
    } else {
        Ok(())
    }
}

/// Exponent-wise minimum of two positive rationals.
pub fn rat_gcd(a: &FactoredRat, b: &FactoredRat) -> Result<FactoredRat> {
    require_positive(a)?;
    require_positive(b)?;
    Ok(a.combine(b, i32::min))
}

/// Exponent-wise maximum of two positive rationals.
pub fn rat_lcm(a: &FactoredRat, b: &FactoredRat) -> Result<FactoredRat> {
    require_positive(a)?;
    require_positive(b)?;
    Ok(a.combine(b, i32::max))
}

/// `S(n/n₁) = S(n) / S₄(n₁)` on the lowest-terms form; the sign is ignored.
///
/// Fails with [`Error::ZeroValue`] when `S(n) = 0`, which happens for `n = 1`
/// under the `S(1) = 0` convention.
pub fn smarandache_rat(q: &FactoredRat, ctx: SmarandacheCtx) -> Result<FactoredRat> {
    let top = smarandache(&q.numerator_part(), ctx);
    if top == 0 {
        return Err(Error::ZeroValue);
    }
    let bottom = s4_brute(&q.denominator_part());
    FactoredRat::new(top as i64, bottom)
}

/// `S̄(a) = 1 / S(1/a)` for `a > 0`.
pub fn smarandache_bar(q: &FactoredRat, ctx: SmarandacheCtx) -> Result<FactoredRat> {
    if q.negative {
        return Err(Error::Domain("S-bar is defined for positive rationals"));
    }
    Ok(smarandache_rat(&q.recip(), ctx)?.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn r(num: i64, den: u64) -> FactoredRat {
        FactoredRat::new(num, den).unwrap()
    }

    #[test]
    fn construction_examples() {
        let q = r(3, 4);
        assert_eq!(q.factors(), &[(2, -2), (3, 1)]);
        assert!(!q.is_negative());
        assert_eq!(r(6, 3).factors(), &[(2, 1)]);
        let q = r(-5, 10);
        assert!(q.is_negative());
        assert_eq!(q.factors(), &[(2, -1)]);
        assert_eq!(q.to_string(), "-1/2");
        assert_eq!(FactoredRat::new(0, 3), Err(Error::ZeroValue));
        assert_eq!("6/4".parse::<FactoredRat>().unwrap(), r(3, 2));
        assert_eq!("-7".parse::<FactoredRat>().unwrap(), r(-7, 1));
        assert!("1/0".parse::<FactoredRat>().is_err());
    }

    #[test]
    fn gcd_lcm_examples() {
        assert_eq!(rat_gcd(&r(3, 4), &r(9, 2)).unwrap(), r(3, 4));
        assert_eq!(rat_lcm(&r(3, 4), &r(9, 2)).unwrap(), r(9, 2));
        assert_eq!(rat_gcd(&r(5, 7), &r(5, 7)).unwrap(), r(5, 7));
        assert_eq!(rat_lcm(&r(2, 3), &r(3, 2)).unwrap(), r(6, 1));
        assert_eq!(rat_gcd(&r(2, 3), &r(3, 2)).unwrap(), r(1, 6));
        assert!(rat_gcd(&r(-1, 2), &r(1, 3)).is_err());
    }

    #[test]
    fn s_rat_examples() {
        let ctx = SmarandacheCtx::ONE;
        assert_eq!(smarandache_rat(&r(3, 4), ctx).unwrap(), r(3, 2));
        assert_eq!(smarandache_rat(&r(16, 1), ctx).unwrap(), r(6, 1));
        assert_eq!(smarandache_rat(&r(1, 6), ctx).unwrap(), r(1, 3));
        assert_eq!(smarandache_rat(&r(-3, 4), ctx).unwrap(), r(3, 2));
        assert_eq!(smarandache_rat(&r(1, 6), SmarandacheCtx::ZERO), Err(Error::ZeroValue));
        // lowest terms first: 6/2 is 3/1
        assert_eq!(smarandache_rat(&r(6, 2), ctx).unwrap(), r(3, 1));
    }

    #[test]
    fn s_bar_examples() {
        let ctx = SmarandacheCtx::ONE;
        assert_eq!(smarandache_bar(&r(6, 1), ctx).unwrap(), r(3, 1));
        assert_eq!(smarandache_bar(&r(1, 1), ctx).unwrap(), r(1, 1));
        assert_eq!(smarandache_bar(&r(1, 4), ctx).unwrap(), r(1, 4));
        assert_eq!(smarandache_bar(&r(1, 1), SmarandacheCtx::ZERO), Err(Error::ZeroValue));
    }

    #[test]
    fn value_order() {
        assert_eq!(r(1, 2).cmp_value(&r(2, 3)), Ordering::Less);
        assert_eq!(r(-1, 2).cmp_value(&r(-2, 3)), Ordering::Greater);
        assert_eq!(r(-1, 2).cmp_value(&r(1, 3)), Ordering::Less);
        assert_eq!(r(4, 6).cmp_value(&r(2, 3)), Ordering::Equal);
        assert_eq!(r(1, 2).max_value(r(1, 3)), r(1, 2));
    }
}
