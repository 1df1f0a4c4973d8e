//! Companions of `S` defined by factorial triplets.
//!
//! `S` itself is the least `m` with `n | m!`. Swapping "least" for "greatest",
//! divisibility for the usual order, or reading the result through
//! `lcm(1..m)` gives:
//!
//! | fn   | definition                                    |
//! |------|-----------------------------------------------|
//! | `S₂` | least `m` with `m! | n` (always 1)            |
//! | `S₃` | least `m` with `n ≤ m!`                       |
//! | `S₄` | greatest `m` with `m! | n`                    |
//! | `S₅` | `lcm{m : m! | n} = lcm(1..S₄(n))`             |
//! | `S₆` | `lcm{m : n ∤ m!} = lcm(1..S(n) − 1)`          |
//! | `S₇` | `lcm{m : m! ≤ n}`                             |
//!
//! `S₄` has a closed form over the leading run of consecutive primes of `n`;
//! [`s4_closed`] implements it and [`s4_brute`] is the scan it is checked against.

use crate::arith::{factorial_exponent, lcm_upto, next_prime, FactoredNat};
use crate::error::{Error, Result};
use crate::kempner::{smarandache, sp_formula, SmarandacheCtx};

pub fn s2(_n: u64) -> u64 {
    1
}

/// Least `m` with `n ≤ m!`.
pub fn s3(n: u64) -> u64 {
    let mut m = 1u64;
    let mut fact = 1u128;
    while (n as u128) > fact {
        m += 1;
        fact *= m as u128;
    }
    m
}

/// Greatest `m` with `m! | n`, by stepping `m` upward until some prime's
/// Legendre exponent exceeds its exponent in `n`.
pub fn s4_brute(n: &FactoredNat) -> u64 {
    let mut m = 1u64;
    loop {
        let next = m + 1;
        let fits = (2..=next)
            .filter(|&q| crate::arith::is_prime(q))
            .all(|q| factorial_exponent(q, next) <= n.exponent(q) as u64);
        if !fits {
            return m;
        }
        m = next;
    }
}

/// `S₄` via `min{t₁, …, t_k, p_{k+1} − 1}` over the maximal leading run
/// `2, 3, 5, …, p_k` of primes dividing `n`, where
/// `tᵢ = S(pᵢ^αᵢ) − 1` if `E_{pᵢ}(S(pᵢ^αᵢ)) > αᵢ` and `S(pᵢ^αᵢ) + pᵢ − 1` otherwise.
pub fn s4_closed(n: &FactoredNat) -> u64 {
    let mut best = u64::MAX;
    let mut p = 2u64;
    loop {
        let alpha = n.exponent(p) as u64;
        if alpha == 0 {
            return best.min(p - 1);
        }
        let s = sp_formula(p, alpha);
        let t = if factorial_exponent(p, s) > alpha {
            s - 1
        } else {
            s + p - 1
        };
        best = best.min(t);
        p = next_prime(p);
    }
}

/// `lcm(1, …, S₄(n))`.
pub fn s5(n: &FactoredNat) -> FactoredNat {
    lcm_upto(s4_brute(n))
}

/// `lcm(1, …, S(n) − 1)`; undefined for `n = 1`.
pub fn s6(n: &FactoredNat, ctx: SmarandacheCtx) -> Result<FactoredNat> {
    if n.is_one() {
        return Err(Error::Domain("S6 is undefined at n = 1"));
    }
    Ok(lcm_upto(smarandache(n, ctx) - 1))
}

/// `lcm(1, …, m)` for the greatest `m` with `m! ≤ n`.
pub fn s7(n: u64) -> Result<FactoredNat> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut m = 1u64;
    let mut fact = 1u128;
    while fact * (m as u128 + 1) <= n as u128 {
        m += 1;
        fact *= m as u128;
    }
    Ok(lcm_upto(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn f(n: u64) -> FactoredNat {
        factorize(n).unwrap()
    }

    #[test]
    fn s2_s3_examples() {
        assert_eq!(s2(1), 1);
        assert_eq!(s2(7), 1);
        assert_eq!(s2(1_000_000), 1);
        assert_eq!(s3(1), 1);
        assert_eq!(s3(10), 4);
        assert_eq!(s3(24), 4);
        assert_eq!(s3(25), 5);
        assert_eq!(s3(u64::MAX), 21);
    }

    #[test]
    fn s4_examples() {
        for n in [1u64, 45, 77, 1001] {
            assert_eq!(s4_brute(&f(n)), 1);
            assert_eq!(s4_closed(&f(n)), 1);
        }
        assert_eq!(s4_brute(&f(6)), 3);
        assert_eq!(s4_brute(&f(3960)), 5);
        assert_eq!(s4_closed(&f(3960)), 5);
        assert_eq!(s4_closed(&f(2)), 2);
        assert_eq!(s4_closed(&f(6)), 3);
    }

    #[test]
    fn s4_matches_factorial_division() {
        for n in 1..=5000u64 {
            let mut m = 1u64;
            let mut fact = 1u64;
            while n % (fact * (m + 1)) == 0 {
                m += 1;
                fact *= m;
            }
            assert_eq!(s4_brute(&f(n)), m, "n={n}");
            assert_eq!(s4_closed(&f(n)), m, "n={n}");
        }
    }

    #[test]
    fn s5_s6_s7_examples() {
        assert_eq!(s5(&f(24)).to_u64(), Some(12));
        assert_eq!(s5(&f(99)).to_u64(), Some(1));
        assert_eq!(s5(&f(3960)).to_u64(), Some(60));
        assert_eq!(s6(&f(6), SmarandacheCtx::ONE).unwrap().to_u64(), Some(2));
        assert_eq!(s6(&f(2), SmarandacheCtx::ONE).unwrap().to_u64(), Some(1));
        assert_eq!(s6(&f(16), SmarandacheCtx::ZERO).unwrap().to_u64(), Some(60));
        assert!(s6(&f(1), SmarandacheCtx::ONE).is_err());
        assert_eq!(s7(1).unwrap().to_u64(), Some(1));
        assert_eq!(s7(10).unwrap().to_u64(), Some(6));
        assert_eq!(s7(719).unwrap().to_u64(), Some(60));
        assert_eq!(s7(720).unwrap().to_u64(), Some(60));
        assert_eq!(s7(5039).unwrap().to_u64(), Some(60));
        assert_eq!(s7(5040).unwrap().to_u64(), Some(420));
    }

    #[test]
    fn s5_is_not_monotone_in_the_usual_order() {
        for m in 3..=5u64 {
            let fact: u64 = (1..=m).product();
            assert_eq!(s5(&f(fact)), lcm_upto(m));
            assert!(s5(&f(fact + 1)).is_one());
        }
    }
}
