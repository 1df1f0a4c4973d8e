//! Property suites over ranges of arguments. Each suite returns a
//! [`SuiteReport`]; asserted checks decide the exit code, informational ones
//! are printed only.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use kempner::divisor_product::{
    default_schedule, divides_divisor_product, theta_exact, theta_restricted, theta_sumt,
    two_prime_cubic, ThetaExponents,
};
use kempner::duals::{s4_brute, s4_closed, s5, s6, s7};
use kempner::kempner::{
    mangoldt_divisor_sum, phi_link, phi_telescope, psi_factored, sp_bruteforce, sp_digits,
    sp_floor_formula, sp_formula, sp_identity_suite, zeta_ratio_partial,
};
use kempner::lcm_family::{nu4, nu4_ip, nu_brute, nu_closed};
use kempner::moebius::{
    audit_s_closed, find_vanishing_r, gcd_matrix_det, inversion_product, s_closed, s_inversion,
    summatory_fs, SClosedErratum,
};
use kempner::rationals::{rat_gcd, rat_lcm, smarandache_bar, smarandache_rat};
use kempner::{
    factorize, is_prime, legendre_exponent, lcm_upto, smarandache, FactorSieve, FactoredNat,
    FactoredRat, SmarandacheCtx,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::errata;
use crate::error::{CliError, Result};
use crate::record::OutputRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Kempner,
    Legendre,
    FixedPoints,
    PhiLink,
    Gronas,
    Moebius,
    Det,
    SClosed,
    S4,
    Morphisms,
    Nu,
    Theta,
    Zeta,
    Mangoldt,
    Rationals,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::Kempner,
        Suite::Legendre,
        Suite::FixedPoints,
        Suite::PhiLink,
        Suite::Gronas,
        Suite::Moebius,
        Suite::Det,
        Suite::SClosed,
        Suite::S4,
        Suite::Morphisms,
        Suite::Nu,
        Suite::Theta,
        Suite::Zeta,
        Suite::Mangoldt,
        Suite::Rationals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kempner => "kempner",
            Suite::Legendre => "legendre",
            Suite::FixedPoints => "fixed-points",
            Suite::PhiLink => "phi-link",
            Suite::Gronas => "gronas",
            Suite::Moebius => "moebius",
            Suite::Det => "det",
            Suite::SClosed => "s-closed",
            Suite::S4 => "s4",
            Suite::Morphisms => "morphisms",
            Suite::Nu => "nu",
            Suite::Theta => "theta",
            Suite::Zeta => "zeta",
            Suite::Mangoldt => "mangoldt",
            Suite::Rationals => "rationals",
        }
    }

    /// The convention a suite always runs under, if any.
    pub fn pinned_convention(self) -> Option<SmarandacheCtx> {
        match self {
            Suite::Gronas | Suite::SClosed => Some(SmarandacheCtx::ZERO),
            Suite::Rationals => Some(SmarandacheCtx::ONE),
            _ => None,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            CliError::Usage(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// Range and seed controls; `None` picks the suite's default.
#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub pmax: Option<u64>,
    pub amax: Option<u64>,
    pub n: Option<u64>,
    pub r: Option<usize>,
    pub seed: u64,
    pub pairs: usize,
    pub ctx: SmarandacheCtx,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self {
            pmax: None,
            amax: None,
            n: None,
            r: None,
            seed: 0x5eed,
            pairs: 1000,
            ctx: SmarandacheCtx::ONE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Informational checks are reported but never fail the suite.
    pub asserted: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    /// `S(1)` value used, when the suite depends on it.
    pub convention: Option<u64>,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, convention: Option<u64>) -> Self {
        Self {
            suite,
            convention,
            checks: Vec::new(),
        }
    }

    fn assert(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            asserted: true,
            detail: detail.into(),
        });
    }

    fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            asserted: false,
            detail: detail.into(),
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.asserted && !c.passed)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn records(&self) -> Vec<OutputRecord> {
        self.checks
            .iter()
            .map(|c| {
                let status = match (c.asserted, c.passed) {
                    (false, _) => "info",
                    (true, true) => "pass",
                    (true, false) => "fail",
                };
                let r = OutputRecord::new(self.suite.name(), c.name.clone(), status).check(c.detail.clone());
                match self.convention {
                    Some(s1) => r.convention(s1),
                    None => r,
                }
            })
            .collect()
    }
}

/// Collects up to a few counterexamples while counting all of them.
struct Tally<T> {
    total: u64,
    failures: u64,
    examples: Vec<T>,
}

impl<T: fmt::Debug> Tally<T> {
    fn new() -> Self {
        Self {
            total: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, example: impl FnOnce() -> T) {
        self.total += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < 5 {
                self.examples.push(example());
            }
        }
    }

    fn ok(&self) -> bool {
        self.failures == 0
    }

    fn summary(&self) -> String {
        if self.ok() {
            format!("{} cases, 0 failures", self.total)
        } else {
            format!("{} cases, {} failures, e.g. {:?}", self.total, self.failures, self.examples)
        }
    }

    fn push_to(&self, report: &mut SuiteReport, name: &str) {
        report.assert(name, self.ok(), self.summary());
    }
}

pub fn run_suite(suite: Suite, params: &VerifyParams) -> Result<SuiteReport> {
    let ctx = suite.pinned_convention().unwrap_or(params.ctx);
    Ok(match suite {
        Suite::Kempner => kempner(params.pmax.unwrap_or(50), params.amax.unwrap_or(500)),
        Suite::Legendre => legendre(params.pmax.unwrap_or(100), params.n.unwrap_or(10_000)),
        Suite::FixedPoints => fixed_points(params.n.unwrap_or(10_000)),
        Suite::PhiLink => phi_links(params.amax.unwrap_or(8) as u32)?,
        Suite::Gronas => gronas(params.n.unwrap_or(10_000)),
        Suite::Moebius => moebius(params.n.unwrap_or(10_000)),
        Suite::Det => det(params.r.unwrap_or(12)),
        Suite::SClosed => s_closed_audit(params.n.unwrap_or(10_000))?,
        Suite::S4 => s4(params.n.unwrap_or(100_000)),
        Suite::Morphisms => morphisms(params.seed, params.pairs, ctx)?,
        Suite::Nu => nu(params.n.unwrap_or(100_000)),
        Suite::Theta => theta(params.n.unwrap_or(10_000))?,
        Suite::Zeta => zeta(params.n.unwrap_or(100_000))?,
        Suite::Mangoldt => mangoldt(params.n.unwrap_or(10_000)),
        Suite::Rationals => rationals(params.n.unwrap_or(10_000), params.seed, params.pairs)?,
    })
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_prime(p)).collect()
}

fn sieve(limit: u64) -> FactorSieve {
    FactorSieve::new(u32::try_from(limit.max(2)).expect("sweep limit fits in u32"))
}

pub fn kempner(pmax: u64, amax: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Kempner, None);
    let mut routes = Tally::new();
    let mut identities = Tally::new();
    for p in primes_up_to(pmax) {
        for alpha in 1..=amax {
            let values = [
                sp_bruteforce(p, alpha),
                sp_digits(p, alpha),
                sp_formula(p, alpha),
                sp_floor_formula(p, alpha),
            ];
            routes.record(values.iter().all(|&v| v == values[0]), || (p, alpha, values));
            let r = sp_identity_suite(p, alpha);
            identities.record(r.all_pass(), || r.clone());
        }
    }
    routes.push_to(&mut report, "four-way S_p agreement");
    identities.push_to(&mut report, "identity system around S_p");
    report
}

pub fn legendre(pmax: u64, mmax: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Legendre, None);
    let mut tally = Tally::new();
    for p in primes_up_to(pmax) {
        for m in 0..=mmax {
            let r = legendre_exponent(p, m);
            tally.record(r.is_ok(), || (p, m, r.clone()));
        }
    }
    tally.push_to(&mut report, "floor sum equals digit-sum form");
    report
}

/// `{n ∈ [lo, hi] : S(n) = n}` under `S(1) = 1`.
pub fn fixed_point_set(lo: u64, hi: u64) -> Vec<u64> {
    let sv = sieve(hi);
    (lo.max(1)..=hi)
        .filter(|&n| smarandache(&sv.factorize(n).expect("n >= 1"), SmarandacheCtx::ONE) == n)
        .collect()
}

pub fn fixed_points(n: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::FixedPoints, Some(1));
    let found = fixed_point_set(2, n);
    let mut expected = primes_up_to(n);
    if n >= 4 {
        expected.push(4);
        expected.sort_unstable();
    }
    report.assert(
        "S(n) = n exactly for primes and 4",
        found == expected,
        format!("{} fixed points in [2, {n}]", found.len()),
    );
    report
}

pub fn phi_links(amax: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::PhiLink, None);
    let mut link = Tally::new();
    let mut telescope = Tally::new();
    for p in [2u64, 3, 5, 7] {
        for alpha in 2..=amax {
            let (a, b) = phi_link(p, alpha)?;
            link.record(a == b, || (p, alpha, a, b));
            let (a, b) = phi_telescope(p, alpha)?;
            telescope.record(a == b, || (p, alpha, a, b));
        }
    }
    link.push_to(&mut report, "S_p(p^(a-1)) = phi(p^a) + p");
    telescope.push_to(&mut report, "sum of S_p(p^k) - p telescopes to p^a - p");
    Ok(report)
}

/// Under `S(1) = 0`: the sets where `F_S(n) = n` and `F_S(n) > n`, and the
/// squarefree closed form.
pub fn gronas(n: u64) -> SuiteReport {
    let ctx = SmarandacheCtx::ZERO;
    let mut report = SuiteReport::new(Suite::Gronas, Some(0));
    let sv = sieve(n);
    let (mut equal, mut above, mut squarefree) = (Vec::new(), Vec::new(), Tally::new());
    let mut max_excess = 0;
    for k in 1..=n {
        let f = sv.factorize(k).expect("k >= 1");
        let fs = summatory_fs(&f, ctx);
        match fs.cmp(&k) {
            Ordering::Equal => equal.push(k),
            Ordering::Greater => {
                above.push(k);
                max_excess = max_excess.max(fs - k);
            }
            Ordering::Less => {}
        }
        if k > 1 && f.is_squarefree() {
            let closed: u64 = f.primes().enumerate().map(|(i, p)| p << i).sum();
            squarefree.record(closed == fs, || (k, fs, closed));
        }
    }
    let mut want_equal: Vec<u64> = primes_up_to(n);
    want_equal.extend([9, 16, 24].into_iter().filter(|&k| k <= n));
    want_equal.sort_unstable();
    let mut want_above: Vec<u64> = primes_up_to(n / 2).into_iter().map(|p| 2 * p).collect();
    want_above.extend([8, 12, 18, 20].into_iter().filter(|&k| k <= n));
    want_above.sort_unstable();
    want_above.dedup();
    report.assert(
        "F_S(n) = n iff n prime or n in {9, 16, 24}",
        equal == want_equal,
        format!("{} solutions", equal.len()),
    );
    report.assert(
        "F_S(n) > n iff n = 2p or n in {8, 12, 18, 20}",
        above == want_above,
        format!("{} solutions", above.len()),
    );
    report.assert("F_S(n) <= n + 4 where F_S(n) > n", max_excess <= 4, format!("max excess {max_excess}"));
    squarefree.push_to(&mut report, "F_S(p1...pt) = sum 2^(i-1) p_i");
    report
}

pub fn moebius(n: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Moebius, None);
    let sv = sieve(n);
    for ctx in [SmarandacheCtx::ZERO, SmarandacheCtx::ONE] {
        let mut tally = Tally::new();
        for k in 1..=n {
            let f = sv.factorize(k).expect("k >= 1");
            let total: i64 = f.divisors().iter().map(|d| s_inversion(d, ctx)).sum();
            let s = smarandache(&f, ctx) as i64;
            tally.record(total == s, || (k, total, s));
        }
        tally.push_to(&mut report, &format!("sum of s(d) over d | n is S(n), s1={}", ctx.s1()));
    }
    report
}

pub fn det(r_max: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Det, None);
    for ctx in [SmarandacheCtx::ZERO, SmarandacheCtx::ONE] {
        let mut tally = Tally::new();
        for r in 1..=r_max {
            let (d, p) = (gcd_matrix_det(r, ctx), inversion_product(r, ctx));
            tally.record(d == p, || (r, d.clone(), p.clone()));
        }
        tally.push_to(&mut report, &format!("det = product of s(i), s1={}", ctx.s1()));
    }
    let ctx = SmarandacheCtx::ONE;
    if r_max >= 8 {
        let (d7, d8) = (gcd_matrix_det(7, ctx), gcd_matrix_det(8, ctx));
        report.assert(
            "s1=1: det(7) = -96",
            d7 == BigInt::from(-96),
            format!("det(7) = {d7}"),
        );
        report.assert("s1=1: det(8) = 0", d8 == BigInt::from(0), format!("det(8) = {d8}"));
        let first = find_vanishing_r(0, r_max, ctx);
        report.assert(
            "s1=1: det(r) first vanishes at r = 8",
            first == Some(8),
            format!("first vanishing r = {first:?}"),
        );
        let zero_beyond = (8..=r_max).all(|r| gcd_matrix_det(r, ctx) == BigInt::from(0));
        report.assert("s1=1: det(r) = 0 for 8 <= r <= r_max", zero_beyond, format!("r_max = {r_max}"));
    }
    report
}

/// Classifier disagreements under `S(1) = 0` for `2 ≤ n ≤ limit`.
pub fn s_closed_audit(limit: u64) -> Result<SuiteReport> {
    let ctx = SmarandacheCtx::ZERO;
    let mut report = SuiteReport::new(Suite::SClosed, Some(0));
    let found = audit_s_closed(limit, ctx);
    let sv = sieve(limit);
    let mut prime_powers = Tally::new();
    let mut squarefree3 = Tally::new();
    for k in 2..=limit {
        let f = sv.factorize(k).expect("k >= 2");
        let (t, sqf) = (f.num_primes(), f.is_squarefree());
        if t == 1 || (sqf && t >= 3) {
            let c = s_closed(&f, ctx)?.value;
            let v = s_inversion(&f, ctx);
            if t == 1 {
                prime_powers.record(c == v, || (k, c, v));
            } else {
                squarefree3.record(c == v, || (k, c, v));
            }
        }
    }
    prime_powers.push_to(&mut report, "agrees on prime powers");
    squarefree3.push_to(&mut report, "agrees on squarefree n with t >= 3");
    let has36 = found.contains(&SClosedErratum {
        n: 36,
        closed: -2,
        inversion: -1,
    });
    report.assert(
        "n = 36 listed with closed -2, inversion -1",
        has36 || limit < 36,
        format!("{} discrepancies up to {limit}", found.len()),
    );
    let frozen = errata::frozen_s_closed()?;
    let cap = limit.min(errata::FROZEN_LIMIT);
    let want: Vec<_> = frozen.into_iter().filter(|e| e.n <= cap).collect();
    let got: Vec<_> = found.iter().copied().filter(|e| e.n <= cap).collect();
    let detail = if got == want {
        format!("{} discrepancies match the frozen list up to {cap}", got.len())
    } else {
        let missing: Vec<_> = want.iter().filter(|e| !got.contains(e)).take(5).collect();
        let extra: Vec<_> = got.iter().filter(|e| !want.contains(e)).take(5).collect();
        format!("missing {missing:?}; unexpected {extra:?}")
    };
    report.assert("discrepancy set equals the frozen errata", got == want, detail);
    if limit > errata::FROZEN_LIMIT {
        let beyond = found.iter().filter(|e| e.n > errata::FROZEN_LIMIT).count();
        report.info("discrepancies beyond the frozen range", beyond.to_string());
    }
    Ok(report)
}

pub fn s4(n: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::S4, None);
    let sv = sieve(n);
    let mut closed = Tally::new();
    let mut parity = Tally::new();
    for k in 1..=n {
        let f = sv.factorize(k).expect("k >= 1");
        let (c, b) = (s4_closed(&f), s4_brute(&f));
        closed.record(c == b, || (k, c, b));
        if k <= 10_000 {
            parity.record((b > 1) == (k % 2 == 0), || (k, b));
        }
    }
    closed.push_to(&mut report, "closed form equals brute force");
    parity.push_to(&mut report, "S4(n) > 1 iff n even");
    let v = s4_closed(&factorize(3960).expect("positive"));
    report.assert("S4(3960) = 5", v == 5, format!("S4(3960) = {v}"));
    report
}

/// Random pairs sharing a random common factor so gcds are not mostly 1.
fn random_pairs(rng: &mut ChaCha8Rng, count: usize, max: u64) -> Vec<(u64, u64)> {
    (0..count)
        .map(|_| {
            let g = rng.gen_range(1..=60u64);
            let a = rng.gen_range(1..=max / g);
            let b = rng.gen_range(1..=max / g);
            ((g * a).max(2), (g * b).max(2))
        })
        .collect()
}

fn nat(n: u64) -> FactoredNat {
    factorize(n).expect("positive")
}

fn min_by_value(a: FactoredNat, b: FactoredNat) -> FactoredNat {
    if a.value() <= b.value() {
        a
    } else {
        b
    }
}

pub fn morphisms(seed: u64, count: usize, ctx: SmarandacheCtx) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Morphisms, Some(ctx.s1()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = random_pairs(&mut rng, count, 20_000);

    let mut s4_gcd = Tally::new();
    let mut gcd_identity = Tally::new();
    let mut s4_sum_lcm = Tally::new();
    let mut s5_gcd = Tally::new();
    let mut s5_min = Tally::new();
    let mut s6_lcm = Tally::new();
    let mut s7_min = Tally::new();
    let mut s7_max = Tally::new();
    let mut nu_lcm = Tally::new();
    let mut nu4_gcd = Tally::new();
    for &(a, b) in &pairs {
        let (fa, fb) = (nat(a), nat(b));
        let (g, l) = (fa.gcd(&fb), fa.lcm(&fb));
        let (s4a, s4b) = (s4_brute(&fa), s4_brute(&fb));
        s4_gcd.record(s4_brute(&g) == s4a.min(s4b), || (a, b));

        let gu = num_integer::gcd(a, b);
        let lu = num_integer::lcm(a, b);
        gcd_identity.record(num_integer::gcd(a + b, lu) == gu, || (a, b));
        let lhs = s4_brute(&nat(a + b)).min(s4_brute(&l));
        s4_sum_lcm.record(lhs == s4a.min(s4b), || (a, b));

        let (s5a, s5b, s5g) = (s5(&fa), s5(&fb), s5(&g));
        s5_gcd.record(s5g == s5a.gcd(&s5b), || (a, b));
        s5_min.record(s5g == min_by_value(s5a, s5b), || (a, b));

        let s6l = s6(&l, ctx)?;
        s6_lcm.record(s6l == s6(&fa, ctx)?.lcm(&s6(&fb, ctx)?), || (a, b));

        let (s7a, s7b) = (s7(a)?, s7(b)?);
        s7_min.record(s7(a.min(b))? == min_by_value(s7a.clone(), s7b.clone()), || (a, b));
        s7_max.record(s7(a.max(b))? == s7a.lcm(&s7b), || (a, b));

        nu_lcm.record(nu_brute(&l) == nu_brute(&fa).max(nu_brute(&fb)), || (a, b));
        nu4_gcd.record(nu4(&g) == nu4(&fa).min(nu4(&fb)), || (a, b));
    }
    s4_gcd.push_to(&mut report, "S4(gcd) = min S4");
    gcd_identity.push_to(&mut report, "gcd(a + b, lcm(a, b)) = gcd(a, b)");
    s4_sum_lcm.push_to(&mut report, "min(S4(a + b), S4(lcm)) = min(S4(a), S4(b))");
    s5_gcd.push_to(&mut report, "S5(gcd) = gcd S5");
    s5_min.push_to(&mut report, "S5(gcd) = min S5");
    s6_lcm.push_to(&mut report, "S6(lcm) = lcm S6");
    s7_min.push_to(&mut report, "S7(min) = min S7");
    s7_max.push_to(&mut report, "S7(max) = lcm S7");
    nu_lcm.push_to(&mut report, "nu(lcm) = max nu");
    nu4_gcd.push_to(&mut report, "nu4(gcd) = min nu4");

    let mut recip_lcm = Tally::new();
    let mut bar_gcd = Tally::new();
    let mut bar_recip_gcd = Tally::new();
    for &(a, b) in &pairs {
        let (ra, rb) = (FactoredRat::new(1, a)?, FactoredRat::new(1, b)?);
        let lhs = smarandache_rat(&rat_lcm(&ra, &rb)?, ctx)?;
        let rhs = smarandache_rat(&ra, ctx)?.max_value(smarandache_rat(&rb, ctx)?);
        recip_lcm.record(lhs == rhs, || (a, b));

        let (na, nb) = (FactoredRat::new(a as i64, 1)?, FactoredRat::new(b as i64, 1)?);
        let lhs = smarandache_bar(&rat_gcd(&na, &nb)?, ctx)?;
        let rhs = smarandache_bar(&na, ctx)?.min_value(smarandache_bar(&nb, ctx)?);
        bar_gcd.record(lhs == rhs, || (a, b));

        let lhs = smarandache_bar(&rat_gcd(&ra, &rb)?, ctx)?;
        let rhs = smarandache_bar(&ra, ctx)?.min_value(smarandache_bar(&rb, ctx)?);
        bar_recip_gcd.record(lhs == rhs, || (a, b));
    }
    recip_lcm.push_to(&mut report, "S(1/a lcm 1/b) = max(S(1/a), S(1/b))");
    bar_gcd.push_to(&mut report, "S-bar(gcd(a, b)) = min S-bar");
    bar_recip_gcd.push_to(&mut report, "S-bar(1/a gcd 1/b) = min S-bar");

    // S(n/n1 lcm m/m1) = max(S(n), S(m)) · max(S(1/n1), S(1/m1)); audited only
    let mut fractions = Tally::new();
    let mut collisions = 0;
    for _ in 0..count {
        let x = random_fraction(&mut rng)?;
        let y = random_fraction(&mut rng)?;
        if x.factors().iter().any(|&(p, e)| e * y.exponent(p) < 0) {
            collisions += 1;
        }
        let lhs = smarandache_rat(&rat_lcm(&x, &y)?, ctx)?;
        let num = smarandache(&x.numerator_part(), ctx).max(smarandache(&y.numerator_part(), ctx));
        let den_x = smarandache_rat(&FactoredRat::from_parts(&FactoredNat::one(), &x.denominator_part()), ctx)?;
        let den_y = smarandache_rat(&FactoredRat::from_parts(&FactoredNat::one(), &y.denominator_part()), ctx)?;
        let rhs = FactoredRat::new(num as i64, 1)?.mul(&den_x.max_value(den_y));
        fractions.record(lhs == rhs, || (x.to_string(), y.to_string()));
    }
    report.info(
        "fraction lcm law (audit)",
        format!("{}; {collisions} pairs with opposite-sign primes", fractions.summary()),
    );
    Ok(report)
}

fn random_fraction(rng: &mut ChaCha8Rng) -> Result<FactoredRat> {
    loop {
        let n = rng.gen_range(2..=5000i64);
        let d = rng.gen_range(1..=5000u64);
        if num_integer::gcd(n as u64, d) == 1 {
            return Ok(FactoredRat::new(n, d)?);
        }
    }
}

pub fn nu(n: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Nu, None);
    let sv = sieve(n);
    let mut closed = Tally::new();
    let mut ip = Tally::new();
    for k in 1..=n {
        let f = sv.factorize(k).expect("k >= 1");
        let (c, b) = (nu_closed(&f).expect("fits"), nu_brute(&f));
        closed.record(c == b, || (k, c, b));
        let (i, s) = (nu4_ip(&f), nu4(&f));
        ip.record(i == s, || (k, i, s));
    }
    closed.push_to(&mut report, "nu closed form equals scan");
    let f = nat(3960);
    let (scan, prog) = (nu4(&f), nu4_ip(&f));
    report.assert(
        "nu4(3960) = 6 by scan and by the box program",
        scan == 6 && prog == 6,
        format!("scan {scan}, program {prog}"),
    );
    report.info("box program equals scan (sweep)", ip.summary());
    report
}

pub fn theta(n: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Theta, None);
    let mut sound = Tally::new();
    let mut dominance = Tally::new();
    let mut minimal = Tally::new();
    let mut strict = 0u64;
    for k in 2..=n {
        let f = nat(k);
        let restricted = theta_restricted(&f)?;
        let exact = theta_exact(&f)?;
        let (pm, em) = (restricted.m.clone().expect("integer"), exact.m.clone().expect("integer"));
        sound.record(divides_divisor_product(&f, &pm) && divides_divisor_product(&f, &em), || k);
        let (pv, ev) = (pm.value(), em.value());
        dominance.record(ev <= pv, || k);
        strict += (ev < pv) as u64;
        if k <= 2000 {
            let m = exact.m_u64().expect("small");
            minimal.record((1..m).all(|j| !divides_divisor_product(&f, &nat(j))), || k);
        }
    }
    sound.push_to(&mut report, "both integer modes satisfy n | p(m)");
    dominance.push_to(&mut report, "unrestricted minimum <= restricted minimum");
    minimal.push_to(&mut report, "unrestricted minimum is minimal (second scan, n <= 2000)");
    report.info("strict improvements", strict.to_string());

    let big = FactoredNat::from_factors([(3, 4), (5, 12)])?;
    let small = FactoredNat::from_factors([(3, 2), (5, 7)])?;
    let p = theta_restricted(&big)?.m_u64();
    report.assert("restricted minimum of 3^4*5^12 is 375", p == Some(375), format!("{p:?}"));
    let e = theta_exact(&big)?;
    report.assert(
        "unrestricted minimum of 3^4*5^12 is 150",
        e.m_u64() == Some(150) && divides_divisor_product(&big, e.m.as_ref().expect("integer")),
        format!("{:?}", e.m_u64()),
    );
    let p = theta_restricted(&small)?.m_u64();
    report.assert(
        "restricted minimum of 3^2*5^7 is 225 (not 375)",
        p == Some(225),
        format!("{p:?}"),
    );
    let cubic = two_prime_cubic(2, 7);
    report.assert(
        "cubic (2, 7) has its real root in (2, 3)",
        cubic.roots.iter().any(|&r| r > 2.0 && r < 3.0),
        format!("{:?}", cubic.roots),
    );
    let sol = theta_sumt(&big, &default_schedule(10.0, 14), 1e-12)?;
    if let ThetaExponents::Real(x) = &sol.exponents {
        let dist = ((x[0] - 1.0).powi(2) + (x[1] - 3.0).powi(2)).sqrt();
        report.info(
            "barrier limit for 3^4*5^12",
            format!("x = ({:.6}, {:.6}), f = {:.4}, distance to (1, 3) = {dist:.6}", x[0], x[1], sol.objective),
        );
    }
    Ok(report)
}

pub fn zeta(n: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Zeta, None);
    let z = zeta_ratio_partial(4.0, n)?;
    let err = (z.partial - z.reference).abs();
    report.assert(
        "partial sum within 1e-9 + tail bound of zeta(3)/zeta(4)",
        z.within_bound(1e-9),
        format!("|diff| = {err:.3e}, tail bound = {:.3e}", z.tail_bound),
    );
    report.assert(
        "phi rewriting holds where every exponent is at least 2",
        z.rewrite_failures.is_empty(),
        format!("{} checked, failures {:?}", z.rewrites_checked, z.rewrite_failures),
    );
    Ok(report)
}

pub fn mangoldt(n: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Mangoldt, None);
    let sv = sieve(n);
    let mut divisor_sum = Tally::new();
    for k in 1..=n {
        let f = sv.factorize(k).expect("k >= 1");
        divisor_sum.record(mangoldt_divisor_sum(&f) == f, || k);
    }
    divisor_sum.push_to(&mut report, "exp of the divisor sum of Lambda is n");
    let mut psi = Tally::new();
    for k in (1..=n.min(300)).chain([n]) {
        psi.record(psi_factored(k) == lcm_upto(k), || k);
    }
    psi.push_to(&mut report, "exp Psi(n) = lcm(1..n)");
    report
}

pub fn rationals(n: u64, seed: u64, count: usize) -> Result<SuiteReport> {
    let ctx = SmarandacheCtx::ONE;
    let mut report = SuiteReport::new(Suite::Rationals, Some(1));
    let sv = sieve(n);
    let mut bar = Tally::new();
    for k in 1..=n {
        let f = sv.factorize(k).expect("k >= 1");
        let b = smarandache_bar(&FactoredRat::from_nat(&f), ctx)?;
        bar.record(b == FactoredRat::new(s4_brute(&f) as i64, 1)?, || k);
    }
    bar.push_to(&mut report, "S-bar on integers equals S4");
    let v = smarandache_rat(&FactoredRat::new(3, 4)?, ctx)?;
    report.assert("S(3/4) = 3/2", v.to_string() == "3/2", v.to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut duality = Tally::new();
    for _ in 0..count {
        let x = random_fraction(&mut rng)?;
        let y = random_fraction(&mut rng)?;
        let lcm = rat_lcm(&x, &y)?;
        let via = rat_gcd(&x.recip(), &y.recip())?.recip();
        duality.record(lcm == via, || (x.to_string(), y.to_string()));
    }
    duality.push_to(&mut report, "lcm(a, b) = 1 / gcd(1/a, 1/b)");
    Ok(report)
}
