use kempner::duals::{s4_brute, s4_closed, s5, s6, s7};
use kempner::kempner::{sp_bruteforce, sp_digits, sp_floor_formula, sp_formula};
use kempner::lcm_family::{nu4, nu_brute, nu_closed};
use kempner::rationals::{rat_gcd, rat_lcm, smarandache_bar, smarandache_rat};
use kempner::{
    euler_phi, factorize, gcd_lcm, is_prime, moebius_mu, smarandache, tau, FactoredRat,
    SmarandacheCtx,
};
use num_integer::Integer;
use proptest::prelude::*;

const CTX: SmarandacheCtx = SmarandacheCtx::ONE;

fn prime() -> impl Strategy<Value = u64> {
    (2u64..200).prop_filter("prime", |&p| is_prime(p))
}

proptest! {
    #[test]
    fn factorize_round_trips(n in 1u64..1 << 40) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.to_u64(), Some(n));
        prop_assert!(f.primes().all(is_prime));
    }

    #[test]
    fn gcd_lcm_match_integers(a in 1u64..1_000_000, b in 1u64..1_000_000) {
        let (g, l) = gcd_lcm(&factorize(a).unwrap(), &factorize(b).unwrap());
        prop_assert_eq!(g.to_u64(), Some(a.gcd(&b)));
        prop_assert_eq!(l.to_u64(), Some(a.lcm(&b)));
    }

    #[test]
    fn multiplicative_functions(a in 1u64..50_000, b in 1u64..50_000) {
        prop_assume!(a.gcd(&b) == 1);
        let (fa, fb) = (factorize(a).unwrap(), factorize(b).unwrap());
        let fab = factorize(a * b).unwrap();
        prop_assert_eq!(euler_phi(&fab), euler_phi(&fa) * euler_phi(&fb));
        prop_assert_eq!(tau(&fab), tau(&fa) * tau(&fb));
        prop_assert_eq!(moebius_mu(&fab), moebius_mu(&fa) * moebius_mu(&fb));
    }

    #[test]
    fn sp_routes_agree(p in prime(), alpha in 1u64..2000) {
        let s = sp_bruteforce(p, alpha);
        prop_assert_eq!(sp_digits(p, alpha), s);
        prop_assert_eq!(sp_formula(p, alpha), s);
        prop_assert_eq!(sp_floor_formula(p, alpha), s);
    }

    #[test]
    fn s_of_lcm_is_max(a in 1u64..100_000, b in 1u64..100_000) {
        let (fa, fb) = (factorize(a).unwrap(), factorize(b).unwrap());
        prop_assert_eq!(
            smarandache(&fa.lcm(&fb), CTX),
            smarandache(&fa, CTX).max(smarandache(&fb, CTX))
        );
    }

    #[test]
    fn s4_closed_matches_brute(n in 1u64..10_000_000) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(s4_closed(&f), s4_brute(&f));
    }

    #[test]
    fn dual_morphisms(a in 2u64..200_000, b in 2u64..200_000) {
        let (fa, fb) = (factorize(a).unwrap(), factorize(b).unwrap());
        let (g, l) = gcd_lcm(&fa, &fb);
        prop_assert_eq!(s4_brute(&g), s4_brute(&fa).min(s4_brute(&fb)));
        prop_assert_eq!(s5(&g), s5(&fa).gcd(&s5(&fb)));
        prop_assert_eq!(
            s6(&l, CTX).unwrap(),
            s6(&fa, CTX).unwrap().lcm(&s6(&fb, CTX).unwrap())
        );
        prop_assert_eq!(s7(a.min(b)).unwrap(), s7(a).unwrap().gcd(&s7(b).unwrap()));
        prop_assert_eq!(s7(a.max(b)).unwrap(), s7(a).unwrap().lcm(&s7(b).unwrap()));
        prop_assert_eq!(nu_closed(&l).unwrap(), nu_brute(&fa).max(nu_brute(&fb)));
        prop_assert_eq!(nu4(&g), nu4(&fa).min(nu4(&fb)));
    }

    #[test]
    fn rational_lattice_duality(
        a in -5000i64..5000, b in 1u64..5000, c in 1i64..5000, d in 1u64..5000
    ) {
        prop_assume!(a != 0);
        let x = FactoredRat::new(a, b).unwrap().abs();
        let y = FactoredRat::new(c, d).unwrap();
        let lcm = rat_lcm(&x, &y).unwrap();
        let via_recip = rat_gcd(&x.recip(), &y.recip()).unwrap().recip();
        prop_assert_eq!(lcm, via_recip);
        prop_assert_eq!(x.mul(&x.recip()), FactoredRat::one());
        let parsed: FactoredRat = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn s_bar_on_integers_is_s4(n in 1u64..1_000_000) {
        let f = factorize(n).unwrap();
        let bar = smarandache_bar(&FactoredRat::from_nat(&f), CTX).unwrap();
        prop_assert_eq!(bar, FactoredRat::new(s4_brute(&f) as i64, 1).unwrap());
    }

    #[test]
    fn s_rat_of_reciprocals(a in 1u64..100_000, b in 1u64..100_000) {
        // S(1/a ∨ 1/b) = S(1/a) ∨ S(1/b)
        let (ra, rb) = (FactoredRat::new(1, a).unwrap(), FactoredRat::new(1, b).unwrap());
        let lhs = smarandache_rat(&rat_lcm(&ra, &rb).unwrap(), CTX).unwrap();
        let rhs = smarandache_rat(&ra, CTX).unwrap().max_value(smarandache_rat(&rb, CTX).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
