use excezero::padic::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// log(1+y) by summing the series over exact rationals and reducing mod p^n.
fn oracle_log_one_plus(y: &BigRational, p: u64, n: i64, terms: usize) -> BigInt {
    let mut s = BigRational::zero();
    let mut yk = y.clone();
    for k in 1..=terms {
        let t = &yk / BigRational::from_integer(BigInt::from(k));
        s = if k % 2 == 1 { s + t } else { s - t };
        yk = &yk * y;
    }
    let m = ppow(p, n);
    (s.numer() * inv_mod(s.denom(), &m)).mod_floor(&m)
}

#[test]
fn log_of_one_plus_p_first_terms() {
    let x = padic_log_prec(&Padic::from_int(5, 6, 3), 3).unwrap();
    assert_eq!(x.to_string(), "1*5 + 2*5^2 + O(5^3)");
    assert_eq!(x.residue(3).unwrap(), BigInt::from(55));
}

#[test]
fn log_of_p_is_exact_zero() {
    let x = padic_log(&Padic::exact_int(7, 7)).unwrap();
    assert!(x.is_exact_zero());
    let y = padic_log(&Padic::exact_int(7, -49)).unwrap();
    assert!(y.is_exact_zero());
}

#[test]
fn log_of_two_matches_rational_series() {
    // log<2> = log(2^4)/4 = log(1+15)/4, summed independently at precision 10
    let oracle = oracle_log_one_plus(&q(15, 1), 5, 12, 40);
    let m = ppow(5, 12);
    let oracle = (oracle * inv_mod(&BigInt::from(4), &m)).mod_floor(&ppow(5, 4));
    let x = padic_log_prec(&Padic::from_int(5, 2, 4), 4).unwrap();
    assert_eq!(x.residue(4).unwrap(), oracle);
    // frozen: log_5 <2> mod 5^4
    assert_eq!(oracle, BigInt::from(335));
}

#[test]
fn log_domain_error() {
    assert!(padic_log(&Padic::exact_zero(5)).is_err());
    assert!(padic_log(&Padic::zero_to(5, 4)).is_err());
}

#[test]
fn exp_first_terms() {
    assert!(padic_exp(&Padic::exact_zero(5)).unwrap().as_exact().unwrap().is_one());
    let e = padic_exp_prec(&Padic::exact_int(5, 5), 3).unwrap();
    assert_eq!(e.to_string(), "1 + 1*5 + 3*5^2 + O(5^3)");
    assert!(padic_exp(&Padic::from_int(5, 2, 10)).is_err());
}

#[test]
fn teichmuller_examples() {
    let t = teichmuller(&BigInt::from(2), 5, 2).unwrap();
    assert_eq!(t.residue(2).unwrap(), BigInt::from(7));
    assert!(teichmuller(&BigInt::from(1), 5, 10).unwrap().as_exact().unwrap().is_one());
    assert!(teichmuller(&BigInt::from(10), 5, 10).is_err());
    for a in 1..13 {
        let w = teichmuller(&BigInt::from(a), 13, 20).unwrap();
        assert_eq!(w.pow(12), Padic::one(13));
        assert_eq!(w.residue(1).unwrap(), BigInt::from(a));
    }
}

#[test]
fn precision_propagation() {
    let a = Padic::from_int(5, 7, 10);
    let b = Padic::from_int(5, 3, 4);
    assert_eq!((&a + &b).prec(), 4);
    let c = Padic::from_int(5, 25, 10);
    // v(c) = 2, N(c) = 10; v(b) = 0, N(b) = 4
    assert_eq!((&b * &c).prec(), 6);
    let x = Padic::from_rational(5, &q(1, 5), 3);
    assert_eq!(x.valuation(), -1);
    assert_eq!(x.inv().unwrap().prec(), 5);
}

#[test]
fn verdicts() {
    let a = Padic::from_int(7, 8, 5);
    let b = Padic::from_int(7, 8 + 7i64.pow(5), 10);
    assert_eq!(a.compare(&b), Verdict::EqualTo(5));
    assert_eq!(a.compare(&Padic::from_int(7, 8 + 7i64.pow(4), 10)), Verdict::Distinct);
    assert_eq!(a.compare(&Padic::from_int(7, 9, 5)), Verdict::Distinct);
    assert_eq!(Padic::zero_to(7, 3).compare(&Padic::zero_to(7, 9)), Verdict::Undecidable);
    assert_eq!(Padic::exact_int(7, 3).compare(&Padic::exact_int(7, 3)), Verdict::EqualTo(EXACT));
    assert_eq!(a.agreement(&b), 5);
}

#[test]
fn text_round_trip_examples() {
    for s in ["1 + 3*5^2 + O(5^4)", "O(7^3)", "2*11^-1 + 1 + O(11^2)", "4*5^-2 + O(5^-1)", "1*13 + O(13)".replace("O(13)", "O(13^2)").as_str()] {
        let x: Padic = s.parse().unwrap();
        let t = x.to_string();
        let y: Padic = t.parse().unwrap();
        assert_eq!(x.compare(&y), if x.is_zero() { Verdict::Undecidable } else { Verdict::EqualTo(x.prec()) });
        assert_eq!(t, y.to_string());
    }
    assert!("7 + O(5^2)".parse::<Padic>().is_err());
    assert!("1 + 2*5^3 + O(5^2)".parse::<Padic>().is_err());
    let e = parse_padic("-3/4", Some(5)).unwrap();
    assert_eq!(e.to_string(), "-3/4");
}

fn cyc(p: u64, level: u32, v: &[i64], n: i64) -> CyclotomicElement {
    let coeffs = v.iter().map(|&c| Padic::from_int(p, c, n)).collect();
    CyclotomicElement::from_coeffs(p, level, coeffs).unwrap()
}

#[test]
fn cyclotomic_trace_of_zeta_minus_one() {
    let p = 5;
    let z = &CyclotomicElement::zeta(p, 0) - &CyclotomicElement::one(p, 0);
    assert_eq!(z.trace_to_base().unwrap(), Padic::exact_int(p, -5));
    let z1 = &CyclotomicElement::zeta(p, 1) - &CyclotomicElement::one(p, 1);
    // Tr_{1->0}(zeta_25 - 1) = sum of the p-th roots zeta_5^? = 0 - p
    let t = z1.trace_to_level(0).unwrap();
    assert_eq!(t, CyclotomicElement::from_scalar(Padic::exact_int(p, -5), 0));
    let one = CyclotomicElement::one(p, 1);
    assert_eq!(one.trace_to_base().unwrap(), Padic::exact_int(p, 20));
}

#[test]
fn zeta_has_the_right_order() {
    for (p, level) in [(5, 0), (5, 1), (7, 1), (5, 2)] {
        let z = CyclotomicElement::zeta(p, level);
        let order = p.pow(level + 1);
        assert_eq!(z.pow(order), CyclotomicElement::one(p, level));
        assert_ne!(z.pow(order / p), CyclotomicElement::one(p, level));
    }
}

#[test]
fn gauss_sum_identities() {
    for (p, m) in [(5u64, 1u32), (7, 1), (5, 2)] {
        for k in [1u64, 2, 3] {
            let chi = PadicCharacter::new(p, m, k).unwrap();
            let t = gauss_sum(&chi).unwrap();
            let tb = gauss_sum(&chi.conjugate()).unwrap();
            let prod = &t * &tb;
            // characters of p-power order are even, chi(-1) = 1
            let expect = CyclotomicElement::from_scalar(Padic::exact_int(p, p.pow(m + 1) as i64), m);
            assert_eq!(prod.compare(&expect), Verdict::EqualTo(EXACT));
        }
    }
    assert!(gauss_sum(&PadicCharacter::trivial(5)).is_err());
    assert!(PadicCharacter::new(5, 1, 5).is_err());
}

#[test]
fn gauss_sum_order_five_coefficients() {
    // direct summation in Z[zeta_25] with the relation of Phi_25, as oracle
    let p = 5u64;
    let chi = PadicCharacter::new(p, 1, 1).unwrap();
    let mut raw = vec![0i64; 25];
    // chi(a) = zeta_5^e with <a> = (1+5)^e mod 25
    let mut pow6 = 1i64;
    let mut dlog = std::collections::HashMap::new();
    for e in 0..5 {
        dlog.insert(pow6, e);
        pow6 = pow6 * 6 % 25;
    }
    for a in 1..25i64 {
        if a % 5 == 0 {
            continue;
        }
        let mut w = 1i64;
        for _ in 0..4 {
            w = w * a % 25;
        }
        // a^4 = <a>^4; e(<a>) = e(a^4) / 4 mod 5
        let e4 = dlog[&w];
        let e = e4 * 4 % 5; // 1/4 = 4 mod 5
        let x = (5 * e + a) % 25;
        raw[x as usize] += 1;
    }
    for e in (20..25).rev() {
        let c = raw[e];
        raw[e] = 0;
        for i in 0..4 {
            raw[i * 5 + e - 20] -= c;
        }
    }
    let t = gauss_sum(&chi).unwrap();
    let expect = cyc(p, 1, &raw[..20], 40);
    assert_eq!(t, expect);
    assert_eq!(t.coeff(1).as_exact().unwrap(), &BigRational::from_integer(BigInt::from(raw[1])));
}

#[test]
fn character_multiplicative_and_trivial_on_teichmuller() {
    let chi = PadicCharacter::new(7, 2, 3).unwrap();
    let m = 343i64;
    for a in 1..m {
        for b in [2i64, 3, 50, 100] {
            match (chi.index(a), chi.index(b), chi.index(a * b)) {
                (Some(x), Some(y), Some(z)) => assert_eq!((x + y) % 49, z),
                _ => assert!(a % 7 == 0 || b % 7 == 0),
            }
        }
    }
    for t in 1..7u64 {
        let w = teichmuller_mod(t, 7, 343);
        assert_eq!(chi.index(w as i64), Some(0));
    }
    assert_eq!(chi.index(8), Some(3));
}

#[test]
fn norm_transitive_and_log_of_roots_of_unity() {
    let p = 5;
    let x = cyc(p, 2, &(0..100).map(|i| (i * 7 + 3) % 11).collect::<Vec<_>>(), 12);
    let a = x.norm_to_level(0).unwrap();
    let b = x.norm_to_level(1).unwrap().norm_to_level(0).unwrap();
    assert_eq!(a, b);
    let z = CyclotomicElement::zeta(p, 1).with_prec(10);
    let l = z.log().unwrap();
    assert!(l.is_zero());
}

#[test]
fn log_is_a_homomorphism_on_cyclotomic_units() {
    let p = 5;
    let one = CyclotomicElement::one(p, 1);
    let pi = &CyclotomicElement::zeta(p, 1) - &one;
    let u = (&one + &pi).with_prec(15);
    let v = (&one + &(&pi * &pi)).with_prec(15);
    let lhs = (&u * &v).log().unwrap();
    let rhs = &u.log().unwrap() + &v.log().unwrap();
    assert!(lhs.agreement(&rhs) >= 10, "{}", lhs.agreement(&rhs));
}

fn arb_unit(p: u64) -> impl Strategy<Value = i64> {
    (1i64..1_000_000).prop_filter("unit", move |a| a % p as i64 != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn exp_log_round_trip(k in -100_000i64..100_000) {
        let p = 7;
        let x = Padic::from_int(p, k * 7, 20);
        let e = padic_exp(&x).unwrap();
        let l = padic_log(&e).unwrap();
        prop_assert!(l.agreement(&x) >= 19, "{} vs {}", l, x);
    }

    #[test]
    fn log_multiplicative(a in arb_unit(5), b in arb_unit(5)) {
        let p = 5;
        let la = padic_log_prec(&Padic::from_int(p, a, 20), 20).unwrap();
        let lb = padic_log_prec(&Padic::from_int(p, b, 20), 20).unwrap();
        let lab = padic_log_prec(&Padic::from_int(p, a * b, 20), 20).unwrap();
        prop_assert_eq!(&la + &lb, lab);
    }

    #[test]
    fn precision_soundness(n in -10_000i64..10_000, d in 1i64..10_000) {
        let p = 11;
        let r = q(n, d);
        prop_assume!(d % 11 != 0 || n != 0);
        let x = Padic::from_rational(p, &r, 8);
        let y = Padic::from_rational(p, &r, 13);
        let s = &x * &x + &x;
        let t = &y * &y + &y;
        prop_assert_ne!(s.compare(&t), Verdict::Distinct);
    }

    #[test]
    fn text_round_trip(v in -5i64..5, u in 1i64..1_000_000, extra in 1i64..8) {
        let p = 7;
        prop_assume!(u % 7 != 0);
        let x = Padic::from_scaled(p, v, BigInt::from(u), v + extra);
        let s = x.to_string();
        let y: Padic = s.parse().unwrap();
        prop_assert_eq!(y.to_string(), s);
        prop_assert_eq!(y.prec(), x.prec());
        prop_assert_eq!(x.compare(&y), Verdict::EqualTo(x.prec()));
    }

    #[test]
    fn galois_is_a_ring_map(seed in 0u64..1000, a in 1i64..25) {
        let p = 5;
        prop_assume!(a % 5 != 0);
        let mk = |s: u64| cyc(p, 1, &(0..20).map(|i| ((s * 31 + i * 17) % 23) as i64 - 11).collect::<Vec<_>>(), 10);
        let x = mk(seed);
        let y = mk(seed * 7 + 3);
        let lhs = (&x * &y).galois(a).unwrap();
        let rhs = &x.galois(a).unwrap() * &y.galois(a).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let s = (&x + &y).galois(a).unwrap();
        prop_assert_eq!(s, &x.galois(a).unwrap() + &y.galois(a).unwrap());
        let comp = x.galois(a).unwrap().galois(7).unwrap();
        prop_assert_eq!(comp, x.galois(a * 7).unwrap());
    }

    #[test]
    fn reduction_idempotent(seed in 0u64..1000) {
        let p = 7;
        let full: Vec<Padic> = (0..60).map(|i| Padic::from_int(p, ((seed + i * 13) % 29) as i64, 9)).collect();
        let once = CyclotomicElement::reduce(p, 1, full);
        let twice = CyclotomicElement::reduce(p, 1, once.coeffs().to_vec());
        prop_assert_eq!(once, twice);
    }
}
