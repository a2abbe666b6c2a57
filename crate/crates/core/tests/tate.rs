use excezero::padic::{padic_log_prec, val_int, Padic};
use excezero::tate::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn curve_11a1() -> CurveData {
    CurveData::from_ints("11a1", [0, -1, 1, -10, -20]).unwrap()
}

fn builtin() -> Vec<CurveRecord> {
    parse_records(BUILTIN).unwrap()
}

fn brute_count(a: [i64; 5], l: i64) -> i64 {
    let mut n = 1;
    for x in 0..l {
        for y in 0..l {
            let lhs = y * y + a[0] * x * y + a[2] * y;
            let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
            if (lhs - rhs).rem_euclid(l) == 0 {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn invariants_of_11a1() {
    let e = curve_11a1();
    assert_eq!(e.discriminant(), &BigInt::from(-161051));
    assert_eq!(e.invariants().c4, BigInt::from(496));
    assert_eq!(e.j_invariant(), BigRational::new(BigInt::from(-122023936), BigInt::from(161051)));
    assert_eq!(e.conductor().unwrap(), 11);
}

#[test]
fn traces_match_brute_force() {
    let a = [0, -1, 1, -10, -20];
    let e = curve_11a1();
    assert_eq!(a_ell(&e, 2), -2);
    assert_eq!(a_ell(&e, 11), 1);
    for l in primes_up_to(200) {
        assert_eq!(a_ell(&e, l), l as i64 + 1 - brute_count(a, l as i64), "l = {l}");
    }
}

#[test]
fn hasse_bound() {
    let e = curve_11a1();
    for l in primes_up_to(10_000) {
        if l == 11 {
            continue;
        }
        let a = a_ell(&e, l);
        assert!((a * a) as u64 <= 4 * l, "a_{l} = {a}");
    }
}

#[test]
fn an_table_is_multiplicative() {
    let e = curve_11a1();
    let a = an_table(&e, 2000);
    // q prod (1-q^n)^2 (1-q^11n)^2 for 11a1
    let len = 200;
    let mut f = vec![0i64; len];
    f[1] = 1;
    for n in 1..len {
        for step in [n, n, 11 * n, 11 * n] {
            if step >= len {
                continue;
            }
            for i in (step..len).rev() {
                f[i] -= f[i - step];
            }
        }
    }
    assert_eq!(&a[1..len], &f[1..len]);
    assert_eq!(a[6], a[2] * a[3]);
}

#[test]
fn split_checks() {
    let e = curve_11a1();
    assert!(check_split_multiplicative(&e, 11).split);
    let c = check_split_multiplicative(&e, 7);
    assert!(!c.split);
    assert!(c.diagnostic.contains("good reduction"));
    let add = CurveData::from_ints("27a1", [0, 0, 1, 0, -7]).unwrap();
    let c = check_split_multiplicative(&add, 3);
    assert_eq!(c.reduction, Reduction::Additive);
    assert!(c.diagnostic.contains("not multiplicative"));
    // 14a1 is non-split at 2
    let e14 = CurveData::from_ints("14a1", [1, 0, 1, 4, -6]).unwrap();
    assert_eq!(check_split_multiplicative(&e14, 2).reduction, Reduction::NonsplitMultiplicative);
}

#[test]
fn j_series_coefficients() {
    let c = q_times_j();
    let expect = [1i64, 744, 196884, 21493760, 864299970, 20245856256];
    for (i, v) in expect.iter().enumerate() {
        assert_eq!(c[i], BigInt::from(*v));
    }
}

#[test]
fn tate_period_of_11a1() {
    let e = curve_11a1();
    let t = tate_period(&e, 11, 30).unwrap();
    assert_eq!(t.ord_q, 5);
    let jq = j_of_q(&t.q).unwrap();
    let ja = Padic::exact(11, e.j_invariant());
    assert!(jq.agreement(&ja) >= 30 - 10, "{}", jq.agreement(&ja));
    for w in t.residuals.windows(2) {
        assert!(w[1] > w[0], "{:?}", t.residuals);
    }
    assert!(!t.l_invariant.is_zero());
}

#[test]
fn synthetic_leading_term() {
    // ord_p(j) = -1: q = 1/j + 744/j^2 + ..., so q = 1/j mod p^2
    let p = 7;
    let j = BigRational::new(BigInt::from(3), BigInt::from(7));
    let (q, _) = tate_parameter(&j, p, 12).unwrap();
    let lead = Padic::exact(p, j.recip());
    assert!(q.agreement(&lead) >= 2);
    assert_eq!(q.valuation(), 1);
    assert!(tate_parameter(&BigRational::from_integer(BigInt::from(5)), p, 10).is_err());
}

#[test]
fn dataset_tate_invariants() {
    let recs = builtin();
    assert!(recs.len() >= 4);
    for r in &recs {
        let t = tate_period(&r.curve, r.p, 20).unwrap();
        assert_eq!(t.ord_q, val_int(r.curve.discriminant(), r.p), "{}", r.label());
        assert!(!t.l_invariant.is_zero(), "{}", r.label());
        assert!(r.p >= 5 && r.p <= 17);
    }
}

#[test]
fn branch_log_properties() {
    let e = curve_11a1();
    let t = tate_period(&e, 11, 25).unwrap();
    let b = t.branch_log(&t.q).unwrap();
    assert!(b.is_zero(), "{b}");
    let u = Padic::from_int(11, 13, 25);
    assert_eq!(t.branch_log(&u).unwrap(), padic_log_prec(&u, 25).unwrap());
    let pu = Padic::from_int(11, 13 * 11, 25);
    assert_eq!(t.branch_log(&pu).unwrap(), &padic_log_prec(&u, 25).unwrap() - &t.l_invariant);
    assert!(t.branch_log(&Padic::zero_to(11, 4)).is_err());
}

#[test]
fn differential_leading_terms() {
    // omega = (1 + a1 t + (a1^2 + a2) t^2 + (a1^3 + 2 a1 a2 + 2 a3) t^3 + ...) dt
    let e = CurveData::from_ints("91b1", [0, 1, 1, -7, 5]).unwrap();
    let c = differential_coefficients(&e, 6);
    let (a1, a2, a3) = (0i64, 1i64, 1i64);
    let expect = [1, a1, a1 * a1 + a2, a1 * a1 * a1 + 2 * a1 * a2 + 2 * a3];
    for (i, v) in expect.iter().enumerate() {
        assert_eq!(c[i], BigRational::from_integer(BigInt::from(*v)), "t^{i}");
    }
    for x in &c {
        assert!(x.is_integer());
    }
}

#[test]
fn torsion_points_have_zero_log() {
    let e = curve_11a1();
    let pts = [Point::Infinity, Point::from_ints(5, 5), Point::from_ints(5, -6), Point::from_ints(16, -61), Point::from_ints(16, 60)];
    for pt in &pts {
        assert!(formal_log(&e, 11, pt, 20).unwrap().is_exact_zero());
    }
    assert!(formal_log(&e, 11, &Point::from_ints(1, 1), 20).is_err());
}

#[test]
fn formal_log_is_additive() {
    let e = CurveData::from_ints("91b1", [0, 1, 1, -7, 5]).unwrap();
    let p = 7;
    let pt = Point::from_ints(-1, 3);
    assert!(e.torsion_order(&pt).is_none());
    let l1 = formal_log(&e, p, &pt, 15).unwrap();
    assert!(!l1.is_zero());
    for k in 2..5 {
        let lk = formal_log(&e, p, &e.mul_point(k, &pt), 15).unwrap();
        assert!(lk.agreement(&l1.mul_int(k)) >= 12, "k = {k}");
    }
    let q = e.mul_point(2, &pt);
    let sum = e.add_points(&pt, &q);
    let ls = formal_log(&e, p, &sum, 15).unwrap();
    let lq = formal_log(&e, p, &q, 15).unwrap();
    assert!(ls.agreement(&(&l1 + &lq)) >= 12);
    let neg = formal_log(&e, p, &e.neg_point(&pt), 15).unwrap();
    assert!((&neg + &l1).valuation() >= 12);
}

#[test]
fn root_numbers_match_dataset_signs() {
    for r in builtin() {
        assert_eq!(Some(semistable_root_number(&r.curve)), r.sign, "{}", r.label());
    }
}

#[test]
fn dataset_parse_errors() {
    assert!(parse_records("x [0,0,0,0,0] 5").is_err());
    assert!(parse_records("x [0,1/2,0,1,0] 5").is_err());
    assert!(parse_records("x [0,0,1,-1,0 5").is_err());
    let e = parse_records("ok [0,-1,1,-10,-20] 11\nbad [0,0,0,0] 5").unwrap_err();
    assert!(e.to_string().contains("line 2"), "{e}");
    assert!(parse_records("# nothing\n\n").unwrap().is_empty());
    let _ = BigInt::one().is_zero();
}
