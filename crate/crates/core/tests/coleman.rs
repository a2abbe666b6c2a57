use excezero::coleman::*;
use excezero::padic::{log_one_plus_p, padic_exp_prec, padic_log_prec, CyclotomicElement, Padic};
use excezero::tate::{parse_records, tate_period, BUILTIN};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Padic {
    Padic::exact(5, BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[test]
fn x_zero_vanishes() {
    for p in [3u64, 5, 7] {
        let xs = x_values(p, 1).unwrap();
        assert!(xs[0].is_zero(), "p = {p}: x_0 = {}", xs[0]);
        assert!(xs[1].trace_to_level(0).unwrap().is_zero());
    }
    assert!(x_values(4, 1).is_err());
}

#[test]
fn x_one_at_five() {
    // by hand: Tr_Delta(zeta - 1 + (zeta^5 - 1)/5) + 5 in Q_5(mu_25); the
    // Teichmüller lifts mod 25 are 1, 7, 18, 24
    let p = 5;
    let z = CyclotomicElement::zeta(p, 1);
    let one = CyclotomicElement::one(p, 1);
    let fifth = Padic::exact(p, BigRational::new(1.into(), 5.into()));
    let mut want = CyclotomicElement::from_scalar(Padic::exact_int(p, 5), 1);
    for w in [1u64, 7, 18, 24] {
        let zw = z.pow(w);
        want = want.add_ref(&zw.sub_ref(&one)).add_ref(&zw.pow(5).sub_ref(&one).scale(&fifth));
    }
    let xs = x_values(p, 1).unwrap();
    assert_eq!(xs[1], want);
    // Delta-invariant: fixed by sigma_7
    assert_eq!(xs[1].galois(7).unwrap(), xs[1]);
    assert!(xs[1].coeffs().iter().all(|c| c.is_exact()));
}

#[test]
fn trace_compatibility_up_the_tower() {
    let xs = x_values(3, 2).unwrap();
    assert_eq!(xs[2].trace_to_level(1).unwrap(), xs[1]);
}

#[test]
fn norm_operator_fixes_one_plus_t() {
    for p in [3u64, 5] {
        let f = PowerSeriesZp::polynomial(p, &[1, 1], 8);
        let nf = coleman_norm_operator(&f, 8).unwrap();
        assert_eq!(nf, f);
        assert!(nf.coeffs().iter().all(|c| c.is_exact()));
    }
}

#[test]
fn norm_operator_on_constants() {
    let c = PowerSeriesZp::polynomial(5, &[3], 6);
    let nc = coleman_norm_operator(&c, 6).unwrap();
    assert_eq!(nc, PowerSeriesZp::polynomial(5, &[243], 6));
    let bad = PowerSeriesZp::polynomial(5, &[5, 1], 6);
    assert!(coleman_norm_operator(&bad, 6).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn norm_operator_is_multiplicative(a in prop::collection::vec(-20i64..20, 3), b in prop::collection::vec(-20i64..20, 3), u in 1i64..4, v in 1i64..4) {
        let p = 3;
        let mut fa = vec![u * 3 + 1];
        fa.extend(&a);
        let mut fb = vec![v * 3 - 1];
        fb.extend(&b);
        let f = PowerSeriesZp::polynomial(p, &fa, 10);
        let g = PowerSeriesZp::polynomial(p, &fb, 10);
        let lhs = coleman_norm_operator(&f.mul_ref(&g), 8).unwrap();
        let rhs = coleman_norm_operator(&f, 8).unwrap().mul_ref(&coleman_norm_operator(&g, 8).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn series_ring_basics() {
    let p = 5;
    let f = PowerSeriesZp::from_ints(p, &[1, 2, 3, 4], 6);
    let inv = f.inverse().unwrap();
    assert_eq!(f.mul_ref(&inv), PowerSeriesZp::one(p, 6));
    let lg = f.log_series().unwrap();
    assert_eq!(lg.exp_series().unwrap(), f);
    // composition needs a small constant term
    let h = PowerSeriesZp::from_ints(p, &[1, 1], 6);
    assert!(f.compose(&h).is_err());
    let h = PowerSeriesZp::from_ints(p, &[5, 1], 6);
    let c = f.compose(&h).unwrap();
    assert!(c.coeff(5).prec() <= 5);
    // (1+X)^a (1+X)^b = (1+X)^(a+b)
    let a = rat(1, 3);
    let b = rat(2, 7);
    let lhs = PowerSeriesZp::one_plus_x_pow(&a, 8).mul_ref(&PowerSeriesZp::one_plus_x_pow(&b, 8));
    assert_eq!(lhs, PowerSeriesZp::one_plus_x_pow(&(&a + &b), 8));
}

#[test]
fn log_g_solves_the_defining_equation() {
    // G - G(phi)/p = sum_omega (1+X)^omega, checked by composing
    for p in [3u64, 5, 7] {
        let d = 40;
        let g = log_g_series(p, d, 40).unwrap();
        let l = teichmuller_transform(p, d, 40).unwrap();
        let inv_p = Padic::exact(p, BigRational::new(1.into(), BigInt::from(p)));
        let lhs = g.sub_ref(&g.frobenius().scale(&inv_p));
        assert_eq!(lhs.with_prec(20), l.with_prec(20), "p = {p}");
        assert_eq!(g.coeff(0), &Padic::exact_int(p, p as i64));
        assert!(g.coeff(1).is_zero());
    }
}

#[test]
fn g_has_the_defining_properties() {
    let p = 5;
    let n = 8;
    let d = degree_for(p, 1, n + 3);
    let g = construct_g(p, d, n + 4).unwrap();
    assert!(g.is_principal_unit());
    // (1) log g(0) = p
    let l0 = padic_log_prec(g.coeff(0), n + 4).unwrap();
    assert!(l0.agreement(&Padic::exact_int(p, 5)) >= n);
    // (2) log g(zeta_{p^{k+1}} - 1) = x_k
    let units = NormCompatibleUnits::from_series(&g, 1).unwrap();
    let xs = x_values(p, 1).unwrap();
    for k in 0..2 {
        let lc = units.unit(k).unwrap().log().unwrap();
        assert!(lc.agreement(&xs[k as usize]) >= n, "k = {k}: {}", lc.agreement(&xs[k as usize]));
    }
    // (3) N(C_1) = C_0 = 1
    assert!(units.norm_agreement().unwrap()[0] >= n);
    assert!(units.unit(0).unwrap().agreement(&CyclotomicElement::one(p, 0)) >= n);
    assert_eq!(units.provenance(), &Provenance::Series { degree: d });
}

#[test]
fn g_is_delta_invariant() {
    // g((1+X)^omega - 1) = g(X)
    let p = 7;
    let d = 30;
    let g = construct_g(p, d, 12).unwrap();
    let w = excezero::padic::teichmuller(&BigInt::from(3), p, 20).unwrap();
    let h = PowerSeriesZp::one_plus_x_pow(&w, d).sub_ref(&PowerSeriesZp::one(p, d));
    assert_eq!(g.compose(&h).unwrap(), g);
}

#[test]
fn g_is_norm_invariant() {
    let p = 3;
    let g = construct_g(p, 90, 40).unwrap();
    let ng = coleman_norm_operator(&g, 8).unwrap();
    let agree = (0..8).map(|j| ng.coeff(j).agreement(g.coeff(j))).min().unwrap();
    assert!(agree >= 10, "agreement {agree}");
}

#[test]
fn norm_invariant_values_descend() {
    // N_{n+1,n} f(zeta_{p^{n+2}} - 1) = f(zeta_{p^{n+1}} - 1) for n = 0, 1
    let p = 3;
    let g = construct_g(p, degree_for(p, 2, 8), 10).unwrap();
    let units = NormCompatibleUnits::from_series(&g, 2).unwrap();
    for a in units.norm_agreement().unwrap() {
        assert!(a >= 6, "{a}");
    }
}

#[test]
fn iteration_agrees_with_expansion() {
    for p in [3u64, 5] {
        let probe = uniqueness_probe(p, 24, 12).unwrap();
        assert!(probe.agree, "p = {p}");
        assert!(probe.steps.0 > 1 && probe.steps.1 > 1);
    }
    let bad_seed = PowerSeriesZp::from_ints(5, &[4], 10);
    assert!(iterate_log_g(&bad_seed, 8, 100).is_err());
    let linear = PowerSeriesZp::from_ints(5, &[5, 1], 10);
    assert!(iterate_log_g(&linear, 8, 100).is_err());
}

#[test]
fn ord_c_prime_inverts_l_sigma() {
    for p in [3u64, 5, 7] {
        let g = construct_g(p, 20, 15).unwrap();
        let o = ord_c_prime(&g).unwrap();
        let prod = &o * &l_sigma(p, 20);
        assert!(prod.agreement(&Padic::one(p)) >= 12, "p = {p}: {prod}");
        // with log g(0) = p: ord = p/((p-1) log(1+p))
        let direct = Padic::exact_int(p, p as i64).try_div(&log_one_plus_p(p, 20).mul_int(p as i64 - 1)).unwrap();
        assert!(o.agreement(&direct) >= 12);
    }
}

#[test]
fn ord_c_prime_is_degree_independent() {
    let a = ord_c_prime(&construct_g(5, 20, 15).unwrap()).unwrap();
    let b = ord_c_prime(&construct_g(5, 30, 15).unwrap()).unwrap();
    assert_eq!(a, b);
    let not_unit = PowerSeriesZp::from_ints(5, &[2, 1], 4);
    assert!(ord_c_prime(&not_unit).is_err());
}

#[test]
fn exp_of_p_is_the_constant_term() {
    let g = construct_g(5, 10, 20).unwrap();
    let ep = padic_exp_prec(&Padic::exact_int(5, 5), 20).unwrap();
    assert_eq!(g.coeff(0), &ep);
}

#[test]
fn hom_basis_roundtrip() {
    let p = 5;
    for (a, b) in [(1i64, 0i64), (0, 1), (3, -2), (-7, 11)] {
        let phi = LocalHomClass::compose(&Padic::exact_int(p, a), &Padic::exact_int(p, b), 25);
        let (ra, rb) = phi.decompose().unwrap();
        assert!(ra.agreement(&Padic::exact_int(p, a)) >= 20);
        assert_eq!(rb, Padic::exact_int(p, b));
    }
    assert!(dual_exp_base(&LocalHomClass::log_p(p, 25)).unwrap().agreement(&Padic::one(p)) >= 20);
    assert!(dual_exp_base(&LocalHomClass::ord_p(p)).unwrap().is_zero());
    let ord = LocalHomClass::ord_p(p);
    assert_eq!(ord.eval(&Padic::exact_int(p, 250)).unwrap(), Padic::exact_int(p, 3));
    let lg = LocalHomClass::log_p(p, 25);
    let x = Padic::exact_int(p, 7);
    assert!(lg.eval(&x).unwrap().agreement(&padic_log_prec(&Padic::from_int(p, 7 * 7 * 7 * 7, 25), 25).unwrap().div_int(4)) >= 18);
}

fn tate_11a1() -> excezero::tate::TateCurveData {
    let r = parse_records(BUILTIN).unwrap().into_iter().find(|r| r.label() == "11a1").unwrap();
    tate_period(&r.curve, 11, 20).unwrap()
}

#[test]
fn branch_log_kills_q() {
    let t = tate_11a1();
    let b = LocalHomClass::branch_log(&t);
    assert!(b.eval(&t.q).unwrap().is_zero());
    // L is known to 15 digits and log(1+p) has valuation 1
    assert!(dual_exp_base(&b).unwrap().agreement(&Padic::one(11)) >= 14);
}

#[test]
fn derivative_model_on_the_image() {
    let t = tate_11a1();
    let b = LocalHomClass::branch_log(&t);
    for alpha in [1i64, -3, 22, 121, 7] {
        let z = b.scale(&Padic::exact_int(11, alpha));
        let (lhs, rhs) = coleman_derivative_model(&z, &t).unwrap();
        assert!(lhs.agreement(&rhs) >= lhs.prec().min(rhs.prec()), "alpha = {alpha}");
        // both equal alpha L / l_sigma
        let want = (&t.l_invariant.mul_int(alpha)).try_div(&l_sigma(11, 21)).unwrap();
        assert!(lhs.agreement(&want) >= 15);
    }
    assert!(coleman_derivative_model(&LocalHomClass::log_p(11, 20), &t).is_err());
    assert!(coleman_derivative_model(&LocalHomClass::ord_p(11), &t).is_err());
}
