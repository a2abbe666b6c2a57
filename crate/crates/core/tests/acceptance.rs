//! One line per acceptance criterion; exits nonzero if any fails.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use excezero::coleman::{
    coleman_derivative_model, construct_g, degree_for, l_sigma, ord_c_prime, x_values, LocalHomClass, NormCompatibleUnits,
};
use excezero::jets::{derive, Identity};
use excezero::mtt::{
    functional_equation_check, gs_check, interpolation_check, ModularSymbolTable, PadicLFunction, SymbolConfig,
};
use excezero::padic::{padic_log_prec, CyclotomicElement, Padic, PadicCharacter};
use excezero::suite::builtin_dataset;
use excezero::tate::{tate_period, CurveRecord};
use num_traits::Zero;

type Outcome = (bool, String);

fn lfun(r: &CurveRecord, nu: u32, prec: i64) -> excezero::Result<PadicLFunction> {
    let t = ModularSymbolTable::for_prime_power(&r.curve, r.p, nu, SymbolConfig::default())?;
    PadicLFunction::new(Arc::new(t), r.p, nu, prec)
}

fn all_of(results: Vec<excezero::Result<Outcome>>) -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for r in results {
        match r {
            Ok((pass, note)) => {
                ok &= pass;
                notes.push(note);
            }
            Err(e) => {
                ok = false;
                notes.push(format!("error: {e}"));
            }
        }
    }
    (ok, notes.join("; "))
}

fn trivial_zero(curves: &[CurveRecord]) -> Outcome {
    all_of(
        curves
            .par_iter()
            .map(|r| {
                let mut ok = true;
                for nu in 1..=3 {
                    ok &= lfun(r, nu, 10)?.lp_value(&Padic::one(r.p))?.value.is_exact_zero();
                }
                Ok((ok, format!("{} exact", r.label())))
            })
            .collect(),
    )
}

fn greenberg_stevens(curves: &[CurveRecord]) -> Outcome {
    all_of(
        curves
            .par_iter()
            .filter(|r| r.sign == Some(1))
            .map(|r| {
                let g = gs_check(&lfun(r, 3, 12)?)?;
                if g.l_ratio.is_zero() {
                    return Ok((true, format!("{} has L(A,1) = 0, skipped", r.label())));
                }
                Ok((g.digits >= 2, format!("{} {}", r.label(), g.digits)))
            })
            .collect(),
    )
}

fn interpolation(curves: &[CurveRecord]) -> Outcome {
    all_of(
        [("15a1", 5u64), ("14a1", 7)]
            .par_iter()
            .map(|(label, p)| {
                let r = curves.iter().find(|r| r.label() == *label && r.p == *p).expect("in dataset");
                let t = ModularSymbolTable::build(&r.curve, &[p * p], SymbolConfig::default())?;
                let rep = interpolation_check(&t, &PadicCharacter::new(*p, 1, 1)?, 10)?;
                Ok((rep.digits >= 3, format!("{label} at {p}: {}", rep.digits)))
            })
            .collect(),
    )
}

fn coleman_suite() -> Outcome {
    all_of(
        [3u64, 5, 7]
            .par_iter()
            .map(|&p| {
                let n = 8;
                let g = construct_g(p, degree_for(p, 1, n + 3), n + 4)?;
                let units = NormCompatibleUnits::from_series(&g, 1)?;
                let xs = x_values(p, 1)?;
                let mut worst = padic_log_prec(g.coeff(0), n + 4)?.agreement(&Padic::exact_int(p, p as i64));
                for k in 0..2u32 {
                    worst = worst.min(units.unit(k)?.log()?.agreement(&xs[k as usize]));
                }
                worst = worst.min(units.norm_agreement()?[0]);
                worst = worst.min(units.unit(0)?.agreement(&CyclotomicElement::one(p, 0)));
                worst = worst.min((&ord_c_prime(&g)? * &l_sigma(p, n + 6)).agreement(&Padic::one(p)));
                Ok((worst >= n, format!("p = {p}: {worst} of {n}")))
            })
            .collect(),
    )
}

fn derivative_model(curves: &[CurveRecord]) -> Outcome {
    all_of(
        curves
            .par_iter()
            .map(|r| {
                let t = tate_period(&r.curve, r.p, 20)?;
                let b = LocalHomClass::branch_log(&t);
                let mut ok = true;
                for alpha in [1i64, -1, 2, 7, r.p as i64, 1000] {
                    let (lhs, rhs) = coleman_derivative_model(&b.scale(&Padic::exact_int(r.p, alpha)), &t)?;
                    ok &= lhs.agreement(&rhs) >= lhs.prec().min(rhs.prec());
                }
                Ok((ok, r.label().to_string()))
            })
            .collect(),
    )
}

fn jets() -> Outcome {
    all_of(
        Identity::ALL
            .into_iter()
            .map(|id| {
                let d = derive(id)?;
                Ok((d.holds(), format!("{} {}", id.name(), d.result)))
            })
            .collect(),
    )
}

fn functional_equation(curves: &[CurveRecord]) -> Outcome {
    all_of(
        curves
            .par_iter()
            .filter_map(|r| r.sign.map(|s| (r, s)))
            .map(|(r, sign)| {
                let rep = functional_equation_check(&lfun(r, 3, 12)?, &Padic::exact_int(r.p, r.p as i64 + 1), sign)?;
                Ok((rep.holds(), format!("{} tag {}", r.label(), rep.error_ord)))
            })
            .collect(),
    )
}

fn main() {
    let curves = builtin_dataset().expect("shipped dataset parses");
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("trivial zero L_p(A,1) = 0 exactly, every curve, levels 1..3", Box::new(|| trivial_zero(&curves))),
        ("L_p'(A,1) = L_p(A) L(A,1)/Omega+ to 2 digits, rank-0 curves", Box::new(|| greenberg_stevens(&curves))),
        ("interpolation at an order-p character, p = 5, 7, 3 digits", Box::new(|| interpolation(&curves))),
        ("Coleman series properties and ord(c') l_sigma = 1 to the cap", Box::new(coleman_suite)),
        ("derivative model, both forms equal over an alpha sweep", Box::new(|| derivative_model(&curves))),
        ("jet identities over exact symbolic scalars", Box::new(jets)),
        ("functional equation at s = 1 + p within the error tag", Box::new(|| functional_equation(&curves))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let (ok, detail) = f();
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {}: {name} [{:.1} s] ({detail})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            t0.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
