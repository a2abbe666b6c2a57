use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::config::RunConfig;
use super::report::{CheckRecord, Outcome, VerificationReport};
use crate::coleman::{
    coleman_derivative_model, construct_g, degree_for, l_sigma, ord_c_prime, x_values, LocalHomClass, NormCompatibleUnits,
};
use crate::error::{Error, Result};
use crate::jets::{derive, Identity};
use crate::mtt::{functional_equation_check, gs_check, interpolation_check, ModularSymbolTable, PadicLFunction};
use crate::padic::{padic_log_prec, CyclotomicElement, Padic, PadicCharacter};
use crate::tate::{check_split_multiplicative, tate_period, CurveRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    TrivialZero,
    Gs,
    Interp,
    FuncEq,
    Coleman,
    Jets,
}

impl Check {
    pub const ALL: [Check; 6] = [Check::TrivialZero, Check::Gs, Check::Interp, Check::FuncEq, Check::Coleman, Check::Jets];

    pub fn name(self) -> &'static str {
        match self {
            Check::TrivialZero => "trivial-zero",
            Check::Gs => "gs",
            Check::Interp => "interp",
            Check::FuncEq => "funceq",
            Check::Coleman => "coleman",
            Check::Jets => "jets",
        }
    }

    /// Parse a comma-separated list; `all` selects everything.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            if part == "all" {
                return Ok(Check::ALL.to_vec());
            }
            out.push(part.parse()?);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            Error::Parse(format!("unknown check {s}; expected trivial-zero, gs, interp, funceq, coleman, jets or all"))
        })
    }
}

fn record(check: Check, subject: &str, anchor: &str, started: Instant, f: impl FnOnce() -> Result<(String, String, Outcome)>) -> CheckRecord {
    let (left, right, outcome) = f().unwrap_or_else(|e| (String::new(), String::new(), Outcome::Error(e.to_string())));
    let flat = |x: String| x.trim_end().replace('\n', "; ");
    let (left, right) = (flat(left), flat(right));
    CheckRecord {
        check: check.name().to_string(),
        subject: subject.to_string(),
        anchor: anchor.to_string(),
        left,
        right,
        outcome,
        runtime: started.elapsed(),
    }
}

fn digits(a: &Padic, b: &Padic, need: i64) -> (String, String, Outcome) {
    (a.to_string(), b.to_string(), Outcome::Digits { got: a.agreement(b), need })
}

fn curve_checks(cfg: &RunConfig, r: &CurveRecord, checks: &[Check]) -> Vec<CheckRecord> {
    let subject = format!("{}/{}", r.label(), r.p);
    let p = r.p;
    let prec = cfg.precision;
    let mut out = Vec::new();
    let wants = |c: Check| checks.contains(&c);
    let needs_table = wants(Check::TrivialZero) || wants(Check::Gs) || wants(Check::FuncEq) || (wants(Check::Interp) && p <= 7);
    let started = Instant::now();
    let table = if needs_table {
        Some(ModularSymbolTable::for_prime_power(&r.curve, p, cfg.nu_max, cfg.symbol_config()).map(Arc::new))
    } else {
        None
    };
    let lfun = |nu: u32| -> Result<PadicLFunction> {
        match &table {
            Some(Ok(t)) => PadicLFunction::new(t.clone(), p, nu, prec),
            Some(Err(e)) => Err(e.clone()),
            None => unreachable!("table requested"),
        }
    };
    if wants(Check::TrivialZero) {
        for nu in 1..=cfg.nu_max {
            let t0 = if nu == 1 { started } else { Instant::now() };
            out.push(record(Check::TrivialZero, &subject, &format!("L_p(A, 1) = 0 at Riemann-sum level {nu}"), t0, || {
                let v = lfun(nu)?.lp_value(&Padic::one(p))?;
                Ok((v.value.to_string(), "0".into(), Outcome::Exact(v.value.is_exact_zero())))
            }));
        }
    }
    if wants(Check::Gs) {
        out.push(record(Check::Gs, &subject, "L_p'(A, 1) = L_p(A) L(A,1)/Omega+", Instant::now(), || {
            let g = gs_check(&lfun(cfg.nu_max)?)?;
            let (l, rr, _) = digits(&g.derivative.value, &g.predicted, cfg.gs_digits);
            Ok((l, format!("{rr}  (L(A,1)/Omega+ = {})", g.l_ratio), Outcome::Digits { got: g.digits, need: cfg.gs_digits }))
        }));
    }
    if wants(Check::Interp) {
        let anchor = "sum chi(a) mu(a + p^2 Z_p) = tau(chi) L(A, chi^-1, 1)/Omega+, chi of order p";
        out.push(record(Check::Interp, &subject, anchor, Instant::now(), || {
            if p > 7 {
                return Ok((String::new(), String::new(), Outcome::Skipped("run only for p <= 7".into())));
            }
            let t = match &table {
                Some(Ok(t)) => t.clone(),
                Some(Err(e)) => return Err(e.clone()),
                None => unreachable!("table requested"),
            };
            let chi = PadicCharacter::new(p, 1, 1)?;
            let rep = interpolation_check(&t, &chi, prec)?;
            Ok((
                rep.measure_side.to_string(),
                rep.complex_side.to_string(),
                Outcome::Digits { got: rep.digits, need: cfg.interp_digits },
            ))
        }));
    }
    if wants(Check::FuncEq) {
        let anchor = "<N>^(s/2) L_p(s) = -sign <N>^((2-s)/2) L_p(2-s) at s = 1 + p";
        out.push(record(Check::FuncEq, &subject, anchor, Instant::now(), || {
            let Some(sign) = r.sign else {
                return Ok((String::new(), String::new(), Outcome::Skipped("no sign in the dataset record".into())));
            };
            let s = Padic::exact_int(p, p as i64 + 1);
            let rep = functional_equation_check(&lfun(cfg.nu_max)?, &s, sign)?;
            let got = if rep.residual.is_exact_zero() { rep.error_ord } else { rep.residual.valuation() };
            let need = rep.error_ord.min(rep.residual.prec());
            Ok((rep.lhs.to_string(), rep.rhs.to_string(), Outcome::Digits { got, need }))
        }));
    }
    if wants(Check::Coleman) {
        let anchor = "derivative model: z(1/p)/l_sigma = L_p(A) exp*(z)/l_sigma on z = alpha log_{q_A}";
        out.push(record(Check::Coleman, &subject, anchor, Instant::now(), || {
            let t = tate_period(&r.curve, p, prec)?;
            let b = LocalHomClass::branch_log(&t);
            let pi = p as i64;
            let mut worst: Option<(Padic, Padic)> = None;
            let mut ok = true;
            for alpha in [1, -3, 7, pi, pi * pi + 1] {
                let (lhs, rhs) = coleman_derivative_model(&b.scale(&Padic::exact_int(p, alpha)), &t)?;
                if lhs.agreement(&rhs) < lhs.prec().min(rhs.prec()) {
                    ok = false;
                }
                if worst.is_none() || !ok {
                    worst = Some((lhs, rhs));
                }
            }
            let (l, rr) = worst.expect("sweep is nonempty");
            Ok((l.to_string(), rr.to_string(), Outcome::Exact(ok)))
        }));
    }
    out
}

fn coleman_checks(cfg: &RunConfig, p: u64) -> Vec<CheckRecord> {
    let subject = format!("p={p}");
    let n = cfg.coleman_digits;
    let started = Instant::now();
    let d = degree_for(p, 1, n + 3);
    if d > cfg.series_degree_cap {
        let msg = format!("degree {d} needed for {n} digits exceeds the cap {}", cfg.series_degree_cap);
        return vec![record(Check::Coleman, &subject, "Coleman series g", started, || Err(Error::Precision(msg)))];
    }
    let built = construct_g(p, d, n + 4).and_then(|g| Ok((NormCompatibleUnits::from_series(&g, 1)?, g)));
    let (units, g) = match built {
        Ok(x) => x,
        Err(e) => return vec![record(Check::Coleman, &subject, "Coleman series g", started, || Err(e))],
    };
    let mut out = Vec::new();
    out.push(record(Check::Coleman, &subject, "log g(0) = p", started, || {
        Ok(digits(&padic_log_prec(g.coeff(0), n + 4)?, &Padic::exact_int(p, p as i64), n))
    }));
    let xs = x_values(p, 1);
    for k in 0..2u32 {
        let anchor = format!("log g(zeta_{{p^{}}} - 1) = x_{k}", k + 1);
        out.push(record(Check::Coleman, &subject, &anchor, Instant::now(), || {
            let lc = units.unit(k)?.log()?;
            let x = &xs.as_ref().map_err(Clone::clone)?[k as usize];
            Ok((lc.to_string(), x.to_string(), Outcome::Digits { got: lc.agreement(x), need: n }))
        }));
    }
    out.push(record(Check::Coleman, &subject, "N_{1,0}(C_1) = C_0", Instant::now(), || {
        let c1 = units.unit(1)?.norm_to_level(0)?;
        let c0 = units.unit(0)?;
        Ok((c1.to_string(), c0.to_string(), Outcome::Digits { got: c1.agreement(c0), need: n }))
    }));
    out.push(record(Check::Coleman, &subject, "C_0 = 1", Instant::now(), || {
        let c0 = units.unit(0)?;
        let one = CyclotomicElement::one(p, 0);
        Ok((c0.to_string(), one.to_string(), Outcome::Digits { got: c0.agreement(&one), need: n }))
    }));
    out.push(record(Check::Coleman, &subject, "ord(c') l_sigma = 1", Instant::now(), || {
        let prod = &ord_c_prime(&g)? * &l_sigma(p, n + 6);
        Ok(digits(&prod, &Padic::one(p), n))
    }));
    out
}

fn jet_checks() -> Vec<CheckRecord> {
    Identity::ALL
        .into_iter()
        .map(|id| {
            let anchor = match id {
                Identity::CentralCritical => "h(x)(k, k/2): d^2/dk^2 = lambda^2/2",
                Identity::WeightTwo => "h(x)(2, s) = log_p(q_A) <x,x>^Sch {s-1}^2",
                Identity::Improved => "h(x)(k, 1): d^2/dk^2 = -log_p(q_A) w, improved slope l2 ord_q w",
                Identity::GsConstant => "Rubin jet at k = 2 with exp* = (1 - 1/p) L(A,1)/Omega+",
                Identity::WtCyc => "functional equation on <x,x>: c + 2w = 0",
            };
            record(Check::Jets, id.name(), anchor, Instant::now(), || {
                let d = derive(id)?;
                Ok((d.result.to_string(), d.expected.to_string(), Outcome::Exact(d.holds())))
            })
        })
        .collect()
}

/// Run the selected checks over the given curves.
///
/// Curves are processed concurrently; records come out ordered by check,
/// then by dataset order, so reports are reproducible.
pub fn run_suite(cfg: &RunConfig, curves: &[CurveRecord], checks: &[Check]) -> Result<VerificationReport> {
    cfg.validate()?;
    for r in curves {
        let c = check_split_multiplicative(&r.curve, r.p);
        if !c.split {
            return Err(Error::Validation(format!("{} at p = {}: {}", r.label(), r.p, c.diagnostic)));
        }
    }
    let mut records: Vec<(Check, usize, CheckRecord)> = Vec::new();
    let per_curve: Vec<Vec<CheckRecord>> = curves.par_iter().map(|r| curve_checks(cfg, r, checks)).collect();
    for (i, recs) in per_curve.into_iter().enumerate() {
        for rec in recs {
            let c: Check = rec.check.parse()?;
            records.push((c, i, rec));
        }
    }
    if checks.contains(&Check::Coleman) {
        let per_prime: Vec<Vec<CheckRecord>> = cfg.coleman_primes.par_iter().map(|&p| coleman_checks(cfg, p)).collect();
        for recs in per_prime {
            records.extend(recs.into_iter().map(|r| (Check::Coleman, usize::MAX, r)));
        }
    }
    if checks.contains(&Check::Jets) {
        records.extend(jet_checks().into_iter().map(|r| (Check::Jets, usize::MAX, r)));
    }
    // stable: keeps the within-curve order
    records.sort_by_key(|(c, i, _)| (*c, *i));
    Ok(VerificationReport { records: records.into_iter().map(|(_, _, r)| r).collect() })
}
