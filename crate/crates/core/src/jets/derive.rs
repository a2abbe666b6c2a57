use std::fmt;
use std::str::FromStr;

use super::formulas::{euler_factor_jet, improved_factor, rubin_jet, rubin_jet_squared, rubin_prefactor_symbolic};
use super::jet::Jet2;
use super::pairing::{extended_height, functional_equation_constraint, hw_pairing, Class, PairingTable};
use super::scalar::{Scalar, Sym};
use crate::error::{Error, Result};

/// The identities `jets derive` re-derives from the pairing axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// Height on the central critical line, and the second-order Rubin
    /// formula restricted to it.
    CentralCritical,
    /// Second derivative in `s` at weight two.
    WeightTwo,
    /// Slope of the improved function at `s = 1`.
    Improved,
    /// First-order Rubin formula against the derivative of `L_p(A, s)`.
    GsConstant,
    /// Weight versus cyclotomic component on the diagonal.
    WtCyc,
}

impl Identity {
    pub const ALL: [Identity; 5] =
        [Identity::CentralCritical, Identity::WeightTwo, Identity::Improved, Identity::GsConstant, Identity::WtCyc];

    pub fn name(self) -> &'static str {
        match self {
            Identity::CentralCritical => "cc",
            Identity::WeightTwo => "weight-two",
            Identity::Improved => "improved",
            Identity::GsConstant => "gs-constant",
            Identity::WtCyc => "wt-cyc",
        }
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s}; expected one of cc, weight-two, improved, gs-constant, wt-cyc")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub label: String,
    pub value: String,
}

/// A symbolic derivation: the steps, the final value and the value it is
/// claimed to equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub identity: Identity,
    pub symbols: String,
    pub steps: Vec<Step>,
    pub result: Sym,
    pub expected: Sym,
}

impl Derivation {
    pub fn holds(&self) -> bool {
        self.result == self.expected
    }

    fn step(&mut self, label: &str, value: impl fmt::Display) {
        self.steps.push(Step { label: label.to_string(), value: value.to_string() });
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "identity {}", self.identity.name())?;
        writeln!(f, "  symbols: {}", self.symbols)?;
        for s in &self.steps {
            writeln!(f, "  {:<44} {}", s.label, s.value)?;
        }
        writeln!(f, "  {:<44} {}", "result", self.result)?;
        writeln!(f, "  {:<44} {}", "expected", self.expected)?;
        write!(f, "  {}", if self.holds() { "identity holds exactly" } else { "MISMATCH" })
    }
}

fn v(n: &str) -> Sym {
    Sym::var(n)
}

fn inv(x: &Sym) -> Sym {
    x.inverse().expect("monomials are units")
}

/// Table for one class `P` with `log_p(q_A) = Lp * ord_q`.
fn table_split_log() -> PairingTable<Sym> {
    let mut t = PairingTable::symbolic(&["P"]);
    t.log_q = v("Lp").times(&v("ord_q"));
    t
}

pub fn derive(id: Identity) -> Result<Derivation> {
    let mut d = Derivation { identity: id, symbols: String::new(), steps: Vec::new(), result: Sym::zero(), expected: Sym::zero() };
    let (q, p) = (Class::Q, Class::sel("P"));
    match id {
        Identity::CentralCritical => {
            d.symbols = "L = log_p(q_A), lambda_P = log_A(res_p P), <P,P> = c_PP{s-1} + w_PP{k-2}; ord_q, e = 1 - 1/p".into();
            let t = PairingTable::symbolic(&["P"]);
            d.step("<q_A,q_A>", hw_pairing(&q, &q, &t)?);
            d.step("<q_A,P>", hw_pairing(&q, &p, &t)?);
            d.step("<P,q_A> = -<q_A,P>(k,k-s)", hw_pairing(&p, &q, &t)?);
            d.step("<P,P>", hw_pairing(&p, &p, &t)?);
            let h = extended_height("P", &t)?;
            d.step("h(P) = det Gram(q_A, P) mod J^3", &h);
            let cc = h.at_central_line();
            d.step("h(P)(k, k/2)", &cc);
            let h_cc = cc.derivative(2, 0);
            d.step("h_cc = d^2/dk^2 at k = 2", &h_cc);
            let lam = v("lambda_P");
            let big = rubin_jet_squared(&lam, &h, &rubin_prefactor_symbolic())?;
            d.step("L_T = -(1/(ord_q e lambda_P)) h(P)", &big);
            let big_cc = big.at_central_line().derivative(2, 0);
            d.step("d^2/dk^2 L_T(k, k/2)", &big_cc);
            d.step("lambda_P * 2 * d^2/dk^2 L_T(k, k/2)", lam.times(&big_cc).times(&Sym::int(2)));
            d.step("-(1/ord_q) e^-1 lambda_P^2", rubin_prefactor_symbolic().times(&lam.pow(2)).negated());
            d.result = h_cc;
            d.expected = lam.pow(2).times(&Sym::ratio(1, 2));
        }
        Identity::WeightTwo => {
            d.symbols = "log_p(q_A) = Lp*ord_q, Sch = c_PP - lambda_P^2/log_p(q_A), l2: L_p = l2 * h mod J^3".into();
            let t = table_split_log();
            let h = extended_height("P", &t)?;
            d.step("h(P)", &h);
            let w2 = h.at_weight_two();
            d.step("h(P)(2, s)", &w2);
            let sch = v("c_PP").minus(&v("lambda_P").pow(2).times(&inv(&t.log_q)));
            d.step("log_p(q_A) * Sch", t.log_q.times(&sch));
            let lp = w2.scale(&v("l2"));
            let second = lp.derivative(0, 2);
            d.step("d^2/ds^2 L_p(A, s) at s = 1", &second);
            let l3 = Sym::int(2).times(&v("l2")).times(&v("ord_q"));
            d.step("l3 = 2 l2 ord_q", &l3);
            d.result = second;
            d.expected = l3.times(&v("Lp")).times(&sch);
        }
        Identity::Improved => {
            d.symbols = "log_p(q_A) = Lp*ord_q, w_PP = <P,P>^wt, l2: L_p = l2 * h mod J^3".into();
            let t = table_split_log();
            let h = extended_height("P", &t)?;
            let s1 = h.at_s_one();
            d.step("h(P)(k, 1)", &s1);
            d.step("d^2/dk^2 h(P)(k, 1)", s1.derivative(2, 0));
            let jet_l = s1.scale(&v("l2"));
            d.step("L_p(k, 1) = l2 h(P)(k, 1)", &jet_l);
            let ef = euler_factor_jet(&v("Lp"), jet_l.order());
            d.step("1 - a_p(k)^-1", &ef);
            let lstar = improved_factor(&jet_l, &ef)?;
            d.step("L*(k) = L_p(k, 1) / (1 - a_p(k)^-1)", &lstar);
            d.result = lstar.derivative(1, 0);
            d.expected = v("l2").times(&v("ord_q")).times(&v("w_PP"));
        }
        Identity::GsConstant => {
            d.symbols = "log_p(q_A) = Lp*ord_q, e = 1 - 1/p, r = L(A,1)/Omega+, exp* = e*r".into();
            let t = table_split_log();
            let exp_star = v("e").times(&v("r"));
            let j = rubin_jet(&exp_star, &rubin_prefactor_symbolic(), &t)?;
            d.step("(1/ord_q) e^-1 exp* <q_A,q_A>", &j);
            let w2 = j.at_weight_two();
            d.step("restricted to k = 2", &w2);
            d.result = w2.coeff(0, 1);
            d.expected = v("Lp").times(&v("r"));
        }
        Identity::WtCyc => {
            d.symbols = "<P,P> = c_PP{s-1} + w_PP{k-2}".into();
            let t = PairingTable::symbolic(&["P"]);
            let zz = hw_pairing(&p, &p, &t)?;
            d.step("<P,P>(k, s)", &zz);
            d.step("-<P,P>(k, k-s)", zz.reflect().neg());
            let rep = functional_equation_constraint(&t)?;
            for r in &rep.relations {
                d.step(&format!("<{},{}>: {{s-1}} relation", r.x, r.y), &r.on_s);
                d.step(&format!("<{},{}>: {{k-2}} relation", r.x, r.y), &r.on_k);
            }
            let diag = rep.relations.iter().find(|r| r.x == p).expect("diagonal entry is stored");
            d.result = diag.on_k.clone();
            d.expected = v("c_PP").plus(&Sym::int(2).times(&v("w_PP")));
        }
    }
    Ok(d)
}

/// A jet whose coefficients are evaluated at numeric values of the symbols.
pub fn evaluate_jet<S: Scalar>(j: &Jet2<Sym>, env: &[(&str, S)], template: &S) -> Option<Jet2<S>> {
    let mut entries = Vec::new();
    for (&(a, b), c) in j.terms() {
        entries.push(((a, b), c.eval(env, template)?));
    }
    Some(Jet2::from_coeffs(template, j.order(), entries))
}
