use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use excezero::coleman::{construct_g, l_sigma, ord_c_prime};
use excezero::jets::{derive, hw_pairing, log_q, rubin_prefactor, Class, Identity, PairingTable};
use excezero::mtt::{ModularSymbolTable, PadicLFunction};
use excezero::padic::parse_padic;
use excezero::suite::{builtin_dataset, ingest_dataset, run_suite, select, Check, RunConfig};
use excezero::tate::{tate_period, CurveRecord};
use excezero::{Error, Result};

#[derive(Parser)]
#[command(name = "excezero", version, about = "Exceptional-zero computations for elliptic curves with split multiplicative reduction")]
struct Cli {
    /// Dataset file (defaults to the built-in table).
    #[arg(long, global = true)]
    dataset: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CurveSel {
    #[arg(long)]
    curve: String,
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tate period and L-invariant.
    Tate {
        #[command(flatten)]
        sel: CurveSel,
        #[arg(long, default_value_t = 20)]
        prec: i64,
    },
    /// Riemann-sum values of the p-adic L-function.
    Lp {
        #[command(flatten)]
        sel: CurveSel,
        #[arg(long, default_value_t = 3)]
        nu: u32,
        #[arg(long, default_value_t = 12)]
        prec: i64,
        /// Evaluation points (rationals in Z_p or p-adic literals).
        #[arg(long, num_args = 1..)]
        s: Vec<String>,
        /// Print Taylor coefficients at s = 1 up to this index.
        #[arg(long)]
        taylor: Option<usize>,
    },
    /// Coleman power series.
    Coleman {
        #[command(subcommand)]
        cmd: ColemanCmd,
    },
    /// Height-weight jets.
    Jets {
        #[command(subcommand)]
        cmd: JetsCmd,
    },
    /// Run the verification suite.
    Verify {
        /// Comma-separated checks: trivial-zero, gs, interp, funceq, coleman, jets, all.
        #[arg(default_value = "all")]
        checks: String,
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        precision: Option<i64>,
        #[arg(long)]
        nu_max: Option<u32>,
        #[arg(long)]
        coleman_digits: Option<i64>,
    },
    /// List and validate the dataset.
    Dataset,
}

#[derive(Subcommand)]
enum ColemanCmd {
    /// Print the coefficients of g.
    Build {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 20)]
        deg: usize,
        #[arg(long, default_value_t = 10)]
        prec: i64,
    },
    /// Check the defining properties of g.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 8)]
        digits: i64,
    },
    /// ord(c') and its product with l_sigma.
    OrdCprime {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 15)]
        prec: i64,
    },
}

#[derive(Subcommand)]
enum JetsCmd {
    /// Re-derive an identity symbolically.
    Derive {
        /// cc, weight-two, improved, gs-constant, wt-cyc or all.
        #[arg(long, default_value = "all")]
        theorem: String,
    },
    /// Numeric q_A-row of the pairing table from a curve.
    Table {
        #[arg(long = "from-curve")]
        curve: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 20)]
        prec: i64,
    },
}

fn dataset(path: &Option<PathBuf>) -> Result<Vec<CurveRecord>> {
    match path {
        Some(p) => ingest_dataset(p),
        None => builtin_dataset(),
    }
}

fn find(path: &Option<PathBuf>, label: &str, p: Option<u64>) -> Result<CurveRecord> {
    Ok(select(&dataset(path)?, Some(label), p)?.remove(0))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Tate { sel, prec } => {
            let r = find(&cli.dataset, &sel.curve, sel.p)?;
            let t = tate_period(&r.curve, r.p, prec)?;
            println!("{} at p = {}", r.curve, r.p);
            println!("q_A       = {}", t.q);
            println!("ord_p q_A = {}", t.ord_q);
            println!("L_p(A)    = {}", t.l_invariant);
            println!("residuals = {:?}", t.residuals);
        }
        Cmd::Lp { sel, nu, prec, s, taylor } => {
            let r = find(&cli.dataset, &sel.curve, sel.p)?;
            let table = ModularSymbolTable::for_prime_power(&r.curve, r.p, nu, Default::default())?;
            let lf = PadicLFunction::new(Arc::new(table), r.p, nu, prec)?;
            let pts = if s.is_empty() && taylor.is_none() { vec!["1".to_string()] } else { s };
            for x in pts {
                let v = lf.lp_value(&parse_padic(&x, Some(r.p))?)?;
                println!("L_p({x}) = {}   [error ord {}]", v.value, fmt_ord(v.error_ord));
            }
            if let Some(j) = taylor {
                for (i, c) in lf.taylor_coefficients(j).iter().enumerate() {
                    println!("c_{i} = {}   [error ord {}]", c.value, fmt_ord(c.error_ord));
                }
            }
        }
        Cmd::Coleman { cmd } => match cmd {
            ColemanCmd::Build { p, deg, prec } => println!("{}", construct_g(p, deg, prec)?),
            ColemanCmd::Verify { p, digits } => {
                let cfg = RunConfig { coleman_primes: vec![p], coleman_digits: digits, ..RunConfig::default() };
                return report(&cfg, &[], &[Check::Coleman]);
            }
            ColemanCmd::OrdCprime { p, prec } => {
                let g = construct_g(p, 10, prec)?;
                let o = ord_c_prime(&g)?;
                println!("ord(c')         = {o}");
                println!("ord(c') l_sigma = {}", &o * &l_sigma(p, prec + 2));
            }
        },
        Cmd::Jets { cmd } => match cmd {
            JetsCmd::Derive { theorem } => {
                let ids: Vec<Identity> =
                    if theorem == "all" { Identity::ALL.to_vec() } else { vec![theorem.parse()?] };
                let mut ok = true;
                for id in ids {
                    let d = derive(id)?;
                    ok &= d.holds();
                    println!("{d}\n");
                }
                return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
            }
            JetsCmd::Table { curve, p, prec } => {
                let r = find(&cli.dataset, &curve, p)?;
                let t = tate_period(&r.curve, r.p, prec)?;
                let table = PairingTable::new(log_q(&t));
                println!("{} at p = {}", r.curve, r.p);
                println!("L = log_p(q_A) = {}", table.log_q);
                println!("L_p(A)         = {}", t.l_invariant);
                println!("ord_p(q_A)     = {}", t.ord_q);
                println!("<q_A,q_A>      = {}", hw_pairing(&Class::Q, &Class::Q, &table)?);
                println!("Rubin constant = {}", rubin_prefactor(&t)?);
            }
        },
        Cmd::Verify { checks, curve, p, config, report: out, precision, nu_max, coleman_digits } => {
            let mut cfg = match &config {
                Some(path) => RunConfig::load(path)?,
                None => RunConfig::default(),
            };
            cfg.precision = precision.unwrap_or(cfg.precision);
            cfg.nu_max = nu_max.unwrap_or(cfg.nu_max);
            cfg.coleman_digits = coleman_digits.unwrap_or(cfg.coleman_digits);
            if out.is_some() {
                cfg.report = out;
            }
            let path = cli.dataset.clone().or_else(|| cfg.dataset.clone());
            let curves = select(&dataset(&path)?, curve.as_deref(), p)?;
            return report(&cfg, &curves, &Check::parse_list(&checks)?);
        }
        Cmd::Dataset => {
            for r in dataset(&cli.dataset)? {
                println!("{r}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn report(cfg: &RunConfig, curves: &[CurveRecord], checks: &[Check]) -> Result<ExitCode> {
    let rep = run_suite(cfg, curves, checks)?;
    let text = rep.render();
    print!("{text}");
    if let Some(path) = &cfg.report {
        std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(ExitCode::from(rep.exit_code() as u8))
}

fn fmt_ord(o: i64) -> String {
    if o == excezero::padic::EXACT {
        "exact".into()
    } else {
        o.to_string()
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
