//! Run the verification suite on one curve and print the report.

use excezero::suite::{builtin_dataset, run_suite, select, Check, RunConfig};

fn main() -> excezero::Result<()> {
    let curves = select(&builtin_dataset()?, Some("14a1"), Some(7))?;
    let report = run_suite(&RunConfig::default(), &curves, &Check::ALL)?;
    print!("{}", report.comparison());
    std::process::exit(report.exit_code());
}
