//! Dataset ingestion, run configuration, the verification suite and its
//! reports.

mod config;
mod dataset;
mod report;
mod run;

pub use config::{RunConfig, NU_MAX};
pub use dataset::{builtin_dataset, ingest_dataset, ingest_text, select};
pub use report::{CheckRecord, Outcome, VerificationReport};
pub use run::{run_suite, Check};
