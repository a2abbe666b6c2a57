use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::tate::{check_split_multiplicative, parse_records, CurveRecord, BUILTIN};

/// Parse and validate a dataset: every record must be split multiplicative
/// at its prime, and `(label, p)` pairs must be unique.
pub fn ingest_text(text: &str) -> Result<Vec<CurveRecord>> {
    let records = parse_records(text)?;
    let mut seen: HashMap<(String, u64), usize> = HashMap::new();
    for r in &records {
        if let Some(first) = seen.insert((r.label().to_string(), r.p), r.line) {
            return Err(Error::Dataset { line: r.line, msg: format!("duplicate {} at p = {} (first on line {first})", r.label(), r.p) });
        }
        let c = check_split_multiplicative(&r.curve, r.p);
        if !c.split {
            return Err(Error::Dataset { line: r.line, msg: c.diagnostic });
        }
    }
    Ok(records)
}

pub fn ingest_dataset(path: &Path) -> Result<Vec<CurveRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    ingest_text(&text)
}

/// The shipped table.
pub fn builtin_dataset() -> Result<Vec<CurveRecord>> {
    ingest_text(BUILTIN)
}

/// Records matching an optional label and prime.
pub fn select(records: &[CurveRecord], label: Option<&str>, p: Option<u64>) -> Result<Vec<CurveRecord>> {
    let out: Vec<CurveRecord> = records
        .iter()
        .filter(|r| label.map_or(true, |l| r.label() == l) && p.map_or(true, |p| r.p == p))
        .cloned()
        .collect();
    if out.is_empty() && (label.is_some() || p.is_some()) {
        return Err(Error::Lookup(format!(
            "no dataset record for {}{}",
            label.unwrap_or("*"),
            p.map(|p| format!(" at p = {p}")).unwrap_or_default()
        )));
    }
    Ok(out)
}
