use super::sweep::SweepRow;
use super::AnalysisError;

pub const CSV_HEADER: [&str; 9] = [
    "family", "length", "params", "adf_f", "adf_g", "cdf", "psc", "target", "abs_err",
];

fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.12}")).unwrap_or_default()
}

/// Rows as CSV with a header line; absent values become empty cells.
pub fn rows_to_csv(rows: &[SweepRow]) -> Result<String, AnalysisError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| AnalysisError::InvalidArgument(format!("csv output: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            r.family.clone(),
            r.length.to_string(),
            r.params.clone(),
            cell(Some(r.adf_f)),
            cell(r.adf_g),
            cell(r.cdf),
            cell(r.psc),
            cell(r.target),
            cell(r.abs_err),
        ])
        .map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| AnalysisError::InvalidArgument(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

pub fn rows_to_json(rows: &[SweepRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}
