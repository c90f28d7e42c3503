use serde::Serialize;

use super::search::shift_search;
use super::targets::AsymptoticTarget;
use super::AnalysisError;
use crate::constructions::{FamilyKind, FamilySpec, Transform};
use crate::corr::{adf, rational_to_f64, DemeritReport, Rational};
use crate::sequence::BinarySequence;

/// One line of a sweep or pair report.
///
/// `params` lists the resolved transform parameters separated by `;` so the
/// CSV stays one field per column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub length: usize,
    pub params: String,
    pub adf_f: f64,
    pub adf_g: Option<f64>,
    pub cdf: Option<f64>,
    pub psc: Option<f64>,
    pub target: Option<f64>,
    pub abs_err: Option<f64>,
    #[serde(skip)]
    pub adf_f_exact: Rational,
    #[serde(skip)]
    pub report: Option<DemeritReport>,
}

impl SweepRow {
    /// Row for a single sequence, compared against `target` on its ADF.
    pub fn single(
        family: String,
        params: String,
        seq: &BinarySequence,
        adf_exact: Rational,
        target: Option<&AsymptoticTarget>,
    ) -> Self {
        let adf_f = rational_to_f64(&adf_exact);
        SweepRow {
            family,
            length: seq.len(),
            params,
            adf_f,
            adf_g: None,
            cdf: None,
            psc: None,
            target: target.map(|t| t.value),
            abs_err: target.map(|t| (adf_f - t.value).abs()),
            adf_f_exact: adf_exact,
            report: None,
        }
    }

    /// Row for a pair; `measured` picks which quantity is compared with the target.
    pub fn pair(
        family: String,
        params: String,
        length: usize,
        report: DemeritReport,
        target: Option<f64>,
        measured: f64,
    ) -> Self {
        SweepRow {
            family,
            length,
            params,
            adf_f: rational_to_f64(&report.adf_f),
            adf_g: Some(rational_to_f64(&report.adf_g)),
            cdf: Some(rational_to_f64(&report.cdf)),
            psc: Some(report.psc.approx),
            target,
            abs_err: target.map(|t| (measured - t).abs()),
            adf_f_exact: report.adf_f,
            report: Some(report),
        }
    }
}

fn resolved_params(spec: &FamilySpec, len_before: &[usize]) -> String {
    spec.transforms
        .iter()
        .zip(len_before)
        .map(|(t, &len)| match *t {
            Transform::ResizeRatio(x) => {
                let m = crate::constructions::resized_length(len, x).unwrap_or(0);
                format!("resize={x};length={m}")
            }
            other => other.to_string(),
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Lengths entering each transform of `spec`, starting from `base_len`.
fn lengths_through(spec: &FamilySpec, base_len: usize) -> Vec<usize> {
    let mut len = base_len;
    let mut out = Vec::with_capacity(spec.transforms.len());
    for t in &spec.transforms {
        out.push(len);
        len = match *t {
            Transform::ResizeRatio(x) => {
                crate::constructions::resized_length(len, x).unwrap_or(len)
            }
            Transform::ResizeLength(m) => m,
            _ => len,
        };
    }
    out
}

/// Builds `template` at each size (running the shift search when the
/// template asks for `shift=best`) and reports the ADF against `target`.
pub fn convergence_sweep(
    template: &FamilySpec,
    sizes: &[u64],
    target: Option<&AsymptoticTarget>,
) -> Result<Vec<SweepRow>, AnalysisError> {
    sizes
        .iter()
        .map(|&size| {
            let spec = template.clone().with_size(size);
            let (resolved, seq, adf_exact) = if spec.has_best_shift() {
                let found = shift_search(&spec)?;
                (
                    spec.resolve_shift(found.shift as i64),
                    found.sequence,
                    found.adf,
                )
            } else {
                let seq = spec.build()?;
                let a = adf(&seq);
                (spec.clone(), seq, a)
            };
            let base_len = resolved.base()?.len();
            let params = resolved_params(&resolved, &lengths_through(&resolved, base_len));
            Ok(SweepRow::single(
                spec.to_string(),
                params,
                &seq,
                adf_exact,
                target,
            ))
        })
        .collect()
}

/// Parses a size list such as `8,9,10`, `8-12` or `991-1019,1031`.
///
/// Explicit entries must be valid for `kind`; ranges expand to the valid
/// sizes they contain (primes for Legendre, primes `1 mod 4` for quartic).
pub fn parse_sizes(kind: FamilyKind, text: &str) -> Result<Vec<u64>, AnalysisError> {
    let bad = |item: &str| AnalysisError::InvalidArgument(format!("bad size entry {item:?}"));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once('-') {
            Some((lo, hi)) => {
                let lo: u64 = lo.trim().parse().map_err(|_| bad(item))?;
                let hi: u64 = hi.trim().parse().map_err(|_| bad(item))?;
                if lo > hi {
                    return Err(bad(item));
                }
                let before = out.len();
                out.extend((lo..=hi).filter(|&s| kind.validate_size(s).is_ok()));
                if out.len() == before {
                    return Err(AnalysisError::InvalidArgument(format!(
                        "range {item:?} contains no valid {kind} size"
                    )));
                }
            }
            None => {
                let s: u64 = item.parse().map_err(|_| bad(item))?;
                kind.validate_size(s)?;
                out.push(s);
            }
        }
    }
    if out.is_empty() {
        return Err(AnalysisError::InvalidArgument("empty size list".into()));
    }
    Ok(out)
}
