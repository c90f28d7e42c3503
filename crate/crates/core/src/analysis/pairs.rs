//! Pair constructions measured against their limiting Pursley-Sarwate values.
//!
//! Every row compares the measured PSC with the construction's asymptotic
//! PSC. Where a construction calls for suitably shifted sequences the shifts
//! come from an exhaustive search: the reversing m-sequence pair minimizes
//! CDF, the others minimize PSC.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::search::{best_shift_by, pair_shift_search_with, Objective, PairGrid};
use super::sweep::SweepRow;
use super::AnalysisError;
use crate::constructions::{
    cyclic_shift, decimate, galois_sequence, half_legendre_pair, is_degenerate_decimation,
    is_reversing_decimation, legendre, quartic_f, quartic_g, resize, resized_length, FamilyKind,
};
use crate::corr::{psc, Rational};
use crate::gf::{BinaryField, PrimeField};
use crate::rsl::{golay_pair_of_length, rsl_pair_stems, Seed, SignSequence};
use crate::sequence::BinarySequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairConstruction {
    TypicalMseq,
    ReversingMseq,
    HalfLegendre,
    QuarticPair,
    LegendrePlusQuartic,
    RslPair,
    Golay,
}

impl PairConstruction {
    pub const ALL: [PairConstruction; 7] = [
        PairConstruction::TypicalMseq,
        PairConstruction::ReversingMseq,
        PairConstruction::HalfLegendre,
        PairConstruction::QuarticPair,
        PairConstruction::LegendrePlusQuartic,
        PairConstruction::RslPair,
        PairConstruction::Golay,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PairConstruction::TypicalMseq => "typical_mseq",
            PairConstruction::ReversingMseq => "reversing_mseq",
            PairConstruction::HalfLegendre => "half_legendre",
            PairConstruction::QuarticPair => "quartic_pair",
            PairConstruction::LegendrePlusQuartic => "legendre_plus_quartic",
            PairConstruction::RslPair => "rsl_pair",
            PairConstruction::Golay => "golay",
        }
    }

    /// Limiting PSC of the family, as an exact fraction.
    pub fn asymptotic_psc(&self) -> Rational {
        match self {
            PairConstruction::TypicalMseq => Rational::new(4, 3),
            PairConstruction::RslPair => Rational::new(331, 300),
            PairConstruction::Golay => Rational::from_integer(1),
            _ => Rational::new(7, 6),
        }
    }

    /// Meaning of each entry in the size list.
    pub fn size_key(&self) -> &'static str {
        match self {
            PairConstruction::TypicalMseq | PairConstruction::ReversingMseq => "n",
            PairConstruction::RslPair => "depth",
            PairConstruction::Golay => "length",
            _ => "p",
        }
    }

    /// Family kind whose size rules apply to the size list, if any.
    pub fn size_kind(&self) -> Option<FamilyKind> {
        match self {
            PairConstruction::TypicalMseq | PairConstruction::ReversingMseq => {
                Some(FamilyKind::MSequence)
            }
            PairConstruction::HalfLegendre => Some(FamilyKind::Legendre),
            PairConstruction::QuarticPair | PairConstruction::LegendrePlusQuartic => {
                Some(FamilyKind::QuarticF)
            }
            PairConstruction::RslPair | PairConstruction::Golay => None,
        }
    }
}

impl fmt::Display for PairConstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairConstruction {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PairConstruction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = PairConstruction::ALL.iter().map(|c| c.name()).collect();
                AnalysisError::InvalidArgument(format!(
                    "unknown construction {s:?} (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// Inputs for [`report_pairs`]. Only the fields a construction uses are read.
#[derive(Debug, Clone)]
pub struct PairParams {
    /// One entry per row; see [`PairConstruction::size_key`] for its meaning.
    pub sizes: Vec<u64>,
    /// Decimation for m-sequence pairs (defaults: 3 typical, -1 reversing).
    pub decimation: Option<i64>,
    /// Seeds for `rsl_pair`.
    pub seeds: Option<(Seed, Seed)>,
    /// Shared sign sequence for `rsl_pair` (all `+1` when absent).
    pub signs: Option<SignSequence>,
    /// Experimental: resize both quartic sequences to `round(ratio * p)`
    /// after shifting.
    pub resize: Option<f64>,
    pub grid: PairGrid,
}

impl PairParams {
    pub fn new(sizes: Vec<u64>) -> Self {
        PairParams {
            sizes,
            decimation: None,
            seeds: None,
            signs: None,
            resize: None,
            grid: PairGrid::Auto,
        }
    }
}

fn mseq_rows(
    construction: PairConstruction,
    params: &PairParams,
    target: f64,
) -> Result<Vec<SweepRow>, AnalysisError> {
    let reversing = construction == PairConstruction::ReversingMseq;
    let d = params.decimation.unwrap_or(if reversing { -1 } else { 3 });
    let mut rows = Vec::new();
    for &n in &params.sizes {
        FamilyKind::MSequence.validate_size(n)?;
        let ctx =
            BinaryField::new(n as u32).map_err(crate::constructions::ConstructionError::from)?;
        let f = galois_sequence(&ctx);
        let len = f.len();
        if is_degenerate_decimation(d, len) {
            return Err(
                crate::constructions::ConstructionError::DegenerateDecimation { d, len }.into(),
            );
        }
        if reversing && !is_reversing_decimation(d, len) {
            return Err(AnalysisError::InvalidArgument(format!(
                "decimation {d} is not reversing (-2^k) modulo {len}"
            )));
        }
        if !reversing && is_reversing_decimation(d, len) {
            return Err(AnalysisError::InvalidArgument(format!(
                "decimation {d} is reversing modulo {len}; use reversing_mseq"
            )));
        }
        let g = decimate(&f, d)?;
        let family = format!("{construction}:n={n},d={d}");
        let row = if reversing {
            let found = pair_shift_search_with(
                len,
                |r| Ok(cyclic_shift(&f, r as i64)),
                |t| Ok(cyclic_shift(&g, t as i64)),
                Objective::Cdf,
                params.grid,
            )?;
            let p = format!("d={d};shift_f={};shift_g={}", found.shift_f, found.shift_g);
            let measured = found.report.psc.approx;
            SweepRow::pair(family, p, len, found.report, Some(target), measured)
        } else {
            let report = psc(&f, &g)?;
            let measured = report.psc.approx;
            SweepRow::pair(
                family,
                format!("d={d}"),
                len,
                report,
                Some(target),
                measured,
            )
        };
        rows.push(row);
    }
    Ok(rows)
}

fn half_legendre_rows(params: &PairParams, target: f64) -> Result<Vec<SweepRow>, AnalysisError> {
    params
        .sizes
        .iter()
        .map(|&p| {
            FamilyKind::Legendre.validate_size(p)?;
            let (r, report) = best_shift_by(
                p as usize,
                |r| {
                    let (f, g) = half_legendre_pair(p, r as i64)?;
                    Ok(psc(&f, &g)?)
                },
                |a, b| a.psc.approx.total_cmp(&b.psc.approx),
            )?;
            let measured = report.psc.approx;
            Ok(SweepRow::pair(
                format!("half_legendre:p={p}"),
                format!("shift={r}"),
                (p as usize - 1) / 2,
                report,
                Some(target),
                measured,
            ))
        })
        .collect()
}

fn cyclotomic_rows(
    construction: PairConstruction,
    params: &PairParams,
    target: f64,
) -> Result<Vec<SweepRow>, AnalysisError> {
    let mut rows = Vec::new();
    for &p in &params.sizes {
        FamilyKind::QuarticF.validate_size(p)?;
        let ctx = PrimeField::new(p).map_err(crate::constructions::ConstructionError::from)?;
        let f = match construction {
            PairConstruction::LegendrePlusQuartic => legendre(p)?,
            _ => quartic_f(&ctx)?,
        };
        let g = match construction {
            PairConstruction::LegendrePlusQuartic => quartic_f(&ctx)?,
            _ => quartic_g(&ctx)?,
        };
        let out_len = match params.resize {
            Some(x) => resized_length(p as usize, x)?,
            None => p as usize,
        };
        let transform = |s: &BinarySequence, r: usize| -> Result<BinarySequence, AnalysisError> {
            let shifted = cyclic_shift(s, r as i64);
            Ok(match params.resize {
                Some(_) => resize(&shifted, out_len as i64)?,
                None => shifted,
            })
        };
        let found = pair_shift_search_with(
            p as usize,
            |r| transform(&f, r),
            |t| transform(&g, t),
            Objective::Psc,
            params.grid,
        )?;
        let mut family = format!("{construction}:p={p}");
        let mut desc = format!("shift_f={};shift_g={}", found.shift_f, found.shift_g);
        if let Some(x) = params.resize {
            family.push_str(&format!(",resize={x}"));
            desc.push_str(&format!(";resize={x};length={out_len}"));
        }
        let measured = found.report.psc.approx;
        rows.push(SweepRow::pair(
            family,
            desc,
            out_len,
            found.report,
            Some(target),
            measured,
        ));
    }
    Ok(rows)
}

fn rsl_rows(params: &PairParams, target: f64) -> Result<Vec<SweepRow>, AnalysisError> {
    let (seed_f, seed_g) = params
        .seeds
        .as_ref()
        .ok_or_else(|| AnalysisError::InvalidArgument("rsl_pair needs a pair of seeds".into()))?;
    let depth = params.sizes.iter().copied().max().unwrap_or(0) as usize;
    let signs = params
        .signs
        .clone()
        .unwrap_or_else(|| SignSequence::all_plus(depth));
    let stems = rsl_pair_stems(seed_f, seed_g, &signs, depth)?;
    params
        .sizes
        .iter()
        .map(|&n| {
            let (f, g) = &stems[n as usize];
            let report = psc(f, g)?;
            let measured = report.psc.approx;
            Ok(SweepRow::pair(
                format!("rsl_pair:depth={n}"),
                format!("seed_len={}", seed_f.len()),
                f.len(),
                report,
                Some(target),
                measured,
            ))
        })
        .collect()
}

fn golay_rows(params: &PairParams) -> Result<Vec<SweepRow>, AnalysisError> {
    params
        .sizes
        .iter()
        .map(|&len| {
            let pair = golay_pair_of_length(len as usize)?;
            let report = psc(pair.a(), pair.b())?;
            if report.psc.exact != Some(Rational::from_integer(1)) {
                return Err(AnalysisError::Certification(format!(
                    "Golay pair of length {len} has PSC {} instead of exactly 1",
                    report.psc.approx
                )));
            }
            Ok(SweepRow::pair(
                format!("golay:length={len}"),
                "certified".into(),
                len as usize,
                report,
                Some(1.0),
                1.0,
            ))
        })
        .collect()
}

/// Builds each requested instance of `construction` and reports its demerit
/// factors, with the family's limiting PSC as the target.
pub fn report_pairs(
    construction: PairConstruction,
    params: &PairParams,
) -> Result<Vec<SweepRow>, AnalysisError> {
    if params.sizes.is_empty() {
        return Err(AnalysisError::InvalidArgument("empty size list".into()));
    }
    if params.resize.is_some() && construction != PairConstruction::QuarticPair {
        return Err(AnalysisError::InvalidArgument(
            "resize is only available for quartic_pair".into(),
        ));
    }
    let target = crate::corr::rational_to_f64(&construction.asymptotic_psc());
    match construction {
        PairConstruction::TypicalMseq | PairConstruction::ReversingMseq => {
            mseq_rows(construction, params, target)
        }
        PairConstruction::HalfLegendre => half_legendre_rows(params, target),
        PairConstruction::QuarticPair | PairConstruction::LegendrePlusQuartic => {
            cyclotomic_rows(construction, params, target)
        }
        PairConstruction::RslPair => rsl_rows(params, target),
        PairConstruction::Golay => golay_rows(params),
    }
}
