//! Exhaustive searches over cyclic shifts.
//!
//! Ties always resolve to the smallest shift (lexicographically smallest
//! shift pair for pair searches), so results do not depend on thread count.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use super::AnalysisError;
use crate::constructions::{cyclic_shift, FamilySpec};
use crate::corr::{
    autocorrelation, cross_energy_from_autocorrelations, psc, rational_to_f64, CorrelationSpectrum,
    DemeritReport, Rational,
};
use crate::sequence::BinarySequence;

/// Largest base length any shift search will scan.
pub const MAX_SEARCH_LEN: usize = 1 << 14;
/// Largest length for which pair searches scan the full product grid.
pub const PRODUCT_GRID_MAX_LEN: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Adf,
    Cdf,
    Psc,
}

impl std::str::FromStr for Objective {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "adf" => Ok(Objective::Adf),
            "cdf" => Ok(Objective::Cdf),
            "psc" => Ok(Objective::Psc),
            other => Err(AnalysisError::InvalidArgument(format!(
                "unknown objective {other:?} (adf, cdf or psc)"
            ))),
        }
    }
}

fn check_budget(len: usize) -> Result<(), AnalysisError> {
    if len > MAX_SEARCH_LEN {
        Err(AnalysisError::Budget(format!(
            "shift search over length {len} exceeds the limit of {MAX_SEARCH_LEN}"
        )))
    } else {
        Ok(())
    }
}

/// Index of the minimum under `cmp`, first occurrence on ties.
fn argmin_by<T, F>(items: &[T], mut cmp: F) -> usize
where
    F: FnMut(&T, &T) -> Ordering,
{
    let mut best = 0;
    for i in 1..items.len() {
        if cmp(&items[i], &items[best]) == Ordering::Less {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSearch {
    pub shift: usize,
    pub adf: Rational,
    pub sequence: BinarySequence,
}

/// Minimizes the autocorrelation demerit factor over every value of the
/// family's `shift=best` slot (or over a leading shift when the family has none).
pub fn shift_search(family: &FamilySpec) -> Result<ShiftSearch, AnalysisError> {
    let spec = if family.has_best_shift() {
        family.clone()
    } else {
        let mut s = family.clone();
        s.transforms.insert(
            0,
            crate::constructions::Transform::Shift(crate::constructions::ShiftChoice::Best),
        );
        s
    };
    let base = spec.base()?;
    check_budget(base.len())?;
    let candidates: Vec<Result<(Rational, BinarySequence), AnalysisError>> = (0..base.len())
        .into_par_iter()
        .map(|r| {
            let seq = spec.resolve_shift(r as i64).apply(base.clone())?;
            Ok((crate::corr::adf(&seq), seq))
        })
        .collect();
    let candidates = candidates.into_iter().collect::<Result<Vec<_>, _>>()?;
    let best = argmin_by(&candidates, |a, b| a.0.cmp(&b.0));
    let (adf, sequence) = candidates.into_iter().nth(best).expect("nonempty");
    Ok(ShiftSearch {
        shift: best,
        adf,
        sequence,
    })
}

/// Plain 1-D scan: evaluates `eval(r)` for `r in 0..count` and returns the
/// argmin under `key`.
pub fn best_shift_by<T, F, K>(count: usize, eval: F, key: K) -> Result<(usize, T), AnalysisError>
where
    T: Send,
    F: Fn(usize) -> Result<T, AnalysisError> + Sync,
    K: Fn(&T, &T) -> Ordering,
{
    check_budget(count)?;
    if count == 0 {
        return Err(AnalysisError::InvalidArgument("empty shift range".into()));
    }
    let values = (0..count)
        .into_par_iter()
        .map(&eval)
        .collect::<Result<Vec<T>, _>>()?;
    let best = argmin_by(&values, key);
    Ok((best, values.into_iter().nth(best).expect("nonempty")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairGrid {
    /// Product grid up to [`PRODUCT_GRID_MAX_LEN`], diagonal beyond.
    Auto,
    Product,
    /// Same shift applied to both sequences.
    Diagonal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairShiftSearch {
    pub shift_f: usize,
    pub shift_g: usize,
    pub report: DemeritReport,
    pub f: BinarySequence,
    pub g: BinarySequence,
}

/// Per-shift data: the transformed sequence and its autocorrelation.
struct Shifted {
    seq: BinarySequence,
    acorr: CorrelationSpectrum,
    adf_num: i128,
}

fn shifted_family<F>(len: usize, make: &F) -> Result<Vec<Shifted>, AnalysisError>
where
    F: Fn(usize) -> Result<BinarySequence, AnalysisError> + Sync,
{
    (0..len)
        .into_par_iter()
        .map(|r| {
            let seq = make(r)?;
            let acorr = autocorrelation(&seq);
            let l = seq.len() as i128;
            let adf_num = acorr.energy() - l * l;
            Ok(Shifted {
                seq,
                acorr,
                adf_num,
            })
        })
        .collect()
}

/// Scored grid point; `cdf_num` over `l^2` is the crosscorrelation demerit factor.
#[derive(Clone, Copy)]
struct Score {
    r: usize,
    t: usize,
    cdf_num: i128,
    psc: f64,
}

fn compare(objective: Objective, a: &Score, b: &Score) -> Ordering {
    let primary = match objective {
        Objective::Cdf => a.cdf_num.cmp(&b.cdf_num),
        _ => a.psc.total_cmp(&b.psc),
    };
    primary.then((a.r, a.t).cmp(&(b.r, b.t)))
}

/// Searches shift pairs `(r, t)` where `make_f(r)` and `make_g(t)` produce
/// the transformed sequences (equal lengths required).
///
/// The crosscorrelation energy of each pair is taken from the two
/// autocorrelations via `sum_s C_fg(s)^2 = sum_s C_ff(s) C_gg(s)`, so the
/// product grid costs one dot product per point. The winning pair is
/// re-evaluated from scratch for the returned report.
pub fn pair_shift_search_with<F, G>(
    base_len: usize,
    make_f: F,
    make_g: G,
    objective: Objective,
    grid: PairGrid,
) -> Result<PairShiftSearch, AnalysisError>
where
    F: Fn(usize) -> Result<BinarySequence, AnalysisError> + Sync,
    G: Fn(usize) -> Result<BinarySequence, AnalysisError> + Sync,
{
    if objective == Objective::Adf {
        return Err(AnalysisError::InvalidArgument(
            "pair searches minimize cdf or psc".into(),
        ));
    }
    check_budget(base_len)?;
    let product = match grid {
        PairGrid::Auto => base_len <= PRODUCT_GRID_MAX_LEN,
        PairGrid::Product => true,
        PairGrid::Diagonal => false,
    };
    let fs = shifted_family(base_len, &make_f)?;
    let gs = shifted_family(base_len, &make_g)?;
    let l = fs[0].seq.len();
    if gs[0].seq.len() != l {
        return Err(AnalysisError::InvalidArgument(format!(
            "pair sequences have different lengths {} and {}",
            l,
            gs[0].seq.len()
        )));
    }
    let l2 = (l as f64) * (l as f64);
    let score = |r: usize, t: usize| -> Score {
        let (a, b) = (&fs[r], &gs[t]);
        let cdf_num = cross_energy_from_autocorrelations(&a.acorr, &b.acorr);
        let psc = ((a.adf_num as f64 / l2) * (b.adf_num as f64 / l2)).sqrt() + cdf_num as f64 / l2;
        Score { r, t, cdf_num, psc }
    };

    let best = if product {
        (0..base_len)
            .into_par_iter()
            .map(|r| {
                (0..base_len)
                    .map(|t| score(r, t))
                    .min_by(|a, b| compare(objective, a, b))
                    .expect("nonempty")
            })
            .collect::<Vec<_>>()
            .into_iter()
            .min_by(|a, b| compare(objective, a, b))
    } else {
        (0..base_len)
            .into_par_iter()
            .map(|r| score(r, r))
            .collect::<Vec<_>>()
            .into_iter()
            .min_by(|a, b| compare(objective, a, b))
    }
    .expect("nonempty grid");

    let f = fs[best.r].seq.clone();
    let g = gs[best.t].seq.clone();
    let report = psc(&f, &g)?;
    debug_assert_eq!(report.cdf, Rational::new(best.cdf_num, (l * l) as i128));
    Ok(PairShiftSearch {
        shift_f: best.r,
        shift_g: best.t,
        report,
        f,
        g,
    })
}

/// Pair search over plain cyclic shifts of `f` and `g`.
pub fn pair_shift_search(
    f: &BinarySequence,
    g: &BinarySequence,
    objective: Objective,
    grid: PairGrid,
) -> Result<PairShiftSearch, AnalysisError> {
    if f.len() != g.len() {
        return Err(AnalysisError::InvalidArgument(format!(
            "pair sequences have different lengths {} and {}",
            f.len(),
            g.len()
        )));
    }
    pair_shift_search_with(
        f.len(),
        |r| Ok(cyclic_shift(f, r as i64)),
        |t| Ok(cyclic_shift(g, t as i64)),
        objective,
        grid,
    )
}

/// The value `objective` assigns to an already computed report.
pub fn objective_value(report: &DemeritReport, objective: Objective) -> f64 {
    match objective {
        Objective::Adf => rational_to_f64(&report.adf_f),
        Objective::Cdf => rational_to_f64(&report.cdf),
        Objective::Psc => report.psc.approx,
    }
}
