use rayon::prelude::*;
use serde::Serialize;

use super::AnalysisError;
use crate::corr::{adf_numerator, aperiodic_xcorr, rational_to_f64, Rational};
use crate::rng::SplitMix64;
use crate::sequence::BinarySequence;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineResult {
    pub len: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip)]
    pub mean_adf_exact: Rational,
    #[serde(skip)]
    pub mean_cdf_exact: Rational,
    pub mean_adf: f64,
    pub mean_cdf: f64,
    /// `1 - 1/len`, the expected autocorrelation demerit factor.
    pub expected_adf: f64,
    pub expected_cdf: f64,
}

/// Sample means of ADF(f) and CDF(f, g) over `trials` independent uniform
/// pairs. Trial `i` draws `f` and then `g` from `SplitMix64::for_index(seed, i)`.
///
/// Per-trial numerators are integers summed exactly, so the result is the
/// same for every thread count.
pub fn monte_carlo_baseline(
    len: usize,
    trials: u64,
    seed: u64,
) -> Result<BaselineResult, AnalysisError> {
    if len == 0 {
        return Err(AnalysisError::InvalidArgument(
            "length must be at least 1".into(),
        ));
    }
    if trials == 0 {
        return Err(AnalysisError::InvalidArgument(
            "trials must be at least 1".into(),
        ));
    }
    let (adf_sum, cdf_sum) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = SplitMix64::for_index(seed, i);
            let f = BinarySequence::from_vec_unchecked(rng.signs(len));
            let g = BinarySequence::from_vec_unchecked(rng.signs(len));
            (adf_numerator(&f), aperiodic_xcorr(&f, &g).energy())
        })
        .reduce(|| (0i128, 0i128), |a, b| (a.0 + b.0, a.1 + b.1));
    let denom = (trials as i128) * (len as i128) * (len as i128);
    let mean_adf_exact = Rational::new(adf_sum, denom);
    let mean_cdf_exact = Rational::new(cdf_sum, denom);
    Ok(BaselineResult {
        len,
        trials,
        seed,
        mean_adf: rational_to_f64(&mean_adf_exact),
        mean_cdf: rational_to_f64(&mean_cdf_exact),
        mean_adf_exact,
        mean_cdf_exact,
        expected_adf: 1.0 - 1.0 / len as f64,
        expected_cdf: 1.0,
    })
}
