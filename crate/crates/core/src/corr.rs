//! Correlation spectra, demerit factors and the Pursley-Sarwate criterion.
//!
//! Everything here is exact: correlations are integers and demerit factors are
//! rationals over `i128`. For ±1 sequences of length up to about `10^6` no
//! intermediate value comes near the `i128` range; larger inputs are caught by
//! checked arithmetic and reported as [`CorrError::Overflow`].

use std::cmp::Ordering;
use std::fmt;

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, ToPrimitive, Zero};
use thiserror::Error;

use crate::ntt;
use crate::sequence::BinarySequence;

/// Exact rational number used for every demerit factor.
pub type Rational = Ratio<i128>;

/// Inputs whose length product is at most this use the direct double loop.
const DIRECT_WORK_LIMIT: usize = 64 * 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrError {
    #[error("sequences must have equal length (got {0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("integer overflow in exact demerit arithmetic")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationKind {
    Aperiodic,
    Periodic,
}

/// Correlation values stored densely over the full shift support.
///
/// Aperiodic spectra cover shifts `-(len_g-1) ..= len_f-1`; periodic spectra
/// cover `0 .. len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationSpectrum {
    kind: CorrelationKind,
    len_f: usize,
    len_g: usize,
    values: Vec<i64>,
}

impl CorrelationSpectrum {
    pub fn kind(&self) -> CorrelationKind {
        self.kind
    }

    pub fn len_f(&self) -> usize {
        self.len_f
    }

    pub fn len_g(&self) -> usize {
        self.len_g
    }

    pub fn min_shift(&self) -> i64 {
        match self.kind {
            CorrelationKind::Aperiodic => -(self.len_g as i64 - 1),
            CorrelationKind::Periodic => 0,
        }
    }

    pub fn max_shift(&self) -> i64 {
        match self.kind {
            CorrelationKind::Aperiodic => self.len_f as i64 - 1,
            CorrelationKind::Periodic => self.len_f as i64 - 1,
        }
    }

    /// Value at shift `s`. Aperiodic spectra are zero outside their support;
    /// periodic spectra are read modulo the length.
    pub fn get(&self, s: i64) -> i64 {
        match self.kind {
            CorrelationKind::Aperiodic => {
                if s < self.min_shift() || s > self.max_shift() {
                    0
                } else {
                    self.values[(s - self.min_shift()) as usize]
                }
            }
            CorrelationKind::Periodic => self.values[s.rem_euclid(self.len_f as i64) as usize],
        }
    }

    /// Values in increasing shift order, starting at [`Self::min_shift`].
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let base = self.min_shift();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (base + i as i64, v))
    }

    /// Sum of squared values over the whole support.
    pub fn energy(&self) -> i128 {
        self.values.iter().map(|&v| (v as i128) * (v as i128)).sum()
    }
}

fn as_i64(seq: &BinarySequence) -> Vec<i64> {
    seq.iter().map(i64::from).collect()
}

/// Reference aperiodic crosscorrelation by direct summation, `O(len_f * len_g)`.
pub fn aperiodic_xcorr_direct(f: &BinarySequence, g: &BinarySequence) -> CorrelationSpectrum {
    let (lf, lg) = (f.len(), g.len());
    let mut values = vec![0i64; lf + lg - 1];
    let (ft, gt) = (f.terms(), g.terms());
    for (i, &fi) in ft.iter().enumerate() {
        for (j, &gj) in gt.iter().enumerate() {
            // shift s = i - j lives at index s + lg - 1
            values[i + lg - 1 - j] += (fi * gj) as i64;
        }
    }
    CorrelationSpectrum {
        kind: CorrelationKind::Aperiodic,
        len_f: lf,
        len_g: lg,
        values,
    }
}

/// Aperiodic crosscorrelation through exact transform-domain convolution.
pub fn aperiodic_xcorr_ntt(f: &BinarySequence, g: &BinarySequence) -> CorrelationSpectrum {
    let fa = as_i64(f);
    let mut gr = as_i64(g);
    gr.reverse();
    CorrelationSpectrum {
        kind: CorrelationKind::Aperiodic,
        len_f: f.len(),
        len_g: g.len(),
        values: ntt::convolve(&fa, &gr),
    }
}

/// Aperiodic crosscorrelation `C_{f,g}(s) = sum_j f_{j+s} g_j`.
///
/// Lengths may differ. Short inputs are summed directly, longer ones go
/// through [`aperiodic_xcorr_ntt`]; both paths return identical integers.
pub fn aperiodic_xcorr(f: &BinarySequence, g: &BinarySequence) -> CorrelationSpectrum {
    if f.len() * g.len() <= DIRECT_WORK_LIMIT {
        aperiodic_xcorr_direct(f, g)
    } else {
        aperiodic_xcorr_ntt(f, g)
    }
}

pub fn autocorrelation(f: &BinarySequence) -> CorrelationSpectrum {
    aperiodic_xcorr(f, f)
}

/// Periodic crosscorrelation `PC_{f,g}(s) = sum_{j mod l} f_{j+s} g_j` for `s` in `0..l`.
pub fn periodic_xcorr(
    f: &BinarySequence,
    g: &BinarySequence,
) -> Result<CorrelationSpectrum, CorrError> {
    let l = check_equal(f, g)?;
    let (ft, gt) = (f.terms(), g.terms());
    let values = (0..l)
        .map(|s| {
            (0..l)
                .map(|j| (ft[(j + s) % l] * gt[j]) as i64)
                .sum::<i64>()
        })
        .collect();
    Ok(CorrelationSpectrum {
        kind: CorrelationKind::Periodic,
        len_f: l,
        len_g: l,
        values,
    })
}

fn check_equal(f: &BinarySequence, g: &BinarySequence) -> Result<usize, CorrError> {
    if f.len() == g.len() {
        Ok(f.len())
    } else {
        Err(CorrError::LengthMismatch(f.len(), g.len()))
    }
}

fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// Numerator of the autocorrelation demerit factor over the denominator `l^2`:
/// `sum_{s != 0} C_{f,f}(s)^2`.
pub fn adf_numerator(f: &BinarySequence) -> i128 {
    let l = f.len() as i128;
    autocorrelation(f).energy() - l * l
}

/// Autocorrelation demerit factor `sum_{s != 0} C_{f,f}(s)^2 / C_{f,f}(0)^2`.
pub fn adf(f: &BinarySequence) -> Rational {
    let l = f.len() as i128;
    ratio(adf_numerator(f), l * l)
}

/// Crosscorrelation demerit factor `sum_s C_{f,g}(s)^2 / (C_{f,f}(0) C_{g,g}(0))`.
///
/// Symmetric in its arguments; defined for unequal lengths as well.
pub fn cdf_any(f: &BinarySequence, g: &BinarySequence) -> Rational {
    ratio(
        aperiodic_xcorr(f, g).energy(),
        f.len() as i128 * g.len() as i128,
    )
}

/// Crosscorrelation demerit factor of an equal-length pair.
pub fn cdf(f: &BinarySequence, g: &BinarySequence) -> Result<Rational, CorrError> {
    check_equal(f, g)?;
    Ok(cdf_any(f, g))
}

/// `sum_s C_{f,g}(s)^2` computed from the two autocorrelations alone, using
/// `sum_s |C_{f,g}(s)|^2 = sum_s C_{f,f}(s) C_{g,g}(s)`.
pub fn cross_energy_from_autocorrelations(
    af: &CorrelationSpectrum,
    ag: &CorrelationSpectrum,
) -> i128 {
    af.iter().map(|(s, v)| v as i128 * ag.get(s) as i128).sum()
}

/// Autocorrelation demerit factor through the `L^4` norm: `||f||_4^4 / ||f||_2^4 - 1`.
///
/// `||f||_4^4` is evaluated as the squared `L^2` norm of the polynomial
/// square `f(z)^2`, a self-convolution rather than a correlation.
pub fn l4l2_adf(f: &BinarySequence) -> Rational {
    let a = as_i64(f);
    let square = if a.len() * a.len() <= DIRECT_WORK_LIMIT {
        let mut out = vec![0i64; 2 * a.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in a.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    } else {
        ntt::convolve(&a, &a)
    };
    let l4 = square.iter().map(|&c| c as i128 * c as i128).sum::<i128>();
    let l2 = f.len() as i128;
    ratio(l4, l2 * l2) - Rational::from_integer(1)
}

/// The Pursley-Sarwate criterion `sqrt(ADF(f) ADF(g)) + CDF(f,g)`.
///
/// `exact` is present whenever `ADF(f) ADF(g)` is the square of a rational.
#[derive(Debug, Clone, PartialEq)]
pub struct Psc {
    pub exact: Option<Rational>,
    pub approx: f64,
}

impl fmt::Display for Psc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{:.15}", self.approx),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemeritReport {
    pub adf_f: Rational,
    pub adf_g: Rational,
    pub cdf: Rational,
    pub psc: Psc,
}

impl DemeritReport {
    /// Exact comparison of the criterion against 1, without square roots.
    ///
    /// `sqrt(P) + c` versus 1: if `c >= 1` the answer follows from `P >= 0`,
    /// otherwise compare `P` with `(1 - c)^2`.
    pub fn psc_cmp_one(&self) -> Ordering {
        let one = Rational::from_integer(1);
        let product = self.adf_f * self.adf_g;
        if self.cdf > one {
            return Ordering::Greater;
        }
        if self.cdf == one {
            return if product.is_zero() {
                Ordering::Equal
            } else {
                Ordering::Greater
            };
        }
        let gap = one - self.cdf;
        product.cmp(&(gap * gap))
    }

    /// `1 - sqrt(ADF(f) ADF(g)) <= CDF <= 1 + sqrt(ADF(f) ADF(g))`, checked exactly.
    pub fn satisfies_sarwate_bound(&self) -> bool {
        let one = Rational::from_integer(1);
        let product = self.adf_f * self.adf_g;
        let gap = self.cdf - one;
        gap * gap <= product
    }
}

fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if *r.numer() < 0 {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (n * n == *r.numer() && d * d == *r.denom()).then(|| Rational::new(n, d))
}

fn to_f64(r: &Rational) -> f64 {
    // Split to keep precision when numerator and denominator are both huge.
    let int = r.numer() / r.denom();
    let frac = Rational::new(r.numer() % r.denom(), *r.denom());
    int as f64 + frac.to_f64().unwrap_or(f64::NAN)
}

/// Floating value of an exact rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    to_f64(r)
}

/// Builds a [`DemeritReport`] from already computed demerit factors.
pub fn demerit_report(
    adf_f: Rational,
    adf_g: Rational,
    cdf: Rational,
) -> Result<DemeritReport, CorrError> {
    let product = adf_f.checked_mul(&adf_g).ok_or(CorrError::Overflow)?;
    let root = exact_sqrt(&product);
    let exact = match root {
        Some(r) => Some(r.checked_add(&cdf).ok_or(CorrError::Overflow)?),
        None => None,
    };
    let approx = match &exact {
        Some(e) => to_f64(e),
        None => (to_f64(&adf_f) * to_f64(&adf_g)).sqrt() + to_f64(&cdf),
    };
    Ok(DemeritReport {
        adf_f,
        adf_g,
        cdf,
        psc: Psc { exact, approx },
    })
}

/// All demerit factors of an equal-length pair.
pub fn psc(f: &BinarySequence, g: &BinarySequence) -> Result<DemeritReport, CorrError> {
    let c = cdf(f, g)?;
    demerit_report(adf(f), adf(g), c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> BinarySequence {
        s.parse().unwrap()
    }

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn aperiodic_examples() {
        let one = seq("+");
        let c = aperiodic_xcorr(&one, &one);
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![(0, 1)]);

        let c = aperiodic_xcorr(&seq("++"), &seq("+-"));
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![(-1, -1), (0, 0), (1, 1)]);

        let c = autocorrelation(&seq("+++-"));
        let expected = [(-3, -1), (-2, 0), (-1, 1), (0, 4), (1, 1), (2, 0), (3, -1)];
        assert_eq!(c.iter().collect::<Vec<_>>(), expected);
        assert_eq!(c.get(7), 0);
        assert_eq!(c.get(-4), 0);
    }

    #[test]
    fn unequal_lengths_supported() {
        let f = seq("+-++-");
        let g = seq("-+");
        let c = aperiodic_xcorr(&f, &g);
        assert_eq!(c.min_shift(), -1);
        assert_eq!(c.max_shift(), 4);
        // s = -1: f_0 g_1 = (+1)(+1)
        assert_eq!(c.get(-1), 1);
        assert!(cdf(&f, &g).is_err());
        assert_eq!(cdf_any(&f, &g), cdf_any(&g, &f));
    }

    #[test]
    fn periodic_examples() {
        let one = seq("+");
        assert_eq!(periodic_xcorr(&one, &one).unwrap().values(), &[1]);

        let h = seq("+++-+--");
        let pc = periodic_xcorr(&h, &h).unwrap();
        assert_eq!(pc.values(), &[7, -1, -1, -1, -1, -1, -1]);
        assert_eq!(
            periodic_xcorr(&h, &seq("++")),
            Err(CorrError::LengthMismatch(7, 2))
        );
    }

    #[test]
    fn adf_examples() {
        assert_eq!(adf(&seq("+")), r(0, 1));
        assert_eq!(adf(&seq("+++-")), r(1, 4));
        assert_eq!(adf(&seq("++++")), r(7, 4));
        assert_eq!(l4l2_adf(&seq("+")), r(0, 1));
        assert_eq!(l4l2_adf(&seq("+++-")), r(1, 4));
    }

    #[test]
    fn constant_alternating_family_closed_forms() {
        // Brute force gives (l-1)(2l-1)/(3l) for the autocorrelation demerit
        // factor of both sequences and 1/l for their crosscorrelation.
        for l in (2..=40i128).step_by(2) {
            let f = BinarySequence::ones(l as usize);
            let g = BinarySequence::from_signs((0..l).map(|j| if j % 2 == 0 { 1 } else { -1 }))
                .unwrap();
            assert_eq!(adf(&f), r((l - 1) * (2 * l - 1), 3 * l));
            assert_eq!(adf(&g), adf(&f));
            assert_eq!(cdf(&f, &g).unwrap(), r(1, l));
        }
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(cdf(&seq("+"), &seq("+")).unwrap(), r(1, 1));
        assert_eq!(cdf(&seq("++++"), &seq("+-+-")).unwrap(), r(1, 4));
        assert_eq!(cdf(&seq("++"), &seq("+-")).unwrap(), r(1, 2));
    }

    #[test]
    fn psc_examples() {
        let rep = psc(&seq("++"), &seq("+-")).unwrap();
        assert_eq!(rep.adf_f, r(1, 2));
        assert_eq!(rep.adf_g, r(1, 2));
        assert_eq!(rep.cdf, r(1, 2));
        assert_eq!(rep.psc.exact, Some(r(1, 1)));
        assert_eq!(rep.psc_cmp_one(), Ordering::Equal);

        let rep = psc(&seq("++"), &seq("++")).unwrap();
        assert_eq!(rep.cdf, r(3, 2));
        assert_eq!(rep.psc.exact, Some(r(2, 1)));

        assert_eq!(
            psc(&seq("+"), &seq("++")),
            Err(CorrError::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn irrational_psc_has_float_only() {
        // ADF(+++) = 10/9 and ADF(++-) = 2/9; their product 20/81 is not a square.
        let f = seq("+++");
        let g = seq("++-");
        let rep = psc(&f, &g).unwrap();
        assert_eq!(rep.adf_f, r(10, 9));
        assert_eq!(rep.adf_g, r(2, 9));
        assert!(rep.psc.exact.is_none());
        let expected = (20.0f64 / 81.0).sqrt() + rational_to_f64(&rep.cdf);
        assert!((rep.psc.approx - expected).abs() < 1e-15);
        assert!(rep.satisfies_sarwate_bound());
        assert_eq!(rep.psc_cmp_one(), Ordering::Greater);
    }

    #[test]
    fn cross_energy_identity() {
        let f = seq("+-++--+-+++");
        let g = seq("--+-+++-++-");
        let lhs = aperiodic_xcorr(&f, &g).energy();
        let rhs = cross_energy_from_autocorrelations(&autocorrelation(&f), &autocorrelation(&g));
        assert_eq!(lhs, rhs);
    }
}
