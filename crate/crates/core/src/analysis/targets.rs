//! Asymptotic reference values, including the ones defined as cubic roots.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::AnalysisError;
use crate::corr::{rational_to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootSelector {
    SmallestReal,
    MiddleReal,
    LargestReal,
}

impl fmt::Display for RootSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootSelector::SmallestReal => "smallest_real",
            RootSelector::MiddleReal => "middle_real",
            RootSelector::LargestReal => "largest_real",
        })
    }
}

/// Evaluates `c3 x^3 + c2 x^2 + c1 x + c0` by Horner's rule.
pub fn eval_cubic(coeffs: [i64; 4], x: f64) -> f64 {
    let [c3, c2, c1, c0] = coeffs.map(|c| c as f64);
    ((c3 * x + c2) * x + c1) * x + c0
}

/// Bisects `[lo, hi]` where the cubic changes sign (or vanishes at an end)
/// until the bracket cannot shrink further in `f64`.
fn bisect(coeffs: [i64; 4], mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = eval_cubic(coeffs, lo);
    if f_lo == 0.0 {
        return lo;
    }
    if eval_cubic(coeffs, hi) == 0.0 {
        return hi;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = eval_cubic(coeffs, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    if eval_cubic(coeffs, lo).abs() <= eval_cubic(coeffs, hi).abs() {
        lo
    } else {
        hi
    }
}

/// Distinct real roots of a cubic in increasing order.
///
/// The critical points split the line into monotone pieces; each piece that
/// changes sign holds exactly one root, found by bisection. The outer pieces
/// are capped by the Cauchy bound `1 + max |c_i / c_3|`.
pub fn cubic_real_roots(coeffs: [i64; 4]) -> Result<Vec<f64>, AnalysisError> {
    let [c3, c2, c1, c0] = coeffs;
    if c3 == 0 {
        return Err(AnalysisError::InvalidArgument(
            "leading coefficient must be nonzero".into(),
        ));
    }
    let bound = 1.0
        + [c2, c1, c0]
            .iter()
            .map(|&c| (c as f64 / c3 as f64).abs())
            .fold(0.0, f64::max);

    // derivative 3 c3 x^2 + 2 c2 x + c1
    let (a, b, c) = (3.0 * c3 as f64, 2.0 * c2 as f64, c1 as f64);
    let disc = b * b - 4.0 * a * c;
    let mut breaks = vec![-bound];
    if disc > 0.0 {
        let sq = disc.sqrt();
        let mut crit = [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)];
        crit.sort_by(|x, y| x.total_cmp(y));
        breaks.extend(crit);
    }
    breaks.push(bound);

    let mut roots: Vec<f64> = Vec::new();
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (f_lo, f_hi) = (eval_cubic(coeffs, lo), eval_cubic(coeffs, hi));
        if f_lo == 0.0 || f_hi == 0.0 || (f_lo < 0.0) != (f_hi < 0.0) {
            let r = bisect(coeffs, lo, hi);
            if roots.last().is_none_or(|&prev| (r - prev).abs() > 1e-12) {
                roots.push(r);
            }
        }
    }
    Ok(roots)
}

/// Selected real root of `c3 x^3 + c2 x^2 + c1 x + c0`.
pub fn cubic_root(
    c3: i64,
    c2: i64,
    c1: i64,
    c0: i64,
    selector: RootSelector,
) -> Result<f64, AnalysisError> {
    let roots = cubic_real_roots([c3, c2, c1, c0])?;
    match selector {
        RootSelector::SmallestReal => roots.first().copied(),
        RootSelector::LargestReal => roots.last().copied(),
        RootSelector::MiddleReal => (roots.len() == 3).then(|| roots[1]),
    }
    .ok_or_else(|| {
        AnalysisError::InvalidArgument(format!(
            "cubic ({c3}, {c2}, {c1}, {c0}) has {} real root(s); {selector} unavailable",
            roots.len()
        ))
    })
}

/// Renders a cubic as text, e.g. `4x^3 - 30x + 27`.
pub fn format_cubic(coeffs: [i64; 4]) -> String {
    let mut out = String::new();
    for (c, power) in coeffs.into_iter().zip([3, 2, 1, 0]) {
        if c == 0 {
            continue;
        }
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let mag = c.unsigned_abs();
        if mag != 1 || power == 0 {
            out.push_str(&mag.to_string());
        }
        match power {
            0 => {}
            1 => out.push('x'),
            p => out.push_str(&format!("x^{p}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum TargetDefinition {
    Literal,
    Exact {
        numer: i128,
        denom: i128,
    },
    Cubic {
        coeffs: [i64; 4],
        selector: RootSelector,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticTarget {
    pub name: String,
    pub value: f64,
    pub definition: TargetDefinition,
}

impl AsymptoticTarget {
    pub fn exact(name: &str, numer: i128, denom: i128) -> Self {
        AsymptoticTarget {
            name: name.to_string(),
            value: rational_to_f64(&Rational::new(numer, denom)),
            definition: TargetDefinition::Exact { numer, denom },
        }
    }

    pub fn cubic(name: &str, coeffs: [i64; 4], selector: RootSelector) -> Self {
        let [c3, c2, c1, c0] = coeffs;
        let value = cubic_root(c3, c2, c1, c0, selector).expect("shipped cubics have the root");
        AsymptoticTarget {
            name: name.to_string(),
            value,
            definition: TargetDefinition::Cubic { coeffs, selector },
        }
    }

    /// A bare numeric target given on the command line.
    pub fn literal(value: f64) -> Self {
        AsymptoticTarget {
            name: format!("{value}"),
            value,
            definition: TargetDefinition::Literal,
        }
    }

    /// `|poly(value)|` for cubic targets, 0 for exact ones.
    pub fn residual(&self) -> f64 {
        match self.definition {
            TargetDefinition::Cubic { coeffs, .. } => eval_cubic(coeffs, self.value).abs(),
            TargetDefinition::Exact { .. } | TargetDefinition::Literal => 0.0,
        }
    }

    pub fn describe(&self) -> String {
        match &self.definition {
            TargetDefinition::Literal => "literal".to_string(),
            TargetDefinition::Exact { numer, denom } => Rational::new(*numer, *denom).to_string(),
            TargetDefinition::Cubic { coeffs, selector } => {
                format!("{selector} root of {}", format_cubic(*coeffs))
            }
        }
    }
}

/// Every named target known to the tool.
pub fn shipped_targets() -> Vec<AsymptoticTarget> {
    use RootSelector::*;
    vec![
        AsymptoticTarget::exact("rudin_shapiro", 1, 3),
        AsymptoticTarget::exact("mseq", 1, 3),
        AsymptoticTarget::cubic("mseq_appended", [3, -33, 33, -7], SmallestReal),
        AsymptoticTarget::cubic("mseq_append_ratio", [1, 0, -12, 12], MiddleReal),
        AsymptoticTarget::exact("legendre_shifted", 1, 6),
        AsymptoticTarget::cubic("legendre_appended", [27, -417, 249, -29], SmallestReal),
        AsymptoticTarget::cubic("legendre_append_ratio", [4, 0, -30, 27], MiddleReal),
        AsymptoticTarget::cubic("quartic_pair_append_ratio", [4, -36, 60, -27], MiddleReal),
        AsymptoticTarget::exact("random_cdf", 1, 1),
        AsymptoticTarget::exact("typical_mseq_psc", 4, 3),
        AsymptoticTarget::exact("reversing_mseq_cdf", 5, 6),
        AsymptoticTarget::exact("half_legendre_df", 7, 12),
        AsymptoticTarget::exact("low_psc", 7, 6),
        AsymptoticTarget::exact("rsl_pair_psc", 331, 300),
        AsymptoticTarget::exact("golay_psc", 1, 1),
        AsymptoticTarget::exact("golay_cdf", 2, 3),
    ]
}

pub fn named_target(name: &str) -> Option<AsymptoticTarget> {
    shipped_targets().into_iter().find(|t| t.name == name)
}

impl FromStr for AsymptoticTarget {
    type Err = AnalysisError;

    /// A shipped target name or a fraction `a/b`; anything else must be a decimal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(t) = named_target(s) {
            return Ok(t);
        }
        if let Some((n, d)) = s.split_once('/') {
            let (n, d): (i128, i128) = n
                .trim()
                .parse()
                .ok()
                .zip(d.trim().parse().ok())
                .filter(|&(_, d)| d != 0)
                .ok_or_else(|| AnalysisError::InvalidArgument(format!("bad fraction {s:?}")))?;
            return Ok(AsymptoticTarget::exact(s, n, d));
        }
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(AsymptoticTarget::literal)
            .ok_or_else(|| AnalysisError::InvalidArgument(format!("unknown target {s:?}")))
    }
}
