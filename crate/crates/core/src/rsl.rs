//! Rudin-Shapiro-like recursion, Golay complementary pairs and optimal seeds.
//!
//! A stem starts from a seed `f_0` and a sign sequence `sigma_0, sigma_1, ...`:
//!
//! ```text
//! f_{n+1}(z) = f_n(z) + sigma_n z^(deg f_n + 1) f_n*(-z)
//! ```
//!
//! where `f*` is the coefficient reversal. A seed longer than one term is
//! optimal exactly when it interleaves a Golay complementary pair.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::corr::{autocorrelation, CorrError};
use crate::rng::SplitMix64;
use crate::sequence::{parse_pair, BinarySequence, SequenceError};

/// Largest stem term allowed by [`rsl_stem`].
pub const MAX_STEM_LEN: usize = 1 << 24;
/// Largest seed length [`search_optimal_seeds`] will enumerate.
pub const MAX_SEED_SEARCH_LEN: u32 = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RslError {
    #[error("depth {depth} needs {depth} signs but only {available} were given")]
    NotEnoughSigns { depth: usize, available: usize },
    #[error("stem length {0} exceeds the limit of 2^24 terms")]
    StemTooLong(usize),
    #[error("sequences must have equal length (got {0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("cannot deinterleave a sequence of odd length {0}")]
    OddLength(usize),
    #[error("sign values must be +1 or -1 (got {0})")]
    InvalidSign(i64),
    #[error("seed search length {0} exceeds the exhaustive budget of {max}", max = MAX_SEED_SEARCH_LEN)]
    SearchBudget(u32),
    #[error("pair is not a Golay complementary pair")]
    NotGolay,
    #[error("no composition variant produced a certified Golay pair")]
    CompositionFailed,
    #[error("no Golay pair of length {0} is available")]
    Unavailable(usize),
    #[error("no built-in Golay pair construction for length {0} (needs 2^a 10^b 26^c)")]
    UnsupportedLength(usize),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

impl From<CorrError> for RslError {
    fn from(e: CorrError) -> Self {
        match e {
            CorrError::LengthMismatch(a, b) => RslError::LengthMismatch(a, b),
            CorrError::Overflow => unreachable!("correlation of binary sequences cannot overflow"),
        }
    }
}

/// Initial polynomial `f_0` of a Rudin-Shapiro-like stem.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed(pub BinarySequence);

impl Seed {
    pub fn sequence(&self) -> &BinarySequence {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl From<BinarySequence> for Seed {
    fn from(s: BinarySequence) -> Self {
        Seed(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignSequence(Vec<i8>);

impl SignSequence {
    pub fn new(signs: Vec<i8>) -> Result<Self, RslError> {
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(RslError::InvalidSign(bad as i64));
        }
        Ok(SignSequence(signs))
    }

    pub fn all_plus(len: usize) -> Self {
        SignSequence(vec![1; len])
    }

    /// Signs reproducing the classical Rudin-Shapiro polynomials,
    /// `sigma_n = (-1)^(2^n + n - 1)`.
    pub fn rudin_shapiro(len: usize) -> Self {
        SignSequence(
            (0..len)
                .map(|n| {
                    // 2^n is odd only for n = 0, where the exponent is 0.
                    let exponent = n.saturating_sub(1);
                    if exponent % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .collect(),
        )
    }

    pub fn random(len: usize, rng: &mut SplitMix64) -> Self {
        SignSequence(rng.signs(len))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        SignSequence(self.0.iter().map(|s| -s).collect())
    }
}

/// One step of the recursion: appends `sigma * (-1)^j * f_{L-1-j}` for `j < L`.
fn rsl_step(f: &BinarySequence, sign: i8) -> BinarySequence {
    let t = f.terms();
    let len = t.len();
    let mut out = Vec::with_capacity(2 * len);
    out.extend_from_slice(t);
    out.extend((0..len).map(|j| {
        let alt = if j % 2 == 0 { 1 } else { -1 };
        sign * alt * t[len - 1 - j]
    }));
    BinarySequence::from_vec_unchecked(out)
}

/// Stem `f_0, ..., f_depth`; `f_n` has length `seed.len() * 2^n`.
pub fn rsl_stem(
    seed: &Seed,
    signs: &SignSequence,
    depth: usize,
) -> Result<Vec<BinarySequence>, RslError> {
    if depth > signs.len() {
        return Err(RslError::NotEnoughSigns {
            depth,
            available: signs.len(),
        });
    }
    let final_len = seed
        .len()
        .checked_shl(depth as u32)
        .filter(|&l| l >> depth == seed.len())
        .unwrap_or(usize::MAX);
    if final_len > MAX_STEM_LEN {
        return Err(RslError::StemTooLong(final_len));
    }
    let mut stem = Vec::with_capacity(depth + 1);
    stem.push(seed.0.clone());
    for &sign in &signs.signs()[..depth] {
        let next = rsl_step(stem.last().unwrap(), sign);
        stem.push(next);
    }
    Ok(stem)
}

/// Paired stems from two seeds grown with one shared sign sequence.
pub fn rsl_pair_stems(
    seed_f: &Seed,
    seed_g: &Seed,
    signs: &SignSequence,
    depth: usize,
) -> Result<Vec<(BinarySequence, BinarySequence)>, RslError> {
    if seed_f.len() != seed_g.len() {
        return Err(RslError::LengthMismatch(seed_f.len(), seed_g.len()));
    }
    let f = rsl_stem(seed_f, signs, depth)?;
    let g = rsl_stem(seed_g, signs, depth)?;
    Ok(f.into_iter().zip(g).collect())
}

/// True when the autocorrelations of `a` and `b` cancel at every nonzero shift.
pub fn is_golay_pair(a: &BinarySequence, b: &BinarySequence) -> Result<bool, RslError> {
    if a.len() != b.len() {
        return Err(RslError::LengthMismatch(a.len(), b.len()));
    }
    let ca = autocorrelation(a);
    let cb = autocorrelation(b);
    let cancels = ca
        .iter()
        .zip(cb.values())
        .all(|((s, x), y)| s == 0 || x + y == 0);
    Ok(cancels)
}

/// `(a_0, b_0, a_1, b_1, ...)`, i.e. `a(z^2) + z b(z^2)`.
pub fn interleave(a: &BinarySequence, b: &BinarySequence) -> Result<BinarySequence, RslError> {
    if a.len() != b.len() {
        return Err(RslError::LengthMismatch(a.len(), b.len()));
    }
    Ok(BinarySequence::from_vec_unchecked(
        a.iter().zip(b.iter()).flat_map(|(x, y)| [x, y]).collect(),
    ))
}

pub fn deinterleave(s: &BinarySequence) -> Result<(BinarySequence, BinarySequence), RslError> {
    if !s.len().is_multiple_of(2) {
        return Err(RslError::OddLength(s.len()));
    }
    let t = s.terms();
    let even = t.iter().step_by(2).copied().collect();
    let odd = t.iter().skip(1).step_by(2).copied().collect();
    Ok((
        BinarySequence::from_vec_unchecked(even),
        BinarySequence::from_vec_unchecked(odd),
    ))
}

/// Length 1 seeds are optimal; longer ones iff they interleave a Golay pair.
pub fn is_optimal_seed(seed: &Seed) -> bool {
    match seed.len() {
        1 => true,
        n if n % 2 == 1 => false,
        _ => {
            let (a, b) = deinterleave(&seed.0).expect("even length");
            is_golay_pair(&a, &b).expect("halves have equal length")
        }
    }
}

/// `C(s)` of an `n`-term sequence packed into a mask (set bit = -1), for `0 < s < n`.
#[inline]
fn packed_autocorr(x: u32, n: u32, s: u32) -> i32 {
    let overlap = n - s;
    let window = if overlap >= 32 {
        u32::MAX
    } else {
        (1 << overlap) - 1
    };
    overlap as i32 - 2 * ((x ^ (x >> s)) & window).count_ones() as i32
}

fn packed_is_golay(a: u32, b: u32, n: u32) -> bool {
    (1..n).all(|s| packed_autocorr(a, n, s) + packed_autocorr(b, n, s) == 0)
}

/// Splits a seed mask into its even- and odd-indexed halves.
fn split_mask(mask: u64, half: u32) -> (u32, u32) {
    let (mut even, mut odd) = (0u32, 0u32);
    for i in 0..half {
        even |= (((mask >> (2 * i)) & 1) as u32) << i;
        odd |= (((mask >> (2 * i + 1)) & 1) as u32) << i;
    }
    (even, odd)
}

fn mask_is_optimal(mask: u64, len: u32) -> bool {
    match len {
        1 => true,
        n if n % 2 == 1 => false,
        n => {
            let (a, b) = split_mask(mask, n / 2);
            packed_is_golay(a, b, n / 2)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedCensus {
    pub length: u32,
    pub count: u64,
    /// Up to ten optimal seeds, in increasing mask order.
    pub exemplars: Vec<BinarySequence>,
}

const EXEMPLAR_LIMIT: usize = 10;

/// Counts optimal seeds of length `len` by enumerating all `2^len` sign masks
/// (bit `j` set means term `j` is -1).
pub fn search_optimal_seeds(len: u32) -> Result<SeedCensus, RslError> {
    if len == 0 || len > MAX_SEED_SEARCH_LEN {
        return Err(RslError::SearchBudget(len));
    }
    let total = 1u64 << len;
    let chunk = 1u64 << len.min(12);
    let parts: Vec<(u64, Vec<u64>)> = (0..total / chunk)
        .into_par_iter()
        .map(|c| {
            let mut count = 0u64;
            let mut first = Vec::new();
            for mask in c * chunk..(c + 1) * chunk {
                if mask_is_optimal(mask, len) {
                    count += 1;
                    if first.len() < EXEMPLAR_LIMIT {
                        first.push(mask);
                    }
                }
            }
            (count, first)
        })
        .collect();
    let count = parts.iter().map(|(c, _)| c).sum();
    let exemplars = parts
        .into_iter()
        .flat_map(|(_, m)| m)
        .take(EXEMPLAR_LIMIT)
        .map(|m| BinarySequence::from_mask(m, len as usize).expect("positive length"))
        .collect();
    Ok(SeedCensus {
        length: len,
        count,
        exemplars,
    })
}

/// Two equal-length sequences plus whether they were verified complementary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GolayPair {
    a: BinarySequence,
    b: BinarySequence,
    certified: bool,
}

impl GolayPair {
    /// Runs the Golay check and records its outcome.
    pub fn new(a: BinarySequence, b: BinarySequence) -> Result<Self, RslError> {
        let certified = is_golay_pair(&a, &b)?;
        Ok(GolayPair { a, b, certified })
    }

    /// Like [`GolayPair::new`] but fails unless the pair is complementary.
    pub fn certify(a: BinarySequence, b: BinarySequence) -> Result<Self, RslError> {
        let pair = Self::new(a, b)?;
        if pair.certified {
            Ok(pair)
        } else {
            Err(RslError::NotGolay)
        }
    }

    pub fn a(&self) -> &BinarySequence {
        &self.a
    }

    pub fn b(&self) -> &BinarySequence {
        &self.b
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_parts(self) -> (BinarySequence, BinarySequence) {
        (self.a, self.b)
    }

    /// Parses and certifies a pair in the two-line text format.
    pub fn from_text(text: &str) -> Result<Self, RslError> {
        let (a, b) = parse_pair(text)?;
        Self::certify(a, b)
    }
}

impl fmt::Display for GolayPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.a)?;
        writeln!(f, "{}", self.b)
    }
}

/// Which of the composition layouts to try; see [`golay_compose`].
#[derive(Debug, Clone, Copy)]
enum Composition {
    /// F = A P + B Q, G = B* P - A* Q
    Reversed,
    /// F = A P + B Q, G = A* Q - B* P
    ReversedNegated,
    /// F = A P - B Q, G = B* P + A* Q
    ReversedAlt,
    /// F = A P + B Q, G = B P - A Q
    Plain,
}

const COMPOSITIONS: [Composition; 4] = [
    Composition::Reversed,
    Composition::ReversedNegated,
    Composition::ReversedAlt,
    Composition::Plain,
];

/// `X(z^n) P(z) + Y(z^n) Q(z)` where at each inner position exactly one of
/// `P_j`, `Q_j` is nonzero.
fn tensor(x: &[i8], y: &[i8], p: &[i8], q: &[i8]) -> BinarySequence {
    let mut out = Vec::with_capacity(x.len() * p.len());
    for (xi, yi) in x.iter().zip(y) {
        for (pj, qj) in p.iter().zip(q) {
            out.push(xi * pj + yi * qj);
        }
    }
    BinarySequence::from_vec_unchecked(out)
}

/// Composes certified pairs of lengths `m` and `n` into a certified pair of length `m n`.
///
/// With `(A, B)` the outer pair, `(C, D)` the inner pair, `P = (C + D)/2` and
/// `Q = (C - D)/2`, the first layout tried is `F = A(z^n) P + B(z^n) Q`,
/// `G = B*(z^n) P - A*(z^n) Q`. Each candidate is re-verified; the first
/// complementary one is returned.
pub fn golay_compose(outer: &GolayPair, inner: &GolayPair) -> Result<GolayPair, RslError> {
    if !outer.certified || !inner.certified {
        return Err(RslError::NotGolay);
    }
    let (a, b) = (outer.a.terms(), outer.b.terms());
    let (c, d) = (inner.a.terms(), inner.b.terms());
    let p: Vec<i8> = c.iter().zip(d).map(|(x, y)| (x + y) / 2).collect();
    let q: Vec<i8> = c.iter().zip(d).map(|(x, y)| (x - y) / 2).collect();
    let neg = |v: &[i8]| v.iter().map(|t| -t).collect::<Vec<i8>>();
    let rev = |v: &[i8]| v.iter().rev().copied().collect::<Vec<i8>>();
    let (ar, br) = (rev(a), rev(b));

    for layout in COMPOSITIONS {
        let (f, g) = match layout {
            Composition::Reversed => (tensor(a, b, &p, &q), tensor(&br, &neg(&ar), &p, &q)),
            Composition::ReversedNegated => (tensor(a, b, &p, &q), tensor(&neg(&br), &ar, &p, &q)),
            Composition::ReversedAlt => (tensor(a, &neg(b), &p, &q), tensor(&br, &ar, &p, &q)),
            Composition::Plain => (tensor(a, b, &p, &q), tensor(b, &neg(a), &p, &q)),
        };
        if is_golay_pair(&f, &g)? {
            return Ok(GolayPair {
                a: f,
                b: g,
                certified: true,
            });
        }
    }
    Err(RslError::CompositionFailed)
}

const GOLAY10_ASSET: &str = include_str!("../data/golay10.txt");
const GOLAY26_ASSET: &str = include_str!("../data/golay26.txt");

/// Certified base pair of length 2, 10 or 26. The longer two are read from
/// the bundled data files and re-certified on every load.
pub fn golay_base(len: usize) -> Result<GolayPair, RslError> {
    match len {
        2 => GolayPair::certify("++".parse()?, "+-".parse()?),
        10 => load_asset(GOLAY10_ASSET, 10),
        26 => load_asset(GOLAY26_ASSET, 26),
        other => Err(RslError::UnsupportedLength(other)),
    }
}

fn load_asset(text: &str, len: usize) -> Result<GolayPair, RslError> {
    match crate::sequence::parse_sequences(text)?.len() {
        0 => Err(RslError::Unavailable(len)),
        _ => {
            let pair = GolayPair::from_text(text)?;
            if pair.len() != len {
                return Err(RslError::LengthMismatch(pair.len(), len));
            }
            Ok(pair)
        }
    }
}

/// Certified Golay pair of length `2^a 10^b 26^c` built by composing base pairs.
/// Length 1 gives the trivial pair `((+), (+))`.
pub fn golay_pair_of_length(len: usize) -> Result<GolayPair, RslError> {
    if len == 0 {
        return Err(RslError::UnsupportedLength(0));
    }
    let mut rest = len;
    let mut factors = Vec::new();
    for base in [26usize, 10, 2] {
        while rest.is_multiple_of(base) {
            factors.push(base);
            rest /= base;
        }
    }
    if rest != 1 {
        return Err(RslError::UnsupportedLength(len));
    }
    let mut acc = GolayPair::certify("+".parse()?, "+".parse()?)?;
    for base in factors {
        acc = golay_compose(&acc, &golay_base(base)?)?;
    }
    Ok(acc)
}

/// Exhaustive Golay pair search of the given length, filling both sequences
/// from the ends inward.
///
/// After positions `0..=t` and `len-1-t..len` are fixed, the correlation sum at
/// shift `len-1-t` is fully determined and must vanish. `a_0 = b_0 = +1` is
/// fixed since negating either sequence preserves the property. Returns the
/// first pair found in a deterministic order, or `None` when none exists.
pub fn search_golay_exhaustive(len: usize) -> Option<GolayPair> {
    if len == 0 {
        return None;
    }
    let mut a = vec![0i8; len];
    let mut b = vec![0i8; len];
    a[0] = 1;
    b[0] = 1;
    if len == 1 {
        return GolayPair::certify(
            BinarySequence::from_vec_unchecked(a),
            BinarySequence::from_vec_unchecked(b),
        )
        .ok();
    }
    if backtrack(&mut a, &mut b, 0, true) {
        GolayPair::certify(
            BinarySequence::from_vec_unchecked(a),
            BinarySequence::from_vec_unchecked(b),
        )
        .ok()
    } else {
        None
    }
}

fn partial_sum(a: &[i8], b: &[i8], s: usize) -> i32 {
    let len = a.len();
    (0..len - s)
        .map(|j| (a[j] * a[j + s] + b[j] * b[j + s]) as i32)
        .sum()
}

/// `t` is the ring index; when `front_fixed` the front position `t` is already set.
fn backtrack(a: &mut [i8], b: &mut [i8], t: usize, front_fixed: bool) -> bool {
    let len = a.len();
    let back = len - 1 - t;
    if t > back {
        return (1..len).all(|s| partial_sum(a, b, s) == 0);
    }
    let front_choices: &[(i8, i8)] = if front_fixed {
        &[(0, 0)]
    } else {
        &[(1, 1), (1, -1), (-1, 1), (-1, -1)]
    };
    for &(fa, fb) in front_choices {
        if !front_fixed {
            a[t] = fa;
            b[t] = fb;
        }
        let back_choices: &[(i8, i8)] = if back == t {
            &[(0, 0)]
        } else {
            &[(1, 1), (1, -1), (-1, 1), (-1, -1)]
        };
        for &(ba, bb) in back_choices {
            if back != t {
                a[back] = ba;
                b[back] = bb;
            }
            // Shift len-1-t only touches positions in the fixed outer rings.
            let s = len - 1 - t;
            if (s == 0 || partial_sum(a, b, s) == 0) && backtrack(a, b, t + 1, false) {
                return true;
            }
        }
    }
    false
}

/// Randomized local search for a Golay pair, minimizing
/// `sum_{s != 0} (C_aa(s) + C_bb(s))^2` by single-term flips with restarts.
pub fn search_golay_random(len: usize, seed: u64, max_flips: u64) -> Option<GolayPair> {
    if len == 0 {
        return None;
    }
    let mut rng = SplitMix64::new(seed);
    let cost = |a: &[i8], b: &[i8]| -> i64 {
        (1..len)
            .map(|s| {
                let v = partial_sum(a, b, s) as i64;
                v * v
            })
            .sum()
    };
    let mut flips = 0u64;
    while flips < max_flips {
        let mut a = rng.signs(len);
        let mut b = rng.signs(len);
        let mut current = cost(&a, &b);
        let mut stale = 0u32;
        while flips < max_flips && stale < 4 * len as u32 {
            if current == 0 {
                return GolayPair::certify(
                    BinarySequence::from_vec_unchecked(a),
                    BinarySequence::from_vec_unchecked(b),
                )
                .ok();
            }
            let pos = rng.below(2 * len as u64) as usize;
            let target: &mut Vec<i8> = if pos < len { &mut a } else { &mut b };
            let idx = pos % len;
            target[idx] = -target[idx];
            flips += 1;
            let candidate = cost(&a, &b);
            if candidate <= current {
                stale = if candidate < current { 0 } else { stale + 1 };
                current = candidate;
            } else {
                let target: &mut Vec<i8> = if pos < len { &mut a } else { &mut b };
                target[idx] = -target[idx];
                stale += 1;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::{adf, cdf, Rational};

    fn seq(s: &str) -> BinarySequence {
        s.parse().unwrap()
    }

    fn closed_form_adf(n: u32) -> Rational {
        let half = Rational::new(-1, 2);
        let mut pow = Rational::from_integer(1);
        for _ in 0..n {
            pow *= half;
        }
        (Rational::from_integer(1) - pow) / Rational::from_integer(3)
    }

    #[test]
    fn stem_examples() {
        let seed = Seed(seq("+"));
        let stem = rsl_stem(&seed, &SignSequence::all_plus(2), 2).unwrap();
        assert_eq!(stem[2].to_string(), "+++-");
        let long = Seed(seq("+-+"));
        let stem = rsl_stem(&long, &SignSequence::all_plus(5), 5).unwrap();
        for (n, f) in stem.iter().enumerate() {
            assert_eq!(f.len(), 3 << n);
        }
        assert_eq!(
            rsl_stem(&seed, &SignSequence::all_plus(2), 3),
            Err(RslError::NotEnoughSigns {
                depth: 3,
                available: 2
            })
        );
        assert_eq!(
            rsl_stem(
                &Seed(BinarySequence::ones(2)),
                &SignSequence::all_plus(30),
                24
            ),
            Err(RslError::StemTooLong(1 << 25))
        );
    }

    #[test]
    fn stem_matches_concatenation_recursion() {
        // f_{n+1} = f_n | g_n, g_{n+1} = f_n | -g_n from f_0 = g_0 = (+).
        let mut f = vec![1i8];
        let mut g = vec![1i8];
        let stem = rsl_stem(&Seed(seq("+")), &SignSequence::rudin_shapiro(8), 8).unwrap();
        for level in stem.iter().skip(1) {
            let nf: Vec<i8> = f.iter().chain(&g).copied().collect();
            let ng: Vec<i8> = f.iter().copied().chain(g.iter().map(|t| -t)).collect();
            f = nf;
            g = ng;
            assert_eq!(level.terms(), &f[..]);
        }
    }

    #[test]
    fn stem_adf_follows_closed_form() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..5 {
            let signs = SignSequence::random(10, &mut rng);
            let stem = rsl_stem(&Seed(seq("+")), &signs, 10).unwrap();
            for (n, f) in stem.iter().enumerate() {
                assert_eq!(adf(f), closed_form_adf(n as u32));
            }
        }
    }

    #[test]
    fn golay_examples() {
        assert!(is_golay_pair(&seq("++"), &seq("+-")).unwrap());
        assert!(!is_golay_pair(&seq("++"), &seq("++")).unwrap());
        assert!(is_golay_pair(&seq("+"), &seq("+")).unwrap());
        assert_eq!(
            is_golay_pair(&seq("+"), &seq("++")),
            Err(RslError::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn interleave_examples() {
        let s = interleave(&seq("+-"), &seq("--")).unwrap();
        assert_eq!(s.to_string(), "+---");
        assert_eq!(deinterleave(&s).unwrap(), (seq("+-"), seq("--")));
        assert_eq!(deinterleave(&seq("+-+")), Err(RslError::OddLength(3)));
        assert!(interleave(&seq("+"), &seq("++")).is_err());
        let seed = interleave(&seq("++"), &seq("+-")).unwrap();
        assert_eq!(seed.len(), 4);
        assert!(is_optimal_seed(&Seed(seed)));
    }

    #[test]
    fn optimal_seed_examples() {
        assert!(is_optimal_seed(&Seed(seq("+"))));
        assert!(is_optimal_seed(&Seed(seq("-"))));
        assert!(is_optimal_seed(&Seed(seq("+++-"))));
        for mask in 0..8 {
            assert!(!is_optimal_seed(&Seed(
                BinarySequence::from_mask(mask, 3).unwrap()
            )));
        }
    }

    #[test]
    fn packed_check_agrees_with_classifier() {
        for len in 1..=10u32 {
            for mask in 0..(1u64 << len) {
                let s = Seed(BinarySequence::from_mask(mask, len as usize).unwrap());
                assert_eq!(mask_is_optimal(mask, len), is_optimal_seed(&s), "{s:?}");
            }
        }
    }

    #[test]
    fn census_small_lengths() {
        assert!(search_optimal_seeds(2).unwrap().count > 0);
        assert_eq!(search_optimal_seeds(3).unwrap().count, 0);
        assert_eq!(search_optimal_seeds(6).unwrap().count, 0);
        let c1 = search_optimal_seeds(1).unwrap();
        assert_eq!(c1.count, 2);
        assert_eq!(c1.exemplars, vec![seq("+"), seq("-")]);
        // All 4 sign choices for each of 2 x 2 pairs of length 1.
        assert_eq!(search_optimal_seeds(2).unwrap().count, 4);
        assert_eq!(search_optimal_seeds(23), Err(RslError::SearchBudget(23)));
        assert_eq!(search_optimal_seeds(0), Err(RslError::SearchBudget(0)));
    }

    #[test]
    fn compose_small_pairs() {
        let two = golay_base(2).unwrap();
        let four = golay_compose(&two, &two).unwrap();
        assert_eq!(four.len(), 4);
        assert!(is_golay_pair(four.a(), four.b()).unwrap());
        let bad = GolayPair::new(seq("++"), seq("++")).unwrap();
        assert!(!bad.certified());
        assert_eq!(golay_compose(&bad, &two), Err(RslError::NotGolay));
    }

    #[test]
    fn exhaustive_search_lengths() {
        for len in [1usize, 2, 4, 8, 10] {
            let pair = search_golay_exhaustive(len).expect("pair exists");
            assert_eq!(pair.len(), len);
            assert!(pair.certified());
        }
        for len in [3usize, 5, 6, 7, 9] {
            assert!(search_golay_exhaustive(len).is_none(), "len {len}");
        }
    }

    #[test]
    fn random_search_finds_short_pairs() {
        let pair = search_golay_random(8, 3, 200_000).expect("length 8 pairs are plentiful");
        assert!(pair.certified());
        assert!(search_golay_random(3, 3, 2_000).is_none());
    }

    #[test]
    fn pair_stems_examples() {
        let signs = SignSequence::all_plus(6);
        let same = rsl_pair_stems(&Seed(seq("+-++")), &Seed(seq("+-++")), &signs, 6).unwrap();
        for (f, g) in &same {
            assert_eq!(cdf(f, g).unwrap(), adf(f) + Rational::from_integer(1));
        }
        let opposite = rsl_pair_stems(&Seed(seq("+")), &Seed(seq("-")), &signs, 6).unwrap();
        for (f, g) in &opposite {
            assert_eq!(g, &f.negated());
            assert_eq!(cdf(f, g).unwrap(), adf(f) + Rational::from_integer(1));
        }
        assert_eq!(
            rsl_pair_stems(&Seed(seq("+")), &Seed(seq("++")), &signs, 2),
            Err(RslError::LengthMismatch(1, 2))
        );
    }
}
