//! Sequences built from additive and multiplicative characters, plus the
//! cyclic transforms applied to them.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::gf::{is_prime, BinaryField, FieldError, PrimeField};
use crate::sequence::BinarySequence;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the zero element gives the trivial additive character")]
    TrivialCharacter,
    #[error("element {0:#x} does not belong to the field")]
    NotAnElement(u32),
    #[error("decimation {d} is not coprime to the length {len}")]
    NotCoprime { d: i64, len: usize },
    #[error("decimation {d} is a power of 2 modulo {len} (degenerate)")]
    DegenerateDecimation { d: i64, len: usize },
    #[error("target length must be at least 1 (got {0})")]
    InvalidLength(i64),
    #[error("invalid resize ratio {0}")]
    InvalidRatio(f64),
    #[error("shift {shift} out of range for length {len}")]
    ShiftOutOfRange { shift: i64, len: usize },
    #[error("invalid family descriptor: {0}")]
    Descriptor(String),
    #[error("family descriptor has no size parameter")]
    MissingSize,
    #[error("{kind} cannot be built with size {size}: {reason}")]
    InvalidSize {
        kind: FamilyKind,
        size: u64,
        reason: String,
    },
    #[error("shift=best must be resolved by a shift search before building")]
    UnresolvedShift,
}

/// m-sequence `((-1)^Tr(c alpha^0), ..., (-1)^Tr(c alpha^(q-2)))` for the
/// additive character shift `c`. `c = 1` gives the Galois sequence.
pub fn msequence(ctx: &BinaryField, char_shift: u32) -> Result<BinarySequence, ConstructionError> {
    if char_shift == 0 {
        return Err(ConstructionError::TrivialCharacter);
    }
    if !ctx.contains(char_shift) {
        return Err(ConstructionError::NotAnElement(char_shift));
    }
    // The trace is linear, so Tr(x) = parity(x & mask) with mask bit i = Tr(x^i).
    let mask = (0..ctx.degree())
        .filter(|&i| ctx.trace(1 << i) == 1)
        .fold(0u32, |m, i| m | (1 << i));
    let mut x = char_shift;
    let mut terms = Vec::with_capacity(ctx.order());
    for _ in 0..ctx.order() {
        terms.push(if (x & mask).count_ones() % 2 == 1 {
            -1
        } else {
            1
        });
        x = ctx.mul_generator(x);
    }
    Ok(BinarySequence::from_vec_unchecked(terms))
}

pub fn galois_sequence(ctx: &BinaryField) -> BinarySequence {
    msequence(ctx, 1).expect("1 is a valid nonzero element")
}

/// Output term `j` is `f_{(d j) mod l}`; `d` may be negative.
pub fn decimate(f: &BinarySequence, d: i64) -> Result<BinarySequence, ConstructionError> {
    let len = f.len();
    let step = d.rem_euclid(len as i64) as usize;
    if step.gcd(&len) != 1 {
        return Err(ConstructionError::NotCoprime { d, len });
    }
    let t = f.terms();
    Ok(BinarySequence::from_vec_unchecked(
        (0..len).map(|j| t[(step * j) % len]).collect(),
    ))
}

/// Output term `j` is `f_{(j + r) mod l}`.
pub fn cyclic_shift(f: &BinarySequence, r: i64) -> BinarySequence {
    let len = f.len();
    let r = r.rem_euclid(len as i64) as usize;
    let t = f.terms();
    BinarySequence::from_vec_unchecked(t[r..].iter().chain(&t[..r]).copied().collect())
}

/// Output term `j` is `f_{j mod l}` for `j < m`: truncation or periodic extension.
pub fn resize(f: &BinarySequence, m: i64) -> Result<BinarySequence, ConstructionError> {
    if m < 1 {
        return Err(ConstructionError::InvalidLength(m));
    }
    Ok(BinarySequence::from_vec_unchecked(
        f.terms().iter().copied().cycle().take(m as usize).collect(),
    ))
}

/// Target length for resizing to `ratio` times `len`, rounded to the nearest integer.
pub fn resized_length(len: usize, ratio: f64) -> Result<usize, ConstructionError> {
    if !ratio.is_finite() || ratio <= 0.0 {
        return Err(ConstructionError::InvalidRatio(ratio));
    }
    let m = (ratio * len as f64).round();
    if m < 1.0 {
        return Err(ConstructionError::InvalidLength(m as i64));
    }
    Ok(m as usize)
}

fn require_odd_prime(p: u64) -> Result<(), ConstructionError> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(FieldError::NotOddPrime(p).into())
    }
}

/// Legendre sequence of length `p`: `+1` at 0 and at the nonzero squares.
pub fn legendre(p: u64) -> Result<BinarySequence, ConstructionError> {
    require_odd_prime(p)?;
    let mut terms = vec![-1i8; p as usize];
    terms[0] = 1;
    for x in 1..p {
        terms[(x * x % p) as usize] = 1;
    }
    Ok(BinarySequence::from_vec_unchecked(terms))
}

fn quartic(ctx: &PrimeField, plus: [bool; 4]) -> Result<BinarySequence, ConstructionError> {
    let p = ctx.p();
    let mut terms = Vec::with_capacity(p as usize);
    terms.push(1);
    for j in 1..p {
        let k = ctx.quartic_coset_index(j)?;
        terms.push(if plus[k as usize] { 1 } else { -1 });
    }
    Ok(BinarySequence::from_vec_unchecked(terms))
}

/// Quartic cyclotomic sequence that is `+1` on `{0} ∪ R0 ∪ R1`.
pub fn quartic_f(ctx: &PrimeField) -> Result<BinarySequence, ConstructionError> {
    quartic(ctx, [true, true, false, false])
}

/// Quartic cyclotomic sequence that is `+1` on `{0} ∪ R0 ∪ R3`.
pub fn quartic_g(ctx: &PrimeField) -> Result<BinarySequence, ConstructionError> {
    quartic(ctx, [true, false, false, true])
}

/// Shifts the Legendre sequence of length `p` by `r`, drops the last term and
/// cuts the rest into two halves of length `(p-1)/2`.
pub fn half_legendre_pair(
    p: u64,
    r: i64,
) -> Result<(BinarySequence, BinarySequence), ConstructionError> {
    let h = legendre(p)?;
    if !(0..p as i64).contains(&r) {
        return Err(ConstructionError::ShiftOutOfRange {
            shift: r,
            len: p as usize,
        });
    }
    Ok(split_halves(&cyclic_shift(&h, r)))
}

/// Drops the final term of an odd-length sequence and cuts the rest in half.
pub(crate) fn split_halves(shifted: &BinarySequence) -> (BinarySequence, BinarySequence) {
    let half = (shifted.len() - 1) / 2;
    let t = shifted.terms();
    (
        BinarySequence::from_vec_unchecked(t[..half].to_vec()),
        BinarySequence::from_vec_unchecked(t[half..2 * half].to_vec()),
    )
}

/// True when `d ≡ 2^k (mod len)` for some `k`.
pub fn is_degenerate_decimation(d: i64, len: usize) -> bool {
    let target = d.rem_euclid(len as i64) as usize;
    let mut power = 1 % len;
    for _ in 0..usize::BITS {
        if power == target {
            return true;
        }
        power = (power * 2) % len;
    }
    false
}

/// True when `d ≡ -2^k (mod len)` for some `k`.
pub fn is_reversing_decimation(d: i64, len: usize) -> bool {
    is_degenerate_decimation(-d, len)
}

/// `(shift_f of the Galois sequence, shift_g of its decimation by d)`.
///
/// Degenerate decimations are rejected: they reproduce the Galois sequence.
pub fn msequence_pair(
    ctx: &BinaryField,
    d: i64,
    shift_f: i64,
    shift_g: i64,
) -> Result<(BinarySequence, BinarySequence), ConstructionError> {
    let f = galois_sequence(ctx);
    let len = f.len();
    if is_degenerate_decimation(d, len) {
        return Err(ConstructionError::DegenerateDecimation { d, len });
    }
    let g = decimate(&f, d)?;
    Ok((cyclic_shift(&f, shift_f), cyclic_shift(&g, shift_g)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    MSequence,
    Legendre,
    QuarticF,
    QuarticG,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::MSequence => "mseq",
            FamilyKind::Legendre => "legendre",
            FamilyKind::QuarticF => "quartic_f",
            FamilyKind::QuarticG => "quartic_g",
        }
    }

    /// Name of the size key in descriptors: `n` for m-sequences, `p` otherwise.
    pub fn size_key(&self) -> &'static str {
        match self {
            FamilyKind::MSequence => "n",
            _ => "p",
        }
    }

    /// Checks that `size` is a legal parameter for this kind.
    pub fn validate_size(&self, size: u64) -> Result<(), ConstructionError> {
        let reason = match self {
            FamilyKind::MSequence => {
                let d = size as u32;
                (size > u32::MAX as u64
                    || !(crate::gf::MIN_DEGREE..=crate::gf::MAX_DEGREE).contains(&d))
                .then(|| "extension degree must be in 2..=24".to_string())
            }
            FamilyKind::Legendre => {
                (!(size > 2 && is_prime(size))).then(|| "size must be an odd prime".to_string())
            }
            FamilyKind::QuarticF | FamilyKind::QuarticG => (!(is_prime(size) && size % 4 == 1))
                .then(|| "size must be a prime congruent to 1 mod 4".to_string()),
        };
        match reason {
            None => Ok(()),
            Some(reason) => Err(ConstructionError::InvalidSize {
                kind: *self,
                size,
                reason,
            }),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mseq" | "msequence" | "galois" => Ok(FamilyKind::MSequence),
            "legendre" => Ok(FamilyKind::Legendre),
            "quartic_f" => Ok(FamilyKind::QuarticF),
            "quartic_g" => Ok(FamilyKind::QuarticG),
            other => Err(ConstructionError::Descriptor(format!(
                "unknown family kind {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShiftChoice {
    Fixed(i64),
    Best,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Shift(ShiftChoice),
    Decimate(i64),
    /// Resize to `round(ratio * current length)`.
    ResizeRatio(f64),
    ResizeLength(usize),
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Shift(ShiftChoice::Fixed(r)) => write!(f, "shift={r}"),
            Transform::Shift(ShiftChoice::Best) => f.write_str("shift=best"),
            Transform::Decimate(d) => write!(f, "decimate={d}"),
            Transform::ResizeRatio(x) => write!(f, "resize={x}"),
            Transform::ResizeLength(m) => write!(f, "length={m}"),
        }
    }
}

/// A sequence family with its size parameter and an ordered transform list.
///
/// Descriptor grammar: `kind:key=value,...`, for example
/// `legendre:p=1019,shift=best,resize=1.057` or `mseq:n=10,char=1`.
/// Transforms apply in the order written.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub size: Option<u64>,
    /// Additive character shift (m-sequences only).
    pub char_shift: u32,
    /// Primitive element override (quartic families only).
    pub generator: Option<u64>,
    pub transforms: Vec<Transform>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        FamilySpec {
            kind,
            size: None,
            char_shift: 1,
            generator: None,
            transforms: Vec::new(),
        }
    }

    pub fn with_size(mut self, size: u64) -> Self {
        self.size = Some(size);
        self
    }

    pub fn with_transform(mut self, t: Transform) -> Self {
        self.transforms.push(t);
        self
    }

    pub fn has_best_shift(&self) -> bool {
        self.transforms
            .iter()
            .any(|t| matches!(t, Transform::Shift(ShiftChoice::Best)))
    }

    /// Copy with every `shift=best` replaced by the fixed shift `r`.
    pub fn resolve_shift(&self, r: i64) -> FamilySpec {
        let mut out = self.clone();
        for t in &mut out.transforms {
            if let Transform::Shift(ShiftChoice::Best) = t {
                *t = Transform::Shift(ShiftChoice::Fixed(r));
            }
        }
        out
    }

    /// Untransformed sequence.
    pub fn base(&self) -> Result<BinarySequence, ConstructionError> {
        let size = self.size.ok_or(ConstructionError::MissingSize)?;
        self.kind.validate_size(size)?;
        match self.kind {
            FamilyKind::MSequence => {
                let ctx = BinaryField::new(size as u32)?;
                msequence(&ctx, self.char_shift)
            }
            FamilyKind::Legendre => legendre(size),
            FamilyKind::QuarticF | FamilyKind::QuarticG => {
                let ctx = match self.generator {
                    Some(g) => PrimeField::with_generator(size, g)?,
                    None => PrimeField::new(size)?,
                };
                if self.kind == FamilyKind::QuarticF {
                    quartic_f(&ctx)
                } else {
                    quartic_g(&ctx)
                }
            }
        }
    }

    /// Applies the transform list to `seq`.
    pub fn apply(&self, seq: BinarySequence) -> Result<BinarySequence, ConstructionError> {
        self.transforms.iter().try_fold(seq, |s, t| match *t {
            Transform::Shift(ShiftChoice::Fixed(r)) => Ok(cyclic_shift(&s, r)),
            Transform::Shift(ShiftChoice::Best) => Err(ConstructionError::UnresolvedShift),
            Transform::Decimate(d) => decimate(&s, d),
            Transform::ResizeRatio(x) => {
                let m = resized_length(s.len(), x)?;
                resize(&s, m as i64)
            }
            Transform::ResizeLength(m) => resize(&s, m as i64),
        })
    }

    /// Base sequence with all transforms applied. Fails on an unresolved `shift=best`.
    pub fn build(&self) -> Result<BinarySequence, ConstructionError> {
        self.apply(self.base()?)
    }

    /// Descriptor text without the size parameter, e.g. `legendre:shift=best`.
    pub fn template(&self) -> String {
        let mut parts = Vec::new();
        if self.kind == FamilyKind::MSequence && self.char_shift != 1 {
            parts.push(format!("char={}", self.char_shift));
        }
        if let Some(g) = self.generator {
            parts.push(format!("alpha={g}"));
        }
        parts.extend(self.transforms.iter().map(|t| t.to_string()));
        if parts.is_empty() {
            self.kind.name().to_string()
        } else {
            format!("{}:{}", self.kind, parts.join(","))
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(size) = self.size {
            parts.push(format!("{}={size}", self.kind.size_key()));
        }
        if self.kind == FamilyKind::MSequence && self.char_shift != 1 {
            parts.push(format!("char={}", self.char_shift));
        }
        if let Some(g) = self.generator {
            parts.push(format!("alpha={g}"));
        }
        parts.extend(self.transforms.iter().map(|t| t.to_string()));
        if parts.is_empty() {
            f.write_str(self.kind.name())
        } else {
            write!(f, "{}:{}", self.kind, parts.join(","))
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, ConstructionError> {
    value
        .parse()
        .map_err(|_| ConstructionError::Descriptor(format!("bad value {value:?} for {key}")))
}

impl FromStr for FamilySpec {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k, r),
            None => (s, ""),
        };
        let mut spec = FamilySpec::new(kind.trim().parse()?);
        for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                ConstructionError::Descriptor(format!("expected key=value, got {item:?}"))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "n" | "p" => {
                    if key != spec.kind.size_key() {
                        return Err(ConstructionError::Descriptor(format!(
                            "{} takes size key {:?}, not {key:?}",
                            spec.kind,
                            spec.kind.size_key()
                        )));
                    }
                    spec.size = Some(parse_num(key, value)?);
                }
                "char" if spec.kind == FamilyKind::MSequence => {
                    spec.char_shift = parse_num(key, value)?;
                }
                "alpha" if matches!(spec.kind, FamilyKind::QuarticF | FamilyKind::QuarticG) => {
                    spec.generator = Some(parse_num(key, value)?);
                }
                "shift" => {
                    let choice = if value == "best" {
                        ShiftChoice::Best
                    } else {
                        ShiftChoice::Fixed(parse_num(key, value)?)
                    };
                    spec.transforms.push(Transform::Shift(choice));
                }
                "decimate" | "d" => spec
                    .transforms
                    .push(Transform::Decimate(parse_num(key, value)?)),
                "resize" | "append" | "truncate" => {
                    let ratio: f64 = parse_num(key, value)?;
                    if !ratio.is_finite() || ratio <= 0.0 {
                        return Err(ConstructionError::InvalidRatio(ratio));
                    }
                    spec.transforms.push(Transform::ResizeRatio(ratio));
                }
                "length" => spec
                    .transforms
                    .push(Transform::ResizeLength(parse_num(key, value)?)),
                _ => {
                    return Err(ConstructionError::Descriptor(format!(
                        "unknown key {key:?} for {}",
                        spec.kind
                    )))
                }
            }
        }
        if spec
            .transforms
            .iter()
            .filter(|t| matches!(t, Transform::Shift(ShiftChoice::Best)))
            .count()
            > 1
        {
            return Err(ConstructionError::Descriptor(
                "at most one shift=best is allowed".into(),
            ));
        }
        if let Some(size) = spec.size {
            spec.kind.validate_size(size)?;
        }
        Ok(spec)
    }
}
