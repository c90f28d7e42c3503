//! Arithmetic in GF(2^n) and GF(p), and the characters built on it.
//!
//! Binary field elements are polynomials over GF(2) packed into a `u32`
//! bitmask (bit `i` is the coefficient of `x^i`); multiplication is
//! shift-and-reduce against the field modulus.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} is outside the supported range 2..=24")]
    DegreeOutOfRange(u32),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not congruent to 1 mod 4")]
    NotOneModFour(u64),
    #[error("zero has no multiplicative coset")]
    ZeroResidue,
    #[error("{generator} is not a primitive element modulo {p}")]
    NotPrimitive { p: u64, generator: u64 },
}

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 24;

/// The field GF(2^n) with a fixed primitive modulus, generated by the class of `x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryField {
    degree: u32,
    modulus: u32,
    generator: u32,
}

impl fmt::Debug for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF(2^{}) modulus={:#x} generator={}",
            self.degree, self.modulus, self.generator
        )
    }
}

impl fmt::Display for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Multiplies two elements modulo `modulus` (of degree `degree`).
fn poly_mulmod(mut a: u32, mut b: u32, modulus: u32, degree: u32) -> u32 {
    let top = 1u32 << degree;
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn poly_powmod(mut base: u32, mut exp: u64, modulus: u32, degree: u32) -> u32 {
    let mut acc = 1u32;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(acc, base, modulus, degree);
        }
        base = poly_mulmod(base, base, modulus, degree);
        exp >>= 1;
    }
    acc
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// True when `x` has multiplicative order exactly `2^degree - 1` modulo `modulus`.
fn x_is_primitive(modulus: u32, degree: u32, order_factors: &[u64]) -> bool {
    let order = (1u64 << degree) - 1;
    let x = 0b10;
    poly_powmod(x, order, modulus, degree) == 1
        && order_factors
            .iter()
            .all(|&q| poly_powmod(x, order / q, modulus, degree) != 1)
}

impl BinaryField {
    /// GF(2^n) built on the numerically least primitive polynomial of degree `n`.
    ///
    /// A modulus for which `x` has order `2^n - 1` is automatically irreducible,
    /// since the quotient ring then has `2^n - 1` units.
    pub fn new(degree: u32) -> Result<Self, FieldError> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
            return Err(FieldError::DegreeOutOfRange(degree));
        }
        let factors = prime_factors((1u64 << degree) - 1);
        let lo = (1u32 << degree) | 1;
        let hi = 1u32 << (degree + 1);
        let modulus = (lo..hi)
            .step_by(2)
            .find(|&m| x_is_primitive(m, degree, &factors))
            .expect("a primitive polynomial exists for every degree");
        Ok(BinaryField {
            degree,
            modulus,
            generator: 0b10,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Modulus bitmask, including the leading `x^n` bit.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// Number of nonzero elements, `2^n - 1`.
    pub fn order(&self) -> usize {
        (1usize << self.degree) - 1
    }

    pub fn contains(&self, x: u32) -> bool {
        x >> self.degree == 0
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        poly_mulmod(a, b, self.modulus, self.degree)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        poly_powmod(a, e, self.modulus, self.degree)
    }

    /// Multiplication by the generator `x`, the LFSR step.
    pub fn mul_generator(&self, a: u32) -> u32 {
        let shifted = a << 1;
        if shifted >> self.degree & 1 == 1 {
            shifted ^ self.modulus
        } else {
            shifted
        }
    }

    /// Absolute trace `Tr(x) = x + x^2 + x^4 + ... + x^(2^(n-1))`, as a bit.
    pub fn trace(&self, x: u32) -> u8 {
        debug_assert!(self.contains(x));
        let mut acc = 0u32;
        let mut y = x;
        for _ in 0..self.degree {
            acc ^= y;
            y = self.mul(y, y);
        }
        debug_assert!(acc <= 1, "trace must land in the prime field");
        acc as u8
    }
}

pub fn make_binary_field(n: u32) -> Result<BinaryField, FieldError> {
    BinaryField::new(n)
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

fn require_odd_prime(p: u64) -> Result<(), FieldError> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(FieldError::NotOddPrime(p))
    }
}

/// Least primitive root modulo the odd prime `p`.
pub fn find_primitive_element(p: u64) -> Result<u64, FieldError> {
    require_odd_prime(p)?;
    let factors = prime_factors(p - 1);
    Ok((2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root"))
}

/// Quadratic character (Legendre symbol) of `j` modulo `p` by Euler's criterion.
pub fn quadratic_character(p: u64, j: u64) -> Result<i8, FieldError> {
    require_odd_prime(p)?;
    let j = j % p;
    if j == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(j, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

/// GF(p) for an odd prime `p` together with a primitive element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    generator: u64,
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) generator={}", self.p, self.generator)
    }
}

impl PrimeField {
    /// Uses the least primitive root as generator.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        let generator = find_primitive_element(p)?;
        Ok(PrimeField { p, generator })
    }

    pub fn with_generator(p: u64, generator: u64) -> Result<Self, FieldError> {
        require_odd_prime(p)?;
        let g = generator % p;
        let primitive = g != 0
            && prime_factors(p - 1)
                .iter()
                .all(|&q| pow_mod(g, (p - 1) / q, p) != 1);
        if !primitive {
            return Err(FieldError::NotPrimitive { p, generator });
        }
        Ok(PrimeField { p, generator: g })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        pow_mod(base, exp, self.p)
    }

    pub fn quadratic_character(&self, j: u64) -> i8 {
        quadratic_character(self.p, j).expect("field prime already validated")
    }

    /// Index `k` in `0..4` such that `j` lies in `generator^k` times the fourth powers.
    ///
    /// `j^((p-1)/4)` is a fourth root of unity; it equals `w^k` where
    /// `w = generator^((p-1)/4)`.
    pub fn quartic_coset_index(&self, j: u64) -> Result<u8, FieldError> {
        let p = self.p;
        if p % 4 != 1 {
            return Err(FieldError::NotOneModFour(p));
        }
        let j = j % p;
        if j == 0 {
            return Err(FieldError::ZeroResidue);
        }
        let e = (p - 1) / 4;
        let target = pow_mod(j, e, p);
        let w = pow_mod(self.generator, e, p);
        let mut power = 1u64;
        for k in 0..4u8 {
            if power == target {
                return Ok(k);
            }
            power = (power as u128 * w as u128 % p as u128) as u64;
        }
        unreachable!("j^((p-1)/4) is always a fourth root of unity")
    }
}

pub fn quartic_coset_index(ctx: &PrimeField, j: u64) -> Result<u8, FieldError> {
    ctx.quartic_coset_index(j)
}
