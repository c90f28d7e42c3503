//! Exact integer convolution through a number-theoretic transform.
//!
//! Works modulo the prime `998244353 = 119 * 2^23 + 1`. Inputs are small
//! signed integers; an output coefficient is recovered exactly as long as its
//! magnitude stays below `MODULUS / 2`, which holds for every correlation of
//! ±1 sequences shorter than `2^23`.

const MODULUS: u64 = 998_244_353;
const PRIMITIVE_ROOT: u64 = 3;
const MAX_LOG_LEN: u32 = 23;

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= MODULUS;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % MODULUS;
        }
        base = base * base % MODULUS;
        exp >>= 1;
    }
    acc
}

fn transform(a: &mut [u64], invert: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());

    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }

    let mut len = 2;
    while len <= n {
        let mut w_len = pow_mod(PRIMITIVE_ROOT, (MODULUS - 1) / len as u64);
        if invert {
            w_len = pow_mod(w_len, MODULUS - 2);
        }
        let half = len / 2;
        // Twiddles for this stage, shared by every block.
        let mut twiddles = Vec::with_capacity(half);
        let mut w = 1u64;
        for _ in 0..half {
            twiddles.push(w);
            w = w * w_len % MODULUS;
        }
        for block in a.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for ((u, v), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let x = *u;
                let y = *v * w % MODULUS;
                *u = if x + y >= MODULUS {
                    x + y - MODULUS
                } else {
                    x + y
                };
                *v = if x >= y { x - y } else { x + MODULUS - y };
            }
        }
        len <<= 1;
    }

    if invert {
        let n_inv = pow_mod(n as u64, MODULUS - 2);
        for x in a.iter_mut() {
            *x = *x * n_inv % MODULUS;
        }
    }
}

fn lift(x: i64) -> u64 {
    x.rem_euclid(MODULUS as i64) as u64
}

/// Linear convolution `c_k = sum_i a_i b_{k-i}`, exact for small signed inputs.
///
/// Panics if the output length exceeds `2^23`.
pub fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    assert!(
        size <= 1 << MAX_LOG_LEN,
        "convolution length {out_len} exceeds transform capacity"
    );

    let mut fa = vec![0u64; size];
    let mut fb = vec![0u64; size];
    for (dst, &x) in fa.iter_mut().zip(a) {
        *dst = lift(x);
    }
    for (dst, &x) in fb.iter_mut().zip(b) {
        *dst = lift(x);
    }
    transform(&mut fa, false);
    transform(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % MODULUS;
    }
    transform(&mut fa, true);

    let half = MODULUS / 2;
    fa.truncate(out_len);
    fa.into_iter()
        .map(|x| {
            if x > half {
                x as i64 - MODULUS as i64
            } else {
                x as i64
            }
        })
        .collect()
}
