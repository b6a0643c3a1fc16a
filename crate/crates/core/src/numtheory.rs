//! Elementary number theory on machine words and big integers: primality,
//! prime-power decomposition, totients, multiplicative orders, primitive
//! roots and modular inverses.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("{0} is not a prime power")]
    NotPrimePower(BigUint),
    #[error("gcd({r}, {n}) > 1")]
    NotCoprime { r: i64, n: u64 },
    #[error("{a} is not invertible modulo {p}")]
    NotInvertible { a: i64, p: u64 },
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
}

/// A prime power `q = p^n` with `p` prime and `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: BigUint,
    n: u32,
    q: BigUint,
}

impl PrimePower {
    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }
}

/// Rounds of Miller-Rabin applied to inputs of 64 bits or more.
pub const PROBABILISTIC_ROUNDS: usize = 64;

/// Witnesses that make Miller-Rabin deterministic for every `n < 2^64`.
const U64_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Primality for word-sized inputs. Deterministic.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &U64_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &U64_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_big(n: &BigUint, a: &BigUint, d: &BigUint, s: u64) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let mut x = a.modpow(d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Primality test.
///
/// Exact below `2^64`. Larger inputs get [`PROBABILISTIC_ROUNDS`] rounds of
/// Miller-Rabin with bases drawn from a fixed-seed generator, so a composite
/// is accepted with probability at most `4^-64` and the answer is
/// reproducible run to run.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &U64_WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0005_eed0_f1e7);
    let upper = n - 2u32;
    (0..PROBABILISTIC_ROUNDS).all(|_| {
        let a = random_below(&mut rng, &upper).max(BigUint::from(2u32));
        miller_rabin_big(n, &a, &d, s)
    })
}

fn random_below(rng: &mut ChaCha8Rng, bound: &BigUint) -> BigUint {
    let bytes = (bound.bits() as usize).div_ceil(8) + 8;
    let mut buf = vec![0u8; bytes];
    rng.fill(buf.as_mut_slice());
    BigUint::from_bytes_le(&buf) % bound
}

/// Writes `q = p^n` with `p` prime, if possible.
pub fn prime_power_decompose(q: &BigUint) -> Result<PrimePower, NumTheoryError> {
    if *q < BigUint::from(2u32) {
        return Err(NumTheoryError::NotPrimePower(q.clone()));
    }
    let max_exp = q.bits() as u32;
    for n in 1..=max_exp {
        let p = q.nth_root(n);
        if p < BigUint::from(2u32) {
            break;
        }
        if num_traits::pow(p.clone(), n as usize) == *q && is_prime(&p) {
            return Ok(PrimePower { p, n, q: q.clone() });
        }
    }
    Err(NumTheoryError::NotPrimePower(q.clone()))
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Least `e >= 1` with `r^e = 1 (mod n)`.
///
/// Starts from `phi(n)` and strips prime factors while the power stays 1.
pub fn multiplicative_order(r: i64, n: u64) -> Result<u64, NumTheoryError> {
    if n < 2 {
        return Err(NumTheoryError::ModulusTooSmall(n));
    }
    let base = (r as i128).rem_euclid(n as i128) as u64;
    if base.gcd(&n) != 1 {
        return Err(NumTheoryError::NotCoprime { r, n });
    }
    let phi = euler_phi(n);
    let mut order = phi;
    for (p, _) in factorize(phi) {
        while order.is_multiple_of(p) && pow_mod(base, order / p, n) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

pub fn is_primitive_root_mod(r: i64, n: u64) -> bool {
    if n < 2 {
        return false;
    }
    matches!(multiplicative_order(r, n), Ok(e) if e == euler_phi(n))
}

/// Least positive primitive root modulo `n`, if one exists.
pub fn least_primitive_root(n: u64) -> Option<u64> {
    (1..n).find(|&r| is_primitive_root_mod(r as i64, n))
}

/// The inverse of `a` modulo the prime `p`, in `[0, p)`.
pub fn mod_inverse(a: i64, p: u64) -> Result<u64, NumTheoryError> {
    if p < 2 {
        return Err(NumTheoryError::ModulusTooSmall(p));
    }
    let a_red = (a as i128).rem_euclid(p as i128);
    let ext = a_red.extended_gcd(&(p as i128));
    if ext.gcd != 1 {
        return Err(NumTheoryError::NotInvertible { a, p });
    }
    Ok(ext.x.rem_euclid(p as i128) as u64)
}

/// `floor(sqrt(n))`.
pub fn integer_sqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// Smallest `s` with `s^2 >= n`.
pub fn ceil_sqrt(n: &BigUint) -> BigUint {
    let s = n.sqrt();
    if &s * &s == *n {
        s
    } else {
        s + 1u32
    }
}

pub fn is_perfect_square(n: &BigUint) -> bool {
    let s = n.sqrt();
    &s * &s == *n
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    (2u64..).filter(|&n| is_prime_u64(n)).take(count).collect()
}
