//! Exact integer and rational arithmetic, plus the p-adic and quadratic
//! residue toolkit used by the analyzer and the colourings.
//!
//! Everything here is exact. Rationals are `num_rational::BigRational`, which
//! normalizes eagerly (positive denominator, coprime parts), so structural
//! equality is value equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number with arbitrary precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// Default upper bound for prime iteration.
pub const DEFAULT_PRIME_BOUND: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("undefined for zero input")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {0} divides a denominator; skipped")]
    SkipPrime(u64),
}

/// Builds a rational from an integer numerator and denominator.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

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

/// Deterministic primality test for all `u64` (Miller-Rabin with the first
/// twelve prime bases).
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

fn check_prime(p: u64) -> Result<(), ArithError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ArithError::NotPrime(p))
    }
}

/// All primes `<= bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Largest `k` with `p^k | x`.
pub fn vp(x: &BigInt, p: u64) -> Result<u32, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    check_prime(p)?;
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut k = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Ok(k);
        }
        x = q;
        k += 1;
    }
}

/// Least significant nonzero base-`p` digit of `x`, i.e. `x / p^vp(x)` mod `p`,
/// as a residue in `[1, p-1]`. Negative inputs use the mathematical residue.
pub fn smod(x: &BigInt, p: u64) -> Result<u64, ArithError> {
    let k = vp(x, p)?;
    let unit = x / BigInt::from(p).pow(k);
    Ok(unit.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p"))
}

/// `(smod, vp)` for positive machine integers, without the primality check.
#[inline]
pub(crate) fn smod_vp_u64(x: u64, p: u64) -> (u64, u32) {
    debug_assert!(x > 0);
    // 32-bit division is markedly cheaper, and search values usually fit.
    if let (Ok(mut x), Ok(p)) = (u32::try_from(x), u32::try_from(p)) {
        let mut k = 0;
        while x % p == 0 {
            x /= p;
            k += 1;
        }
        return (u64::from(x % p), k);
    }
    let mut x = x;
    let mut k = 0;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    (x % p, k)
}

/// The nonnegative square root of `x` when `x` is a perfect square.
pub fn is_perfect_square(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let s = x.sqrt();
    (&s * &s == *x).then_some(s)
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8, ArithError> {
    if p == 2 || !is_prime(p) {
        return Err(ArithError::NotOddPrime(p));
    }
    let r = a.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p");
    Ok(legendre_u64(r, p))
}

/// Euler's criterion on a reduced residue; `p` must be an odd prime.
pub(crate) fn legendre_u64(r: u64, p: u64) -> i8 {
    let r = r % p;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
/// Returns the smaller of the two roots.
pub(crate) fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre_u64(a, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while legendre_u64(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

/// Residue of a rational modulo `p`, as numerator times inverse denominator.
pub fn rational_mod_p(q: &Rational, p: u64) -> Result<u64, ArithError> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64().expect("residue below p");
    if den == 0 {
        return Err(ArithError::SkipPrime(p));
    }
    let num = q.numer().mod_floor(&pb).to_u64().expect("residue below p");
    // p is prime, so den^(p-2) is the inverse.
    Ok(mul_mod(num, pow_mod(den, p - 2, p), p))
}

/// All residues `r` in `F_p` with `r = c r^2 + (d + e) r + f (mod p)`.
///
/// For odd `p` the roots come from the discriminant `(d+e-1)^2 - 4cf`; for
/// `p = 2` both residues are tested directly. Output is ascending.
pub fn solve_fixedpoint_mod_p(
    c: &Rational,
    d: &Rational,
    e: &Rational,
    f: &Rational,
    p: u64,
) -> Result<Vec<u64>, ArithError> {
    check_prime(p)?;
    let a2 = rational_mod_p(c, p)?;
    let a1 = (rational_mod_p(d, p)? + rational_mod_p(e, p)? + p - 1) % p;
    let a0 = rational_mod_p(f, p)?;
    // a2 r^2 + a1 r + a0 = 0
    if p == 2 {
        return Ok((0..2)
            .filter(|&r| (a2 * r * r + a1 * r + a0).is_multiple_of(2))
            .collect());
    }
    if a2 == 0 {
        return Ok(match (a1, a0) {
            (0, 0) => (0..p).collect(),
            (0, _) => Vec::new(),
            _ => vec![mul_mod(p - a0, pow_mod(a1, p - 2, p), p)],
        });
    }
    let disc = (mul_mod(a1, a1, p) + p - mul_mod(4 % p, mul_mod(a2, a0, p), p)) % p;
    let Some(s) = sqrt_mod_p(disc, p) else {
        return Ok(Vec::new());
    };
    let inv2a = pow_mod(mul_mod(2, a2, p), p - 2, p);
    let r1 = mul_mod((p - a1 + s) % p, inv2a, p);
    let r2 = mul_mod((2 * p - a1 - s) % p, inv2a, p);
    let mut roots = vec![r1, r2];
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

/// Integer value of a rational, if it is integral.
pub fn to_integer(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// `true` when `q` is a (rational) integer.
pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}
