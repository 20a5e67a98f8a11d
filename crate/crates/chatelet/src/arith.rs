//! Exact integer utilities: factorization, p-adic valuations, Kronecker
//! symbols and squarefree tests.

use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Trial division covers primes up to this bound before the rho stage.
const TRIAL_BOUND: u64 = 1_000_000;

/// Largest composite cofactor (in bits) the default factorizer will attack.
/// Below this bound the Miller-Rabin witness set used by [`is_prime`] is a
/// deterministic certificate.
pub const DEFAULT_FACTOR_BITS: u64 = 80;

/// A nonzero integer as `sign * prod p_i^{e_i}` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    /// Recompose the factored integer.
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// Positive product of the primes with odd exponent.
    pub fn squarefree_kernel(&self) -> BigInt {
        let mut k = BigInt::one();
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                k *= p;
            }
        }
        k
    }

    /// All positive divisors, unsorted count = prod (e_i + 1).
    pub fn divisors(&self) -> Vec<BigInt> {
        let mut divs = vec![BigInt::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                for d in &divs {
                    next.push(d * &pk);
                }
                pk *= p;
            }
            divs = next;
        }
        divs
    }

    /// Distinct prime divisors.
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// Factor a nonzero integer with the default cofactor bit limit.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    factorize_with_limit(n, DEFAULT_FACTOR_BITS)
}

/// Factor a nonzero integer, refusing composite cofactors above `limit_bits`.
pub fn factorize_with_limit(n: &BigInt, limit_bits: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();

    // trial stage
    let mut e2 = 0u32;
    while m.is_even() && !m.is_zero() {
        m >>= 1;
        e2 += 1;
    }
    if e2 > 0 {
        factors.push((BigUint::from(2u32), e2));
    }
    let mut d = 3u64;
    while d <= TRIAL_BOUND {
        let db = BigUint::from(d);
        if (&db * &db) > m {
            break;
        }
        if (&m % &db).is_zero() {
            let mut e = 0u32;
            while (&m % &db).is_zero() {
                m /= &db;
                e += 1;
            }
            factors.push((db, e));
        }
        d += 2;
    }
    if m > BigUint::one() {
        if BigUint::from(TRIAL_BOUND) * BigUint::from(TRIAL_BOUND) >= m {
            // cofactor below the trial square is prime
            factors.push((m.clone(), 1));
        } else {
            factor_hard(&m, limit_bits, &mut factors)?;
        }
    }

    let mut factors: Vec<(BigInt, u32)> = factors
        .into_iter()
        .map(|(p, e)| (BigInt::from(p), e))
        .collect();
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    // merge repeats produced by the recursive stage
    let mut merged: Vec<(BigInt, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += e;
                continue;
            }
        }
        merged.push((p, e));
    }
    Ok(Factorization {
        sign,
        factors: merged,
    })
}

fn factor_hard(m: &BigUint, limit_bits: u64, out: &mut Vec<(BigUint, u32)>) -> Result<()> {
    if m.is_one() {
        return Ok(());
    }
    if is_prime_u(m) {
        out.push((m.clone(), 1));
        return Ok(());
    }
    if m.bits() > limit_bits {
        return Err(Error::FactorLimit {
            bits: m.bits(),
            limit: limit_bits,
        });
    }
    let d = brent_rho(m).ok_or(Error::FactorLimit {
        bits: m.bits(),
        limit: limit_bits,
    })?;
    let q = m / &d;
    factor_hard(&d, limit_bits, out)?;
    factor_hard(&q, limit_bits, out)
}

/// Brent's cycle-finding variant of Pollard rho. `None` when the iteration
/// budget is exhausted.
fn brent_rho(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return Some(two);
    }
    let mut c = BigUint::from(1u32);
    let budget = 1u64 << 24;
    for _ in 0..40 {
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut count = 0u64;
        'outer: while d == one {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break 'outer;
            }
            d = diff.gcd(n);
            count += 1;
            if count > budget {
                return None;
            }
        }
        if d != one && &d != n {
            return Some(d);
        }
        c += 1u32;
    }
    None
}

/// Miller-Rabin primality. Deterministic for inputs below 3.3e24 via the
/// first twelve prime witnesses; larger inputs add fixed extra rounds and the
/// answer is then heuristic (the factorizer never trusts it past the bit
/// limit).
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() || n.is_zero() {
        return false;
    }
    is_prime_u(n.magnitude())
}

fn is_prime_u(n: &BigUint) -> bool {
    let small: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &small {
        let pb = BigUint::from(p);
        if n == &pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut witnesses: Vec<BigUint> = small.iter().map(|&p| BigUint::from(p)).collect();
    if n.bits() > 81 {
        for k in 0..20u64 {
            witnesses.push(BigUint::from(41u64 + 2 * k));
        }
    }
    'w: for a in witnesses {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'w;
            }
        }
        return false;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let mut m = n.magnitude().clone();
    let pm = p.magnitude();
    let mut v = 0u32;
    loop {
        let (q, r) = m.div_rem(pm);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

/// Kronecker symbol (a | n), the full extension of the Jacobi symbol to all
/// integer n.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i32 {
    if n.is_zero() {
        return if a.magnitude().is_one() { 1 } else { 0 };
    }
    let mut a = a.clone();
    let mut n = n.clone();
    let mut result = 1i32;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let e = n.trailing_zeros().unwrap_or(0);
    n >>= e;
    if e > 0 {
        if a.is_even() {
            return 0;
        }
        if e % 2 == 1 {
            let m8 = mod_u8(&a, 8);
            if m8 == 3 || m8 == 5 {
                result = -result;
            }
        }
    }
    // n odd positive from here; binary Jacobi
    a = a.mod_floor(&n);
    while !a.is_zero() {
        let e2 = a.trailing_zeros().unwrap_or(0);
        a >>= e2;
        if e2 % 2 == 1 {
            let m8 = mod_u8(&n, 8);
            if m8 == 3 || m8 == 5 {
                result = -result;
            }
        }
        if mod_u8(&a, 4) == 3 && mod_u8(&n, 4) == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn mod_u8(x: &BigInt, m: u8) -> u8 {
    x.mod_floor(&BigInt::from(m)).to_u8().unwrap()
}

/// True when every prime exponent of n equals one.
pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    Ok(factorize(n)?.is_squarefree())
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative");
    BigInt::from(n.magnitude().sqrt())
}

/// Exact square root when n is a perfect square.
pub fn sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_square(n: &BigInt) -> bool {
    sqrt_exact(n).is_some()
}

/// The unique squarefree integer s with n = s * t^2 (sign carried by s).
pub fn signed_squarefree_kernel(n: &BigInt) -> Result<BigInt> {
    let f = factorize(n)?;
    Ok(BigInt::from(f.sign) * f.squarefree_kernel())
}
