//! Integer utilities: valuations, factorials, radicals, primes and exact roots.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent of `p` in `|n|`.
pub fn integer_valuation(n: &BigInt, p: u64) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(valuation_unchecked(n.magnitude(), p))
}

pub(crate) fn valuation_unchecked(n: &BigUint, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    // Strip a large power of p at a time before finishing one by one.
    let p_big = BigUint::from(p);
    let mut k = 0u64;
    let mut m = n.clone();
    let mut chunk_exp = 16u64;
    let mut chunk = p_big.pow(chunk_exp as u32);
    while chunk_exp >= 1 {
        loop {
            let (q, r) = m.div_rem(&chunk);
            if !r.is_zero() {
                break;
            }
            m = q;
            k += chunk_exp;
        }
        if chunk_exp == 1 {
            break;
        }
        chunk_exp /= 2;
        chunk = p_big.pow(chunk_exp as u32);
    }
    k
}

/// ν_p(n!) by Legendre's formula, without forming n!.
pub fn legendre_valuation(n: u64, p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let mut total = 0u64;
    let mut m = n;
    while m > 0 {
        m /= p;
        total += m;
    }
    Ok(total)
}

pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// `a^n · n!`, the argument each `Q_i` is evaluated at.
pub fn scaled_factorial(a: u64, n: u64) -> BigUint {
    BigUint::from(a).pow(n as u32) * factorial(n)
}

/// Limits for [`factorize`] and [`radical`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division runs over primes up to this bound.
    pub trial_limit: u64,
    /// Total Pollard rho iterations allowed before giving up.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self {
            trial_limit: 10_000,
            rho_iterations: 2_000_000,
        }
    }
}

/// Prime factorization of `n > 0` as ascending `(prime, exponent)` pairs.
///
/// Fails with [`Error::Unfactored`] when a composite cofactor survives the
/// rho budget; a partial answer is never returned.
pub fn factorize(n: &BigUint, budget: &FactorBudget) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    for p in primes_up_to(budget.trial_limit.max(2)) {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    }
    if !m.is_one() {
        let mut remaining = budget.rho_iterations;
        let mut stack = vec![m];
        let mut large: Vec<BigUint> = Vec::new();
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if is_probable_prime(&c) {
                large.push(c);
                continue;
            }
            match pollard_brent(&c, &mut remaining) {
                Some(f) => {
                    let other = &c / &f;
                    stack.push(f);
                    stack.push(other);
                }
                None => return Err(Error::Unfactored(c.to_string())),
            }
        }
        large.sort();
        for p in large {
            match factors.last_mut() {
                Some((last, e)) if *last == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
    }
    Ok(factors)
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of the
/// composite `n`, or `None` once `remaining` iterations are exhausted.
fn pollard_brent(n: &BigUint, remaining: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                if *remaining < steps {
                    return None;
                }
                *remaining -= steps;
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            // Batched product overshot; backtrack one step at a time.
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
        if *remaining == 0 {
            return None;
        }
    }
    None
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: &BigInt, budget: &FactorBudget) -> Result<BigUint> {
    let factors = factorize(n.magnitude(), budget)?;
    Ok(factors.into_iter().map(|(p, _)| p).product())
}

/// Product of all primes `≤ n`.
pub fn primorial(n: u64) -> BigUint {
    primes_up_to(n).into_iter().map(BigUint::from).product()
}

/// Exact `d`-th root of `n` if `n` is a perfect `d`-th power.
///
/// For even `d` the non-negative root is returned; negative `n` has a root
/// only for odd `d`.
pub fn is_perfect_dth_power(n: &BigInt, d: u32) -> Option<BigInt> {
    assert!(d >= 2, "root degree must be at least 2");
    if n.is_negative() && d.is_multiple_of(2) {
        return None;
    }
    let root = BigInt::from_biguint(Sign::Plus, n.magnitude().nth_root(d));
    let root = if n.is_negative() { -root } else { root };
    if num_traits::pow(root.clone(), d as usize) == *n {
        Some(root)
    } else {
        None
    }
}

/// Smallest `b ≥ 0` with `b^d ≥ n`.
pub fn ceil_nth_root(n: &BigUint, d: u32) -> BigUint {
    let r = n.nth_root(d);
    if r.pow(d) == *n {
        r
    } else {
        r + 1u32
    }
}

/// Sieve of Eratosthenes. Returns an empty list below 2.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Primes in the half-open range `[lo, hi)`.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi <= lo {
        return Vec::new();
    }
    primes_up_to(hi - 1)
        .into_iter()
        .filter(|&p| p >= lo)
        .collect()
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on arbitrary-precision input. Deterministic below 2^64;
/// above that the fixed base set makes it a (very strong) probable-prime test.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    const EXTRA: [u64; 8] = [41, 43, 47, 53, 59, 61, 67, 71];
    'witness: for &a in MR_BASES.iter().chain(EXTRA.iter()) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Natural logarithm of a big integer magnitude, accurate to f64 precision.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        if let Some(f) = n.to_f64() {
            return f.ln();
        }
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
