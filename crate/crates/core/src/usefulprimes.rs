//! Useful primes: primes `q` modulo which no declared factor of the form has
//! a root, and which are coprime to `a_d`, `a_0`, the modified discriminant
//! and the content.
//!
//! At such a prime, `q | f(x, y)` forces `q | x` and `q | y`, so every
//! nonzero value of an irreducible `f` of degree `d` has `ν_q` divisible by
//! `d`.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, primes_up_to};
use crate::modp::{degree_pattern, has_root_mod_with, DegreePattern, RootStrategy};
use crate::poly::{modified_discriminant, FormFactorization};

/// Recorded `gcd(q, ·)` values for the four guard quantities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardGcds {
    pub a_d: u64,
    pub a_0: u64,
    pub delta_mod: u64,
    pub content: u64,
}

impl GuardGcds {
    pub fn all_pass(&self) -> bool {
        self.a_d == 1 && self.a_0 == 1 && self.delta_mod == 1 && self.content == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UsefulPrimeEvidence {
    pub q: u64,
    /// One pattern per declared factor, in declaration order.
    pub patterns: Vec<DegreePattern>,
    pub guards: GuardGcds,
}

impl UsefulPrimeEvidence {
    pub fn is_valid(&self) -> bool {
        self.guards.all_pass() && self.patterns.iter().all(DegreePattern::is_fixed_point_free)
    }
}

/// The integers the guard gcds are taken against, computed once per form.
#[derive(Debug, Clone)]
pub struct GuardQuantities {
    a_d: BigInt,
    a_0: BigInt,
    delta_mod: BigInt,
    content: BigInt,
}

impl GuardQuantities {
    /// `a_d`, `a_0` and `g` come from the composite form. The discriminant is
    /// that of the product of the distinct factors: a repeated factor makes
    /// the composite discriminant vanish, while the kernel's is nonzero and
    /// divisible by each factor's own discriminant.
    pub fn of(f: &FormFactorization) -> Self {
        let composite = f.composite();
        let kernel = f.squarefree_kernel();
        let delta_mod = if kernel.a_d() == &BigInt::from(0) || kernel.degree() == 0 {
            BigInt::from(0)
        } else {
            modified_discriminant(&kernel)
                .map(|m| m.value)
                .unwrap_or_default()
        };
        Self {
            a_d: composite.a_d().clone(),
            a_0: composite.a_0().clone(),
            delta_mod,
            content: composite.content(),
        }
    }

    fn gcds(&self, q: u64) -> GuardGcds {
        let g = |n: &BigInt| {
            let qb = BigInt::from(q);
            let r = n.gcd(&qb);
            u64::try_from(r).unwrap_or(q)
        };
        GuardGcds {
            a_d: g(&self.a_d),
            a_0: g(&self.a_0),
            delta_mod: g(&self.delta_mod),
            content: g(&self.content),
        }
    }
}

pub fn is_useful_prime(f: &FormFactorization, q: u64) -> Option<UsefulPrimeEvidence> {
    is_useful_prime_with(f, q, &GuardQuantities::of(f), RootStrategy::Auto)
}

/// As [`is_useful_prime`] with precomputed guards and an explicit root test.
pub fn is_useful_prime_with(
    f: &FormFactorization,
    q: u64,
    guards: &GuardQuantities,
    strategy: RootStrategy,
) -> Option<UsefulPrimeEvidence> {
    if !is_prime_u64(q) {
        return None;
    }
    let gcds = guards.gcds(q);
    if !gcds.all_pass() {
        return None;
    }
    let mut patterns = Vec::with_capacity(f.factors().len());
    for (factor, _) in f.factors() {
        let univariate = factor.dehomogenize();
        // Cheap rejection first; the full pattern only for survivors.
        match has_root_mod_with(&univariate, q, strategy) {
            Ok(false) => {}
            _ => return None,
        }
        let report = degree_pattern(&univariate, q).ok()?;
        if !report.pattern.is_fixed_point_free() {
            return None;
        }
        patterns.push(report.pattern);
    }
    Some(UsefulPrimeEvidence {
        q,
        patterns,
        guards: gcds,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct UsefulPrimeScan {
    pub limit: u64,
    pub primes: Vec<UsefulPrimeEvidence>,
    /// `π(limit)`.
    pub primes_scanned: usize,
    /// `primes.len() / π(limit)`.
    pub density: f64,
    /// An empty scan does not show that no useful prime exists.
    pub inconclusive: bool,
}

impl UsefulPrimeScan {
    pub fn useful(&self) -> Vec<u64> {
        self.primes.iter().map(|e| e.q).collect()
    }
}

pub fn scan_useful_primes(f: &FormFactorization, limit: u64) -> UsefulPrimeScan {
    scan_useful_primes_with(f, limit, RootStrategy::Auto)
}

pub fn scan_useful_primes_with(
    f: &FormFactorization,
    limit: u64,
    strategy: RootStrategy,
) -> UsefulPrimeScan {
    let guards = GuardQuantities::of(f);
    let candidates = primes_up_to(limit);
    let mut primes: Vec<UsefulPrimeEvidence> = candidates
        .par_iter()
        .filter_map(|&q| is_useful_prime_with(f, q, &guards, strategy))
        .collect();
    primes.sort_by_key(|e| e.q);
    let density = if candidates.is_empty() {
        0.0
    } else {
        primes.len() as f64 / candidates.len() as f64
    };
    UsefulPrimeScan {
        limit,
        inconclusive: primes.is_empty(),
        primes,
        primes_scanned: candidates.len(),
        density,
    }
}
