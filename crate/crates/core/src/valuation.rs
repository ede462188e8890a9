//! q-adic valuation of the left-hand side `∏ Q_i(A_i^{n_i} n_i!)`.
//!
//! Writing `Q_i = x^{l_i} R_i` with `R_i(0) ≠ 0`, the valuation splits as
//! `Σ l_i (n_i ν_q(A_i) + ν_q(n_i!)) + Σ ν_q(R_i(A_i^{n_i} n_i!))`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{integer_valuation, is_prime_u64, legendre_valuation, valuation_unchecked};
use crate::error::{Error, Result};
use crate::instance::EquationInstance;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorContribution {
    pub n: u64,
    /// `l_i · (n_i ν_q(A_i) + ν_q(n_i!))`.
    pub power_part: u64,
    /// `ν_q(R_i(A_i^{n_i} n_i!))`.
    pub cofactor_part: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationProfile {
    pub q: u64,
    pub contributions: Vec<FactorContribution>,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LhsValuation {
    Profile(ValuationProfile),
    /// `R_i(A_i^{n_i} n_i!) = 0` for this (0-based) index: the left-hand
    /// side is zero and the equation asks for `rhs = 0`.
    Vanishes {
        index: usize,
    },
}

impl LhsValuation {
    pub fn total(&self) -> Option<u64> {
        match self {
            LhsValuation::Profile(p) => Some(p.total),
            LhsValuation::Vanishes { .. } => None,
        }
    }
}

pub fn lhs_valuation_exact(inst: &EquationInstance, n: &[u64], q: u64) -> Result<LhsValuation> {
    inst.check_tuple(n)?;
    if !is_prime_u64(q) {
        return Err(Error::NotPrime(q));
    }
    let mut contributions = Vec::with_capacity(n.len());
    for (i, &ni) in n.iter().enumerate() {
        let split = &inst.splits()[i];
        let cofactor = inst.cofactor_value(i, ni);
        if cofactor.is_zero() {
            return Ok(LhsValuation::Vanishes { index: i });
        }
        let a_val = integer_valuation(&BigInt::from(inst.bases()[i]), q)?;
        let power_part = split.multiplicity as u64 * (ni * a_val + legendre_valuation(ni, q)?);
        let cofactor_part = integer_valuation(&cofactor, q)?;
        contributions.push(FactorContribution {
            n: ni,
            power_part,
            cofactor_part,
        });
    }
    let total = contributions
        .iter()
        .map(|c| c.power_part + c.cofactor_part)
        .sum();
    Ok(LhsValuation::Profile(ValuationProfile {
        q,
        contributions,
        total,
    }))
}

/// Checks `q ∤ A_i` and `q ∤ R_i(0)` for every factor.
pub fn check_coprime_hypotheses(inst: &EquationInstance, q: u64) -> Result<()> {
    for (i, &a) in inst.bases().iter().enumerate() {
        if a % q == 0 {
            return Err(Error::Hypothesis(format!(
                "q = {q} divides A_{} = {a}",
                i + 1
            )));
        }
    }
    for (i, split) in inst.splits().iter().enumerate() {
        let f0 = split.cofactor_constant();
        if (f0 % q).is_zero() {
            return Err(Error::Hypothesis(format!(
                "q = {q} divides f_{}0 = {f0}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Largest `ν_q(R_i(A_i^n n!))` over admissible `n < q` with `n ≤ n_max`.
///
/// Once `n ≥ q` the argument is divisible by `q`, so `R_i` reduces to
/// `R_i(0) ≢ 0` and contributes nothing; below `q` the cofactor can pick up
/// powers of `q` (for example `4! + 1 = 5²`), which this scan measures.
/// Fails if the cofactor vanishes at one of these points.
pub fn cofactor_excess(inst: &EquationInstance, i: usize, q: u64, n_max: u64) -> Result<u64> {
    let split = &inst.splits()[i];
    let a = inst.bases()[i];
    let upper = n_max.min(q.saturating_sub(1));
    if upper < inst.min_n() {
        return Ok(0);
    }
    // Work modulo q^cap and fall back to exact arithmetic only when a value
    // is divisible by the whole modulus.
    let cap = 64u32;
    let modulus = BigUint::from(q).pow(cap);
    let modulus_signed = BigInt::from(modulus.clone());
    let coeffs: Vec<BigUint> = split
        .cofactor
        .coeffs()
        .iter()
        .map(|c| {
            c.mod_floor(&modulus_signed)
                .to_biguint()
                .expect("non-negative residue")
        })
        .collect();
    let mut x = BigUint::from(1u32);
    let mut best = 0u64;
    for n in 0..=upper {
        if n > 0 {
            x = (x * BigUint::from(a) * BigUint::from(n)) % &modulus;
        }
        if n < inst.min_n() {
            continue;
        }
        let residue = coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| (acc * &x + c) % &modulus);
        let v = if residue.is_zero() {
            let exact = inst.cofactor_value(i, n);
            if exact.is_zero() {
                return Err(Error::Hypothesis(format!(
                    "R_{}(A_{}^n n!) vanishes at n = {n}",
                    i + 1,
                    i + 1
                )));
            }
            valuation_unchecked(exact.magnitude(), q)
        } else {
            valuation_unchecked(&residue, q)
        };
        best = best.max(v);
    }
    Ok(best)
}

/// Certified upper bound on `ν_q(lhs)` over every tuple with
/// `max n_i = n_max`, under `q ∤ A_i`, `q ∤ f_{i0}` and `q < n_max < 2q`.
///
/// Each factor contributes at most `l_i` when `n_i ≥ q` (one factor of `q`
/// in `n_i!`, none in the cofactor) and at most its measured cofactor excess
/// when `n_i < q`, so the bound is `Σ max(l_i, excess_i)`. This equals
/// `Σ l_i` whenever no cofactor value below `q` is divisible by `q`.
pub fn lhs_valuation_bound(inst: &EquationInstance, n_max: u64, q: u64) -> Result<u64> {
    Ok(lhs_valuation_bound_detail(inst, n_max, q)?.bound)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationBound {
    pub sum_l: u64,
    /// Per-factor cofactor excess below `q`.
    pub excess: Vec<u64>,
    pub bound: u64,
}

pub fn lhs_valuation_bound_detail(
    inst: &EquationInstance,
    n_max: u64,
    q: u64,
) -> Result<ValuationBound> {
    if !is_prime_u64(q) {
        return Err(Error::NotPrime(q));
    }
    check_coprime_hypotheses(inst, q)?;
    if !(q < n_max && n_max < 2 * q) {
        return Err(Error::Hypothesis(format!(
            "need q < n_max < 2q, got q = {q}, n_max = {n_max}"
        )));
    }
    let excess = (0..inst.r())
        .map(|i| cofactor_excess(inst, i, q, n_max))
        .collect::<Result<Vec<_>>>()?;
    let bound = inst
        .splits()
        .iter()
        .zip(&excess)
        .map(|(s, &e)| (s.multiplicity as u64).max(e))
        .sum();
    Ok(ValuationBound {
        sum_l: inst.sum_l(),
        excess,
        bound,
    })
}

/// `ν_q(lhs)` computed by expanding the whole product; independent of the
/// split used by [`lhs_valuation_exact`].
pub fn lhs_valuation_expanded(inst: &EquationInstance, n: &[u64], q: u64) -> Option<u64> {
    let v = inst.lhs_value(n);
    if v.is_zero() {
        None
    } else {
        integer_valuation(&v, q).ok()
    }
}
