//! Radical bounds for `F(n) = ∏ Q_i(A_i^{n_i} n_i!)` in log space.
//!
//! With `x_i = A_i^{n_i} n_i!` and `Q_i = x^{l_i} R_i`,
//! `N(F) ≤ ∏ N(x_i) · |R_i(x_i)|` and `N(x_i) ≤ N(A_i) · N(n_i!) < N(A_i) 4^{n_i}`
//! by the Finsler inequality. Under the abc conjecture, finiteness follows
//! once `N(F)^{1+ε} = o(F)`; this module measures that ratio.
//!
//! The `9/10` margin in [`select_epsilon`] is fixed; any constant below
//! every `l_i` would serve.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::arith::{ln_biguint, radical, scaled_factorial, FactorBudget};
use crate::error::{Error, Result};
use crate::instance::EquationInstance;

const LN_4: f64 = 2.0 * std::f64::consts::LN_2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorParams {
    /// Multiplicity of the root `0` of `Q_i`.
    pub l: u32,
    /// `deg R_i`.
    pub cofactor_degree: usize,
    /// `D_i`: sum of `|coefficients|` of `R_i`, so `|R_i(x)| ≤ D_i x^{deg R_i}` for `x ≥ 1`.
    #[serde(with = "crate::serde_big")]
    pub coeff_sum: BigInt,
    /// `N(A_i)`.
    #[serde(serialize_with = "crate::serde_big::unsigned::serialize")]
    pub base_radical: BigUint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbcBoundParams {
    pub factors: Vec<FactorParams>,
    pub epsilon: f64,
    /// `k` when `ε = 1/2^k` was selected automatically.
    pub epsilon_exponent: Option<u32>,
    /// `ln C` with `C = ∏ N(A_i)`.
    pub ln_c: f64,
    /// `ln C″` with `C″ = C^{1+ε} · (∏ D_i)^ε`.
    pub ln_c_double_prime: f64,
    pub constant_rule: String,
}

impl AbcBoundParams {
    fn assemble(
        inst: &EquationInstance,
        epsilon: f64,
        epsilon_exponent: Option<u32>,
    ) -> Result<Self> {
        let budget = FactorBudget::default();
        let factors = inst
            .splits()
            .iter()
            .zip(inst.bases())
            .map(|(s, &a)| {
                Ok(FactorParams {
                    l: s.multiplicity,
                    cofactor_degree: s.cofactor.degree().unwrap_or(0),
                    coeff_sum: s.cofactor.coefficient_norm_l1(),
                    base_radical: radical(&BigInt::from(a), &budget)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ln_c: f64 = factors.iter().map(|f| ln_biguint(&f.base_radical)).sum();
        let ln_d: f64 = factors
            .iter()
            .map(|f| ln_biguint(f.coeff_sum.magnitude()))
            .sum();
        let ln_c_double_prime = (1.0 + epsilon) * ln_c + epsilon * ln_d;
        log::debug!("C'' = (prod N(A_i))^(1+eps) * (prod D_i)^eps, ln C'' = {ln_c_double_prime}");
        Ok(Self {
            factors,
            epsilon,
            epsilon_exponent,
            ln_c,
            ln_c_double_prime,
            constant_rule: "C'' = (prod N(A_i))^(1+eps) * (prod D_i)^eps".into(),
        })
    }

    /// Same constants with an explicit `ε ≥ 0`, bypassing the margin check.
    pub fn with_epsilon(inst: &EquationInstance, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "epsilon must be >= 0, got {epsilon}"
            )));
        }
        Self::assemble(inst, epsilon, None)
    }

    /// `l_i − deg R_i · ε > 9/10` for every factor.
    pub fn margin_holds(&self) -> bool {
        self.factors
            .iter()
            .all(|f| f.l as f64 - f.cofactor_degree as f64 * self.epsilon > 0.9)
    }
}

/// Largest `ε = 1/2^k`, `1 ≤ k ≤ 20`, with `l_i − deg R_i · ε > 9/10` for all `i`.
pub fn select_epsilon(inst: &EquationInstance) -> Result<AbcBoundParams> {
    inst.require_zero_roots()?;
    let fits = |k: u32| {
        let scale = 1u128 << k;
        inst.splits().iter().all(|s| {
            let l = s.multiplicity as u128;
            let d = s.cofactor.degree().unwrap_or(0) as u128;
            // l - d/2^k > 9/10, scaled by 10·2^k.
            10 * l * scale > 10 * d + 9 * scale
        })
    };
    let k = (1..=20)
        .find(|&k| fits(k))
        .ok_or_else(|| Error::Invariant("no epsilon 1/2^k with k <= 20 fits".into()))?;
    AbcBoundParams::assemble(inst, 0.5f64.powi(k as i32), Some(k))
}

fn check_tuple(inst: &EquationInstance, n: &[u64], params: &AbcBoundParams) -> Result<()> {
    if n.len() != inst.r() || params.factors.len() != inst.r() {
        return Err(Error::InvalidInput(format!(
            "tuple has {} entries, instance has r = {}",
            n.len(),
            inst.r()
        )));
    }
    if n.contains(&0) {
        return Err(Error::InvalidInput(
            "radical bounds need every n_i >= 1".into(),
        ));
    }
    Ok(())
}

/// `ln(A^n n!)` via log-gamma.
pub fn ln_scaled_factorial(a: u64, n: u64) -> f64 {
    n as f64 * (a as f64).ln() + ln_gamma(n as f64 + 1.0)
}

/// `ln |R_i(x_i)|`, evaluated exactly.
fn ln_cofactor(inst: &EquationInstance, i: usize, n: u64) -> Result<f64> {
    let v = inst.cofactor_value(i, n);
    if v.is_zero() {
        return Err(Error::InvalidInput(format!(
            "R_{}(A_{}^n n!) vanishes at n = {n}",
            i + 1,
            i + 1
        )));
    }
    Ok(ln_biguint(v.magnitude()))
}

/// `ln(C · 4^{Σ n_i} · ∏ |R_i(x_i)|)`.
pub fn radical_bound_log(
    inst: &EquationInstance,
    n: &[u64],
    params: &AbcBoundParams,
) -> Result<f64> {
    check_tuple(inst, n, params)?;
    let mut acc = params.ln_c;
    for (i, &ni) in n.iter().enumerate() {
        acc += ni as f64 * LN_4 + ln_cofactor(inst, i, ni)?;
    }
    Ok(acc)
}

/// `ln |F(n)|`.
pub fn log_f(inst: &EquationInstance, n: &[u64]) -> Result<f64> {
    let mut acc = 0.0;
    for (i, &ni) in n.iter().enumerate() {
        let l = inst.splits()[i].multiplicity as f64;
        acc += l * ln_scaled_factorial(inst.bases()[i], ni) + ln_cofactor(inst, i, ni)?;
    }
    Ok(acc)
}

/// `(1+ε) · radical_bound_log − ln F`; negative means the bound ratio is below 1.
pub fn abc_log_ratio(inst: &EquationInstance, n: &[u64], params: &AbcBoundParams) -> Result<f64> {
    let bound = radical_bound_log(inst, n, params)?;
    Ok((1.0 + params.epsilon) * bound - log_f(inst, n)?)
}

/// The coarser chain with `|R_i(x)|^ε ≤ D_i^ε x^{ε deg R_i}`:
/// `ln C″ + (1+ε) Σ n_i ln 4 + Σ ln|R_i(x_i)| + ε Σ deg R_i ln x_i − ln F`,
/// which simplifies to `ln C″ + (1+ε) Σ n_i ln 4 − Σ (l_i − ε deg R_i) ln x_i`.
pub fn abc_chain_log_ratio(
    inst: &EquationInstance,
    n: &[u64],
    params: &AbcBoundParams,
) -> Result<f64> {
    check_tuple(inst, n, params)?;
    let eps = params.epsilon;
    let mut acc = params.ln_c_double_prime;
    for (i, &ni) in n.iter().enumerate() {
        let f = &params.factors[i];
        let ln_x = ln_scaled_factorial(inst.bases()[i], ni);
        acc +=
            (1.0 + eps) * ni as f64 * LN_4 - (f.l as f64 - eps * f.cofactor_degree as f64) * ln_x;
    }
    Ok(acc)
}

/// Exact `N(F(n))`, checked against the log-space bound.
pub fn exact_radical_small(
    inst: &EquationInstance,
    n: &[u64],
    params: &AbcBoundParams,
    budget: &FactorBudget,
) -> Result<BigUint> {
    let bound = radical_bound_log(inst, n, params)?;
    let value = inst.lhs_value(n);
    let rad = radical(&value, budget)?;
    let exact = ln_biguint(&rad);
    if exact > bound + 1e-9 * bound.abs().max(1.0) {
        return Err(Error::Invariant(format!(
            "radical of F{n:?} exceeds its bound: ln N = {exact}, bound = {bound}"
        )));
    }
    Ok(rad)
}

/// The bound `C · 4^{Σ n_i} · ∏ |R_i(x_i)|` as an exact integer, for cross-checks.
pub fn radical_bound_exact(
    inst: &EquationInstance,
    n: &[u64],
    params: &AbcBoundParams,
) -> Result<BigUint> {
    check_tuple(inst, n, params)?;
    let mut acc: BigUint = params
        .factors
        .iter()
        .map(|f| f.base_radical.clone())
        .product();
    for (i, &ni) in n.iter().enumerate() {
        acc <<= 2 * ni as usize;
        let x = BigInt::from(scaled_factorial(inst.bases()[i], ni));
        acc *= inst.splits()[i].cofactor.eval(&x).abs().magnitude();
    }
    if acc.is_zero() {
        return Err(Error::InvalidInput(format!(
            "F{n:?} has a vanishing cofactor"
        )));
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridRow {
    pub n: Vec<u64>,
    pub log_f: f64,
    pub log_radical_bound: f64,
    pub log_ratio: f64,
}

/// Rows for every tuple in `[1, n_max]^r`, in lexicographic order.
pub fn ratio_grid(
    inst: &EquationInstance,
    params: &AbcBoundParams,
    n_max: u64,
) -> Result<Vec<GridRow>> {
    let r = inst.r() as u32;
    let total = n_max
        .checked_pow(r)
        .ok_or_else(|| Error::InvalidInput("grid too large".into()))?;
    (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut n = vec![0u64; r as usize];
            for slot in n.iter_mut().rev() {
                *slot = idx % n_max + 1;
                idx /= n_max;
            }
            let log_radical_bound = radical_bound_log(inst, &n, params)?;
            let log_f = log_f(inst, &n)?;
            let log_ratio = (1.0 + params.epsilon) * log_radical_bound - log_f;
            Ok(GridRow {
                n,
                log_f,
                log_radical_bound,
                log_ratio,
            })
        })
        .collect()
}

/// CSV with columns `n_1..n_r, log_F, log_radical_bound, log_ratio`.
pub fn grid_csv(r: usize, rows: &[GridRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=r).map(|i| format!("n_{i}")).collect();
    header.extend([
        "log_F".into(),
        "log_radical_bound".into(),
        "log_ratio".into(),
    ]);
    let err = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
    w.write_record(&header).map_err(err)?;
    for row in rows {
        let mut rec: Vec<String> = row.n.iter().map(u64::to_string).collect();
        rec.push(row.log_f.to_string());
        rec.push(row.log_radical_bound.to_string());
        rec.push(row.log_ratio.to_string());
        w.write_record(&rec).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Invariant(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
}

/// First `n` from which `(l − deg R · ε) ln(n+1)` exceeds
/// `(1+ε) ln 4 + ε deg R ln A + l ln A`, scanning up to `limit`.
pub fn monotonicity_threshold(f: &FactorParams, a: u64, epsilon: f64, limit: u64) -> Option<u64> {
    let l = f.l as f64;
    let dr = f.cofactor_degree as f64;
    let ln_a = (a as f64).ln();
    let rhs = (1.0 + epsilon) * LN_4 + epsilon * dr * ln_a + l * ln_a;
    (1..=limit).find(|&n| (l - dr * epsilon) * ((n + 1) as f64).ln() > rhs)
}
