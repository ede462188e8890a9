//! Exact integer polynomials and homogeneous binary forms.
//!
//! Univariate polynomials store coefficients in ascending order (constant
//! first). Binary forms store `a_d, …, a_0` in descending order of the
//! power of `x`, so `coeffs_desc[k]` multiplies `x^(d-k) y^k`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::modp;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntegerPolynomial {
    #[serde(with = "crate::serde_big::seq")]
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `p(x + 1) - p(x)`, one degree lower.
    pub fn forward_difference(&self) -> Self {
        let shifted = self.compose_shift_one();
        shifted.sub(self)
    }

    fn compose_shift_one(&self) -> Self {
        // Horner in the ring: p(x+1) = (...((c_n)(x+1) + c_{n-1})(x+1) + ...)
        let x_plus_one = Self::from_i64(&[1, 1]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(&x_plus_one).add(&Self::constant(c.clone()))
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(convolve(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `self - L`.
    pub fn shift_constant(&self, l: &BigInt) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        coeffs[0] -= l;
        Self::new(coeffs)
    }

    /// Sum of absolute values of the coefficients.
    pub fn coefficient_norm_l1(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Cauchy bound: every real root has absolute value at most this.
    pub fn cauchy_root_bound(&self) -> BigInt {
        let Some(lead) = self.leading() else {
            return BigInt::zero();
        };
        let lead = lead.abs();
        let max_ratio = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs().div_ceil(&lead))
            .max()
            .unwrap_or_default();
        max_ratio + 1
    }
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Homogeneous `f(x, y) = a_d x^d + a_{d-1} x^{d-1} y + … + a_0 y^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryForm {
    #[serde(with = "crate::serde_big::seq")]
    coeffs_desc: Vec<BigInt>,
}

impl BinaryForm {
    /// Builds a form from `a_d, …, a_0`. Degree is `len - 1`; leading zeros
    /// are kept since they still fix the degree of homogeneity.
    pub fn new(coeffs_desc: Vec<BigInt>) -> Result<Self> {
        if coeffs_desc.is_empty() || coeffs_desc.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { coeffs_desc })
    }

    pub fn from_i64(coeffs_desc: &[i64]) -> Result<Self> {
        Self::new(coeffs_desc.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Homogenizes `p` to its own degree: `y^d · p(x / y)`.
    pub fn homogenize(p: &IntegerPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Self::new(p.coeffs().iter().rev().cloned().collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs_desc.len() - 1
    }

    pub fn coeffs_desc(&self) -> &[BigInt] {
        &self.coeffs_desc
    }

    /// `a_d`, the coefficient of `x^d`.
    pub fn a_d(&self) -> &BigInt {
        &self.coeffs_desc[0]
    }

    /// `a_0`, the coefficient of `y^d`.
    pub fn a_0(&self) -> &BigInt {
        &self.coeffs_desc[self.degree()]
    }

    pub fn content(&self) -> BigInt {
        self.coeffs_desc
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `f(x, 1)` as an ascending univariate polynomial.
    pub fn dehomogenize(&self) -> IntegerPolynomial {
        IntegerPolynomial::new(self.coeffs_desc.iter().rev().cloned().collect())
    }

    /// The univariate slice `x ↦ f(x, y)` at a fixed `y`.
    pub fn slice_at_y(&self, y: &BigInt) -> IntegerPolynomial {
        let d = self.degree();
        let mut y_pow = BigInt::one();
        let mut asc = vec![BigInt::zero(); d + 1];
        // coefficient of x^(d-k) is a_{d-k} y^k
        for (k, a) in self.coeffs_desc.iter().enumerate() {
            asc[d - k] = a * &y_pow;
            y_pow *= y;
        }
        IntegerPolynomial::new(asc)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            coeffs_desc: convolve(&self.coeffs_desc, &other.coeffs_desc),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self {
            coeffs_desc: vec![BigInt::one()],
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs_desc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            let mut mono = String::new();
            let xp = d - k;
            match xp {
                0 => {}
                1 => mono.push('x'),
                _ => mono.push_str(&format!("x^{xp}")),
            }
            match k {
                0 => {}
                1 => mono.push('y'),
                _ => mono.push_str(&format!("y^{k}")),
            }
            if mono.is_empty() || !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

/// Exact value of `f(x, y)` by Horner's scheme in `x` with powers of `y`.
pub fn eval_form(f: &BinaryForm, x: &BigInt, y: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut y_pow = BigInt::one();
    // acc holds a_d x^k + a_{d-1} x^{k-1} y + ... after step k; the y powers
    // are folded in by scaling each new coefficient by y^k.
    for a in f.coeffs_desc.iter() {
        acc = acc * x + a * &y_pow;
        y_pow *= y;
    }
    acc
}

/// A composite form supplied together with its factorization
/// `f = f_1^{e_1} ⋯ f_u^{e_u}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFactorization {
    composite: BinaryForm,
    factors: Vec<(BinaryForm, u32)>,
}

impl FormFactorization {
    /// Expands the factors and, if `declared` is given, checks it matches
    /// coefficient by coefficient.
    pub fn new(factors: Vec<(BinaryForm, u32)>, declared: Option<BinaryForm>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("factorization has no factors".into()));
        }
        if let Some((_, 0)) = factors.iter().find(|(_, e)| *e == 0) {
            return Err(Error::InvalidInput(
                "factor exponent must be at least 1".into(),
            ));
        }
        let expanded = factors
            .iter()
            .map(|(f, e)| f.pow(*e))
            .reduce(|a, b| a.mul(&b))
            .expect("non-empty");
        if let Some(declared) = declared {
            if declared != expanded {
                return Err(Error::InvalidInput(format!(
                    "declared composite {declared} does not equal the product of its factors {expanded}"
                )));
            }
        }
        Ok(Self {
            composite: expanded,
            factors,
        })
    }

    /// A single (assumed irreducible) form with exponent 1.
    pub fn single(f: BinaryForm) -> Self {
        Self {
            composite: f.clone(),
            factors: vec![(f, 1)],
        }
    }

    pub fn composite(&self) -> &BinaryForm {
        &self.composite
    }

    pub fn factors(&self) -> &[(BinaryForm, u32)] {
        &self.factors
    }

    /// Product of the distinct factors, each to the first power.
    pub fn squarefree_kernel(&self) -> BinaryForm {
        self.factors
            .iter()
            .map(|(f, _)| f.clone())
            .reduce(|a, b| a.mul(&b))
            .expect("non-empty")
    }

    /// Lower bound on `ν_q(f(x, y))` at a useful prime `q` dividing the
    /// value: `d` for one irreducible factor, `min d_j e_j` in general.
    pub fn valuation_threshold(&self) -> u64 {
        self.factors
            .iter()
            .map(|(f, e)| f.degree() as u64 * *e as u64)
            .min()
            .expect("non-empty")
    }
}

/// `Q(x) = x^l · R(x)` with `R(0) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroRootSplit {
    pub multiplicity: u32,
    pub cofactor: IntegerPolynomial,
}

impl ZeroRootSplit {
    /// `R(0)`, written `f_{i0}` in the proofs.
    pub fn cofactor_constant(&self) -> &BigInt {
        &self.cofactor.coeffs()[0]
    }

    pub fn recombine(&self) -> IntegerPolynomial {
        IntegerPolynomial::monomial(self.multiplicity as usize).mul(&self.cofactor)
    }
}

pub fn zero_root_split(q: &IntegerPolynomial) -> Result<ZeroRootSplit> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let l = q.coeffs().iter().take_while(|c| c.is_zero()).count();
    Ok(ZeroRootSplit {
        multiplicity: l as u32,
        cofactor: IntegerPolynomial::new(q.coeffs()[l..].to_vec()),
    })
}

/// Resultant of two polynomials as the determinant of their Sylvester
/// matrix, computed with fraction-free (Bareiss) elimination.
pub fn resultant(p: &IntegerPolynomial, q: &IntegerPolynomial) -> BigInt {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return BigInt::zero();
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // Rows hold descending coefficients shifted right.
    for row in 0..n {
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Discriminant `(-1)^{n(n-1)/2} Res(p, p') / lc(p)`.
pub fn discriminant(p: &IntegerPolynomial) -> Result<BigInt> {
    let n = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => {
            return Err(Error::DegreeTooSmall {
                required: 1,
                actual: 0,
            })
        }
        Some(n) => n,
    };
    if n == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(p, &p.derivative());
    let lead = p.leading().expect("nonzero");
    let (q, r) = res.div_rem(lead);
    if !r.is_zero() {
        return Err(Error::Invariant(format!(
            "resultant {res} not divisible by leading coefficient {lead}"
        )));
    }
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModifiedDiscriminant {
    /// `Δ_{f(x,1)} / g^{2d-2}`.
    #[serde(with = "crate::serde_big")]
    pub value: BigInt,
    /// Content `g` of the form.
    #[serde(with = "crate::serde_big")]
    pub content: BigInt,
    /// `Δ_{f(x,1)}` itself.
    #[serde(with = "crate::serde_big")]
    pub discriminant: BigInt,
}

pub fn modified_discriminant(f: &BinaryForm) -> Result<ModifiedDiscriminant> {
    if f.a_d().is_zero() {
        return Err(Error::InvalidInput(
            "modified discriminant needs a_d != 0 so that f(x,1) has degree d".into(),
        ));
    }
    let d = f.degree();
    let disc = discriminant(&f.dehomogenize())?;
    let g = f.content();
    let denom = num_traits::pow(g.clone(), 2 * d - 2);
    let (value, r) = disc.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::Invariant(format!(
            "discriminant {disc} not divisible by g^(2d-2) = {denom}"
        )));
    }
    Ok(ModifiedDiscriminant {
        value,
        content: g,
        discriminant: disc,
    })
}

/// Searches primes up to `prime_limit` for one modulo which the primitive
/// part of `p` is irreducible. A witness proves irreducibility over ℚ;
/// `None` proves nothing.
pub fn irreducibility_witness(p: &IntegerPolynomial, prime_limit: u64) -> Option<u64> {
    let p = p.primitive_part();
    let d = p.degree()?;
    if d == 0 {
        return None;
    }
    if d == 1 {
        return primes_up_to(prime_limit)
            .into_iter()
            .find(|&q| !(p.leading().unwrap() % q).is_zero());
    }
    let lead = p.leading().unwrap().clone();
    primes_up_to(prime_limit).into_iter().find(|&q| {
        if (&lead % q).is_zero() {
            return false;
        }
        match modp::degree_pattern(&p, q) {
            Ok(report) => report.squarefree && report.pattern.parts() == [d as u64],
            Err(_) => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&poly(&[1, 0, 1])).unwrap(), BigInt::from(-4));
        assert_eq!(
            discriminant(&poly(&[0, -1, 0, 1])).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(discriminant(&poly(&[-1, 0, 1])).unwrap(), BigInt::from(4));
        assert!(matches!(
            discriminant(&poly(&[5])),
            Err(Error::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn discriminant_of_quartic_cyclotomic() {
        // disc(x^4 + 1) = 256
        assert_eq!(
            discriminant(&poly(&[1, 0, 0, 0, 1])).unwrap(),
            BigInt::from(256)
        );
    }

    #[test]
    fn modified_discriminant_examples() {
        let f = BinaryForm::from_i64(&[2, 0, 2]).unwrap();
        let m = modified_discriminant(&f).unwrap();
        assert_eq!(m.value, BigInt::from(-4));
        assert_eq!(m.content, BigInt::from(2));
        assert_eq!(m.discriminant, BigInt::from(-16));

        let f = BinaryForm::from_i64(&[1, 0, 1]).unwrap();
        assert_eq!(modified_discriminant(&f).unwrap().value, BigInt::from(-4));

        // disc(3x^3 + 3) = -27 * 3^4 * 3^... computed by hand via
        // disc(a x^3 + d) = -27 a^2 d^2 = -27 * 9 * 9 = -2187; 2187 / 3^4 = 27.
        let f = BinaryForm::from_i64(&[3, 0, 0, 3]).unwrap();
        let m = modified_discriminant(&f).unwrap();
        assert_eq!(m.discriminant, BigInt::from(-2187));
        assert_eq!(m.value, BigInt::from(-27));
    }

    #[test]
    fn zero_root_split_examples() {
        let s = zero_root_split(&poly(&[0, 0, 2, 1])).unwrap();
        assert_eq!(s.multiplicity, 2);
        assert_eq!(s.cofactor, poly(&[2, 1]));
        let s = zero_root_split(&poly(&[0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!((s.multiplicity, s.cofactor), (5, poly(&[1])));
        let s = zero_root_split(&poly(&[7])).unwrap();
        assert_eq!((s.multiplicity, s.cofactor), (0, poly(&[7])));
        assert_eq!(
            zero_root_split(&IntegerPolynomial::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn eval_form_examples() {
        let sum_sq = BinaryForm::from_i64(&[1, 0, 1]).unwrap();
        let b = BigInt::from;
        assert_eq!(eval_form(&sum_sq, &b(3), &b(4)), b(25));
        assert_eq!(eval_form(&sum_sq, &b(0), &b(0)), b(0));
        let cubic = BinaryForm::from_i64(&[2, 0, -1, 1]).unwrap();
        assert_eq!(eval_form(&cubic, &b(2), &b(-1)), b(13));
    }

    #[test]
    fn irreducibility_witness_examples() {
        assert_eq!(irreducibility_witness(&poly(&[1, 0, 1]), 100), Some(3));
        assert_eq!(irreducibility_witness(&poly(&[-1, 0, 1]), 100), None);
        assert_eq!(irreducibility_witness(&poly(&[1, 0, 0, 0, 1]), 1000), None);
        // content is stripped first
        assert_eq!(irreducibility_witness(&poly(&[2, 0, 2]), 100), Some(3));
    }

    #[test]
    fn factorization_checks_declared_composite() {
        let f1 = BinaryForm::from_i64(&[1, 0, 1]).unwrap();
        let f2 = BinaryForm::from_i64(&[1, 1, 1]).unwrap();
        let declared = f1.mul(&f2).mul(&f2);
        let ff =
            FormFactorization::new(vec![(f1.clone(), 1), (f2.clone(), 2)], Some(declared)).unwrap();
        assert_eq!(ff.composite().degree(), 6);
        assert_eq!(ff.valuation_threshold(), 2);
        let wrong = f1.mul(&f2);
        assert!(FormFactorization::new(vec![(f1, 1), (f2, 2)], Some(wrong)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[1, 0, -3, 1]).to_string(), "x^3 - 3x^2 + 1");
        let f = BinaryForm::from_i64(&[2, 0, -1, 1]).unwrap();
        assert_eq!(f.to_string(), "2x^3 - xy^2 + y^3");
    }

    fn small_poly() -> impl Strategy<Value = IntegerPolynomial> {
        prop::collection::vec(-20i64..=20, 1..8).prop_map(|c| IntegerPolynomial::from_i64(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn split_recombines(p in small_poly(), shift in 0usize..4) {
            prop_assume!(!p.is_zero());
            let p = IntegerPolynomial::monomial(shift).mul(&p);
            let s = zero_root_split(&p).unwrap();
            prop_assert!(s.multiplicity as usize >= shift);
            prop_assert!(!s.cofactor_constant().is_zero());
            prop_assert_eq!(s.recombine(), p);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn quadratic_discriminant_closed_form(a in -50i64..=50, b in -50i64..=50, c in -50i64..=50) {
            prop_assume!(a != 0);
            let d = discriminant(&poly(&[c, b, a])).unwrap();
            prop_assert_eq!(d, BigInt::from(b * b - 4 * a * c));
        }

        #[test]
        fn depressed_cubic_closed_form(p in -60i64..=60, q in -60i64..=60) {
            let d = discriminant(&poly(&[q, p, 0, 1])).unwrap();
            prop_assert_eq!(d, BigInt::from(-4 * p * p * p - 27 * q * q));
        }

        #[test]
        fn eval_form_is_homogeneous(
            coeffs in prop::collection::vec(-9i64..=9, 2..6),
            x in -12i64..=12, y in -12i64..=12, t in -6i64..=6,
        ) {
            prop_assume!(coeffs.iter().any(|&c| c != 0));
            let f = BinaryForm::from_i64(&coeffs).unwrap();
            let d = f.degree();
            let (x, y, t) = (BigInt::from(x), BigInt::from(y), BigInt::from(t));
            let lhs = eval_form(&f, &(&t * &x), &(&t * &y));
            let rhs = num_traits::pow(t.clone(), d) * eval_form(&f, &x, &y);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eval_form_matches_slice(
            coeffs in prop::collection::vec(-9i64..=9, 2..6),
            x in -12i64..=12, y in -12i64..=12,
        ) {
            prop_assume!(coeffs.iter().any(|&c| c != 0));
            let f = BinaryForm::from_i64(&coeffs).unwrap();
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            prop_assert_eq!(eval_form(&f, &x, &y), f.slice_at_y(&y).eval(&x));
        }

        #[test]
        fn forward_difference_definition(p in small_poly(), x in -30i64..=30) {
            let x = BigInt::from(x);
            let dp = p.forward_difference();
            prop_assert_eq!(dp.eval(&x), p.eval(&(&x + 1)) - p.eval(&x));
        }

        #[test]
        fn expansion_matches_factors(
            a in prop::collection::vec(-5i64..=5, 3..4),
            b in prop::collection::vec(-5i64..=5, 3..5),
            e in 1u32..3,
            x in -6i64..=6, y in -6i64..=6,
        ) {
            prop_assume!(a.iter().any(|&c| c != 0) && b.iter().any(|&c| c != 0));
            let fa = BinaryForm::from_i64(&a).unwrap();
            let fb = BinaryForm::from_i64(&b).unwrap();
            let ff = FormFactorization::new(vec![(fa.clone(), e), (fb.clone(), 1)], None).unwrap();
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            let direct = num_traits::pow(eval_form(&fa, &x, &y), e as usize) * eval_form(&fb, &x, &y);
            prop_assert_eq!(eval_form(ff.composite(), &x, &y), direct);
        }
    }
}
