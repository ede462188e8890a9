//! Polynomials over the prime field `F_q`: root existence and the
//! factorization degree pattern.
//!
//! For a prime `q` not dividing the leading coefficient or the discriminant,
//! the multiset of irreducible-factor degrees of `f mod q` is the cycle type
//! of the Frobenius at `q` (Dedekind). That pattern is all the certificate
//! machinery needs, so no Galois group is ever computed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, mulmod, powmod};
use crate::error::{Error, Result};
use crate::poly::{discriminant, IntegerPolynomial};

/// Primes up to this bound are checked for roots by direct evaluation.
pub const EXHAUSTIVE_ROOT_SCAN_LIMIT: u64 = 10_000;

/// Dense polynomial over `F_q`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyModP {
    q: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(q: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { q, coeffs }
    }

    pub fn reduce(p: &IntegerPolynomial, q: u64) -> Self {
        let qb = BigInt::from(q);
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&qb).to_u64().expect("residue fits in u64"))
            .collect();
        Self::new(q, coeffs)
    }

    fn one(q: u64) -> Self {
        Self::new(q, vec![1])
    }

    fn x(q: u64) -> Self {
        Self::new(q, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, self.q) + c) % self.q)
    }

    fn inv(&self, a: u64) -> u64 {
        powmod(a, self.q - 2, self.q)
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = self.inv(lead);
                Self::new(
                    self.q,
                    self.coeffs
                        .iter()
                        .map(|&c| mulmod(c, inv, self.q))
                        .collect(),
                )
            }
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let q = self.q;
        Self::new(
            q,
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).copied().unwrap_or(0);
                    let b = other.coeffs.get(k).copied().unwrap_or(0);
                    (a + q - b) % q
                })
                .collect(),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.q, Vec::new());
        }
        let q = self.q;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, q)) % q;
            }
        }
        Self::new(q, out)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let q = self.q;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lead = self.inv(divisor.coeffs[dd]);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(q, Vec::new()), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = mulmod(rem[k], inv_lead, q);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = (rem[idx] + q - mulmod(c, b, q)) % q;
            }
        }
        rem.truncate(dd);
        (Self::new(q, quot), Self::new(q, rem))
    }

    fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    fn div_exact(&self, divisor: &Self) -> Self {
        let (quot, rem) = self.div_rem(divisor);
        debug_assert!(rem.is_zero());
        quot
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> Self {
        let q = self.q;
        Self::new(
            q,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mulmod(c, k as u64 % q, q))
                .collect(),
        )
    }

    /// `base^e mod self`.
    fn pow_mod(&self, base: &Self, mut e: u64) -> Self {
        let mut acc = Self::one(self.q).rem(self);
        let mut b = base.rem(self);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(self);
            }
            b = b.mul(&b).rem(self);
            e >>= 1;
        }
        acc
    }

    /// `h^q mod self` for a residue `h`.
    fn frobenius(&self, h: &Self) -> Self {
        self.pow_mod(h, self.q)
    }

    /// Inverse Frobenius on a polynomial whose derivative vanishes: every
    /// exponent is a multiple of `q` and coefficients are fixed by `c ↦ c^q`.
    fn qth_root(&self) -> Self {
        let q = self.q as usize;
        Self::new(self.q, self.coeffs.iter().step_by(q).copied().collect())
    }

    /// Square-free decomposition of a monic polynomial as `(factor, multiplicity)`.
    fn squarefree_decomposition(&self) -> Vec<(Self, u64)> {
        let mut out = Vec::new();
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fp = f.derivative();
        let mut c = f.gcd(&fp);
        let mut w = f.div_exact(&c);
        let mut i = 1u64;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_exact(&w);
            i += 1;
        }
        if !c.is_one() {
            for (fac, m) in c.qth_root().squarefree_decomposition() {
                out.push((fac, m * self.q));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// `(k, product of all irreducible factors of degree k)`.
    fn distinct_degree(&self) -> Vec<(u64, Self)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(self.q);
        let mut h = x.clone();
        let mut k = 0u64;
        while let Some(deg) = f.degree() {
            if deg as u64 <= 2 * k {
                break;
            }
            k += 1;
            h = f.frobenius(&h);
            let g = h.sub(&x).gcd(&f);
            if !g.is_one() {
                f = f.div_exact(&g);
                h = h.rem(&f);
                out.push((k, g));
            }
        }
        if let Some(deg) = f.degree() {
            if deg > 0 {
                out.push((deg as u64, f));
            }
        }
        out
    }

    /// True iff `gcd(x^q - x, self)` is nontrivial.
    pub fn has_root_via_gcd(&self) -> bool {
        if self.degree().unwrap_or(0) == 0 {
            return false;
        }
        let x = Self::x(self.q);
        let xq = self.frobenius(&x);
        !xq.sub(&x).gcd(self).is_one()
    }

    pub fn has_root_by_scan(&self) -> bool {
        (0..self.q).any(|x0| self.eval(x0) == 0)
    }
}

/// Multiset of irreducible-factor degrees, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreePattern(Vec<u64>);

impl DegreePattern {
    pub fn new(mut parts: Vec<u64>) -> Self {
        parts.sort_unstable();
        Self(parts)
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Number of parts of size one (roots mod q, counted with multiplicity).
    pub fn linear_parts(&self) -> usize {
        self.0.iter().filter(|&&p| p == 1).count()
    }

    /// No part of size one: the pattern of a class in `C_F`.
    pub fn is_fixed_point_free(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&p| p >= 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    pub q: u64,
    pub pattern: DegreePattern,
    /// `p mod q` has no repeated factor.
    pub squarefree: bool,
    /// `q` divides `lc(p) · Δ(p)`: the pattern is still a valid factorization
    /// shape but carries no cycle-type interpretation.
    pub ramified: bool,
}

/// How [`has_root_mod_with`] decides root existence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootStrategy {
    /// Exhaustive scan below [`EXHAUSTIVE_ROOT_SCAN_LIMIT`], gcd above.
    Auto,
    Scan,
    Gcd,
}

fn reduce_checked(p: &IntegerPolynomial, q: u64) -> Result<PolyModP> {
    if !is_prime_u64(q) {
        return Err(Error::NotPrime(q));
    }
    let reduced = PolyModP::reduce(p, q);
    if reduced.is_zero() {
        return Err(Error::VanishesModPrime(q));
    }
    Ok(reduced)
}

pub fn has_root_mod(p: &IntegerPolynomial, q: u64) -> Result<bool> {
    has_root_mod_with(p, q, RootStrategy::Auto)
}

pub fn has_root_mod_with(p: &IntegerPolynomial, q: u64, strategy: RootStrategy) -> Result<bool> {
    let reduced = reduce_checked(p, q)?;
    let scan = match strategy {
        RootStrategy::Auto => q <= EXHAUSTIVE_ROOT_SCAN_LIMIT,
        RootStrategy::Scan => true,
        RootStrategy::Gcd => false,
    };
    Ok(if scan {
        reduced.has_root_by_scan()
    } else {
        reduced.has_root_via_gcd()
    })
}

/// Degree pattern of `p mod q`, with multiplicities for repeated factors.
pub fn degree_pattern(p: &IntegerPolynomial, q: u64) -> Result<PatternReport> {
    let reduced = reduce_checked(p, q)?;
    let parts = pattern_of(&reduced);
    let squarefree =
        reduced.degree().unwrap_or(0) == 0 || reduced.gcd(&reduced.derivative()).is_one();
    let lead_divisible = (p.leading().expect("nonzero") % q).is_zero();
    let ramified = lead_divisible
        || match discriminant(p) {
            Ok(disc) => (disc % q).is_zero(),
            Err(_) => false,
        };
    Ok(PatternReport {
        q,
        pattern: parts,
        squarefree,
        ramified,
    })
}

fn pattern_of(p: &PolyModP) -> DegreePattern {
    let mut parts = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        for (k, g) in factor.distinct_degree() {
            let count = g.degree().unwrap_or(0) as u64 / k;
            for _ in 0..count * mult {
                parts.push(k);
            }
        }
    }
    DegreePattern::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    #[test]
    fn root_examples() {
        assert!(!has_root_mod(&poly(&[1, 0, 1]), 3).unwrap());
        assert!(has_root_mod(&poly(&[1, 0, 1]), 5).unwrap());
        assert!(has_root_mod(&poly(&[-1, 1]), 7).unwrap());
        assert_eq!(
            has_root_mod(&poly(&[3, 6]), 3),
            Err(Error::VanishesModPrime(3))
        );
        assert_eq!(has_root_mod(&poly(&[1, 1]), 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn root_above_scan_threshold_uses_gcd() {
        // 10007 ≡ 3 mod 4, so x^2 + 1 has no root; 10009 ≡ 1 mod 4.
        assert!(!has_root_mod(&poly(&[1, 0, 1]), 10_007).unwrap());
        assert!(has_root_mod(&poly(&[1, 0, 1]), 10_009).unwrap());
    }

    #[test]
    fn pattern_examples() {
        let r = degree_pattern(&poly(&[1, 0, 1]), 3).unwrap();
        assert_eq!(r.pattern.parts(), &[2]);
        assert!(!r.ramified);
        let r = degree_pattern(&poly(&[1, 0, 1]), 5).unwrap();
        assert_eq!(r.pattern.parts(), &[1, 1]);
        let r = degree_pattern(&poly(&[1, 0, 0, 0, 1]), 3).unwrap();
        assert_eq!(r.pattern.parts(), &[2, 2]);
    }

    #[test]
    fn ramified_prime_is_flagged() {
        // x^2 + 1 mod 2 = (x + 1)^2
        let r = degree_pattern(&poly(&[1, 0, 1]), 2).unwrap();
        assert!(r.ramified);
        assert!(!r.squarefree);
        assert_eq!(r.pattern.parts(), &[1, 1]);
    }

    #[test]
    fn pattern_handles_qth_powers() {
        // (x^3 + 2)^3 = x^9 + 2 mod 3 after Frobenius; x^3 + 2 = (x + 2)^3 mod 3.
        let r = degree_pattern(&poly(&[2, 0, 0, 0, 0, 0, 0, 0, 0, 1]), 3).unwrap();
        assert_eq!(r.pattern.parts(), &[1; 9]);
        // (x^2+1)^3 mod 3 has pattern {2,2,2}
        let base = poly(&[1, 0, 1]);
        let cube = base.mul(&base).mul(&base);
        let r = degree_pattern(&cube, 3).unwrap();
        assert_eq!(r.pattern.parts(), &[2, 2, 2]);
    }

    /// Brute-force pattern: strip monic irreducible factors found by trial
    /// division over every monic polynomial of each degree.
    fn brute_pattern(p: &IntegerPolynomial, q: u64) -> Vec<u64> {
        let mut f = PolyModP::reduce(p, q).monic();
        let mut parts = Vec::new();
        let mut k = 1usize;
        while f.degree().unwrap_or(0) > 0 {
            if 2 * k > f.degree().unwrap() {
                parts.push(f.degree().unwrap() as u64);
                break;
            }
            let mut found = false;
            let count = q.pow(k as u32);
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(k + 1);
                let mut m = idx;
                for _ in 0..k {
                    coeffs.push(m % q);
                    m /= q;
                }
                coeffs.push(1);
                let cand = PolyModP::new(q, coeffs);
                let (quot, rem) = f.div_rem(&cand);
                if rem.is_zero() {
                    parts.push(k as u64);
                    f = quot;
                    found = true;
                    break;
                }
            }
            if !found {
                k += 1;
            }
        }
        parts.sort_unstable();
        parts
    }

    #[test]
    fn quartic_pattern_matches_exhaustive_factorization() {
        let p = poly(&[1, 0, 0, 0, 1]);
        for q in [3u64, 5, 7, 11, 13] {
            assert_eq!(
                degree_pattern(&p, q).unwrap().pattern.parts(),
                brute_pattern(&p, q).as_slice(),
                "q = {q}"
            );
        }
    }

    #[test]
    fn quartic_cyclotomic_never_irreducible_mod_q() {
        let p = poly(&[1, 0, 0, 0, 1]);
        for q in primes_up_to(100).into_iter().skip(1) {
            let parts = degree_pattern(&p, q).unwrap().pattern;
            assert_ne!(parts.parts(), &[4], "q = {q}");
        }
    }

    fn arb_case() -> impl Strategy<Value = (IntegerPolynomial, u64)> {
        let primes = primes_up_to(200);
        (
            prop::collection::vec(-40i64..=40, 2..8),
            prop::sample::select(primes),
        )
            .prop_filter_map("lc divisible by q", |(c, q)| {
                let p = IntegerPolynomial::from_i64(&c);
                let lead = p.leading()?.clone();
                if p.degree()? == 0 || (lead % q).is_zero() {
                    None
                } else {
                    Some((p, q))
                }
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn pattern_sums_to_degree((p, q) in arb_case()) {
            let r = degree_pattern(&p, q).unwrap();
            prop_assert_eq!(r.pattern.total_degree(), p.degree().unwrap() as u64);
        }

        #[test]
        fn linear_part_iff_root((p, q) in arb_case()) {
            let r = degree_pattern(&p, q).unwrap();
            let scan = has_root_mod_with(&p, q, RootStrategy::Scan).unwrap();
            let gcd = has_root_mod_with(&p, q, RootStrategy::Gcd).unwrap();
            prop_assert_eq!(scan, gcd);
            prop_assert_eq!(r.pattern.linear_parts() > 0, scan);
        }

        #[test]
        fn dedekind_root_count((p, q) in arb_case()) {
            let r = degree_pattern(&p, q).unwrap();
            prop_assume!(!r.ramified);
            let reduced = PolyModP::reduce(&p, q);
            let roots = (0..q).filter(|&x| reduced.eval(x) == 0).count();
            prop_assert_eq!(roots, r.pattern.linear_parts());
        }

        #[test]
        fn pattern_matches_brute_force(
            c in prop::collection::vec(-30i64..=30, 2..7),
            q in prop::sample::select(vec![2u64, 3, 5, 7]),
        ) {
            let p = IntegerPolynomial::from_i64(&c);
            prop_assume!(p.degree().unwrap_or(0) >= 1);
            prop_assume!(!(p.leading().unwrap() % q).is_zero());
            let r = degree_pattern(&p, q).unwrap();
            let brute = brute_pattern(&p, q);
            prop_assert_eq!(r.pattern.parts(), brute.as_slice());
        }
    }
}
