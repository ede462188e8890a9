//! The equation `∏_{i=1}^r Q_i(A_i^{n_i} · n_i!) = rhs`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::scaled_factorial;
use crate::error::{Error, Result};
use crate::poly::{
    irreducibility_witness, zero_root_split, BinaryForm, FormFactorization, IntegerPolynomial,
    ZeroRootSplit,
};

/// Right-hand side of the equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rhs {
    /// A single homogeneous form `f(x, y)`, assumed irreducible for
    /// certificates.
    BinaryForm { form: BinaryForm },
    /// `f_1^{e_1} ⋯ f_u^{e_u}` with each `f_j` assumed irreducible.
    FactoredForm { factorization: FormFactorization },
    /// `f(x)` in one variable.
    Univariate { poly: IntegerPolynomial },
    /// `x^d`.
    MonomialPower { d: u32 },
}

impl Rhs {
    /// Degree `d` of the right-hand side.
    pub fn degree(&self) -> usize {
        match self {
            Rhs::BinaryForm { form } => form.degree(),
            Rhs::FactoredForm { factorization } => factorization.composite().degree(),
            Rhs::Univariate { poly } => poly.degree().unwrap_or(0),
            Rhs::MonomialPower { d } => *d as usize,
        }
    }

    /// The right-hand side viewed as a factored binary form. A univariate
    /// `f(x)` is homogenized, since `f(x) = F(x, 1)`. `x^d` has no useful
    /// prime structure and returns `None`.
    pub fn form_factorization(&self) -> Option<FormFactorization> {
        match self {
            Rhs::BinaryForm { form } => Some(FormFactorization::single(form.clone())),
            Rhs::FactoredForm { factorization } => Some(factorization.clone()),
            Rhs::Univariate { poly } => BinaryForm::homogenize(poly)
                .ok()
                .map(FormFactorization::single),
            Rhs::MonomialPower { .. } => None,
        }
    }

    /// Minimum `ν_q(rhs)` once a useful prime `q` divides it.
    pub fn valuation_threshold(&self) -> u64 {
        match self {
            Rhs::BinaryForm { form } => form.degree() as u64,
            Rhs::FactoredForm { factorization } => factorization.valuation_threshold(),
            Rhs::Univariate { poly } => poly.degree().unwrap_or(0) as u64,
            Rhs::MonomialPower { d } => *d as u64,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct InstanceFlags {
    /// Skip the irreducibility witness requirement for certificates.
    pub assume_irreducible: bool,
    /// Let search (only) include `n_i = 0`.
    pub allow_zero_n: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationInstance {
    q: Vec<IntegerPolynomial>,
    a: Vec<u64>,
    rhs: Rhs,
    flags: InstanceFlags,
    #[serde(skip)]
    splits: Vec<ZeroRootSplit>,
}

impl EquationInstance {
    pub fn new(
        q: Vec<IntegerPolynomial>,
        a: Vec<u64>,
        rhs: Rhs,
        flags: InstanceFlags,
    ) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::InvalidInput("Q list is empty".into()));
        }
        if q.len() != a.len() {
            return Err(Error::InvalidInput(format!(
                "Q/A length mismatch: {} polynomials, {} bases",
                q.len(),
                a.len()
            )));
        }
        if let Some(i) = a.iter().position(|&ai| ai == 0) {
            return Err(Error::InvalidInput(format!("A_{} must be positive", i + 1)));
        }
        let splits = q
            .iter()
            .enumerate()
            .map(|(i, p)| {
                zero_root_split(p)
                    .map_err(|_| Error::InvalidInput(format!("Q_{} is the zero polynomial", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        match &rhs {
            Rhs::MonomialPower { d } if *d < 2 => {
                return Err(Error::InvalidInput("monomial power needs d >= 2".into()))
            }
            Rhs::Univariate { poly } if poly.degree().unwrap_or(0) == 0 => {
                return Err(Error::InvalidInput(
                    "univariate right-hand side needs degree >= 1".into(),
                ))
            }
            _ => {}
        }
        Ok(Self {
            q,
            a,
            rhs,
            flags,
            splits,
        })
    }

    pub fn r(&self) -> usize {
        self.q.len()
    }

    pub fn q_polys(&self) -> &[IntegerPolynomial] {
        &self.q
    }

    pub fn bases(&self) -> &[u64] {
        &self.a
    }

    pub fn rhs(&self) -> &Rhs {
        &self.rhs
    }

    pub fn flags(&self) -> InstanceFlags {
        self.flags
    }

    pub fn splits(&self) -> &[ZeroRootSplit] {
        &self.splits
    }

    /// `l_1 + … + l_r`.
    pub fn sum_l(&self) -> u64 {
        self.splits.iter().map(|s| s.multiplicity as u64).sum()
    }

    /// Certificate and monomial modes need `0` to be a root of every `Q_i`.
    pub fn require_zero_roots(&self) -> Result<()> {
        for (i, s) in self.splits.iter().enumerate() {
            if s.multiplicity == 0 {
                let k = subscript(i + 1);
                return Err(Error::Hypothesis(format!("Q{k}(0) ≠ 0: l{k} = 0")));
            }
        }
        Ok(())
    }

    /// Smallest admissible `n_i`.
    pub fn min_n(&self) -> u64 {
        if self.flags.allow_zero_n {
            0
        } else {
            1
        }
    }

    pub fn check_tuple(&self, n: &[u64]) -> Result<()> {
        if n.len() != self.r() {
            return Err(Error::InvalidInput(format!(
                "tuple has {} entries, instance has r = {}",
                n.len(),
                self.r()
            )));
        }
        if !self.flags.allow_zero_n && n.contains(&0) {
            return Err(Error::InvalidInput("n_i = 0 is not allowed".into()));
        }
        Ok(())
    }

    /// `Q_i(A_i^{n} · n!)` for one factor.
    pub fn factor_value(&self, i: usize, n: u64) -> BigInt {
        let x = BigInt::from(scaled_factorial(self.a[i], n));
        self.q[i].eval(&x)
    }

    /// `R_i(A_i^{n} · n!)`, the cofactor after removing `x^{l_i}`.
    pub fn cofactor_value(&self, i: usize, n: u64) -> BigInt {
        let x = BigInt::from(scaled_factorial(self.a[i], n));
        self.splits[i].cofactor.eval(&x)
    }

    /// The left-hand side `∏ Q_i(A_i^{n_i} n_i!)`, exactly.
    pub fn lhs_value(&self, n: &[u64]) -> BigInt {
        let mut acc = BigInt::one();
        for (i, &ni) in n.iter().enumerate() {
            let v = self.factor_value(i, ni);
            if v.is_zero() {
                return v;
            }
            acc *= v;
        }
        acc
    }

    /// Indices whose `(Q_i, A_i)` coincide form interchangeable groups.
    pub fn symmetry_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.r() {
            match classes
                .iter_mut()
                .find(|c| self.q[c[0]] == self.q[i] && self.a[c[0]] == self.a[i])
            {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
        classes
    }

    /// Irreducibility of each rhs factor, either assumed by flag or proved by
    /// a prime witness below `prime_limit`.
    pub fn irreducibility_status(&self, prime_limit: u64) -> Vec<IrreducibilityStatus> {
        let Some(ff) = self.rhs.form_factorization() else {
            return Vec::new();
        };
        ff.factors()
            .iter()
            .map(|(f, _)| {
                let witness = irreducibility_witness(&f.dehomogenize(), prime_limit);
                IrreducibilityStatus {
                    factor: f.clone(),
                    witness,
                    assumed: self.flags.assume_irreducible,
                }
            })
            .collect()
    }
}

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap_or(0)).unwrap_or(c))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibilityStatus {
    pub factor: BinaryForm,
    /// A prime modulo which the factor is irreducible.
    pub witness: Option<u64>,
    pub assumed: bool,
}

impl IrreducibilityStatus {
    pub fn established(&self) -> bool {
        self.witness.is_some() || self.assumed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    fn sum_of_squares() -> Rhs {
        Rhs::BinaryForm {
            form: BinaryForm::from_i64(&[1, 0, 1]).unwrap(),
        }
    }

    #[test]
    fn rejects_length_mismatch() {
        let err = EquationInstance::new(
            vec![poly(&[0, 1])],
            vec![1, 2],
            sum_of_squares(),
            InstanceFlags::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("Q/A length mismatch"));
    }

    #[test]
    fn rejects_zero_polynomial_and_empty_list() {
        assert!(EquationInstance::new(
            vec![IntegerPolynomial::zero()],
            vec![1],
            sum_of_squares(),
            InstanceFlags::default()
        )
        .is_err());
        assert!(
            EquationInstance::new(vec![], vec![], sum_of_squares(), InstanceFlags::default())
                .is_err()
        );
    }

    #[test]
    fn zero_root_gate() {
        let inst = EquationInstance::new(
            vec![poly(&[1, 1])],
            vec![1],
            sum_of_squares(),
            InstanceFlags::default(),
        )
        .unwrap();
        let err = inst.require_zero_roots().unwrap_err();
        assert_eq!(err, Error::Hypothesis("Q₁(0) ≠ 0: l₁ = 0".into()));
    }

    #[test]
    fn lhs_value_and_symmetry() {
        let inst = EquationInstance::new(
            vec![poly(&[0, 1]), poly(&[0, 1]), poly(&[0, 0, 1])],
            vec![1, 1, 2],
            Rhs::MonomialPower { d: 5 },
            InstanceFlags::default(),
        )
        .unwrap();
        // 4! * 3! * (2^2 * 2!)^2 = 24 * 6 * 64
        assert_eq!(inst.lhs_value(&[4, 3, 2]), BigInt::from(24 * 6 * 64));
        assert_eq!(inst.symmetry_classes(), vec![vec![0, 1], vec![2]]);
        assert_eq!(inst.sum_l(), 4);
    }
}
