//! Bounded exhaustive search with exact representability tests.
//!
//! Integer roots are located without floating point. For a polynomial `p`,
//! the forward difference `Δp(t) = p(t+1) - p(t)` has lower degree; where
//! `Δp` keeps one sign, `p` is monotone on the integers. Recursing on `Δp`
//! splits any integer range into monotone runs, and each run is resolved by
//! binary search with exact evaluation.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_perfect_dth_power, primes_up_to};
use crate::certify::{interval_certificate, IntervalCertificate};
use crate::error::{Error, Result};
use crate::instance::{EquationInstance, Rhs};
use crate::poly::{eval_form, BinaryForm, IntegerPolynomial};

/// Breakpoints `lo = b_0 < b_1 < … < b_k = hi` such that `p` is monotone on
/// the integers of every `[b_j, b_{j+1}]`.
fn monotone_breakpoints(p: &IntegerPolynomial, lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
    if lo >= hi || p.degree().unwrap_or(0) <= 1 {
        return dedup_sorted(vec![lo.clone(), hi.clone()]);
    }
    let diff = p.forward_difference();
    let upper = hi - 1;
    let diff_points = monotone_breakpoints(&diff, lo, &upper);
    let mut points: BTreeSet<BigInt> = diff_points.iter().cloned().collect();
    points.insert(lo.clone());
    points.insert(hi.clone());
    for w in diff_points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let da = diff.eval(a);
        let db = diff.eval(b);
        // diff is monotone on [a, b]; p changes direction at most once there.
        let m = if da <= db {
            first_true(a, b, |t| !diff.eval(t).is_negative())
        } else {
            first_true(a, b, |t| !diff.eval(t).is_positive())
        };
        if &m > a && &m <= b {
            points.insert(m);
        }
    }
    points.into_iter().collect()
}

fn dedup_sorted(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.sort();
    v.dedup();
    v
}

/// Smallest `t` in `[lo, hi]` with `pred(t)`, for `pred` monotone
/// false→true; `hi + 1` if none.
fn first_true(lo: &BigInt, hi: &BigInt, pred: impl Fn(&BigInt) -> bool) -> BigInt {
    let mut a = lo.clone();
    let mut b = hi + 1;
    while a < b {
        let mid: BigInt = (&a + &b).div_floor(&BigInt::from(2));
        if pred(&mid) {
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    a
}

/// Every integer root of the nonzero polynomial `p` in `[lo, hi]`.
pub fn integer_roots_in(p: &IntegerPolynomial, lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
    assert!(!p.is_zero(), "zero polynomial has every integer as a root");
    if lo > hi || p.degree() == Some(0) {
        return Vec::new();
    }
    let points = monotone_breakpoints(p, lo, hi);
    let mut roots = BTreeSet::new();
    if points.len() == 1 && p.eval(&points[0]).is_zero() {
        roots.insert(points[0].clone());
    }
    for w in points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let pa = p.eval(a);
        let pb = p.eval(b);
        if (pa.is_positive() && pb.is_positive()) || (pa.is_negative() && pb.is_negative()) {
            continue;
        }
        let mut t = if pa <= pb {
            first_true(a, b, |t| !p.eval(t).is_negative())
        } else {
            first_true(a, b, |t| !p.eval(t).is_positive())
        };
        while &t <= b && p.eval(&t).is_zero() {
            roots.insert(t.clone());
            t += 1;
        }
    }
    roots.into_iter().collect()
}

/// All integer `x` with `p(x) = L`.
pub fn represent_univariate(p: &IntegerPolynomial, l: &BigInt) -> Result<Vec<BigInt>> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::DegreeTooSmall {
            required: 1,
            actual: 0,
        });
    }
    let shifted = p.shift_constant(l);
    let bound = shifted.cauchy_root_bound();
    Ok(integer_roots_in(&shifted, &(-&bound), &bound))
}

/// A certified lower bound `m = num / den > 0` with
/// `|f(x, y)| ≥ m · max(|x|, |y|)^d` for all real `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiniteBound {
    pub num: BigInt,
    pub den: BigInt,
    pub grid: u64,
}

/// Certifies that `f` is definite by bounding `|f|` below on the boundary
/// of the square `max(|x|, |y|) = 1`.
///
/// The boundary is covered by the segments `(t, 1)` and `(1, t)` for
/// `t ∈ [-1, 1]` (and their negatives, where `f` takes the same absolute
/// value since `d` is even when no real root exists). On a grid of step
/// `1/K` the values are exact, `f(k/K, 1) = f(k, K) / K^d`, and between grid
/// points the polynomial moves by at most `Lip / (2K)`.
pub fn certify_definite(f: &BinaryForm) -> Option<DefiniteBound> {
    let d = f.degree();
    if d == 0 || d % 2 == 1 {
        return None;
    }
    let g1 = f.dehomogenize();
    let g2 = IntegerPolynomial::new(f.coeffs_desc().to_vec());
    let lipschitz = |g: &IntegerPolynomial| -> BigInt {
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs() * BigInt::from(k))
            .sum()
    };
    let lip = lipschitz(&g1).max(lipschitz(&g2));
    let mut grid = 16u64;
    while grid <= 1 << 16 {
        let kb = BigInt::from(grid);
        let mut min_val: Option<BigInt> = None;
        for k in -(grid as i64)..=(grid as i64) {
            let t = BigInt::from(k);
            for v in [eval_form(f, &t, &kb), eval_form(f, &kb, &t)] {
                let v = v.abs();
                if min_val.as_ref().is_none_or(|m| &v < m) {
                    min_val = Some(v);
                }
            }
        }
        let min_val = min_val.expect("grid is non-empty");
        if min_val.is_zero() {
            // An exact zero on the boundary is a real root.
            return None;
        }
        let num = BigInt::from(2) * min_val - &lip * num_traits::pow(kb.clone(), d - 1);
        if num.is_positive() {
            return Some(DefiniteBound {
                num,
                den: BigInt::from(2) * num_traits::pow(kb, d),
                grid,
            });
        }
        grid *= 4;
    }
    None
}

/// Box sufficient for `f(x, y) = L` when `f` is definite:
/// `max(|x|, |y|) ≤ (|L| / m)^{1/d}`, plus one.
pub fn definite_form_box(f: &BinaryForm, l: &BigInt) -> Result<u64> {
    let bound = certify_definite(f).ok_or_else(|| {
        Error::InvalidInput(format!(
            "form {f} is not certified definite; an explicit xy box is required"
        ))
    })?;
    let d = f.degree() as u32;
    let ratio = (l.abs() * &bound.den).div_floor(&bound.num);
    let ratio = ratio.to_biguint().unwrap_or_default();
    let root: BigUint = ratio.nth_root(d);
    root.to_u64()
        .and_then(|r| r.checked_add(1))
        .ok_or_else(|| Error::InvalidInput("automatic xy box does not fit in 64 bits".into()))
}

/// All `(x, y)` with `|x|, |y| ≤ box` and `f(x, y) = L`, sorted.
///
/// With `xy_box = None` the form must be certified definite and the box is
/// derived from `L`.
pub fn represent_form(
    f: &BinaryForm,
    l: &BigInt,
    xy_box: Option<u64>,
) -> Result<Vec<(BigInt, BigInt)>> {
    let b = match xy_box {
        Some(b) => b,
        None => definite_form_box(f, l)?,
    };
    // |f(x, y)| ≤ Σ|a_i| · b^d inside the box.
    let reach: BigInt = f.coeffs_desc().iter().map(|c| c.abs()).sum::<BigInt>()
        * num_traits::pow(BigInt::from(b), f.degree());
    if l.abs() > reach {
        return Ok(Vec::new());
    }
    let lo = -BigInt::from(b);
    let hi = BigInt::from(b);
    let ys: Vec<i128> = (-(b as i128)..=(b as i128)).collect();
    let mut found: Vec<(BigInt, BigInt)> = ys
        .par_iter()
        .flat_map_iter(|&y| {
            let y = BigInt::from(y);
            let slice = f.slice_at_y(&y).shift_constant(l);
            let xs: Vec<BigInt> = if slice.is_zero() {
                num_iter_range(&lo, &hi)
            } else {
                integer_roots_in(&slice, &lo, &hi)
            };
            xs.into_iter().map(move |x| (x, y.clone()))
        })
        .collect();
    for (x, y) in &found {
        if &eval_form(f, x, y) != l {
            return Err(Error::Invariant(format!(
                "f({x}, {y}) != {l} for a reported representation"
            )));
        }
    }
    found.sort();
    Ok(found)
}

fn num_iter_range(lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut t = lo.clone();
    while &t <= hi {
        out.push(t.clone());
        t += 1;
    }
    out
}

/// Tuples in `[lo, m]^r` whose maximum is exactly `m`.
pub fn tuples_with_max(r: usize, lo: u64, m: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![lo; r];
    fn rec(i: usize, lo: u64, m: u64, cur: &mut Vec<u64>, has_max: bool, out: &mut Vec<Vec<u64>>) {
        if i == cur.len() {
            if has_max {
                out.push(cur.clone());
            }
            return;
        }
        for v in lo..=m {
            cur[i] = v;
            rec(i + 1, lo, m, cur, has_max || v == m, out);
        }
    }
    if m >= lo && r > 0 {
        rec(0, lo, m, &mut cur, false, &mut out);
    }
    out
}

/// Canonical tuples with maximum `m`: inside each symmetry class the values
/// are non-decreasing. Each comes with its distinct expansions.
fn canonical_tuples_with_max(
    classes: &[Vec<usize>],
    r: usize,
    lo: u64,
    m: u64,
) -> Vec<(Vec<u64>, Vec<Vec<u64>>)> {
    // Non-decreasing sequences per class.
    let per_class: Vec<Vec<Vec<u64>>> = classes
        .iter()
        .map(|c| nondecreasing_sequences(c.len(), lo, m))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; classes.len()];
    loop {
        let mut tuple = vec![0u64; r];
        for (ci, class) in classes.iter().enumerate() {
            for (slot, &idx) in class.iter().enumerate() {
                tuple[idx] = per_class[ci][choice[ci]][slot];
            }
        }
        if tuple.contains(&m) {
            let expansions = expand_tuple(classes, &tuple);
            out.push((tuple, expansions));
        }
        // advance mixed-radix counter
        let mut k = 0;
        loop {
            if k == classes.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < per_class[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn nondecreasing_sequences(len: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    fn rec(len: usize, from: u64, hi: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in from..=hi {
            cur.push(v);
            rec(len, v, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// All distinct tuples obtained by permuting values within each class.
fn expand_tuple(classes: &[Vec<usize>], tuple: &[u64]) -> Vec<Vec<u64>> {
    let mut results = vec![tuple.to_vec()];
    for class in classes {
        if class.len() < 2 {
            continue;
        }
        let mut values: Vec<u64> = class.iter().map(|&i| tuple[i]).collect();
        values.sort_unstable();
        let perms = distinct_permutations(&values);
        let mut next = Vec::with_capacity(results.len() * perms.len());
        for base in &results {
            for p in &perms {
                let mut t = base.clone();
                for (slot, &idx) in class.iter().enumerate() {
                    t[idx] = p[slot];
                }
                next.push(t);
            }
        }
        results = next;
    }
    results.sort();
    results
}

fn distinct_permutations(sorted: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = sorted.to_vec();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..cur.len().saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..cur.len())
            .rev()
            .find(|&j| cur[j] > cur[i])
            .expect("exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Solution {
    pub n: Vec<u64>,
    #[serde(with = "crate::serde_big")]
    pub x: BigInt,
    #[serde(with = "crate::serde_big::option")]
    pub y: Option<BigInt>,
    #[serde(with = "crate::serde_big")]
    pub lhs: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrunedInterval {
    pub q: u64,
    /// Smallest and largest `n_r` excluded by the certificate at `q`.
    pub first: u64,
    pub last: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub n_bound: u64,
    pub xy_box: Option<u64>,
    pub min_n: u64,
    pub solutions: Vec<Solution>,
    pub pruned: Vec<PrunedInterval>,
    /// `n_r` values that were enumerated.
    pub searched_n_max_values: Vec<u64>,
    pub tuples_examined: u64,
    pub tuples_pruned: u64,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub n_bound: u64,
    pub xy_box: Option<u64>,
    pub prune: bool,
}

/// Certificates for every prime `q` whose interval `(q, 2q)` meets
/// `[1, n_bound]` and for which the certificate hypotheses hold.
pub fn pruning_certificates(inst: &EquationInstance, n_bound: u64) -> Vec<IntervalCertificate> {
    if inst.require_zero_roots().is_err() {
        return Vec::new();
    }
    let candidates: Vec<u64> = primes_up_to(n_bound.saturating_sub(1));
    let mut certs: Vec<IntervalCertificate> = candidates
        .par_iter()
        .filter_map(|&q| interval_certificate(inst, q).ok())
        .collect();
    certs.sort_by_key(|c| c.q);
    certs
}

/// Solutions of the equation for one left-hand value.
fn solutions_for_value(
    inst: &EquationInstance,
    lhs: &BigInt,
    xy_box: Option<u64>,
) -> Result<Vec<(BigInt, Option<BigInt>)>> {
    Ok(match inst.rhs() {
        Rhs::BinaryForm { form } => represent_form(form, lhs, xy_box)?
            .into_iter()
            .map(|(x, y)| (x, Some(y)))
            .collect(),
        Rhs::FactoredForm { factorization } => {
            represent_form(factorization.composite(), lhs, xy_box)?
                .into_iter()
                .map(|(x, y)| (x, Some(y)))
                .collect()
        }
        Rhs::Univariate { poly } => represent_univariate(poly, lhs)?
            .into_iter()
            .map(|x| (x, None))
            .collect(),
        Rhs::MonomialPower { d } => match is_perfect_dth_power(lhs, *d) {
            None => Vec::new(),
            Some(x) if x.is_zero() || d % 2 == 1 => vec![(x, None)],
            Some(x) => vec![(-x.clone(), None), (x, None)],
        },
    })
}

/// Exact check that `(x, y)` solves `rhs = lhs`.
pub fn rhs_value(inst: &EquationInstance, x: &BigInt, y: Option<&BigInt>) -> Option<BigInt> {
    match (inst.rhs(), y) {
        (Rhs::BinaryForm { form }, Some(y)) => Some(eval_form(form, x, y)),
        (Rhs::FactoredForm { factorization }, Some(y)) => {
            Some(eval_form(factorization.composite(), x, y))
        }
        (Rhs::Univariate { poly }, None) => Some(poly.eval(x)),
        (Rhs::MonomialPower { d }, None) => Some(num_traits::pow(x.clone(), *d as usize)),
        _ => None,
    }
}

pub fn solve_instance(inst: &EquationInstance, opts: SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    if opts.n_bound == 0 {
        return Err(Error::InvalidInput("n bound must be positive".into()));
    }
    let lo = inst.min_n();
    let certs = if opts.prune {
        pruning_certificates(inst, opts.n_bound)
    } else {
        Vec::new()
    };
    let pruned: Vec<PrunedInterval> = certs
        .iter()
        .map(|c| PrunedInterval {
            q: c.q,
            first: c.q + 1,
            last: 2 * c.q - 1,
        })
        .collect();
    let is_pruned = |m: u64| pruned.iter().any(|p| p.first <= m && m <= p.last);

    let r = inst.r();
    let per_tuple_cost: f64 = match (inst.rhs(), opts.xy_box) {
        (Rhs::BinaryForm { .. } | Rhs::FactoredForm { .. }, Some(b)) => 2.0 * b as f64 + 1.0,
        _ => 1.0,
    };
    let tuple_count = ((opts.n_bound - lo + 1) as f64).powi(r as i32);
    if tuple_count * per_tuple_cost > 1e10 {
        log::warn!(
            "search over {tuple_count:.3e} tuples with per-tuple cost {per_tuple_cost:.0} may take a long time"
        );
    }

    let classes = inst.symmetry_classes();
    let maxima: Vec<u64> = (lo..=opts.n_bound).collect();
    let searched: Vec<u64> = maxima.iter().copied().filter(|&m| !is_pruned(m)).collect();
    let tuples_pruned: u64 = maxima
        .iter()
        .filter(|&&m| is_pruned(m))
        .map(|&m| count_tuples_with_max(r, lo, m))
        .sum();

    let per_max: Vec<Result<(Vec<Solution>, u64)>> = searched
        .par_iter()
        .map(|&m| {
            let mut sols = Vec::new();
            let mut examined = 0u64;
            for (tuple, expansions) in canonical_tuples_with_max(&classes, r, lo, m) {
                examined += expansions.len() as u64;
                let lhs = inst.lhs_value(&tuple);
                for (x, y) in solutions_for_value(inst, &lhs, opts.xy_box)? {
                    for t in &expansions {
                        sols.push(Solution {
                            n: t.clone(),
                            x: x.clone(),
                            y: y.clone(),
                            lhs: lhs.clone(),
                        });
                    }
                }
            }
            Ok((sols, examined))
        })
        .collect();

    let mut solutions = Vec::new();
    let mut tuples_examined = 0;
    for part in per_max {
        let (s, e) = part?;
        solutions.extend(s);
        tuples_examined += e;
    }
    for s in &solutions {
        let check = inst.lhs_value(&s.n);
        let rhs = rhs_value(inst, &s.x, s.y.as_ref());
        if check != s.lhs || rhs.as_ref() != Some(&s.lhs) {
            return Err(Error::Invariant(format!(
                "reported solution {:?} fails exact re-evaluation",
                s.n
            )));
        }
    }
    solutions.sort();
    Ok(SearchReport {
        n_bound: opts.n_bound,
        xy_box: opts.xy_box,
        min_n: lo,
        solutions,
        pruned,
        searched_n_max_values: searched,
        tuples_examined,
        tuples_pruned,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn count_tuples_with_max(r: usize, lo: u64, m: u64) -> u64 {
    let width = m - lo + 1;
    width.pow(r as u32) - (width - 1).pow(r as u32)
}

/// CSV with columns `n_1..n_r, x, y, lhs`.
pub fn solutions_csv(r: usize, solutions: &[Solution]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=r).map(|i| format!("n_{i}")).collect();
    header.extend(["x".into(), "y".into(), "lhs".into()]);
    w.write_record(&header).map_err(csv_err)?;
    for s in solutions {
        let mut row: Vec<String> = s.n.iter().map(u64::to_string).collect();
        row.push(s.x.to_string());
        row.push(s.y.as_ref().map(BigInt::to_string).unwrap_or_default());
        row.push(s.lhs.to_string());
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Invariant(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Invariant(format!("csv: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::InstanceFlags;
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    fn pairs(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        let mut out: Vec<_> = v.iter().map(|&(x, y)| (b(x), b(y))).collect();
        out.sort();
        out
    }

    #[test]
    fn integer_roots_of_cubic() {
        // (x - 3)(x + 5)(2x - 1) = 2x^3 + 3x^2 - 32x + 15
        let p = poly(&[15, -32, 3, 2]);
        assert_eq!(integer_roots_in(&p, &b(-100), &b(100)), vec![b(-5), b(3)]);
        assert_eq!(integer_roots_in(&p, &b(0), &b(2)), vec![]);
    }

    #[test]
    fn represent_univariate_examples() {
        assert_eq!(
            represent_univariate(&poly(&[0, 0, 1]), &b(121)).unwrap(),
            vec![b(-11), b(11)]
        );
        assert_eq!(
            represent_univariate(&poly(&[0, 0, 1]), &b(25)).unwrap(),
            vec![b(-5), b(5)]
        );
        assert_eq!(
            represent_univariate(&poly(&[0, 1, 0, 1]), &b(0)).unwrap(),
            vec![b(0)]
        );
        assert!(represent_univariate(&poly(&[0, 0, 1]), &b(24))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn represent_form_examples() {
        let f = BinaryForm::from_i64(&[1, 0, 1]).unwrap();
        assert_eq!(
            represent_form(&f, &b(25), Some(10)).unwrap(),
            pairs(&[
                (0, 5),
                (0, -5),
                (3, 4),
                (3, -4),
                (-3, 4),
                (-3, -4),
                (4, 3),
                (4, -3),
                (-4, 3),
                (-4, -3),
                (5, 0),
                (-5, 0)
            ])
        );
        assert!(represent_form(&f, &b(24), Some(10)).unwrap().is_empty());
        assert_eq!(
            represent_form(&f, &b(0), Some(5)).unwrap(),
            pairs(&[(0, 0)])
        );
    }

    #[test]
    fn degenerate_slice_covers_whole_row() {
        // f = xy: f(x, 0) = 0 for every x.
        let f = BinaryForm::from_i64(&[0, 1, 0]).unwrap();
        let sols = represent_form(&f, &b(0), Some(2)).unwrap();
        assert_eq!(sols.len(), 9);
    }

    #[test]
    fn automatic_box_requires_definite_form() {
        let indefinite = BinaryForm::from_i64(&[1, 0, -2]).unwrap();
        assert!(represent_form(&indefinite, &b(7), None).is_err());
        let cubic = BinaryForm::from_i64(&[1, 0, 0, 1]).unwrap();
        assert!(certify_definite(&cubic).is_none());
        let f = BinaryForm::from_i64(&[1, 0, 1]).unwrap();
        assert!(certify_definite(&f).is_some());
        assert_eq!(
            represent_form(&f, &b(25), None).unwrap(),
            represent_form(&f, &b(25), Some(10)).unwrap()
        );
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(
            tuples_with_max(2, 1, 2),
            vec![vec![1, 2], vec![2, 1], vec![2, 2]]
        );
        let classes = vec![vec![0, 1]];
        let canon = canonical_tuples_with_max(&classes, 2, 1, 3);
        let canon_tuples: Vec<_> = canon.iter().map(|(t, _)| t.clone()).collect();
        assert_eq!(canon_tuples, vec![vec![1, 3], vec![2, 3], vec![3, 3]]);
        let mut expanded: Vec<Vec<u64>> = canon.into_iter().flat_map(|(_, e)| e).collect();
        expanded.sort();
        let mut direct = tuples_with_max(2, 1, 3);
        direct.sort();
        assert_eq!(expanded, direct);
        assert_eq!(count_tuples_with_max(2, 1, 3), 5);
    }

    #[test]
    fn symmetric_expansion_matches_full_enumeration() {
        let classes = vec![vec![0, 2], vec![1]];
        for m in 1..5 {
            let mut expanded: Vec<Vec<u64>> = canonical_tuples_with_max(&classes, 3, 1, m)
                .into_iter()
                .flat_map(|(_, e)| e)
                .collect();
            expanded.sort();
            let mut direct = tuples_with_max(3, 1, m);
            direct.sort();
            assert_eq!(expanded, direct);
        }
    }

    #[test]
    fn brocard_small() {
        let inst = EquationInstance::new(
            vec![poly(&[1, 1])],
            vec![1],
            Rhs::Univariate {
                poly: poly(&[0, 0, 1]),
            },
            InstanceFlags::default(),
        )
        .unwrap();
        let rep = solve_instance(
            &inst,
            SearchOptions {
                n_bound: 10,
                xy_box: None,
                prune: false,
            },
        )
        .unwrap();
        let got: Vec<(u64, i64)> = rep
            .solutions
            .iter()
            .map(|s| (s.n[0], s.x.to_i64().unwrap()))
            .collect();
        assert_eq!(
            got,
            vec![(4, -5), (4, 5), (5, -11), (5, 11), (7, -71), (7, 71)]
        );
    }

    #[test]
    fn csv_layout() {
        let s = Solution {
            n: vec![4],
            x: b(-5),
            y: None,
            lhs: b(25),
        };
        let text = solutions_csv(1, &[s]).unwrap();
        assert_eq!(text, "n_1,x,y,lhs\n4,-5,,25\n");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn roots_match_scan(
            c in prop::collection::vec(-30i64..=30, 1..6),
            roots in prop::collection::vec(-40i64..=40, 0..3),
        ) {
            let mut p = poly(&c);
            prop_assume!(!p.is_zero());
            for r in roots {
                p = p.mul(&poly(&[-r, 1]));
            }
            let got = integer_roots_in(&p, &b(-60), &b(60));
            let scan: Vec<BigInt> = (-60..=60).map(b).filter(|x| p.eval(x).is_zero()).collect();
            prop_assert_eq!(got, scan);
        }

        #[test]
        fn automatic_box_is_sufficient(
            a in 1i64..6, bxy in -4i64..=4, c in 1i64..6, l in 0i64..400,
        ) {
            prop_assume!(bxy * bxy < 4 * a * c);
            let f = BinaryForm::from_i64(&[a, bxy, c]).unwrap();
            let auto = represent_form(&f, &b(l), None).unwrap();
            let bx = definite_form_box(&f, &b(l)).unwrap();
            let wide = represent_form(&f, &b(l), Some(2 * bx)).unwrap();
            prop_assert_eq!(auto, wide);
        }

        #[test]
        fn homogeneity_of_representations(
            a in 1i64..4, bxy in -3i64..=3, c in 1i64..4,
            x in -6i64..=6, y in -6i64..=6, t in 2i64..4,
        ) {
            let f = BinaryForm::from_i64(&[a, bxy, c]).unwrap();
            let l = eval_form(&f, &b(x), &b(y));
            let base = represent_form(&f, &l, Some(30)).unwrap();
            prop_assert!(base.contains(&(b(x), b(y))));
            let scaled = represent_form(&f, &(&l * b(t * t)), Some(30)).unwrap();
            for (u, v) in base {
                if (&u * t).abs() <= b(30) && (&v * t).abs() <= b(30) {
                    prop_assert!(scaled.contains(&(&u * t, &v * t)));
                }
            }
        }
    }
}
