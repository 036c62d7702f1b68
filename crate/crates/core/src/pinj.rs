//! Partial injections of a finite point set `{0, .., λ-1}`, the rank-bounded
//! symmetric inverse semigroups built from them, and matrix units.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::SizeGuard;

/// An injective partial map, stored as `(x, xα)` pairs sorted by `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialInjection {
    lambda: usize,
    pairs: Vec<(usize, usize)>,
}

impl PartialInjection {
    /// Accepts pairs in any order; rejects repeated points or points
    /// outside the carrier.
    pub fn new(lambda: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= lambda || y >= lambda) {
            return Err(Error::InvalidInjection(format!(
                "pair ({x}, {y}) leaves the carrier of size {lambda}"
            )));
        }
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInjection("domain point repeated".into()));
        }
        if !pairs.iter().map(|p| p.1).all_unique() {
            return Err(Error::InvalidInjection("range point repeated".into()));
        }
        Ok(PartialInjection { lambda, pairs })
    }

    pub fn empty(lambda: usize) -> Self {
        PartialInjection { lambda, pairs: Vec::new() }
    }

    pub fn identity(lambda: usize, points: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(lambda, points.into_iter().map(|p| (p, p)).collect())
    }

    pub(crate) fn from_sorted_unchecked(lambda: usize, pairs: Vec<(usize, usize)>) -> Self {
        PartialInjection { lambda, pairs }
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&x, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    pub fn range(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|p| p.1)
    }

    /// `x(αβ) = (xα)β`.
    pub fn compose(&self, other: &PartialInjection) -> Result<PartialInjection> {
        if self.lambda != other.lambda {
            return Err(Error::CarrierMismatch(self.lambda, other.lambda));
        }
        let pairs = self
            .pairs
            .iter()
            .filter_map(|&(x, y)| other.apply(y).map(|z| (x, z)))
            .collect();
        Ok(PartialInjection { lambda: self.lambda, pairs })
    }

    pub fn invert(&self) -> PartialInjection {
        let mut pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        PartialInjection { lambda: self.lambda, pairs }
    }
}

/// Two-row display `(x1 .. xk / y1 .. yk)`, or `0` for the empty map.
impl fmt::Display for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("0");
        }
        let top = self.pairs.iter().map(|p| p.0.to_string()).join(" ");
        let bottom = self.pairs.iter().map(|p| p.1.to_string()).join(" ");
        write!(f, "({top} / {bottom})")
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Number of partial injections of rank exactly `k` with labels from a set
/// of size `labels`: `C(λ,k)^2 k! labels^k`.
pub(crate) fn stratum_count(lambda: usize, k: usize, labels: usize) -> u128 {
    let c = binomial(lambda, k);
    c.saturating_mul(c)
        .saturating_mul(factorial(k))
        .saturating_mul((labels as u128).saturating_pow(k as u32))
}

/// `1 + Σ_{k=1..n} C(λ,k)^2 k!`.
pub fn in_count(lambda: usize, n: usize) -> u128 {
    (0..=n).map(|k| stratum_count(lambda, k, 1)).sum()
}

/// Ordered `(domain, range)` shapes of rank `k`: domain as an ascending
/// combination, range as an arrangement listed in domain order.
pub(crate) fn shapes(lambda: usize, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for dom in (0..lambda).combinations(k) {
        for ran in (0..lambda).permutations(k) {
            out.push((dom.clone(), ran));
        }
    }
    out
}

/// All partial injections of rank at most `n`, by rank then domain then
/// range.
pub fn enumerate_in(lambda: usize, n: usize, guard: SizeGuard) -> Result<Vec<PartialInjection>> {
    if lambda == 0 || n > lambda {
        return Err(Error::InvalidParameters(format!("need 1 <= lambda and n <= lambda (lambda={lambda}, n={n})")));
    }
    guard.check(in_count(lambda, n))?;
    let mut out = Vec::new();
    for k in 0..=n {
        for (dom, ran) in shapes(lambda, k) {
            let pairs = dom.into_iter().zip(ran).collect();
            out.push(PartialInjection::from_sorted_unchecked(lambda, pairs));
        }
    }
    Ok(out)
}

/// Cayley table of a list of partial injections closed under composition.
pub fn table_of(elements: &[PartialInjection]) -> Result<FiniteSemigroup> {
    let index: HashMap<&PartialInjection, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut table = Vec::with_capacity(elements.len() * elements.len());
    for a in elements {
        for b in elements {
            let c = a.compose(b)?;
            let i = index
                .get(&c)
                .ok_or_else(|| Error::InvalidParameters(format!("set not closed: {a} * {b} = {c}")))?;
            table.push(*i as u32);
        }
    }
    Ok(FiniteSemigroup::from_trusted(elements.len(), table))
}

/// `I_λ^n` as a Cayley table together with its elements.
pub fn symmetric_inverse(lambda: usize, n: usize, guard: SizeGuard) -> Result<(FiniteSemigroup, Vec<PartialInjection>)> {
    let elements = enumerate_in(lambda, n, guard)?;
    let s = table_of(&elements)?;
    let names = elements.iter().map(|e| e.to_string()).collect();
    Ok((s.with_names(names)?, elements))
}

/// Matrix units `B_λ`: index 0 is the zero, index `1 + aλ + b` is `(a, b)`,
/// and `(a,b)(c,d) = (a,d)` when `b = c`, else 0.
pub fn matrix_units(lambda: usize, guard: SizeGuard) -> Result<FiniteSemigroup> {
    if lambda == 0 {
        return Err(Error::InvalidParameters("lambda must be positive".into()));
    }
    let size = 1 + lambda * lambda;
    guard.check(size as u128)?;
    let unit = |i: usize| ((i - 1) / lambda, (i - 1) % lambda);
    let mut table = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let v = if i == 0 || j == 0 {
                0
            } else {
                let ((a, b), (c, d)) = (unit(i), unit(j));
                if b == c {
                    1 + a * lambda + d
                } else {
                    0
                }
            };
            table.push(v as u32);
        }
    }
    let mut names = vec!["0".to_string()];
    names.extend((1..size).map(|i| {
        let (a, b) = unit(i);
        format!("({a},{b})")
    }));
    FiniteSemigroup::from_trusted(size, table).with_names(names)
}

/// The canonical bijection `(a,b) ↦ {a → b}` from `B_λ` onto `I_λ^1`, as an
/// index map into [`enumerate_in`]`(λ, 1)`, checked as an isomorphism.
pub fn matrix_units_iso(lambda: usize, guard: SizeGuard) -> Result<(Vec<usize>, bool)> {
    let b = matrix_units(lambda, guard)?;
    let (i1, elems) = symmetric_inverse(lambda, 1, guard)?;
    let index: HashMap<&PartialInjection, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let map: Vec<usize> = (0..b.size())
        .map(|i| {
            let p = if i == 0 {
                PartialInjection::empty(lambda)
            } else {
                PartialInjection::from_sorted_unchecked(lambda, vec![((i - 1) / lambda, (i - 1) % lambda)])
            };
            index[&p]
        })
        .collect();
    let ok = FiniteSemigroup::is_morphism(&map, &b, &i1, true);
    Ok((map, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(lambda: usize, pairs: &[(usize, usize)]) -> PartialInjection {
        PartialInjection::new(lambda, pairs.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let a = pi(2, &[(0, 1)]);
        assert_eq!(a.compose(&PartialInjection::empty(2)).unwrap(), PartialInjection::empty(2));
        let id = pi(2, &[(0, 0), (1, 1)]);
        assert_eq!(id.compose(&a).unwrap(), a);
        assert_eq!(a.compose(&pi(2, &[(1, 0)])).unwrap(), pi(2, &[(0, 0)]));
        assert_eq!(a.compose(&pi(3, &[])), Err(Error::CarrierMismatch(2, 3)));
    }

    #[test]
    fn invert_and_rank() {
        assert_eq!(PartialInjection::empty(3).invert(), PartialInjection::empty(3));
        let a = pi(3, &[(0, 1), (1, 2)]);
        assert_eq!(a.invert(), pi(3, &[(1, 0), (2, 1)]));
        assert_eq!(a.rank(), 2);
        assert_eq!(PartialInjection::identity(3, 0..3).unwrap().rank(), 3);
        let back = a.compose(&a.invert()).unwrap().compose(&a).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn rejects_non_injective_input() {
        assert!(PartialInjection::new(2, vec![(0, 1), (1, 1)]).is_err());
        assert!(PartialInjection::new(2, vec![(0, 1), (0, 0)]).is_err());
        assert!(PartialInjection::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let g = SizeGuard::default();
        assert_eq!(enumerate_in(2, 1, g).unwrap().len(), 5);
        assert_eq!(enumerate_in(2, 2, g).unwrap().len(), 7);
        assert_eq!(enumerate_in(3, 2, g).unwrap().len(), 28);
        assert_eq!(in_count(3, 2), 28);
        assert!(matches!(enumerate_in(4, 4, SizeGuard::new(10)), Err(Error::SizeGuardExceeded { .. })));
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let e = enumerate_in(3, 3, SizeGuard::default()).unwrap();
        assert!(e.iter().map(|p| p.rank()).tuple_windows().all(|(a, b)| a <= b));
        assert!(e.iter().all_unique());
    }

    #[test]
    fn matrix_unit_products() {
        let g = SizeGuard::default();
        let b1 = matrix_units(1, g).unwrap();
        assert_eq!(b1.size(), 2);
        assert!(b1.is_idempotent(1));
        let b2 = matrix_units(2, g).unwrap();
        assert_eq!(b2.size(), 5);
        let u = |a: usize, b: usize| 1 + a * 2 + b;
        assert_eq!(b2.product(u(0, 1), u(1, 0)), u(0, 0));
        assert_eq!(b2.product(u(0, 1), u(0, 1)), 0);
        assert!(b2.associativity_violation().is_none());
    }

    #[test]
    fn matrix_units_are_rank_one_injections() {
        for lambda in 1..=3 {
            let (_, ok) = matrix_units_iso(lambda, SizeGuard::default()).unwrap();
            assert!(ok, "lambda={lambda}");
        }
    }

    #[test]
    fn lower_ranks_are_ideals() {
        let g = SizeGuard::default();
        let (s, elems) = symmetric_inverse(3, 3, g).unwrap();
        let r = s.regularity();
        assert!(r.is_inverse);
        for k in 0..3 {
            let ideal = elems.iter().enumerate().filter(|(_, e)| e.rank() <= k).map(|(i, _)| i).collect();
            assert!(s.is_ideal(&ideal).unwrap(), "k={k}");
        }
    }

    #[test]
    fn renders_two_rows() {
        assert_eq!(pi(3, &[(2, 0), (0, 1)]).to_string(), "(0 2 / 1 0)");
        assert_eq!(PartialInjection::empty(3).to_string(), "0");
    }
}
