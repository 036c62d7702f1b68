//! The ideal `J0` of zero-labeled elements and the zero-label congruence.
//!
//! Two elements are `≡0`-related when their nonzero supports (the triples
//! whose label is not the base zero) coincide. Elements of `J0` have empty
//! support, so `J0` is one class.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{ExtElement, ExtensionSemigroup, Materialized, Triple};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::SizeGuard;

fn base_zero(e: &ExtensionSemigroup) -> Result<usize> {
    e.base().zero().ok_or(Error::BaseHasNoZero)
}

fn support(a: &ExtElement, zero: usize) -> Vec<Triple> {
    a.triples().iter().copied().filter(|t| t.s != zero).collect()
}

/// Canonical class representative: the element keeping only nonzero-labeled
/// triples (zero when none remain).
pub fn nonzero_support(e: &ExtensionSemigroup, a: &ExtElement) -> Result<ExtElement> {
    Ok(ExtElement::from_canonical(support(a, base_zero(e)?)))
}

pub fn in_j0(e: &ExtensionSemigroup, a: &ExtElement) -> Result<bool> {
    let zero = base_zero(e)?;
    Ok(a.triples().iter().all(|t| t.s == zero))
}

/// The zero together with every element whose labels are all the base zero.
pub fn j0_ideal(e: &ExtensionSemigroup) -> Result<BTreeSet<ExtElement>> {
    let zero = base_zero(e)?;
    Ok((0..=e.n())
        .flat_map(|k| e.stratum(k))
        .filter(|a| a.triples().iter().all(|t| t.s == zero))
        .collect())
}

/// Equal nonzero supports.
pub fn equiv0(e: &ExtensionSemigroup, a: &ExtElement, b: &ExtElement) -> Result<bool> {
    let zero = base_zero(e)?;
    Ok(support(a, zero) == support(b, zero))
}

/// Per-pair reading: equal, both in `J0`, or both outside `J0` and agreeing
/// on every pair where both carry a nonzero label. This relation is not a
/// congruence; it is kept to reproduce that failure.
pub fn equiv0_literal(e: &ExtensionSemigroup, a: &ExtElement, b: &ExtElement) -> Result<bool> {
    let zero = base_zero(e)?;
    let (sa, sb) = (support(a, zero), support(b, zero));
    if a == b || (sa.is_empty() && sb.is_empty()) {
        return Ok(true);
    }
    if sa.is_empty() || sb.is_empty() {
        return Ok(false);
    }
    Ok(sa.iter().all(|p| {
        sb.iter()
            .filter(|q| q.x == p.x && q.y == p.y)
            .all(|q| q.s == p.s)
    }))
}

/// A failure of a relation to be an equivalence or to be compatible with
/// multiplication, in materialized indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RelationViolation {
    NotReflexive { a: usize },
    NotSymmetric { a: usize, b: usize },
    NotTransitive { a: usize, b: usize, c: usize },
    /// `a ~ b` but `a·c` and `b·c` are unrelated.
    RightIncompatible { a: usize, b: usize, c: usize },
    /// `a ~ b` but `c·a` and `c·b` are unrelated.
    LeftIncompatible { a: usize, b: usize, c: usize },
}

/// First failure of reflexivity, symmetry or transitivity over `0..size`.
pub fn equivalence_violation(size: usize, related: impl Fn(usize, usize) -> bool) -> Option<RelationViolation> {
    let rel: Vec<Vec<bool>> = (0..size).map(|a| (0..size).map(|b| related(a, b)).collect()).collect();
    for a in 0..size {
        if !rel[a][a] {
            return Some(RelationViolation::NotReflexive { a });
        }
    }
    for a in 0..size {
        for b in 0..size {
            if rel[a][b] && !rel[b][a] {
                return Some(RelationViolation::NotSymmetric { a, b });
            }
        }
    }
    for a in 0..size {
        for b in (0..size).filter(|&b| rel[a][b]) {
            if let Some(c) = (0..size).find(|&c| rel[b][c] && !rel[a][c]) {
                return Some(RelationViolation::NotTransitive { a, b, c });
            }
        }
    }
    None
}

/// First failure of two-sided compatibility on a Cayley table.
pub fn compatibility_violation(
    s: &FiniteSemigroup,
    related: impl Fn(usize, usize) -> bool,
) -> Option<RelationViolation> {
    for a in s.elements() {
        for b in s.elements().filter(|&b| related(a, b)) {
            for c in s.elements() {
                if !related(s.product(a, c), s.product(b, c)) {
                    return Some(RelationViolation::RightIncompatible { a, b, c });
                }
                if !related(s.product(c, a), s.product(c, b)) {
                    return Some(RelationViolation::LeftIncompatible { a, b, c });
                }
            }
        }
    }
    None
}

/// Checks a relation on a materialized extension: equivalence first, then
/// compatibility.
pub fn congruence_violation(
    e: &ExtensionSemigroup,
    m: &Materialized,
    related: impl Fn(&ExtensionSemigroup, &ExtElement, &ExtElement) -> Result<bool>,
) -> Result<Option<RelationViolation>> {
    let n = m.len();
    let mut rel = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            rel[a * n + b] = related(e, m.element(a), m.element(b))?;
        }
    }
    let lookup = |a: usize, b: usize| rel[a * n + b];
    Ok(equivalence_violation(n, lookup).or_else(|| compatibility_violation(&m.semigroup, lookup)))
}

/// The quotient by `≡0` with its class map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub semigroup: FiniteSemigroup,
    /// Class of each materialized index.
    pub class_of: Vec<usize>,
    /// Members of each class, in materialized indices; class 0 is `J0`.
    pub classes: Vec<Vec<usize>>,
    /// Canonical representative (nonzero support) of each class.
    pub representatives: Vec<ExtElement>,
    pub materialized: Materialized,
}

/// Builds the quotient semigroup and verifies by brute force that the
/// induced product is well defined.
pub fn quotient(e: &ExtensionSemigroup, guard: SizeGuard) -> Result<Quotient> {
    let zero = base_zero(e)?;
    let m = e.materialize(guard)?;
    let mut class_index: HashMap<Vec<Triple>, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(m.len());
    for (i, a) in m.elements.iter().enumerate() {
        let key = support(a, zero);
        let c = *class_index.entry(key.clone()).or_insert_with(|| {
            representatives.push(ExtElement::from_canonical(key));
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
        class_of.push(c);
    }
    let q = classes.len();
    let mut table = vec![0u32; q * q];
    for a in 0..q {
        for b in 0..q {
            table[a * q + b] = class_of[m.semigroup.product(classes[a][0], classes[b][0])] as u32;
        }
    }
    for x in 0..m.len() {
        for y in 0..m.len() {
            let expected = table[class_of[x] * q + class_of[y]] as usize;
            if class_of[m.semigroup.product(x, y)] != expected {
                return Err(Error::NotACongruence(format!(
                    "product of classes {} and {} is not well defined",
                    class_of[x], class_of[y]
                )));
            }
        }
    }
    let names = representatives.iter().map(|r| r.render(e.base())).collect();
    let semigroup = FiniteSemigroup::from_trusted(q, table).with_names(names)?;
    Ok(Quotient { semigroup, class_of, classes, representatives, materialized: m })
}

/// A related pair of the per-pair reading whose products with `factor` on
/// the given side fall into unrelated classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiteralCounterexample {
    pub a: ExtElement,
    pub b: ExtElement,
    pub factor: ExtElement,
    pub factor_on_right: bool,
    pub product_a: ExtElement,
    pub product_b: ExtElement,
}

/// First compatibility failure of [`equiv0_literal`] in enumeration order.
pub fn literal_counterexample(e: &ExtensionSemigroup, guard: SizeGuard) -> Result<Option<LiteralCounterexample>> {
    let all = e.enumerate(guard)?;
    for a in &all {
        for b in &all {
            if !equiv0_literal(e, a, b)? {
                continue;
            }
            for c in &all {
                for right in [true, false] {
                    let (pa, pb) = if right {
                        (e.product_unchecked(a, c), e.product_unchecked(b, c))
                    } else {
                        (e.product_unchecked(c, a), e.product_unchecked(c, b))
                    };
                    if !equiv0_literal(e, &pa, &pb)? {
                        return Ok(Some(LiteralCounterexample {
                            a: a.clone(),
                            b: b.clone(),
                            factor: c.clone(),
                            factor_on_right: right,
                            product_a: pa,
                            product_b: pb,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn el(triples: &[(usize, usize, usize)]) -> ExtElement {
        ExtElement::from_triples(triples.to_vec()).unwrap()
    }

    #[test]
    fn j0_sizes() {
        let e1 = ExtensionSemigroup::new(zoo::min2(), 2, 1).unwrap();
        let e2 = ExtensionSemigroup::new(zoo::min2(), 2, 2).unwrap();
        assert_eq!(j0_ideal(&e1).unwrap().len(), 5);
        assert_eq!(j0_ideal(&e2).unwrap().len(), 7);
        let g = ExtensionSemigroup::new(zoo::z2(), 2, 1).unwrap();
        assert_eq!(j0_ideal(&g), Err(Error::BaseHasNoZero));
    }

    #[test]
    fn j0_is_an_ideal() {
        for base in [zoo::min2(), zoo::null2(), zoo::chain3(), zoo::a2()] {
            let e = ExtensionSemigroup::new(base, 2, 2).unwrap();
            let m = e.materialize(SizeGuard::default()).unwrap();
            let j0 = m.indices_of(&j0_ideal(&e).unwrap()).unwrap();
            assert!(m.semigroup.is_ideal(&j0).unwrap());
        }
    }

    #[test]
    fn equiv0_examples() {
        let e = ExtensionSemigroup::new(zoo::min2(), 2, 2).unwrap();
        let a = el(&[(0, 1, 1), (1, 0, 0)]);
        assert!(equiv0(&e, &a, &a).unwrap());
        assert!(equiv0(&e, &el(&[(0, 0, 0)]), &el(&[(0, 0, 1), (1, 0, 0)])).unwrap());
        assert!(equiv0(&e, &el(&[(0, 0, 0)]), &ExtElement::Zero).unwrap());
        assert!(equiv0(&e, &a, &el(&[(0, 1, 1)])).unwrap());
        assert!(!equiv0(&e, &el(&[(0, 1, 0)]), &el(&[(0, 1, 1)])).unwrap());
    }

    #[test]
    fn quotient_size_and_flags() {
        let e = ExtensionSemigroup::new(zoo::min2(), 2, 1).unwrap();
        let q = quotient(&e, SizeGuard::default()).unwrap();
        assert_eq!(q.semigroup.size(), 5);
        assert_eq!(q.classes[0].len(), 5);
        assert_eq!(q.semigroup.zero(), Some(0));
        assert!(q.semigroup.regularity().is_inverse);
    }

    #[test]
    fn adopted_reading_is_a_congruence() {
        for base in [zoo::min2(), zoo::chain3()] {
            for n in 1..=2 {
                let e = ExtensionSemigroup::new(base.clone(), 2, n).unwrap();
                let m = e.materialize(SizeGuard::default()).unwrap();
                assert_eq!(congruence_violation(&e, &m, equiv0).unwrap(), None);
            }
        }
    }

    #[test]
    fn literal_reading_fails_compatibility() {
        let e = ExtensionSemigroup::new(zoo::min2(), 2, 1).unwrap();
        let (a, b, c) = (el(&[(0, 1, 0)]), el(&[(0, 1, 1)]), el(&[(0, 1, 0)]));
        assert!(equiv0_literal(&e, &a, &b).unwrap());
        let (pa, pb) = (e.product(&a, &c).unwrap(), e.product(&b, &c).unwrap());
        assert_eq!((pa.clone(), pb.clone()), (el(&[(0, 1, 0)]), ExtElement::Zero));
        assert!(!equiv0_literal(&e, &pa, &pb).unwrap());

        let found = literal_counterexample(&e, SizeGuard::default()).unwrap().unwrap();
        assert!(equiv0_literal(&e, &found.a, &found.b).unwrap());
        assert!(!equiv0_literal(&e, &found.product_a, &found.product_b).unwrap());
        let m = e.materialize(SizeGuard::default()).unwrap();
        assert!(congruence_violation(&e, &m, equiv0_literal).unwrap().is_some());
    }

    #[test]
    fn violations_are_detected() {
        assert_eq!(
            equivalence_violation(2, |a, b| a <= b),
            Some(RelationViolation::NotSymmetric { a: 0, b: 1 })
        );
        assert_eq!(equivalence_violation(2, |a, b| a == b && a == 0), Some(RelationViolation::NotReflexive { a: 1 }));
    }
}
