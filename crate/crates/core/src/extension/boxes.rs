//! Boxes of labeled elements with prescribed points, the power embedding,
//! label extensions and the Brandt extension.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use super::{ExtElement, ExtensionSemigroup, Materialized, Triple};
use crate::error::{Error, Result};
use crate::pinj::{symmetric_inverse, PartialInjection};
use crate::semigroup::{DirectPower, FiniteSemigroup};
use crate::SizeGuard;

fn check_points(e: &ExtensionSemigroup, points: &[usize]) -> Result<()> {
    if let Some(&p) = points.iter().find(|&&p| p >= e.lambda()) {
        return Err(Error::InvalidParameters(format!("point {p} outside 0..{}", e.lambda())));
    }
    if !points.iter().all_unique() {
        return Err(Error::DuplicatePoints);
    }
    Ok(())
}

fn check_arity(e: &ExtensionSemigroup, k: usize, points_a: &[usize], points_b: &[usize]) -> Result<()> {
    if points_a.len() != k || points_b.len() != k {
        return Err(Error::ArityMismatch(format!(
            "{k} label slots but {} domain and {} range points",
            points_a.len(),
            points_b.len()
        )));
    }
    if k == 0 || k > e.n() {
        return Err(Error::RankExceeded { rank: k, bound: e.n() });
    }
    check_points(e, points_a)?;
    check_points(e, points_b)
}

fn element_of(points_a: &[usize], labels: &[usize], points_b: &[usize]) -> ExtElement {
    let mut t: Vec<Triple> = points_a
        .iter()
        .zip(labels)
        .zip(points_b)
        .map(|((&x, &s), &y)| Triple { x, s, y })
        .collect();
    t.sort_by_key(|t| t.x);
    ExtElement::from_canonical(t)
}

/// Elements mapping `points_a[j]` to `points_b[j]` with label in `a_list[j]`.
pub fn box_set(
    e: &ExtensionSemigroup,
    a_list: &[BTreeSet<usize>],
    points_a: &[usize],
    points_b: &[usize],
) -> Result<BTreeSet<ExtElement>> {
    check_arity(e, a_list.len(), points_a, points_b)?;
    for a in a_list {
        if let Some(&s) = a.iter().find(|&&s| s >= e.base().size()) {
            return Err(Error::IndexOutOfRange { index: s, size: e.base().size() });
        }
    }
    Ok(a_list
        .iter()
        .multi_cartesian_product()
        .map(|labels| {
            let labels: Vec<usize> = labels.into_iter().copied().collect();
            element_of(points_a, &labels, points_b)
        })
        .collect())
}

/// Image of a tuple set under `(t_1..t_k) ↦ {(a_j, t_j, b_j)}`.
pub fn f_image(
    e: &ExtensionSemigroup,
    tuples: &BTreeSet<Vec<usize>>,
    points_a: &[usize],
    points_b: &[usize],
) -> Result<BTreeSet<ExtElement>> {
    let k = points_a.len();
    check_arity(e, k, points_a, points_b)?;
    if let Some(t) = tuples.iter().find(|t| t.len() != k) {
        return Err(Error::ArityMismatch(format!("tuple of length {} in a {k}-ary set", t.len())));
    }
    if let Some(&s) = tuples.iter().flatten().find(|&&s| s >= e.base().size()) {
        return Err(Error::IndexOutOfRange { index: s, size: e.base().size() });
    }
    Ok(tuples.iter().map(|t| element_of(points_a, t, points_b)).collect())
}

/// Union of [`f_image`] over all ordered sequences of `k` distinct domain
/// points and `k` distinct range points.
pub fn box_star(e: &ExtensionSemigroup, tuples: &BTreeSet<Vec<usize>>, k: usize) -> Result<BTreeSet<ExtElement>> {
    if k == 0 || k > e.n() {
        return Err(Error::RankExceeded { rank: k, bound: e.n() });
    }
    let mut out = BTreeSet::new();
    for a in (0..e.lambda()).permutations(k) {
        for b in (0..e.lambda()).permutations(k) {
            out.extend(f_image(e, tuples, &a, &b)?);
        }
    }
    Ok(out)
}

/// [`box_star`] together with every element of rank below `k` (just the
/// zero when `k = 1`).
pub fn box_star_closed(e: &ExtensionSemigroup, tuples: &BTreeSet<Vec<usize>>, k: usize) -> Result<BTreeSet<ExtElement>> {
    let mut out = box_star(e, tuples, k)?;
    out.extend(e.rank_at_most(k - 1));
    Ok(out)
}

/// Identity-labeled idempotent fixing each of `points`.
pub fn unit_diagonal(e: &ExtensionSemigroup, points: &[usize]) -> Result<ExtElement> {
    let one = e.base().identity().ok_or(Error::BaseNotMonoid)?;
    embed_power(e, &vec![one; points.len()], points)
}

/// Elements `α` whose sandwich `ε_a · α · ε_b` lies in the full box with
/// domain `points_a` and range `points_b` (pairing preserved), where
/// `ε_a`, `ε_b` are the identity-labeled idempotents on those points.
pub fn upset(
    e: &ExtensionSemigroup,
    points_a: &[usize],
    points_b: &[usize],
    guard: SizeGuard,
) -> Result<BTreeSet<ExtElement>> {
    let k = points_a.len();
    check_arity(e, k, points_a, points_b)?;
    let eps_a = unit_diagonal(e, points_a)?;
    let eps_b = unit_diagonal(e, points_b)?;
    let mut required: Vec<(usize, usize)> = points_a.iter().copied().zip(points_b.iter().copied()).collect();
    required.sort_unstable();
    Ok(e.enumerate(guard)?
        .into_iter()
        .filter(|alpha| {
            let w = e.product_unchecked(&e.product_unchecked(&eps_a, alpha), &eps_b);
            w.triples().iter().map(|t| (t.x, t.y)).eq(required.iter().copied())
        })
        .collect())
}

/// Diagonal element with label `tuple[j]` at `points[j]`.
pub fn embed_power(e: &ExtensionSemigroup, tuple: &[usize], points: &[usize]) -> Result<ExtElement> {
    if tuple.len() != points.len() {
        return Err(Error::ArityMismatch(format!("{} labels for {} points", tuple.len(), points.len())));
    }
    if points.len() > e.n() {
        return Err(Error::RankExceeded { rank: points.len(), bound: e.n() });
    }
    check_points(e, points)?;
    if let Some(&s) = tuple.iter().find(|&&s| s >= e.base().size()) {
        return Err(Error::IndexOutOfRange { index: s, size: e.base().size() });
    }
    Ok(element_of(points, tuple, points))
}

/// The direct power `S^i` (`i = points.len()`) with the materialized index
/// of each embedded tuple.
pub fn embedding_map(
    e: &ExtensionSemigroup,
    m: &Materialized,
    points: &[usize],
    guard: SizeGuard,
) -> Result<(DirectPower, Vec<usize>)> {
    let power = e.base().direct_power(points.len(), guard)?;
    let map = (0..power.semigroup.size())
        .map(|i| {
            let a = embed_power(e, &power.decode(i), points)?;
            m.index_of(&a).ok_or_else(|| Error::ForeignElement(format!("{a:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((power, map))
}

/// Labels every pair of `pi` with `s`.
pub fn s_extension(pi: &PartialInjection, s: usize, e: &ExtensionSemigroup) -> Result<ExtElement> {
    if pi.lambda() != e.lambda() {
        return Err(Error::CarrierMismatch(pi.lambda(), e.lambda()));
    }
    if pi.rank() > e.n() {
        return Err(Error::RankExceeded { rank: pi.rank(), bound: e.n() });
    }
    e.base().check_index(s)?;
    Ok(ExtElement::from_canonical(pi.pairs().iter().map(|&(x, y)| Triple { x, s, y }).collect()))
}

/// Label erasure.
pub fn restriction(e: &ExtensionSemigroup, a: &ExtElement) -> PartialInjection {
    a.restriction(e.lambda())
}

/// The unlabeled semigroup with the image index of each materialized
/// element under label erasure.
pub fn restriction_map(
    e: &ExtensionSemigroup,
    m: &Materialized,
    guard: SizeGuard,
) -> Result<(FiniteSemigroup, Vec<usize>)> {
    let (target, elements) = symmetric_inverse(e.lambda(), e.n(), guard)?;
    let index: HashMap<&PartialInjection, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let map = m
        .elements
        .iter()
        .map(|a| {
            let p = restriction(e, a);
            index.get(&p).copied().ok_or_else(|| Error::ForeignElement(p.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((target, map))
}

/// The Brandt extension on `(λ × S × λ) ∪ {0}`: index 0 is the zero and
/// `(a, s, b)` sits at `1 + (a·|S| + s)·λ + b`.
#[derive(Clone, Debug)]
pub struct Brandt {
    pub semigroup: FiniteSemigroup,
    pub lambda: usize,
    pub base_size: usize,
}

impl Brandt {
    pub fn index(&self, a: usize, s: usize, b: usize) -> usize {
        1 + (a * self.base_size + s) * self.lambda + b
    }

    pub fn triple(&self, i: usize) -> Option<(usize, usize, usize)> {
        if i == 0 {
            return None;
        }
        let j = i - 1;
        let b = j % self.lambda;
        let s = (j / self.lambda) % self.base_size;
        let a = j / self.lambda / self.base_size;
        Some((a, s, b))
    }
}

pub fn brandt_extension(s: &FiniteSemigroup, lambda: usize, guard: SizeGuard) -> Result<Brandt> {
    if lambda == 0 {
        return Err(Error::InvalidParameters("lambda must be positive".into()));
    }
    let size = 1 + (lambda as u128) * (lambda as u128) * s.size() as u128;
    guard.check(size)?;
    let size = size as usize;
    let shape = Brandt { semigroup: FiniteSemigroup::from_trusted(1, vec![0]), lambda, base_size: s.size() };
    let mut table = vec![0u32; size * size];
    for i in 1..size {
        let (a, x, b) = shape.triple(i).unwrap();
        for j in 1..size {
            let (c, y, d) = shape.triple(j).unwrap();
            if b == c {
                table[i * size + j] = shape.index(a, s.product(x, y), d) as u32;
            }
        }
    }
    let names = (0..size)
        .map(|i| match shape.triple(i) {
            None => "0".to_string(),
            Some((a, x, b)) => format!("({a},{},{b})", s.name(x)),
        })
        .collect();
    let semigroup = FiniteSemigroup::from_trusted(size, table).with_names(names)?;
    Ok(Brandt { semigroup, ..shape })
}

/// Canonical bijection `(a, s, b) ↦ [(a, s, b)]` into the materialized
/// rank-one extension, and whether it is an isomorphism.
pub fn brandt_iso(s: &FiniteSemigroup, lambda: usize, guard: SizeGuard) -> Result<(Vec<usize>, bool)> {
    let brandt = brandt_extension(s, lambda, guard)?;
    let e = ExtensionSemigroup::new(s.clone(), lambda, 1)?;
    let m = e.materialize(guard)?;
    let map = (0..brandt.semigroup.size())
        .map(|i| {
            let a = match brandt.triple(i) {
                None => ExtElement::Zero,
                Some((a, x, b)) => ExtElement::from_canonical(vec![Triple { x: a, s: x, y: b }]),
            };
            m.index_of(&a).ok_or_else(|| Error::ForeignElement(format!("{a:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = FiniteSemigroup::is_morphism(&map, &brandt.semigroup, &m.semigroup, true);
    Ok((map, ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pinj::matrix_units;
    use crate::zoo;

    fn el(triples: &[(usize, usize, usize)]) -> ExtElement {
        ExtElement::from_triples(triples.to_vec()).unwrap()
    }

    fn full(s: &FiniteSemigroup) -> BTreeSet<usize> {
        s.elements().collect()
    }

    #[test]
    fn full_box_size() {
        let e = ExtensionSemigroup::new(zoo::chain3(), 3, 2).unwrap();
        let s = full(e.base());
        let b = box_set(&e, &[s.clone(), s], &[0, 2], &[1, 0]).unwrap();
        assert_eq!(b.len(), 9);
        assert!(b.iter().all(|a| a.domain() == vec![0, 2]));
    }

    #[test]
    fn simultaneous_slot_permutation_preserves_box() {
        let e = ExtensionSemigroup::new(zoo::min2(), 3, 2).unwrap();
        let a = BTreeSet::from([1]);
        let one = box_set(&e, &[a.clone(), a.clone()], &[0, 2], &[1, 0]).unwrap();
        let two = box_set(&e, &[a.clone(), a], &[2, 0], &[0, 1]).unwrap();
        assert_eq!(one, two);
    }

    #[test]
    fn arity_errors() {
        let e = ExtensionSemigroup::new(zoo::min2(), 2, 2).unwrap();
        let s = full(e.base());
        assert!(matches!(box_set(&e, std::slice::from_ref(&s), &[0, 1], &[0]), Err(Error::ArityMismatch(_))));
        assert_eq!(box_set(&e, &[s.clone(), s], &[0, 0], &[0, 1]), Err(Error::DuplicatePoints));
    }

    #[test]
    fn closed_star_of_full_rank_one() {
        let e = ExtensionSemigroup::new(zoo::min2(), 2, 1).unwrap();
        let tuples: BTreeSet<Vec<usize>> = [vec![0], vec![1]].into();
        let c = box_star_closed(&e, &tuples, 1).unwrap();
        assert_eq!(c.len(), 9);
        assert_eq!(c, e.enumerate(SizeGuard::default()).unwrap().into_iter().collect());
    }

    #[test]
    fn upset_examples() {
        let g = SizeGuard::default();
        let e = ExtensionSemigroup::new(zoo::min2(), 2, 2).unwrap();
        let u = upset(&e, &[0], &[1], g).unwrap();
        for s in 0..2 {
            for t in 0..2 {
                assert!(u.contains(&el(&[(0, s, 1), (1, t, 0)])));
            }
        }
        assert!(!u.contains(&ExtElement::Zero));
        let rank_one: BTreeSet<_> = u.iter().filter(|a| a.rank() == 1).cloned().collect();
        let s = full(e.base());
        assert_eq!(rank_one, box_set(&e, std::slice::from_ref(&s), &[0], &[1]).unwrap());

        let top = upset(&e, &[0, 1], &[1, 0], g).unwrap();
        assert_eq!(top, box_set(&e, &[s.clone(), s], &[0, 1], &[1, 0]).unwrap());

        let n = ExtensionSemigroup::new(zoo::null2(), 2, 2).unwrap();
        assert_eq!(upset(&n, &[0], &[1], g), Err(Error::BaseNotMonoid));
    }

    #[test]
    fn power_embedding_is_a_morphism() {
        let g = SizeGuard::default();
        let e = ExtensionSemigroup::new(zoo::min2(), 2, 2).unwrap();
        let m = e.materialize(g).unwrap();
        let (power, map) = embedding_map(&e, &m, &[0, 1], g).unwrap();
        assert!(FiniteSemigroup::is_morphism(&map, &power.semigroup, &m.semigroup, false));
        assert!(map.iter().all_unique());
        let s = full(e.base());
        let image: BTreeSet<ExtElement> = map.iter().map(|&i| m.element(i).clone()).collect();
        assert_eq!(image, box_set(&e, &[s.clone(), s], &[0, 1], &[0, 1]).unwrap());
        assert_eq!(embed_power(&e, &[1], &[1]).unwrap(), el(&[(1, 1, 1)]));
        assert_eq!(embed_power(&e, &[1, 1], &[1, 1]), Err(Error::DuplicatePoints));
        assert!(matches!(embed_power(&e, &[1, 1, 1], &[0, 1, 2]), Err(Error::RankExceeded { .. })));
    }

    #[test]
    fn s_extension_and_restriction() {
        let g = SizeGuard::default();
        let e = ExtensionSemigroup::new(zoo::min2(), 2, 2).unwrap();
        assert_eq!(s_extension(&PartialInjection::empty(2), 1, &e).unwrap(), ExtElement::Zero);
        let id = PartialInjection::identity(2, [0, 1]).unwrap();
        let eps = s_extension(&id, 1, &e).unwrap();
        assert_eq!(eps, unit_diagonal(&e, &[0, 1]).unwrap());
        assert_eq!(restriction(&e, &eps), id);

        let m = e.materialize(g).unwrap();
        let (target, map) = restriction_map(&e, &m, g).unwrap();
        assert!(FiniteSemigroup::is_morphism(&map, &m.semigroup, &target, false));
        let image: BTreeSet<usize> = map.iter().copied().collect();
        assert_eq!(image.len(), target.size());
    }

    #[test]
    fn brandt_examples() {
        let g = SizeGuard::default();
        let b = brandt_extension(&zoo::trivial(), 2, g).unwrap();
        let id: Vec<usize> = (0..5).collect();
        assert!(FiniteSemigroup::is_morphism(&id, &b.semigroup, &matrix_units(2, g).unwrap(), true));
        assert!(brandt_iso(&zoo::min2(), 2, g).unwrap().1);

        // one point: S with a zero adjoined
        let z = brandt_extension(&zoo::z2(), 1, g).unwrap();
        assert_eq!(z.semigroup.size(), 3);
        assert_eq!(z.semigroup.zero(), Some(0));
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(z.semigroup.product(1 + x, 1 + y), 1 + zoo::z2().product(x, y));
            }
        }
    }
}
