//! Green's relations on `I_λ^n(S)` for a monoid `S`, decided from the base
//! relations by permutation search and cross-checked against the relations
//! computed on the materialized table.
//!
//! For nonzero `α = (a_j, s_j, b_j)` and `β = (c_j, t_j, d_j)` of equal rank:
//! `R` needs `a_j = c_{jσ}` and `s_j R t_{jσ}`; `L` needs `b_j = d_{jσ}` and
//! `s_j L t_{jσ}`; `D` and `J` need only the labels related under some `σ`;
//! `H` is `R` and `L` with independent permutations. The zero is related
//! only to itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{ExtElement, ExtensionSemigroup};
use crate::green::{green, GreenRelation, GreenStructure};
use crate::perm::find_permutation;
use crate::SizeGuard;

/// A verdict with its witness permutations in one-line notation over slot
/// indices: one permutation for `R`, `L`, `D`, `J`, two (`σ`, `ρ`) for `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub related: bool,
    pub witness: Option<Vec<Vec<usize>>>,
}

impl Verdict {
    fn no() -> Self {
        Verdict { related: false, witness: None }
    }

    fn from_perm(p: Option<Vec<usize>>) -> Self {
        Verdict { related: p.is_some(), witness: p.map(|p| vec![p]) }
    }
}

/// Characterization predicates for one extension, with the base Green
/// structure computed once.
#[derive(Clone, Debug)]
pub struct GreenCharacterizer<'a> {
    e: &'a ExtensionSemigroup,
    base: GreenStructure,
}

impl<'a> GreenCharacterizer<'a> {
    pub fn new(e: &'a ExtensionSemigroup) -> Result<Self> {
        if !e.base().is_monoid() {
            return Err(Error::BaseNotMonoid);
        }
        Ok(GreenCharacterizer { e, base: green(e.base()) })
    }

    pub fn extension(&self) -> &ExtensionSemigroup {
        self.e
    }

    pub fn base_green(&self) -> &GreenStructure {
        &self.base
    }

    /// `None` when the question is settled by the zero or by rank.
    fn trivial(a: &ExtElement, b: &ExtElement) -> Option<Verdict> {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => Some(Verdict { related: true, witness: Some(vec![vec![]]) }),
            (true, false) | (false, true) => Some(Verdict::no()),
            _ if a.rank() != b.rank() => Some(Verdict::no()),
            _ => None,
        }
    }

    fn search(
        &self,
        a: &ExtElement,
        b: &ExtElement,
        rel: GreenRelation,
        points: impl Fn(usize, usize) -> bool,
    ) -> Option<Vec<usize>> {
        let (ta, tb) = (a.triples(), b.triples());
        find_permutation(ta.len(), |j, sj| points(j, sj) && self.base.related(rel, ta[j].s, tb[sj].s))
    }

    pub fn r(&self, a: &ExtElement, b: &ExtElement) -> Verdict {
        if let Some(v) = Self::trivial(a, b) {
            return v;
        }
        let (ta, tb) = (a.triples(), b.triples());
        Verdict::from_perm(self.search(a, b, GreenRelation::R, |j, sj| ta[j].x == tb[sj].x))
    }

    pub fn l(&self, a: &ExtElement, b: &ExtElement) -> Verdict {
        if let Some(v) = Self::trivial(a, b) {
            return v;
        }
        let (ta, tb) = (a.triples(), b.triples());
        Verdict::from_perm(self.search(a, b, GreenRelation::L, |j, sj| ta[j].y == tb[sj].y))
    }

    pub fn d(&self, a: &ExtElement, b: &ExtElement) -> Verdict {
        if let Some(v) = Self::trivial(a, b) {
            return v;
        }
        Verdict::from_perm(self.search(a, b, GreenRelation::D, |_, _| true))
    }

    pub fn j(&self, a: &ExtElement, b: &ExtElement) -> Verdict {
        if let Some(v) = Self::trivial(a, b) {
            return v;
        }
        Verdict::from_perm(self.search(a, b, GreenRelation::J, |_, _| true))
    }

    pub fn h(&self, a: &ExtElement, b: &ExtElement) -> Verdict {
        if let Some(v) = Self::trivial(a, b) {
            return v;
        }
        match (self.r(a, b).witness, self.l(a, b).witness) {
            (Some(mut sigma), Some(rho)) => {
                sigma.extend(rho);
                Verdict { related: true, witness: Some(sigma) }
            }
            _ => Verdict::no(),
        }
    }

    /// The label-only form: some `σ` with `s_j R t_{jσ}` and some `ρ` with
    /// `s_j L t_{jρ}`, ignoring points. Strictly weaker than `H`.
    pub fn h_labels_only(&self, a: &ExtElement, b: &ExtElement) -> Verdict {
        if let Some(v) = Self::trivial(a, b) {
            return v;
        }
        let sigma = self.search(a, b, GreenRelation::R, |_, _| true);
        let rho = self.search(a, b, GreenRelation::L, |_, _| true);
        match (sigma, rho) {
            (Some(s), Some(r)) => Verdict { related: true, witness: Some(vec![s, r]) },
            _ => Verdict::no(),
        }
    }

    /// A single `σ` relating labels pairwise by `H` with both point
    /// alignments; sufficient for `H`.
    pub fn h_single_sigma(&self, a: &ExtElement, b: &ExtElement) -> Verdict {
        if let Some(v) = Self::trivial(a, b) {
            return v;
        }
        let (ta, tb) = (a.triples(), b.triples());
        Verdict::from_perm(self.search(a, b, GreenRelation::H, |j, sj| {
            ta[j].x == tb[sj].x && ta[j].y == tb[sj].y
        }))
    }

    pub fn relation(&self, rel: GreenRelation, a: &ExtElement, b: &ExtElement) -> Verdict {
        match rel {
            GreenRelation::R => self.r(a, b),
            GreenRelation::L => self.l(a, b),
            GreenRelation::H => self.h(a, b),
            GreenRelation::D => self.d(a, b),
            GreenRelation::J => self.j(a, b),
        }
    }
}

pub fn char_r(e: &ExtensionSemigroup, a: &ExtElement, b: &ExtElement) -> Result<Verdict> {
    Ok(GreenCharacterizer::new(e)?.r(a, b))
}

pub fn char_l(e: &ExtensionSemigroup, a: &ExtElement, b: &ExtElement) -> Result<Verdict> {
    Ok(GreenCharacterizer::new(e)?.l(a, b))
}

pub fn char_d(e: &ExtensionSemigroup, a: &ExtElement, b: &ExtElement) -> Result<Verdict> {
    Ok(GreenCharacterizer::new(e)?.d(a, b))
}

pub fn char_j(e: &ExtensionSemigroup, a: &ExtElement, b: &ExtElement) -> Result<Verdict> {
    Ok(GreenCharacterizer::new(e)?.j(a, b))
}

pub fn char_h(e: &ExtensionSemigroup, a: &ExtElement, b: &ExtElement) -> Result<Verdict> {
    Ok(GreenCharacterizer::new(e)?.h(a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenCharReport {
    pub relation: GreenRelation,
    pub pair: (ExtElement, ExtElement),
    pub char_result: bool,
    pub brute_result: bool,
    pub witness: Option<Vec<Vec<usize>>>,
}

impl GreenCharReport {
    pub fn is_mismatch(&self) -> bool {
        self.char_result != self.brute_result
    }
}

/// One report per ordered pair and relation, comparing the
/// characterization with the relation on the materialized table.
pub fn cross_check_green(e: &ExtensionSemigroup, guard: SizeGuard) -> Result<Vec<GreenCharReport>> {
    cross_check_with(e, guard, |c, rel, a, b| c.relation(rel, a, b))
}

/// As [`cross_check_green`] with a custom predicate.
pub fn cross_check_with(
    e: &ExtensionSemigroup,
    guard: SizeGuard,
    predicate: impl Fn(&GreenCharacterizer, GreenRelation, &ExtElement, &ExtElement) -> Verdict,
) -> Result<Vec<GreenCharReport>> {
    let c = GreenCharacterizer::new(e)?;
    let m = e.materialize(guard)?;
    let brute = green(&m.semigroup);
    let mut out = Vec::with_capacity(m.len() * m.len() * 5);
    for i in 0..m.len() {
        for j in 0..m.len() {
            let (a, b) = (m.element(i), m.element(j));
            for rel in GreenRelation::ALL {
                let v = predicate(&c, rel, a, b);
                out.push(GreenCharReport {
                    relation: rel,
                    pair: (a.clone(), b.clone()),
                    char_result: v.related,
                    brute_result: brute.related(rel, i, j),
                    witness: v.witness,
                });
            }
        }
    }
    Ok(out)
}

pub fn mismatches(reports: &[GreenCharReport]) -> Vec<&GreenCharReport> {
    reports.iter().filter(|r| r.is_mismatch()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn el(triples: &[(usize, usize, usize)]) -> ExtElement {
        ExtElement::from_triples(triples.to_vec()).unwrap()
    }

    #[test]
    fn reflexive_with_identity_witness() {
        let e = ExtensionSemigroup::new(zoo::t2(), 2, 2).unwrap();
        let c = GreenCharacterizer::new(&e).unwrap();
        let a = el(&[(0, 1, 1), (1, 3, 0)]);
        for rel in GreenRelation::ALL {
            let v = c.relation(rel, &a, &a);
            assert!(v.related, "{rel}");
            assert_eq!(v.witness.unwrap()[0], vec![0, 1]);
        }
    }

    #[test]
    fn rank_mismatch_is_unrelated() {
        let e = ExtensionSemigroup::new(zoo::z2(), 2, 2).unwrap();
        let c = GreenCharacterizer::new(&e).unwrap();
        let (a, b) = (el(&[(0, 0, 0)]), el(&[(0, 0, 0), (1, 0, 1)]));
        for rel in GreenRelation::ALL {
            assert!(!c.relation(rel, &a, &b).related);
            assert!(!c.relation(rel, &ExtElement::Zero, &a).related);
        }
    }

    #[test]
    fn non_monoid_base_is_refused() {
        let e = ExtensionSemigroup::new(zoo::null2(), 2, 1).unwrap();
        assert_eq!(char_r(&e, &ExtElement::Zero, &ExtElement::Zero), Err(Error::BaseNotMonoid));
    }

    #[test]
    fn group_base_r_is_domain_equality() {
        let e = ExtensionSemigroup::new(zoo::z2(), 2, 2).unwrap();
        let all = e.enumerate(SizeGuard::default()).unwrap();
        let c = GreenCharacterizer::new(&e).unwrap();
        for a in all.iter().filter(|a| !a.is_zero()) {
            for b in all.iter().filter(|b| !b.is_zero()) {
                assert_eq!(c.r(a, b).related, a.domain() == b.domain());
            }
        }
    }

    #[test]
    fn no_mismatches_on_small_monoids() {
        for base in [zoo::trivial(), zoo::min2(), zoo::z2()] {
            for n in 1..=2 {
                let e = ExtensionSemigroup::new(base.clone(), 2, n).unwrap();
                let reports = cross_check_green(&e, SizeGuard::default()).unwrap();
                assert!(mismatches(&reports).is_empty());
            }
        }
    }

    #[test]
    fn label_only_h_disagrees_with_brute_force() {
        let e = ExtensionSemigroup::new(zoo::trivial(), 2, 1).unwrap();
        let c = GreenCharacterizer::new(&e).unwrap();
        assert!(c.h_labels_only(&el(&[(0, 0, 0)]), &el(&[(1, 0, 1)])).related);
        assert!(!c.h(&el(&[(0, 0, 0)]), &el(&[(1, 0, 1)])).related);
        let reports = cross_check_with(&e, SizeGuard::default(), |c, rel, a, b| match rel {
            GreenRelation::H => c.h_labels_only(a, b),
            _ => c.relation(rel, a, b),
        })
        .unwrap();
        assert!(mismatches(&reports).iter().all(|r| r.relation == GreenRelation::H));
        assert!(!mismatches(&reports).is_empty());
    }

    #[test]
    fn single_sigma_h_is_sufficient() {
        let e = ExtensionSemigroup::new(zoo::t2(), 2, 2).unwrap();
        let all = e.enumerate(SizeGuard::default()).unwrap();
        let c = GreenCharacterizer::new(&e).unwrap();
        for a in &all {
            for b in &all {
                if c.h_single_sigma(a, b).related {
                    assert!(c.h(a, b).related);
                }
            }
        }
    }
}
