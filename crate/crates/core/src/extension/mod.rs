//! The extension `I_λ^n(S)`: partial bijections of `{0, .., λ-1}` of rank at
//! most `n` whose mapped pairs carry labels from a base semigroup `S`.
//!
//! Product: anything times zero is zero; if the underlying partial
//! injections compose to the empty map the product is zero; otherwise each
//! surviving chain `(a, s, b), (b, t, d)` contributes `(a, st, d)`.

mod boxes;
mod congruence;
mod element;
mod predicates;

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use rand::seq::index::sample;
use rand::Rng;

pub use boxes::*;
pub use congruence::*;
pub use element::{ExtElement, Triple};
pub use predicates::*;

use crate::error::{Error, Result};
use crate::pinj::{shapes, stratum_count};
use crate::semigroup::{FiniteSemigroup, TupleShape};
use crate::SizeGuard;

#[derive(Clone, Debug)]
pub struct ExtensionSemigroup {
    lambda: usize,
    n: usize,
    base: FiniteSemigroup,
}

impl ExtensionSemigroup {
    pub fn new(base: FiniteSemigroup, lambda: usize, n: usize) -> Result<Self> {
        if lambda == 0 || n == 0 || n > lambda {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= n <= lambda, got lambda={lambda}, n={n}"
            )));
        }
        Ok(ExtensionSemigroup { lambda, n, base })
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    /// Rejects elements that violate this extension's parameters.
    pub fn check(&self, a: &ExtElement) -> Result<()> {
        let triples = a.triples();
        if triples.len() > self.n {
            return Err(Error::ForeignElement(format!("rank {} exceeds n={}", triples.len(), self.n)));
        }
        for t in triples {
            if t.x >= self.lambda || t.y >= self.lambda {
                return Err(Error::ForeignElement(format!("point outside 0..{}", self.lambda)));
            }
            if t.s >= self.base.size() {
                return Err(Error::ForeignElement(format!("label {} outside base", t.s)));
            }
        }
        if !triples.windows(2).all(|w| w[0].x < w[1].x) || !triples.iter().map(|t| t.y).all_unique() {
            return Err(Error::ForeignElement("not a canonical partial bijection".into()));
        }
        Ok(())
    }

    pub fn product(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.product_unchecked(a, b))
    }

    pub(crate) fn product_unchecked(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        a.mul_with(b, |&s, &t| self.base.product(s, t))
    }

    /// Closed-form order `1 + Σ_{k=1..n} C(λ,k)^2 k! |S|^k`.
    pub fn count(&self) -> u128 {
        (0..=self.n)
            .map(|k| stratum_count(self.lambda, k, self.base.size()))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    /// Number of elements of rank exactly `k`.
    pub fn stratum_count(&self, k: usize) -> u128 {
        stratum_count(self.lambda, k, self.base.size())
    }

    /// Elements of rank exactly `k` (zero for `k = 0`), by domain, range,
    /// then label tuple.
    pub fn stratum(&self, k: usize) -> Vec<ExtElement> {
        if k == 0 {
            return vec![ExtElement::Zero];
        }
        let labels = TupleShape { base_size: self.base.size(), arity: k };
        let mut out = Vec::new();
        for (dom, ran) in shapes(self.lambda, k) {
            for li in 0..labels.count() {
                let tuple = labels.decode(li);
                out.push(ExtElement::from_canonical(
                    dom.iter()
                        .zip(&ran)
                        .zip(tuple)
                        .map(|((&x, &y), s)| Triple { x, s, y })
                        .collect(),
                ));
            }
        }
        out
    }

    pub fn enumerate(&self, guard: SizeGuard) -> Result<Vec<ExtElement>> {
        guard.check(self.count())?;
        Ok((0..=self.n).flat_map(|k| self.stratum(k)).collect())
    }

    /// Cayley table of `I_λ^n(S)` with the element ↔ index bijection.
    pub fn materialize(&self, guard: SizeGuard) -> Result<Materialized> {
        let elements = self.enumerate(guard)?;
        let index: HashMap<ExtElement, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = Vec::with_capacity(elements.len() * elements.len());
        for a in &elements {
            for b in &elements {
                table.push(index[&self.product_unchecked(a, b)] as u32);
            }
        }
        let names = elements.iter().map(|e| e.render(&self.base)).collect();
        let semigroup = FiniteSemigroup::from_trusted(elements.len(), table).with_names(names)?;
        Ok(Materialized { semigroup, elements, index })
    }

    /// A random element: rank uniform in `0..=n`, then uniform points and
    /// labels. Needs no materialization.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElement {
        let k = rng.random_range(0..=self.n);
        if k == 0 {
            return ExtElement::Zero;
        }
        let mut dom = sample(rng, self.lambda, k).into_vec();
        dom.sort_unstable();
        let ran = sample(rng, self.lambda, k).into_vec();
        let triples = dom
            .into_iter()
            .zip(ran)
            .map(|(x, y)| Triple { x, s: rng.random_range(0..self.base.size()), y })
            .collect();
        ExtElement::from_canonical(triples)
    }

    /// Elements of rank at most `k`, i.e. `I_λ^k(S)` inside `I_λ^n(S)`.
    pub fn rank_at_most(&self, k: usize) -> BTreeSet<ExtElement> {
        (0..=k.min(self.n)).flat_map(|r| self.stratum(r)).collect()
    }
}

/// A materialized extension: its table plus the element bijection.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub semigroup: FiniteSemigroup,
    pub elements: Vec<ExtElement>,
    index: HashMap<ExtElement, usize>,
}

impl Materialized {
    pub fn index_of(&self, a: &ExtElement) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn element(&self, i: usize) -> &ExtElement {
        &self.elements[i]
    }

    pub fn indices_of<'a>(&self, set: impl IntoIterator<Item = &'a ExtElement>) -> Result<BTreeSet<usize>> {
        set.into_iter()
            .map(|e| self.index_of(e).ok_or_else(|| Error::ForeignElement(format!("{e:?}"))))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}
