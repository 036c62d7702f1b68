//! The bicyclic monoid `⟨p, q | pq = 1⟩` with elements `q^k p^l`, its
//! Green's relations in closed form, and the two-point extension example
//! in which `H`-related elements have no labelwise `H`-alignment.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::ExtElement;
use crate::green::GreenRelation;
use crate::perm::all_permutations;

/// `q^k p^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BicyclicElement {
    pub k: u64,
    pub l: u64,
}

impl BicyclicElement {
    pub const ONE: BicyclicElement = BicyclicElement { k: 0, l: 0 };
    pub const P: BicyclicElement = BicyclicElement { k: 0, l: 1 };
    pub const Q: BicyclicElement = BicyclicElement { k: 1, l: 0 };

    pub fn new(k: u64, l: u64) -> Self {
        BicyclicElement { k, l }
    }
}

impl fmt::Display for BicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |f: &mut fmt::Formatter<'_>, g: &str, e: u64| match e {
            0 => Ok(()),
            1 => f.write_str(g),
            _ => write!(f, "{g}^{e}"),
        };
        if self.k == 0 && self.l == 0 {
            return f.write_str("1");
        }
        power(f, "q", self.k)?;
        power(f, "p", self.l)
    }
}

/// `q^k p^l · q^m p^n = q^{k+m-min(l,m)} p^{l+n-min(l,m)}`.
pub fn bc_mul(u: BicyclicElement, v: BicyclicElement) -> BicyclicElement {
    let c = u.l.min(v.k);
    BicyclicElement { k: u.k + v.k - c, l: u.l + v.l - c }
}

/// A verified multiplication witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BicyclicWitness {
    /// `u·x = v` and `v·y = u`.
    Right { x: BicyclicElement, y: BicyclicElement },
    /// `x·u = v` and `y·v = u`.
    Left { x: BicyclicElement, y: BicyclicElement },
    /// `u R w` and `w L v`.
    Middle { w: BicyclicElement },
    /// `x·u·y = v` and `x'·v·y' = u`.
    TwoSided {
        x: BicyclicElement,
        y: BicyclicElement,
        x_back: BicyclicElement,
        y_back: BicyclicElement,
    },
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicyclicVerdict {
    pub related: bool,
    pub witness: Option<BicyclicWitness>,
}

fn right_witness(u: BicyclicElement, v: BicyclicElement) -> Option<BicyclicWitness> {
    (u.k == v.k).then(|| BicyclicWitness::Right {
        x: BicyclicElement::new(u.l, v.l),
        y: BicyclicElement::new(v.l, u.l),
    })
}

fn left_witness(u: BicyclicElement, v: BicyclicElement) -> Option<BicyclicWitness> {
    (u.l == v.l).then(|| BicyclicWitness::Left {
        x: BicyclicElement::new(v.k, u.k),
        y: BicyclicElement::new(u.k, v.k),
    })
}

/// Checks a witness by multiplication.
pub fn witness_holds(u: BicyclicElement, v: BicyclicElement, w: &BicyclicWitness) -> bool {
    match *w {
        BicyclicWitness::Right { x, y } => bc_mul(u, x) == v && bc_mul(v, y) == u,
        BicyclicWitness::Left { x, y } => bc_mul(x, u) == v && bc_mul(y, v) == u,
        BicyclicWitness::Middle { w } => {
            right_witness(u, w).is_some_and(|r| witness_holds(u, w, &r))
                && left_witness(w, v).is_some_and(|l| witness_holds(w, v, &l))
        }
        BicyclicWitness::TwoSided { x, y, x_back, y_back } => {
            bc_mul(bc_mul(x, u), y) == v && bc_mul(bc_mul(x_back, v), y_back) == u
        }
        BicyclicWitness::Equal => u == v,
    }
}

/// Closed-form Green verdict; positive verdicts carry a witness that has
/// been checked with [`bc_mul`].
pub fn bc_green(u: BicyclicElement, v: BicyclicElement, rel: GreenRelation) -> BicyclicVerdict {
    let witness = match rel {
        GreenRelation::R => right_witness(u, v),
        GreenRelation::L => left_witness(u, v),
        GreenRelation::H => (u == v).then_some(BicyclicWitness::Equal),
        GreenRelation::D => Some(BicyclicWitness::Middle { w: BicyclicElement::new(u.k, v.l) }),
        GreenRelation::J => Some(BicyclicWitness::TwoSided {
            x: BicyclicElement::new(v.k, u.k),
            y: BicyclicElement::new(u.l, v.l),
            x_back: BicyclicElement::new(u.k, v.k),
            y_back: BicyclicElement::new(v.l, u.l),
        }),
    };
    if let Some(w) = &witness {
        assert!(witness_holds(u, v, w), "unverified bicyclic witness {w:?} for {u} {rel} {v}");
    }
    BicyclicVerdict { related: witness.is_some(), witness }
}

/// Elements with both exponents at most `bound`.
pub fn elements_up_to(bound: u64) -> Vec<BicyclicElement> {
    (0..=bound).flat_map(|k| (0..=bound).map(move |l| BicyclicElement::new(k, l))).collect()
}

/// Green verdict by exhaustive witness search among elements with
/// exponents at most `bound`.
pub fn bc_green_bounded(u: BicyclicElement, v: BicyclicElement, rel: GreenRelation, bound: u64) -> bool {
    let cands = elements_up_to(bound);
    let right = |a, b| cands.iter().any(|&x| bc_mul(a, x) == b);
    let left = |a, b| cands.iter().any(|&x| bc_mul(x, a) == b);
    let two = |a, b| cands.iter().any(|&x| cands.iter().any(|&y| bc_mul(bc_mul(x, a), y) == b));
    let r = |a, b| right(a, b) && right(b, a);
    let l = |a, b| left(a, b) && left(b, a);
    match rel {
        GreenRelation::R => r(u, v),
        GreenRelation::L => l(u, v),
        GreenRelation::H => r(u, v) && l(u, v),
        GreenRelation::D => cands.iter().any(|&w| r(u, w) && l(w, v)),
        GreenRelation::J => two(u, v) && two(v, u),
    }
}

/// Outcome of the two-point example over the bicyclic monoid.
#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub lambda: usize,
    pub n: usize,
    pub alpha: ExtElement<String>,
    pub beta: ExtElement<String>,
    pub delta: ExtElement<String>,
    /// `(name, holds)` for `α = βδ`, `β = αδ`, `α = δβ`, `β = δα`.
    pub factorizations: Vec<(String, bool)>,
    /// For each permutation of the two slots, whether the label pairs are
    /// pairwise `H`-related.
    pub labelwise_h: Vec<(Vec<usize>, bool)>,
    pub alpha_h_beta: bool,
    pub passed: bool,
}

/// Builds `α = [(0, qp, 0), (1, q²p², 1)]`, `β = [(0, qp², 1), (1, q²p, 0)]`
/// and `δ = [(0, p, 1), (1, q, 0)]`, checks the four factorizations that
/// make `α` and `β` mutually divisible on both sides (so `H`-related), and
/// checks that no slot permutation relates their labels pairwise by `H`.
pub fn verify_h_counterexample(lambda: usize, n: usize) -> Result<ExampleReport> {
    if lambda < 2 || n < 2 || n > lambda {
        return Err(Error::ParameterTooSmall(format!("need 2 <= n <= lambda, got lambda={lambda}, n={n}")));
    }
    let b = BicyclicElement::new;
    let mk = |t: Vec<(usize, BicyclicElement, usize)>| ExtElement::from_triples(t).expect("valid triples");
    let alpha = mk(vec![(0, b(1, 1), 0), (1, b(2, 2), 1)]);
    let beta = mk(vec![(0, b(1, 2), 1), (1, b(2, 1), 0)]);
    let delta = mk(vec![(0, b(0, 1), 1), (1, b(1, 0), 0)]);
    let mul = |x: &ExtElement<BicyclicElement>, y: &ExtElement<BicyclicElement>| x.mul_with(y, |s, t| bc_mul(*s, *t));
    let factorizations = vec![
        ("alpha = beta*delta".to_string(), mul(&beta, &delta) == alpha),
        ("beta = alpha*delta".to_string(), mul(&alpha, &delta) == beta),
        ("alpha = delta*beta".to_string(), mul(&delta, &beta) == alpha),
        ("beta = delta*alpha".to_string(), mul(&delta, &alpha) == beta),
    ];
    let (sa, sb) = (alpha.labels(), beta.labels());
    let labelwise_h: Vec<(Vec<usize>, bool)> = all_permutations(2)
        .map(|sigma| {
            let ok = (0..2).all(|j| bc_green(sa[j], sb[sigma[j]], GreenRelation::H).related);
            (sigma, ok)
        })
        .collect();
    let alpha_h_beta = factorizations.iter().all(|f| f.1);
    let passed = alpha_h_beta && labelwise_h.iter().all(|p| !p.1);
    let show = |x: &ExtElement<BicyclicElement>| x.map_labels(|s| s.to_string());
    Ok(ExampleReport {
        lambda,
        n,
        alpha: show(&alpha),
        beta: show(&beta),
        delta: show(&delta),
        factorizations,
        labelwise_h,
        alpha_h_beta,
        passed,
    })
}
