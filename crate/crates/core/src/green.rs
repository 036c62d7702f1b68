//! Green's relations of a finite semigroup.

use std::collections::HashMap;

use serde::Serialize;

use crate::semigroup::FiniteSemigroup;

/// A partition of `0..m`. Classes are sorted and listed in order of their
/// least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups elements by key; class order follows first occurrence.
    pub fn from_keys<K: std::hash::Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut class_of = Vec::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, k) in keys.into_iter().enumerate() {
            let next = ids.len();
            let c = *ids.entry(k).or_insert(next);
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(i);
            class_of.push(c);
        }
        Partition { class_of, classes }
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| coarser.related(c[0], x)))
    }

    /// Disjoint, covering, and consistent with `class_of`.
    pub fn is_well_formed(&self) -> bool {
        let n = self.class_of.len();
        let mut seen = vec![false; n];
        for (ci, c) in self.classes.iter().enumerate() {
            if c.is_empty() {
                return false;
            }
            for &x in c {
                if x >= n || seen[x] || self.class_of[x] != ci {
                    return false;
                }
                seen[x] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GreenRelation {
    R,
    L,
    H,
    D,
    J,
}

impl GreenRelation {
    pub const ALL: [GreenRelation; 5] = [Self::R, Self::L, Self::H, Self::D, Self::J];
}

impl std::fmt::Display for GreenRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::R => "R",
            Self::L => "L",
            Self::H => "H",
            Self::D => "D",
            Self::J => "J",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for GreenRelation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "R" | "r" => Ok(Self::R),
            "L" | "l" => Ok(Self::L),
            "H" | "h" => Ok(Self::H),
            "D" | "d" => Ok(Self::D),
            "J" | "j" => Ok(Self::J),
            _ => Err(format!("unknown Green relation {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenStructure {
    pub r: Partition,
    pub l: Partition,
    pub h: Partition,
    pub d: Partition,
    pub j: Partition,
}

impl GreenStructure {
    pub fn partition(&self, rel: GreenRelation) -> &Partition {
        match rel {
            GreenRelation::R => &self.r,
            GreenRelation::L => &self.l,
            GreenRelation::H => &self.h,
            GreenRelation::D => &self.d,
            GreenRelation::J => &self.j,
        }
    }

    pub fn related(&self, rel: GreenRelation, a: usize, b: usize) -> bool {
        self.partition(rel).related(a, b)
    }

    pub fn d_equals_j(&self) -> bool {
        self.d == self.j
    }

    /// `H ⊆ R, L ⊆ D ⊆ J`, and every partition well formed.
    pub fn refinement_chain_holds(&self) -> bool {
        [&self.r, &self.l, &self.h, &self.d, &self.j]
            .iter()
            .all(|p| p.is_well_formed())
            && self.h.refines(&self.r)
            && self.h.refines(&self.l)
            && self.r.refines(&self.d)
            && self.l.refines(&self.d)
            && self.d.refines(&self.j)
    }

    pub fn counts(&self) -> [usize; 5] {
        [self.r.len(), self.l.len(), self.h.len(), self.d.len(), self.j.len()]
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Computes all five Green relations by principal ideals.
///
/// `D` is the join of `R` and `L`. Panics if it differs from either
/// composite `R∘L`, `L∘R`, or from `J`: on a finite semigroup all four
/// coincide, so a mismatch means the table code is wrong.
pub fn green(s: &FiniteSemigroup) -> GreenStructure {
    let m = s.size();
    let r = Partition::from_keys(s.elements().map(|a| s.right_ideal(a)));
    let l = Partition::from_keys(s.elements().map(|a| s.left_ideal(a)));
    let j = Partition::from_keys(s.elements().map(|a| s.two_sided_ideal(a)));
    let h = Partition::from_keys(s.elements().map(|a| (r.class_of(a), l.class_of(a))));

    let mut uf = UnionFind((0..m).collect());
    for class in r.classes().iter().chain(l.classes()) {
        for &x in &class[1..] {
            uf.union(class[0], x);
        }
    }
    let d = Partition::from_keys((0..m).map(|a| uf.find(a)));

    // R-class x L-class incidence: a (R∘L) b iff R(a) meets L(b).
    let mut meets = vec![false; r.len() * l.len()];
    for a in 0..m {
        meets[r.class_of(a) * l.len() + l.class_of(a)] = true;
    }
    for a in 0..m {
        for b in 0..m {
            let rl = meets[r.class_of(a) * l.len() + l.class_of(b)];
            let lr = meets[r.class_of(b) * l.len() + l.class_of(a)];
            assert_eq!(rl, d.related(a, b), "D differs from R∘L at ({a}, {b})");
            assert_eq!(lr, d.related(a, b), "D differs from L∘R at ({a}, {b})");
        }
    }
    assert_eq!(d, j, "D != J on a finite semigroup");

    GreenStructure { r, l, h, d, j }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pinj::matrix_units;
    use crate::{zoo, SizeGuard};

    #[test]
    fn groups_have_one_class() {
        let g = green(&zoo::z2());
        assert_eq!(g.counts(), [1, 1, 1, 1, 1]);
    }

    #[test]
    fn b2_class_counts() {
        let b2 = matrix_units(2, SizeGuard::default()).unwrap();
        let g = green(&b2);
        assert_eq!(g.counts(), [3, 3, 5, 2, 2]);
    }

    #[test]
    fn null2_classes() {
        let g = green(&zoo::null2());
        assert_eq!(g.counts(), [2, 2, 2, 2, 2]);
        assert_eq!(g.j.classes(), &[vec![0], vec![1]]);
    }

    #[test]
    fn refinement_chain_on_zoo() {
        for (name, s) in zoo::all() {
            let g = green(&s);
            assert!(g.refinement_chain_holds(), "{name}");
            assert!(g.d_equals_j(), "{name}");
        }
    }

    #[test]
    fn left_zero_band_is_one_l_class() {
        // xy = x: aS^1 = {a}, S^1a = S
        let g = green(&zoo::left_zero2());
        assert_eq!(g.r.len(), 2);
        assert_eq!(g.l.len(), 1);
        assert_eq!(g.d.len(), 1);
    }
}
