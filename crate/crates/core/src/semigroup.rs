//! Finite semigroups given by Cayley tables.
//!
//! Elements are the indices `0..m`; `product(a, b)` reads row `a`, column `b`.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::SizeGuard;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<u32>,
    identity: Option<usize>,
    zero: Option<usize>,
    names: Option<Vec<String>>,
}

impl FiniteSemigroup {
    /// Checks shape, associativity and any claimed identity or zero.
    ///
    /// Unclaimed identity and zero elements are detected and recorded.
    pub fn validate(
        rows: &[Vec<usize>],
        identity: Option<usize>,
        zero: Option<usize>,
    ) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::MalformedTable("table is empty".into()));
        }
        let mut table = Vec::with_capacity(m * m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= m {
                    return Err(Error::MalformedTable(format!(
                        "entry {v} in row {i} out of range"
                    )));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(m, table, identity, zero)
    }

    /// Same as [`validate`](Self::validate) for a row-major flat table.
    pub fn from_flat(
        size: usize,
        table: Vec<u32>,
        identity: Option<usize>,
        zero: Option<usize>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::MalformedTable("table is empty".into()));
        }
        if table.len() != size * size {
            return Err(Error::MalformedTable(format!(
                "expected {} entries, got {}",
                size * size,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v as usize >= size) {
            return Err(Error::MalformedTable(format!("entry {bad} out of range")));
        }
        let s = Self::from_trusted(size, table);
        if let Some((a, b, c)) = s.associativity_violation() {
            return Err(Error::NonAssociative(a, b, c));
        }
        s.with_claims(identity, zero)
    }

    /// Builds from a table whose associativity is guaranteed by construction.
    /// Identity and zero are detected.
    pub(crate) fn from_trusted(size: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        let mut s = FiniteSemigroup {
            size,
            table,
            identity: None,
            zero: None,
            names: None,
        };
        s.identity = (0..size).find(|&e| s.is_identity(e));
        s.zero = (0..size).find(|&z| s.is_zero(z));
        s
    }

    fn with_claims(mut self, identity: Option<usize>, zero: Option<usize>) -> Result<Self> {
        if let Some(e) = identity {
            self.check_index(e)?;
            if let Some(w) = (0..self.size).find(|&x| self.product(e, x) != x || self.product(x, e) != x) {
                return Err(Error::BadIdentity { identity: e, witness: w });
            }
            self.identity = Some(e);
        }
        if let Some(z) = zero {
            self.check_index(z)?;
            if let Some(w) = (0..self.size).find(|&x| self.product(z, x) != z || self.product(x, z) != z) {
                return Err(Error::BadZero { zero: z, witness: w });
            }
            self.zero = Some(z);
        }
        Ok(self)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::MalformedTable(format!(
                "{} names for {} elements",
                names.len(),
                self.size
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// First triple `(a, b, c)` with `(ab)c != a(bc)`, in lexicographic order.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let m = self.size;
        for a in 0..m {
            for b in 0..m {
                let ab = self.product(a, b);
                let row_ab = &self.table[ab * m..(ab + 1) * m];
                for c in 0..m {
                    if row_ab[c] as usize != self.product(a, self.product(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    fn is_identity(&self, e: usize) -> bool {
        (0..self.size).all(|x| self.product(e, x) == x && self.product(x, e) == x)
    }

    fn is_zero(&self, z: usize) -> bool {
        (0..self.size).all(|x| self.product(z, x) == z && self.product(x, z) == z)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.size {
            Err(Error::IndexOutOfRange { index, size: self.size })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.size)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.product(e, e) == e
    }

    pub fn idempotents(&self) -> BTreeSet<usize> {
        self.elements().filter(|&e| self.is_idempotent(e)).collect()
    }

    /// Natural partial order on idempotents: `e <= f` iff `ef = fe = e`.
    pub fn nat_leq(&self, e: usize, f: usize) -> Result<bool> {
        self.check_index(e)?;
        self.check_index(f)?;
        for x in [e, f] {
            if !self.is_idempotent(x) {
                return Err(Error::NotIdempotent(x));
            }
        }
        Ok(self.product(e, f) == e && self.product(f, e) == e)
    }

    pub fn is_regular_element(&self, a: usize) -> bool {
        self.elements().any(|b| self.product(self.product(a, b), a) == a)
    }

    /// All `b` with `aba = a` and `bab = b`.
    pub fn inverses_of(&self, a: usize) -> BTreeSet<usize> {
        self.elements()
            .filter(|&b| {
                self.product(self.product(a, b), a) == a && self.product(self.product(b, a), b) == b
            })
            .collect()
    }

    pub fn regularity(&self) -> Regularity {
        let regular_elements: BTreeSet<usize> =
            self.elements().filter(|&a| self.is_regular_element(a)).collect();
        let is_regular = regular_elements.len() == self.size;
        let idem = self.idempotents();
        let is_orthodox = is_regular
            && idem
                .iter()
                .all(|&e| idem.iter().all(|&f| self.is_idempotent(self.product(e, f))));
        let inverses: BTreeMap<usize, BTreeSet<usize>> =
            self.elements().map(|a| (a, self.inverses_of(a))).collect();
        let is_inverse = inverses.values().all(|s| s.len() == 1);
        Regularity {
            regular_elements,
            is_regular,
            is_orthodox,
            is_inverse,
            inverses,
        }
    }

    /// Returns `self` if it already has an identity, else `S` with a fresh
    /// identity appended as the last element.
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        if self.identity.is_some() {
            return self.clone();
        }
        let m = self.size;
        let e = m;
        let mut table = Vec::with_capacity((m + 1) * (m + 1));
        for a in 0..=m {
            for b in 0..=m {
                let v = if a == e {
                    b
                } else if b == e {
                    a
                } else {
                    self.product(a, b)
                };
                table.push(v as u32);
            }
        }
        let mut s = FiniteSemigroup::from_trusted(m + 1, table);
        s.identity = Some(e);
        if let Some(names) = &self.names {
            let mut n = names.clone();
            n.push("1".into());
            s.names = Some(n);
        }
        s
    }

    /// Principal right ideal `aS^1` as a bitset.
    pub fn right_ideal(&self, a: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.size);
        set.insert(a);
        for x in self.elements() {
            set.insert(self.product(a, x));
        }
        set
    }

    /// Principal left ideal `S^1a` as a bitset.
    pub fn left_ideal(&self, a: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.size);
        set.insert(a);
        for x in self.elements() {
            set.insert(self.product(x, a));
        }
        set
    }

    /// Principal two-sided ideal `S^1aS^1`.
    pub fn two_sided_ideal(&self, a: usize) -> FixedBitSet {
        let left = self.left_ideal(a);
        let mut set = left.clone();
        for l in left.ones() {
            for x in self.elements() {
                set.insert(self.product(l, x));
            }
        }
        set
    }

    /// Koch–Wallace stability, checked over all ordered pairs with
    /// `S^1`-principal ideals.
    pub fn stability(&self) -> Stability {
        let lefts: Vec<FixedBitSet> = self.elements().map(|a| self.left_ideal(a)).collect();
        let rights: Vec<FixedBitSet> = self.elements().map(|a| self.right_ideal(a)).collect();
        let mut left_witness = None;
        'left: for a in self.elements() {
            for b in self.elements() {
                let ab = self.product(a, b);
                if lefts[a].is_subset(&lefts[ab]) && lefts[a] != lefts[ab] {
                    left_witness = Some((a, b));
                    break 'left;
                }
            }
        }
        let mut right_witness = None;
        'right: for c in self.elements() {
            for d in self.elements() {
                let dc = self.product(d, c);
                if rights[c].is_subset(&rights[dc]) && rights[c] != rights[dc] {
                    right_witness = Some((c, d));
                    break 'right;
                }
            }
        }
        Stability {
            left_stable: left_witness.is_none(),
            right_stable: right_witness.is_none(),
            stable: left_witness.is_none() && right_witness.is_none(),
            witness: left_witness.or(right_witness),
        }
    }

    /// `SD ∪ DS ⊆ D`.
    pub fn is_ideal(&self, subset: &BTreeSet<usize>) -> Result<bool> {
        Ok(self.ideal_violation(subset)?.is_none())
    }

    /// First product escaping `subset`, as `(left, right, product)`.
    pub fn ideal_violation(&self, subset: &BTreeSet<usize>) -> Result<Option<(usize, usize, usize)>> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &d in subset {
            self.check_index(d)?;
        }
        let mut member = FixedBitSet::with_capacity(self.size);
        subset.iter().for_each(|&d| member.insert(d));
        for &d in subset {
            for x in self.elements() {
                let dx = self.product(d, x);
                if !member.contains(dx) {
                    return Ok(Some((d, x, dx)));
                }
                let xd = self.product(x, d);
                if !member.contains(xd) {
                    return Ok(Some((x, d, xd)));
                }
            }
        }
        Ok(None)
    }

    /// Every (nonempty) ideal, ordered by size then lexicographically.
    pub fn ideals(&self) -> Result<Vec<BTreeSet<usize>>> {
        if self.size > 20 {
            return Err(Error::SizeGuardExceeded {
                requested: 1u128 << self.size,
                limit: 1 << 20,
            });
        }
        let mut out = Vec::new();
        for mask in 1u32..(1u32 << self.size) {
            let set: BTreeSet<usize> = self.elements().filter(|&i| mask >> i & 1 == 1).collect();
            if self.is_ideal(&set)? {
                out.push(set);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Coordinatewise product on `S^arity`.
    pub fn direct_power(&self, arity: usize, guard: SizeGuard) -> Result<DirectPower> {
        if arity == 0 {
            return Err(Error::InvalidParameters("direct power needs arity >= 1".into()));
        }
        let requested = (self.size as u128).saturating_pow(arity as u32);
        guard.check(requested)?;
        let size = requested as usize;
        let shape = DirectPower::shape(self.size, arity);
        let mut table = Vec::with_capacity(size * size);
        let decoded: Vec<Vec<usize>> = (0..size).map(|i| shape.decode(i)).collect();
        for a in &decoded {
            for b in &decoded {
                let c: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| self.product(x, y)).collect();
                table.push(shape.encode(&c) as u32);
            }
        }
        let mut semigroup = FiniteSemigroup::from_trusted(size, table);
        if let Some(names) = &self.names {
            let n = decoded
                .iter()
                .map(|t| format!("({})", t.iter().map(|&x| names[x].as_str()).collect::<Vec<_>>().join(",")))
                .collect();
            semigroup.names = Some(n);
        }
        Ok(DirectPower {
            semigroup,
            base_size: self.size,
            arity,
        })
    }

    /// `f(ab) = f(a)f(b)` for all pairs; `f[i]` is the image of `i`.
    pub fn is_morphism(f: &[usize], source: &FiniteSemigroup, target: &FiniteSemigroup, require_bijective: bool) -> bool {
        if f.len() != source.size || f.iter().any(|&y| y >= target.size) {
            return false;
        }
        if require_bijective {
            if source.size != target.size {
                return false;
            }
            let image: BTreeSet<usize> = f.iter().copied().collect();
            if image.len() != target.size {
                return false;
            }
        }
        source.elements().all(|a| {
            source
                .elements()
                .all(|b| f[source.product(a, b)] == target.product(f[a], f[b]))
        })
    }

    /// Subsemigroup check for an index set.
    pub fn is_closed(&self, subset: &BTreeSet<usize>) -> bool {
        subset
            .iter()
            .all(|&a| subset.iter().all(|&b| subset.contains(&self.product(a, b))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub regular_elements: BTreeSet<usize>,
    pub is_regular: bool,
    pub is_orthodox: bool,
    pub is_inverse: bool,
    pub inverses: BTreeMap<usize, BTreeSet<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stability {
    pub left_stable: bool,
    pub right_stable: bool,
    pub stable: bool,
    /// First violating pair `(a, b)` (left) or `(c, d)` (right).
    pub witness: Option<(usize, usize)>,
}

/// Mixed-radix indexing of tuples in `S^arity`; coordinate 0 is most
/// significant so index order is lexicographic tuple order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleShape {
    pub base_size: usize,
    pub arity: usize,
}

impl TupleShape {
    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &x| acc * self.base_size + x)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        for slot in out.iter_mut().rev() {
            *slot = index % self.base_size;
            index /= self.base_size;
        }
        out
    }

    pub fn count(&self) -> usize {
        self.base_size.pow(self.arity as u32)
    }
}

#[derive(Clone, Debug)]
pub struct DirectPower {
    pub semigroup: FiniteSemigroup,
    pub base_size: usize,
    pub arity: usize,
}

impl DirectPower {
    fn shape(base_size: usize, arity: usize) -> TupleShape {
        TupleShape { base_size, arity }
    }

    pub fn tuple_shape(&self) -> TupleShape {
        Self::shape(self.base_size, self.arity)
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        self.tuple_shape().encode(tuple)
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        self.tuple_shape().decode(index)
    }

    /// Projection onto coordinate `i` (0-based).
    pub fn project(&self, index: usize, i: usize) -> usize {
        self.decode(index)[i]
    }

    pub fn indices_of(&self, tuples: &BTreeSet<Vec<usize>>) -> BTreeSet<usize> {
        tuples.iter().map(|t| self.encode(t)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn trivial_table_is_a_monoid() {
        let s = FiniteSemigroup::validate(&[vec![0]], None, None).unwrap();
        assert_eq!(s.identity(), Some(0));
        assert_eq!(s.zero(), Some(0));
    }

    #[test]
    fn min_semilattice_detects_identity_and_zero() {
        let s = FiniteSemigroup::validate(&[vec![0, 0], vec![0, 1]], None, None).unwrap();
        assert_eq!(s.identity(), Some(1));
        assert_eq!(s.zero(), Some(0));
    }

    #[test]
    fn false_identity_claim_is_rejected() {
        let err = FiniteSemigroup::validate(&[vec![0, 0], vec![0, 1]], Some(0), None).unwrap_err();
        assert_eq!(err, Error::BadIdentity { identity: 0, witness: 1 });
    }

    #[test]
    fn false_zero_claim_is_rejected() {
        let err = FiniteSemigroup::validate(&[vec![0, 0], vec![0, 1]], None, Some(1)).unwrap_err();
        assert!(matches!(err, Error::BadZero { zero: 1, .. }));
    }

    #[test]
    fn non_associative_reports_first_triple() {
        // (0*0)*0 = 1*0 = 0 but 0*(0*0) = 0*1 = 1
        let rows = vec![vec![1, 1], vec![0, 0]];
        let err = FiniteSemigroup::validate(&rows, None, None).unwrap_err();
        assert_eq!(err, Error::NonAssociative(0, 0, 0));
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(
            FiniteSemigroup::validate(&[], None, None),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteSemigroup::validate(&[vec![0, 1], vec![0]], None, None),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteSemigroup::validate(&[vec![0, 2], vec![0, 0]], None, None),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn idempotent_counts() {
        assert_eq!(zoo::z2().idempotents().len(), 1);
        assert_eq!(zoo::left_zero2().idempotents().len(), 2);
        let t2 = zoo::t2();
        assert_eq!(t2.idempotents().len(), 3);
    }

    #[test]
    fn nat_leq_examples() {
        let min2 = zoo::min2();
        assert!(min2.nat_leq(0, 1).unwrap());
        assert!(!min2.nat_leq(1, 0).unwrap());
        assert!(min2.nat_leq(1, 1).unwrap());
        let t2 = zoo::t2();
        let id = t2.identity().unwrap();
        let c = zoo::T2_CONST_0;
        assert!(t2.nat_leq(c, id).unwrap());
        let z2 = zoo::z2();
        assert_eq!(z2.nat_leq(0, 1), Err(Error::NotIdempotent(1)));
    }

    #[test]
    fn nat_leq_is_a_partial_order_on_every_zoo_member() {
        for (name, s) in zoo::all() {
            let e: Vec<usize> = s.idempotents().into_iter().collect();
            for &a in &e {
                assert!(s.nat_leq(a, a).unwrap(), "{name}");
                for &b in &e {
                    if s.nat_leq(a, b).unwrap() && s.nat_leq(b, a).unwrap() {
                        assert_eq!(a, b, "{name}");
                    }
                    for &c in &e {
                        if s.nat_leq(a, b).unwrap() && s.nat_leq(b, c).unwrap() {
                            assert!(s.nat_leq(a, c).unwrap(), "{name}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn regularity_examples() {
        let null2 = zoo::null2();
        let r = null2.regularity();
        assert!(!r.is_regular);
        assert_eq!(r.regular_elements, BTreeSet::from([0]));

        let r = zoo::t2().regularity();
        assert!(r.is_regular && r.is_orthodox && !r.is_inverse);

        let r = zoo::min2().regularity();
        assert!(r.is_inverse);
        assert_eq!(r.inverses[&0], BTreeSet::from([0]));
        assert_eq!(r.inverses[&1], BTreeSet::from([1]));

        let r = zoo::a2().regularity();
        assert!(r.is_regular && !r.is_orthodox && !r.is_inverse);
    }

    #[test]
    fn regularity_flags_are_nested() {
        for (name, s) in zoo::all() {
            let r = s.regularity();
            assert!(!r.is_inverse || r.is_orthodox, "{name}");
            assert!(!r.is_orthodox || r.is_regular, "{name}");
        }
    }

    #[test]
    fn adjoin_identity_sizes() {
        assert_eq!(zoo::trivial().adjoin_identity().size(), 1);
        let n = zoo::null2().adjoin_identity();
        assert_eq!(n.size(), 3);
        assert_eq!(n.identity(), Some(2));
        let l = zoo::left_zero2().adjoin_identity();
        assert_eq!(l.size(), 3);
        for x in 0..3 {
            assert_eq!(l.product(2, x), x);
            assert_eq!(l.product(x, 2), x);
        }
        assert!(l.associativity_violation().is_none());
    }

    #[test]
    fn stability_holds_on_zoo() {
        for (name, s) in zoo::all() {
            let st = s.stability();
            assert!(st.stable, "{name}: {st:?}");
            assert!(st.witness.is_none());
        }
    }

    #[test]
    fn direct_power_examples() {
        let min2 = zoo::min2();
        let p1 = min2.direct_power(1, SizeGuard::default()).unwrap();
        assert_eq!(p1.semigroup.rows(), min2.rows());

        let sq = min2.direct_power(2, SizeGuard::default()).unwrap();
        assert_eq!(sq.semigroup.size(), 4);
        for a in 0..4 {
            for b in 0..4 {
                let (ta, tb) = (sq.decode(a), sq.decode(b));
                let expect = vec![ta[0].min(tb[0]), ta[1].min(tb[1])];
                assert_eq!(sq.decode(sq.semigroup.product(a, b)), expect);
            }
        }

        let cube = zoo::null2().direct_power(3, SizeGuard::default()).unwrap();
        assert_eq!(cube.semigroup.size(), 8);
        assert_eq!(cube.semigroup.zero(), Some(cube.encode(&[0, 0, 0])));
        assert_eq!(cube.project(cube.encode(&[1, 0, 1]), 2), 1);

        assert!(matches!(
            zoo::t2().direct_power(8, SizeGuard::new(100)),
            Err(Error::SizeGuardExceeded { .. })
        ));
    }

    #[test]
    fn ideal_examples() {
        let null2 = zoo::null2();
        assert!(null2.is_ideal(&BTreeSet::from([0, 1])).unwrap());
        assert!(null2.is_ideal(&BTreeSet::from([0])).unwrap());
        assert!(!null2.is_ideal(&BTreeSet::from([1])).unwrap());
        assert_eq!(null2.is_ideal(&BTreeSet::new()), Err(Error::EmptySubset));
    }

    #[test]
    fn morphism_examples() {
        let z2 = zoo::z2();
        assert!(FiniteSemigroup::is_morphism(&[0, 1], &z2, &z2, true));
        let min2 = zoo::min2();
        // constant map onto the idempotent 0
        assert!(FiniteSemigroup::is_morphism(&[0, 0], &z2, &min2, false));
        assert!(!FiniteSemigroup::is_morphism(&[0, 0], &z2, &zoo::trivial(), true));
        assert!(FiniteSemigroup::is_morphism(&[0, 0], &z2, &zoo::trivial(), false));
    }
}
