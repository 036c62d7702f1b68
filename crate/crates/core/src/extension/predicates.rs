use std::collections::BTreeMap;

use super::{ExtElement, ExtensionSemigroup, Triple};
use crate::error::{Error, Result};

/// A nonzero element is idempotent iff it fixes every point of its domain
/// and all of its labels are idempotent in the base.
pub fn is_idempotent_fast(e: &ExtensionSemigroup, a: &ExtElement) -> bool {
    a.triples()
        .iter()
        .all(|t| t.x == t.y && e.base().is_idempotent(t.s))
}

/// A nonzero element is regular iff all of its labels are regular.
pub fn is_regular_fast(e: &ExtensionSemigroup, a: &ExtElement) -> bool {
    a.triples().iter().all(|t| e.base().is_regular_element(t.s))
}

/// `aa = a` computed with the extension product.
pub fn is_idempotent_brute(e: &ExtensionSemigroup, a: &ExtElement) -> bool {
    e.product_unchecked(a, a) == *a
}

/// `∃b: aba = a` over the supplied carrier.
pub fn is_regular_brute(e: &ExtensionSemigroup, a: &ExtElement, carrier: &[ExtElement]) -> bool {
    carrier
        .iter()
        .any(|b| e.product_unchecked(&e.product_unchecked(a, b), a) == *a)
}

/// Given a mutual inverse `t` for each label `s`, returns the transposed
/// element `(y_j, t_j, x_j)` and checks both inverse equations.
pub fn inverse_partner(
    e: &ExtensionSemigroup,
    a: &ExtElement,
    label_inverses: &BTreeMap<usize, usize>,
) -> Result<ExtElement> {
    e.check(a)?;
    let base = e.base();
    let mut triples = Vec::with_capacity(a.rank());
    for t in a.triples() {
        let inv = *label_inverses
            .get(&t.s)
            .ok_or(Error::NotAnInversePair { s: t.s, t: usize::MAX })?;
        base.check_index(inv)?;
        let sts = base.product(base.product(t.s, inv), t.s);
        let tst = base.product(base.product(inv, t.s), inv);
        if sts != t.s || tst != inv {
            return Err(Error::NotAnInversePair { s: t.s, t: inv });
        }
        triples.push(Triple { x: t.y, s: inv, y: t.x });
    }
    triples.sort_by_key(|t| t.x);
    let b = ExtElement::from_canonical(triples);
    let aba = e.product_unchecked(&e.product_unchecked(a, &b), a);
    let bab = e.product_unchecked(&e.product_unchecked(&b, a), &b);
    if aba != *a || bab != b {
        return Err(Error::NotACongruence(format!("inverse equations fail for {a:?}")));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use crate::SizeGuard;

    fn el(triples: &[(usize, usize, usize)]) -> ExtElement {
        ExtElement::from_triples(triples.to_vec()).unwrap()
    }

    #[test]
    fn idempotent_examples() {
        let e = ExtensionSemigroup::new(zoo::min2(), 2, 2).unwrap();
        assert!(is_idempotent_fast(&e, &ExtElement::Zero));
        assert!(is_idempotent_fast(&e, &el(&[(0, 0, 0)])));
        assert!(!is_idempotent_fast(&e, &el(&[(0, 0, 1)])));
    }

    #[test]
    fn regular_examples() {
        let e = ExtensionSemigroup::new(zoo::null2(), 2, 2).unwrap();
        assert!(is_regular_fast(&e, &ExtElement::Zero));
        assert!(!is_regular_fast(&e, &el(&[(0, 1, 1)])));
        let g = ExtensionSemigroup::new(zoo::z2(), 2, 2).unwrap();
        for a in g.enumerate(SizeGuard::default()).unwrap() {
            assert!(is_regular_fast(&g, &a));
        }
    }

    #[test]
    fn fast_predicates_agree_with_definitions() {
        for (name, base) in zoo::all() {
            let e = ExtensionSemigroup::new(base, 2, 2).unwrap();
            let all = e.enumerate(SizeGuard::default()).unwrap();
            for a in &all {
                assert_eq!(is_idempotent_fast(&e, a), is_idempotent_brute(&e, a), "{name} {a:?}");
                assert_eq!(is_regular_fast(&e, a), is_regular_brute(&e, a, &all), "{name} {a:?}");
            }
        }
    }

    #[test]
    fn inverse_partner_examples() {
        let e = ExtensionSemigroup::new(zoo::min2(), 2, 2).unwrap();
        let self_inverse = BTreeMap::from([(0, 0), (1, 1)]);
        assert_eq!(inverse_partner(&e, &ExtElement::Zero, &self_inverse).unwrap(), ExtElement::Zero);
        let a = el(&[(0, 1, 1), (1, 0, 0)]);
        assert_eq!(inverse_partner(&e, &a, &self_inverse).unwrap(), el(&[(1, 1, 0), (0, 0, 1)]));

        let g = ExtensionSemigroup::new(zoo::z2(), 2, 2).unwrap();
        let inv = BTreeMap::from([(0, 0), (1, 1)]);
        assert_eq!(inverse_partner(&g, &el(&[(0, 1, 1)]), &inv).unwrap(), el(&[(1, 1, 0)]));

        let wrong = BTreeMap::from([(1, 0)]);
        assert_eq!(
            inverse_partner(&g, &el(&[(0, 1, 1)]), &wrong),
            Err(Error::NotAnInversePair { s: 1, t: 0 })
        );
    }
}
