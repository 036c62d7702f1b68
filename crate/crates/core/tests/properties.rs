use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semiext::bicyclic::{bc_green, bc_mul, BicyclicElement};
use semiext::extension::{equiv0, is_idempotent_fast, is_regular_fast, restriction};
use semiext::green::GreenRelation;
use semiext::{zoo, ExtElement, ExtensionSemigroup};

fn extension() -> impl Strategy<Value = ExtensionSemigroup> {
    (0..zoo::all().len(), 1usize..=5)
        .prop_flat_map(|(b, lambda)| (Just(b), Just(lambda), 1..=lambda))
        .prop_map(|(b, lambda, n)| ExtensionSemigroup::new(zoo::all()[b].1.clone(), lambda, n).unwrap())
}

fn element(e: &ExtensionSemigroup) -> impl Strategy<Value = ExtElement> {
    let (lambda, size) = (e.lambda(), e.base().size());
    (0..=e.n()).prop_flat_map(move |k| {
        let points: Vec<usize> = (0..lambda).collect();
        (
            subsequence(points.clone(), k),
            subsequence(points, k).prop_shuffle(),
            proptest::collection::vec(0..size, k),
        )
            .prop_map(|(dom, ran, labels)| {
                let t = dom.into_iter().zip(labels).zip(ran).map(|((x, s), y)| (x, s, y)).collect();
                ExtElement::from_triples(t).unwrap()
            })
    })
}

fn with_three() -> impl Strategy<Value = (ExtensionSemigroup, ExtElement, ExtElement, ExtElement)> {
    extension().prop_flat_map(|e| {
        let (a, b, c) = (element(&e), element(&e), element(&e));
        (Just(e), a, b, c)
    })
}

proptest! {
    #[test]
    fn product_is_associative((e, a, b, c) in with_three()) {
        let left = e.product(&e.product(&a, &b).unwrap(), &c).unwrap();
        let right = e.product(&a, &e.product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn restriction_is_a_morphism((e, a, b, _c) in with_three()) {
        let ab = e.product(&a, &b).unwrap();
        let composed = restriction(&e, &a).compose(&restriction(&e, &b)).unwrap();
        prop_assert_eq!(restriction(&e, &ab), composed);
    }

    #[test]
    fn rank_never_grows((e, a, b, _c) in with_three()) {
        let ab = e.product(&a, &b).unwrap();
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        prop_assert_eq!(e.product(&a, &ExtElement::Zero).unwrap(), ExtElement::Zero);
        prop_assert_eq!(e.product(&ExtElement::Zero, &a).unwrap(), ExtElement::Zero);
    }

    #[test]
    fn idempotent_predicate_matches_squaring((e, a, _b, _c) in with_three()) {
        prop_assert_eq!(is_idempotent_fast(&e, &a), e.product(&a, &a).unwrap() == a);
    }

    #[test]
    fn regular_labels_give_regular_elements((e, a, _b, _c) in with_three()) {
        let labels_regular = a.labels().iter().all(|&s| e.base().is_regular_element(s));
        prop_assert_eq!(is_regular_fast(&e, &a), labels_regular);
    }

    #[test]
    fn zero_label_relation_is_compatible((e, a, _b, c) in with_three()) {
        let Some(zero) = e.base().zero() else { return Ok(()) };
        // Dropping the zero-labeled pairs keeps the class.
        let kept = a.triples().iter().filter(|t| t.s != zero).map(|t| (t.x, t.s, t.y)).collect();
        let b = ExtElement::from_triples(kept).unwrap();
        prop_assert!(equiv0(&e, &a, &b).unwrap());
        prop_assert!(equiv0(&e, &e.product(&a, &c).unwrap(), &e.product(&b, &c).unwrap()).unwrap());
        prop_assert!(equiv0(&e, &e.product(&c, &a).unwrap(), &e.product(&c, &b).unwrap()).unwrap());
    }

    #[test]
    fn random_elements_belong((e, seed) in (extension(), any::<u64>())) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            prop_assert!(e.check(&e.random_element(&mut rng)).is_ok());
        }
    }

    #[test]
    fn bicyclic_is_associative(k in proptest::array::uniform6(0u64..1000)) {
        let b = BicyclicElement::new;
        let (u, v, w) = (b(k[0], k[1]), b(k[2], k[3]), b(k[4], k[5]));
        prop_assert_eq!(bc_mul(bc_mul(u, v), w), bc_mul(u, bc_mul(v, w)));
    }

    #[test]
    fn bicyclic_verdicts_follow_exponents(k in proptest::array::uniform4(0u64..1000)) {
        let (u, v) = (BicyclicElement::new(k[0], k[1]), BicyclicElement::new(k[2], k[3]));
        prop_assert_eq!(bc_green(u, v, GreenRelation::R).related, u.k == v.k);
        prop_assert_eq!(bc_green(u, v, GreenRelation::L).related, u.l == v.l);
        prop_assert!(bc_green(u, v, GreenRelation::D).related);
        prop_assert!(bc_green(u, v, GreenRelation::J).related);
    }
}
