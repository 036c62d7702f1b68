use semiext::{cayley, zoo};

const A2: &str = include_str!("../data/a2.cayley");

#[test]
fn golden_a2_matches_builtin() {
    let parsed = cayley::read_semigroup(A2).unwrap();
    let builtin = zoo::a2();
    assert_eq!(parsed, builtin);
    assert_eq!(cayley::write(&parsed), cayley::write(&builtin));
}

#[test]
fn zoo_round_trips_through_text() {
    for (name, s) in zoo::all() {
        let back = cayley::read_semigroup(&cayley::write(&s)).unwrap();
        assert_eq!(back, s, "{name}");
    }
}
