//! Built-in test semigroups.
//!
//! The zoo covers every combination the structural checks need: groups,
//! semilattices, bands, a null semigroup, the transformation monoid `T2`
//! and `A2`, the smallest regular semigroup that is not orthodox.

use crate::semigroup::FiniteSemigroup;

fn build(rows: Vec<Vec<usize>>, names: &[&str]) -> FiniteSemigroup {
    FiniteSemigroup::validate(&rows, None, None)
        .and_then(|s| s.with_names(names.iter().map(|n| n.to_string()).collect()))
        .expect("zoo tables are valid")
}

pub fn trivial() -> FiniteSemigroup {
    build(vec![vec![0]], &["1"])
}

pub fn z2() -> FiniteSemigroup {
    build(vec![vec![0, 1], vec![1, 0]], &["1", "g"])
}

/// `{0, 1}` under `min`.
pub fn min2() -> FiniteSemigroup {
    build(vec![vec![0, 0], vec![0, 1]], &["0", "1"])
}

/// `xy = x`.
pub fn left_zero2() -> FiniteSemigroup {
    build(vec![vec![0, 0], vec![1, 1]], &["a", "b"])
}

/// `{0, a}` with every product equal to 0.
pub fn null2() -> FiniteSemigroup {
    build(vec![vec![0, 0], vec![0, 0]], &["0", "a"])
}

/// Index of the constant map onto point 0 in [`t2`].
pub const T2_CONST_0: usize = 1;
/// Index of the constant map onto point 1 in [`t2`].
pub const T2_CONST_1: usize = 2;

/// Full transformation monoid on two points, maps acting on the right.
/// Elements are `id, c0, c1, swap` where an element is stored as its image
/// vector `(0f, 1f)`.
pub fn t2() -> FiniteSemigroup {
    let maps: [[usize; 2]; 4] = [[0, 1], [0, 0], [1, 1], [1, 0]];
    let index = |m: [usize; 2]| maps.iter().position(|&x| x == m).unwrap();
    let rows = maps
        .iter()
        .map(|f| {
            maps.iter()
                .map(|g| index([g[f[0]], g[f[1]]]))
                .collect()
        })
        .collect();
    build(rows, &["id", "c0", "c1", "sw"])
}

/// Chain `0 < e < 1` under `min`.
pub fn chain3() -> FiniteSemigroup {
    build(
        vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
        &["0", "e", "1"],
    )
}

/// Combinatorial Rees matrix semigroup `M0({1}; 2, 2; [[1,1],[1,0]])`.
/// Regular, not orthodox, and of minimal order among such semigroups
/// (no associative table of order <= 4 has both properties).
pub fn a2() -> FiniteSemigroup {
    build(
        vec![
            vec![0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 2],
            vec![0, 1, 2, 1, 2],
            vec![0, 0, 0, 3, 4],
            vec![0, 3, 4, 3, 4],
        ],
        &["0", "a", "b", "c", "d"],
    )
}

/// The eight zoo members, in a fixed order.
pub fn all() -> Vec<(&'static str, FiniteSemigroup)> {
    vec![
        ("trivial", trivial()),
        ("Z2", z2()),
        ("min2", min2()),
        ("leftzero2", left_zero2()),
        ("null2", null2()),
        ("T2", t2()),
        ("chain3", chain3()),
        ("A2", a2()),
    ]
}

pub fn by_name(name: &str) -> Option<FiniteSemigroup> {
    all().into_iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, s)| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t2_composes_on_the_right() {
        let t = t2();
        assert_eq!(t.identity(), Some(0));
        // c0 then anything g: x -> g(0)
        assert_eq!(t.product(T2_CONST_0, 3), T2_CONST_1);
        // anything then c0 is c0
        assert_eq!(t.product(3, T2_CONST_0), T2_CONST_0);
        assert_eq!(t.product(3, 3), 0);
    }

    #[test]
    fn a2_properties() {
        let a = a2();
        assert_eq!(a.zero(), Some(0));
        assert!(!a.is_monoid());
        assert_eq!(a.idempotents().len(), 4);
    }

    #[test]
    fn lookup_is_case_insensitive() {
        assert!(by_name("z2").is_some());
        assert!(by_name("CHAIN3").is_some());
        assert!(by_name("nope").is_none());
    }
}
