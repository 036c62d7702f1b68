//! Exhaustive search over every associative table of order at most 4.

use semiext::{zoo, FiniteSemigroup};

/// Fills the table cell by cell, pruning as soon as a fully determined
/// triple breaks associativity.
fn search(m: usize, table: &mut Vec<Option<usize>>, cell: usize, found: &mut Vec<Vec<Vec<usize>>>) {
    if cell == m * m {
        found.push(table.chunks(m).map(|r| r.iter().map(|v| v.unwrap()).collect()).collect());
        return;
    }
    for v in 0..m {
        table[cell] = Some(v);
        if consistent(m, table) {
            search(m, table, cell + 1, found);
        }
    }
    table[cell] = None;
}

fn consistent(m: usize, t: &[Option<usize>]) -> bool {
    let at = |a: usize, b: usize| t[a * m + b];
    for x in 0..m {
        for y in 0..m {
            let Some(xy) = at(x, y) else { continue };
            for z in 0..m {
                let (Some(yz), Some(l)) = (at(y, z), at(xy, z)) else { continue };
                if at(x, yz).is_some_and(|r| r != l) {
                    return false;
                }
            }
        }
    }
    true
}

fn all_tables(m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut found = Vec::new();
    search(m, &mut vec![None; m * m], 0, &mut found);
    found
}

#[test]
fn labeled_semigroup_counts() {
    let counts: Vec<usize> = (1..=4).map(|m| all_tables(m).len()).collect();
    assert_eq!(counts, vec![1, 8, 113, 3492]);
}

#[test]
fn no_regular_non_orthodox_table_below_order_five() {
    for m in 1..=4 {
        for rows in all_tables(m) {
            let r = FiniteSemigroup::validate(&rows, None, None).unwrap().regularity();
            assert!(!r.is_regular || r.is_orthodox, "regular non-orthodox table {rows:?}");
        }
    }
    let r = zoo::a2().regularity();
    assert!(r.is_regular && !r.is_orthodox);
}
