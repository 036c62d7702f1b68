//! Eggbox diagrams in Graphviz dot: one cluster per D-class, holding an
//! HTML table whose rows are R-classes, columns L-classes and cells
//! H-classes.

use std::fmt::Write;

use crate::green::GreenStructure;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// R-classes and L-classes (as class ids) meeting the D-class, in order of
/// their least element.
fn grid(g: &GreenStructure, d_class: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut rows: Vec<usize> = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    for &x in d_class {
        let (r, l) = (g.r.class_of(x), g.l.class_of(x));
        if !rows.contains(&r) {
            rows.push(r);
        }
        if !cols.contains(&l) {
            cols.push(l);
        }
    }
    (rows, cols)
}

/// Grid shape `(rows, columns)` of each D-class.
pub fn eggbox_shapes(g: &GreenStructure) -> Vec<(usize, usize)> {
    g.d.classes()
        .iter()
        .map(|d| {
            let (r, l) = grid(g, d);
            (r.len(), l.len())
        })
        .collect()
}

/// Deterministic dot text; `names[i]` labels element `i`.
pub fn eggbox_export(g: &GreenStructure, names: &[String]) -> String {
    let mut out = String::from("digraph eggbox {\n  node [shape=plaintext];\n");
    for (i, d) in g.d.classes().iter().enumerate() {
        let (rows, cols) = grid(g, d);
        writeln!(out, "  subgraph cluster_{i} {{").unwrap();
        writeln!(out, "    label=\"D{i}\";").unwrap();
        write!(out, "    d{i} [label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">").unwrap();
        for &r in &rows {
            out.push_str("<tr>");
            for &l in &cols {
                let cell: Vec<String> = d
                    .iter()
                    .filter(|&&x| g.r.class_of(x) == r && g.l.class_of(x) == l)
                    .map(|&x| escape(&names[x]))
                    .collect();
                write!(out, "<td>{}</td>", cell.join(" ")).unwrap();
            }
            out.push_str("</tr>");
        }
        out.push_str("</table>>];\n  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::green;
    use crate::pinj::matrix_units;
    use crate::{zoo, SizeGuard};

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn shapes() {
        assert_eq!(eggbox_shapes(&green(&zoo::trivial())), vec![(1, 1)]);
        let b2 = matrix_units(2, SizeGuard::default()).unwrap();
        assert_eq!(eggbox_shapes(&green(&b2)), vec![(1, 1), (2, 2)]);
        assert_eq!(eggbox_shapes(&green(&zoo::z2())), vec![(1, 1)]);
    }

    #[test]
    fn group_is_one_cell() {
        let dot = eggbox_export(&green(&zoo::z2()), &["1".into(), "g".into()]);
        assert_eq!(dot.matches("subgraph cluster_").count(), 1);
        assert!(dot.contains("<td>1 g</td>"));
    }

    #[test]
    fn output_is_stable_and_escaped() {
        let b2 = matrix_units(2, SizeGuard::default()).unwrap();
        let g = green(&b2);
        let a = eggbox_export(&g, &names(5));
        assert_eq!(a, eggbox_export(&g, &names(5)));
        assert_eq!(a.matches("subgraph cluster_").count(), 2);
        let odd = eggbox_export(&green(&zoo::trivial()), &["<&>".into()]);
        assert!(odd.contains("&lt;&amp;&gt;"));
    }
}
