//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write as _;

use cobrouwer_core::{FinCbs, Poset};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn render(name: &str, n: usize, label: impl Fn(usize) -> String, covers: &[(usize, usize)]) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n  node [shape=circle];\n");
    for i in 0..n {
        writeln!(out, "  n{i} [label={}];", quote(&label(i))).unwrap();
    }
    for (a, b) in covers {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Covers of a poset, drawn from each point up to the points covering it.
pub fn poset_dot(p: &Poset) -> String {
    render("poset", p.len(), |i| p.label(i), &p.covers())
}

/// The order of an algebra, drawn like a poset.
pub fn algebra_dot(l: &FinCbs) -> String {
    render("cbs", l.len(), |a| l.label(a), &l.covers())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cobrouwer_core::duality::poset_to_cbs;

    fn edges(dot: &str) -> usize {
        dot.matches(" -> ").count()
    }

    #[test]
    fn examples() {
        let two = algebra_dot(&FinCbs::chain(2));
        assert_eq!(edges(&two), 1);
        assert!(two.contains("n0 -> n1;"));
        let (diamond, _) = poset_to_cbs(&Poset::antichain(2), 10).unwrap();
        let d = algebra_dot(&diamond);
        assert_eq!((d.matches("[label=").count(), edges(&d)), (4, 4));
        let point = poset_dot(&Poset::antichain(1));
        assert_eq!((point.matches("[label=").count(), edges(&point)), (1, 0));
        let named = Poset::chain(2).with_labels(vec!["low".into(), "say \"hi\"".into()]).unwrap();
        assert!(poset_dot(&named).contains(r#"n1 [label="say \"hi\""];"#));
    }
}
