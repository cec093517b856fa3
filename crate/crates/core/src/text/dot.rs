//! Graphviz output for spaces and maps.

use std::fmt::Write;

/// What gets drawn of a space: named nodes and labelled edges by index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DotGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize, String)>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn edge_line(out: &mut String, from: &str, to: &str, label: &str) {
    if label.is_empty() {
        let _ = writeln!(out, "  {from} -> {to};");
    } else {
        let _ = writeln!(out, "  {from} -> {to} [label={}];", quote(label));
    }
}

/// A space as a digraph with nodes `n0, n1, ...`.
pub fn dot_space(g: &DotGraph, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for (i, v) in g.nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(v));
    }
    for (a, b, label) in &g.edges {
        edge_line(&mut out, &format!("n{a}"), &format!("n{b}"), label);
    }
    out.push_str("}\n");
    out
}

/// A map drawn as a fibration: each point of the target is a cluster
/// holding its fiber, followed by the target itself.
pub fn dot_map(source: &DotGraph, target: &DotGraph, points: &[usize], name: &str) -> String {
    let mut out = format!("digraph {} {{\n  compound=true;\n", quote(name));
    for (j, base) in target.nodes.iter().enumerate() {
        let fiber: Vec<usize> = (0..source.nodes.len()).filter(|&i| points[i] == j).collect();
        let _ = writeln!(out, "  subgraph cluster_{j} {{\n    label={};", quote(base));
        for i in fiber {
            let _ = writeln!(out, "    s{i} [label={}];", quote(&source.nodes[i]));
        }
        out.push_str("  }\n");
    }
    for (a, b, label) in &source.edges {
        edge_line(&mut out, &format!("s{a}"), &format!("s{b}"), label);
    }
    out.push_str("  subgraph cluster_base {\n    label=\"base\";\n    style=dashed;\n");
    for (j, v) in target.nodes.iter().enumerate() {
        let _ = writeln!(out, "    b{j} [label={}];", quote(v));
    }
    out.push_str("  }\n");
    for (a, b, label) in &target.edges {
        edge_line(&mut out, &format!("b{a}"), &format!("b{b}"), label);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_space_is_an_empty_digraph() {
        assert_eq!(dot_space(&DotGraph::default(), "EMPTY"), "digraph \"EMPTY\" {\n}\n");
    }

    #[test]
    fn fibers_become_clusters() {
        let src = DotGraph { nodes: vec!["a".into(), "b".into()], edges: vec![(0, 1, "f".into())] };
        let tgt = DotGraph { nodes: vec!["x".into()], edges: Vec::new() };
        let s = dot_map(&src, &tgt, &[0, 0], "m");
        assert!(s.contains("subgraph cluster_0 {\n    label=\"x\";\n    s0 [label=\"a\"];\n    s1 [label=\"b\"];\n  }"));
        assert!(s.contains("s0 -> s1 [label=\"f\"];"));
    }

    #[test]
    fn labels_are_escaped() {
        let g = DotGraph { nodes: vec!["say \"hi\"".into()], edges: Vec::new() };
        assert!(dot_space(&g, "q").contains("[label=\"say \\\"hi\\\"\"]"));
    }
}
