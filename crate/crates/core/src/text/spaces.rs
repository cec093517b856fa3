//! The space formats: `.fincat`, `.poset`, `.graph` and `.set`.

use std::collections::HashMap;
use std::fmt::Write;

use super::lex::{check_name, lines, Line, Token};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, RawCategory};
use crate::instances::{Poset, ReflexiveGraph};

/// Names declared by a list keyword (`objects`, `elements`, `nodes`).
#[derive(Default)]
struct Names {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Names {
    fn declare(&mut self, t: &Token<'_>) -> Result<()> {
        if self.index.contains_key(t.text) {
            return Err(t.error(format!("`{}` is declared twice", t.text)));
        }
        if is_identity_name(t.text) {
            return Err(t.error(format!("`{}` is reserved for identities", t.text)));
        }
        self.index.insert(t.text.to_string(), self.names.len());
        self.names.push(t.text.to_string());
        Ok(())
    }

    fn find(&self, t: &Token<'_>, what: &str) -> Result<usize> {
        self.index.get(t.text).copied().ok_or_else(|| t.error(format!("unknown {what} `{}`", t.text)))
    }
}

fn is_identity_name(s: &str) -> bool {
    s.starts_with("id(") && s.ends_with(')')
}

fn unknown_keyword(l: &Line<'_>, expected: &str) -> Error {
    let k = l.keyword();
    k.error(format!("unknown keyword `{}`; expected {expected}", k.text))
}

fn distinct_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        check_name(n)?;
        if !seen.insert(n) {
            return Err(Error::Invalid(format!("name `{n}` occurs twice and cannot be written in the text format")));
        }
    }
    Ok(())
}

/// Parses a `.fincat` file. Identities are implicit and named `id(x)`;
/// `compose f g = h` reads "f then g is h".
pub fn parse_fincat(src: &str, first_line: usize) -> Result<FinCat> {
    let mut objects = Names::default();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut arrow_index: HashMap<String, usize> = HashMap::new();
    let mut composites = Vec::new();
    let ls = lines(src, first_line);
    for l in &ls {
        match l.keyword().text {
            "objects" => {
                for t in &l.tokens[1..] {
                    objects.declare(t)?;
                }
            }
            "arrow" | "compose" => {}
            _ => return Err(unknown_keyword(l, "`objects`, `arrow` or `compose`")),
        }
    }
    let n = objects.names.len();
    for l in ls.iter().filter(|l| l.keyword().text == "arrow") {
        let name = l.at(1, "an arrow name")?;
        l.expect(2, ":")?;
        let dom = objects.find(l.at(3, "a domain")?, "object")?;
        l.expect(4, "->")?;
        let cod = objects.find(l.at(5, "a codomain")?, "object")?;
        l.no_more(6)?;
        if is_identity_name(name.text) {
            return Err(name.error(format!("`{}` is reserved for identities", name.text)));
        }
        if arrow_index.insert(name.text.to_string(), n + arrows.len()).is_some() {
            return Err(name.error(format!("arrow `{}` is declared twice", name.text)));
        }
        arrows.push(Arrow::new(name.text, dom, cod));
    }
    let mut all: Vec<Arrow> = objects.names.iter().enumerate().map(|(i, o)| Arrow::new(format!("id({o})"), i, i)).collect();
    all.extend(arrows);
    let resolve = |t: &Token<'_>| -> Result<usize> {
        if let Some(&f) = arrow_index.get(t.text) {
            return Ok(f);
        }
        if let Some(inner) = t.text.strip_prefix("id(").and_then(|s| s.strip_suffix(')')) {
            if let Some(&x) = objects.index.get(inner) {
                return Ok(x);
            }
        }
        Err(t.error(format!("unknown arrow `{}`", t.text)))
    };
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for l in ls.iter().filter(|l| l.keyword().text == "compose") {
        let (tf, tg) = (l.at(1, "an arrow")?, l.at(2, "an arrow")?);
        l.expect(3, "=")?;
        let th = l.at(4, "the composite")?;
        l.no_more(5)?;
        let (f, g, h) = (resolve(tf)?, resolve(tg)?, resolve(th)?);
        if all[f].cod != all[g].dom {
            return Err(tg.error(format!("`{}` does not start where `{}` ends", tg.text, tf.text)));
        }
        if all[h].dom != all[f].dom || all[h].cod != all[g].cod {
            return Err(th.error(format!("`{}` does not have the endpoints of the composite", th.text)));
        }
        if (f < n && h != g) || (g < n && h != f) {
            return Err(th.error("a composite with an identity is the other arrow"));
        }
        if f < n || g < n {
            continue;
        }
        match table.insert((f, g), h) {
            Some(old) if old != h => {
                return Err(th.error(format!("conflicting composite; `{}` was given before", all[old].name)));
            }
            _ => composites.push((f, g, h)),
        }
    }
    let mut compose = Vec::new();
    for (i, a) in all.iter().enumerate() {
        compose.push((a.dom, i, i));
        if i >= n {
            compose.push((i, a.cod, i));
        }
    }
    compose.extend(composites);
    Ok(FinCat::validate(RawCategory { objects: objects.names, arrows: all, identity: (0..n).collect(), compose })?)
}

/// Writes `c` in the `.fincat` format. Fails when a name cannot be written
/// back unambiguously.
pub fn emit_fincat(c: &FinCat) -> Result<String> {
    distinct_names(c.objects().iter().map(String::as_str))?;
    let proper: Vec<usize> = c.non_identity_arrows().collect();
    distinct_names(proper.iter().map(|&f| c.arrow(f).name.as_str()))?;
    if let Some(&f) = proper.iter().find(|&&f| is_identity_name(&c.arrow(f).name)) {
        return Err(Error::Invalid(format!("arrow `{}` is named like an identity", c.arrow(f).name)));
    }
    let name = |f: usize| {
        if c.is_identity(f) {
            format!("id({})", c.object_name(c.dom(f)))
        } else {
            c.arrow(f).name.clone()
        }
    };
    let mut out = String::new();
    if c.n_objects() > 0 {
        writeln!(out, "objects {}", c.objects().join(" ")).unwrap();
    }
    for &f in &proper {
        writeln!(out, "arrow {} : {} -> {}", c.arrow(f).name, c.object_name(c.dom(f)), c.object_name(c.cod(f))).unwrap();
    }
    for &f in &proper {
        for &g in &proper {
            if let Some(h) = c.compose(f, g) {
                writeln!(out, "compose {} {} = {}", name(f), name(g), name(h)).unwrap();
            }
        }
    }
    Ok(out)
}

/// Parses a `.poset` file: `elements` lines and `a <= b` chains, closed
/// under transitivity.
pub fn parse_poset(src: &str, first_line: usize) -> Result<Poset> {
    let ls = lines(src, first_line);
    let mut elements = Names::default();
    for l in ls.iter().filter(|l| l.keyword().text == "elements") {
        for t in &l.tokens[1..] {
            elements.declare(t)?;
        }
    }
    let mut pairs = Vec::new();
    for l in ls.iter().filter(|l| l.keyword().text != "elements") {
        if l.tokens.len() < 3 || l.tokens[1].text != "<=" {
            return Err(match l.tokens.get(1) {
                Some(t) if t.text != "<=" => unknown_keyword(l, "`elements` or a relation `a <= b`"),
                _ => l.missing("`<=`"),
            });
        }
        let mut prev = elements.find(&l.tokens[0], "element")?;
        let mut i = 1;
        while i < l.tokens.len() {
            l.expect(i, "<=")?;
            let next = elements.find(l.at(i + 1, "an element")?, "element")?;
            pairs.push((prev, next));
            prev = next;
            i += 2;
        }
    }
    Poset::new(elements.names, &pairs)
}

/// Writes `p` as its elements and covering relations.
pub fn emit_poset(p: &Poset) -> Result<String> {
    distinct_names(p.names().iter().map(String::as_str))?;
    let mut out = String::new();
    if !p.is_empty() {
        writeln!(out, "elements {}", p.names().join(" ")).unwrap();
    }
    for (a, b) in p.covers() {
        writeln!(out, "{} <= {}", p.name(a), p.name(b)).unwrap();
    }
    Ok(out)
}

/// Parses a `.graph` file: `nodes` lines and `edge e : a -> b` lines.
/// Identity loops are implicit.
pub fn parse_graph(src: &str, first_line: usize) -> Result<ReflexiveGraph> {
    let ls = lines(src, first_line);
    let mut nodes = Names::default();
    for l in &ls {
        match l.keyword().text {
            "nodes" => {
                for t in &l.tokens[1..] {
                    nodes.declare(t)?;
                }
            }
            "edge" => {}
            _ => return Err(unknown_keyword(l, "`nodes` or `edge`")),
        }
    }
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for l in ls.iter().filter(|l| l.keyword().text == "edge") {
        let name = l.at(1, "an edge name")?;
        l.expect(2, ":")?;
        let src = nodes.find(l.at(3, "a source node")?, "node")?;
        l.expect(4, "->")?;
        let tgt = nodes.find(l.at(5, "a target node")?, "node")?;
        l.no_more(6)?;
        if is_identity_name(name.text) {
            return Err(name.error(format!("`{}` is reserved for identity loops", name.text)));
        }
        if !seen.insert(name.text) {
            return Err(name.error(format!("edge `{}` is declared twice", name.text)));
        }
        edges.push((name.text.to_string(), src, tgt));
    }
    ReflexiveGraph::new(nodes.names, edges)
}

pub fn emit_graph(g: &ReflexiveGraph) -> Result<String> {
    distinct_names(g.nodes().iter().map(String::as_str))?;
    distinct_names(g.proper_edges().map(|e| g.edge(e).name.as_str()))?;
    let mut out = String::new();
    if g.n_nodes() > 0 {
        writeln!(out, "nodes {}", g.nodes().join(" ")).unwrap();
    }
    for e in g.proper_edges() {
        let d = g.edge(e);
        if is_identity_name(&d.name) {
            return Err(Error::Invalid(format!("edge `{}` is named like an identity loop", d.name)));
        }
        writeln!(out, "edge {} : {} -> {}", d.name, g.node_name(d.src), g.node_name(d.tgt)).unwrap();
    }
    Ok(out)
}

/// Parses a `.set` file: `size n`, or `elements` lines whose names are
/// only counted.
pub fn parse_set(src: &str, first_line: usize) -> Result<usize> {
    let mut size = None;
    let mut elements = Names::default();
    for l in lines(src, first_line) {
        match l.keyword().text {
            "size" => {
                let t = l.at(1, "a size")?;
                l.no_more(2)?;
                let n = t.text.parse::<usize>().map_err(|_| t.error(format!("`{}` is not a size", t.text)))?;
                if size.replace(n).is_some() {
                    return Err(l.keyword().error("size given twice"));
                }
            }
            "elements" => {
                for t in &l.tokens[1..] {
                    elements.declare(t)?;
                }
            }
            _ => return Err(unknown_keyword(&l, "`size` or `elements`")),
        }
    }
    match size {
        Some(n) if !elements.names.is_empty() && n != elements.names.len() => {
            Err(Error::Invalid(format!("size {n} disagrees with {} listed elements", elements.names.len())))
        }
        Some(n) => Ok(n),
        None => Ok(elements.names.len()),
    }
}

pub fn emit_set(n: usize) -> String {
    format!("size {n}\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures;

    #[test]
    fn two_parses_to_two() {
        let c = parse_fincat("objects 0 1\narrow u : 0 -> 1\n", 1).unwrap();
        assert_eq!(c, fixtures::two());
    }

    #[test]
    fn fixtures_round_trip() {
        for name in ["EMPTY", "ONE", "TWO", "THREE", "FOUR", "D2", "PAR", "VEE"] {
            let c = fixtures::by_name(name).unwrap();
            let text = emit_fincat(&c).unwrap();
            assert_eq!(parse_fincat(&text, 1).unwrap(), c, "{name}");
        }
    }

    #[test]
    fn positioned_errors() {
        let err = parse_fincat("objects a b\narrow f : a -> c\n", 1).unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, column: 16, message: "unknown object `c`".into() });
        let err = parse_fincat("objects a\nmorphism f\n", 1).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 1, .. }));
        let err = parse_fincat("objects a b\narrow f : a -> b\narrow g : a -> b\ncompose f g = f\n", 1).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, column: 11, .. }), "{err}");
    }

    #[test]
    fn missing_composite_is_a_law_error() {
        let src = "objects a b c\narrow f : a -> b\narrow g : b -> c\n";
        assert!(matches!(parse_fincat(src, 1), Err(Error::FinCat(_))));
    }

    #[test]
    fn antisymmetry_is_rejected() {
        assert_eq!(parse_poset("elements a b\na <= b\nb <= a\n", 1), Err(Error::Antisymmetry("a".into(), "b".into())));
    }

    #[test]
    fn poset_chains_close_transitively() {
        let p = parse_poset("elements a b c\na <= b <= c\n", 1).unwrap();
        assert!(p.le(0, 2));
        assert_eq!(parse_poset(&emit_poset(&p).unwrap(), 1).unwrap(), p);
    }

    #[test]
    fn graphs_and_sets_round_trip() {
        let g = parse_graph("nodes a b\nedge e : a -> b\nedge l : b -> b\n", 1).unwrap();
        assert_eq!(g.n_edges(), 4);
        assert_eq!(parse_graph(&emit_graph(&g).unwrap(), 1).unwrap(), g);
        assert_eq!(parse_set("size 3\n", 1).unwrap(), 3);
        assert_eq!(parse_set("elements x y\n", 1).unwrap(), 2);
        assert_eq!(parse_set(&emit_set(4), 1).unwrap(), 4);
    }
}
