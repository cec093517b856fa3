//! Finite reflexive graphs, their free categories, and the factorization
//! system generated by `t : 1 -> E1`.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::comprehensive::canonical;
use crate::emcore::{ArrowObject, EmInstance, Factorization, Pullback};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, FinFunctor, RawCategory};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite reflexive graph. Edge `i < n_nodes` is the identity loop of node
/// `i`; the remaining edges are the proper ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReflexiveGraph {
    nodes: Vec<String>,
    edges: Vec<Edge>,
}

impl Serialize for ReflexiveGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ReflexiveGraph", 2)?;
        st.serialize_field("nodes", &self.nodes)?;
        st.serialize_field("edges", &self.edges[self.nodes.len()..])?;
        st.end()
    }
}

impl ReflexiveGraph {
    /// A graph with the given nodes and proper edges `(name, src, tgt)`.
    pub fn new(nodes: Vec<String>, edges: Vec<(String, usize, usize)>) -> Result<ReflexiveGraph> {
        let n = nodes.len();
        let mut all: Vec<Edge> = nodes.iter().enumerate().map(|(i, a)| Edge { name: format!("id({a})"), src: i, tgt: i }).collect();
        for (name, src, tgt) in edges {
            if src >= n || tgt >= n {
                return Err(Error::Invalid(format!("edge {name} has an endpoint out of range")));
            }
            all.push(Edge { name, src, tgt });
        }
        Ok(ReflexiveGraph { nodes, edges: all })
    }

    pub fn empty() -> ReflexiveGraph {
        ReflexiveGraph { nodes: vec![], edges: vec![] }
    }

    /// One node, no proper edges.
    pub fn dot() -> ReflexiveGraph {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> ReflexiveGraph {
        Self::new((0..n).map(|i| format!("n{i}")).collect(), vec![]).expect("valid")
    }

    /// `n0 --a--> n1`.
    pub fn edge1() -> ReflexiveGraph {
        Self::path(1)
    }

    /// `n0 -> n1 -> ... -> nk` with edges named `e1..ek`, except that a
    /// single edge is named `a`.
    pub fn path(k: usize) -> ReflexiveGraph {
        let nodes = (0..=k).map(|i| format!("n{i}")).collect();
        let edges = (0..k).map(|i| (if k == 1 { "a".to_string() } else { format!("e{}", i + 1) }, i, i + 1)).collect();
        Self::new(nodes, edges).expect("valid")
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_name(&self, v: usize) -> &str {
        &self.nodes[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_identity(&self, e: usize) -> bool {
        e < self.nodes.len()
    }

    pub fn identity(&self, v: usize) -> usize {
        v
    }

    pub fn proper_edges(&self) -> std::ops::Range<usize> {
        self.nodes.len()..self.edges.len()
    }

    pub fn find_node(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn find_edge(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Edges from `a` to `b`, identity loop included when `a == b`.
    pub fn edges_between(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].src == a && self.edges[e].tgt == b)
    }

    /// No directed cycle among the proper edges (self-loops count).
    pub fn is_acyclic(&self) -> bool {
        let n = self.nodes.len();
        let mut indeg = vec![0; n];
        for e in self.proper_edges() {
            indeg[self.edges[e].tgt] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for e in self.proper_edges().filter(|&e| self.edges[e].src == v) {
                let t = self.edges[e].tgt;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == n
    }

    /// The same graph with every proper edge reversed.
    pub fn opposite(&self) -> ReflexiveGraph {
        let edges = self.edges.iter().map(|e| Edge { name: e.name.clone(), src: e.tgt, tgt: e.src }).collect();
        ReflexiveGraph { nodes: self.nodes.clone(), edges }
    }
}

/// A map of reflexive graphs; proper edges may land on identity loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMap {
    pub source: Arc<ReflexiveGraph>,
    pub target: Arc<ReflexiveGraph>,
    pub nodes: Vec<usize>,
    /// Image of every edge, identity loops included.
    pub edges: Vec<usize>,
}

impl Hash for GraphMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nodes.hash(state);
        self.edges.hash(state);
    }
}

impl Serialize for GraphMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GraphMap", 2)?;
        st.serialize_field("nodes", &self.nodes)?;
        st.serialize_field("edges", &self.edges[self.source.n_nodes()..])?;
        st.end()
    }
}

impl GraphMap {
    /// A map from its node images and the images of the proper edges.
    pub fn new(source: Arc<ReflexiveGraph>, target: Arc<ReflexiveGraph>, nodes: Vec<usize>, proper: Vec<usize>) -> Result<GraphMap> {
        if nodes.len() != source.n_nodes() || proper.len() != source.n_edges() - source.n_nodes() {
            return Err(Error::Invalid("graph map does not match the source".into()));
        }
        if nodes.iter().any(|&v| v >= target.n_nodes()) || proper.iter().any(|&e| e >= target.n_edges()) {
            return Err(Error::Invalid("graph map image out of range".into()));
        }
        let mut edges: Vec<usize> = nodes.iter().map(|&v| target.identity(v)).collect();
        edges.extend(proper);
        for e in source.proper_edges() {
            let (d, c) = (source.edge(e), target.edge(edges[e]));
            if c.src != nodes[d.src] || c.tgt != nodes[d.tgt] {
                return Err(Error::Invalid(format!("edge {} is not sent to an edge between the images of its ends", d.name)));
            }
        }
        Ok(GraphMap { source, target, nodes, edges })
    }

    pub fn identity(g: Arc<ReflexiveGraph>) -> GraphMap {
        GraphMap { nodes: (0..g.n_nodes()).collect(), edges: (0..g.n_edges()).collect(), source: g.clone(), target: g }
    }

    pub fn then(&self, next: &GraphMap) -> GraphMap {
        GraphMap {
            source: self.source.clone(),
            target: next.target.clone(),
            nodes: self.nodes.iter().map(|&v| next.nodes[v]).collect(),
            edges: self.edges.iter().map(|&e| next.edges[e]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let inj = |xs: &[usize], n: usize| {
            let mut seen = vec![false; n];
            xs.len() == n && xs.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        };
        inj(&self.nodes, self.target.n_nodes()) && inj(&self.edges, self.target.n_edges())
    }

    pub fn opposite(&self) -> GraphMap {
        GraphMap {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
        }
    }
}

/// The free category on an acyclic graph, with its arrows as edge paths.
#[derive(Debug, Clone)]
pub struct FreeCategory {
    pub category: Arc<FinCat>,
    /// `paths[f]` lists the proper edges of arrow `f` in order.
    pub paths: Vec<Vec<usize>>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl FreeCategory {
    /// The arrow of the path `edges` starting at `node`.
    pub fn arrow_of(&self, node: usize, edges: &[usize]) -> usize {
        self.index[&(node, edges.to_vec())]
    }
}

/// Objects are nodes, arrows are paths of proper edges, composition is
/// concatenation; arrow names join edge names with `;`.
pub fn free_category(g: &ReflexiveGraph) -> Result<FreeCategory> {
    if !g.is_acyclic() {
        return Err(Error::CyclicGraphUnsupported(format!("{} nodes, {} proper edges", g.n_nodes(), g.proper_edges().len())));
    }
    let n = g.n_nodes();
    let mut arrows: Vec<Arrow> = (0..n).map(|v| Arrow::new(format!("id({})", g.node_name(v)), v, v)).collect();
    let mut paths: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut index: HashMap<(usize, Vec<usize>), usize> = (0..n).map(|v| ((v, Vec::new()), v)).collect();
    for start in 0..n {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, Vec::new())];
        let mut found = Vec::new();
        while let Some((v, path)) = stack.pop() {
            for e in g.proper_edges().filter(|&e| g.edge(e).src == v) {
                let mut p = path.clone();
                p.push(e);
                found.push((g.edge(e).tgt, p.clone()));
                stack.push((g.edge(e).tgt, p));
            }
        }
        found.sort_by(|a, b| (a.1.len(), &a.1).cmp(&(b.1.len(), &b.1)));
        for (end, p) in found {
            let name = p.iter().map(|&e| g.edge(e).name.as_str()).collect::<Vec<_>>().join(";");
            index.insert((start, p.clone()), arrows.len());
            arrows.push(Arrow::new(name, start, end));
            paths.push(p);
        }
    }
    let mut compose = Vec::new();
    for f in 0..arrows.len() {
        for h in (0..arrows.len()).filter(|&h| arrows[h].dom == arrows[f].cod) {
            let mut p = paths[f].clone();
            p.extend_from_slice(&paths[h]);
            compose.push((f, h, index[&(arrows[f].dom, p)]));
        }
    }
    let category = Arc::new(FinCat::from_trusted(RawCategory {
        objects: g.nodes().to_vec(),
        arrows,
        identity: (0..n).collect(),
        compose,
    }));
    Ok(FreeCategory { category, paths, index })
}

/// The functor `F(f) : F(G) -> F(H)` between free categories.
pub fn free_functor(f: &GraphMap, source: &FreeCategory, target: &FreeCategory) -> FinFunctor {
    let arrows = source
        .paths
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let image: Vec<usize> = p.iter().map(|&e| f.edges[e]).filter(|&e| !f.target.is_identity(e)).collect();
            target.arrow_of(f.nodes[source.category.dom(k)], &image)
        })
        .collect();
    FinFunctor::new_unchecked(source.category.clone(), target.category.clone(), f.nodes.clone(), arrows)
}

/// The graph of elements of a presheaf on the proper edges of `base`: node
/// `x#i` for each element, and an edge `h#j` from `action(h, j)` to `j`.
pub(crate) fn graph_of_elements(
    base: &Arc<ReflexiveGraph>,
    fibers: &[usize],
    action: &dyn Fn(usize, usize) -> usize,
) -> (GraphMap, Vec<usize>) {
    let mut offset = Vec::with_capacity(fibers.len());
    let mut nodes = Vec::new();
    let mut over = Vec::new();
    for (x, &k) in fibers.iter().enumerate() {
        offset.push(nodes.len());
        for i in 0..k {
            nodes.push(format!("{}#{}", base.node_name(x), i));
            over.push(x);
        }
    }
    let mut edges = Vec::new();
    let mut edge_over: Vec<usize> = over.iter().map(|&x| base.identity(x)).collect();
    for h in base.proper_edges() {
        let Edge { name, src, tgt } = base.edge(h);
        for j in 0..fibers[*tgt] {
            edges.push((format!("{name}#{j}"), offset[*src] + action(h, j), offset[*tgt] + j));
            edge_over.push(h);
        }
    }
    let total = Arc::new(ReflexiveGraph::new(nodes, edges).expect("endpoints in range"));
    (GraphMap { source: total, target: base.clone(), nodes: over, edges: edge_over }, offset)
}

/// Reflexive graphs with `M` the maps with unique edge lifting.
#[derive(Debug, Clone)]
pub struct GphInstance {
    empty: Arc<ReflexiveGraph>,
    dot: Arc<ReflexiveGraph>,
    edge1: Arc<ReflexiveGraph>,
}

impl Default for GphInstance {
    fn default() -> Self {
        Self::new()
    }
}

impl GphInstance {
    pub fn new() -> Self {
        GphInstance {
            empty: Arc::new(ReflexiveGraph::empty()),
            dot: Arc::new(ReflexiveGraph::dot()),
            edge1: Arc::new(ReflexiveGraph::edge1()),
        }
    }

    pub fn dot(&self) -> &Arc<ReflexiveGraph> {
        &self.dot
    }

    pub fn point(&self, x: &Arc<ReflexiveGraph>, v: usize) -> GraphMap {
        GraphMap { source: self.dot.clone(), target: x.clone(), nodes: vec![v], edges: vec![x.identity(v)] }
    }

    fn search(
        &self,
        a: &Arc<ReflexiveGraph>,
        b: &Arc<ReflexiveGraph>,
        node_ok: &dyn Fn(usize, usize) -> bool,
        edge_ok: &dyn Fn(usize, usize) -> bool,
        iso: bool,
        meter: &Meter,
    ) -> Result<Vec<GraphMap>> {
        let n = a.n_nodes();
        let cands: Vec<Vec<usize>> = (0..n).map(|i| (0..b.n_nodes()).filter(|&v| node_ok(i, v)).collect()).collect();
        if cands.iter().any(Vec::is_empty) {
            return Ok(Vec::new());
        }
        // most constrained first, then nodes adjacent to ones already placed
        let proper: Vec<usize> = a.proper_edges().collect();
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let links = |i: usize| {
                proper.iter().filter(|&&e| {
                    let (s, t) = (a.edge(e).src, a.edge(e).tgt);
                    (s == i && placed[t]) || (t == i && placed[s])
                })
                .count()
            };
            let next = (0..n)
                .filter(|&i| !placed[i])
                .min_by_key(|&i| (cands[i].len().min(2), std::cmp::Reverse(links(i)), cands[i].len(), i))
                .expect("an unplaced node");
            placed[next] = true;
            order.push(next);
        }
        let mut rank = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            rank[i] = k;
        }
        // edges checked once both endpoints are placed
        let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &e in &proper {
            let (s, t) = (a.edge(e).src, a.edge(e).tgt);
            closing[if rank[s] > rank[t] { s } else { t }].push(e);
        }
        let plan = SearchPlan { a, b, order, cands, closing, edge_ok, iso };
        let mut out = Vec::new();
        let mut nodes = vec![0; n];
        plan.nodes_from(0, &mut nodes, meter, &mut out)?;
        Ok(out)
    }
}

fn distinct(xs: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    xs.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
}

struct SearchPlan<'p> {
    a: &'p Arc<ReflexiveGraph>,
    b: &'p Arc<ReflexiveGraph>,
    order: Vec<usize>,
    cands: Vec<Vec<usize>>,
    closing: Vec<Vec<usize>>,
    edge_ok: &'p dyn Fn(usize, usize) -> bool,
    /// Only bijections, and only the first one found.
    iso: bool,
}

impl SearchPlan<'_> {
    fn options(&self, e: usize, nodes: &[usize]) -> impl Iterator<Item = usize> + '_ {
        let (s, t) = (nodes[self.a.edge(e).src], nodes[self.a.edge(e).tgt]);
        self.b.edges_between(s, t).filter(move |&k| (self.edge_ok)(e, k))
    }

    fn nodes_from(&self, k: usize, nodes: &mut Vec<usize>, meter: &Meter, out: &mut Vec<GraphMap>) -> Result<()> {
        let (a, b) = (self.a, self.b);
        if k == self.order.len() {
            let options: Vec<Vec<usize>> = a.proper_edges().map(|e| self.options(e, nodes).collect()).collect();
            let mut choice = vec![0; options.len()];
            loop {
                meter.tick()?;
                let mut edges: Vec<usize> = nodes.iter().map(|&v| b.identity(v)).collect();
                edges.extend(choice.iter().zip(&options).map(|(&c, o)| o[c]));
                if !self.iso || distinct(&edges, b.n_edges()) {
                    out.push(GraphMap { source: a.clone(), target: b.clone(), nodes: nodes.clone(), edges });
                    if self.iso {
                        return Ok(());
                    }
                }
                let mut k = choice.len();
                loop {
                    if k == 0 {
                        return Ok(());
                    }
                    k -= 1;
                    if choice[k] + 1 < options[k].len() {
                        choice[k] += 1;
                        break;
                    }
                    choice[k] = 0;
                }
            }
        }
        let i = self.order[k];
        for &v in &self.cands[i] {
            meter.tick()?;
            if self.iso && (self.order[..k].iter().any(|&j| nodes[j] == v) || !out.is_empty()) {
                continue;
            }
            nodes[i] = v;
            if self.closing[i].iter().all(|&e| self.options(e, nodes).next().is_some()) {
                self.nodes_from(k + 1, nodes, meter, out)?;
            }
        }
        Ok(())
    }
}

impl EmInstance for GphInstance {
    type Space = Arc<ReflexiveGraph>;
    type Map = GraphMap;

    fn name(&self) -> &'static str {
        "gph"
    }

    fn terminal(&self) -> Arc<ReflexiveGraph> {
        self.dot.clone()
    }

    fn initial(&self) -> Arc<ReflexiveGraph> {
        self.empty.clone()
    }

    fn source(&self, f: &GraphMap) -> Arc<ReflexiveGraph> {
        f.source.clone()
    }

    fn target(&self, f: &GraphMap) -> Arc<ReflexiveGraph> {
        f.target.clone()
    }

    fn identity(&self, x: &Arc<ReflexiveGraph>) -> GraphMap {
        GraphMap::identity(x.clone())
    }

    fn compose(&self, first: &GraphMap, second: &GraphMap) -> GraphMap {
        first.then(second)
    }

    fn to_terminal(&self, x: &Arc<ReflexiveGraph>) -> GraphMap {
        GraphMap { source: x.clone(), target: self.dot.clone(), nodes: vec![0; x.n_nodes()], edges: vec![0; x.n_edges()] }
    }

    fn from_initial(&self, x: &Arc<ReflexiveGraph>) -> GraphMap {
        GraphMap { source: self.empty.clone(), target: x.clone(), nodes: vec![], edges: vec![] }
    }

    fn maps(&self, a: &Arc<ReflexiveGraph>, b: &Arc<ReflexiveGraph>, budget: &Budget) -> Result<Vec<GraphMap>> {
        self.search(a, b, &|_, _| true, &|_, _| true, false, &budget.meter("enumerating graph maps"))
    }

    fn maps_over(&self, p: &GraphMap, n: &GraphMap, budget: &Budget) -> Result<Vec<GraphMap>> {
        self.search(
            &p.source,
            &n.source,
            &|i, v| n.nodes[v] == p.nodes[i],
            &|e, k| n.edges[k] == p.edges[e],
            false,
            &budget.meter("enumerating graph maps over a base"),
        )
    }

    fn maps_over_extending(
        &self,
        p: &GraphMap,
        n: &GraphMap,
        along: &GraphMap,
        g: &GraphMap,
        budget: &Budget,
    ) -> Result<Vec<GraphMap>> {
        let mut fixed_node = vec![None; p.source.n_nodes()];
        let mut fixed_edge = vec![None; p.source.n_edges()];
        for (i, &v) in along.nodes.iter().enumerate() {
            fixed_node[v] = Some(g.nodes[i]);
        }
        for (e, &k) in along.edges.iter().enumerate() {
            fixed_edge[k] = Some(g.edges[e]);
        }
        let found = self.search(
            &p.source,
            &n.source,
            &|i, v| n.nodes[v] == p.nodes[i] && fixed_node[i].is_none_or(|w| w == v),
            &|e, k| n.edges[k] == p.edges[e] && fixed_edge[e].is_none_or(|w| w == k),
            false,
            &budget.meter("enumerating graph maps over a base"),
        )?;
        Ok(found.into_iter().filter(|u| self.compose(along, u) == *g).collect())
    }

    fn find_iso_over(&self, m: &GraphMap, n: &GraphMap, budget: &Budget) -> Result<Option<(GraphMap, GraphMap)>> {
        if m.source.n_nodes() != n.source.n_nodes() || m.source.n_edges() != n.source.n_edges() {
            return Ok(None);
        }
        let found = self.search(
            &m.source,
            &n.source,
            &|i, v| n.nodes[v] == m.nodes[i],
            &|e, k| n.edges[k] == m.edges[e],
            true,
            &budget.meter("searching isomorphisms over a base"),
        )?;
        Ok(found.into_iter().next().map(|u| {
            let mut nodes = vec![0; u.nodes.len()];
            for (i, &v) in u.nodes.iter().enumerate() {
                nodes[v] = i;
            }
            let mut edges = vec![0; u.edges.len()];
            for (e, &k) in u.edges.iter().enumerate() {
                edges[k] = e;
            }
            let v = GraphMap { source: n.source.clone(), target: m.source.clone(), nodes, edges };
            (u, v)
        }))
    }

    fn point_name(&self, x: &Arc<ReflexiveGraph>, i: usize) -> String {
        x.node_name(i).to_string()
    }

    fn points(&self, x: &Arc<ReflexiveGraph>) -> Vec<GraphMap> {
        (0..x.n_nodes()).map(|v| self.point(x, v)).collect()
    }

    fn pullback(&self, m: &GraphMap, f: &GraphMap) -> Pullback<GraphMap> {
        let (a, b) = (&f.source, &m.source);
        let pairs: Vec<(usize, usize)> = (0..a.n_nodes())
            .flat_map(|i| (0..b.n_nodes()).filter(move |&j| m.nodes[j] == f.nodes[i]).map(move |j| (i, j)))
            .collect();
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let names = pairs.iter().map(|&(i, j)| format!("({},{})", a.node_name(i), b.node_name(j))).collect();
        let mut proper = Vec::new();
        let mut edge_pairs: Vec<(usize, usize)> = pairs.iter().map(|&(i, j)| (a.identity(i), b.identity(j))).collect();
        for e1 in 0..a.n_edges() {
            for e2 in (0..b.n_edges()).filter(|&e2| m.edges[e2] == f.edges[e1]) {
                if a.is_identity(e1) && b.is_identity(e2) {
                    continue;
                }
                let (d1, d2) = (a.edge(e1), b.edge(e2));
                let name = format!("({},{})", d1.name, d2.name);
                proper.push((name, index[&(d1.src, d2.src)], index[&(d1.tgt, d2.tgt)]));
                edge_pairs.push((e1, e2));
            }
        }
        let apex = Arc::new(ReflexiveGraph::new(names, proper).expect("endpoints in range"));
        let to_a = GraphMap {
            source: apex.clone(),
            target: a.clone(),
            nodes: pairs.iter().map(|p| p.0).collect(),
            edges: edge_pairs.iter().map(|p| p.0).collect(),
        };
        let to_b = GraphMap {
            source: apex,
            target: b.clone(),
            nodes: pairs.iter().map(|p| p.1).collect(),
            edges: edge_pairs.iter().map(|p| p.1).collect(),
        };
        Pullback { to_a, to_b }
    }

    fn pullback_pair(&self, pb: &Pullback<GraphMap>, to_a: &GraphMap, to_b: &GraphMap) -> GraphMap {
        let apex = &pb.to_a.source;
        let nodes: HashMap<(usize, usize), usize> =
            (0..apex.n_nodes()).map(|k| ((pb.to_a.nodes[k], pb.to_b.nodes[k]), k)).collect();
        let edges: HashMap<(usize, usize), usize> =
            (0..apex.n_edges()).map(|k| ((pb.to_a.edges[k], pb.to_b.edges[k]), k)).collect();
        GraphMap {
            source: to_a.source.clone(),
            target: apex.clone(),
            nodes: (0..to_a.source.n_nodes()).map(|t| nodes[&(to_a.nodes[t], to_b.nodes[t])]).collect(),
            edges: (0..to_a.source.n_edges()).map(|t| edges[&(to_a.edges[t], to_b.edges[t])]).collect(),
        }
    }

    /// Every edge `h` of the base, identity loops included, has exactly one
    /// lift ending at each node over its target.
    fn in_m(&self, m: &GraphMap) -> bool {
        let (n, y) = (&m.source, &m.target);
        let mut lifts = vec![0usize; y.n_edges() * n.n_nodes()];
        for e in 0..n.n_edges() {
            lifts[m.edges[e] * n.n_nodes() + n.edge(e).tgt] += 1;
        }
        (0..y.n_edges()).all(|h| (0..n.n_nodes()).filter(|&b| m.nodes[b] == y.edge(h).tgt).all(|b| lifts[h * n.n_nodes() + b] == 1))
    }

    /// The fiber of `↓p` over `x` is the set of classes of pairs `(a, k)`,
    /// `k` a path from `x` to `pa`, under `(a, k) ~ (a', k;pe)` for edges
    /// `e : a -> a'`. Only the base needs to be acyclic.
    fn factorize(&self, p: &GraphMap) -> Result<Factorization<GraphMap>> {
        let (src, base) = (&p.source, &p.target);
        let free = free_category(base)?;
        let cat = &free.category;
        let image = |e: usize| -> Vec<usize> { if base.is_identity(p.edges[e]) { vec![] } else { vec![p.edges[e]] } };
        let mut classes: Vec<HashMap<(usize, usize), usize>> = Vec::with_capacity(base.n_nodes());
        let mut reps: Vec<Vec<(usize, usize)>> = Vec::with_capacity(base.n_nodes());
        for x in 0..base.n_nodes() {
            let pairs: Vec<(usize, usize)> =
                (0..src.n_nodes()).flat_map(|a| cat.hom(x, p.nodes[a]).iter().map(move |&k| (a, k))).collect();
            let at: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &q)| (q, i)).collect();
            let mut parent: Vec<usize> = (0..pairs.len()).collect();
            fn find(parent: &mut [usize], i: usize) -> usize {
                let mut r = i;
                while parent[r] != r {
                    r = parent[r];
                }
                parent[i] = r;
                r
            }
            for e in src.proper_edges() {
                let (a, a2) = (src.edge(e).src, src.edge(e).tgt);
                for &k in cat.hom(x, p.nodes[a]) {
                    let mut path = free.paths[k].clone();
                    path.extend(image(e));
                    let k2 = free.arrow_of(x, &path);
                    let (r1, r2) = (find(&mut parent, at[&(a, k)]), find(&mut parent, at[&(a2, k2)]));
                    parent[r1.max(r2)] = r1.min(r2);
                }
            }
            let mut number = HashMap::new();
            let mut class_of = HashMap::new();
            let mut rep = Vec::new();
            for (i, &q) in pairs.iter().enumerate() {
                let r = find(&mut parent, i);
                let c = *number.entry(r).or_insert_with(|| {
                    rep.push(q);
                    rep.len() - 1
                });
                class_of.insert(q, c);
            }
            classes.push(class_of);
            reps.push(rep);
        }
        let fibers: Vec<usize> = reps.iter().map(Vec::len).collect();
        let action = |h: usize, c: usize| {
            let (x, y) = (base.edge(h).src, base.edge(h).tgt);
            let (a, k) = reps[y][c];
            let mut path = vec![h];
            path.extend_from_slice(&free.paths[k]);
            classes[x][&(a, free.arrow_of(x, &path))]
        };
        let (m, offset) = graph_of_elements(base, &fibers, &action);
        let total = m.source.clone();
        let node_of = |a: usize| offset[p.nodes[a]] + classes[p.nodes[a]][&(a, p.nodes[a])];
        let nodes: Vec<usize> = (0..src.n_nodes()).map(node_of).collect();
        let mut edges: Vec<usize> = nodes.clone();
        for e in src.proper_edges() {
            let h = p.edges[e];
            edges.push(if base.is_identity(h) {
                total.identity(nodes[src.edge(e).src])
            } else {
                let target_node = nodes[src.edge(e).tgt];
                (0..total.n_edges())
                    .find(|&k| m.edges[k] == h && total.edge(k).tgt == target_node)
                    .expect("the fibration lifts every edge")
            });
        }
        let e = GraphMap { source: src.clone(), target: total, nodes, edges };
        Ok(Factorization { e, m })
    }

    fn is_iso(&self, f: &GraphMap) -> bool {
        f.is_bijective()
    }

    /// Graphs of elements of edge-indexed presheaves with fibers of at most
    /// `fiber_bound` elements, one per isomorphism class.
    fn discrete_spaces(&self, x: &Arc<ReflexiveGraph>, fiber_bound: usize, budget: &Budget) -> Result<Vec<GraphMap>> {
        let meter = budget.meter("enumerating graph presheaves");
        let proper: Vec<usize> = x.proper_edges().collect();
        let shape: Vec<(usize, usize)> = proper.iter().map(|&h| (x.edge(h).src, x.edge(h).tgt)).collect();
        let n = x.n_nodes();
        let mut seen = std::collections::BTreeSet::new();
        let mut fibers = vec![0usize; n];
        loop {
            let radix: Vec<usize> = shape.iter().map(|&(s, t)| fibers[s].pow(fibers[t] as u32)).collect();
            if radix.iter().all(|&r| r > 0) {
                let mut code = vec![0; shape.len()];
                'codes: loop {
                    meter.tick()?;
                    let action: Vec<Vec<usize>> = shape
                        .iter()
                        .zip(&code)
                        .map(|(&(s, t), &c)| {
                            let mut c = c;
                            (0..fibers[t])
                                .map(|_| {
                                    let d = c % fibers[s];
                                    c /= fibers[s];
                                    d
                                })
                                .collect()
                        })
                        .collect();
                    seen.insert(canonical(&shape, &fibers, &action));
                    let mut k = 0;
                    loop {
                        if k == code.len() {
                            break 'codes;
                        }
                        code[k] += 1;
                        if code[k] < radix[k] {
                            break;
                        }
                        code[k] = 0;
                        k += 1;
                    }
                }
            }
            let mut i = 0;
            while i < n && fibers[i] == fiber_bound {
                fibers[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            fibers[i] += 1;
        }
        Ok(seen
            .iter()
            .map(|s| {
                let action = |h: usize, j: usize| s.action[h - n][j];
                graph_of_elements(x, &s.fibers, &action).0
            })
            .collect())
    }

    fn size(&self, x: &Arc<ReflexiveGraph>) -> usize {
        x.n_nodes()
    }

    fn op_space(&self, x: &Arc<ReflexiveGraph>) -> Option<Arc<ReflexiveGraph>> {
        Some(Arc::new(x.opposite()))
    }

    fn op_map(&self, f: &GraphMap) -> Option<GraphMap> {
        Some(f.opposite())
    }

    fn arrow_object(&self) -> Option<ArrowObject<Arc<ReflexiveGraph>, GraphMap>> {
        Some(ArrowObject { two: self.edge1.clone(), s: self.point(&self.edge1, 0), t: self.point(&self.edge1, 1) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emcore::{check_orthogonal, in_e};
    use crate::fincat::find_isomorphism;
    use crate::theory::{adherence, neighborhood};

    fn arc(g: ReflexiveGraph) -> Arc<ReflexiveGraph> {
        Arc::new(g)
    }

    #[test]
    fn free_categories_of_paths() {
        assert_eq!(free_category(&ReflexiveGraph::dot()).unwrap().category.n_arrows(), 1);
        assert_eq!(free_category(&ReflexiveGraph::edge1()).unwrap().category.n_arrows(), 3);
        let three = free_category(&ReflexiveGraph::path(2)).unwrap();
        assert_eq!(three.category.n_objects(), 3);
        assert_eq!(three.category.n_arrows(), 6);
        assert!(FinCat::validate(three.category.to_raw()).is_ok());
        let cyc = ReflexiveGraph::new(vec!["a".into()], vec![("l".into(), 0, 0)]).unwrap();
        assert!(matches!(free_category(&cyc), Err(Error::CyclicGraphUnsupported(_))));
    }

    #[test]
    fn neighborhood_of_edge_target() {
        let g = GphInstance::new();
        let e1 = arc(ReflexiveGraph::edge1());
        let nu = neighborhood(&g, &g.point(&e1, 1)).unwrap();
        assert!(g.in_m(&nu.map));
        // one node over each base node, the proper edge over `a`
        assert_eq!(nu.map.nodes, vec![0, 1]);
        assert_eq!(nu.map.source.proper_edges().len(), 1);
        let nu0 = neighborhood(&g, &g.point(&e1, 0)).unwrap();
        assert_eq!(nu0.map.nodes, vec![0]);
    }

    #[test]
    fn adherence_is_free_category() {
        let g = GphInstance::new();
        for x in [ReflexiveGraph::dot(), ReflexiveGraph::edge1(), ReflexiveGraph::path(2)] {
            let free = free_category(&x).unwrap();
            let adh = adherence(&g, &arc(x), &Budget::default()).unwrap();
            assert!(find_isomorphism(&adh.category, &free.category, &Budget::default()).unwrap().is_some());
        }
    }

    #[test]
    fn t_is_final_and_generates() {
        let g = GphInstance::new();
        let e1 = arc(ReflexiveGraph::edge1());
        let t = g.point(&e1, 1);
        assert!(in_e(&g, &t).unwrap());
        assert!(!in_e(&g, &g.point(&e1, 0)).unwrap());
        let id = g.identity(&e1);
        assert!(check_orthogonal(&g, &t, &id, &Budget::default()).unwrap().holds);
    }

    #[test]
    fn collapsing_edge_is_not_a_fibration() {
        let g = GphInstance::new();
        let e1 = arc(ReflexiveGraph::edge1());
        assert!(!g.in_m(&g.to_terminal(&e1)));
        assert!(g.in_m(&g.to_terminal(&arc(ReflexiveGraph::discrete(2)))));
    }

    #[test]
    fn reflection_with_cyclic_source() {
        let g = GphInstance::new();
        let cyc = arc(ReflexiveGraph::new(vec!["a".into()], vec![("l".into(), 0, 0)]).unwrap());
        let fac = g.factorize(&g.to_terminal(&cyc)).unwrap();
        assert_eq!(fac.m.source.n_nodes(), 1);
        assert_eq!(fac.e.then(&fac.m), g.to_terminal(&cyc));
    }

    #[test]
    fn presheaves_over_an_edge() {
        let g = GphInstance::new();
        let e1 = arc(ReflexiveGraph::edge1());
        // fibers (i, j) with i, j <= 1: (0,0), (1,0), (1,1); (0,1) has no action
        assert_eq!(g.discrete_spaces(&e1, 1, &Budget::default()).unwrap().len(), 3);
        for m in g.discrete_spaces(&e1, 2, &Budget::default()).unwrap() {
            assert!(g.in_m(&m));
        }
    }
}
