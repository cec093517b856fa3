//! How each instance reads and writes its spaces and maps.

use std::sync::Arc;

use super::dot::DotGraph;
use super::spaces::{emit_fincat, emit_graph, emit_poset, emit_set, parse_fincat, parse_graph, parse_poset, parse_set};
use crate::comprehensive::CatInstance;
use crate::emcore::EmInstance;
use crate::error::{Error, Result};
use crate::fincat::{fixtures, Arrow, FinCat, FinFunctor, RawCategory};
use crate::instances::{subset_inclusion, FinFn, FinSetInstance, GphInstance, GraphMap, Monotone, PosInstance, Poset, ReflexiveGraph};

/// Text input and output for the spaces and maps of an instance.
pub trait Textual: EmInstance {
    /// Extension of space files, without the dot.
    fn space_extension(&self) -> &'static str;

    fn parse_space(&self, src: &str, first_line: usize) -> Result<Self::Space>;

    fn emit_space(&self, x: &Self::Space) -> Result<String>;

    /// A named space (`@TWO`).
    fn builtin(&self, name: &str) -> Option<Self::Space>;

    /// Names of the points, indexed like [`EmInstance::points`].
    fn point_names(&self, x: &Self::Space) -> Vec<String>;

    /// Keywords for point and arrow lines when writing a map.
    fn keywords(&self) -> (&'static str, &'static str);

    /// Arrows between points `(name, from, to)`, identities included at
    /// indices whose name is `id(point)`. Empty when maps are determined by
    /// their action on points.
    fn arrows(&self, _x: &Self::Space) -> Vec<Arrow> {
        Vec::new()
    }

    /// Images of the points of the source of `f`.
    fn point_images(&self, f: &Self::Map) -> Vec<usize>;

    /// Images of [`Textual::arrows`] of the source.
    fn arrow_images(&self, _f: &Self::Map) -> Vec<usize> {
        Vec::new()
    }

    /// A map from point images and the images of every arrow of the source.
    fn build_map(&self, source: &Self::Space, target: &Self::Space, points: Vec<usize>, arrows: Vec<usize>) -> Result<Self::Map>;

    /// The inclusion of the substructure on the given points of `x`.
    fn include(&self, x: &Self::Space, points: &[usize]) -> Result<Self::Map>;

    /// Nodes and edges to draw.
    fn underlying(&self, x: &Self::Space) -> DotGraph;
}

/// Builtin category names accepted after `@`.
pub const BUILTINS: [&str; 8] = ["EMPTY", "ONE", "TWO", "THREE", "FOUR", "D2", "PAR", "VEE"];

fn identity_arrows(c: &FinCat) -> Vec<Arrow> {
    (0..c.n_arrows())
        .map(|f| {
            let a = c.arrow(f);
            let name = if c.is_identity(f) { format!("id({})", c.object_name(a.dom)) } else { a.name.clone() };
            Arrow::new(name, a.dom, a.cod)
        })
        .collect()
}

/// The full subcategory of `c` on `keep`, with its inclusion.
pub fn full_subcategory(c: &Arc<FinCat>, keep: &[usize]) -> Result<FinFunctor> {
    let mut pos = vec![None; c.n_objects()];
    for (k, &x) in keep.iter().enumerate() {
        pos[x] = Some(k);
    }
    let arrows: Vec<usize> = (0..c.n_arrows()).filter(|&f| pos[c.dom(f)].is_some() && pos[c.cod(f)].is_some()).collect();
    let mut apos = vec![None; c.n_arrows()];
    for (k, &f) in arrows.iter().enumerate() {
        apos[f] = Some(k);
    }
    let mut compose = Vec::new();
    for (i, &f) in arrows.iter().enumerate() {
        for (j, &g) in arrows.iter().enumerate() {
            if let Some(h) = c.compose(f, g) {
                compose.push((i, j, apos[h].expect("full subcategory is closed")));
            }
        }
    }
    let raw = RawCategory {
        objects: keep.iter().map(|&x| c.object_name(x).to_string()).collect(),
        arrows: arrows.iter().map(|&f| Arrow::new(c.arrow(f).name.clone(), pos[c.dom(f)].unwrap(), pos[c.cod(f)].unwrap())).collect(),
        identity: keep.iter().map(|&x| apos[c.identity(x)].unwrap()).collect(),
        compose,
    };
    let sub = Arc::new(FinCat::validate(raw)?);
    Ok(FinFunctor::new(sub, c.clone(), keep.to_vec(), arrows)?)
}

impl Textual for CatInstance {
    fn space_extension(&self) -> &'static str {
        "fincat"
    }

    fn parse_space(&self, src: &str, first_line: usize) -> Result<Arc<FinCat>> {
        parse_fincat(src, first_line).map(Arc::new)
    }

    fn emit_space(&self, x: &Arc<FinCat>) -> Result<String> {
        emit_fincat(x)
    }

    fn builtin(&self, name: &str) -> Option<Arc<FinCat>> {
        fixtures::by_name(name).map(Arc::new)
    }

    fn point_names(&self, x: &Arc<FinCat>) -> Vec<String> {
        x.objects().to_vec()
    }

    fn keywords(&self) -> (&'static str, &'static str) {
        ("object", "arrow")
    }

    fn arrows(&self, x: &Arc<FinCat>) -> Vec<Arrow> {
        identity_arrows(x)
    }

    fn point_images(&self, f: &FinFunctor) -> Vec<usize> {
        f.object_map().to_vec()
    }

    fn arrow_images(&self, f: &FinFunctor) -> Vec<usize> {
        f.arrow_map().to_vec()
    }

    fn build_map(&self, source: &Arc<FinCat>, target: &Arc<FinCat>, points: Vec<usize>, arrows: Vec<usize>) -> Result<FinFunctor> {
        Ok(FinFunctor::new(source.clone(), target.clone(), points, arrows)?)
    }

    fn include(&self, x: &Arc<FinCat>, points: &[usize]) -> Result<FinFunctor> {
        full_subcategory(x, points)
    }

    fn underlying(&self, x: &Arc<FinCat>) -> DotGraph {
        DotGraph {
            nodes: x.objects().to_vec(),
            edges: x.non_identity_arrows().map(|f| (x.dom(f), x.cod(f), x.arrow(f).name.clone())).collect(),
        }
    }
}

impl Textual for PosInstance {
    fn space_extension(&self) -> &'static str {
        "poset"
    }

    fn parse_space(&self, src: &str, first_line: usize) -> Result<Arc<Poset>> {
        parse_poset(src, first_line).map(Arc::new)
    }

    fn emit_space(&self, x: &Arc<Poset>) -> Result<String> {
        emit_poset(x)
    }

    fn builtin(&self, name: &str) -> Option<Arc<Poset>> {
        fixtures::by_name(name).and_then(|c| Poset::from_fincat(&c).ok()).map(Arc::new)
    }

    fn point_names(&self, x: &Arc<Poset>) -> Vec<String> {
        x.names().to_vec()
    }

    fn keywords(&self) -> (&'static str, &'static str) {
        ("element", "arrow")
    }

    fn point_images(&self, f: &Monotone) -> Vec<usize> {
        f.map.clone()
    }

    fn build_map(&self, source: &Arc<Poset>, target: &Arc<Poset>, points: Vec<usize>, _arrows: Vec<usize>) -> Result<Monotone> {
        Monotone::new(source.clone(), target.clone(), points)
    }

    fn include(&self, x: &Arc<Poset>, points: &[usize]) -> Result<Monotone> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        let (sub, keep) = x.restrict(sorted.iter().fold(0, |m, &i| m | 1u64 << i));
        let sub = Arc::new(sub);
        // keep the order in which the points were listed
        let order: Vec<usize> = points.iter().map(|p| keep.iter().position(|k| k == p).unwrap()).collect();
        let names = order.iter().map(|&k| sub.name(k).to_string()).collect();
        let pairs: Vec<(usize, usize)> = (0..order.len())
            .flat_map(|i| (0..order.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| sub.le(order[i], order[j]))
            .collect();
        let listed = Arc::new(Poset::new(names, &pairs)?);
        Monotone::new(listed, x.clone(), points.to_vec())
    }

    fn underlying(&self, x: &Arc<Poset>) -> DotGraph {
        DotGraph { nodes: x.names().to_vec(), edges: x.covers().into_iter().map(|(a, b)| (a, b, String::new())).collect() }
    }
}

/// The graph of indecomposable arrows of a builtin category.
fn generating_graph(c: &FinCat) -> ReflexiveGraph {
    let proper: Vec<usize> = c.non_identity_arrows().collect();
    let decomposable = |h: usize| proper.iter().any(|&f| proper.iter().any(|&g| c.compose(f, g) == Some(h)));
    let edges = proper.iter().filter(|&&h| !decomposable(h)).map(|&h| (c.arrow(h).name.clone(), c.dom(h), c.cod(h))).collect();
    ReflexiveGraph::new(c.objects().to_vec(), edges).expect("arrows have valid endpoints")
}

impl Textual for GphInstance {
    fn space_extension(&self) -> &'static str {
        "graph"
    }

    fn parse_space(&self, src: &str, first_line: usize) -> Result<Arc<ReflexiveGraph>> {
        parse_graph(src, first_line).map(Arc::new)
    }

    fn emit_space(&self, x: &Arc<ReflexiveGraph>) -> Result<String> {
        emit_graph(x)
    }

    fn builtin(&self, name: &str) -> Option<Arc<ReflexiveGraph>> {
        fixtures::by_name(name).map(|c| Arc::new(generating_graph(&c)))
    }

    fn point_names(&self, x: &Arc<ReflexiveGraph>) -> Vec<String> {
        x.nodes().to_vec()
    }

    fn keywords(&self) -> (&'static str, &'static str) {
        ("node", "edge")
    }

    fn arrows(&self, x: &Arc<ReflexiveGraph>) -> Vec<Arrow> {
        x.edges()
            .iter()
            .enumerate()
            .map(|(e, d)| {
                let name = if x.is_identity(e) { format!("id({})", x.node_name(d.src)) } else { d.name.clone() };
                Arrow::new(name, d.src, d.tgt)
            })
            .collect()
    }

    fn point_images(&self, f: &GraphMap) -> Vec<usize> {
        f.nodes.clone()
    }

    fn arrow_images(&self, f: &GraphMap) -> Vec<usize> {
        f.edges.clone()
    }

    fn build_map(
        &self,
        source: &Arc<ReflexiveGraph>,
        target: &Arc<ReflexiveGraph>,
        points: Vec<usize>,
        arrows: Vec<usize>,
    ) -> Result<GraphMap> {
        let proper = arrows[source.n_nodes()..].to_vec();
        GraphMap::new(source.clone(), target.clone(), points, proper)
    }

    fn include(&self, x: &Arc<ReflexiveGraph>, points: &[usize]) -> Result<GraphMap> {
        let pos = |v: usize| points.iter().position(|&p| p == v);
        let kept: Vec<usize> = x.proper_edges().filter(|&e| pos(x.edge(e).src).is_some() && pos(x.edge(e).tgt).is_some()).collect();
        let edges = kept.iter().map(|&e| (x.edge(e).name.clone(), pos(x.edge(e).src).unwrap(), pos(x.edge(e).tgt).unwrap())).collect();
        let sub = Arc::new(ReflexiveGraph::new(points.iter().map(|&v| x.node_name(v).to_string()).collect(), edges)?);
        GraphMap::new(sub, x.clone(), points.to_vec(), kept)
    }

    fn underlying(&self, x: &Arc<ReflexiveGraph>) -> DotGraph {
        DotGraph {
            nodes: x.nodes().to_vec(),
            edges: x.proper_edges().map(|e| (x.edge(e).src, x.edge(e).tgt, x.edge(e).name.clone())).collect(),
        }
    }
}

impl Textual for FinSetInstance {
    fn space_extension(&self) -> &'static str {
        "set"
    }

    fn parse_space(&self, src: &str, first_line: usize) -> Result<usize> {
        parse_set(src, first_line)
    }

    fn emit_space(&self, x: &usize) -> Result<String> {
        Ok(emit_set(*x))
    }

    /// The object count of a builtin category, or a literal size (`@3`).
    fn builtin(&self, name: &str) -> Option<usize> {
        name.parse().ok().or_else(|| fixtures::by_name(name).map(|c| c.n_objects()))
    }

    fn point_names(&self, x: &usize) -> Vec<String> {
        (0..*x).map(|i| i.to_string()).collect()
    }

    fn keywords(&self) -> (&'static str, &'static str) {
        ("point", "arrow")
    }

    fn point_images(&self, f: &FinFn) -> Vec<usize> {
        f.map.clone()
    }

    fn build_map(&self, source: &usize, target: &usize, points: Vec<usize>, _arrows: Vec<usize>) -> Result<FinFn> {
        if points.len() != *source {
            return Err(Error::Invalid(format!("{} images given for a set of size {source}", points.len())));
        }
        FinFn::new(*target, points)
    }

    fn include(&self, x: &usize, points: &[usize]) -> Result<FinFn> {
        Ok(subset_inclusion(*x, points.to_vec()))
    }

    fn underlying(&self, x: &usize) -> DotGraph {
        DotGraph { nodes: self.point_names(x), edges: Vec::new() }
    }
}
