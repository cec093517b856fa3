//! Deterministic enumeration of small categories, posets and graphs, one
//! per isomorphism class, with seeded sampling for strata too large to list.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, RawCategory};
use crate::instances::{bits, Poset, ReflexiveGraph};

fn object_name(x: usize) -> String {
    ((b'a' + x as u8) as char).to_string()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for p in &out {
            for i in 0..=k {
                let mut q = p.clone();
                q.insert(i, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Hom-size matrices `h[x * n + y]` with `h[x][x] >= 1` and total `arrows`,
/// one per orbit under relabelling the objects.
fn hom_shapes(n: usize, arrows: usize) -> Vec<Vec<usize>> {
    if arrows < n {
        return Vec::new();
    }
    let slots = n * n;
    let mut out = BTreeSet::new();
    let perms = permutations(n);
    let mut h = vec![0; slots];
    fn go(k: usize, left: usize, h: &mut Vec<usize>, n: usize, perms: &[Vec<usize>], out: &mut BTreeSet<Vec<usize>>) {
        if k == h.len() {
            if left == 0 {
                let full: Vec<usize> = (0..h.len()).map(|i| h[i] + usize::from(i / n == i % n)).collect();
                let canon = perms
                    .iter()
                    .map(|p| {
                        let mut g = vec![0; full.len()];
                        for x in 0..n {
                            for y in 0..n {
                                g[p[x] * n + p[y]] = full[x * n + y];
                            }
                        }
                        g
                    })
                    .min()
                    .expect("at least one permutation");
                out.insert(canon);
            }
            return;
        }
        for v in 0..=left {
            h[k] = v;
            go(k + 1, left - v, h, n, perms, out);
        }
        h[k] = 0;
    }
    go(0, arrows - n, &mut h, n, &perms, &mut out);
    out.into_iter().collect()
}

/// Search state for composition tables of one hom shape.
struct TableSearch {
    n: usize,
    arrows: Vec<Arrow>,
    /// Fixed composites (identity laws) and the choices made so far.
    table: Vec<Option<usize>>,
    /// Non-identity composable pairs in assignment order.
    pairs: Vec<(usize, usize)>,
    homs: Vec<Vec<usize>>,
}

impl TableSearch {
    fn new(n: usize, shape: &[usize]) -> TableSearch {
        let mut arrows: Vec<Arrow> = (0..n).map(|x| Arrow::new(format!("id({})", object_name(x)), x, x)).collect();
        let mut homs = vec![Vec::new(); n * n];
        for x in 0..n {
            homs[x * n + x].push(x);
        }
        let mut next = 1;
        for x in 0..n {
            for y in 0..n {
                let extra = shape[x * n + y] - usize::from(x == y);
                for _ in 0..extra {
                    homs[x * n + y].push(arrows.len());
                    arrows.push(Arrow::new(format!("f{next}"), x, y));
                    next += 1;
                }
            }
        }
        let a = arrows.len();
        let mut table = vec![None; a * a];
        for f in 0..a {
            table[arrows[f].dom * a + f] = Some(f);
            table[f * a + arrows[f].cod] = Some(f);
        }
        let pairs = (n..a).flat_map(|f| (n..a).map(move |g| (f, g))).filter(|&(f, g)| arrows[f].cod == arrows[g].dom).collect();
        TableSearch { n, arrows, table, pairs, homs }
    }

    fn comp(&self, f: usize, g: usize) -> Option<usize> {
        self.table[f * self.arrows.len() + g]
    }

    fn associative_so_far(&self) -> bool {
        let a = self.arrows.len();
        for f in self.n..a {
            for g in (self.n..a).filter(|&g| self.arrows[g].dom == self.arrows[f].cod) {
                let Some(fg) = self.comp(f, g) else { continue };
                for h in (self.n..a).filter(|&h| self.arrows[h].dom == self.arrows[g].cod) {
                    let Some(gh) = self.comp(g, h) else { continue };
                    if let (Some(l), Some(r)) = (self.comp(fg, h), self.comp(f, gh)) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn raw(&self) -> RawCategory {
        let a = self.arrows.len();
        let compose = (0..a)
            .flat_map(|f| (0..a).filter_map(move |g| self.table[f * a + g].map(|h| (f, g, h))))
            .collect();
        RawCategory {
            objects: (0..self.n).map(object_name).collect(),
            arrows: self.arrows.clone(),
            identity: (0..self.n).collect(),
            compose,
        }
    }

    /// Visits every associative table; `visit` returns false to stop.
    fn run(&mut self, k: usize, rng: &mut Option<ChaCha8Rng>, meter: &Meter, visit: &mut dyn FnMut(FinCat) -> bool) -> Result<bool> {
        if k == self.pairs.len() {
            let cat = FinCat::validate(self.raw()).expect("complete associative table");
            return Ok(visit(cat));
        }
        let (f, g) = self.pairs[k];
        let (x, z) = (self.arrows[f].dom, self.arrows[g].cod);
        let mut options = self.homs[x * self.n + z].clone();
        if let Some(r) = rng.as_mut() {
            options.shuffle(r);
        }
        let a = self.arrows.len();
        for h in options {
            meter.tick()?;
            self.table[f * a + g] = Some(h);
            if self.associative_so_far() && !self.run(k + 1, rng, meter, visit)? {
                self.table[f * a + g] = None;
                return Ok(false);
            }
        }
        self.table[f * a + g] = None;
        Ok(true)
    }
}

/// A canonical relabelling of a category: over all object permutations and
/// all orderings within each hom-set, the least composition table.
pub fn canonical_table(c: &FinCat) -> Vec<usize> {
    let n = c.n_objects();
    let a = c.n_arrows();
    let mut best: Option<Vec<usize>> = None;
    for p in permutations(n) {
        // hom-sets in the relabelled order, each to be permuted
        let mut order: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
        order.sort_by_key(|&(x, y)| (p[x], p[y]));
        let homs: Vec<Vec<usize>> = order.iter().map(|&(x, y)| c.hom(x, y).iter().copied().filter(|&f| !c.is_identity(f)).collect()).collect();
        let perms: Vec<Vec<Vec<usize>>> = homs.iter().map(|h| permutations(h.len())).collect();
        let mut choice = vec![0; homs.len()];
        loop {
            let mut label = vec![0; a];
            for x in 0..n {
                label[c.identity(x)] = p[x];
            }
            let mut next = n;
            for (k, hom) in homs.iter().enumerate() {
                let perm = &perms[k][choice[k]];
                for &i in perm {
                    label[hom[i]] = next;
                    next += 1;
                }
            }
            let mut code = vec![usize::MAX; a * a];
            for f in 0..a {
                for g in 0..a {
                    if let Some(h) = c.compose(f, g) {
                        code[label[f] * a + label[g]] = label[h];
                    }
                }
            }
            let mut key = Vec::with_capacity(n * n + a * a);
            key.extend(order.iter().map(|&(x, y)| c.hom(x, y).len()));
            key.extend(code);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
            let mut i = 0;
            while i < choice.len() && choice[i] + 1 == perms[i].len() {
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
            choice[i] += 1;
        }
    }
    let mut key = vec![n, a];
    key.extend(best.unwrap_or_default());
    key
}

/// Every category with exactly `objects` objects and `arrows` arrows, one per
/// isomorphism class, in order of canonical form.
pub fn enumerate_stratum(objects: usize, arrows: usize, budget: &Budget) -> Result<Vec<FinCat>> {
    Ok(list_stratum(objects, arrows, None, budget)?.expect("no cap"))
}

/// Isomorphism-invariant summary, much cheaper than [`canonical_table`].
fn invariant(c: &FinCat) -> Vec<[usize; 7]> {
    let a = c.n_arrows();
    let mut out: Vec<[usize; 7]> = (0..a)
        .map(|f| {
            let (x, y) = (c.dom(f), c.cod(f));
            let right: BTreeSet<usize> = (0..a).filter_map(|g| c.compose(f, g)).collect();
            let fixed_right = (0..a).filter(|&g| !c.is_identity(g) && c.compose(f, g) == Some(f)).count();
            let fixed_left = (0..a).filter(|&g| !c.is_identity(g) && c.compose(g, f) == Some(f)).count();
            [
                usize::from(c.is_identity(f)),
                usize::from(x == y),
                c.hom(x, y).len(),
                usize::from(c.compose(f, f) == Some(f)),
                fixed_right,
                fixed_left,
                right.len(),
            ]
        })
        .collect();
    out.sort_unstable();
    out
}

/// Like [`enumerate_stratum`], but gives up with `None` as soon as more than
/// `cap` classes are certain to exist.
fn list_stratum(objects: usize, arrows: usize, cap: Option<usize>, budget: &Budget) -> Result<Option<Vec<FinCat>>> {
    let meter = budget.meter("enumerating composition tables");
    let mut found = std::collections::BTreeMap::new();
    if objects == 0 {
        if arrows == 0 {
            found.insert(Vec::new(), FinCat::empty());
        }
        return Ok(Some(found.into_values().collect()));
    }
    let mut invariants = BTreeSet::new();
    let mut over = false;
    for shape in hom_shapes(objects, arrows) {
        let mut search = TableSearch::new(objects, &shape);
        search.run(0, &mut None, &meter, &mut |c| {
            invariants.insert(invariant(&c));
            if cap.is_some_and(|k| invariants.len() > k) {
                over = true;
                return false;
            }
            found.entry(canonical_table(&c)).or_insert(c);
            true
        })?;
        if over {
            return Ok(None);
        }
    }
    Ok(Some(found.into_values().collect()))
}

/// Every category with at most `max_obj` objects and `max_arr` arrows
/// (identities included), one per isomorphism class. The empty category is
/// listed only when `max_obj == 0`.
pub fn enumerate_categories(max_obj: usize, max_arr: usize, budget: &Budget) -> Result<Vec<FinCat>> {
    if max_obj == 0 {
        return enumerate_stratum(0, 0, budget);
    }
    let mut out = Vec::new();
    for n in 1..=max_obj {
        for a in n..=max_arr {
            out.extend(enumerate_stratum(n, a, budget)?);
        }
    }
    Ok(out)
}

/// How a stratum of the category corpus was obtained.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Stratum {
    pub objects: usize,
    pub arrows: usize,
    pub found: usize,
    pub sampled: bool,
}

/// Up to `per_stratum` categories from each stratum `(n, a)`. A stratum is
/// listed in full when its enumeration fits `stratum_budget` ticks and has at
/// most `per_stratum` classes; otherwise a seeded sample is taken from
/// short randomized table searches over the hom shapes in shuffled order.
pub fn sample_categories(
    max_obj: usize,
    max_arr: usize,
    per_stratum: usize,
    stratum_budget: u64,
    seed: u64,
) -> Result<(Vec<FinCat>, Vec<Stratum>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cats = Vec::new();
    let mut strata = Vec::new();
    for n in 1..=max_obj {
        for a in n..=max_arr {
            let full = match list_stratum(n, a, Some(per_stratum), &Budget::new(stratum_budget)) {
                Ok(all) => all,
                Err(Error::SizeBudgetExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            let (chosen, sampled) = match full {
                Some(all) => (all, false),
                None => (sample_stratum(n, a, per_stratum, stratum_budget, &mut rng)?, true),
            };
            strata.push(Stratum { objects: n, arrows: a, found: chosen.len(), sampled });
            cats.extend(chosen);
        }
    }
    Ok((cats, strata))
}

/// Ticks allowed to one randomized search before restarting.
const RESTART_TICKS: u64 = 2_000;

fn sample_stratum(n: usize, a: usize, k: usize, stratum_budget: u64, rng: &mut ChaCha8Rng) -> Result<Vec<FinCat>> {
    let mut shapes = hom_shapes(n, a);
    shapes.shuffle(rng);
    let mut found = std::collections::BTreeMap::new();
    if shapes.is_empty() {
        return Ok(Vec::new());
    }
    // short restarts cycling through the shapes; heavy-tailed dead ends are
    // abandoned instead of exhausted
    for attempt in 0..(stratum_budget / RESTART_TICKS).max(1) as usize {
        if found.len() >= k {
            break;
        }
        let shape = &shapes[attempt % shapes.len()];
        let meter = Budget::new(RESTART_TICKS).meter("sampling composition tables");
        let mut search = TableSearch::new(n, shape);
        let mut r = Some(ChaCha8Rng::seed_from_u64(rand::Rng::gen(rng)));
        let mut first = None;
        match search.run(0, &mut r, &meter, &mut |c| {
            first = Some(c);
            false
        }) {
            Ok(_) | Err(Error::SizeBudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
        if let Some(c) = first {
            found.entry(canonical_table(&c)).or_insert(c);
        }
    }
    Ok(found.into_values().collect())
}

/// Every partial order on the labelled set `{0..n}`, built by adding one
/// element at a time with a chosen down-set and up-set.
pub fn enumerate_labeled_posets(n: usize, budget: &Budget) -> Result<Vec<Poset>> {
    let meter = budget.meter("enumerating posets");
    let mut layer = vec![Poset::empty()];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &layer {
            for down in p.lower_sets() {
                for up in p.opposite().lower_sets() {
                    meter.tick()?;
                    if down & up != 0 {
                        continue;
                    }
                    let between = bits(down).all(|d| bits(up).all(|u| p.le(d, u)));
                    if !between {
                        continue;
                    }
                    let mut pairs: Vec<(usize, usize)> = p.strict_pairs().collect();
                    pairs.extend(bits(down).map(|d| (d, k)));
                    pairs.extend(bits(up).map(|u| (k, u)));
                    let names = (0..=k).map(|i| i.to_string()).collect();
                    next.push(Poset::new(names, &pairs)?);
                }
            }
        }
        layer = next;
    }
    Ok(layer)
}

/// The least order matrix of `p` over all relabellings.
pub fn canonical_poset(p: &Poset) -> Vec<u64> {
    let n = p.len();
    permutations(n)
        .iter()
        .map(|perm| {
            let mut rows = vec![0u64; n];
            for a in 0..n {
                for b in 0..n {
                    if p.le(a, b) {
                        rows[perm[a]] |= 1 << perm[b];
                    }
                }
            }
            rows
        })
        .min()
        .unwrap_or_default()
}

/// Posets with at most `max_n` elements, one per isomorphism class, by size
/// then canonical form. Elements are relabelled so that `i <= j` implies
/// `i` comes first.
pub fn enumerate_posets(max_n: usize, budget: &Budget) -> Result<Vec<Poset>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let mut classes = std::collections::BTreeMap::new();
        for p in enumerate_labeled_posets(n, budget)? {
            classes.entry(canonical_poset(&p)).or_insert(p);
        }
        for p in classes.into_values() {
            out.push(topologically_named(&p));
        }
    }
    Ok(out)
}

fn topologically_named(p: &Poset) -> Poset {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| (p.down(i).count_ones(), i));
    let mut rank = vec![0; p.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let pairs: Vec<(usize, usize)> = p.strict_pairs().map(|(a, b)| (rank[a], rank[b])).collect();
    let names = (0..p.len()).map(object_name).collect();
    Poset::new(names, &pairs).expect("relabelled order")
}

/// Least sorted edge list over node relabellings.
fn canonical_graph(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    permutations(n)
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = edges.iter().map(|&(s, t)| (p[s], p[t])).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

/// Reflexive graphs with `1..=max_nodes` nodes and at most `max_edges` proper
/// edges, one per isomorphism class. Edges are named `e1, e2, ...`.
pub fn enumerate_graphs(max_nodes: usize, max_edges: usize, budget: &Budget) -> Result<Vec<ReflexiveGraph>> {
    let meter = budget.meter("enumerating graphs");
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        let mut classes = BTreeSet::new();
        // multisets of slots of each size, as non-decreasing index sequences
        fn go(
            start: usize,
            left: usize,
            cur: &mut Vec<usize>,
            slots: &[(usize, usize)],
            n: usize,
            meter: &Meter,
            classes: &mut BTreeSet<Vec<(usize, usize)>>,
        ) -> Result<()> {
            meter.tick()?;
            let edges: Vec<(usize, usize)> = cur.iter().map(|&i| slots[i]).collect();
            classes.insert(canonical_graph(n, &edges));
            if left == 0 {
                return Ok(());
            }
            for i in start..slots.len() {
                cur.push(i);
                go(i, left - 1, cur, slots, n, meter, classes)?;
                cur.pop();
            }
            Ok(())
        }
        go(0, max_edges, &mut Vec::new(), &slots, n, &meter, &mut classes)?;
        let mut sorted: Vec<Vec<(usize, usize)>> = classes.into_iter().collect();
        sorted.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        for edges in sorted {
            let nodes = (0..n).map(|i| format!("n{i}")).collect();
            let named = edges.iter().enumerate().map(|(k, &(s, t))| (format!("e{}", k + 1), s, t)).collect();
            out.push(ReflexiveGraph::new(nodes, named)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stratum_counts() {
        let b = Budget::default();
        // monoids of order 1, 2, 3
        assert_eq!(enumerate_stratum(1, 1, &b).unwrap().len(), 1);
        assert_eq!(enumerate_stratum(1, 2, &b).unwrap().len(), 2);
        assert_eq!(enumerate_stratum(1, 3, &b).unwrap().len(), 7);
        assert_eq!(enumerate_stratum(2, 2, &b).unwrap().len(), 1);
        assert_eq!(enumerate_stratum(2, 3, &b).unwrap().len(), 3);
    }

    #[test]
    fn small_bounds() {
        let b = Budget::default();
        let one = enumerate_categories(1, 1, &b).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].n_arrows(), 1);
        let empty = enumerate_categories(0, 0, &b).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].n_objects(), 0);
    }

    #[test]
    fn poset_counts() {
        let b = Budget::default();
        let labeled: Vec<usize> = (0..=4).map(|n| enumerate_labeled_posets(n, &b).unwrap().len()).collect();
        assert_eq!(labeled, vec![1, 1, 3, 19, 219]);
        let classes: Vec<usize> = (0..=4).map(|n| enumerate_posets(n, &b).unwrap().len()).collect();
        assert_eq!(classes, vec![1, 2, 4, 9, 25]);
    }

    #[test]
    fn graph_counts() {
        let b = Budget::default();
        // one node: 0 or 1 loop
        assert_eq!(enumerate_graphs(1, 1, &b).unwrap().len(), 2);
        // two nodes, at most one edge: none, a loop, an edge
        assert_eq!(enumerate_graphs(2, 1, &b).unwrap().len(), 2 + 3);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_categories(2, 4, 2, 20_000, 7).unwrap();
        let b = sample_categories(2, 4, 2, 20_000, 7).unwrap();
        assert_eq!(a.1, b.1);
        let names = |cs: &[FinCat]| cs.iter().map(canonical_table).collect::<Vec<_>>();
        assert_eq!(names(&a.0), names(&b.0));
    }
}
